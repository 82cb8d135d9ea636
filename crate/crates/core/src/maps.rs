//! The symmetrization map from pairs of graphs to entangled pairs, and a
//! small library of known cohomology classes.

use rustc_hash::FxHashSet;

use crate::combination::LinearCombination;
use crate::differential::{delta_gc, Complex};
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, canonicalize, connected_components, Canon, CanonicalKey, OrientedGraph, Parity};
use crate::pair::{class_a, class_b, for_each_map, multigraph_shapes, pair_canonicalize, EntangledPair, Parities};

/// Vertex and edge permutations of every automorphism of `g`.
fn group_elements(g: &OrientedGraph) -> Result<Vec<(Vec<u8>, Vec<u8>)>> {
    let gens: Vec<(Vec<u8>, Vec<u8>)> = automorphism_group(g, None, None)?
        .into_iter()
        .map(|a| {
            (
                a.vertex_perm.iter().map(|&x| x as u8).collect(),
                a.edge_perm.iter().map(|&x| x as u8).collect(),
            )
        })
        .collect();
    let id = (
        (0..g.num_vertices as u8).collect::<Vec<_>>(),
        (0..g.edges.len() as u8).collect::<Vec<_>>(),
    );
    let mut seen: FxHashSet<(Vec<u8>, Vec<u8>)> = FxHashSet::default();
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some((v, e)) = queue.pop() {
        for (gv, ge) in &gens {
            let next = (
                v.iter().map(|&x| gv[x as usize]).collect::<Vec<_>>(),
                e.iter().map(|&x| ge[x as usize]).collect::<Vec<_>>(),
            );
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// `h ↦ vp ∘ h ∘ ep⁻¹` on a hair map given as a slice over edges.
fn act(h: &[u8], ep: &[u8], vp: &[u8], out: &mut [u8]) {
    for (e, &t) in h.iter().enumerate() {
        out[ep[e] as usize] = vp[t as usize];
    }
}

/// Checks the preconditions; `false` means the factor is a zero graph.
fn check_factor(g: &OrientedGraph) -> Result<bool> {
    g.validate()?;
    if connected_components(g).len() != 1 {
        return Err(Error::Precondition("sym needs connected graphs".into()));
    }
    if g.valencies().iter().any(|&d| d < 2) {
        return Err(Error::Precondition("sym needs every vertex of valency at least 2".into()));
    }
    Ok(!canonicalize(g, None, None)?.is_zero())
}

/// Sum over all hair attachments `f1: E(g1) → V(g2)`, `f2: E(g2) → V(g1)`.
///
/// Both factors are nonzero, so every automorphism preserves their
/// orientations and all attachments in one orbit of `Aut(g1) × Aut(g2)`
/// give the same signed class. The sum runs over orbit representatives
/// weighted by orbit size. A zero factor gives zero.
pub fn sym(g1: &OrientedGraph, g2: &OrientedGraph) -> Result<LinearCombination> {
    if !(check_factor(g1)? & check_factor(g2)?) {
        return Ok(LinearCombination::new());
    }
    let a1 = group_elements(g1)?;
    let a2 = group_elements(g2)?;
    let (m1, m2) = (g1.edges.len(), g2.edges.len());
    let (n1, n2) = (g1.num_vertices, g2.num_vertices);
    let group: Vec<(usize, usize)> = (0..a1.len()).flat_map(|i| (0..a2.len()).map(move |j| (i, j))).collect();
    let order = group.len() as i64;
    let scale = (g1.coefficient_sign * g2.coefficient_sign).value();
    let mut total = LinearCombination::new();
    let mut err = None;
    let mut img1 = vec![0u8; m1];
    let mut img2 = vec![0u8; m2];
    for_each_map(m1, n2, |f1| {
        // f1 must be minimal in its orbit; remember its stabilizer
        let mut stab = Vec::new();
        for &(i, j) in &group {
            act(f1, &a1[i].1, &a2[j].0, &mut img1);
            match img1.as_slice().cmp(f1) {
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Equal => stab.push((i, j)),
                std::cmp::Ordering::Greater => {}
            }
        }
        for_each_map(m2, n1, |f2| {
            let mut fixed = 0i64;
            for &(i, j) in &stab {
                act(f2, &a2[j].1, &a1[i].0, &mut img2);
                match img2.as_slice().cmp(f2) {
                    std::cmp::Ordering::Less => return,
                    std::cmp::Ordering::Equal => fixed += 1,
                    std::cmp::Ordering::Greater => {}
                }
            }
            let pair = EntangledPair::new(
                g1.clone().with_sign(crate::graph::Sign::Plus),
                g2.clone().with_sign(crate::graph::Sign::Plus),
                f1.iter().map(|&x| x as usize).collect(),
                f2.iter().map(|&x| x as usize).collect(),
            );
            match pair.and_then(|p| pair_canonicalize(&p)) {
                Ok(Canon::Signed(k, s)) => total.add_term(k, scale * s.value() * (order / fixed)),
                Ok(Canon::Zero(_)) => {}
                Err(e) => err = Some(e),
            }
        });
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Bilinear extension of [`sym`] to combinations of graph keys.
pub fn sym_combination(x: &LinearCombination, y: &LinearCombination, parities: Parities) -> Result<LinearCombination> {
    let mut total = LinearCombination::new();
    for (k1, c1) in x.iter() {
        let g1 = OrientedGraph::from_key(k1, parities.c)?;
        for (k2, c2) in y.iter() {
            let g2 = OrientedGraph::from_key(k2, parities.d)?;
            total.add_scaled(&sym(&g1, &g2)?, c1 * c2);
        }
    }
    Ok(total)
}

/// Canonical combination of a single graph.
pub fn graph_combination(g: &OrientedGraph) -> Result<LinearCombination> {
    Ok(match canonicalize(g, None, None)? {
        Canon::Signed(k, s) => LinearCombination::single(k, s.value() * g.coefficient_sign.value()),
        Canon::Zero(_) => LinearCombination::new(),
    })
}

/// Linear extension of the graph differential.
pub fn delta_gc_combination(x: &LinearCombination, parity: Parity) -> Result<LinearCombination> {
    let mut total = LinearCombination::new();
    for (k, c) in x.iter() {
        total.add_scaled(&delta_gc(&OrientedGraph::from_key(k, parity)?)?, c);
    }
    Ok(total)
}

/// Canonical nonzero graphs with `v` vertices and `e` edges, loop-free,
/// optionally only connected ones, sorted by key.
pub fn gc_basis(v: usize, e: usize, parity: Parity, connected: bool) -> Result<Vec<CanonicalKey>> {
    let mut out = Vec::new();
    for shape in multigraph_shapes(v, e, false) {
        let g = OrientedGraph::new(v, shape.iter().map(|&(a, b)| (a as usize, b as usize)).collect(), parity)?;
        if connected && connected_components(&g).len() != 1 {
            continue;
        }
        if let Canon::Signed(k, _) = canonicalize(&g, None, None)? {
            out.push(k);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Cocycle,
    CocycleNonexact,
}

/// Where a known class lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Home {
    /// A complex of entangled pairs.
    Pairs(Complex),
    /// The graph complex of the first parity.
    Graphs,
}

#[derive(Clone, Debug)]
pub struct KnownClass {
    pub name: &'static str,
    pub parities: Parities,
    pub home: Home,
    pub element: LinearCombination,
    pub expected: Expectation,
}

fn pair_combination(p: &EntangledPair) -> Result<LinearCombination> {
    Ok(match pair_canonicalize(p)? {
        Canon::Signed(k, s) => LinearCombination::single(k, s.value()),
        Canon::Zero(_) => LinearCombination::new(),
    })
}

/// Classes A and B for every parity class; at `(2, 2)` also the
/// tetrahedron in the graph complex and its symmetrized square.
pub fn known_classes(parities: Parities) -> Result<Vec<KnownClass>> {
    let mut out = vec![
        KnownClass {
            name: "A",
            parities,
            home: Home::Pairs(Complex::Full),
            element: pair_combination(&class_a(parities))?,
            expected: Expectation::CocycleNonexact,
        },
        KnownClass {
            name: "B",
            parities,
            home: Home::Pairs(Complex::Full),
            element: pair_combination(&class_b(parities))?,
            expected: Expectation::CocycleNonexact,
        },
    ];
    if !parities.c.is_odd() && !parities.d.is_odd() {
        let k4 = OrientedGraph::complete(4, parities.c);
        out.push(KnownClass {
            name: "K4",
            parities,
            home: Home::Graphs,
            element: graph_combination(&k4)?,
            expected: Expectation::CocycleNonexact,
        });
        out.push(KnownClass {
            name: "symK4K4",
            parities,
            home: Home::Pairs(Complex::Geq2),
            element: sym(&k4, &OrientedGraph::complete(4, parities.d))?,
            expected: Expectation::Cocycle,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_group_has_six_elements() {
        let t = OrientedGraph::cycle(3, Parity(2));
        assert_eq!(group_elements(&t).unwrap().len(), 6);
        assert_eq!(group_elements(&OrientedGraph::complete(4, Parity(2))).unwrap().len(), 24);
    }

    #[test]
    fn rejects_univalent_factors() {
        let e = OrientedGraph::new(2, vec![(0, 1)], Parity(2)).unwrap();
        let t = OrientedGraph::cycle(3, Parity(2));
        assert!(matches!(sym(&e, &t), Err(Error::Precondition(_))));
    }

    #[test]
    fn known_class_lists() {
        assert_eq!(known_classes(Parities::new(2, 2)).unwrap().len(), 4);
        assert_eq!(known_classes(Parities::new(1, 2)).unwrap().len(), 2);
    }
}
