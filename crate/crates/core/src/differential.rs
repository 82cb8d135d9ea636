//! Vertex-splitting differentials.
//!
//! At a vertex `v` the splitting operator sums over all `2^k` ways of sending
//! the `k` half-edges at `v` (edge ends and, for pairs, hairs) to either `v`
//! or a new vertex `v'`, and subtracts twice the term that attaches a new
//! univalent vertex to `v`. The new vertex is appended last, the new edge is
//! appended last and points from `v` to `v'`. For pairs the new edge carries
//! a hair, summed over all vertices of the partner graph.
//!
//! With this weighting the two splits that leave one side empty cancel the
//! univalent attachment whenever `v` carries at least one half-edge; the
//! cancellation is left to arithmetic.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::combination::LinearCombination;
use crate::error::{Error, Result};
use crate::graph::{self, graph_degree, Canon, CanonicalKey, OrientedGraph, Sign};
use crate::pair::{
    pair_canonicalize, valency_class, BasisSlice, EntangledPair, Parities, RawPair, SliceFlags, ValencyClass, ValencyFilter,
};
use crate::sparse::SparseIntMatrix;

/// Which complex a differential acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Complex {
    /// The full complex of connected pairs.
    Full,
    /// The subcomplex of pairs with an edge-univalent vertex.
    Gc1,
    /// The quotient by that subcomplex; image terms with an edge-univalent
    /// vertex are discarded.
    Geq2,
}

impl Complex {
    pub fn name(self) -> &'static str {
        match self {
            Complex::Full => "full",
            Complex::Gc1 => "gc1",
            Complex::Geq2 => "geq2",
        }
    }

    /// Basis filter selecting the pairs of this complex.
    pub fn slice_flags(self) -> SliceFlags {
        let v = match self {
            Complex::Full => ValencyFilter::All,
            Complex::Gc1 => ValencyFilter::HasUnivalent,
            Complex::Geq2 => ValencyFilter::MinValence2,
        };
        SliceFlags::default().with_valency(v)
    }

    pub fn admits(self, has_univalent: bool) -> bool {
        match self {
            Complex::Full => true,
            Complex::Gc1 => has_univalent,
            Complex::Geq2 => !has_univalent,
        }
    }
}

impl std::str::FromStr for Complex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Complex::Full),
            "gc1" => Ok(Complex::Gc1),
            "geq2" => Ok(Complex::Geq2),
            _ => Err(Error::Parse(format!("unknown complex {s:?}"))),
        }
    }
}

/// Provenance of one term of the raw expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    /// Split of `vertex`; bit `i` of `mask` sends the `i`-th half-edge at the
    /// vertex to the new vertex. `target` is the hair vertex of the new edge.
    Split { vertex: usize, mask: u64, target: usize },
    /// Attachment of a univalent vertex to `vertex`.
    Antenna { vertex: usize, target: usize },
}

impl TermKind {
    /// True for the split terms that leave `v` or `v'` with only the new edge.
    pub fn is_empty_side_split(self, half_edges: usize) -> bool {
        match self {
            TermKind::Split { mask, .. } => mask == 0 || mask == (1u64 << half_edges) - 1,
            TermKind::Antenna { .. } => false,
        }
    }
}

/// One uncanonicalized term of an expansion.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub kind: TermKind,
    pub pair: EntangledPair,
    pub coefficient: i64,
}

#[derive(Clone, Copy)]
enum HalfEdge {
    Tail(usize),
    Head(usize),
    Hair(usize),
}

/// How the first-side expansion weighs its terms.
///
/// `Literal` attaches every hairless antenna with weight −2 next to all
/// 2^k splits, so that the antenna at a vertex with half-edges cancels the
/// two splits leaving one side empty. The other rules exist to study the
/// failure of `δ∘δ = 0` under that reading: `NoAntenna` keeps all splits and
/// drops the antennas; `EdgeSidesOnly` keeps only the splits in which both
/// new vertices receive an end of an old edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SplitRule {
    #[default]
    Literal,
    NoAntenna,
    EdgeSidesOnly,
}

thread_local! {
    static RULE: std::cell::Cell<SplitRule> = const { std::cell::Cell::new(SplitRule::Literal) };
}

fn split_rule() -> SplitRule {
    RULE.with(|r| r.get())
}

/// Runs `f` with `rule` in force on the current thread.
pub fn with_split_rule<T>(rule: SplitRule, f: impl FnOnce() -> T) -> T {
    let prev = RULE.with(|r| r.replace(rule));
    struct Restore(SplitRule);
    impl Drop for Restore {
        fn drop(&mut self) {
            RULE.with(|r| r.set(self.0));
        }
    }
    let _restore = Restore(prev);
    f()
}

fn half_edges_at(edges: &[(u8, u8)], hairs: &[u8], v: u8) -> SmallVec<[HalfEdge; 16]> {
    let mut out = SmallVec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == v {
            out.push(HalfEdge::Tail(i));
        }
        if b == v {
            out.push(HalfEdge::Head(i));
        }
    }
    for (j, &x) in hairs.iter().enumerate() {
        if x == v {
            out.push(HalfEdge::Hair(j));
        }
    }
    out
}

/// Number of half-edges (edge ends and hairs) at vertex `v` of the first side.
pub fn half_edge_count(p: &EntangledPair, v: usize) -> usize {
    let raw = p.raw();
    half_edges_at(&raw.e1, &raw.f2, v as u8).len()
}

/// Splitting expansion on the first side of `raw`.
fn expand_first_side(raw: &RawPair, mut emit: impl FnMut(TermKind, &RawPair, i64)) {
    let rule = split_rule();
    let antenna = if rule == SplitRule::Literal { -2 } else { 0 };
    let n = raw.v1;
    for v in 0..raw.v1 {
        let hs = half_edges_at(&raw.e1, &raw.f2, v);
        let k = hs.len();
        assert!(k < 63, "vertex with too many half-edges");
        let edge_bits: u64 = hs
            .iter()
            .enumerate()
            .filter(|(_, h)| !matches!(h, HalfEdge::Hair(_)))
            .map(|(i, _)| 1u64 << i)
            .sum();
        for w in 0..raw.v2 {
            let mut base = raw.clone();
            base.v1 += 1;
            base.e1.push((v, n));
            base.f1.push(w);
            for mask in 0..(1u64 << k) {
                if rule == SplitRule::EdgeSidesOnly && (mask & edge_bits == 0 || !mask & edge_bits == 0) {
                    continue;
                }
                let mut t = base.clone();
                for (i, h) in hs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        match *h {
                            HalfEdge::Tail(e) => t.e1[e].0 = n,
                            HalfEdge::Head(e) => t.e1[e].1 = n,
                            HalfEdge::Hair(j) => t.f2[j] = n,
                        }
                    }
                }
                let kind = TermKind::Split {
                    vertex: v as usize,
                    mask,
                    target: w as usize,
                };
                emit(kind, &t, 1);
            }
            let kind = TermKind::Antenna {
                vertex: v as usize,
                target: w as usize,
            };
            emit(kind, &base, antenna);
        }
    }
}

fn expand_second_side(raw: &RawPair, mut emit: impl FnMut(TermKind, &RawPair, i64)) {
    expand_first_side(&raw.swapped(), |kind, t, c| emit(kind, &t.swapped(), c));
}

fn collect(terms: impl FnOnce(&mut dyn FnMut(TermKind, &RawPair, i64)), par: Parities, complex: Complex) -> LinearCombination {
    let mut acc: FxHashMap<CanonicalKey, i64> = FxHashMap::default();
    terms(&mut |_, t, c| {
        if complex == Complex::Geq2 && t.has_univalent() {
            return;
        }
        let (key, s) = t.canon(par);
        if s != 0 {
            *acc.entry(key).or_insert(0) += c * s as i64;
        }
    });
    acc.into_iter().collect()
}

/// Canonical representative of `p` with its sign, or `None` for zero pairs.
fn canonical_raw(p: &EntangledPair) -> Result<Option<(RawPair, i64)>> {
    match pair_canonicalize(p)? {
        Canon::Zero(_) => Ok(None),
        Canon::Signed(_, _) => Ok(Some((p.raw(), p.total_sign().value()))),
    }
}

/// Raw expansion of the first-side differential, one entry per split
/// distribution and univalent attachment, before canonicalization.
pub fn delta_prime_terms(p: &EntangledPair) -> Result<Vec<RawTerm>> {
    p.validate()?;
    let par = p.parities();
    let sign = p.total_sign().value();
    let mut out = Vec::new();
    let mut err = None;
    expand_first_side(&p.raw(), |kind, t, c| match t.to_pair(par) {
        Ok(pair) => out.push(RawTerm {
            kind,
            pair,
            coefficient: c * sign,
        }),
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Splitting on the first graph, new edge hair summed over the second graph.
pub fn delta_prime(p: &EntangledPair) -> Result<LinearCombination> {
    let Some((raw, sign)) = canonical_raw(p)? else {
        return Ok(LinearCombination::new());
    };
    Ok(collect(|e| expand_first_side(&raw, e), p.parities(), Complex::Full).scaled(sign))
}

/// Mirror of [`delta_prime`] acting on the second graph.
pub fn delta_dprime(p: &EntangledPair) -> Result<LinearCombination> {
    let Some((raw, sign)) = canonical_raw(p)? else {
        return Ok(LinearCombination::new());
    };
    Ok(collect(|e| expand_second_side(&raw, e), p.parities(), Complex::Full).scaled(sign))
}

/// Sign of the second-side part relative to the first: `(-1)^deg(g1)`.
pub fn koszul_sign(p: &EntangledPair) -> Sign {
    let b = p.bidegree();
    Sign::from_odd(graph_degree(p.g1.parity, b.v1, b.e1).rem_euclid(2) == 1)
}

fn delta_raw(raw: &RawPair, par: Parities, complex: Complex) -> LinearCombination {
    let b = raw.bidegree();
    let k = if graph_degree(par.c, b.v1, b.e1).rem_euclid(2) == 1 {
        -1
    } else {
        1
    };
    collect(
        |e| {
            expand_first_side(raw, &mut *e);
            expand_second_side(raw, |kind, t, c| e(kind, t, k * c));
        },
        par,
        complex,
    )
}

/// `δ' + (-1)^deg(g1) δ''`.
pub fn delta(p: &EntangledPair) -> Result<LinearCombination> {
    let Some((raw, sign)) = canonical_raw(p)? else {
        return Ok(LinearCombination::new());
    };
    Ok(delta_raw(&raw, p.parities(), Complex::Full).scaled(sign))
}

/// Differential of the named complex. Membership of `p` is checked.
pub fn induced_delta(p: &EntangledPair, complex: Complex) -> Result<LinearCombination> {
    let univ = valency_class(p) == ValencyClass::HasUnivalent;
    if !complex.admits(univ) {
        return Err(Error::Membership(complex.name().into()));
    }
    let Some((raw, sign)) = canonical_raw(p)? else {
        return Ok(LinearCombination::new());
    };
    Ok(delta_raw(&raw, p.parities(), complex).scaled(sign))
}

/// Differential of the canonical representative named by `key`.
pub fn delta_of_key(key: &CanonicalKey, par: Parities, complex: Complex) -> Result<LinearCombination> {
    let raw = RawPair::decode(key, par)?;
    if !complex.admits(raw.has_univalent()) {
        return Err(Error::Membership(complex.name().into()));
    }
    Ok(delta_raw(&raw, par, complex))
}

/// `δ(δ(x))` for every key of `x`, memoizing the inner differentials in
/// `cache`. Returns the composite applied to the combination.
pub fn delta_squared(
    x: &LinearCombination,
    par: Parities,
    complex: Complex,
    cache: &mut FxHashMap<CanonicalKey, LinearCombination>,
) -> Result<LinearCombination> {
    let mut out = LinearCombination::new();
    for (k, c) in x.iter() {
        let dk = match cache.get(k) {
            Some(d) => d.clone(),
            None => {
                let d = delta_of_key(k, par, complex)?;
                cache.insert(k.clone(), d.clone());
                d
            }
        };
        for (k2, c2) in dk.iter() {
            let d2 = match cache.get(k2) {
                Some(d) => d.clone(),
                None => {
                    let d = delta_of_key(k2, par, complex)?;
                    cache.insert(k2.clone(), d.clone());
                    d
                }
            };
            out.add_scaled(&d2, c * c2);
        }
    }
    Ok(out)
}

/// Raw splitting expansion of a plain graph.
fn expand_graph(n: u8, edges: &[(u8, u8)], mut emit: impl FnMut(TermKind, u8, &[(u8, u8)], i64)) {
    for v in 0..n {
        let hs = half_edges_at(edges, &[], v);
        let k = hs.len();
        assert!(k < 63, "vertex with too many half-edges");
        let mut base: SmallVec<[(u8, u8); 16]> = SmallVec::from_slice(edges);
        base.push((v, n));
        for mask in 0..(1u64 << k) {
            let mut t = base.clone();
            for (i, h) in hs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    match *h {
                        HalfEdge::Tail(e) => t[e].0 = n,
                        HalfEdge::Head(e) => t[e].1 = n,
                        HalfEdge::Hair(_) => unreachable!(),
                    }
                }
            }
            emit(
                TermKind::Split {
                    vertex: v as usize,
                    mask,
                    target: 0,
                },
                n + 1,
                &t,
                1,
            );
        }
        emit(
            TermKind::Antenna {
                vertex: v as usize,
                target: 0,
            },
            n + 1,
            &base,
            -2,
        );
    }
}

/// Vertex-splitting differential on a single oriented graph.
pub fn delta_gc(g: &OrientedGraph) -> Result<LinearCombination> {
    let c = graph::canonicalize(g, None, None)?;
    if c.is_zero() {
        return Ok(LinearCombination::new());
    }
    let odd = g.parity.is_odd();
    let sign = g.coefficient_sign.value();
    let mut acc: FxHashMap<CanonicalKey, i64> = FxHashMap::default();
    expand_graph(g.num_vertices as u8, &g.small_edges(), |_, n, edges, coeff| {
        let (key, s) = graph::canon_raw(n as usize, edges, odd);
        if s != 0 {
            *acc.entry(key).or_insert(0) += coeff * s as i64 * sign;
        }
    });
    Ok(acc.into_iter().collect())
}

/// Columns are `op(domain[j])` in the coordinates of the concatenated
/// codomain slices. An image term outside the codomain is an error.
pub fn assemble_matrix(domain: &BasisSlice, codomain: &[BasisSlice], complex: Complex) -> Result<SparseIntMatrix> {
    let mut offsets = Vec::with_capacity(codomain.len());
    let mut rows = 0;
    for s in codomain {
        if s.parities != domain.parities {
            return Err(Error::ChainMismatch("codomain parities differ from the domain".into()));
        }
        offsets.push(rows);
        rows += s.len();
    }
    let mut entries = Vec::new();
    for (j, key) in domain.elements.iter().enumerate() {
        let img = delta_of_key(key, domain.parities, complex)?;
        let mut col: Vec<(usize, i64)> = Vec::with_capacity(img.len());
        for (k, c) in img.iter() {
            let b = RawPair::decode(k, domain.parities)?.bidegree();
            let hit = codomain
                .iter()
                .zip(&offsets)
                .filter(|(s, _)| s.bidegree == b)
                .find_map(|(s, &off)| s.position(k).map(|i| off + i));
            match hit {
                Some(r) => col.push((r, c)),
                None => {
                    let text = EntangledPair::from_key(k, domain.parities)
                        .map(|p| crate::pair::format_pair(&p))
                        .unwrap_or_else(|_| k.hex());
                    return Err(Error::MissingCodomainKey(text));
                }
            }
        }
        col.sort_unstable();
        entries.extend(col.into_iter().map(|(r, c)| (r, j, c)));
    }
    let row_slices = codomain.iter().map(|s| (s.bidegree, s.len())).collect();
    SparseIntMatrix::new(rows, domain.len(), entries, row_slices, vec![(domain.bidegree, domain.len())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::{class_a, class_b};
    use crate::Parity;

    #[test]
    fn classes_are_closed() {
        for par in Parities::all_classes() {
            assert!(delta(&class_a(par)).unwrap().is_zero(), "{par}");
            assert!(delta(&class_b(par)).unwrap().is_zero(), "{par}");
        }
    }

    #[test]
    fn k4_is_closed() {
        assert!(delta_gc(&OrientedGraph::complete(4, Parity(2))).unwrap().is_zero());
    }

    #[test]
    fn single_vertex_maps_to_minus_edge() {
        for p in [Parity(1), Parity(2)] {
            let d = delta_gc(&OrientedGraph::single_vertex(p)).unwrap();
            let edge = graph::canonicalize(&OrientedGraph::new(2, vec![(0, 1)], p).unwrap(), None, None).unwrap();
            match edge {
                Canon::Signed(k, s) => {
                    assert_eq!(d.len(), 1);
                    assert_eq!(d.coefficient(&k), -s.value());
                }
                Canon::Zero(_) => panic!("edge is nonzero"),
            }
        }
    }

    #[test]
    fn gc_d_squared_vanishes_on_small_graphs() {
        for p in [Parity(1), Parity(2)] {
            for g in [
                OrientedGraph::cycle(3, p),
                OrientedGraph::complete(4, p),
                OrientedGraph::new(3, vec![(0, 1), (1, 2)], p).unwrap(),
                OrientedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], p).unwrap(),
            ] {
                let d = delta_gc(&g).unwrap();
                let mut dd = LinearCombination::new();
                for (k, c) in d.iter() {
                    let h = OrientedGraph::from_key(k, p).unwrap();
                    dd.add_scaled(&delta_gc(&h).unwrap(), c);
                }
                assert!(dd.is_zero(), "{g}");
            }
        }
    }
}
