//! Batch consistency checks shared by the command line tool and the test
//! suites. Every check returns a [`CheckReport`]; failures name the offending
//! basis element by its canonical key.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::combination::LinearCombination;
use crate::config::Budget;
use crate::differential::{delta_of_key, delta_prime_terms, delta_squared, half_edge_count, Complex, TermKind};
use crate::error::{Error, Result};
use crate::graph::{self, connected_components, CanonicalKey, OrientedGraph, Parity};
use crate::linalg::{betti, in_span, is_cocycle, is_exact, Block, BettiTable, Window};
use crate::maps::{delta_gc_combination, gc_basis, known_classes, sym, Expectation, Home, KnownClass};
use crate::pair::{enumerate_basis, format_pair, pair_canonicalize, Bidegree, EntangledPair, Parities};
use crate::properad::{check_relation, describe, Relation};

/// Failures kept verbatim in a report; the rest are only counted.
const MAX_LISTED: usize = 20;

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub parities: String,
    pub passed: bool,
    /// Number of elements, generators or instances examined.
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(check: impl Into<String>, parities: Parities) -> Self {
        CheckReport {
            check: check.into(),
            parities: parities.to_string(),
            passed: true,
            ..Default::default()
        }
    }

    fn fail(&mut self, what: String) {
        self.passed = false;
        self.failed += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(what);
        }
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        format!(
            "{} {} {}: {} checked, {} failed",
            self.check,
            self.parities,
            if self.passed { "ok" } else { "FAILED" },
            self.checked,
            self.failed
        )
    }
}

/// `key=<hex> <pair text>` for failure messages.
pub fn name_pair(key: &CanonicalKey, parities: Parities) -> String {
    match EntangledPair::from_key(key, parities) {
        Ok(p) => format!("key={} {}", key.hex(), format_pair(&p)),
        Err(_) => format!("key={}", key.hex()),
    }
}

/// Bidegrees with both sides nonempty inside the window.
pub fn window_bidegrees(window: Window) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for v1 in 1..window.max_vertices {
        for v2 in 1..=window.max_vertices - v1 {
            for e1 in 0..=window.max_edges {
                for e2 in 0..=window.max_edges - e1 {
                    out.push(Bidegree::new(v1, e1, v2, e2));
                }
            }
        }
    }
    out
}

/// `δ∘δ = 0` on every basis element of the window. Each composite is the
/// column of the product of the two assembled matrices, computed by
/// expanding twice with the inner images memoized.
pub fn d2_suite(parities: Parities, window: Window, complex: Complex, budget: &Budget) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("d2[{}]", complex.name()), parities);
    let mut cache = FxHashMap::default();
    for b in window_bidegrees(window) {
        let slice = enumerate_basis(b, parities, complex.slice_flags(), budget)?;
        for k in &slice.elements {
            report.checked += 1;
            let x = LinearCombination::single(k.clone(), 1);
            let dd = delta_squared(&x, parities, complex, &mut cache)?;
            if !dd.is_zero() {
                report.fail(format!("{}: δδ has {} terms", name_pair(k, parities), dd.len()));
            }
        }
    }
    Ok(report)
}

/// Block of a homogeneous combination of pairs.
fn block_of(x: &LinearCombination, parities: Parities) -> Result<Block> {
    let mut blocks = x
        .keys()
        .map(|k| Ok(Block::of(EntangledPair::from_key(k, parities)?.bidegree())))
        .collect::<Result<Vec<_>>>()?;
    blocks.sort();
    blocks.dedup();
    match blocks[..] {
        [b] => Ok(b),
        _ => Err(Error::Precondition("class is not homogeneous".into())),
    }
}

/// Graph-complex bidegree `(v, e)` of a homogeneous combination of graphs.
fn graph_shape(x: &LinearCombination, parity: Parity) -> Result<(usize, usize)> {
    let mut shapes = x
        .keys()
        .map(|k| {
            let g = OrientedGraph::from_key(k, parity)?;
            Ok((g.num_vertices, g.num_edges()))
        })
        .collect::<Result<Vec<_>>>()?;
    shapes.sort();
    shapes.dedup();
    match shapes[..] {
        [s] => Ok(s),
        _ => Err(Error::Precondition("class is not homogeneous".into())),
    }
}

/// Cocycle property and, when expected, non-exactness of a known class.
/// Non-exactness is decided against the complete preimage block.
pub fn certify_class(class: &KnownClass, budget: &Budget) -> Result<CheckReport> {
    let par = class.parities;
    let mut report = CheckReport::new(format!("class {}", class.name), par);
    report.checked = class.element.len();
    if class.element.is_zero() {
        report.fail(format!("class {} is the zero vector", class.name));
        return Ok(report);
    }
    let first = class.element.keys().next().cloned().expect("nonzero");
    match class.home {
        Home::Pairs(complex) => {
            if !is_cocycle(&class.element, par, complex)? {
                report.fail(format!("{}: not closed in {}", name_pair(&first, par), complex.name()));
            }
            if class.expected == Expectation::CocycleNonexact {
                let block = block_of(&class.element, par)?;
                let prev = Block {
                    vertices: block.vertices - 1,
                    ..block
                };
                let slices = |b: Block| {
                    b.bidegrees()
                        .into_iter()
                        .map(|bd| enumerate_basis(bd, par, complex.slice_flags(), budget))
                        .collect::<Result<Vec<_>>>()
                };
                let pre = slices(prev)?;
                let target = slices(block)?;
                let size: usize = pre.iter().map(|s| s.len()).sum();
                report.notes.push(format!("preimage block has {size} basis elements"));
                if is_exact(&class.element, &pre, &target, complex, budget)? {
                    report.fail(format!("{}: exact in {}", name_pair(&first, par), complex.name()));
                }
            }
        }
        Home::Graphs => {
            let d = delta_gc_combination(&class.element, par.c)?;
            if !d.is_zero() {
                report.fail(format!("key={}: δ has {} terms", first.hex(), d.len()));
            }
            if class.expected == Expectation::CocycleNonexact {
                let (v, e) = graph_shape(&class.element, par.c)?;
                let basis = if v > 1 && e > 0 {
                    gc_basis(v - 1, e - 1, par.c, true)?
                } else {
                    vec![]
                };
                report.notes.push(format!("preimage slice ({},{}) has {} nonzero graphs", v - 1, e.saturating_sub(1), basis.len()));
                let cols = basis
                    .iter()
                    .map(|k| delta_gc_combination(&LinearCombination::single(k.clone(), 1), par.c))
                    .collect::<Result<Vec<_>>>()?;
                if in_span(&cols, &class.element, budget)? {
                    report.fail(format!("key={}: exact", first.hex()));
                }
            }
        }
    }
    Ok(report)
}

/// Looks up a known class by name.
pub fn find_class(name: &str, parities: Parities) -> Result<KnownClass> {
    known_classes(parities)?
        .into_iter()
        .find(|k| k.name == name)
        .ok_or_else(|| Error::Precondition(format!("no class named {name:?} at {parities}")))
}

fn geq2_generator(g: &OrientedGraph) -> bool {
    connected_components(g).len() == 1 && g.valencies().iter().all(|&d| d >= 2)
}

/// Sym on combinations, followed by the projection to the min-valency-2
/// quotient: factors with a univalent vertex map to zero there.
fn sym_geq2(x: &LinearCombination, y: &LinearCombination, parities: Parities) -> Result<LinearCombination> {
    let mut total = LinearCombination::new();
    for (k1, c1) in x.iter() {
        let g1 = OrientedGraph::from_key(k1, parities.c)?;
        if !geq2_generator(&g1) {
            continue;
        }
        for (k2, c2) in y.iter() {
            let g2 = OrientedGraph::from_key(k2, parities.d)?;
            if geq2_generator(&g2) {
                total.add_scaled(&sym(&g1, &g2)?, c1 * c2);
            }
        }
    }
    Ok(total)
}

fn delta_of(x: &LinearCombination, parities: Parities, complex: Complex) -> Result<LinearCombination> {
    let mut out = LinearCombination::new();
    for (k, c) in x.iter() {
        out.add_scaled(&delta_of_key(k, parities, complex)?, c);
    }
    Ok(out)
}

/// Connected min-valency-2 generators with at most `max_vertices` vertices
/// and `max_edges` edges.
pub fn geq2_generators(parity: Parity, max_vertices: usize, max_edges: usize) -> Result<Vec<CanonicalKey>> {
    let mut out = Vec::new();
    for v in 1..=max_vertices {
        for e in v..=max_edges {
            for k in gc_basis(v, e, parity, true)? {
                if geq2_generator(&OrientedGraph::from_key(&k, parity)?) {
                    out.push(k);
                }
            }
        }
    }
    Ok(out)
}

/// `δ(sym(g1, g2)) = sym(δg1, g2) + (-1)^deg(g1) sym(g1, δg2)` in the
/// min-valency-2 quotient, for all generator pairs.
pub fn chain_map_check(parities: Parities, max_vertices: usize, max_edges: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("chain-map", parities);
    let gens1 = geq2_generators(parities.c, max_vertices, max_edges)?;
    let gens2 = geq2_generators(parities.d, max_vertices, max_edges)?;
    report.notes.push(format!("{} x {} generators", gens1.len(), gens2.len()));
    for k1 in &gens1 {
        let g1 = OrientedGraph::from_key(k1, parities.c)?;
        let x = LinearCombination::single(k1.clone(), 1);
        let dx = delta_gc_combination(&x, parities.c)?;
        let koszul = if graph::degree(&g1).rem_euclid(2) == 1 { -1 } else { 1 };
        for k2 in &gens2 {
            report.checked += 1;
            let y = LinearCombination::single(k2.clone(), 1);
            let dy = delta_gc_combination(&y, parities.d)?;
            let s = sym_geq2(&x, &y, parities)?;
            let lhs = delta_of(&s, parities, Complex::Geq2)?;
            let mut rhs = sym_geq2(&dx, &y, parities)?;
            rhs.add_scaled(&sym_geq2(&x, &dy, parities)?, koszul);
            let mut diff = lhs;
            diff.add_scaled(&rhs, -1);
            if !diff.is_zero() {
                let k = diff.keys().next().expect("nonzero");
                report.fail(format!(
                    "g1={} g2={}: {} terms differ, first {}",
                    k1.hex(),
                    k2.hex(),
                    diff.len(),
                    name_pair(k, parities)
                ));
            }
        }
    }
    Ok(report)
}

/// The three defining relations vanish in the graph properad.
pub fn relations_check(parities: Parities) -> Result<CheckReport> {
    let mut report = CheckReport::new("relations", parities);
    for (name, rel) in [
        ("JACOBI", Relation::Jacobi),
        ("COJACOBI", Relation::CoJacobi),
        ("COMPAT", Relation::Compat),
    ] {
        report.checked += 1;
        let lc = check_relation(rel, parities)?;
        if !lc.is_zero() {
            let k = lc.keys().next().expect("nonzero");
            report.fail(format!("{name}: {} terms survive, first key={}", lc.len(), k.hex()));
            report.notes.push(describe(&lc, parities)?);
        }
    }
    Ok(report)
}

/// A random pair whose first graph has an edge, drawn until nonzero.
pub fn random_pair(rng: &mut impl Rng, parities: Parities) -> EntangledPair {
    loop {
        let v1 = rng.gen_range(2..=4);
        let e1 = rng.gen_range(1..=4);
        let v2 = rng.gen_range(1..=3);
        let e2 = rng.gen_range(0..=3);
        let mut edges = |v: usize, e: usize| -> Vec<(usize, usize)> {
            (0..e)
                .map(|_| {
                    let a = rng.gen_range(0..v);
                    let b = (a + rng.gen_range(1..v.max(2))) % v;
                    (a, b)
                })
                .collect()
        };
        let (ed1, ed2) = (edges(v1, e1), if v2 > 1 { edges(v2, e2) } else { vec![] });
        let f1 = (0..ed1.len()).map(|_| rng.gen_range(0..v2)).collect();
        let f2 = (0..ed2.len()).map(|_| rng.gen_range(0..v1)).collect();
        let g1 = OrientedGraph::new(v1, ed1, parities.c).expect("valid");
        let g2 = OrientedGraph::new(v2, ed2, parities.d).expect("valid");
        let p = EntangledPair::new(g1, g2, f1, f2).expect("valid");
        if !pair_canonicalize(&p).expect("valid").is_zero() {
            return p;
        }
    }
}

/// On `count` random pairs, the univalent attachment at each vertex with
/// half-edges cancels exactly against the two empty-side splits with the
/// same hair target, and removing those three terms leaves δ′ unchanged.
pub fn cancellation_check(parities: Parities, count: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("cancellation", parities);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nontrivial = 0usize;
    for _ in 0..count {
        let p = random_pair(&mut rng, parities);
        report.checked += 1;
        let terms = delta_prime_terms(&p)?;
        let mut groups: BTreeMap<(usize, usize), LinearCombination> = BTreeMap::new();
        let mut rest = LinearCombination::new();
        let mut all = LinearCombination::new();
        for t in &terms {
            let lc = match pair_canonicalize(&t.pair)? {
                graph::Canon::Signed(k, s) => LinearCombination::single(k, s.value() * t.coefficient),
                graph::Canon::Zero(_) => LinearCombination::new(),
            };
            all.add_scaled(&lc, 1);
            let (v, w) = match t.kind {
                TermKind::Antenna { vertex, target } => (vertex, target),
                TermKind::Split { vertex, target, .. } => (vertex, target),
            };
            let k = half_edge_count(&p, v);
            let cancelling = k > 0 && (matches!(t.kind, TermKind::Antenna { .. }) || t.kind.is_empty_side_split(k));
            if cancelling {
                if matches!(t.kind, TermKind::Antenna { .. }) && !lc.is_zero() {
                    nontrivial += 1;
                }
                groups.entry((v, w)).or_default().add_scaled(&lc, 1);
            } else {
                rest.add_scaled(&lc, 1);
            }
        }
        let key = pair_canonicalize(&p)?.key().clone();
        for ((v, w), sum) in &groups {
            if !sum.is_zero() {
                report.fail(format!("{}: vertex {v}, hair on {w}: {} terms left", name_pair(&key, parities), sum.len()));
            }
        }
        let mut diff = all;
        diff.add_scaled(&rest, -1);
        if !diff.is_zero() {
            report.fail(format!("{}: removing the cancelling terms changes δ′", name_pair(&key, parities)));
        }
    }
    report.notes.push(format!("{nontrivial} nonzero univalent attachments cancelled"));
    Ok(report)
}

/// Betti data of one complex over a window, or the reason it is unavailable.
pub fn betti_or_reason(window: Window, parities: Parities, complex: Complex, budget: &Budget) -> std::result::Result<BettiTable, String> {
    betti(window, parities, complex, budget)
        .map(|(t, _)| t)
        .map_err(|e| format!("{}: {e}", complex.name()))
}

/// Two-class certification: A and B certified, and no other nonzero
/// safe Betti number in the full complex over the window.
pub fn two_class_check(parities: Parities, window: Window, budget: &Budget) -> Result<CheckReport> {
    let mut report = CheckReport::new("classes+betti", parities);
    for name in ["A", "B"] {
        let r = certify_class(&find_class(name, parities)?, budget)?;
        report.checked += 1;
        report.notes.extend(r.notes.iter().map(|n| format!("{name}: {n}")));
        for f in r.failures {
            report.fail(f);
        }
    }
    let a = block_of(&find_class("A", parities)?.element, parities)?;
    let b = block_of(&find_class("B", parities)?.element, parities)?;
    match betti_or_reason(window, parities, Complex::Full, budget) {
        Ok(table) => {
            let nonzero = table.nonzero_safe();
            report.checked += table.entries.len();
            let mut at_classes = 0;
            for (blk, n) in &nonzero {
                if *blk == a || *blk == b {
                    at_classes += n;
                } else {
                    report.fail(format!("unexpected Betti number {n} at block {blk:?}"));
                }
            }
            if at_classes != 2 {
                report.fail(format!("Betti total {at_classes} at the class blocks, expected 2"));
            }
        }
        Err(reason) => report.fail(format!("Betti table unavailable: {reason}")),
    }
    Ok(report)
}

/// Rank identities of the long exact sequence of `0 → GC¹ → full → GC≥2 → 0`.
///
/// With the full differential upper triangular in the splitting
/// `GC¹ ⊕ GC≥2`, the connecting map at block `n` has rank
/// `r_n = rank(D_n) - rank(D¹_n) - rank(D≥2_n)`, and exactness forces
/// `h_n = h¹_n + h≥2_n - r_n - r_{n-1}` with `0 ≤ r_n ≤ min(h≥2_n, h¹_{n+1})`.
pub fn les_check(parities: Parities, window: Window, budget: &Budget) -> Result<CheckReport> {
    let mut report = CheckReport::new("les", parities);
    let sub = betti_or_reason(window, parities, Complex::Gc1, budget);
    let quo = betti_or_reason(window, parities, Complex::Geq2, budget);
    let full = betti_or_reason(window, parities, Complex::Full, budget);
    let (sub, quo, full) = match (sub, quo, full) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (a, b, c) => {
            for r in [a.err(), b.err(), c.err()].into_iter().flatten() {
                report.fail(format!("Betti table unavailable: {r}"));
            }
            return Ok(report);
        }
    };
    let rank_of = |t: &BettiTable, b: &Block| t.entries.get(b).map_or(0, |e| e.rank_out);
    let betti_of = |t: &BettiTable, b: &Block| t.entries.get(b).map_or(0, |e| e.betti);
    let conn = |b: &Block| -> Option<i64> {
        full.entries.get(b)?;
        Some(rank_of(&full, b) as i64 - rank_of(&sub, b) as i64 - rank_of(&quo, b) as i64)
    };
    for (blk, e) in &full.entries {
        if !e.safe {
            continue;
        }
        report.checked += 1;
        let r = conn(blk).unwrap_or(0);
        let prev = Block {
            vertices: blk.vertices - 1,
            ..*blk
        };
        let r_prev = conn(&prev).unwrap_or(0);
        let (h1, h2) = (betti_of(&sub, blk) as i64, betti_of(&quo, blk) as i64);
        if e.betti as i64 != h1 + h2 - r - r_prev {
            report.fail(format!("block {blk:?}: h={} but h1+h2-r-r'={}", e.betti, h1 + h2 - r - r_prev));
        }
        let bound = h2.min(betti_of(&sub, &blk.next()) as i64);
        if r < 0 || r > bound {
            report.fail(format!("block {blk:?}: connecting rank {r} outside [0, {bound}]"));
        }
    }
    Ok(report)
}
