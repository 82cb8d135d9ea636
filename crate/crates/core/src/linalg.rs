//! Exact ranks of sparse integer matrices and cohomology dimensions.
//!
//! Small matrices are eliminated over the integers with arbitrary precision;
//! larger ones modulo three word-sized primes. Pivots are chosen with a
//! Markowitz-style cost so fill stays low on these very sparse matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combination::LinearCombination;
use crate::config::Budget;
use crate::differential::{assemble_matrix, induced_delta, Complex};
use crate::error::{Error, Result};
use crate::pair::{BasisSlice, Bidegree, EntangledPair, Parities};
use crate::sparse::SparseIntMatrix;

/// Primes used for modular ranks, all above 2^20.
pub const PRIMES: [u64; 3] = [2_147_483_647, 1_000_000_007, 998_244_353];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    FractionFree,
    Modular,
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankMethod::FractionFree => "FRACTION_FREE",
            RankMethod::Modular => "MODULAR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub primes_used: Vec<u64>,
    /// False when the primes disagree; the reported rank is then the maximum.
    pub consistent: bool,
}

/// Coefficient arithmetic needed by the elimination.
trait Field: Clone {
    fn is_zero(&self) -> bool;
    /// `a * sa + b * sb`.
    fn combine(a: &Self, sa: &Self, b: &Self, sb: &Self) -> Self;
    fn mul(a: &Self, b: &Self) -> Self;
    /// Multipliers `(for the target row, for the pivot row)` that cancel
    /// `lead` against `pivot`.
    fn scales(pivot: &Self, lead: &Self) -> (Self, Self);
    /// Optional normalization of a freshly combined row.
    fn normalize(_row: &mut [(u32, Self)]) {}
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Residue modulo the prime currently installed for this thread.
#[derive(Clone, Copy, Debug)]
struct ModP(u64);

thread_local! {
    static MODULUS: std::cell::Cell<u64> = const { std::cell::Cell::new(PRIMES[0]) };
}

fn modulus() -> u64 {
    MODULUS.with(|m| m.get())
}

impl Field for ModP {
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn combine(a: &Self, sa: &Self, b: &Self, sb: &Self) -> Self {
        let p = modulus() as u128;
        ModP(((a.0 as u128 * sa.0 as u128 + b.0 as u128 * sb.0 as u128) % p) as u64)
    }
    fn mul(a: &Self, b: &Self) -> Self {
        ModP((a.0 as u128 * b.0 as u128 % modulus() as u128) as u64)
    }
    fn scales(pivot: &Self, lead: &Self) -> (Self, Self) {
        let p = modulus();
        let f = Self::mul(lead, &ModP(pow_mod(pivot.0, p - 2, p)));
        (ModP(1), ModP((p - f.0) % p))
    }
}

impl Field for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn combine(a: &Self, sa: &Self, b: &Self, sb: &Self) -> Self {
        a * sa + b * sb
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn scales(pivot: &Self, lead: &Self) -> (Self, Self) {
        let g = pivot.gcd(lead);
        (pivot / &g, -(lead / &g))
    }
    fn normalize(row: &mut [(u32, Self)]) {
        let mut g = BigInt::zero();
        for (_, x) in row.iter() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
        if !Zero::is_zero(&g) {
            for (_, x) in row.iter_mut() {
                *x /= &g;
            }
        }
    }
}

/// `target * st + source * ss` over sorted sparse rows.
fn combine_rows<F: Field>(target: &[(u32, F)], st: &F, source: &[(u32, F)], ss: &F) -> Vec<(u32, F)> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ci = target.get(i).map_or(u32::MAX, |e| e.0);
        let cj = source.get(j).map_or(u32::MAX, |e| e.0);
        let v = if ci == cj {
            i += 1;
            j += 1;
            F::combine(&target[i - 1].1, st, &source[j - 1].1, ss)
        } else if ci < cj {
            i += 1;
            F::mul(&target[i - 1].1, st)
        } else {
            j += 1;
            F::mul(&source[j - 1].1, ss)
        };
        if !v.is_zero() {
            out.push((ci.min(cj), v));
        }
    }
    F::normalize(&mut out);
    out
}

/// Sparse elimination returning the rank. Rows are sorted `(col, value)`.
fn eliminate<F: Field>(num_cols: usize, rows: Vec<Vec<(u32, F)>>) -> usize {
    let mut rows: Vec<Option<Vec<(u32, F)>>> = rows.into_iter().map(|r| if r.is_empty() { None } else { Some(r) }).collect();
    let mut col_rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); num_cols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r.as_ref().map(|r| r.as_slice()).unwrap_or(&[]) {
            col_rows[c as usize].insert(i as u32);
        }
    }
    // priority of active columns by current count
    let mut queue: BTreeSet<(usize, u32)> = (0..num_cols)
        .filter(|&c| !col_rows[c].is_empty())
        .map(|c| (col_rows[c].len(), c as u32))
        .collect();
    let mut rank = 0;
    while let Some(&(count, _)) = queue.iter().next() {
        // Markowitz cost over the few sparsest columns
        let mut best: Option<(usize, u32, u32)> = None;
        for &(cnt, c) in queue.iter().take(4) {
            if cnt > count.max(1) * 4 {
                break;
            }
            for &r in &col_rows[c as usize] {
                let len = rows[r as usize].as_ref().map_or(0, |x| x.len());
                let cost = (cnt - 1) * (len - 1);
                if best.is_none_or(|b| cost < b.0) {
                    best = Some((cost, c, r));
                }
            }
        }
        let (_, pc, pr) = best.expect("active column has rows");
        let pivot_row = rows[pr as usize].take().expect("active row");
        rank += 1;
        let mut changed: BTreeSet<u32> = BTreeSet::new();
        for &(c, _) in &pivot_row {
            let old = col_rows[c as usize].len();
            queue.remove(&(old, c));
            col_rows[c as usize].remove(&pr);
            changed.insert(c);
        }
        let pivot_val = pivot_row.iter().find(|e| e.0 == pc).expect("pivot entry").1.clone();
        let targets: Vec<u32> = col_rows[pc as usize].iter().copied().collect();
        for t in targets {
            let row = rows[t as usize].take().expect("active row");
            let lead = row.iter().find(|e| e.0 == pc).expect("entry in pivot column").1.clone();
            let (st, ss) = F::scales(&pivot_val, &lead);
            let new_row = combine_rows(&row, &st, &pivot_row, &ss);
            // update column memberships
            for &(c, _) in &row {
                let old = col_rows[c as usize].len();
                queue.remove(&(old, c));
                col_rows[c as usize].remove(&t);
                changed.insert(c);
            }
            for &(c, _) in &new_row {
                let old = col_rows[c as usize].len();
                queue.remove(&(old, c));
                col_rows[c as usize].insert(t);
                changed.insert(c);
            }
            debug_assert!(new_row.iter().all(|e| e.0 != pc));
            rows[t as usize] = if new_row.is_empty() { None } else { Some(new_row) };
        }
        for c in changed {
            let n = col_rows[c as usize].len();
            if n > 0 {
                queue.insert((n, c));
            }
        }
    }
    rank
}

fn int_rows(m: &SparseIntMatrix) -> Vec<Vec<(u32, i64)>> {
    // rows of the smaller orientation keep the elimination shallow
    let rows = m.rows();
    rows.into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c as u32, v)).collect())
        .collect()
}

/// Rank over the rationals by integer elimination with content removal.
pub fn rank_fraction_free(m: &SparseIntMatrix) -> usize {
    let rows = int_rows(m)
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    eliminate::<BigInt>(m.num_cols(), rows)
}

/// Rank modulo the prime `p`.
pub fn rank_mod(m: &SparseIntMatrix, p: u64) -> usize {
    let prev = MODULUS.with(|c| c.replace(p));
    let rows = int_rows(m)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(c, v)| (c, ModP(v.rem_euclid(p as i64) as u64)))
                .filter(|e| e.1 .0 != 0)
                .collect()
        })
        .collect();
    let r = eliminate::<ModP>(m.num_cols(), rows);
    MODULUS.with(|c| c.set(prev));
    r
}

/// Exact rank, choosing the method from the matrix size.
pub fn rank_exact(m: &SparseIntMatrix, budget: &Budget) -> RankResult {
    if m.nnz() > budget.modular_threshold_nnz {
        rank_with(m, RankMethod::Modular)
    } else {
        rank_with(m, RankMethod::FractionFree)
    }
}

pub fn rank_with(m: &SparseIntMatrix, method: RankMethod) -> RankResult {
    match method {
        RankMethod::FractionFree => RankResult {
            rank: rank_fraction_free(m),
            method,
            primes_used: vec![],
            consistent: true,
        },
        RankMethod::Modular => {
            let ranks: Vec<usize> = PRIMES.iter().map(|&p| rank_mod(m, p)).collect();
            RankResult {
                rank: *ranks.iter().max().expect("three primes"),
                method,
                primes_used: PRIMES.to_vec(),
                consistent: ranks.iter().all(|&r| r == ranks[0]),
            }
        }
    }
}

/// A block of the total complex: pairs with fixed loop orders
/// `(e1 - v1, e2 - v2)` and fixed total vertex count. The differential maps
/// block `n` to block `n + 1` of the same loop orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub loops: (i64, i64),
    pub vertices: usize,
}

impl Block {
    pub fn of(b: Bidegree) -> Block {
        Block {
            loops: b.loop_orders(),
            vertices: b.total_vertices(),
        }
    }

    /// All bidegrees of the block with both sides nonempty.
    pub fn bidegrees(self) -> Vec<Bidegree> {
        let (l1, l2) = self.loops;
        (1..self.vertices)
            .filter_map(|v1| {
                let v2 = self.vertices - v1;
                let e1 = v1 as i64 + l1;
                let e2 = v2 as i64 + l2;
                (e1 >= 0 && e2 >= 0).then(|| Bidegree::new(v1, e1 as usize, v2, e2 as usize))
            })
            .collect()
    }

    pub fn next(self) -> Block {
        Block {
            vertices: self.vertices + 1,
            ..self
        }
    }
}

/// A rectangular window `v1 + v2 <= max_vertices`, `e1 + e2 <= max_edges`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Window {
    pub fn contains(&self, b: Bidegree) -> bool {
        b.total_vertices() <= self.max_vertices && b.total_edges() <= self.max_edges
    }

    /// Blocks meeting the window, in increasing order.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = BTreeSet::new();
        for n in 2..=self.max_vertices {
            for v1 in 1..n {
                let v2 = n - v1;
                for e1 in 0..=self.max_edges {
                    for e2 in 0..=self.max_edges - e1 {
                        out.insert(Block::of(Bidegree::new(v1, e1, v2, e2)));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Whether both the incoming and outgoing differentials of `block` have
    /// all their bidegrees inside the window.
    pub fn is_safe(&self, block: Block) -> bool {
        let inside = |b: Block| b.bidegrees().into_iter().all(|x| self.contains(x));
        inside(block) && inside(block.next())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v1+v2<={},e1+e2<={}", self.max_vertices, self.max_edges)
    }
}

impl std::str::FromStr for Window {
    type Err = Error;
    /// `v1+v2<=A,e1+e2<=B`, in either order.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad window {s:?}; expected v1+v2<=A,e1+e2<=B"));
        let (mut v, mut e) = (None, None);
        for part in s.split(',') {
            let (k, n) = part.split_once("<=").ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "v1+v2" => v = Some(n),
                "e1+e2" => e = Some(n),
                _ => return Err(bad()),
            }
        }
        Ok(Window {
            max_vertices: v.ok_or_else(bad)?,
            max_edges: e.ok_or_else(bad)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    pub bidegrees: Vec<Bidegree>,
    pub dim: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub betti: usize,
    pub safe: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<Block, BettiEntry>,
}

impl BettiTable {
    /// Safe blocks with nonzero Betti number.
    pub fn nonzero_safe(&self) -> Vec<(Block, usize)> {
        self.entries
            .iter()
            .filter(|(_, e)| e.safe && e.betti > 0)
            .map(|(b, e)| (*b, e.betti))
            .collect()
    }

    /// One line per block: the bidegrees joined by `;`, then
    /// `dim rank_out rank_in betti safe=<0|1>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in self.entries.values() {
            let names: Vec<String> = e.bidegrees.iter().map(|b| b.to_string()).collect();
            s.push_str(&format!(
                "{} {} {} {} {} safe={}\n",
                names.join(";"),
                e.dim,
                e.rank_out,
                e.rank_in,
                e.betti,
                e.safe as u8
            ));
        }
        s
    }
}

/// Basis slices and differential matrices of a complex over a window.
pub struct ChainData {
    pub parities: Parities,
    pub complex: Complex,
    pub slices: BTreeMap<Bidegree, BasisSlice>,
}

impl ChainData {
    /// Enumerates every slice of the window plus the blocks one step above
    /// it, so outgoing differentials can always be assembled.
    pub fn build(window: Window, parities: Parities, complex: Complex, budget: &Budget) -> Result<ChainData> {
        let mut slices = BTreeMap::new();
        for block in window.blocks() {
            for b in block.bidegrees().into_iter().chain(block.next().bidegrees()) {
                if let std::collections::btree_map::Entry::Vacant(slot) = slices.entry(b) {
                    slot.insert(crate::pair::enumerate_basis(b, parities, complex.slice_flags(), budget)?);
                }
            }
        }
        Ok(ChainData {
            parities,
            complex,
            slices,
        })
    }

    fn block_slices(&self, block: Block) -> Result<Vec<BasisSlice>> {
        block
            .bidegrees()
            .into_iter()
            .map(|b| {
                self.slices
                    .get(&b)
                    .cloned()
                    .ok_or_else(|| Error::ChainMismatch(format!("slice {b} was not enumerated")))
            })
            .collect()
    }

    /// Differential from `block` to the next block as one matrix.
    pub fn matrix(&self, block: Block) -> Result<SparseIntMatrix> {
        let dom = self.block_slices(block)?;
        let cod = self.block_slices(block.next())?;
        let mut entries = Vec::new();
        let mut col = 0;
        let rows: usize = cod.iter().map(|s| s.len()).sum();
        for s in &dom {
            let m = assemble_matrix(s, &cod, self.complex)?;
            entries.extend(m.entries().iter().map(|&(r, c, v)| (r, c + col, v)));
            col += s.len();
        }
        SparseIntMatrix::new(
            rows,
            col,
            entries,
            cod.iter().map(|s| (s.bidegree, s.len())).collect(),
            dom.iter().map(|s| (s.bidegree, s.len())).collect(),
        )
    }
}

/// Betti numbers of every block of the window. Consecutive matrices are
/// checked to compose to zero.
pub fn betti(window: Window, parities: Parities, complex: Complex, budget: &Budget) -> Result<(BettiTable, ChainData)> {
    let data = ChainData::build(window, parities, complex, budget)?;
    let mut table = BettiTable::default();
    let mut out_ranks: BTreeMap<Block, (usize, SparseIntMatrix)> = BTreeMap::new();
    for block in window.blocks() {
        let m = data.matrix(block)?;
        let r = rank_exact(&m, budget);
        if !r.consistent {
            return Err(Error::Budget {
                what: "modular rank".into(),
                detail: format!("primes disagree on block {block:?}"),
            });
        }
        out_ranks.insert(block, (r.rank, m));
    }
    for block in window.blocks() {
        let (rank_out, m_out) = &out_ranks[&block];
        let prev = Block {
            vertices: block.vertices - 1,
            ..block
        };
        let rank_in = match out_ranks.get(&prev) {
            Some((r, m_in)) => {
                let prod = m_out.mul(m_in)?;
                if prod.nnz() != 0 {
                    return Err(Error::ChainMismatch(format!("differentials do not compose to zero at {block:?}")));
                }
                *r
            }
            None if prev.bidegrees().is_empty() => 0,
            None => {
                let m_in = data.matrix(prev)?;
                rank_exact(&m_in, budget).rank
            }
        };
        let bidegrees = block.bidegrees();
        let dim: usize = bidegrees.iter().map(|b| data.slices[b].len()).sum();
        let betti = dim
            .checked_sub(rank_out + rank_in)
            .ok_or_else(|| Error::ChainMismatch(format!("negative Betti number at {block:?}")))?;
        table.entries.insert(
            block,
            BettiEntry {
                bidegrees,
                dim,
                rank_out: *rank_out,
                rank_in,
                betti,
                safe: window.is_safe(block),
            },
        );
    }
    Ok((table, data))
}

/// Whether `x` is an integer-rational combination of `columns`, decided
/// by comparing ranks with and without `x` appended.
pub fn in_span(columns: &[LinearCombination], x: &LinearCombination, budget: &Budget) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let mut index: BTreeMap<&crate::graph::CanonicalKey, usize> = BTreeMap::new();
    for k in columns.iter().flat_map(|c| c.keys()).chain(x.keys()) {
        let n = index.len();
        index.entry(k).or_insert(n);
    }
    let mut entries = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        entries.extend(col.iter().map(|(k, c)| (index[k], j, c)));
    }
    let d = SparseIntMatrix::from_entries(index.len(), columns.len(), entries.clone())?;
    entries.extend(x.iter().map(|(k, c)| (index[k], columns.len(), c)));
    let aug = SparseIntMatrix::from_entries(index.len(), columns.len() + 1, entries)?;
    Ok(rank_exact(&d, budget).rank == rank_exact(&aug, budget).rank)
}

/// Coordinates of `x` in the concatenation of `slices`.
fn coordinates(x: &LinearCombination, slices: &[BasisSlice]) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for (k, c) in x.iter() {
        let mut off = 0;
        let mut found = false;
        for s in slices {
            if let Some(i) = s.position(k) {
                out.push((off + i, c));
                found = true;
                break;
            }
            off += s.len();
        }
        if !found {
            return Err(Error::MissingCodomainKey(k.hex()));
        }
    }
    Ok(out)
}

/// Whether `x` is closed for the differential of `complex`.
pub fn is_cocycle(x: &LinearCombination, parities: Parities, complex: Complex) -> Result<bool> {
    let mut total = LinearCombination::new();
    for (k, c) in x.iter() {
        let p = EntangledPair::from_key(k, parities)?;
        total.add_scaled(&induced_delta(&p, complex)?, c);
    }
    Ok(total.is_zero())
}

/// Whether `x` lies in the image of the differential from `preimage`,
/// which must hold every source slice of x's block.
pub fn is_exact(x: &LinearCombination, preimage: &[BasisSlice], target: &[BasisSlice], complex: Complex, budget: &Budget) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let rows: usize = target.iter().map(|s| s.len()).sum();
    let mut entries = Vec::new();
    let mut col = 0;
    for s in preimage {
        let m = assemble_matrix(s, target, complex)?;
        entries.extend(m.entries().iter().map(|&(r, c, v)| (r, c + col, v)));
        col += s.len();
    }
    let d = SparseIntMatrix::from_entries(rows, col, entries.clone())?;
    for (r, c) in coordinates(x, target)? {
        entries.push((r, col, c));
    }
    let aug = SparseIntMatrix::from_entries(rows, col + 1, entries)?;
    Ok(rank_exact(&d, budget).rank == rank_exact(&aug, budget).rank)
}
