//! Brute-force oracles for integration tests. Deliberately naive: plain
//! vectors, exhaustive permutation search, no shared code with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// A pair presentation: vertices `0..v1` and `0..v2`, edges of each side,
/// and for each edge the partner vertex carrying its hair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pres {
    pub v1: usize,
    pub v2: usize,
    pub e1: Vec<(usize, usize)>,
    pub e2: Vec<(usize, usize)>,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
}

/// Normal form: per side, the sorted list of `(low, high, hair)` triples.
pub type Form = (usize, usize, Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>);

impl Pres {
    pub fn swapped(&self) -> Pres {
        Pres {
            v1: self.v2,
            v2: self.v1,
            e1: self.e2.clone(),
            e2: self.e1.clone(),
            f1: self.f2.clone(),
            f2: self.f1.clone(),
        }
    }

    pub fn from_pair(p: &gcx::EntangledPair) -> (Pres, i64) {
        (
            Pres {
                v1: p.g1.num_vertices,
                v2: p.g2.num_vertices,
                e1: p.g1.edges.clone(),
                e2: p.g2.edges.clone(),
                f1: p.f1.clone(),
                f2: p.f2.clone(),
            },
            p.total_sign().value(),
        )
    }

    pub fn connected(&self) -> bool {
        let n = self.v1 + self.v2;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] == x {
                x
            } else {
                let r = find(p, p[x]);
                p[x] = r;
                r
            }
        }
        let join = |a: usize, b: usize, p: &mut Vec<usize>| {
            let (x, y) = (find(p, a), find(p, b));
            p[x] = y;
        };
        for (i, &(a, b)) in self.e1.iter().enumerate() {
            join(a, b, &mut parent);
            join(a, self.v1 + self.f1[i], &mut parent);
        }
        for (i, &(a, b)) in self.e2.iter().enumerate() {
            join(self.v1 + a, self.v1 + b, &mut parent);
            join(self.v1 + a, self.f2[i], &mut parent);
        }
        let roots: BTreeSet<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        roots.len() == 1
    }

    pub fn has_univalent(&self) -> bool {
        let mut d1 = vec![0; self.v1];
        let mut d2 = vec![0; self.v2];
        for &(a, b) in &self.e1 {
            d1[a] += 1;
            d1[b] += 1;
        }
        for &(a, b) in &self.e2 {
            d2[a] += 1;
            d2[b] += 1;
        }
        d1.contains(&1) || d2.contains(&1)
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn inversions<T: Ord>(xs: &[T]) -> usize {
    let mut n = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                n += 1;
            }
        }
    }
    n
}

fn side(
    edges: &[(usize, usize)],
    hairs: &[usize],
    own: &[usize],
    other: &[usize],
    odd: bool,
) -> (Vec<(usize, usize, usize)>, i64, bool) {
    let mut sign = 1;
    let mut t: Vec<(usize, usize, usize)> = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (x, y) = (own[a], own[b]);
        if odd && x > y {
            sign = -sign;
        }
        t.push((x.min(y), x.max(y), other[hairs[i]]));
    }
    if odd {
        if inversions(own) % 2 == 1 {
            sign = -sign;
        }
    } else if inversions(&t) % 2 == 1 {
        sign = -sign;
    }
    let mut sorted = t.clone();
    sorted.sort();
    let repeated = sorted.windows(2).any(|w| w[0] == w[1]);
    (sorted, sign, repeated && !odd)
}

/// Minimal normal form over all vertex relabelings with the sign taking
/// the presentation to it, or `None` when some relabeling reaches the same
/// form with the opposite sign (or two equal edges meet on an edge-ordered
/// side).
pub fn canon(p: &Pres, odd: (bool, bool)) -> Option<(Form, i64)> {
    let mut best: Option<(Form, BTreeSet<i64>)> = None;
    for s1 in permutations(p.v1) {
        for s2 in permutations(p.v2) {
            let (a, sa, za) = side(&p.e1, &p.f1, &s1, &s2, odd.0);
            let (b, sb, zb) = side(&p.e2, &p.f2, &s2, &s1, odd.1);
            if za || zb {
                return None;
            }
            let form = (p.v1, p.v2, a, b);
            match &mut best {
                Some((f, signs)) if *f == form => {
                    signs.insert(sa * sb);
                }
                Some((f, _)) if *f < form => {}
                _ => best = Some((form, BTreeSet::from([sa * sb]))),
            }
        }
    }
    let (form, signs) = best?;
    (signs.len() == 1).then(|| (form, *signs.iter().next().unwrap()))
}

fn sequences(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..base).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn edge_lists(v: usize, e: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    if pairs.is_empty() {
        return if e == 0 { vec![vec![]] } else { vec![] };
    }
    sequences(e, pairs.len())
        .into_iter()
        .map(|s| s.into_iter().map(|i| pairs[i]).collect())
        .collect()
}

/// Every loop-free presentation at a bidegree passing `keep`.
pub fn presentations(v1: usize, e1: usize, v2: usize, e2: usize, mut keep: impl FnMut(&Pres) -> bool) -> Vec<Pres> {
    let mut out = Vec::new();
    for a in edge_lists(v1, e1) {
        for b in edge_lists(v2, e2) {
            for f1 in sequences(e1, v2) {
                for f2 in sequences(e2, v1) {
                    let p = Pres {
                        v1,
                        v2,
                        e1: a.clone(),
                        e2: b.clone(),
                        f1: f1.clone(),
                        f2,
                    };
                    if keep(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Distinct nonzero connected classes at a bidegree.
pub fn classes(v1: usize, e1: usize, v2: usize, e2: usize, odd: (bool, bool), mut keep: impl FnMut(&Pres) -> bool) -> BTreeSet<Form> {
    presentations(v1, e1, v2, e2, |p| p.connected() && keep(p))
        .iter()
        .filter_map(|p| canon(p, odd).map(|(f, _)| f))
        .collect()
}

/// First-side splitting: every distribution of the half-edges at a vertex,
/// the new edge from the vertex to the appended vertex with its hair on
/// every partner vertex, and the hairless attachment with weight −2.
pub fn naive_delta_prime(p: &Pres) -> Vec<(Pres, i64)> {
    let mut out = Vec::new();
    for v in 0..p.v1 {
        // (edge index, which end) for edge ends, then hair indices
        let ends: Vec<(usize, bool)> = p
            .e1
            .iter()
            .enumerate()
            .flat_map(|(i, &(a, b))| {
                let mut x = vec![];
                if a == v {
                    x.push((i, false));
                }
                if b == v {
                    x.push((i, true));
                }
                x
            })
            .collect();
        let hairs: Vec<usize> = (0..p.f2.len()).filter(|&j| p.f2[j] == v).collect();
        let k = ends.len() + hairs.len();
        for w in 0..p.v2 {
            let mut base = p.clone();
            base.v1 += 1;
            base.e1.push((v, p.v1));
            base.f1.push(w);
            for mask in 0..1usize << k {
                let mut t = base.clone();
                for (bit, &(i, head)) in ends.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        if head {
                            t.e1[i].1 = p.v1;
                        } else {
                            t.e1[i].0 = p.v1;
                        }
                    }
                }
                for (bit, &j) in hairs.iter().enumerate() {
                    if mask >> (ends.len() + bit) & 1 == 1 {
                        t.f2[j] = p.v1;
                    }
                }
                out.push((t, 1));
            }
            out.push((base, -2));
        }
    }
    out
}

/// `δ′ + (-1)^deg(g1) δ″` with `deg = c(v-1) + (1-c)e`.
pub fn naive_delta(p: &Pres, c: i64) -> Vec<(Pres, i64)> {
    let deg = c * (p.v1 as i64 - 1) + (1 - c) * p.e1.len() as i64;
    let k = if deg.rem_euclid(2) == 1 { -1 } else { 1 };
    let mut out = naive_delta_prime(p);
    for (t, x) in naive_delta_prime(&p.swapped()) {
        out.push((t.swapped(), k * x));
    }
    out
}

/// Canonical combination of a list of signed presentations.
pub fn collect(terms: &[(Pres, i64)], odd: (bool, bool), drop_univalent: bool) -> BTreeMap<Form, i64> {
    let mut acc = BTreeMap::new();
    for (t, x) in terms {
        if drop_univalent && t.has_univalent() {
            continue;
        }
        if let Some((f, s)) = canon(t, odd) {
            *acc.entry(f).or_insert(0) += s * x;
        }
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// Dense rank over the rationals, by plain Gaussian elimination.
pub fn dense_rank(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    let mut m = vec![vec![BigRational::zero(); cols]; rows];
    for &(r, c, v) in entries {
        m[r][c] = BigRational::from_integer(v.into());
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() * inv.clone();
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot).skip(c) {
                    *x -= y.clone() * f.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}
