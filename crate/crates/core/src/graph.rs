//! Oriented graphs with parity-dependent orientation conventions.
//!
//! At even parity the orientation of a graph is an ordering of its edges;
//! at odd parity it is an ordering of its vertices together with a direction
//! on every edge. Both parities store edges as an ordered list of directed
//! pairs, and the part of the data that carries no sign is quotiented out by
//! [`canonicalize`].

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::canon::{self, Frame, Link, Mode};
use crate::error::{Error, Result};

/// Parity-carrying integer (`c`, `d` or `p`). Only its residue mod 2 affects
/// signs; the full value enters degree computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parity(pub i64);

impl Parity {
    pub fn is_odd(self) -> bool {
        self.0.rem_euclid(2) == 1
    }

    /// `(-1)^p`.
    pub fn sign(self) -> Sign {
        if self.is_odd() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_odd(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_odd(self.is_minus() != rhs.is_minus())
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Opaque canonical encoding of an isomorphism class. Keys of different
/// kinds (graphs of either parity, entangled pairs) never collide.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub(crate) Box<[u8]>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn tag(&self) -> u8 {
        self.0[0]
    }

    pub(crate) fn body(&self) -> &[u8] {
        &self.0[1..]
    }

    pub(crate) fn with_tag(tag: u8, body: &[u8]) -> Self {
        let mut v = Vec::with_capacity(body.len() + 1);
        v.push(tag);
        v.extend_from_slice(body);
        CanonicalKey(v.into_boxed_slice())
    }

    /// Lowercase hex rendering, convenient for logs and error messages.
    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.hex())
    }
}

/// Outcome of canonicalization: the key of the class and, unless the class
/// vanishes, the sign `s` with `input = s * representative`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canon {
    Zero(CanonicalKey),
    Signed(CanonicalKey, Sign),
}

impl Canon {
    pub fn key(&self) -> &CanonicalKey {
        match self {
            Canon::Zero(k) | Canon::Signed(k, _) => k,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Canon::Zero(_))
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            Canon::Zero(_) => None,
            Canon::Signed(_, s) => Some(*s),
        }
    }
}

pub(crate) const TAG_GRAPH: u8 = 0x10;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    pub num_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub parity: Parity,
    pub coefficient_sign: Sign,
}

impl OrientedGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>, parity: Parity) -> Result<Self> {
        let g = OrientedGraph {
            num_vertices,
            edges,
            parity,
            coefficient_sign: Sign::Plus,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_vertices > canon::MAX_VERTICES {
            return Err(Error::Structural(format!(
                "{} vertices exceeds the supported maximum {}",
                self.num_vertices,
                canon::MAX_VERTICES
            )));
        }
        if self.edges.len() > 255 {
            return Err(Error::Structural("more than 255 edges".into()));
        }
        for &(a, b) in &self.edges {
            if a >= self.num_vertices || b >= self.num_vertices {
                return Err(Error::Structural(format!(
                    "edge {a}-{b} has an endpoint outside 0..{}",
                    self.num_vertices
                )));
            }
        }
        Ok(())
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn single_vertex(parity: Parity) -> Self {
        OrientedGraph::new(1, vec![], parity).expect("valid")
    }

    /// Complete graph on `n` vertices with edges in lexicographic order.
    pub fn complete(n: usize, parity: Parity) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        OrientedGraph::new(n, edges, parity).expect("valid")
    }

    /// Cycle `0-1-...-(n-1)-0`.
    pub fn cycle(n: usize, parity: Parity) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        OrientedGraph::new(n, edges, parity).expect("valid")
    }

    pub fn with_sign(mut self, s: Sign) -> Self {
        self.coefficient_sign = s;
        self
    }

    /// Edge-valency of every vertex; a loop contributes 2.
    pub fn valencies(&self) -> Vec<usize> {
        let mut val = vec![0; self.num_vertices];
        for &(a, b) in &self.edges {
            val[a] += 1;
            val[b] += 1;
        }
        val
    }

    /// Disjoint union, `self` first. Orientation data is concatenated.
    pub fn disjoint_union(&self, other: &OrientedGraph) -> Result<Self> {
        if self.parity.is_odd() != other.parity.is_odd() {
            return Err(Error::Precondition("union of graphs of different parity".into()));
        }
        let n = self.num_vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + n, b + n)));
        Ok(OrientedGraph {
            num_vertices: n + other.num_vertices,
            edges,
            parity: self.parity,
            coefficient_sign: self.coefficient_sign * other.coefficient_sign,
        })
    }

    /// Representative of the class encoded by `key`, with sign +1.
    pub fn from_key(key: &CanonicalKey, parity: Parity) -> Result<Self> {
        let (_, g) = decode_graph(key, parity)?;
        Ok(g)
    }

    pub(crate) fn small_edges(&self) -> SmallVec<[(u8, u8); 16]> {
        self.edges.iter().map(|&(a, b)| (a as u8, b as u8)).collect()
    }
}

/// Decodes a graph key into vertex colors and the representative.
pub fn decode_graph(key: &CanonicalKey, parity: Parity) -> Result<(Vec<u32>, OrientedGraph)> {
    let bad = || Error::Parse("not a graph key".into());
    if key.0.is_empty() || key.tag() & 0xf0 != TAG_GRAPH {
        return Err(bad());
    }
    if (key.tag() & 1 == 1) != parity.is_odd() {
        return Err(Error::Precondition("key parity does not match".into()));
    }
    let d = canon::decode(key.body()).ok_or_else(bad)?;
    let edges = d.links.iter().map(|l| (l.2 as usize, l.3 as usize)).collect();
    let num_vertices = d.colors.len();
    Ok((
        d.colors,
        OrientedGraph {
            num_vertices,
            edges,
            parity,
            coefficient_sign: Sign::Plus,
        },
    ))
}

fn graph_frame(n: usize, edges: &[(u8, u8)], odd: bool, vcol: Option<&[u32]>, ecol: Option<&[u8]>) -> Frame {
    Frame {
        colors: match vcol {
            Some(c) => c.to_vec(),
            None => vec![0; n],
        },
        groups: vec![0; n],
        links: edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Link {
                color: ecol.map_or(0, |c| c[i]),
                ..Link::plain(a as usize, b as usize, 0)
            })
            .collect(),
        odd_blocks: SmallVec::from_slice(&[odd]),
    }
}

/// Fast path used by the differential: canonical key and orientation sign
/// (0 for zero classes) of an uncolored graph.
pub(crate) fn canon_raw(n: usize, edges: &[(u8, u8)], odd: bool) -> (CanonicalKey, i8) {
    let frame = graph_frame(n, edges, odd, None, None);
    let l = canon::canonical_labeling(&frame, Mode::Signed, false);
    (CanonicalKey::with_tag(TAG_GRAPH | odd as u8, &l.key), l.sign)
}

/// Isomorphism class of the underlying multigraph, ignoring orientation.
pub(crate) fn shape_key(n: usize, edges: &[(u8, u8)]) -> CanonicalKey {
    let frame = graph_frame(n, edges, false, None, None);
    let l = canon::canonical_labeling(&frame, Mode::Unsigned, false);
    CanonicalKey::with_tag(TAG_GRAPH | 0x08, &l.key)
}

fn check_colors(g: &OrientedGraph, vcol: Option<&[u32]>, ecol: Option<&[u8]>) -> Result<()> {
    if vcol.is_some_and(|c| c.len() != g.num_vertices) {
        return Err(Error::Structural("vertex coloring has wrong length".into()));
    }
    if ecol.is_some_and(|c| c.len() != g.edges.len()) {
        return Err(Error::Structural("edge coloring has wrong length".into()));
    }
    Ok(())
}

/// Canonical key of `g` (with optional colorings) and the sign relating `g`
/// to the canonical representative, or [`Canon::Zero`] when some colored
/// automorphism reverses the orientation.
pub fn canonicalize(g: &OrientedGraph, vertex_colors: Option<&[u32]>, edge_colors: Option<&[u8]>) -> Result<Canon> {
    g.validate()?;
    check_colors(g, vertex_colors, edge_colors)?;
    let odd = g.parity.is_odd();
    let frame = graph_frame(g.num_vertices, &g.small_edges(), odd, vertex_colors, edge_colors);
    let l = canon::canonical_labeling(&frame, Mode::Signed, false);
    let key = CanonicalKey::with_tag(TAG_GRAPH | odd as u8, &l.key);
    Ok(match l.sign {
        0 => Canon::Zero(key),
        s => Canon::Signed(key, Sign::from_odd(s < 0) * g.coefficient_sign),
    })
}

/// The canonical representative of `g` carrying the sign of `g`, or `None`
/// for a zero graph.
pub fn canonical_form(g: &OrientedGraph) -> Result<Option<OrientedGraph>> {
    match canonicalize(g, None, None)? {
        Canon::Zero(_) => Ok(None),
        Canon::Signed(k, s) => Ok(Some(OrientedGraph::from_key(&k, g.parity)?.with_sign(s))),
    }
}

/// A colored automorphism: vertex `v` goes to `vertex_perm[v]`, edge `i` goes
/// to edge `edge_perm[i]`, reversed when `flips[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub vertex_perm: Vec<usize>,
    pub edge_perm: Vec<usize>,
    pub flips: Vec<bool>,
}

impl Automorphism {
    /// Action on the orientation of a graph of the given parity.
    pub fn orientation_sign(&self, parity: Parity) -> Sign {
        if parity.is_odd() {
            let flips = self.flips.iter().filter(|&&f| f).count() % 2 == 1;
            Sign::from_odd(canon::odd_inversions(&self.vertex_perm) ^ flips)
        } else {
            Sign::from_odd(canon::odd_inversions(&self.edge_perm))
        }
    }
}

/// Generators of the colored automorphism group of `g` (vertex
/// automorphisms lifted to edges, plus swaps of parallel edges and loop
/// flips).
pub fn automorphism_group(
    g: &OrientedGraph,
    vertex_colors: Option<&[u32]>,
    edge_colors: Option<&[u8]>,
) -> Result<Vec<Automorphism>> {
    g.validate()?;
    check_colors(g, vertex_colors, edge_colors)?;
    let frame = graph_frame(g.num_vertices, &g.small_edges(), false, vertex_colors, edge_colors);
    let l = canon::canonical_labeling(&frame, Mode::Unsigned, true);
    let ecol = |i: usize| edge_colors.map_or(0, |c| c[i]);
    let m = g.edges.len();
    let mut gens = Vec::new();
    for gamma in &l.automorphisms {
        let gamma: Vec<usize> = gamma.iter().map(|&x| x as usize).collect();
        let mut used = vec![false; m];
        let mut edge_perm = vec![0; m];
        let mut flips = vec![false; m];
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            let (x, y) = (gamma[a], gamma[b]);
            let pick = (0..m)
                .find(|&j| !used[j] && ecol(j) == ecol(i) && g.edges[j] == (x, y))
                .map(|j| (j, false))
                .or_else(|| {
                    (0..m)
                        .find(|&j| !used[j] && ecol(j) == ecol(i) && g.edges[j] == (y, x))
                        .map(|j| (j, true))
                })
                .expect("vertex automorphism lifts to edges");
            used[pick.0] = true;
            edge_perm[i] = pick.0;
            flips[i] = pick.1;
        }
        gens.push(Automorphism {
            vertex_perm: gamma,
            edge_perm,
            flips,
        });
    }
    let id: Vec<usize> = (0..g.num_vertices).collect();
    for i in 0..m {
        let (a, b) = g.edges[i];
        if a == b {
            let mut flips = vec![false; m];
            flips[i] = true;
            gens.push(Automorphism {
                vertex_perm: id.clone(),
                edge_perm: (0..m).collect(),
                flips,
            });
        }
        if let Some(j) = (i + 1..m).find(|&j| {
            ecol(j) == ecol(i) && (g.edges[j] == (a, b) || g.edges[j] == (b, a))
        }) {
            let mut edge_perm: Vec<usize> = (0..m).collect();
            edge_perm.swap(i, j);
            let mut flips = vec![false; m];
            let rev = g.edges[j] != (a, b);
            flips[i] = rev;
            flips[j] = rev;
            gens.push(Automorphism {
                vertex_perm: id.clone(),
                edge_perm,
                flips,
            });
        }
    }
    Ok(gens)
}

/// `p(v - 1) + (1 - p)e`.
pub fn degree(g: &OrientedGraph) -> i64 {
    graph_degree(g.parity, g.num_vertices, g.edges.len())
}

pub(crate) fn graph_degree(p: Parity, v: usize, e: usize) -> i64 {
    p.0 * (v as i64 - 1) + (1 - p.0) * e as i64
}

/// Vertex sets of the connected components, each sorted, ordered by their
/// smallest vertex.
pub fn connected_components(g: &OrientedGraph) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.num_vertices);
    for &(a, b) in &g.edges {
        uf.union(a, b);
    }
    uf.groups()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }

    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let r = self.find(v);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(v);
        }
        out
    }
}

impl fmt::Display for OrientedGraph {
    /// `p=<int>;v=<int>;E=<tail>-<head>,...;s=<+1|-1>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={};v={};E=", self.parity, self.num_vertices)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, ";s={}", self.coefficient_sign)
    }
}

pub(crate) fn parse_sign(s: &str) -> Result<Sign> {
    match s {
        "+1" | "1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        _ => Err(Error::Parse(format!("bad sign {s:?}"))),
    }
}

pub(crate) fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>> {
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad edge {t:?}")))?;
            let p = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex {x:?}")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

impl FromStr for OrientedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut v = None;
        let mut e = None;
        let mut sign = None;
        for field in s.trim().split(';') {
            let (k, val) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad field {field:?}")))?;
            match k {
                "p" => p = Some(val.parse::<i64>().map_err(|_| Error::Parse(format!("bad parity {val:?}")))?),
                "v" => v = Some(val.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex count {val:?}")))?),
                "E" => e = Some(parse_edges(val)?),
                "s" => sign = Some(parse_sign(val)?),
                _ => return Err(Error::Parse(format!("unknown field {k:?}"))),
            }
        }
        let missing = |n: &str| Error::Parse(format!("missing field {n}"));
        let g = OrientedGraph {
            num_vertices: v.ok_or_else(|| missing("v"))?,
            edges: e.ok_or_else(|| missing("E"))?,
            parity: Parity(p.ok_or_else(|| missing("p"))?),
            coefficient_sign: sign.ok_or_else(|| missing("s"))?,
        };
        g.validate()?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVEN: Parity = Parity(2);
    const ODD: Parity = Parity(1);

    fn g(n: usize, e: &[(usize, usize)], p: Parity) -> OrientedGraph {
        OrientedGraph::new(n, e.to_vec(), p).unwrap()
    }

    #[test]
    fn path_edge_swap_is_odd_at_even_parity() {
        let labels = [0, 1, 2];
        let a = canonicalize(&g(3, &[(0, 1), (1, 2)], EVEN), Some(&labels), None).unwrap();
        let b = canonicalize(&g(3, &[(1, 2), (0, 1)], EVEN), Some(&labels), None).unwrap();
        assert_eq!(a.key(), b.key());
        assert_eq!(a.sign().unwrap() * b.sign().unwrap(), Sign::Minus);
    }

    #[test]
    fn double_edge_vanishes_at_even_parity() {
        assert!(canonicalize(&g(2, &[(0, 1), (0, 1)], EVEN), None, None).unwrap().is_zero());
        // the reflection of the unlabeled path swaps its two edges
        assert!(canonicalize(&g(3, &[(0, 1), (1, 2)], EVEN), None, None).unwrap().is_zero());
    }

    #[test]
    fn loop_vanishes_at_odd_parity() {
        assert!(canonicalize(&g(1, &[(0, 0)], ODD), None, None).unwrap().is_zero());
        assert!(!canonicalize(&g(1, &[(0, 0)], EVEN), None, None).unwrap().is_zero());
    }

    #[test]
    fn small_zero_and_nonzero_graphs() {
        assert!(canonicalize(&OrientedGraph::cycle(3, EVEN), None, None).unwrap().is_zero());
        assert!(canonicalize(&OrientedGraph::cycle(4, EVEN), None, None).unwrap().is_zero());
        assert!(!canonicalize(&OrientedGraph::complete(4, EVEN), None, None).unwrap().is_zero());
        assert!(!canonicalize(&OrientedGraph::cycle(3, ODD), None, None).unwrap().is_zero());
    }

    #[test]
    fn edge_flip_is_odd_at_odd_parity() {
        let labels = [0, 1, 2];
        let a = canonicalize(&g(3, &[(0, 1), (1, 2)], ODD), Some(&labels), None).unwrap();
        let b = canonicalize(&g(3, &[(1, 0), (1, 2)], ODD), Some(&labels), None).unwrap();
        assert_eq!(a.key(), b.key());
        assert_eq!(a.sign().unwrap() * b.sign().unwrap(), Sign::Minus);
    }

    #[test]
    fn representative_is_fixed_with_plus_sign() {
        let k4 = OrientedGraph::complete(4, EVEN).with_sign(Sign::Minus);
        let rep = canonical_form(&k4).unwrap().unwrap();
        assert_eq!(rep.coefficient_sign, Sign::Minus);
        let again = canonicalize(&rep.clone().with_sign(Sign::Plus), None, None).unwrap();
        assert_eq!(again.sign(), Some(Sign::Plus));
    }

    #[test]
    fn automorphism_group_sizes() {
        let edge = g(2, &[(0, 1)], EVEN);
        assert_eq!(automorphism_group(&edge, None, None).unwrap().len(), 2);
        let k4 = OrientedGraph::complete(4, EVEN);
        assert_eq!(automorphism_group(&k4, None, None).unwrap().len(), 24);
        let path = g(3, &[(0, 1), (1, 2)], EVEN);
        let gens = automorphism_group(&path, Some(&[0, 1, 2]), None).unwrap();
        assert!(gens.iter().all(|a| a.vertex_perm == vec![0, 1, 2]));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&g(2, &[(0, 1)], EVEN)), 1);
        assert_eq!(degree(&OrientedGraph::complete(4, EVEN)), 0);
        assert_eq!(degree(&OrientedGraph::single_vertex(ODD)), 0);
        assert_eq!(degree(&OrientedGraph::single_vertex(EVEN)), 0);
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&OrientedGraph::single_vertex(EVEN)).len(), 1);
        assert_eq!(connected_components(&g(4, &[(0, 1), (2, 3)], EVEN)).len(), 2);
        assert_eq!(connected_components(&OrientedGraph::complete(4, EVEN)).len(), 1);
    }

    #[test]
    fn text_roundtrip() {
        let x = g(3, &[(0, 1), (2, 1)], ODD).with_sign(Sign::Minus);
        let s = x.to_string();
        assert_eq!(s, "p=1;v=3;E=0-1,2-1;s=-1");
        assert_eq!(s.parse::<OrientedGraph>().unwrap(), x);
        assert!("p=1;v=2;E=0-5;s=+1".parse::<OrientedGraph>().is_err());
    }

    #[test]
    fn malformed_endpoint_rejected() {
        let bad = OrientedGraph {
            num_vertices: 2,
            edges: vec![(0, 2)],
            parity: EVEN,
            coefficient_sign: Sign::Plus,
        };
        assert!(matches!(canonicalize(&bad, None, None), Err(Error::Structural(_))));
    }
}
