//! Entangled pairs: two oriented graphs whose edges are attached as hairs to
//! the vertices of the partner graph.
//!
//! A pair is encoded for the canonical-labeling engine as one structure on
//! `V1 ⊔ V2`. Every edge of the first graph links its endpoints and is
//! anchored at its hair vertex in the second graph, and vice versa. The two
//! edge sets form separate orientation blocks with the parity of their side.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::canon::{self, Frame, Link, Mode, NO_ANCHOR};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{self, graph_degree, Canon, CanonicalKey, OrientedGraph, Parity, Sign, UnionFind};

pub(crate) const TAG_PAIR: u8 = 0x20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub v1: usize,
    pub e1: usize,
    pub v2: usize,
    pub e2: usize,
}

impl Bidegree {
    pub const fn new(v1: usize, e1: usize, v2: usize, e2: usize) -> Self {
        Bidegree { v1, e1, v2, e2 }
    }

    pub fn swapped(self) -> Self {
        Bidegree::new(self.v2, self.e2, self.v1, self.e1)
    }

    /// `(e1 - v1, e2 - v2)`, preserved by both halves of the differential.
    pub fn loop_orders(self) -> (i64, i64) {
        (self.e1 as i64 - self.v1 as i64, self.e2 as i64 - self.v2 as i64)
    }

    pub fn total_vertices(self) -> usize {
        self.v1 + self.v2
    }

    pub fn total_edges(self) -> usize {
        self.e1 + self.e2
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.v1, self.e1, self.v2, self.e2)
    }
}

impl FromStr for Bidegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad bidegree {s:?}")))?;
        match parts[..] {
            [v1, e1, v2, e2] => Ok(Bidegree::new(v1, e1, v2, e2)),
            _ => Err(Error::Parse(format!("bad bidegree {s:?}"))),
        }
    }
}

/// Parities `(c, d)` of the two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parities {
    pub c: Parity,
    pub d: Parity,
}

impl Parities {
    pub const fn new(c: i64, d: i64) -> Self {
        Parities {
            c: Parity(c),
            d: Parity(d),
        }
    }

    pub fn swapped(self) -> Self {
        Parities { c: self.d, d: self.c }
    }

    /// The four parity classes, as `(2,2), (2,1), (1,2), (1,1)`.
    pub fn all_classes() -> [Parities; 4] {
        [
            Parities::new(2, 2),
            Parities::new(2, 1),
            Parities::new(1, 2),
            Parities::new(1, 1),
        ]
    }

    pub(crate) fn tag(self) -> u8 {
        TAG_PAIR | (self.c.is_odd() as u8) << 1 | self.d.is_odd() as u8
    }
}

impl fmt::Display for Parities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EntangledPair {
    /// First graph, parity `c`.
    pub g1: OrientedGraph,
    /// Second graph, parity `d`.
    pub g2: OrientedGraph,
    /// Hair vertex in `g2` of every edge of `g1`.
    pub f1: Vec<usize>,
    /// Hair vertex in `g1` of every edge of `g2`.
    pub f2: Vec<usize>,
    pub coefficient_sign: Sign,
}

impl EntangledPair {
    pub fn new(g1: OrientedGraph, g2: OrientedGraph, f1: Vec<usize>, f2: Vec<usize>) -> Result<Self> {
        let p = EntangledPair {
            g1,
            g2,
            f1,
            f2,
            coefficient_sign: Sign::Plus,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.g1.validate()?;
        self.g2.validate()?;
        if self.f1.len() != self.g1.edges.len() || self.f2.len() != self.g2.edges.len() {
            return Err(Error::Structural("hair map is not total".into()));
        }
        if self.f1.iter().any(|&w| w >= self.g2.num_vertices) || self.f2.iter().any(|&v| v >= self.g1.num_vertices) {
            return Err(Error::Structural("hair attached outside the partner vertex set".into()));
        }
        if self.g1.num_vertices + self.g2.num_vertices > canon::MAX_VERTICES {
            return Err(Error::Structural("too many vertices".into()));
        }
        Ok(())
    }

    pub fn parities(&self) -> Parities {
        Parities {
            c: self.g1.parity,
            d: self.g2.parity,
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(
            self.g1.num_vertices,
            self.g1.edges.len(),
            self.g2.num_vertices,
            self.g2.edges.len(),
        )
    }

    /// Overall sign: the pair's own coefficient times those of both sides.
    pub fn total_sign(&self) -> Sign {
        self.coefficient_sign * self.g1.coefficient_sign * self.g2.coefficient_sign
    }

    pub fn with_sign(mut self, s: Sign) -> Self {
        self.coefficient_sign = s;
        self
    }

    /// The pair with the roles of the two sides exchanged.
    pub fn swapped(&self) -> EntangledPair {
        EntangledPair {
            g1: self.g2.clone(),
            g2: self.g1.clone(),
            f1: self.f2.clone(),
            f2: self.f1.clone(),
            coefficient_sign: self.coefficient_sign,
        }
    }

    /// Number of hairs sitting on each vertex of `g1` and of `g2`.
    pub fn hair_counts(&self) -> (Vec<usize>, Vec<usize>) {
        let mut h1 = vec![0; self.g1.num_vertices];
        let mut h2 = vec![0; self.g2.num_vertices];
        for &v in &self.f2 {
            h1[v] += 1;
        }
        for &w in &self.f1 {
            h2[w] += 1;
        }
        (h1, h2)
    }

    pub fn is_connected(&self) -> bool {
        self.raw().is_connected()
    }

    /// Representative of the class encoded by `key`, with sign +1.
    pub fn from_key(key: &CanonicalKey, parities: Parities) -> Result<Self> {
        RawPair::decode(key, parities)?.to_pair(parities)
    }

    pub(crate) fn raw(&self) -> RawPair {
        RawPair {
            v1: self.g1.num_vertices as u8,
            v2: self.g2.num_vertices as u8,
            e1: self.g1.small_edges(),
            e2: self.g2.small_edges(),
            f1: self.f1.iter().map(|&x| x as u8).collect(),
            f2: self.f2.iter().map(|&x| x as u8).collect(),
        }
    }
}

/// Compact working form of a pair, used on hot paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct RawPair {
    pub v1: u8,
    pub v2: u8,
    pub e1: SmallVec<[(u8, u8); 16]>,
    pub e2: SmallVec<[(u8, u8); 16]>,
    pub f1: SmallVec<[u8; 16]>,
    pub f2: SmallVec<[u8; 16]>,
}

impl RawPair {
    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.v1 as usize, self.e1.len(), self.v2 as usize, self.e2.len())
    }

    pub fn swapped(&self) -> RawPair {
        RawPair {
            v1: self.v2,
            v2: self.v1,
            e1: self.e2.clone(),
            e2: self.e1.clone(),
            f1: self.f2.clone(),
            f2: self.f1.clone(),
        }
    }

    pub fn frame(&self, odd: (bool, bool)) -> Frame {
        let (n1, n2) = (self.v1 as usize, self.v2 as usize);
        let mut colors = vec![0u32; n1 + n2];
        let mut groups = vec![0u8; n1 + n2];
        for i in n1..n1 + n2 {
            colors[i] = 1;
            groups[i] = 1;
        }
        let mut links = Vec::with_capacity(self.e1.len() + self.e2.len());
        for (i, &(a, b)) in self.e1.iter().enumerate() {
            links.push(Link {
                a,
                b,
                anchor: self.v1 + self.f1[i],
                block: 0,
                color: 0,
            });
        }
        for (i, &(a, b)) in self.e2.iter().enumerate() {
            links.push(Link {
                a: self.v1 + a,
                b: self.v1 + b,
                anchor: self.f2[i],
                block: 1,
                color: 0,
            });
        }
        Frame {
            colors,
            groups,
            links,
            odd_blocks: SmallVec::from_slice(&[odd.0, odd.1]),
        }
    }

    /// Canonical key and sign (0 for a zero class).
    pub fn canon(&self, par: Parities) -> (CanonicalKey, i8) {
        let frame = self.frame((par.c.is_odd(), par.d.is_odd()));
        let l = canon::canonical_labeling(&frame, Mode::Signed, false);
        (CanonicalKey::with_tag(par.tag(), &l.key), l.sign)
    }

    pub fn is_connected(&self) -> bool {
        let n1 = self.v1 as usize;
        let n = n1 + self.v2 as usize;
        if n == 0 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for (i, &(a, b)) in self.e1.iter().enumerate() {
            uf.union(a as usize, b as usize);
            uf.union(a as usize, n1 + self.f1[i] as usize);
        }
        for (i, &(a, b)) in self.e2.iter().enumerate() {
            uf.union(n1 + a as usize, n1 + b as usize);
            uf.union(n1 + a as usize, self.f2[i] as usize);
        }
        uf.count() == 1
    }

    pub fn has_univalent(&self) -> bool {
        let mut val = [0u8; canon::MAX_VERTICES + 6];
        let n1 = self.v1 as usize;
        for &(a, b) in &self.e1 {
            val[a as usize] += 1;
            val[b as usize] += 1;
        }
        for &(a, b) in &self.e2 {
            val[n1 + a as usize] += 1;
            val[n1 + b as usize] += 1;
        }
        val[..n1 + self.v2 as usize].contains(&1)
    }

    pub fn decode(key: &CanonicalKey, par: Parities) -> Result<RawPair> {
        let bad = || Error::Parse("not a pair key".into());
        if key.0.is_empty() || key.tag() & 0xf0 != TAG_PAIR {
            return Err(bad());
        }
        if key.tag() != par.tag() {
            return Err(Error::Precondition("key parities do not match".into()));
        }
        let d = canon::decode(key.body()).ok_or_else(bad)?;
        let v1 = d.colors.iter().take_while(|&&c| c == 0).count() as u8;
        let v2 = d.colors.len() as u8 - v1;
        let mut raw = RawPair {
            v1,
            v2,
            e1: SmallVec::new(),
            e2: SmallVec::new(),
            f1: SmallVec::new(),
            f2: SmallVec::new(),
        };
        for &(block, _, lo, hi, anchor) in &d.links {
            if anchor == NO_ANCHOR {
                return Err(bad());
            }
            if block == 0 {
                raw.e1.push((lo, hi));
                raw.f1.push(anchor - v1);
            } else {
                raw.e2.push((lo - v1, hi - v1));
                raw.f2.push(anchor);
            }
        }
        Ok(raw)
    }

    pub fn to_pair(&self, par: Parities) -> Result<EntangledPair> {
        let g1 = OrientedGraph::new(
            self.v1 as usize,
            self.e1.iter().map(|&(a, b)| (a as usize, b as usize)).collect(),
            par.c,
        )?;
        let g2 = OrientedGraph::new(
            self.v2 as usize,
            self.e2.iter().map(|&(a, b)| (a as usize, b as usize)).collect(),
            par.d,
        )?;
        EntangledPair::new(
            g1,
            g2,
            self.f1.iter().map(|&x| x as usize).collect(),
            self.f2.iter().map(|&x| x as usize).collect(),
        )
    }
}

/// Canonical key of a pair under joint automorphisms commuting with both
/// hair maps, with the sign relating the input to the representative.
pub fn pair_canonicalize(p: &EntangledPair) -> Result<Canon> {
    p.validate()?;
    let (key, s) = p.raw().canon(p.parities());
    Ok(match s {
        0 => Canon::Zero(key),
        s => Canon::Signed(key, Sign::from_odd(s < 0) * p.total_sign()),
    })
}

/// Sum of the degrees of both sides at their own parities.
pub fn pair_degree(p: &EntangledPair) -> i64 {
    bidegree_degree(p.bidegree(), p.parities())
}

pub fn bidegree_degree(b: Bidegree, par: Parities) -> i64 {
    graph_degree(par.c, b.v1, b.e1) + graph_degree(par.d, b.v2, b.e2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValencyClass {
    HasUnivalent,
    MinValence2,
}

/// `HasUnivalent` when some vertex on either side has exactly one incident
/// graph edge; hairs do not count towards valency.
pub fn valency_class(p: &EntangledPair) -> ValencyClass {
    if p.raw().has_univalent() {
        ValencyClass::HasUnivalent
    } else {
        ValencyClass::MinValence2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValencyFilter {
    All,
    HasUnivalent,
    MinValence2,
}

impl ValencyFilter {
    pub fn name(self) -> &'static str {
        match self {
            ValencyFilter::All => "all",
            ValencyFilter::HasUnivalent => "univ",
            ValencyFilter::MinValence2 => "min2",
        }
    }

    pub(crate) fn admits(self, has_univalent: bool) -> bool {
        match self {
            ValencyFilter::All => true,
            ValencyFilter::HasUnivalent => has_univalent,
            ValencyFilter::MinValence2 => !has_univalent,
        }
    }
}

impl FromStr for ValencyFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ValencyFilter::All),
            "univ" => Ok(ValencyFilter::HasUnivalent),
            "min2" => Ok(ValencyFilter::MinValence2),
            _ => Err(Error::Parse(format!("unknown valency filter {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceFlags {
    pub connected: bool,
    pub valency: ValencyFilter,
    /// Admit loops on either side (they still vanish at odd parity).
    pub loops: bool,
}

impl Default for SliceFlags {
    fn default() -> Self {
        SliceFlags {
            connected: true,
            valency: ValencyFilter::All,
            loops: false,
        }
    }
}

impl SliceFlags {
    pub fn with_valency(mut self, v: ValencyFilter) -> Self {
        self.valency = v;
        self
    }

    pub fn with_loops(mut self, loops: bool) -> Self {
        self.loops = loops;
        self
    }

    pub(crate) fn admits(&self, raw: &RawPair) -> bool {
        if !self.loops && raw.e1.iter().chain(raw.e2.iter()).any(|&(a, b)| a == b) {
            return false;
        }
        if self.connected && !raw.is_connected() {
            return false;
        }
        self.valency.admits(raw.has_univalent())
    }
}

impl fmt::Display for SliceFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "conn:{},val:{},loops:{}",
            self.connected as u8,
            self.valency.name(),
            self.loops as u8
        )
    }
}

impl FromStr for SliceFlags {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut flags = SliceFlags::default();
        for part in s.split(',') {
            let (k, v) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad flag {part:?}")))?;
            let bit = || match v {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(Error::Parse(format!("bad flag value {v:?}"))),
            };
            match k {
                "conn" => flags.connected = bit()?,
                "val" => flags.valency = v.parse()?,
                "loops" => flags.loops = bit()?,
                _ => return Err(Error::Parse(format!("unknown flag {k:?}"))),
            }
        }
        Ok(flags)
    }
}

/// Sorted, duplicate-free basis of nonzero classes at one bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSlice {
    pub bidegree: Bidegree,
    pub parities: Parities,
    pub flags: SliceFlags,
    pub elements: Vec<CanonicalKey>,
}

impl BasisSlice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, key: &CanonicalKey) -> Option<usize> {
        self.elements.binary_search(key).ok()
    }

    pub fn pair(&self, i: usize) -> Result<EntangledPair> {
        EntangledPair::from_key(&self.elements[i], self.parities)
    }

    pub fn header(&self) -> String {
        format!(
            "c={} d={} bidegree={} flags={}",
            self.parities.c, self.parities.d, self.bidegree, self.flags
        )
    }

    /// Slice file: a header line followed by one canonical pair per line.
    pub fn to_text(&self) -> Result<String> {
        let mut out = self.header();
        out.push('\n');
        for k in &self.elements {
            out.push_str(&format_pair(&EntangledPair::from_key(k, self.parities)?));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty slice file".into()))?;
        let mut c = None;
        let mut d = None;
        let mut bidegree = None;
        let mut flags = None;
        for field in header.split_whitespace() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
            let int = || v.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {v:?}")));
            match k {
                "c" => c = Some(int()?),
                "d" => d = Some(int()?),
                "bidegree" => bidegree = Some(v.parse::<Bidegree>()?),
                "flags" => flags = Some(v.parse::<SliceFlags>()?),
                _ => return Err(Error::Parse(format!("unknown header field {k:?}"))),
            }
        }
        let missing = |n: &str| Error::Parse(format!("slice header lacks {n}"));
        let parities = Parities::new(c.ok_or_else(|| missing("c"))?, d.ok_or_else(|| missing("d"))?);
        let bidegree = bidegree.ok_or_else(|| missing("bidegree"))?;
        let flags = flags.ok_or_else(|| missing("flags"))?;
        let mut elements = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let p = parse_pair(line, parities)?;
            if p.bidegree() != bidegree {
                return Err(Error::Parse(format!("element {line:?} has the wrong bidegree")));
            }
            match pair_canonicalize(&p)? {
                Canon::Signed(k, Sign::Plus) if EntangledPair::from_key(&k, parities)? == p => elements.push(k),
                _ => return Err(Error::Parse(format!("{line:?} is not a canonical representative"))),
            }
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("slice elements are not in canonical order".into()));
        }
        Ok(BasisSlice {
            bidegree,
            parities,
            flags,
            elements,
        })
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {x:?}"))))
        .collect()
}

/// `G1|G2|f1=<list>|f2=<list>` with both graphs in the graph text format.
pub fn format_pair(p: &EntangledPair) -> String {
    let mut g1 = p.g1.clone();
    g1.coefficient_sign = p.total_sign();
    let mut g2 = p.g2.clone();
    g2.coefficient_sign = Sign::Plus;
    format!("{g1}|{g2}|f1={}|f2={}", join(&p.f1), join(&p.f2))
}

/// Inverse of [`format_pair`]; the parities in the text must match.
pub fn parse_pair(s: &str, parities: Parities) -> Result<EntangledPair> {
    let parts: Vec<&str> = s.trim().split('|').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("pair needs four fields: {s:?}")));
    }
    let g1: OrientedGraph = parts[0].parse()?;
    let g2: OrientedGraph = parts[1].parse()?;
    if g1.parity != parities.c || g2.parity != parities.d {
        return Err(Error::Parse("pair parities do not match the slice".into()));
    }
    let f1 = parse_list(parts[2].strip_prefix("f1=").ok_or_else(|| Error::Parse("missing f1".into()))?)?;
    let f2 = parse_list(parts[3].strip_prefix("f2=").ok_or_else(|| Error::Parse("missing f2".into()))?)?;
    let sign = g1.coefficient_sign * g2.coefficient_sign;
    let mut p = EntangledPair::new(g1.with_sign(Sign::Plus), g2.with_sign(Sign::Plus), f1, f2)?;
    p.coefficient_sign = sign;
    Ok(p)
}

/// Parities named by the graph fields of a pair line.
pub fn sniff_parities(s: &str) -> Result<Parities> {
    let mut parts = s.trim().split('|');
    let mut parity = || -> Result<i64> {
        let g = parts.next().ok_or_else(|| Error::Parse(format!("not a pair: {s:?}")))?;
        let g: OrientedGraph = g.parse()?;
        Ok(g.parity.0)
    };
    Ok(Parities::new(parity()?, parity()?))
}

/// Text form of a combination of pairs: one `<coefficient> <pair>` line per
/// term, in key order, each pair the canonical representative.
pub fn combination_to_text(lc: &crate::combination::LinearCombination, parities: Parities) -> Result<String> {
    let mut terms: Vec<_> = lc.iter().collect();
    terms.sort();
    let mut out = String::new();
    for (k, c) in terms {
        out.push_str(&format!("{c} {}\n", format_pair(&EntangledPair::from_key(k, parities)?)));
    }
    Ok(out)
}

/// Inverse of [`combination_to_text`]; any presentation is accepted and
/// canonicalized, zero pairs drop out.
pub fn combination_from_text(text: &str, parities: Parities) -> Result<crate::combination::LinearCombination> {
    let mut lc = crate::combination::LinearCombination::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (c, p) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("expected `<coefficient> <pair>`: {line:?}")))?;
        let c: i64 = c.parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
        if let Canon::Signed(k, sign) = pair_canonicalize(&parse_pair(p, parities)?)? {
            lc.add_term(k, c * sign.value());
        }
    }
    Ok(lc)
}

/// Isomorphism classes of multigraphs with `v` vertices and `e` edges,
/// as edge lists with `a <= b`.
pub(crate) fn multigraph_shapes(v: usize, e: usize, loops: bool) -> Vec<SmallVec<[(u8, u8); 16]>> {
    let mut pairs = Vec::new();
    for a in 0..v {
        for b in a..v {
            if a != b || loops {
                pairs.push((a as u8, b as u8));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut cur: SmallVec<[(u8, u8); 16]> = SmallVec::new();
    fn rec(
        pairs: &[(u8, u8)],
        start: usize,
        left: usize,
        v: usize,
        cur: &mut SmallVec<[(u8, u8); 16]>,
        seen: &mut BTreeSet<CanonicalKey>,
        out: &mut Vec<SmallVec<[(u8, u8); 16]>>,
    ) {
        if left == 0 {
            if seen.insert(graph::shape_key(v, cur)) {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, i, left - 1, v, cur, seen, out);
            cur.pop();
        }
    }
    if v > 0 && (e == 0 || !pairs.is_empty()) {
        rec(&pairs, 0, e, v, &mut cur, &mut seen, &mut out);
    }
    out
}

/// Iterates over all maps `[0, len) -> [0, base)` in lexicographic order.
pub(crate) fn for_each_map(len: usize, base: usize, mut f: impl FnMut(&[u8])) {
    if len > 0 && base == 0 {
        return;
    }
    let mut m: SmallVec<[u8; 16]> = SmallVec::from_elem(0, len);
    loop {
        f(&m);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            m[i] += 1;
            if (m[i] as usize) < base {
                break;
            }
            m[i] = 0;
        }
    }
}

/// Every canonical nonzero pair at `bidegree` admitted by `flags`.
pub fn enumerate_basis(bidegree: Bidegree, parities: Parities, flags: SliceFlags, budget: &Budget) -> Result<BasisSlice> {
    let Bidegree { v1, e1, v2, e2 } = bidegree;
    let empty = BasisSlice {
        bidegree,
        parities,
        flags,
        elements: vec![],
    };
    if v1 == 0 || v2 == 0 {
        return Ok(empty);
    }
    if v1 + v2 > canon::MAX_VERTICES || e1 > 255 || e2 > 255 {
        return Err(Error::Budget {
            what: format!("bidegree {bidegree}"),
            detail: "outside the representable range".into(),
        });
    }
    let shapes1 = multigraph_shapes(v1, e1, flags.loops);
    let shapes2 = multigraph_shapes(v2, e2, flags.loops);
    let maps = (v2 as f64).powi(e1 as i32) * (v1 as f64).powi(e2 as i32);
    let raw_count = shapes1.len() as f64 * shapes2.len() as f64 * maps;
    if raw_count > budget.max_raw_candidates as f64 {
        return Err(Error::Budget {
            what: format!("bidegree {bidegree}"),
            detail: format!(
                "{raw_count:.0} raw candidates exceed max_raw_candidates={}",
                budget.max_raw_candidates
            ),
        });
    }
    let mut found: BTreeSet<CanonicalKey> = BTreeSet::new();
    for s1 in &shapes1 {
        for s2 in &shapes2 {
            for_each_map(e1, v2, |f1| {
                for_each_map(e2, v1, |f2| {
                    let raw = RawPair {
                        v1: v1 as u8,
                        v2: v2 as u8,
                        e1: s1.clone(),
                        e2: s2.clone(),
                        f1: SmallVec::from_slice(f1),
                        f2: SmallVec::from_slice(f2),
                    };
                    if flags.admits(&raw) {
                        let (key, s) = raw.canon(parities);
                        if s != 0 {
                            found.insert(key);
                        }
                    }
                });
            });
            if found.len() > budget.max_basis_size {
                return Err(Error::Budget {
                    what: format!("bidegree {bidegree}"),
                    detail: format!("basis exceeds max_basis_size={}", budget.max_basis_size),
                });
            }
        }
    }
    Ok(BasisSlice {
        elements: found.into_iter().collect(),
        ..empty
    })
}

/// Class A: a single vertex carrying one hair, entangled with a single edge
/// whose hair sits on that vertex.
pub fn class_a(parities: Parities) -> EntangledPair {
    EntangledPair::new(
        OrientedGraph::single_vertex(parities.c),
        OrientedGraph::new(2, vec![(0, 1)], parities.d).expect("valid"),
        vec![],
        vec![0],
    )
    .expect("valid")
}

/// Class B: the mirror image of class A.
pub fn class_b(parities: Parities) -> EntangledPair {
    EntangledPair::new(
        OrientedGraph::new(2, vec![(0, 1)], parities.c).expect("valid"),
        OrientedGraph::single_vertex(parities.d),
        vec![0],
        vec![],
    )
    .expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    const P22: Parities = Parities::new(2, 2);

    #[test]
    fn classes_are_nonzero() {
        for par in Parities::all_classes() {
            let a = class_a(par);
            assert_eq!(a.bidegree(), Bidegree::new(1, 0, 2, 1));
            assert!(!pair_canonicalize(&a).unwrap().is_zero());
            assert!(!pair_canonicalize(&class_b(par)).unwrap().is_zero());
            assert_eq!(pair_degree(&a), 1);
            assert_eq!(pair_degree(&class_b(par)), 1);
        }
    }

    #[test]
    fn parallel_edges_with_shared_hair_vanish_at_even_c() {
        let p = EntangledPair::new(
            OrientedGraph::new(2, vec![(0, 1), (0, 1)], Parity(2)).unwrap(),
            OrientedGraph::single_vertex(Parity(2)),
            vec![0, 0],
            vec![],
        )
        .unwrap();
        assert!(pair_canonicalize(&p).unwrap().is_zero());
    }

    #[test]
    fn degree_formula() {
        let p = EntangledPair::new(
            OrientedGraph::cycle(3, Parity(2)),
            OrientedGraph::new(2, vec![(0, 1)], Parity(2)).unwrap(),
            vec![0, 1, 1],
            vec![2],
        )
        .unwrap();
        assert_eq!(pair_degree(&p), 2);
    }

    #[test]
    fn small_enumerations() {
        let b = Budget::default();
        let s = enumerate_basis(Bidegree::new(1, 0, 2, 1), P22, SliceFlags::default(), &b).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.elements[0], *pair_canonicalize(&class_a(P22)).unwrap().key());
        let s = enumerate_basis(Bidegree::new(1, 0, 1, 0), P22, SliceFlags::default(), &b).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn valency() {
        assert_eq!(valency_class(&class_a(P22)), ValencyClass::HasUnivalent);
        let tri = OrientedGraph::cycle(3, Parity(2));
        let p = EntangledPair::new(tri.clone(), tri, vec![0, 1, 2], vec![0, 1, 2]).unwrap();
        assert_eq!(valency_class(&p), ValencyClass::MinValence2);
    }

    #[test]
    fn slice_text_roundtrip() {
        let b = Budget::default();
        for par in Parities::all_classes() {
            let s = enumerate_basis(Bidegree::new(2, 1, 3, 2), par, SliceFlags::default(), &b).unwrap();
            assert!(!s.is_empty());
            let text = s.to_text().unwrap();
            let back = BasisSlice::from_text(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.to_text().unwrap(), text);
        }
    }

    #[test]
    fn shapes_count() {
        // multigraphs with 3 vertices and 2 edges, no loops: path, double edge + isolated
        assert_eq!(multigraph_shapes(3, 2, false).len(), 2);
        // two vertices with loops: double loop, loop+edge, loop at each end, double edge
        assert_eq!(multigraph_shapes(2, 2, true).len(), 4);
    }
}
