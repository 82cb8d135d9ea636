//! The properad of entangled graphs with labeled vertices.
//!
//! An element has labeled vertices on both sides; the first side provides the
//! inputs and the second the outputs. Labels carry no sign: at even parity
//! the orientation is the edge order of each side, at odd parity it is the
//! set of edge directions. Composition `P ∘ Q` glues outputs of `Q` into
//! inputs of `P`: the named input vertices of `P` are replaced by the whole
//! first side of `Q`, with every half-edge formerly at an erased vertex
//! reattached to a vertex of `Q` in all possible ways, and symmetrically the
//! named output vertices of `Q` are replaced by the second side of `P`. The
//! first-side edges of the result are those of `P` followed by those of
//! `Q`; on the second side `Q` comes first.

use std::collections::BTreeMap;
use std::fmt;

use crate::combination::LinearCombination;
use crate::error::{Error, Result};
use crate::graph::{CanonicalKey, OrientedGraph, Parity, Sign};
use crate::pair::{for_each_map, format_pair, parse_pair, EntangledPair, Parities};

pub(crate) const TAG_LABELED: u8 = 0x40;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraElement {
    pub pair: EntangledPair,
    /// Label of every first-side vertex.
    pub labels1: Vec<u32>,
    /// Label of every second-side vertex.
    pub labels2: Vec<u32>,
}

fn distinct(labels: &[u32]) -> bool {
    let mut s = labels.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

impl GraElement {
    pub fn new(pair: EntangledPair, labels1: Vec<u32>, labels2: Vec<u32>) -> Result<Self> {
        let e = GraElement { pair, labels1, labels2 };
        e.validate()?;
        Ok(e)
    }

    /// Labels `1..=n` in vertex order on both sides.
    pub fn with_default_labels(pair: EntangledPair) -> Self {
        let l1 = (1..=pair.g1.num_vertices as u32).collect();
        let l2 = (1..=pair.g2.num_vertices as u32).collect();
        GraElement {
            pair,
            labels1: l1,
            labels2: l2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.pair.validate()?;
        if self.labels1.len() != self.pair.g1.num_vertices || self.labels2.len() != self.pair.g2.num_vertices {
            return Err(Error::Structural("one label per vertex required".into()));
        }
        if !distinct(&self.labels1) || !distinct(&self.labels2) {
            return Err(Error::Structural("labels must be distinct on each side".into()));
        }
        Ok(())
    }

    pub fn parities(&self) -> Parities {
        self.pair.parities()
    }

    /// The element with sides exchanged (inputs become outputs).
    pub fn mirrored(&self) -> GraElement {
        GraElement {
            pair: self.pair.swapped(),
            labels1: self.labels2.clone(),
            labels2: self.labels1.clone(),
        }
    }

    /// Applies label maps on both sides.
    pub fn relabeled(&self, map1: impl Fn(u32) -> u32, map2: impl Fn(u32) -> u32) -> Result<GraElement> {
        GraElement::new(
            self.pair.clone(),
            self.labels1.iter().map(|&l| map1(l)).collect(),
            self.labels2.iter().map(|&l| map2(l)).collect(),
        )
    }

    /// Vertex index carrying label `l` on the given side.
    fn index_of(labels: &[u32], l: u32) -> Result<usize> {
        labels
            .iter()
            .position(|&x| x == l)
            .ok_or_else(|| Error::Structural(format!("no vertex labeled {l}")))
    }
}

impl fmt::Display for GraElement {
    /// Pair format extended by `|L1=<labels>|L2=<labels>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |xs: &[u32]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{}|L1={}|L2={}",
            format_pair(&self.pair),
            j(&self.labels1),
            j(&self.labels2)
        )
    }
}

/// Inverse of the `Display` format.
pub fn parse_gra(s: &str, parities: Parities) -> Result<GraElement> {
    let s = s.trim();
    let (rest, l2) = s
        .rsplit_once("|L2=")
        .ok_or_else(|| Error::Parse("missing L2 field".into()))?;
    let (pair, l1) = rest
        .rsplit_once("|L1=")
        .ok_or_else(|| Error::Parse("missing L1 field".into()))?;
    let labels = |x: &str| -> Result<Vec<u32>> {
        if x.is_empty() {
            return Ok(vec![]);
        }
        x.split(',')
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad label {t:?}"))))
            .collect()
    };
    GraElement::new(parse_pair(pair, parities)?, labels(l1)?, labels(l2)?)
}

/// Canonical form of a labeled element: vertices sorted by label, edges
/// normalized and sorted. Returns the key and sign, or `None` for zero.
pub fn gra_canonicalize(e: &GraElement) -> Result<Option<(CanonicalKey, Sign)>> {
    e.validate()?;
    let par = e.parities();
    let mut sign = e.pair.total_sign();
    let mut body = Vec::new();
    let rank = |labels: &[u32]| -> Vec<usize> {
        let mut idx: Vec<usize> = (0..labels.len()).collect();
        idx.sort_by_key(|&i| labels[i]);
        let mut pos = vec![0; labels.len()];
        for (p, &i) in idx.iter().enumerate() {
            pos[i] = p;
        }
        pos
    };
    let r1 = rank(&e.labels1);
    let r2 = rank(&e.labels2);
    let mut sorted1: Vec<u32> = e.labels1.clone();
    sorted1.sort_unstable();
    let mut sorted2: Vec<u32> = e.labels2.clone();
    sorted2.sort_unstable();
    body.extend((sorted1.len() as u32).to_le_bytes());
    for l in &sorted1 {
        body.extend(l.to_le_bytes());
    }
    body.extend((sorted2.len() as u32).to_le_bytes());
    for l in &sorted2 {
        body.extend(l.to_le_bytes());
    }
    let side = |g: &OrientedGraph, f: &[usize], r_own: &[usize], r_other: &[usize], parity: Parity, body: &mut Vec<u8>, sign: &mut Sign| -> bool {
        let odd = parity.is_odd();
        let mut keyed: Vec<((usize, usize, usize), usize)> = Vec::with_capacity(g.edges.len());
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            let (x, y) = (r_own[a], r_own[b]);
            if odd && x == y {
                return false;
            }
            if odd && x > y {
                *sign = -*sign;
            }
            keyed.push(((x.min(y), x.max(y), r_other[f[i]]), i));
        }
        keyed.sort();
        if !odd {
            if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
                return false;
            }
            let order: Vec<usize> = keyed.iter().map(|k| k.1).collect();
            if crate::canon::odd_inversions(&order) {
                *sign = -*sign;
            }
        }
        body.extend((keyed.len() as u32).to_le_bytes());
        for ((x, y, h), _) in keyed {
            for v in [x, y, h] {
                body.extend((v as u32).to_le_bytes());
            }
        }
        true
    };
    if !side(&e.pair.g1, &e.pair.f1, &r1, &r2, par.c, &mut body, &mut sign) {
        return Ok(None);
    }
    if !side(&e.pair.g2, &e.pair.f2, &r2, &r1, par.d, &mut body, &mut sign) {
        return Ok(None);
    }
    let tag = TAG_LABELED | (par.c.is_odd() as u8) << 1 | par.d.is_odd() as u8;
    Ok(Some((CanonicalKey::with_tag(tag, &body), sign)))
}

/// Decodes a labeled key back into its representative (sign +1).
pub fn gra_from_key(key: &CanonicalKey, parities: Parities) -> Result<GraElement> {
    let bad = || Error::Parse("not a labeled key".into());
    let b = key.body();
    let mut pos = 0;
    let mut next = || -> Result<u32> {
        let s = b.get(pos..pos + 4).ok_or_else(bad)?;
        pos += 4;
        Ok(u32::from_le_bytes([s[0], s[1], s[2], s[3]]))
    };
    let n1 = next()? as usize;
    let labels1 = (0..n1).map(|_| next()).collect::<Result<Vec<_>>>()?;
    let n2 = next()? as usize;
    let labels2 = (0..n2).map(|_| next()).collect::<Result<Vec<_>>>()?;
    let mut sides = Vec::new();
    for _ in 0..2 {
        let m = next()? as usize;
        let mut edges = Vec::with_capacity(m);
        let mut hairs = Vec::with_capacity(m);
        for _ in 0..m {
            let x = next()? as usize;
            let y = next()? as usize;
            let h = next()? as usize;
            edges.push((x, y));
            hairs.push(h);
        }
        sides.push((edges, hairs));
    }
    let (e2, f2) = sides.pop().expect("two sides");
    let (e1, f1) = sides.pop().expect("two sides");
    let pair = EntangledPair::new(
        OrientedGraph::new(n1, e1, parities.c)?,
        OrientedGraph::new(n2, e2, parities.d)?,
        f1,
        f2,
    )?;
    GraElement::new(pair, labels1, labels2)
}

/// Labeled linear combinations: canonical keys with integer coefficients.
pub fn gra_combination(terms: &[(GraElement, i64)]) -> Result<LinearCombination> {
    let mut lc = LinearCombination::new();
    for (e, c) in terms {
        if let Some((k, s)) = gra_canonicalize(e)? {
            lc.add_term(k, c * s.value());
        }
    }
    Ok(lc)
}

/// All terms of `P ∘ Q` along the inputs `i_list` of `P` (labels on the first
/// side of `P`) and the outputs `j_list` of `Q` (labels on the second side
/// of `Q`). Terms are returned uncanonicalized with coefficient ±1.
pub fn compose_terms(p: &GraElement, q: &GraElement, i_list: &[u32], j_list: &[u32]) -> Result<Vec<(GraElement, i64)>> {
    p.validate()?;
    q.validate()?;
    if p.parities() != q.parities() {
        return Err(Error::Precondition("parities of the operands differ".into()));
    }
    if i_list.len() != j_list.len() {
        return Err(Error::Precondition(format!(
            "arity mismatch: {} inputs against {} outputs",
            i_list.len(),
            j_list.len()
        )));
    }
    if !distinct(i_list) || !distinct(j_list) {
        return Err(Error::Precondition("repeated leg in composition".into()));
    }
    let par = p.parities();
    let (pp, qp) = (&p.pair, &q.pair);
    let erased1: Vec<bool> = {
        let mut e = vec![false; pp.g1.num_vertices];
        for &l in i_list {
            e[GraElement::index_of(&p.labels1, l)?] = true;
        }
        e
    };
    let erased2: Vec<bool> = {
        let mut e = vec![false; qp.g2.num_vertices];
        for &l in j_list {
            e[GraElement::index_of(&q.labels2, l)?] = true;
        }
        e
    };
    // new first side: kept P1 vertices then all Q1 vertices
    let mut map1 = vec![usize::MAX; pp.g1.num_vertices];
    let mut labels1 = Vec::new();
    for v in 0..pp.g1.num_vertices {
        if !erased1[v] {
            map1[v] = labels1.len();
            labels1.push(p.labels1[v]);
        }
    }
    let off1 = labels1.len();
    labels1.extend(&q.labels1);
    let nq1 = qp.g1.num_vertices;
    // new second side: kept Q2 vertices then all P2 vertices
    let mut map2 = vec![usize::MAX; qp.g2.num_vertices];
    let mut labels2 = Vec::new();
    for w in 0..qp.g2.num_vertices {
        if !erased2[w] {
            map2[w] = labels2.len();
            labels2.push(q.labels2[w]);
        }
    }
    let off2 = labels2.len();
    labels2.extend(&p.labels2);
    let np2 = pp.g2.num_vertices;
    if !distinct(&labels1) || !distinct(&labels2) {
        return Err(Error::Precondition("labels of the composite collide".into()));
    }

    // Slots to be filled: half-edges at erased P1 vertices go to Q1 vertices,
    // half-edges at erased Q2 vertices go to P2 vertices.
    #[derive(Clone, Copy)]
    enum Slot {
        P1Tail(usize),
        P1Head(usize),
        P2Hair(usize),
        Q2Tail(usize),
        Q2Head(usize),
        Q1Hair(usize),
    }
    let mut slots_a = Vec::new();
    for (i, &(a, b)) in pp.g1.edges.iter().enumerate() {
        if erased1[a] {
            slots_a.push(Slot::P1Tail(i));
        }
        if erased1[b] {
            slots_a.push(Slot::P1Head(i));
        }
    }
    for (j, &v) in pp.f2.iter().enumerate() {
        if erased1[v] {
            slots_a.push(Slot::P2Hair(j));
        }
    }
    let mut slots_b = Vec::new();
    for (i, &(a, b)) in qp.g2.edges.iter().enumerate() {
        if erased2[a] {
            slots_b.push(Slot::Q2Tail(i));
        }
        if erased2[b] {
            slots_b.push(Slot::Q2Head(i));
        }
    }
    for (j, &w) in qp.f1.iter().enumerate() {
        if erased2[w] {
            slots_b.push(Slot::Q1Hair(j));
        }
    }

    let base_e1: Vec<(usize, usize)> = pp
        .g1
        .edges
        .iter()
        .map(|&(a, b)| (map1[a], map1[b]))
        .chain(qp.g1.edges.iter().map(|&(a, b)| (off1 + a, off1 + b)))
        .collect();
    let base_f1: Vec<usize> = pp
        .f1
        .iter()
        .map(|&w| off2 + w)
        .chain(qp.f1.iter().map(|&w| map2[w]))
        .collect();
    let base_e2: Vec<(usize, usize)> = qp
        .g2
        .edges
        .iter()
        .map(|&(a, b)| (map2[a], map2[b]))
        .chain(pp.g2.edges.iter().map(|&(a, b)| (off2 + a, off2 + b)))
        .collect();
    let base_f2: Vec<usize> = qp
        .f2
        .iter()
        .map(|&v| off1 + v)
        .chain(pp.f2.iter().map(|&v| map1[v]))
        .collect();
    let np1e = pp.g1.edges.len();
    let nq2e = qp.g2.edges.len();
    let coeff = (p.pair.total_sign() * q.pair.total_sign()).value();

    let mut out = Vec::new();
    let mut err = None;
    for_each_map(slots_a.len(), nq1, |ca| {
        for_each_map(slots_b.len(), np2, |cb| {
            let mut e1 = base_e1.clone();
            let mut f1 = base_f1.clone();
            let mut e2 = base_e2.clone();
            let mut f2 = base_f2.clone();
            for (s, &t) in slots_a.iter().zip(ca) {
                let t = off1 + t as usize;
                match *s {
                    Slot::P1Tail(i) => e1[i].0 = t,
                    Slot::P1Head(i) => e1[i].1 = t,
                    Slot::P2Hair(j) => f2[nq2e + j] = t,
                    _ => unreachable!(),
                }
            }
            for (s, &t) in slots_b.iter().zip(cb) {
                let t = off2 + t as usize;
                match *s {
                    Slot::Q2Tail(i) => e2[i].0 = t,
                    Slot::Q2Head(i) => e2[i].1 = t,
                    Slot::Q1Hair(j) => f1[np1e + j] = t,
                    _ => unreachable!(),
                }
            }
            let built = OrientedGraph::new(labels1.len(), e1, par.c)
                .and_then(|g1| Ok((g1, OrientedGraph::new(labels2.len(), e2, par.d)?)))
                .and_then(|(g1, g2)| EntangledPair::new(g1, g2, f1, f2))
                .and_then(|pair| GraElement::new(pair, labels1.clone(), labels2.clone()));
            match built {
                Ok(e) => out.push((e, coeff)),
                Err(e) => err = Some(e),
            }
        });
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `P ∘ Q` as a canonical labeled combination.
pub fn compose(p: &GraElement, q: &GraElement, i_list: &[u32], j_list: &[u32]) -> Result<LinearCombination> {
    gra_combination(&compose_terms(p, q, i_list, j_list)?)
}

/// Image of the bracket: an edge from input `a` to input `b`, whose hair
/// sits on the single output `out`.
pub fn down_image(par: Parities, a: u32, b: u32, out: u32) -> GraElement {
    let pair = EntangledPair::new(
        OrientedGraph::new(2, vec![(0, 1)], par.c).expect("valid"),
        OrientedGraph::single_vertex(par.d),
        vec![0],
        vec![],
    )
    .expect("valid");
    GraElement::new(pair, vec![a, b], vec![out]).expect("distinct labels")
}

/// Image of the cobracket: the mirror of [`down_image`].
pub fn up_image(par: Parities, input: u32, a: u32, b: u32) -> GraElement {
    down_image(par.swapped(), a, b, input).mirrored()
}

/// Images of the two generators with labels `1, 2` on the binary side.
pub fn lieb_generator_images(par: Parities) -> (GraElement, GraElement) {
    (down_image(par, 1, 2, 1), up_image(par, 1, 1, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Jacobi,
    CoJacobi,
    Compat,
}

impl std::str::FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jacobi" => Ok(Relation::Jacobi),
            "cojacobi" => Ok(Relation::CoJacobi),
            "compat" => Ok(Relation::Compat),
            _ => Err(Error::Parse(format!("unknown relation {s:?}"))),
        }
    }
}

/// Free label used for the glued legs.
const GLUE: u32 = 1000;

/// Expansion of one of the defining relations after substituting the
/// generator images. Vanishes identically when the relation holds.
pub fn check_relation(rel: Relation, par: Parities) -> Result<LinearCombination> {
    let mut total = LinearCombination::new();
    match rel {
        Relation::Jacobi => {
            for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
                let p = down_image(par, GLUE, k, 1);
                let q = down_image(par, i, j, GLUE);
                total.add_scaled(&compose(&p, &q, &[GLUE], &[GLUE])?, 1);
            }
        }
        Relation::CoJacobi => {
            for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
                let p = up_image(par, GLUE, i, j);
                let q = up_image(par, 1, GLUE, k);
                total.add_scaled(&compose(&p, &q, &[GLUE], &[GLUE])?, 1);
            }
        }
        Relation::Compat => {
            let (c, d) = (par.c.sign().value(), par.d.sign().value());
            let t1 = compose(&up_image(par, GLUE, 1, 2), &down_image(par, 1, 2, GLUE), &[GLUE], &[GLUE])?;
            // cobracket first, then bracket: (kept input of the bracket,
            // output of the cobracket) runs over all four label choices
            let mixed = |kept_in: u32, other_in: u32, q_out: u32, p_out: u32| {
                compose(
                    &down_image(par, GLUE, kept_in, p_out),
                    &up_image(par, other_in, q_out, GLUE),
                    &[GLUE],
                    &[GLUE],
                )
            };
            let t2 = mixed(2, 1, 1, 2)?;
            let t3 = mixed(1, 2, 1, 2)?;
            let t4 = mixed(1, 2, 2, 1)?;
            let t5 = mixed(2, 1, 2, 1)?;
            total.add_scaled(&t1, 1);
            total.add_scaled(&t2, -1);
            total.add_scaled(&t3, -c);
            total.add_scaled(&t4, -c * d);
            total.add_scaled(&t5, -d);
        }
    }
    Ok(total)
}

/// Readable dump of a labeled combination, one term per line.
pub fn describe(lc: &LinearCombination, par: Parities) -> Result<String> {
    let mut lines = BTreeMap::new();
    for (k, c) in lc.iter() {
        lines.insert(gra_from_key(k, par)?.to_string(), c);
    }
    Ok(lines.into_iter().map(|(s, c)| format!("{c:+} {s}\n")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposing_inputs_of_the_bracket() {
        for par in Parities::all_classes() {
            let a = gra_canonicalize(&down_image(par, 1, 2, 1)).unwrap().unwrap();
            let b = gra_canonicalize(&down_image(par, 2, 1, 1)).unwrap().unwrap();
            assert_eq!(a.0, b.0);
            assert_eq!(a.1 * b.1, par.c.sign());
            let a = gra_canonicalize(&up_image(par, 1, 1, 2)).unwrap().unwrap();
            let b = gra_canonicalize(&up_image(par, 1, 2, 1)).unwrap().unwrap();
            assert_eq!(a.1 * b.1, par.d.sign());
        }
    }

    #[test]
    fn text_roundtrip() {
        let par = Parities::new(1, 2);
        let e = down_image(par, 3, 7, 2);
        let s = e.to_string();
        assert_eq!(parse_gra(&s, par).unwrap(), e);
    }

    #[test]
    fn key_roundtrip() {
        let par = Parities::new(1, 1);
        let e = up_image(par, 4, 9, 2);
        let (k, s) = gra_canonicalize(&e).unwrap().unwrap();
        let rep = gra_from_key(&k, par).unwrap();
        assert_eq!(gra_canonicalize(&rep).unwrap().unwrap(), (k, Sign::Plus));
        let _ = s;
    }

    #[test]
    fn relations_vanish() {
        for par in Parities::all_classes() {
            for rel in [Relation::Jacobi, Relation::CoJacobi, Relation::Compat] {
                let r = check_relation(rel, par).unwrap();
                assert!(r.is_zero(), "{rel:?} at {par}:\n{}", describe(&r, par).unwrap());
            }
        }
    }
}
