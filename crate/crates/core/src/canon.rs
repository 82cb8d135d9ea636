//! Individualization/refinement canonical labeling for small incidence
//! structures.
//!
//! A [`Frame`] is a set of colored vertices together with *links*. A link
//! joins two endpoints (possibly equal, a loop) and may carry an *anchor*, a
//! third vertex it is attached to without being an endpoint. Plain graphs use
//! links without anchors; entangled pairs use the anchor for the hair of an
//! edge on the partner graph.
//!
//! Every link belongs to an orientation block. A block is either *even*
//! (orientation is the order of its links) or *odd* (orientation is the order
//! of the vertices of the matching vertex group together with the direction
//! of each link). The search enumerates all leaves of the refinement tree, so
//! every automorphism of the colored structure is seen, and the orientation
//! sign of each optimal leaf is compared to detect zero elements.

use smallvec::SmallVec;

pub(crate) const NO_ANCHOR: u8 = u8::MAX;
pub(crate) const MAX_VERTICES: usize = 250;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Link {
    pub a: u8,
    pub b: u8,
    pub anchor: u8,
    pub block: u8,
    pub color: u8,
}

impl Link {
    pub fn plain(a: usize, b: usize, block: u8) -> Self {
        Link {
            a: a as u8,
            b: b as u8,
            anchor: NO_ANCHOR,
            block,
            color: 0,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Frame {
    /// Vertex colors. Permutations only ever map a vertex to one of equal color.
    pub colors: Vec<u32>,
    /// Vertex group per vertex; odd block `i` uses the vertices of group `i`.
    pub groups: Vec<u8>,
    pub links: Vec<Link>,
    /// Parity per block, `true` for odd.
    pub odd_blocks: SmallVec<[bool; 2]>,
}

/// Result of a search.
#[derive(Clone, Debug)]
pub(crate) struct Labeling {
    /// Orientation sign relating the input to the canonical form, `0` if the
    /// structure is a zero element (some automorphism reverses orientation).
    pub sign: i8,
    /// Canonical encoding.
    pub key: Vec<u8>,
    /// Vertex parts of all automorphisms (only when requested).
    pub automorphisms: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Track orientation signs and report zero elements.
    Signed,
    /// Ignore orientation entirely (isomorphism classes of shapes).
    Unsigned,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy)]
enum Role {
    End { link: u16, other: u8 },
    Loop { link: u16 },
    Anchor { link: u16 },
}

#[derive(Clone)]
struct Partition {
    order: SmallVec<[u8; 24]>,
    /// Start position of the cell containing each vertex.
    start: SmallVec<[u8; 24]>,
    /// Length of the cell beginning at a given position (valid at cell starts).
    len: SmallVec<[u8; 24]>,
    cells: usize,
}

struct Engine<'a> {
    frame: &'a Frame,
    incidence: Vec<SmallVec<[Role; 6]>>,
    mode: Mode,
    want_automorphisms: bool,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<u8>>,
    zero: bool,
    scratch_hash: Vec<u64>,
}

#[derive(Clone)]
struct Leaf {
    perm: Vec<u8>,
    keys: Vec<u64>,
    sign: i8,
}

impl<'a> Engine<'a> {
    fn new(frame: &'a Frame, mode: Mode, want_automorphisms: bool) -> Self {
        let n = frame.colors.len();
        let mut incidence: Vec<SmallVec<[Role; 6]>> = vec![SmallVec::new(); n];
        for (i, l) in frame.links.iter().enumerate() {
            let i = i as u16;
            if l.a == l.b {
                incidence[l.a as usize].push(Role::Loop { link: i });
            } else {
                incidence[l.a as usize].push(Role::End { link: i, other: l.b });
                incidence[l.b as usize].push(Role::End { link: i, other: l.a });
            }
            if l.anchor != NO_ANCHOR {
                incidence[l.anchor as usize].push(Role::Anchor { link: i });
            }
        }
        Engine {
            frame,
            incidence,
            mode,
            want_automorphisms,
            best: None,
            automorphisms: Vec::new(),
            zero: false,
            scratch_hash: vec![0; n],
        }
    }

    fn initial_partition(&self) -> Partition {
        let n = self.frame.colors.len();
        let mut order: SmallVec<[u8; 24]> = (0..n as u8).collect();
        order.sort_by_key(|&v| (self.frame.colors[v as usize], v));
        let mut start: SmallVec<[u8; 24]> = SmallVec::from_elem(0, n);
        let mut len: SmallVec<[u8; 24]> = SmallVec::from_elem(0, n);
        let mut cells = 0;
        let mut i = 0;
        while i < n {
            let c = self.frame.colors[order[i] as usize];
            let mut j = i;
            while j < n && self.frame.colors[order[j] as usize] == c {
                start[order[j] as usize] = i as u8;
                j += 1;
            }
            len[i] = (j - i) as u8;
            cells += 1;
            i = j;
        }
        Partition {
            order,
            start,
            len,
            cells,
        }
    }

    fn vertex_hash(&self, p: &Partition, v: usize) -> u64 {
        let cs = |x: u8| -> u64 {
            if x == NO_ANCHOR {
                0xff
            } else {
                p.start[x as usize] as u64
            }
        };
        let mut h: u64 = 0;
        for role in &self.incidence[v] {
            let t = match *role {
                Role::End { link, other } => {
                    let l = &self.frame.links[link as usize];
                    (1u64 << 56)
                        | ((l.block as u64) << 48)
                        | ((l.color as u64) << 40)
                        | (cs(other) << 16)
                        | cs(l.anchor)
                }
                Role::Loop { link } => {
                    let l = &self.frame.links[link as usize];
                    (2u64 << 56) | ((l.block as u64) << 48) | ((l.color as u64) << 40) | cs(l.anchor)
                }
                Role::Anchor { link } => {
                    let l = &self.frame.links[link as usize];
                    let (x, y) = (cs(l.a), cs(l.b));
                    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                    (3u64 << 56)
                        | ((l.block as u64) << 48)
                        | ((l.color as u64) << 40)
                        | (lo << 16)
                        | hi
                }
            };
            h = h.wrapping_add(mix(t));
        }
        h
    }

    /// Refines `p` to an equitable-ish partition (up to hash collisions,
    /// which only weaken refinement and never break canonicity).
    fn refine(&mut self, p: &mut Partition) {
        let n = p.order.len();
        loop {
            if p.cells == n {
                return;
            }
            for v in 0..n {
                self.scratch_hash[v] = self.vertex_hash(p, v);
            }
            let before = p.cells;
            let mut i = 0;
            while i < n {
                let l = p.len[i] as usize;
                if l > 1 {
                    let hs = &self.scratch_hash;
                    p.order[i..i + l].sort_by_key(|&v| (hs[v as usize], v));
                    let mut j = i;
                    while j < i + l {
                        let h = hs[p.order[j] as usize];
                        let mut k = j;
                        while k < i + l && hs[p.order[k] as usize] == h {
                            p.start[p.order[k] as usize] = j as u8;
                            k += 1;
                        }
                        p.len[j] = (k - j) as u8;
                        if j != i {
                            p.cells += 1;
                        }
                        j = k;
                    }
                }
                i += l;
            }
            if p.cells == before {
                return;
            }
        }
    }

    fn stop(&self) -> bool {
        self.zero && !self.want_automorphisms
    }

    fn search(&mut self, p: Partition) {
        if self.stop() {
            return;
        }
        let n = p.order.len();
        if p.cells == n {
            self.leaf(&p);
            return;
        }
        // first non-singleton cell
        let mut i = 0;
        while i < n && p.len[i] == 1 {
            i += 1;
        }
        let l = p.len[i] as usize;
        let members: SmallVec<[u8; 24]> = p.order[i..i + l].iter().copied().collect();
        for &x in &members {
            let mut q = p.clone();
            let pos = q.order[i..i + l].iter().position(|&y| y == x).unwrap() + i;
            q.order.swap(i, pos);
            q.len[i] = 1;
            q.len[i + 1] = (l - 1) as u8;
            q.start[x as usize] = i as u8;
            for k in i + 1..i + l {
                let y = q.order[k];
                q.start[y as usize] = (i + 1) as u8;
            }
            q.cells += 1;
            self.refine(&mut q);
            self.search(q);
            if self.stop() {
                return;
            }
        }
    }

    fn leaf(&mut self, p: &Partition) {
        let n = p.order.len();
        let mut perm = vec![0u8; n];
        for (pos, &v) in p.order.iter().enumerate() {
            perm[v as usize] = pos as u8;
        }
        let links = &self.frame.links;
        let mut keyed: SmallVec<[(u64, usize); 24]> = links
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let (x, y) = (perm[l.a as usize], perm[l.b as usize]);
                let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                let anc = if l.anchor == NO_ANCHOR {
                    NO_ANCHOR
                } else {
                    perm[l.anchor as usize]
                };
                let k = ((l.block as u64) << 40)
                    | ((l.color as u64) << 32)
                    | ((lo as u64) << 16)
                    | ((hi as u64) << 8)
                    | anc as u64;
                (k, i)
            })
            .collect();
        keyed.sort_unstable();
        let ordering = match &self.best {
            None => std::cmp::Ordering::Less,
            Some(b) => keyed
                .iter()
                .map(|&(k, _)| k)
                .cmp(b.keys.iter().copied()),
        };
        if ordering == std::cmp::Ordering::Greater {
            return;
        }
        let sign = match self.mode {
            Mode::Signed => self.leaf_sign(&perm, &keyed),
            Mode::Unsigned => 1,
        };
        if ordering == std::cmp::Ordering::Less {
            self.automorphisms.clear();
            if self.want_automorphisms {
                let n = perm.len();
                self.automorphisms.push((0..n as u8).collect());
            }
            self.best = Some(Leaf {
                perm,
                keys: keyed.iter().map(|&(k, _)| k).collect(),
                sign,
            });
            return;
        }
        let best = self.best.as_ref().unwrap();
        if self.mode == Mode::Signed && sign != best.sign {
            self.zero = true;
        }
        if self.want_automorphisms {
            // gamma(x) = y where best.perm[y] == perm[x]
            let mut inv = vec![0u8; n];
            for (v, &pos) in best.perm.iter().enumerate() {
                inv[pos as usize] = v as u8;
            }
            let gamma: Vec<u8> = perm.iter().map(|&pos| inv[pos as usize]).collect();
            self.automorphisms.push(gamma);
        }
    }

    fn leaf_sign(&self, perm: &[u8], keyed: &[(u64, usize)]) -> i8 {
        let frame = self.frame;
        let mut negative = false;
        for (b, &odd) in frame.odd_blocks.iter().enumerate() {
            if odd {
                let seq: SmallVec<[u8; 24]> = (0..perm.len())
                    .filter(|&v| frame.groups[v] as usize == b)
                    .map(|v| perm[v])
                    .collect();
                negative ^= odd_inversions(&seq);
                for l in frame.links.iter().filter(|l| l.block as usize == b) {
                    if perm[l.a as usize] > perm[l.b as usize] {
                        negative = !negative;
                    }
                }
            } else {
                let seq: SmallVec<[usize; 24]> = keyed
                    .iter()
                    .map(|&(_, i)| i)
                    .filter(|&i| frame.links[i].block as usize == b)
                    .collect();
                negative ^= odd_inversions(&seq);
            }
        }
        if negative {
            -1
        } else {
            1
        }
    }
}

/// Parity of the number of inversions.
pub(crate) fn odd_inversions<T: Ord>(seq: &[T]) -> bool {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    odd
}

fn normalized(l: &Link) -> (u8, u8, u8, u8, u8) {
    let (lo, hi) = if l.a <= l.b { (l.a, l.b) } else { (l.b, l.a) };
    (l.block, l.color, lo, hi, l.anchor)
}

type LinkShape = (u8, u8, u8, u8, u8);

/// True when the structure is forced to vanish regardless of relabeling:
/// a loop in an odd block (flipping it is an odd automorphism) or two
/// identical links in an even block (swapping them is an odd permutation).
fn trivially_zero(frame: &Frame) -> bool {
    let mut seen: SmallVec<[LinkShape; 24]> = SmallVec::new();
    for l in &frame.links {
        let odd = frame.odd_blocks[l.block as usize];
        if odd {
            if l.a == l.b {
                return true;
            }
        } else {
            let k = normalized(l);
            if seen.contains(&k) {
                return true;
            }
            seen.push(k);
        }
    }
    false
}

fn encode(frame: &Frame, perm: &[u8], keys: &[u64]) -> Vec<u8> {
    let n = frame.colors.len();
    let mut out = Vec::with_capacity(2 + n + 5 * keys.len());
    out.push(n as u8);
    out.push(keys.len() as u8);
    let mut by_pos = vec![0u32; n];
    for v in 0..n {
        by_pos[perm[v] as usize] = frame.colors[v];
    }
    for c in by_pos {
        push_varint(&mut out, c);
    }
    for &k in keys {
        out.push((k >> 40) as u8);
        out.push((k >> 32) as u8);
        out.push((k >> 16) as u8);
        out.push((k >> 8) as u8);
        out.push(k as u8);
    }
    out
}

pub(crate) fn push_varint(out: &mut Vec<u8>, mut x: u32) {
    loop {
        let b = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

pub(crate) fn read_varint(bytes: &[u8], pos: &mut usize) -> Option<u32> {
    let mut x: u32 = 0;
    let mut shift = 0;
    loop {
        let b = *bytes.get(*pos)?;
        *pos += 1;
        x |= ((b & 0x7f) as u32) << shift;
        if b & 0x80 == 0 {
            return Some(x);
        }
        shift += 7;
        if shift > 28 {
            return None;
        }
    }
}

/// Decoded canonical encoding: colors by position and links
/// `(block, color, lo, hi, anchor)` in canonical order.
pub(crate) struct Decoded {
    pub colors: Vec<u32>,
    pub links: Vec<(u8, u8, u8, u8, u8)>,
}

pub(crate) fn decode(bytes: &[u8]) -> Option<Decoded> {
    let n = *bytes.first()? as usize;
    let m = *bytes.get(1)? as usize;
    let mut pos = 2;
    let mut colors = Vec::with_capacity(n);
    for _ in 0..n {
        colors.push(read_varint(bytes, &mut pos)?);
    }
    let mut links = Vec::with_capacity(m);
    for _ in 0..m {
        let s = bytes.get(pos..pos + 5)?;
        links.push((s[0], s[1], s[2], s[3], s[4]));
        pos += 5;
    }
    if pos != bytes.len() {
        return None;
    }
    Some(Decoded { colors, links })
}

/// Canonical labeling of `frame`.
pub(crate) fn canonical_labeling(frame: &Frame, mode: Mode, want_automorphisms: bool) -> Labeling {
    debug_assert_eq!(frame.colors.len(), frame.groups.len());
    let forced_zero = mode == Mode::Signed && trivially_zero(frame);
    let mut engine = Engine::new(frame, mode, want_automorphisms);
    let mut p = engine.initial_partition();
    engine.refine(&mut p);
    if forced_zero && !want_automorphisms {
        // still need a canonical key for reporting; run unsigned
        engine.mode = Mode::Unsigned;
    }
    engine.search(p);
    let best = engine.best.take().expect("search visits at least one leaf");
    let sign = if forced_zero || engine.zero {
        0
    } else {
        best.sign
    };
    let key = encode(frame, &best.perm, &best.keys);
    Labeling {
        sign,
        key,
        automorphisms: engine.automorphisms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_block(n: usize, edges: &[(usize, usize)], odd: bool) -> Frame {
        Frame {
            colors: vec![0; n],
            groups: vec![0; n],
            links: edges.iter().map(|&(a, b)| Link::plain(a, b, 0)).collect(),
            odd_blocks: SmallVec::from_slice(&[odd]),
        }
    }

    #[test]
    fn varint_roundtrip() {
        for x in [0u32, 1, 127, 128, 300, 65535, 1 << 20] {
            let mut v = Vec::new();
            push_varint(&mut v, x);
            let mut pos = 0;
            assert_eq!(read_varint(&v, &mut pos), Some(x));
            assert_eq!(pos, v.len());
        }
    }

    #[test]
    fn isomorphic_paths_share_key() {
        let a = single_block(3, &[(0, 1), (1, 2)], false);
        let b = single_block(3, &[(2, 0), (0, 1)], false);
        let la = canonical_labeling(&a, Mode::Unsigned, false);
        let lb = canonical_labeling(&b, Mode::Unsigned, false);
        assert_eq!(la.key, lb.key);
    }

    #[test]
    fn k4_has_24_automorphisms() {
        let e = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let f = single_block(4, &e, false);
        let l = canonical_labeling(&f, Mode::Unsigned, true);
        assert_eq!(l.automorphisms.len(), 24);
    }

    #[test]
    fn decode_inverts_encode_shape() {
        let f = single_block(3, &[(0, 1), (1, 2), (2, 0)], true);
        let l = canonical_labeling(&f, Mode::Unsigned, false);
        let d = decode(&l.key).unwrap();
        assert_eq!(d.colors.len(), 3);
        assert_eq!(d.links.len(), 3);
    }
}
