//! The nine types of products in `Q × Q` and their frequencies.
//!
//! `Q` holds unordered pairs of vertex-disjoint edges. A product is an
//! ordered pair `(q1, q2)` of elements of `Q`; its type depends on how many
//! edges the two pairs share (`τ`) and on how many edge-to-edge vertex
//! incidences there are between them (`φ`).

use std::fmt;
use std::ops::{Add, AddAssign, Index};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Product types, in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProductType {
    T00,
    T24,
    T13,
    T12,
    T04,
    T03,
    T021,
    T022,
    T01,
}

impl ProductType {
    pub const ALL: [ProductType; 9] = [
        ProductType::T00,
        ProductType::T24,
        ProductType::T13,
        ProductType::T12,
        ProductType::T04,
        ProductType::T03,
        ProductType::T021,
        ProductType::T022,
        ProductType::T01,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn code(self) -> &'static str {
        ["00", "24", "13", "12", "04", "03", "021", "022", "01"][self.index()]
    }

    /// Number of distinct vertices covered by a product of this type.
    pub fn vertex_count(self) -> usize {
        [8, 4, 5, 6, 4, 5, 6, 6, 7][self.index()]
    }

    /// Shared edges between the two pairs.
    pub fn tau(self) -> usize {
        match self {
            ProductType::T24 => 2,
            ProductType::T13 | ProductType::T12 => 1,
            _ => 0,
        }
    }

    /// Edge-to-edge vertex incidences between the two pairs.
    pub fn phi(self) -> usize {
        match self {
            ProductType::T00 => 0,
            ProductType::T24 | ProductType::T04 => 4,
            ProductType::T13 | ProductType::T03 => 3,
            ProductType::T12 | ProductType::T021 | ProductType::T022 => 2,
            ProductType::T01 => 1,
        }
    }

    /// A representative product on vertices `1..=vertex_count()`, with
    /// `q1 = {12, 34}`.
    pub fn representative(self) -> (Pair, Pair) {
        let q1 = ((1, 2), (3, 4));
        let q2 = match self {
            ProductType::T00 => ((5, 6), (7, 8)),
            ProductType::T24 => ((1, 2), (3, 4)),
            ProductType::T13 => ((1, 2), (3, 5)),
            ProductType::T12 => ((1, 2), (5, 6)),
            ProductType::T04 => ((1, 3), (2, 4)),
            ProductType::T03 => ((1, 3), (2, 5)),
            ProductType::T021 => ((1, 3), (5, 6)),
            ProductType::T022 => ((1, 5), (3, 6)),
            ProductType::T01 => ((1, 5), (6, 7)),
        };
        (q1, q2)
    }
}

impl fmt::Display for ProductType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ProductType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductType::ALL
            .into_iter()
            .find(|t| t.code() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown product type `{s}`")))
    }
}

pub type Edge = (usize, usize);
/// An element of `Q`: two vertex-disjoint edges.
pub type Pair = (Edge, Edge);

fn norm(e: Edge) -> Edge {
    if e.0 < e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

fn meet(a: Edge, b: Edge) -> usize {
    (a.0 == b.0 || a.0 == b.1) as usize + (a.1 == b.0 || a.1 == b.1) as usize
}

fn check_pair(q: Pair) -> Result<()> {
    let (e1, e2) = q;
    if e1.0 == e1.1 || e2.0 == e2.1 || meet(e1, e2) != 0 {
        return Err(Error::NotIndependentPair(format!(
            "{{{}{},{}{}}}",
            e1.0, e1.1, e2.0, e2.1
        )));
    }
    Ok(())
}

/// Type of the product `(q1, q2)`. Both arguments must be pairs of
/// vertex-disjoint edges; membership in a particular graph is not checked.
pub fn classify(q1: Pair, q2: Pair) -> Result<ProductType> {
    check_pair(q1)?;
    check_pair(q2)?;
    Ok(classify_unchecked(q1, q2))
}

fn classify_unchecked(q1: Pair, q2: Pair) -> ProductType {
    let a = [norm(q1.0), norm(q1.1)];
    let b = [norm(q2.0), norm(q2.1)];
    let tau = a.iter().filter(|e| b.contains(e)).count();
    let mut per_a = [0usize; 2];
    let mut per_b = [0usize; 2];
    for i in 0..2 {
        for j in 0..2 {
            let w = meet(a[i], b[j]);
            per_a[i] += w;
            per_b[j] += w;
        }
    }
    let phi = per_a[0] + per_a[1];
    match (tau, phi) {
        (2, _) => ProductType::T24,
        (1, 3) => ProductType::T13,
        (1, 2) => ProductType::T12,
        (0, 0) => ProductType::T00,
        (0, 1) => ProductType::T01,
        (0, 3) => ProductType::T03,
        (0, 4) => ProductType::T04,
        (0, 2) => {
            if per_a.contains(&2) || per_b.contains(&2) {
                ProductType::T021
            } else {
                ProductType::T022
            }
        }
        _ => unreachable!("τ = {tau}, φ = {phi} cannot occur for independent pairs"),
    }
}

/// Frequencies `f_ω`, indexed in canonical type order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "FreqRecord", into = "FreqRecord")]
pub struct FreqVector(pub [u64; 9]);

/// Flat record form of a [`FreqVector`] used for CSV and JSON.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FreqRecord {
    pub f00: u64,
    pub f24: u64,
    pub f13: u64,
    pub f12: u64,
    pub f04: u64,
    pub f03: u64,
    pub f021: u64,
    pub f022: u64,
    pub f01: u64,
}

impl From<FreqRecord> for FreqVector {
    fn from(r: FreqRecord) -> Self {
        FreqVector([
            r.f00, r.f24, r.f13, r.f12, r.f04, r.f03, r.f021, r.f022, r.f01,
        ])
    }
}

impl From<FreqVector> for FreqRecord {
    fn from(f: FreqVector) -> Self {
        let [f00, f24, f13, f12, f04, f03, f021, f022, f01] = f.0;
        FreqRecord {
            f00,
            f24,
            f13,
            f12,
            f04,
            f03,
            f021,
            f022,
            f01,
        }
    }
}

impl FreqVector {
    pub fn get(&self, t: ProductType) -> u64 {
        self.0[t.index()]
    }

    pub fn total(&self) -> u128 {
        self.0.iter().map(|&f| f as u128).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ProductType, u64)> + '_ {
        ProductType::ALL.into_iter().map(|t| (t, self.get(t)))
    }

    /// Types whose frequency violates the parity rule (odd for `ω ≠ 24`).
    pub fn parity_violations(&self) -> Vec<ProductType> {
        self.iter()
            .filter(|&(t, f)| t != ProductType::T24 && f % 2 == 1)
            .map(|(t, _)| t)
            .collect()
    }
}

impl Index<ProductType> for FreqVector {
    type Output = u64;

    fn index(&self, t: ProductType) -> &u64 {
        &self.0[t.index()]
    }
}

impl Add for FreqVector {
    type Output = FreqVector;

    fn add(mut self, rhs: FreqVector) -> FreqVector {
        self += rhs;
        self
    }
}

impl AddAssign for FreqVector {
    fn add_assign(&mut self, rhs: FreqVector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl fmt::Display for FreqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(t, v)| format!("f{t}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

pub const DEFAULT_BRUTE_LIMIT: u64 = 50_000;

/// The elements of `Q` as pairs of edge indices `(i, j)`, `i < j`, sorted.
pub fn q_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let edges = g.edges();
    let mut out = Vec::new();
    for (i, &e1) in edges.iter().enumerate() {
        for (j, &e2) in edges.iter().enumerate().skip(i + 1) {
            if meet(e1, e2) == 0 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Classifies every product of `Q × Q` directly. Unordered off-diagonal
/// pairs count twice, diagonal ones once.
pub fn freq_brute(g: &Graph, limit: u64) -> Result<FreqVector> {
    let q = g.size_q();
    if q > limit {
        return Err(Error::BudgetExceeded {
            q,
            q_squared: q as u128 * q as u128,
            limit,
        });
    }
    let edges = g.edges();
    let pairs: Vec<Pair> = q_pairs(g)
        .into_iter()
        .map(|(i, j)| (edges[i], edges[j]))
        .collect();
    let freq = (0..pairs.len())
        .into_par_iter()
        .fold(FreqVector::default, |mut acc, a| {
            acc.0[ProductType::T24.index()] += 1;
            for &other in &pairs[a + 1..] {
                acc.0[classify_unchecked(pairs[a], other).index()] += 2;
            }
            acc
        })
        .reduce(FreqVector::default, Add::add);
    Ok(freq)
}

#[derive(Default)]
struct FastAcc {
    f: [u64; 9],
    f00_direct: u64,
}

struct Scratch {
    mask: Vec<u8>,
    touched: Vec<usize>,
}

/// All nine frequencies from local quantities of each element of `Q`.
///
/// For `q = {st, uv}` with `L = {s, t, u, v}`: `g_x` counts neighbors of `x`
/// outside `L`, `E'` counts edges with no endpoint in `L`, and `c_w` counts
/// the neighbors in `L` of an outside vertex `w`. `f_00` is accumulated
/// directly as `|Q(G - L)|` and must match `|Q|^2` minus the other eight.
pub fn freq_fast(g: &Graph) -> FreqVector {
    let n = g.n();
    let m = g.m() as u64;
    let edges = g.edges();
    let k = |x: usize| g.degree(x) as u64;
    let s2 = g.sum_squared_degrees();

    let acc = (0..edges.len())
        .into_par_iter()
        .fold(
            || {
                (
                    FastAcc::default(),
                    Scratch {
                        mask: vec![0u8; n + 1],
                        touched: Vec::new(),
                    },
                )
            },
            |(mut acc, mut scratch), i| {
                let (s, t) = edges[i];
                for &(u, v) in &edges[i + 1..] {
                    if u == s || u == t || v == s || v == t {
                        continue;
                    }
                    accumulate(g, m, s2, [s, t, u, v], &k, &mut acc, &mut scratch);
                }
                (acc, scratch)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(FastAcc::default, |mut a, b| {
            for (x, y) in a.f.iter_mut().zip(b.f) {
                *x += y;
            }
            a.f00_direct += b.f00_direct;
            a
        });

    let q = g.size_q() as u128;
    let others: u128 = acc.f.iter().map(|&x| x as u128).sum();
    let by_subtraction = q * q - others;
    assert_eq!(
        by_subtraction, acc.f00_direct as u128,
        "f00 by subtraction disagrees with the direct count"
    );
    let mut f = acc.f;
    f[ProductType::T00.index()] = acc.f00_direct;
    FreqVector(f)
}

#[inline]
fn accumulate(
    g: &Graph,
    m: u64,
    s2: u64,
    l: [usize; 4],
    k: &impl Fn(usize) -> u64,
    acc: &mut FastAcc,
    scratch: &mut Scratch,
) {
    let [s, t, u, v] = l;
    let a = |x, y| g.a(x, y);
    let (a_su, a_sv, a_tu, a_tv) = (a(s, u), a(s, v), a(t, u), a(t, v));
    let big_a = a_su + a_sv + a_tu + a_tv;

    let gs = k(s) - 1 - a_su - a_sv;
    let gt = k(t) - 1 - a_tu - a_tv;
    let gu = k(u) - 1 - a_su - a_tu;
    let gv = k(v) - 1 - a_sv - a_tv;
    let e_rest = m + 2 + big_a - (k(s) + k(t) + k(u) + k(v));

    // Bit b of mask[w] marks w as a neighbor of l[b], for w outside L.
    for (bit, &x) in l.iter().enumerate() {
        for &w in g.neighbors(x) {
            if w == s || w == t || w == u || w == v {
                continue;
            }
            if scratch.mask[w] == 0 {
                scratch.touched.push(w);
            }
            scratch.mask[w] |= 1 << bit;
        }
    }

    // Common outside neighbors for the pairs st, uv, su, sv, tu, tv.
    const PAIRS: [u8; 6] = [0b0011, 0b1100, 0b0101, 0b1001, 0b0110, 0b1010];
    let mut common = [0u64; 6];
    let mut f01 = 0u64;
    let mut s2_rest = s2 - k(s) * k(s) - k(t) * k(t) - k(u) * k(u) - k(v) * k(v);
    for &w in &scratch.touched {
        let bits = scratch.mask[w];
        for (c, &p) in common.iter_mut().zip(&PAIRS) {
            *c += (bits & p == p) as u64;
        }
        let c_w = bits.count_ones() as u64;
        let kw = k(w);
        f01 += c_w * (e_rest - (kw - c_w));
        s2_rest = s2_rest + (kw - c_w) * (kw - c_w) - kw * kw;
        scratch.mask[w] = 0;
    }
    scratch.touched.clear();

    let phi = |gx: u64, gy: u64, c: u64| gx * gy - c;
    let f = &mut acc.f;
    f[ProductType::T24.index()] += 1;
    f[ProductType::T13.index()] += gs + gt + gu + gv;
    f[ProductType::T12.index()] += 2 * e_rest;
    f[ProductType::T04.index()] += a_su * a_tv + a_sv * a_tu;
    f[ProductType::T03.index()] +=
        a_su * (gt + gv) + a_sv * (gt + gu) + a_tu * (gs + gv) + a_tv * (gs + gu);
    f[ProductType::T021.index()] +=
        phi(gs, gt, common[0]) + phi(gu, gv, common[1]) + big_a * e_rest;
    f[ProductType::T022.index()] += phi(gs, gu, common[2])
        + phi(gs, gv, common[3])
        + phi(gt, gu, common[4])
        + phi(gt, gv, common[5]);
    f[ProductType::T01.index()] += f01;

    let twice = e_rest * (e_rest + 1) - s2_rest;
    debug_assert!(twice % 2 == 0);
    acc.f00_direct += twice / 2;
}

/// Small subgraph shapes whose counts determine the frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Graphette {
    L2L2L2L2,
    L2L2,
    L3L2,
    L2L2L2,
    C4,
    L5,
    L4L2,
    L3L3,
    L3L2L2,
}

impl Graphette {
    pub const ALL: [Graphette; 9] = [
        Graphette::L2L2L2L2,
        Graphette::L2L2,
        Graphette::L3L2,
        Graphette::L2L2L2,
        Graphette::C4,
        Graphette::L5,
        Graphette::L4L2,
        Graphette::L3L3,
        Graphette::L3L2L2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Graphette::L2L2L2L2 => "L2+L2+L2+L2",
            Graphette::L2L2 => "L2+L2",
            Graphette::L3L2 => "L3+L2",
            Graphette::L2L2L2 => "L2+L2+L2",
            Graphette::C4 => "C4",
            Graphette::L5 => "L5",
            Graphette::L4L2 => "L4+L2",
            Graphette::L3L3 => "L3+L3",
            Graphette::L3L2L2 => "L3+L2+L2",
        }
    }

    /// The shape `F_ω` and multiplicity `a_ω` with `f_ω = a_ω · n_G(F_ω)`.
    pub fn for_type(t: ProductType) -> (u64, Graphette) {
        let g = Graphette::ALL[t.index()];
        let a = [6, 1, 2, 6, 2, 2, 2, 4, 4][t.index()];
        (a, g)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Graphette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Graphette {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('⊕', "+");
        Graphette::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown graphette `{s}`")))
    }
}

/// Counts of every graphette as edge subsets of `g`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphetteCensus(pub [u64; 9]);

impl GraphetteCensus {
    pub fn get(&self, shape: Graphette) -> u64 {
        self.0[shape.index()]
    }

    /// `a_ω · n_G(F_ω)` for every type.
    pub fn implied_freq(&self) -> FreqVector {
        let mut f = [0u64; 9];
        for t in ProductType::ALL {
            let (a, shape) = Graphette::for_type(t);
            f[t.index()] = a * self.get(shape);
        }
        FreqVector(f)
    }
}

/// Shape of a set of 2 to 4 edges, if it is one of the nine graphettes.
fn shape_of(edges: &[Edge]) -> Option<Graphette> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let idx = |x: usize| verts.binary_search(&x).unwrap();
    let nv = verts.len();

    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut degree = vec![0usize; nv];
    for &(a, b) in edges {
        let (ia, ib) = (idx(a), idx(b));
        degree[ia] += 1;
        degree[ib] += 1;
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        parent[ra] = rb;
    }

    // (vertices, edges, max degree) per component.
    let mut comps: Vec<(usize, usize, usize)> = Vec::new();
    let mut root_of = vec![usize::MAX; nv];
    for (x, &deg) in degree.iter().enumerate().take(nv) {
        let r = find(&mut parent, x);
        let slot = if root_of[r] == usize::MAX {
            root_of[r] = comps.len();
            comps.push((0, 0, 0));
            comps.len() - 1
        } else {
            root_of[r]
        };
        comps[slot].0 += 1;
        comps[slot].2 = comps[slot].2.max(deg);
    }
    for &(a, _) in edges {
        let r = find(&mut parent, idx(a));
        comps[root_of[r]].1 += 1;
    }

    if comps.len() == 1 && comps[0] == (4, 4, 2) {
        return Some(Graphette::C4);
    }
    let mut paths = Vec::with_capacity(comps.len());
    for &(v, e, d) in &comps {
        if e + 1 != v || d > 2 {
            return None;
        }
        paths.push(v);
    }
    paths.sort_unstable_by(|a, b| b.cmp(a));
    match paths.as_slice() {
        [2, 2] => Some(Graphette::L2L2),
        [3, 2] => Some(Graphette::L3L2),
        [2, 2, 2] => Some(Graphette::L2L2L2),
        [5] => Some(Graphette::L5),
        [4, 2] => Some(Graphette::L4L2),
        [3, 3] => Some(Graphette::L3L3),
        [3, 2, 2] => Some(Graphette::L3L2L2),
        [2, 2, 2, 2] => Some(Graphette::L2L2L2L2),
        _ => None,
    }
}

/// Counts all nine graphettes by enumerating every set of 2, 3 and 4 edges.
/// Cost grows as `m^4`; meant for validation on small graphs.
pub fn graphette_census(g: &Graph) -> GraphetteCensus {
    let edges = g.edges();
    let m = edges.len();
    let counts = (0..m)
        .into_par_iter()
        .fold(
            || [0u64; 9],
            |mut acc, i| {
                let mut bump = |set: &[Edge]| {
                    if let Some(shape) = shape_of(set) {
                        acc[shape.index()] += 1;
                    }
                };
                for j in i + 1..m {
                    bump(&[edges[i], edges[j]]);
                    for k in j + 1..m {
                        bump(&[edges[i], edges[j], edges[k]]);
                        for l in k + 1..m {
                            bump(&[edges[i], edges[j], edges[k], edges[l]]);
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || [0u64; 9],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    GraphetteCensus(counts)
}

pub fn count_graphette(g: &Graph, shape: Graphette) -> u64 {
    graphette_census(g).get(shape)
}
