//! Linear arrangements and crossing counts.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A bijection from vertices `1..=n` to positions `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearArrangement {
    /// `position[v]` for `v` in `1..=n`; slot 0 unused.
    position: Vec<usize>,
    /// `order[p - 1]` is the vertex at position `p`.
    order: Vec<usize>,
}

impl LinearArrangement {
    pub fn identity(n: usize) -> Self {
        Self::from_order((1..=n).collect()).expect("identity is a permutation")
    }

    /// From the position of each vertex, vertex 1 first.
    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let n = positions.len();
        let mut order = vec![0usize; n];
        for (i, &p) in positions.iter().enumerate() {
            if p == 0 || p > n {
                return Err(Error::InvalidArrangement(format!(
                    "position {p} of vertex {} is outside 1..={n}",
                    i + 1
                )));
            }
            if order[p - 1] != 0 {
                return Err(Error::InvalidArrangement(format!(
                    "position {p} is used twice"
                )));
            }
            order[p - 1] = i + 1;
        }
        let mut position = Vec::with_capacity(n + 1);
        position.push(0);
        position.extend_from_slice(positions);
        Ok(Self { position, order })
    }

    /// From the sequence of vertices read left to right.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![0usize; n + 1];
        for (i, &v) in order.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidArrangement(format!(
                    "vertex {v} is outside 1..={n}"
                )));
            }
            if position[v] != 0 {
                return Err(Error::InvalidArrangement(format!(
                    "vertex {v} appears twice"
                )));
            }
            position[v] = i + 1;
        }
        Ok(Self { position, order })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position[1..]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self::from_order(order).expect("reversal keeps bijectivity")
    }

    /// Parses one line of `n` whitespace-separated positions, vertex 1 first.
    pub fn parse(text: &str) -> Result<Self> {
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::InvalidArrangement("empty arrangement file".into()))?;
        let positions = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidArrangement(format!("`{t}` is not a position")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_positions(&positions)
    }

    pub fn to_line(&self) -> String {
        let cols: Vec<String> = self.positions().iter().map(usize::to_string).collect();
        cols.join(" ")
    }
}

impl fmt::Debug for LinearArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearArrangement{:?}", self.order)
    }
}

/// `true` iff exactly one endpoint of the second edge lies strictly between
/// the endpoints of the first.
#[inline]
fn interleaved(ps: usize, pt: usize, pu: usize, pv: usize) -> bool {
    let (lo, hi) = if ps < pt { (ps, pt) } else { (pt, ps) };
    (lo < pu && pu < hi) != (lo < pv && pv < hi)
}

/// Crossing counter with the independent edge pairs of a graph
/// precomputed, so each evaluation costs `O(|Q|)`.
#[derive(Debug, Clone)]
pub struct CrossingCounter {
    n: usize,
    quads: Vec<[u32; 4]>,
}

impl CrossingCounter {
    pub fn new(g: &Graph) -> Self {
        let edges = g.edges();
        let mut quads = Vec::with_capacity(g.size_q() as usize);
        for (i, &(s, t)) in edges.iter().enumerate() {
            for &(u, v) in &edges[i + 1..] {
                if s != u && s != v && t != u && t != v {
                    quads.push([s as u32, t as u32, u as u32, v as u32]);
                }
            }
        }
        Self { n: g.n(), quads }
    }

    pub fn size_q(&self) -> u64 {
        self.quads.len() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Counts crossings given `position` indexed by vertex (slot 0 unused).
    #[inline]
    pub fn count_positions(&self, position: &[usize]) -> u64 {
        self.quads
            .iter()
            .filter(|q| {
                interleaved(
                    position[q[0] as usize],
                    position[q[1] as usize],
                    position[q[2] as usize],
                    position[q[3] as usize],
                )
            })
            .count() as u64
    }

    pub fn count(&self, arr: &LinearArrangement) -> Result<u64> {
        if arr.n() != self.n {
            return Err(Error::ArrangementSize {
                expected: self.n,
                got: arr.n(),
            });
        }
        Ok(self.count_positions(&arr.position))
    }
}

pub fn crossings(g: &Graph, arr: &LinearArrangement) -> Result<u64> {
    CrossingCounter::new(g).count(arr)
}

/// The literal crossing condition: orient both edges left to right, then
/// test `π(s) < π(u) < π(t) < π(v)` or `π(u) < π(s) < π(v) < π(t)`.
pub fn crossings_oriented(g: &Graph, arr: &LinearArrangement) -> Result<u64> {
    if arr.n() != g.n() {
        return Err(Error::ArrangementSize {
            expected: g.n(),
            got: arr.n(),
        });
    }
    let oriented = |(a, b): (usize, usize)| {
        let (pa, pb) = (arr.position(a), arr.position(b));
        if pa < pb {
            (pa, pb)
        } else {
            (pb, pa)
        }
    };
    let edges = g.edges();
    let mut count = 0;
    for (i, &e1) in edges.iter().enumerate() {
        for &e2 in &edges[i + 1..] {
            if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
                continue;
            }
            let (s, t) = oriented(e1);
            let (u, v) = oriented(e2);
            if (s < u && u < t && t < v) || (u < s && s < v && v < t) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `|π(u) - π(v)|`.
pub fn edge_length(arr: &LinearArrangement, u: usize, v: usize) -> usize {
    arr.position(u).abs_diff(arr.position(v))
}

/// Most crossings an edge of length `d` can take part in: `(d-1)(n-d-1)`.
pub fn max_crossings_of_length(n: usize, d: usize) -> u64 {
    assert!(d >= 1 && d < n, "edge length must lie in 1..n");
    ((d - 1) * (n - d - 1)) as u64
}

/// Number of vertex pairs at distance `d`, `n - d`.
pub fn max_edges_of_length(n: usize, d: usize) -> u64 {
    (n - d) as u64
}

/// Uniformly random arrangement (Fisher-Yates shuffle of the vertex order).
pub fn random_arrangement<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LinearArrangement {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    LinearArrangement::from_order(order).expect("a shuffle is a permutation")
}

/// Advances `seq` to its lexicographic successor; `false` at the last one.
pub fn next_permutation(seq: &mut [usize]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Every arrangement of `n` vertices exactly once, in lexicographic order of
/// the vertex sequence.
pub fn all_arrangements(n: usize) -> impl Iterator<Item = LinearArrangement> {
    let mut current: Option<Vec<usize>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let order = current.take()?;
        let mut succ = order.clone();
        if next_permutation(&mut succ) {
            current = Some(succ);
        }
        Some(LinearArrangement::from_order(order).expect("permutation"))
    })
}
