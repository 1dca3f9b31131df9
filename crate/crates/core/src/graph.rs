//! Simple undirected graphs with 1-based vertex labels.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, Rational};

/// Immutable simple graph on vertices `1..=n`.
///
/// Per-vertex vectors have length `n + 1`; slot 0 is unused so that labels
/// index directly.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    matrix: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub m: usize,
    /// `(1/n) * sum of k_s^2`.
    pub second_moment: Rational,
}

/// The two shapes a graph with no independent edge pair can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum QZeroFamily {
    /// A star on `lambda` vertices plus `n - lambda` isolated vertices.
    /// Edgeless graphs are reported with `lambda = 1`.
    StarPlusIsolated { lambda: usize },
    /// A triangle plus `n - 3` isolated vertices.
    TrianglePlusIsolated,
}

impl fmt::Display for QZeroFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QZeroFamily::StarPlusIsolated { lambda } => {
                write!(f, "star({lambda}) + isolated vertices")
            }
            QZeroFamily::TrianglePlusIsolated => write!(f, "triangle + isolated vertices"),
        }
    }
}

impl Graph {
    /// Builds a graph from 1-based vertex pairs. Duplicates (in either
    /// orientation) are merged; the error names the 0-based pair index.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut matrix = vec![false; (n + 1) * (n + 1)];
        let mut edges = Vec::with_capacity(pairs.len());
        for (index, &(u, v)) in pairs.iter().enumerate() {
            for vertex in [u, v] {
                if vertex == 0 || vertex > n {
                    return Err(Error::VertexOutOfRange { index, vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { index, vertex: u });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if !matrix[a * (n + 1) + b] {
                matrix[a * (n + 1) + b] = true;
                matrix[b * (n + 1) + a] = true;
                edges.push((a, b));
            }
        }
        edges.sort_unstable();

        let mut adj = vec![Vec::new(); n + 1];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let degrees = adj.iter().map(Vec::len).collect();
        Ok(Self {
            n,
            edges,
            adj,
            degrees,
            matrix,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edge_list(n, &[]).expect("edgeless graph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Degrees indexed by label; index 0 is always 0.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u <= self.n && v <= self.n && self.matrix[u * (self.n + 1) + v]
    }

    /// `a_uv` as an integer.
    #[inline]
    pub fn a(&self, u: usize, v: usize) -> u64 {
        self.matrix[u * (self.n + 1) + v] as u64
    }

    pub fn sum_squared_degrees(&self) -> u64 {
        self.degrees.iter().map(|&k| (k * k) as u64).sum()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let second_moment = if self.n == 0 {
            int(0)
        } else {
            Rational::new(self.sum_squared_degrees().into(), (self.n as u64).into())
        };
        DegreeStats {
            m: self.m(),
            second_moment,
        }
    }

    /// Number of unordered pairs of vertex-disjoint edges,
    /// `(m(m+1) - sum k^2) / 2`.
    pub fn size_q(&self) -> u64 {
        let m = self.m() as u64;
        let twice = m * (m + 1) - self.sum_squared_degrees();
        assert!(twice % 2 == 0, "m(m+1) - sum k^2 must be even");
        twice / 2
    }

    /// Number of edges sharing no endpoint with the edge `{s, t}`.
    pub fn q_edge(&self, s: usize, t: usize) -> Result<u64> {
        if !self.has_edge(s, t) {
            return Err(Error::NotAnEdge { s, t });
        }
        Ok((self.m() + 1 - self.degree(s) - self.degree(t)) as u64)
    }

    /// Structural test for `|Q| = 0`, returning the family the graph
    /// belongs to. Decided from the shape alone, not from `size_q`.
    pub fn is_q_zero(&self) -> Option<QZeroFamily> {
        let m = self.m();
        if m == 0 {
            return Some(QZeroFamily::StarPlusIsolated { lambda: 1 });
        }
        if (1..=self.n).any(|v| self.degree(v) == m) {
            return Some(QZeroFamily::StarPlusIsolated { lambda: m + 1 });
        }
        if m == 3 && (1..=self.n).filter(|&v| self.degree(v) == 2).count() == 3 {
            return Some(QZeroFamily::TrianglePlusIsolated);
        }
        None
    }

    /// `g1 ⊕ g2`, with the labels of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let pairs: Vec<_> = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::from_edge_list(self.n + other.n, &pairs).expect("union of valid graphs is valid")
    }

    /// Parses the edge-list text format: a header `n m` followed by `m`
    /// lines `u v`. Blank lines and lines starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;

        let mut pairs = Vec::with_capacity(m);
        for (line, text) in lines {
            if pairs.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let (u, v) = parse_pair(line, text)?;
            if u == 0 || u > n || v == 0 || v > n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex outside 1..={n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop on vertex {u}"),
                });
            }
            pairs.push((u, v));
        }
        if pairs.len() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("header declares {m} edges, found {}", pairs.len()),
            });
        }
        Graph::from_edge_list(n, &pairs)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, got `{text}`"),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            message: format!("`{s}` is not a non-negative integer"),
        })
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Graph families with closed-form moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete,
    CompleteBipartite,
    Cycle,
    OneRegular,
    Star,
    QuasiStar,
    LinearTree,
    StarPlusIsolated,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Complete,
        Family::CompleteBipartite,
        Family::Cycle,
        Family::OneRegular,
        Family::Star,
        Family::QuasiStar,
        Family::LinearTree,
        Family::StarPlusIsolated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Cycle => "cycle",
            Family::OneRegular => "one_regular",
            Family::Star => "star",
            Family::QuasiStar => "quasi_star",
            Family::LinearTree => "linear_tree",
            Family::StarPlusIsolated => "star_plus_isolated",
        }
    }

    /// Builds a size specification. `n1` is the first part size for
    /// `complete_bipartite` (default `n / 2`) and the star size for
    /// `star_plus_isolated` (required).
    pub fn spec(self, n: usize, n1: Option<usize>) -> Result<FamilySpec> {
        let spec = match self {
            Family::Complete => FamilySpec::Complete(n),
            Family::CompleteBipartite => {
                let n1 = n1.unwrap_or(n / 2);
                if n1 > n {
                    return Err(Error::Family(format!("n1 = {n1} exceeds n = {n}")));
                }
                FamilySpec::CompleteBipartite(n1, n - n1)
            }
            Family::Cycle => FamilySpec::Cycle(n),
            Family::OneRegular => FamilySpec::OneRegular(n),
            Family::Star => FamilySpec::Star(n),
            Family::QuasiStar => FamilySpec::QuasiStar(n),
            Family::LinearTree => FamilySpec::LinearTree(n),
            Family::StarPlusIsolated => {
                let lambda = n1.ok_or_else(|| {
                    Error::Family("star_plus_isolated needs the star size λ".into())
                })?;
                FamilySpec::StarPlusIsolated { lambda, n }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Family(format!("unknown family `{s}`")))
    }
}

/// A family together with its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Cycle(usize),
    OneRegular(usize),
    Star(usize),
    QuasiStar(usize),
    LinearTree(usize),
    StarPlusIsolated { lambda: usize, n: usize },
}

impl FamilySpec {
    pub fn family(&self) -> Family {
        match self {
            FamilySpec::Complete(_) => Family::Complete,
            FamilySpec::CompleteBipartite(..) => Family::CompleteBipartite,
            FamilySpec::Cycle(_) => Family::Cycle,
            FamilySpec::OneRegular(_) => Family::OneRegular,
            FamilySpec::Star(_) => Family::Star,
            FamilySpec::QuasiStar(_) => Family::QuasiStar,
            FamilySpec::LinearTree(_) => Family::LinearTree,
            FamilySpec::StarPlusIsolated { .. } => Family::StarPlusIsolated,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::CompleteBipartite(n1, n2) => n1 + n2,
            FamilySpec::StarPlusIsolated { n, .. } => n,
            FamilySpec::Complete(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::OneRegular(n)
            | FamilySpec::Star(n)
            | FamilySpec::QuasiStar(n)
            | FamilySpec::LinearTree(n) => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Family(msg));
        match *self {
            FamilySpec::Complete(n) | FamilySpec::Star(n) | FamilySpec::LinearTree(n) if n == 0 => {
                fail(format!("{} needs n >= 1", self.family()))
            }
            FamilySpec::CompleteBipartite(n1, n2) if n1 == 0 || n2 == 0 => fail(format!(
                "complete_bipartite needs both parts non-empty, got ({n1}, {n2})"
            )),
            FamilySpec::Cycle(n) if n < 3 => fail(format!("cycle needs n >= 3, got {n}")),
            FamilySpec::OneRegular(n) if n == 0 || n % 2 == 1 => {
                fail(format!("one_regular needs a positive even n, got {n}"))
            }
            FamilySpec::QuasiStar(n) if n < 4 => fail(format!("quasi_star needs n >= 4, got {n}")),
            FamilySpec::StarPlusIsolated { lambda, n } if lambda == 0 || lambda > n => fail(
                format!("star_plus_isolated needs 1 <= λ <= n, got λ = {lambda}, n = {n}"),
            ),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            FamilySpec::CompleteBipartite(n1, n2) => format!("complete_bipartite({n1},{n2})"),
            FamilySpec::StarPlusIsolated { lambda, n } => {
                format!("star_plus_isolated({lambda},{n})")
            }
            _ => format!("{}({})", self.family(), self.n()),
        }
    }

    /// The canonical labeled instance.
    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.n();
        let pairs: Vec<(usize, usize)> = match *self {
            FamilySpec::Complete(n) => (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .collect(),
            FamilySpec::CompleteBipartite(n1, n2) => (1..=n1)
                .flat_map(|u| (n1 + 1..=n1 + n2).map(move |v| (u, v)))
                .collect(),
            FamilySpec::Cycle(n) => (1..n)
                .map(|i| (i, i + 1))
                .chain(std::iter::once((1, n)))
                .collect(),
            FamilySpec::OneRegular(n) => (1..=n / 2).map(|i| (2 * i - 1, 2 * i)).collect(),
            FamilySpec::Star(n) => (2..=n).map(|i| (1, i)).collect(),
            // Hub 1 joined to 2..n-1, plus the pendant edge 2-n.
            FamilySpec::QuasiStar(n) => (2..n)
                .map(|i| (1, i))
                .chain(std::iter::once((2, n)))
                .collect(),
            FamilySpec::LinearTree(n) => (1..n).map(|i| (i, i + 1)).collect(),
            FamilySpec::StarPlusIsolated { lambda, .. } => (2..=lambda).map(|i| (1, i)).collect(),
        };
        Graph::from_edge_list(n, &pairs)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn gen_family(spec: FamilySpec) -> Result<Graph> {
    spec.generate()
}

/// G(n, p) graph. Pairs are visited as `(i, j)`, `i < j`, in lexicographic
/// order and each is kept with one `gen_bool(p)` draw from a ChaCha8 stream
/// seeded with `seed`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "p must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_edge_list(n, &pairs)
}
