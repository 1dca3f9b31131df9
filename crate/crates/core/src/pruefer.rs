//! Labeled trees from Prüfer codes.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Decodes a code of length `n - 2` over labels `1..=n` into a tree.
pub fn decode(n: usize, code: &[usize]) -> Result<Graph> {
    if n < 2 || code.len() != n - 2 {
        return Err(Error::InvalidParameter(format!(
            "a Prüfer code for n = {n} has length n - 2, got {}",
            code.len()
        )));
    }
    let mut degree = vec![1usize; n + 1];
    degree[0] = 0;
    for (index, &label) in code.iter().enumerate() {
        if label == 0 || label > n {
            return Err(Error::PrueferLabel { index, label, n });
        }
        degree[label] += 1;
    }

    let mut pairs = Vec::with_capacity(n - 1);
    for &label in code {
        let leaf = (1..=n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        pairs.push((leaf, label));
        degree[leaf] -= 1;
        degree[label] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    pairs.push((rest[0], rest[1]));
    Graph::from_edge_list(n, &pairs)
}

/// All `n^(n-2)` codes in lexicographic order.
pub fn codes(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let len = n.saturating_sub(2);
    let mut next = if n >= 2 {
        Some(vec![1usize; len])
    } else {
        None
    };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = len;
        while i > 0 {
            i -= 1;
            if succ[i] < n {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 1;
        }
        Some(current)
    })
}

/// All labeled trees on `n` vertices, in code order.
pub fn all_trees(n: usize) -> impl Iterator<Item = (Vec<usize>, Graph)> {
    codes(n).map(move |code| {
        let tree = decode(n, &code).expect("enumerated codes are valid");
        (code, tree)
    })
}
