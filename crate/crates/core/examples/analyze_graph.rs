//! Exact moments of the crossing count for a graph read from an edge list.
//!
//! cargo run --example analyze_graph -- path/to/graph.edges

use crossings::exact::{decimal_string, fraction_string};
use crossings::{expectation_rla, freq_fast, variance_rla, Graph};

fn main() -> crossings::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => Graph::parse_edge_list(&std::fs::read_to_string(path)?)?,
        // Petersen graph as a default.
        None => Graph::from_edge_list(
            10,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 1),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 10),
                (6, 8),
                (8, 10),
                (10, 7),
                (7, 9),
                (9, 6),
            ],
        )?,
    };
    println!("n = {}, m = {}, |Q| = {}", g.n(), g.m(), g.size_q());
    if let Some(family) = g.is_q_zero() {
        println!("no independent edge pairs ({family})");
    }
    println!("frequencies: {}", freq_fast(&g));
    let e = expectation_rla(&g);
    let v = variance_rla(&g);
    println!("E[C]   = {} = {}", fraction_string(&e), decimal_string(&e));
    println!("Var[C] = {} = {}", fraction_string(&v), decimal_string(&v));
    Ok(())
}
