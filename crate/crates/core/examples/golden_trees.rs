//! Variance of the crossing count over every labelled tree up to eight vertices.

use crossings::exact::{fraction_string, int};
use crossings::moments::{tree_variance_from_freq, variance_from_freq};
use crossings::{freq_fast, pruefer, Rational};
use std::collections::BTreeSet;

fn main() {
    for n in 4..=8 {
        let mut seen: BTreeSet<Rational> = BTreeSet::new();
        let mut count = 0;
        for (_, t) in pruefer::all_trees(n) {
            let f = freq_fast(&t);
            let v = variance_from_freq(&f);
            assert_eq!(v, tree_variance_from_freq(&f));
            seen.insert(v);
            count += 1;
        }
        let values: Vec<_> = seen.iter().map(fraction_string).collect();
        println!("n = {n}: {count} trees, {} distinct variances", seen.len());
        println!("  {}", values.join(" "));
        println!(
            "  min {} max {}",
            fraction_string(seen.first().unwrap_or(&int(0))),
            fraction_string(seen.last().unwrap_or(&int(0)))
        );
    }
}
