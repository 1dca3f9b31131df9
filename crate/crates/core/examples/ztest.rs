//! How unusual is the crossing count of a particular arrangement?

use crossings::exact::decimal_string;
use crossings::moments::{chebyshev_pbound, z_score};
use crossings::{crossings, FamilySpec, LinearArrangement};

fn main() -> crossings::Result<()> {
    let g = FamilySpec::Cycle(12).generate()?;
    // Identity places the cycle with one long closing edge: no crossings.
    let identity = LinearArrangement::identity(12);
    // Alternating sides of the line: many crossings.
    let order: Vec<usize> = (1..=12).step_by(2).chain((2..=12).step_by(2)).collect();
    let interleaved = LinearArrangement::from_order(order)?;
    for (label, arr) in [("identity", identity), ("odd-then-even", interleaved)] {
        let c = crossings(&g, &arr)?;
        println!(
            "{label:<14} C = {c:>3}  z = {:+.3}  Chebyshev bound {}",
            z_score(&g, c)?,
            decimal_string(&chebyshev_pbound(&g, c))
        );
    }
    Ok(())
}
