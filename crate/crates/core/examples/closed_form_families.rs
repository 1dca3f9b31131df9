//! Closed-form moments for the standard families and their growth rates.

use crossings::closed_forms::{closed_expectation, closed_variance, scaling_slope, Moment};
use crossings::exact::decimal_string;
use crossings::Family;

// Identically zero moments have no slope.
fn slope(s: f64) -> String {
    if s.is_finite() {
        format!("{s:.3}")
    } else {
        "-".into()
    }
}

fn main() -> crossings::Result<()> {
    println!(
        "{:<20} {:>14} {:>14} {:>8} {:>8}",
        "family", "E (n=40)", "Var (n=40)", "E slope", "V slope"
    );
    for family in Family::ALL {
        let Ok(spec) = family.spec(40, Some(20)) else {
            continue;
        };
        let e = closed_expectation(spec)?;
        let v = closed_variance(spec)?;
        let es = slope(scaling_slope(family, Moment::Expectation, 50, 100)?);
        let vs = slope(scaling_slope(family, Moment::Variance, 50, 100)?);
        println!(
            "{:<20} {:>14} {:>14} {es:>8} {vs:>8}",
            family.name(),
            decimal_string(&e),
            decimal_string(&v)
        );
    }
    Ok(())
}
