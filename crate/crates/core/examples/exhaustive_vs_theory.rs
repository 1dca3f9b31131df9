//! Enumerates every arrangement of small graphs and compares the observed
//! moments with the exact formulas.

use crossings::estimator::exhaustive_moments;
use crossings::exact::fraction_string;
use crossings::{expectation_rla, variance_rla, FamilySpec};

fn main() -> crossings::Result<()> {
    let specs = [
        FamilySpec::Cycle(8),
        FamilySpec::LinearTree(9),
        FamilySpec::Complete(7),
        FamilySpec::CompleteBipartite(4, 4),
        FamilySpec::QuasiStar(9),
    ];
    for spec in specs {
        let g = spec.generate()?;
        let r = exhaustive_moments(&g, 10, true)?;
        let (e, v) = (expectation_rla(&g), variance_rla(&g));
        println!(
            "{:<26} mean {} (theory {})  var {} (theory {})  max C {}",
            spec.to_string(),
            fraction_string(&r.mean),
            fraction_string(&e),
            fraction_string(&r.variance),
            fraction_string(&v),
            r.max_observed
        );
        assert_eq!((r.mean, r.variance), (e, v));
    }
    Ok(())
}
