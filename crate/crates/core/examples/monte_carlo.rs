//! Monte Carlo estimates of the moments on graphs too large to enumerate.

use crossings::estimator::monte_carlo_moments;
use crossings::exact::to_f64;
use crossings::{erdos_renyi, expectation_rla, variance_rla, FamilySpec};

fn main() -> crossings::Result<()> {
    let graphs = [
        ("cycle(60)", FamilySpec::Cycle(60).generate()?),
        ("linear_tree(60)", FamilySpec::LinearTree(60).generate()?),
        ("G(40, 0.2)", erdos_renyi(40, 0.2, 3)?),
    ];
    for (label, g) in graphs {
        let r = monte_carlo_moments(&g, 200_000, 17)?;
        let (e, v) = (to_f64(&expectation_rla(&g)), to_f64(&variance_rla(&g)));
        let (em, vm) = (to_f64(&r.mean), to_f64(&r.variance));
        println!(
            "{label:<16} E {e:>12.3} est {em:>12.3} ({:+.4})   Var {v:>12.3} est {vm:>12.3} ({:+.4})",
            (em - e) / e,
            (vm - v) / v
        );
    }
    Ok(())
}
