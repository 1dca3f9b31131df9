//! Product-type frequencies by three routes: brute force, the fast
//! counting routine, and the graphette census.

use crossings::product_types::{graphette_census, DEFAULT_BRUTE_LIMIT};
use crossings::{erdos_renyi, freq_brute, freq_fast, ProductType};

fn main() -> crossings::Result<()> {
    let g = erdos_renyi(14, 0.35, 42)?;
    let fast = freq_fast(&g);
    let brute = freq_brute(&g, DEFAULT_BRUTE_LIMIT)?;
    let census = graphette_census(&g);
    let implied = census.implied_freq();
    println!("G(14, 0.35) seed 42: m = {}, |Q| = {}", g.m(), g.size_q());
    println!(
        "{:>5} {:>10} {:>10} {:>10}",
        "type", "fast", "brute", "census"
    );
    for t in ProductType::ALL {
        println!(
            "{:>5} {:>10} {:>10} {:>10}",
            t.code(),
            fast[t],
            brute[t],
            implied[t]
        );
    }
    assert_eq!(fast, brute);
    println!("sum = {} = |Q|^2", fast.total());
    Ok(())
}
