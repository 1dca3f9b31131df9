//! Runs the consistency battery over a graph6 corpus (default: all graphs
//! on four vertices) and prints the JSON report.

use crossings::validation::{validate_graph6_corpus, ValidationConfig};
use std::path::PathBuf;

fn main() -> crossings::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/atlas_n4.g6")
        });
    let report = validate_graph6_corpus(&path, None, &ValidationConfig::default())?;
    println!("{}", report.to_json());
    if !report.success {
        std::process::exit(3);
    }
    Ok(())
}
