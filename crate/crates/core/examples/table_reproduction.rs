//! Recompute the table of well-covered circulants on at most 16 vertices
//! and diff it against the shipped copy.
//!
//!     cargo run --release --example table_reproduction -- 12

use circulant_topology::cli::{compare_table, parse_golden, GOLDEN_TABLE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(16);
    let golden = parse_golden(GOLDEN_TABLE)?;
    let report = compare_table(&golden, n_max, 0)?;
    for (dropped, kept) in &report.merged {
        println!("{dropped} is isomorphic to {kept}");
    }
    for line in &report.diff {
        println!("{line}");
    }
    println!("{} rows compared, {} differences", report.compared, report.differences);
    Ok(())
}
