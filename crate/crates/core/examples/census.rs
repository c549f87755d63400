//! Classify one graph per multiplier class for every n in a range and count
//! the labels.
//!
//!     cargo run --release --example census -- 3 16

use std::collections::BTreeMap;
use std::time::Instant;

use circulant_topology::classify::{census, ClassifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (lo, hi) = match args[..] {
        [lo, hi] => (lo, hi),
        [hi] => (3, hi),
        _ => (3, 12),
    };

    let start = Instant::now();
    let records = census(lo, hi, &ClassifyOptions::default(), false)?;
    println!("{} multiplier classes for {lo} <= n <= {hi} in {:.2?}", records.len(), start.elapsed());

    let mut by_n: BTreeMap<usize, BTreeMap<String, usize>> = BTreeMap::new();
    for r in &records {
        *by_n.entry(r.spec.n()).or_default().entry(r.label.to_string()).or_default() += 1;
    }
    for (n, counts) in by_n {
        let parts: Vec<String> = counts.iter().map(|(l, c)| format!("{l}={c}")).collect();
        println!("n = {n:2}: {}", parts.join("  "));
    }

    // the open questions: CM without shelling, shellable without 1-well-covered
    for r in &records {
        if r.label.as_str() == "CM" {
            println!("Cohen-Macaulay but no shelling found: {}", r.spec);
        }
        if r.label.is_shellable() && !r.one_well_covered {
            println!("shellable but not 1-well-covered: {}", r.spec);
        }
    }
    Ok(())
}
