//! One-paired circulants C(n; a, b): every one is CIS with alpha = n/b and
//! omega = b.
//!
//!     cargo run --example one_paired -- 12

use circulant_topology::circulant::{one_paired, OnePairedSpec};
use circulant_topology::classify::classify;
use circulant_topology::homology::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(12);
    println!("{:>3} {:>3} {:<14} {:>5} {:>5} {:>4} label", "a", "b", "S", "alpha", "omega", "CIS");
    for a in 1..=n {
        for b in 2..=n {
            let Ok(spec) = OnePairedSpec::new(n, a, b) else { continue };
            let r = classify(&one_paired(spec), Field::Rational)?;
            println!(
                "{a:>3} {b:>3} {:<14} {:>5} {:>5} {:>4} {}",
                r.spec.to_string(),
                r.alpha,
                r.omega,
                r.cis,
                r.label
            );
        }
    }
    Ok(())
}
