//! Well-covered connected cubic circulants.
//!
//!     cargo run --release --example cubic_census -- 30

use circulant_topology::classify::cubic_census;
use circulant_topology::homology::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cap: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(16);
    for r in cubic_census(cap, Field::Rational)? {
        println!("{:<8} {}  1-well-covered: {}", r.spec.to_string(), r.label, r.one_well_covered);
    }
    Ok(())
}
