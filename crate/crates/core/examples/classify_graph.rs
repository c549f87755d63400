//! Classify one circulant graph.
//!
//!     cargo run --example classify_graph -- 16:1,4,8
//!     cargo run --example classify_graph -- 10:1,2,3,5 7

use circulant_topology::circulant::{build_circulant, ConnectionSet};
use circulant_topology::classify::classify;
use circulant_topology::cli::render_text;
use circulant_topology::homology::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let spec: ConnectionSet = args.next().as_deref().unwrap_or("16:1,4,8").parse()?;
    let field: Field = args.next().as_deref().unwrap_or("QQ").parse()?;

    let record = classify(&build_circulant(spec), field)?;
    print!("{}", render_text(&record));
    Ok(())
}
