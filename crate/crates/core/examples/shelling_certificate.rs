//! Shellings of Ind(C_16(1,4,8)): check an order read from a file, search
//! for one, and confirm the complex is not vertex decomposable.
//!
//!     cargo run --release --example shelling_certificate -- data/c16_1_4_8.shelling

use circulant_topology::circulant::build_circulant;
use circulant_topology::decomp::{
    check_shelling, find_shelling_with, is_vertex_decomposable, ShellingCertificate,
    ShellingCheck, ShellingOptions, ShellingOutcome,
};
use circulant_topology::homology::Symmetry;
use circulant_topology::simplex::{format_set, independence_complex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_circulant("16:1,4,8".parse()?);
    let ind = independence_complex(&g);
    println!("Ind(C_16(1,4,8)): {} facets, dim {}, h = {:?}", ind.num_facets(), ind.dim(), ind.h_vector().0);

    if let Some(path) = std::env::args().nth(1) {
        let cert = ShellingCertificate::parse(&std::fs::read_to_string(&path)?, 4)?;
        match check_shelling(&ind, &cert)? {
            ShellingCheck::Valid => println!("{path}: valid shelling"),
            ShellingCheck::Violation { i, j } => println!(
                "{path}: facet {i} {} fails against facet {j} {}",
                format_set(cert.order[i - 1]),
                format_set(cert.order[j - 1])
            ),
        }
    }

    let opts = ShellingOptions {
        symmetry: Some(Symmetry::circulant(&g)),
        ..ShellingOptions::default()
    };
    match find_shelling_with(&ind, &opts)? {
        ShellingOutcome::Found(cert) => {
            assert_eq!(check_shelling(&ind, &cert)?, ShellingCheck::Valid);
            println!("found a shelling:\n{}", cert.to_text(4));
        }
        other => println!("search ended with {other:?}"),
    }

    println!("vertex decomposable: {}", is_vertex_decomposable(&ind)?.value);
    Ok(())
}
