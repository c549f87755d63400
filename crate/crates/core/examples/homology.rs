//! Reduced Betti numbers, Reisner's criterion, and how the coefficient field
//! can change the answer.

use circulant_topology::circulant::build_circulant;
use circulant_topology::homology::{
    is_buchsbaum, is_cohen_macaulay, reduced_betti, Field, Symmetry,
};
use circulant_topology::simplex::{independence_complex, SimplicialComplex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Field::Rational;
    let gf2 = Field::Prime(2);

    for spec in ["4:1", "7:1", "8:2", "10:1,4", "16:1,4,8"] {
        let g = build_circulant(spec.parse()?);
        let ind = independence_complex(&g);
        let sym = Symmetry::circulant(&g);
        println!(
            "{spec:>9}  betti {:?}  buchsbaum {}  CM {}",
            reduced_betti(&ind, q).betti,
            is_buchsbaum(&ind, q, Some(&sym))?,
            is_cohen_macaulay(&ind, q)?
        );
    }

    // link of vertex 0 in Ind(C_10(1,4)): its h-vector has a negative entry
    let ind = independence_complex(&build_circulant("10:1,4".parse()?));
    println!("link of 0 in Ind(C_10(1,4)): h = {:?}", ind.link(1)?.h_vector().0);

    // six-vertex real projective plane
    let faces: [[usize; 3]; 10] = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
    ];
    let rp2 = SimplicialComplex::from_faces(
        6,
        faces.iter().map(|f| f.iter().fold(0u64, |acc, &v| acc | 1 << v)),
    )?;
    for field in [q, gf2] {
        println!(
            "RP^2 over {field}: betti {:?}, Cohen-Macaulay {}",
            reduced_betti(&rp2, field).betti,
            is_cohen_macaulay(&rp2, field)?
        );
    }
    Ok(())
}
