//! Closed-form predictions for three families of circulants, checked against
//! the full classification.

use circulant_topology::circulant::{build_circulant, OnePairedSpec};
use circulant_topology::classify::{
    classify, family_complement_power, family_one_paired, family_remove_one, FamilyPrediction,
};
use circulant_topology::homology::Field;

fn check(p: &FamilyPrediction) -> Result<bool, Box<dyn std::error::Error>> {
    let r = classify(&build_circulant(p.spec.clone()), Field::Rational)?;
    let bad = p.mismatches(&r);
    if !bad.is_empty() {
        println!("  {}: predicted {:?}, got {} (fields {bad:?})", p.spec, p.label, r.label);
    }
    Ok(bad.is_empty())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (mut total, mut ok) = (0, 0);

    println!("C_n(d+1, ..., n/2)");
    for d in 1..=4 {
        for n in 2 * d + 2..=16 {
            total += 1;
            ok += check(&family_complement_power(n, d)?)? as usize;
        }
    }

    println!("C_n(1, ..., n/2) without i");
    for n in 3..=16 {
        for i in 1..=n / 2 {
            total += 1;
            ok += check(&family_remove_one(n, i)?)? as usize;
        }
    }

    println!("one-paired C(n; a, b)");
    for n in 1..=16 {
        for a in 1..=n {
            for b in 1..=n {
                if let Ok(spec) = OnePairedSpec::new(n, a, b) {
                    if n >= 3 {
                        total += 1;
                        ok += check(&family_one_paired(spec))? as usize;
                    }
                }
            }
        }
    }

    println!("{ok}/{total} predictions agree");
    let p = family_complement_power(7, 2)?;
    println!("example: {} label {} f {:?} h {:?}", p.spec, p.label, p.f.unwrap().0, p.h.unwrap().0);
    Ok(())
}
