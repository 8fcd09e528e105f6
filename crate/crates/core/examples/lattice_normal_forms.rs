// Hermite and Smith normal forms, sublattice intersection and index.

use std::error::Error;

use conequot::lattice::{hermite_normal_form, int_vec, smith_normal_form, IntMatrix, LatticeIndex, Sublattice};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let m = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let h = hermite_normal_form(&m);
    println!("HNF:\n{h}");

    let snf = smith_normal_form(&m);
    let factors: Vec<String> = snf.invariant_factors().iter().map(|f| f.to_string()).collect();
    println!("invariant factors: {}", factors.join(", "));
    assert_eq!(factors, ["2", "6", "12"]);

    // 2Z x Z and Z x 3Z meet in 2Z x 3Z, of index 6.
    let a = Sublattice::from_generators(2, &[int_vec(&[2, 0]), int_vec(&[0, 1])])?;
    let b = Sublattice::from_generators(2, &[int_vec(&[1, 0]), int_vec(&[0, 3])])?;
    let c = a.intersect(&b)?;
    println!("index of the intersection: {:?}", c.index());
    assert_eq!(c.index(), LatticeIndex::Finite(6u32.into()));
    assert!(c.contains(&int_vec(&[2, 3]))?);
    assert!(!c.contains(&int_vec(&[1, 3]))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
