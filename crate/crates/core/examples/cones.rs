// Cones from generators and from inequalities, faces and relative interiors.

use std::error::Error;

use conequot::cone::Cone;
use conequot::lattice::int_vec;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let quadrant = Cone::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]);
    println!("quadrant: {quadrant}");
    assert_eq!(quadrant.rays().len(), 2);

    // The same cone cut out by x >= 0, y >= 0.
    let cut = Cone::from_constraints(2, &[], &[int_vec(&[1, 0]), int_vec(&[0, 1])]);
    assert_eq!(quadrant, cut);

    let faces = quadrant.faces();
    for f in &faces {
        println!("  face of dimension {}: {}", f.dim(), f.label());
    }
    assert_eq!(faces.len(), 4);

    let lower = Cone::from_i64(2, &[&[1, 0], &[1, 1]]);
    let upper = Cone::from_i64(2, &[&[1, 1], &[0, 1]]);
    let diagonal = lower.intersect(&upper);
    assert_eq!(diagonal, Cone::from_i64(2, &[&[1, 1]]));
    assert!(diagonal.is_face_of(&lower) && diagonal.is_face_of(&upper));
    assert!(!lower.relints_intersect(&upper));
    assert!(diagonal.relint_within(&quadrant));

    let half_plane = Cone::from_i64(2, &[&[1, 0], &[0, 1], &[0, -1]]);
    println!("half plane: {} (pointed: {})", half_plane.label(), half_plane.is_pointed());
    assert!(!half_plane.is_pointed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
