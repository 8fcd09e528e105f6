// Orbit cones, GIT fan and collections for the hyperbolic grading of K^6
// by Z with weights 1, 1, 1, -1, -1, -1.

use std::error::Error;

use conequot::collections::{two_maximal_collections, DEFAULT_MAX_OMEGA};
use conequot::fixtures;
use conequot::git::git_fan;
use conequot::grading::{orbit_cones, validate};
use conequot::io::parse_input;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let doc = parse_input(fixtures::fixture("hyperbolic").ok_or("missing fixture")?, true)?.document;
    let v = validate(&doc.to_grading())?;
    let omega = orbit_cones(&v)?;
    println!("orbit cones:");
    for c in omega.cones() {
        println!("  {}", c.label());
    }
    assert_eq!(omega.len(), 4);

    let fan = git_fan(&omega)?;
    println!("GIT fan:");
    for (i, c) in fan.cones().iter().enumerate() {
        let tag = if fan.is_chamber(i) { " (chamber)" } else { "" };
        println!("  {}{tag}", c.label());
    }
    assert_eq!(fan.cones().len(), 3);

    let cs = two_maximal_collections(&omega, DEFAULT_MAX_OMEGA)?;
    println!("2-maximal collections:");
    for c in &cs {
        println!("  {c}");
    }
    assert_eq!(cs.len(), 3);
    assert!(cs.iter().all(|c| c.interior));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
