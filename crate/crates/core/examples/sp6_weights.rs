// Sp(6) acting on copies of K^6 with two choices of torus weights: the
// smooth and the singular pattern reappear with six variables per degree.

use std::error::Error;

use conequot::fixtures;
use conequot::io::parse_input;
use conequot::pipeline::{classify, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, smooth) in [("sp6-smooth-weights", 2), ("sp6-sing-weights", 0)] {
        let doc = parse_input(fixtures::fixture(name).ok_or("missing fixture")?, true)?.document;
        let cl = classify(&doc.to_grading(), Options::default())?;
        let lf = cl.reports.iter().filter(|r| r.locally_factorial).count();
        println!("{name}: {} embeddings, {lf} locally factorial", cl.reports.len());
        assert_eq!(cl.reports.len(), 3);
        assert_eq!(lf, smooth);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
