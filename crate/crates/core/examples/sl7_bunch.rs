// A complete, Q-factorial, non-projective embedding for SL(7) acting on six
// copies of K^7, checked from a declared bunch.

use std::error::Error;

use conequot::collections::Bunch;
use conequot::cone::Cone;
use conequot::fixtures;
use conequot::io::parse_input;
use conequot::pipeline::{assess_bunch, classify, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let doc = parse_input(fixtures::fixture("sl7").ok_or("missing fixture")?, true)?.document;
    let cl = classify(&doc.to_grading(), Options::default())?;
    println!(
        "{} orbit cones, {} GIT cones, {} collections, {} embeddings",
        cl.omega.len(),
        cl.fan.cones().len(),
        cl.collections.len(),
        cl.embeddings.len()
    );

    let mut found = false;
    for (name, cones) in doc.declared_bunches()? {
        let bunch = Bunch::new(cones.iter().map(|g| Cone::from_generators(3, g)));
        let a = assess_bunch(&cl, &name, bunch);
        println!(
            "{name}: valid {}, interior {}, Q-factorial {}, quasiprojective {}",
            a.is_valid(),
            a.interior,
            a.q_factorial,
            a.quasiprojective
        );
        for v in &a.violations {
            println!("  {v}");
        }
        found |= a.is_valid() && a.interior && a.q_factorial && !a.quasiprojective;
    }
    assert!(found, "no declared bunch gives a non-projective Q-factorial embedding");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
