// Degrees (1,0), (2,3), (0,1): every embedding is singular, two of them
// are still Q-factorial.

use std::error::Error;

use conequot::fixtures;
use conequot::io::parse_input;
use conequot::pipeline::{classify, Options};
use conequot::report::embedding_name;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let doc = parse_input(fixtures::fixture("nosmoothemb").ok_or("missing fixture")?, true)?.document;
    let cl = classify(&doc.to_grading(), Options::default())?;

    for (i, r) in cl.reports.iter().enumerate() {
        println!(
            "{}: Q-factorial {}, Picard index {:?}, projective {}",
            embedding_name(i),
            r.q_factorial,
            r.picard_index(),
            r.projective
        );
    }
    assert_eq!(cl.reports.len(), 3);
    assert!(cl.reports.iter().all(|r| !r.locally_factorial && r.projective));
    assert_eq!(cl.reports.iter().filter(|r| r.q_factorial).count(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
