// Classification for the Z^2-grading with degrees (1,0), (1,1), (0,1),
// four variables each: three embeddings, two of them smooth, both mapping
// onto the third.

use std::error::Error;

use conequot::fixtures;
use conequot::io::parse_input;
use conequot::pipeline::{classify, Options};
use conequot::report::embedding_name;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let doc = parse_input(fixtures::fixture("smoothemb").ok_or("missing fixture")?, true)?.document;
    let cl = classify(&doc.to_grading(), Options::default())?;

    for (i, r) in cl.reports.iter().enumerate() {
        println!(
            "{}: bunch {}, locally factorial {}, Q-factorial {}, Picard rank {}",
            embedding_name(i),
            r.bunch,
            r.locally_factorial,
            r.q_factorial,
            r.picard_rank()
        );
    }
    for (from, to) in cl.poset.morphisms() {
        println!("{} -> {}", embedding_name(from), embedding_name(to));
    }

    assert_eq!(cl.embeddings.len(), 3);
    let singular: Vec<usize> = (0..3).filter(|&i| !cl.reports[i].q_factorial).collect();
    assert_eq!(singular.len(), 1);
    let x0 = singular[0];
    assert_eq!(cl.reports[x0].picard_rank(), 1);
    assert!((0..3).filter(|&i| i != x0).all(|i| cl.reports[i].locally_factorial));
    assert!(cl.poset.morphisms().iter().all(|&(_, to)| to == x0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
