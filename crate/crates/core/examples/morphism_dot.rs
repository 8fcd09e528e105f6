// The morphism poset of the hyperbolic example as a Graphviz graph.

use std::error::Error;

use conequot::grading::GradingInput;
use conequot::pipeline::{classify, Options};
use conequot::report::emit_dot;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let input = GradingInput::suitable_replicated(1, &[&[1], &[-1]], 3);
    let cl = classify(&input, Options::default())?;
    let dot = emit_dot(&cl.poset, &cl.embeddings);
    print!("{dot}");
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
