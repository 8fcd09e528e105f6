//! Input documents for the worked examples, embedded at build time.

const FIXTURES: &[(&str, &str)] = &[
    ("hyperbolic", include_str!("../fixtures/hyperbolic.json")),
    ("intro-ex1", include_str!("../fixtures/intro-ex1.json")),
    ("smoothemb", include_str!("../fixtures/smoothemb.json")),
    ("nosmoothemb", include_str!("../fixtures/nosmoothemb.json")),
    ("sl7", include_str!("../fixtures/sl7.json")),
    ("sp6-smooth-weights", include_str!("../fixtures/sp6-smooth-weights.json")),
    ("sp6-sing-weights", include_str!("../fixtures/sp6-sing-weights.json")),
];

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
