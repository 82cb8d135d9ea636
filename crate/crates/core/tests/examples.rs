//! Runs every example and checks the facts it prints.

#[path = "../examples/canonical_forms.rs"]
mod canonical_forms;
#[path = "../examples/enumerate_pairs.rs"]
mod enumerate_pairs;
#[path = "../examples/splitting_differential.rs"]
mod splitting_differential;
#[path = "../examples/betti_window.rs"]
mod betti_window;
#[path = "../examples/properad_relations.rs"]
mod properad_relations;
#[path = "../examples/symmetrization.rs"]
mod symmetrization;

fn has(lines: &[String], needle: &str) -> bool {
    lines.iter().any(|l| l.contains(needle))
}

#[test]
fn canonical_forms_example() {
    let out = canonical_forms::run_example().unwrap();
    assert!(has(&out, "p=2 triangle"));
    assert!(has(&out, "edge swap: same key true, signs +1 and -1"));
}

#[test]
fn enumerate_pairs_example() {
    let out = enumerate_pairs::run_example().unwrap();
    assert!(has(&out, "(2,2) 1,0,2,1: 1 pairs, 1 with a univalent vertex, 0 of min valency 2"));
}

#[test]
fn splitting_differential_example() {
    let out = splitting_differential::run_example().unwrap();
    assert!(has(&out, "(2,2): δA has 0 terms, δB has 0"));
    assert!(has(&out, "NoAntenna: d2[full] (1,1) ok"));
    assert!(has(&out, "Literal: d2[full] (1,1) FAILED"));
    assert!(has(&out, "d2[gc1] (1,1) FAILED"));
    assert!(has(&out, "d2[geq2] (1,1) ok"));
}

#[test]
fn betti_window_example() {
    let out = betti_window::run_example().unwrap();
    assert!(has(&out, "betti 2 at loop orders (-1, -1), 3 vertices"));
}

#[test]
fn properad_relations_example() {
    let out = properad_relations::run_example().unwrap();
    assert!(!has(&out, "NONZERO"));
}

#[test]
fn symmetrization_example() {
    let out = symmetrization::run_example().unwrap();
    assert!(has(&out, "δ∘sym and sym∘δ agree: true"));
    assert!(has(&out, "δ(K4) at even parity vanishes: true"));
}
