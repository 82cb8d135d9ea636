//! The splitting differential on pairs: the two classes are closed, the
//! hairless attachments cancel, and δ∘δ under each splitting rule.

use gcx::differential::{with_split_rule, SplitRule};
use gcx::linalg::Window;
use gcx::verify::{cancellation_check, d2_suite};
use gcx::{class_a, class_b, delta, Budget, Complex, Parities};

pub fn run_example() -> gcx::Result<Vec<String>> {
    let budget = Budget::default();
    let mut lines = Vec::new();
    for par in Parities::all_classes() {
        lines.push(format!(
            "{par}: δA has {} terms, δB has {}",
            delta(&class_a(par))?.len(),
            delta(&class_b(par))?.len()
        ));
        lines.push(cancellation_check(par, 10, 7)?.summary());
    }
    let w = Window {
        max_vertices: 4,
        max_edges: 4,
    };
    let par = Parities::new(1, 1);
    for rule in [SplitRule::Literal, SplitRule::NoAntenna, SplitRule::EdgeSidesOnly] {
        let r = with_split_rule(rule, || d2_suite(par, w, Complex::Full, &budget))?;
        lines.push(format!("{rule:?}: {}", r.summary()));
    }
    // the quotient squares to zero under the default rule; the subcomplex
    // inherits the failure of the full complex
    for complex in [Complex::Gc1, Complex::Geq2] {
        lines.push(d2_suite(par, w, complex, &budget)?.summary());
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> gcx::Result<()> {
    for l in run_example()? {
        println!("{l}");
    }
    Ok(())
}
