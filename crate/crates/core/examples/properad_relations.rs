//! Images of the bracket and cobracket as labeled graph pairs, a
//! composition, and the three defining relations.

use gcx::properad::{check_relation, compose, describe, down_image, up_image, Relation};
use gcx::Parities;

pub fn run_example() -> gcx::Result<Vec<String>> {
    let mut lines = Vec::new();
    let par = Parities::new(2, 1);
    let bracket = down_image(par, 1, 2, 1);
    let cobracket = up_image(par, 1, 1, 2);
    lines.push(format!("bracket   {bracket}"));
    lines.push(format!("cobracket {cobracket}"));
    // the bracket's output feeds the cobracket's input
    let glued = compose(&cobracket, &bracket, &[1], &[1])?;
    lines.push(format!("cobracket after bracket, {} terms:", glued.len()));
    lines.extend(describe(&glued, par)?.lines().map(|l| format!("  {l}")));
    for par in Parities::all_classes() {
        for rel in [Relation::Jacobi, Relation::CoJacobi, Relation::Compat] {
            let lc = check_relation(rel, par)?;
            lines.push(format!("{par} {rel:?}: {}", if lc.is_zero() { "vanishes" } else { "NONZERO" }));
        }
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
