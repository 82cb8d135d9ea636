//! Sym of two graphs and its compatibility with the differentials, on
//! triangles at odd parity where they are nonzero.

use gcx::differential::delta_of_key;
use gcx::maps::{delta_gc_combination, graph_combination};
use gcx::{degree, delta_gc, sym, Complex, LinearCombination, OrientedGraph, Parities, Parity};

pub fn run_example() -> gcx::Result<Vec<String>> {
    let mut lines = Vec::new();
    let par = Parities::new(1, 1);
    let t = OrientedGraph::cycle(3, Parity(1));
    let s = sym(&t, &t)?;
    lines.push(format!("sym(triangle, triangle): {} classes", s.len()));

    let mut lhs = LinearCombination::new();
    for (k, c) in s.iter() {
        lhs.add_scaled(&delta_of_key(k, par, Complex::Geq2)?, c);
    }
    // δ of a triangle is a sum of graphs; project away univalent terms
    let dt = delta_gc_combination(&graph_combination(&t)?, Parity(1))?;
    let mut rhs = LinearCombination::new();
    for (k, c) in dt.iter() {
        let g = OrientedGraph::from_key(k, Parity(1))?;
        if g.valencies().iter().all(|&v| v >= 2) {
            let koszul = if degree(&t) % 2 == 0 { 1 } else { -1 };
            rhs.add_scaled(&sym(&g, &t)?, c);
            rhs.add_scaled(&sym(&t, &g)?, c * koszul);
        }
    }
    lines.push(format!("δ(triangle) has {} terms", delta_gc(&t)?.len()));
    lines.push(format!("δ∘sym and sym∘δ agree: {}", lhs == rhs));

    let k4 = OrientedGraph::complete(4, Parity(2));
    lines.push(format!("δ(K4) at even parity vanishes: {}", delta_gc(&k4)?.is_zero()));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> gcx::Result<()> {
    for l in run_example()? {
        println!("{l}");
    }
    Ok(())
}
