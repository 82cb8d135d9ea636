//! Canonical keys, orientation signs and zero graphs.

use gcx::{automorphism_group, canonicalize, degree, Canon, OrientedGraph, Parity};

pub fn run_example() -> gcx::Result<Vec<String>> {
    let mut lines = Vec::new();
    for p in [Parity(2), Parity(1)] {
        for (name, g) in [
            ("triangle", OrientedGraph::cycle(3, p)),
            ("square", OrientedGraph::cycle(4, p)),
            ("tetrahedron", OrientedGraph::complete(4, p)),
        ] {
            let status = match canonicalize(&g, None, None)? {
                Canon::Signed(k, s) => format!("sign {s}, key {}", k.hex()),
                Canon::Zero(_) => "zero graph".to_string(),
            };
            let gens = automorphism_group(&g, None, None)?.len();
            lines.push(format!("p={p} {name}: degree {}, {gens} generators, {status}", degree(&g)));
        }
    }
    // relabeling changes the sign, not the class
    let g: OrientedGraph = "p=2;v=4;E=0-1,0-2,0-3,1-2,1-3,2-3;s=+1".parse()?;
    let h: OrientedGraph = "p=2;v=4;E=0-2,0-1,0-3,1-2,1-3,2-3;s=+1".parse()?;
    let (a, b) = (canonicalize(&g, None, None)?, canonicalize(&h, None, None)?);
    lines.push(format!(
        "edge swap: same key {}, signs {} and {}",
        a.key() == b.key(),
        a.sign().unwrap(),
        b.sign().unwrap()
    ));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> gcx::Result<()> {
    for l in run_example()? {
        println!("{l}");
    }
    Ok(())
}
