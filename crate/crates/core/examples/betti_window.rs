//! Betti numbers of the full complex and its two pieces over a window.

use gcx::linalg::Window;
use gcx::{betti, Budget, Complex, Parities};

pub fn run_example() -> gcx::Result<Vec<String>> {
    let budget = Budget::default();
    let w: Window = "v1+v2<=4,e1+e2<=4".parse()?;
    let par = Parities::new(2, 2);
    let mut lines = Vec::new();
    for complex in [Complex::Full, Complex::Gc1, Complex::Geq2] {
        let (table, _) = betti(w, par, complex, &budget)?;
        let safe = table.entries.values().filter(|e| e.safe).count();
        lines.push(format!("{} {w}: {} blocks, {safe} safe", complex.name(), table.entries.len()));
        for (blk, n) in table.nonzero_safe() {
            lines.push(format!("  betti {n} at loop orders {:?}, {} vertices", blk.loops, blk.vertices));
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
