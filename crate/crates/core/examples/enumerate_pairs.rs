//! Bases of entangled pairs, split by valency class.

use gcx::{enumerate_basis, pair::format_pair, Bidegree, Budget, EntangledPair, Parities, SliceFlags, ValencyFilter};

pub fn run_example() -> gcx::Result<Vec<String>> {
    let budget = Budget::default();
    let mut lines = Vec::new();
    for par in Parities::all_classes() {
        for b in [Bidegree::new(1, 0, 2, 1), Bidegree::new(2, 2, 2, 1), Bidegree::new(2, 2, 2, 2)] {
            let count = |v| enumerate_basis(b, par, SliceFlags::default().with_valency(v), &budget).map(|s| s.len());
            lines.push(format!(
                "{par} {b}: {} pairs, {} with a univalent vertex, {} of min valency 2",
                count(ValencyFilter::All)?,
                count(ValencyFilter::HasUnivalent)?,
                count(ValencyFilter::MinValence2)?
            ));
        }
    }
    let par = Parities::new(2, 2);
    let slice = enumerate_basis(Bidegree::new(2, 1, 2, 1), par, SliceFlags::default(), &budget)?;
    lines.push(slice.header());
    for k in &slice.elements {
        lines.push(format_pair(&EntangledPair::from_key(k, par)?));
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
