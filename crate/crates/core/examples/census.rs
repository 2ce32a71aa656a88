//! Largest point sets in GF(q)^2 whose distance set is not all of GF(q).

use falconer::verify::census;

fn main() -> falconer::Result<()> {
    for q in [2, 3, 5] {
        let res = census(q, true)?;
        println!(
            "q = {q}: max incomplete size {}, e.g. {:?} with distances {:?} ({} subsets visited)",
            res.max_incomplete_size, res.witness_set, res.witness_distances, res.subsets_visited
        );
    }
    let full = census(3, false)?;
    println!("q = 3 without pruning visits {} subsets", full.subsets_visited);
    Ok(())
}
