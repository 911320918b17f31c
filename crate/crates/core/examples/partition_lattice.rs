//! Builds the reduced partition lattice for n = 3..=7 and prints element
//! counts per rank, cover counts, and the number of maximal chains, then the
//! JSON document for n = 4.
//!
//! ```bash
//! cargo run --example partition_lattice
//! ```

use trisp_homology::json::PosetDocument;
use trisp_homology::poset::build_reduced_partition_lattice;

fn main() -> trisp_homology::Result<()> {
    println!(
        "{:>2} {:>6} {:>7} {:>10}  rank sizes",
        "n", "|P|", "covers", "max chains"
    );
    for n in 3..=7 {
        let poset = build_reduced_partition_lattice(n)?;
        let mut sizes = vec![0usize; n - 1];
        for &r in poset.rank().expect("partition lattices are graded") {
            sizes[r] += 1;
        }
        println!(
            "{n:>2} {:>6} {:>7} {:>10}  {:?}",
            poset.len(),
            poset.covers().len(),
            poset.count_maximal_chains(),
            &sizes[1..]
        );
    }

    let p4 = build_reduced_partition_lattice(4)?;
    println!(
        "\n{}",
        serde_json::to_string(&PosetDocument::from_poset(&p4))?
    );
    Ok(())
}
