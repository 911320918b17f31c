//! Tests whether a permutation group acts freely on the reduced partition
//! and subset lattices, printing a fixed point when it does not.
//!
//! ```bash
//! cargo run --example free_action -- 5 "(2 3 4 5)"
//! ```

use trisp_homology::action::{is_free_action, orbits, Freeness, GroupAction};
use trisp_homology::group::PermutationGroup;
use trisp_homology::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};

fn main() -> trisp_homology::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args
        .next()
        .map_or(5, |s| s.parse().expect("n must be an integer"));
    let gens: Vec<String> = args.collect();
    let group = if gens.is_empty() {
        PermutationGroup::cyclic(n)
    } else {
        PermutationGroup::from_cycle_strings(n, &gens)?
    };
    println!(
        "group of order {} generated by {:?}",
        group.order(),
        group
            .generators()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );

    for (name, poset) in [
        ("L_n", build_reduced_subset_lattice(n)?),
        ("Pibar_n", build_reduced_partition_lattice(n)?),
    ] {
        let action = GroupAction::new(group.clone(), &poset)?;
        match is_free_action(&action) {
            Freeness::Free => println!(
                "{name}: free, {} elements in {} orbits",
                poset.len(),
                orbits(&action).len()
            ),
            Freeness::Fixed(w) => println!("{name}: not free, {w}"),
        }
    }
    Ok(())
}
