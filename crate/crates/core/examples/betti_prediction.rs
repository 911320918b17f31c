//! Predicts rational Betti numbers of a free quotient of a wedge of spheres
//! and compares them with the homology of the actual quotient complexes.
//!
//! ```bash
//! cargo run --release --example betti_prediction -- 7
//! ```

use trisp_homology::action::{quotient_complex, GroupAction};
use trisp_homology::complex::order_complex;
use trisp_homology::group::PermutationGroup;
use trisp_homology::homology::{homology, Coefficients};
use trisp_homology::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};
use trisp_homology::verify::predict_quotient_betti;

fn main() -> trisp_homology::Result<()> {
    let p: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("p must be an integer"))
        .unwrap_or(5);
    let factorial: u64 = (1..p as u64).product();
    // Delta(L_p) is one (p-2)-sphere; Delta(Pibar_p) is a wedge of (p-1)! spheres of dimension p-3.
    let cases = [
        (format!("L_{p}"), build_reduced_subset_lattice(p)?, 1, p - 2),
        (
            format!("Pibar_{p}"),
            build_reduced_partition_lattice(p)?,
            factorial,
            p - 3,
        ),
    ];
    for (name, poset, k, d) in cases {
        let prediction = predict_quotient_betti(k, d, p as u64)?;
        let action = GroupAction::new(PermutationGroup::cyclic(p), &poset)?;
        let quotient = quotient_complex(&order_complex(&poset), &action)?;
        let h = homology(&quotient, &[Coefficients::Rationals])?;
        let computed: Vec<u64> = h
            .betti(Coefficients::Rationals)?
            .iter()
            .map(|&b| b as u64)
            .collect();
        println!(
            "Delta({name})/C_{p}: k = {k}, d = {d}, predicted {:?}, computed {:?}, {}",
            prediction.predicted,
            computed,
            if prediction.predicted == computed {
                "match"
            } else {
                "MISMATCH"
            }
        );
    }
    Ok(())
}
