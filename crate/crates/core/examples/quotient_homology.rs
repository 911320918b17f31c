//! Forms the quotient of both order complexes by the cyclic group C_p and
//! prints f-vectors and homology over Z, Q, F_2 and F_p.
//!
//! ```bash
//! cargo run --release --example quotient_homology -- 7
//! ```

use trisp_homology::action::{quotient_complex, GroupAction};
use trisp_homology::complex::order_complex;
use trisp_homology::group::PermutationGroup;
use trisp_homology::homology::{homology, Coefficients};
use trisp_homology::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};

fn main() -> trisp_homology::Result<()> {
    let p: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("p must be an integer"))
        .unwrap_or(5);
    let coeffs = [
        Coefficients::Integers,
        Coefficients::Rationals,
        Coefficients::prime(2)?,
        Coefficients::prime(p as u32)?,
    ];

    for (name, poset) in [
        (format!("L_{p}"), build_reduced_subset_lattice(p)?),
        (format!("Pibar_{p}"), build_reduced_partition_lattice(p)?),
    ] {
        let full = order_complex(&poset);
        let action = GroupAction::new(PermutationGroup::cyclic(p), &poset)?;
        let quotient = quotient_complex(&full, &action)?;
        let h = homology(&quotient, &coeffs)?;
        println!("Delta({name})/C_{p}");
        println!(
            "  f = {} (full complex {})",
            quotient.f_vector(),
            full.f_vector()
        );
        println!("  {}", h.integral_summary().unwrap());
        for k in &coeffs[1..] {
            println!("  betti over {k}: {:?}", h.betti(*k)?);
        }
    }
    Ok(())
}
