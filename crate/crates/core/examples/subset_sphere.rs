//! The order complex of the reduced subset lattice L_p is the barycentric
//! subdivision of the boundary of a (p-1)-simplex. This compares its
//! homology with that of the boundary complex built directly on the p
//! singleton vertices.
//!
//! ```bash
//! cargo run --example subset_sphere -- 6
//! ```

use trisp_homology::complex::{order_complex, DeltaComplex};
use trisp_homology::homology::{homology, Coefficients};
use trisp_homology::poset::build_reduced_subset_lattice;

fn main() -> trisp_homology::Result<()> {
    let p: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("p must be an integer"))
        .unwrap_or(5);

    let nerve = order_complex(&build_reduced_subset_lattice(p)?);
    let facets: Vec<Vec<u32>> = (0..p as u32)
        .map(|skip| (0..p as u32).filter(|&v| v != skip).collect())
        .collect();
    let boundary = DeltaComplex::simplicial_closure(&facets)?;

    for (name, c) in [("Delta(L_p)", &nerve), ("boundary of simplex", &boundary)] {
        let h = homology(c, &[Coefficients::Integers])?;
        println!("{name:<20} f = {}", c.f_vector());
        println!("{:<20} {}", "", h.integral_summary().unwrap());
    }
    Ok(())
}
