//! Smith normal form of a small integer matrix with unimodular transforms,
//! and the sparse invariant-factor computation on a boundary matrix.
//!
//! ```bash
//! cargo run --example smith_normal_form
//! ```

use trisp_homology::action::{quotient_complex, GroupAction};
use trisp_homology::complex::order_complex;
use trisp_homology::group::PermutationGroup;
use trisp_homology::homology::{
    boundary_matrix, smith_normal_form, smith_normal_form_with_transforms, IntegerMatrix,
};
use trisp_homology::poset::build_reduced_partition_lattice;

fn show(label: &str, rows: &[Vec<num_bigint::BigInt>]) {
    println!("{label}:");
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>4}")).collect();
        println!("  [{}]", cells.join(""));
    }
}

fn main() -> trisp_homology::Result<()> {
    let m = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let w = smith_normal_form_with_transforms(&m);
    show("M", &m.to_dense());
    show("U", &w.left);
    show("V", &w.right);
    show("U M V", &w.diagonal);
    println!("invariant factors: {:?}\n", w.form.invariant_factors);

    let poset = build_reduced_partition_lattice(5)?;
    let action = GroupAction::new(PermutationGroup::cyclic(5), &poset)?;
    let quotient = quotient_complex(&order_complex(&poset), &action)?;
    for d in 1..=2 {
        let b = boundary_matrix(&quotient, d)?;
        let snf = smith_normal_form(&b);
        println!(
            "boundary {d} of Delta(Pibar_5)/C_5: {}x{}, {} nonzeros, rank {}, torsion {:?}",
            b.rows(),
            b.cols(),
            b.nnz(),
            snf.rank,
            snf.torsion()
        );
    }
    Ok(())
}
