//! Order complexes, quotients, and homology on known spaces.

use trisp_homology::action::{is_free_action, orbits, quotient_complex, Freeness, GroupAction};
use trisp_homology::complex::{order_complex, DeltaComplex};
use trisp_homology::group::PermutationGroup;
use trisp_homology::homology::{boundary_matrix, homology, Coefficients};
use trisp_homology::json::{ComplexDocument, PosetDocument};
use trisp_homology::poset::{
    build_reduced_partition_lattice, build_reduced_subset_lattice, PosetKind,
};
use trisp_homology::Error;

fn summary(c: &DeltaComplex) -> String {
    homology(c, &[Coefficients::Integers])
        .unwrap()
        .integral_summary()
        .unwrap()
}

#[test]
fn faces_delete_the_ith_smallest_element() {
    let poset = build_reduced_subset_lattice(4).unwrap();
    let c = order_complex(&poset);
    for d in 1..=c.dim().unwrap() {
        for s in 0..c.num_simplices(d) {
            let chain = c.label(d, s).unwrap();
            for i in 0..=d {
                let mut expected = chain.to_vec();
                expected.remove(i);
                assert_eq!(
                    c.label(d - 1, c.face(d, s, i)).unwrap(),
                    expected.as_slice()
                );
            }
        }
    }
}

#[test]
fn antichain_gives_isolated_points() {
    let c = order_complex(&build_reduced_partition_lattice(3).unwrap());
    assert_eq!(c.f_vector().0, vec![3]);
    assert_eq!(summary(&c), "H_0 = Z^3");
}

#[test]
fn poset_with_a_maximum_is_acyclic() {
    // Append a top element to the reduced partition lattice.
    let base = PosetDocument::from_poset(&build_reduced_partition_lattice(5).unwrap());
    let top = base.elements.len();
    let base_poset = base.to_poset().unwrap();
    let mut doc = PosetDocument {
        kind: PosetKind::Explicit,
        ..base
    };
    doc.elements.push("top".into());
    doc.covers
        .extend(base_poset.maximal_elements().into_iter().map(|m| [m, top]));
    let cone = order_complex(&doc.to_poset().unwrap());
    assert_eq!(cone.euler_characteristic(), 1);
    assert_eq!(summary(&cone), "H_0 = Z, H_1 = 0, H_2 = 0, H_3 = 0");
}

#[test]
fn subset_nerve_is_the_subdivided_simplex_boundary() {
    for p in 3..=6u32 {
        let nerve = order_complex(&build_reduced_subset_lattice(p as usize).unwrap());
        let facets: Vec<Vec<u32>> = (0..p)
            .map(|skip| (0..p).filter(|&v| v != skip).collect())
            .collect();
        let boundary = DeltaComplex::simplicial_closure(&facets).unwrap();
        let coeffs = [
            Coefficients::Integers,
            Coefficients::Prime(2),
            Coefficients::Prime(3),
        ];
        let (a, b) = (
            homology(&nerve, &coeffs).unwrap(),
            homology(&boundary, &coeffs).unwrap(),
        );
        assert_eq!(a, b, "p = {p}");
        assert_eq!(
            nerve.euler_characteristic(),
            boundary.euler_characteristic()
        );
    }
}

#[test]
fn projective_plane_and_torus() {
    let rp2: Vec<Vec<u32>> = [
        [1, 2, 4],
        [1, 2, 6],
        [1, 3, 5],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 5, 6],
        [3, 4, 6],
        [4, 5, 6],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect();
    let c = DeltaComplex::simplicial_closure(&rp2).unwrap();
    let h = homology(
        &c,
        &[
            Coefficients::Integers,
            Coefficients::Prime(2),
            Coefficients::Rationals,
        ],
    )
    .unwrap();
    assert_eq!(h.integral_summary().unwrap(), "H_0 = Z, H_1 = Z/2, H_2 = 0");
    assert_eq!(h.betti(Coefficients::Prime(2)).unwrap(), &[1, 1, 1]);
    assert_eq!(h.betti(Coefficients::Rationals).unwrap(), &[1, 0, 0]);

    // Seven-vertex torus.
    let torus: Vec<Vec<u32>> = (0..7u32)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    let t = DeltaComplex::simplicial_closure(&torus).unwrap();
    assert_eq!(t.f_vector().0, vec![7, 21, 14]);
    assert_eq!(summary(&t), "H_0 = Z, H_1 = Z^2, H_2 = Z");
}

#[test]
fn boundaries_compose_to_zero_on_lattice_complexes() {
    for p in [4usize, 5, 6] {
        for c in [
            order_complex(&build_reduced_partition_lattice(p).unwrap()),
            order_complex(&build_reduced_subset_lattice(p).unwrap()),
        ] {
            for d in 1..c.dim().unwrap() {
                let prod = boundary_matrix(&c, d)
                    .unwrap()
                    .mul(&boundary_matrix(&c, d + 1).unwrap())
                    .unwrap();
                assert!(prod.is_zero(), "p = {p}, d = {d}");
            }
        }
    }
}

#[test]
fn quotient_of_the_partition_complex() {
    let poset = build_reduced_partition_lattice(5).unwrap();
    let full = order_complex(&poset);
    let action = GroupAction::new(PermutationGroup::cyclic(5), &poset).unwrap();
    assert_eq!(orbits(&action).len(), 10);
    let q = quotient_complex(&full, &action).unwrap();
    q.check_simplicial_identities().unwrap();
    assert_eq!(q.f_vector().0, vec![10, 41, 36]);
    assert_eq!(q.euler_characteristic(), 5);
    let d2 = boundary_matrix(&q, 2).unwrap();
    assert_eq!((d2.rows(), d2.cols()), (41, 36));
    assert!(boundary_matrix(&q, 1).unwrap().mul(&d2).unwrap().is_zero());

    let doc = ComplexDocument::from_complex(&q);
    assert_eq!(doc.to_complex().unwrap(), q);
}

#[test]
fn trivial_group_quotient_is_the_complex() {
    let poset = build_reduced_subset_lattice(4).unwrap();
    let full = order_complex(&poset);
    let action = GroupAction::new(PermutationGroup::trivial(4), &poset).unwrap();
    assert_eq!(quotient_complex(&full, &action).unwrap(), full);
}

#[test]
fn non_free_actions_are_refused_with_a_witness() {
    let poset = build_reduced_partition_lattice(5).unwrap();
    let full = order_complex(&poset);
    let group = PermutationGroup::from_cycle_strings(5, &["(2 3 4 5)"]).unwrap();
    let action = GroupAction::new(group, &poset).unwrap();
    let Freeness::Fixed(w) = is_free_action(&action) else {
        panic!("expected a fixed point")
    };
    assert_eq!(w.to_string(), "(2 3 4 5) fixes {1}|{2,3,4,5}");
    match quotient_complex(&full, &action) {
        Err(Error::NotFree(w)) => assert_eq!(w.element.to_string(), "{1}|{2,3,4,5}"),
        other => panic!("expected NotFree, got {other:?}"),
    }
}

#[test]
fn symmetric_group_acts_by_automorphisms() {
    let s5 = PermutationGroup::from_cycle_strings(5, &["(1 2)", "(1 2 3 4 5)"]).unwrap();
    assert_eq!(s5.order(), 120);
    for poset in [
        build_reduced_partition_lattice(5).unwrap(),
        build_reduced_subset_lattice(5).unwrap(),
    ] {
        let action = GroupAction::new(s5.clone(), &poset).unwrap();
        action.check_order_preserving().unwrap();
        assert!(!is_free_action(&action).is_free());
    }
}
