//! Property tests for partitions, permutation actions, Smith forms, and
//! homology of random complexes.

mod common;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use trisp_homology::action::{act_on_partition, quotient_complex, GroupAction};
use trisp_homology::complex::{order_complex, DeltaComplex};
use trisp_homology::group::{Permutation, PermutationGroup};
use trisp_homology::homology::{
    boundary_matrix, homology, rank_mod_prime, smith_normal_form,
    smith_normal_form_with_transforms, Coefficients, IntegerMatrix,
};
use trisp_homology::poset::{
    build_reduced_partition_lattice, build_reduced_subset_lattice, Partition,
};

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn to_i128(m: &[Vec<BigInt>]) -> Vec<Vec<i128>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect()
}

/// Rank over `F_q` by dense Gaussian elimination.
fn rank_mod_q_oracle(m: &[Vec<i64>], q: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(q)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = (1..q).find(|&x| x * a[rank][c] % q == 1).unwrap();
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % q;
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(q);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Simplicial complexes on at most seven vertices, given by random facets.
fn complex() -> impl Strategy<Value = (Vec<Vec<u32>>, DeltaComplex)> {
    prop::collection::vec(1u32..128, 1..7).prop_map(|masks| {
        let facets: Vec<Vec<u32>> = masks
            .iter()
            .map(|m| (0..7).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        let c = DeltaComplex::simplicial_closure(&facets).unwrap();
        (facets, c)
    })
}

fn components(facets: &[Vec<u32>]) -> usize {
    let mut parent: Vec<usize> = (0..7).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut used = [false; 7];
    for f in facets {
        for &v in f {
            used[v as usize] = true;
            let (a, b) = (
                find(&mut parent, f[0] as usize),
                find(&mut parent, v as usize),
            );
            parent[a] = b;
        }
    }
    let roots: std::collections::BTreeSet<usize> = (0..7)
        .filter(|&v| used[v])
        .map(|v| find(&mut parent, v))
        .collect();
    roots.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_canonical_form_ignores_label_names(
        labels in prop::collection::vec(0usize..6, 1..9),
        renaming in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let p = Partition::from_block_labels(&labels);
        let renamed: Vec<usize> = labels.iter().map(|&l| renaming[l]).collect();
        prop_assert_eq!(&Partition::from_block_labels(&renamed), &p);
        let reparsed: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(&reparsed, &p);
        prop_assert_eq!(&Partition::from_block_labels(&p.block_labels()), &p);
        let mut blocks = p.blocks().to_vec();
        blocks.reverse();
        for b in &mut blocks {
            b.reverse();
        }
        prop_assert_eq!(&Partition::new(p.n(), blocks).unwrap(), &p);
    }

    #[test]
    fn action_on_partitions_is_a_left_action_by_automorphisms(
        g in permutation(6),
        h in permutation(6),
        a in prop::collection::vec(0usize..6, 6),
        b in prop::collection::vec(0usize..6, 6),
    ) {
        let (a, b) = (Partition::from_block_labels(&a), Partition::from_block_labels(&b));
        let gh = g.compose(&h);
        prop_assert_eq!(
            act_on_partition(&g, &act_on_partition(&h, &a).unwrap()).unwrap(),
            act_on_partition(&gh, &a).unwrap()
        );
        prop_assert_eq!(
            a.refines(&b),
            act_on_partition(&g, &a).unwrap().refines(&act_on_partition(&g, &b).unwrap())
        );
        prop_assert_eq!(act_on_partition(&g.inverse(), &act_on_partition(&g, &a).unwrap()).unwrap(), a);
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(m in matrix(5)) {
        let expected = common::invariant_factors_by_minors(&m);
        let snf = smith_normal_form(&IntegerMatrix::from_dense(&m).unwrap());
        let got: Vec<i128> = snf.invariant_factors.iter().map(|x| x.to_i128().unwrap()).collect();
        prop_assert_eq!(got, expected);
        prop_assert!(snf.is_divisibility_chain());
    }

    #[test]
    fn smith_transforms_are_unimodular(m in matrix(5)) {
        let im = IntegerMatrix::from_dense(&m).unwrap();
        let w = smith_normal_form_with_transforms(&im);
        let (u, v, d) = (to_i128(&w.left), to_i128(&w.right), to_i128(&w.diagonal));
        let m128: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        prop_assert_eq!(common::matmul(&common::matmul(&u, &m128), &v), d.clone());
        prop_assert_eq!(common::det(&u).abs(), 1);
        prop_assert_eq!(common::det(&v).abs(), 1);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i != j {
                    prop_assert_eq!(x, 0);
                }
            }
        }
        prop_assert_eq!(&w.form, &smith_normal_form(&im));
    }

    #[test]
    fn modular_rank_matches_elimination(m in matrix(6), q in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let im = IntegerMatrix::from_dense(&m).unwrap();
        prop_assert_eq!(rank_mod_prime(&im, q), rank_mod_q_oracle(&m, q as i64));
    }

    #[test]
    fn random_complexes_satisfy_homology_invariants((facets, c) in complex()) {
        c.check_simplicial_identities().unwrap();
        let dim = c.dim().unwrap();
        for d in 1..dim {
            let prod = boundary_matrix(&c, d).unwrap().mul(&boundary_matrix(&c, d + 1).unwrap()).unwrap();
            prop_assert!(prod.is_zero());
        }
        let fields = [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)];
        let mut coeffs = vec![Coefficients::Integers];
        coeffs.extend(fields);
        let h = homology(&c, &coeffs).unwrap();
        let q = h.betti(Coefficients::Rationals).unwrap().to_vec();
        for f in fields {
            prop_assert_eq!(h.euler_from_betti(f).unwrap(), c.euler_characteristic());
            for (bf, bq) in h.betti(f).unwrap().iter().zip(&q) {
                prop_assert!(bf >= bq);
            }
        }
        let groups = h.integral.as_ref().unwrap();
        prop_assert!(groups[dim].torsion.is_empty());
        prop_assert!(groups[0].torsion.is_empty());
        prop_assert_eq!(groups[0].free_rank, components(&facets));
        for g in groups {
            prop_assert_eq!(g.free_rank, q[g.dim]);
        }
    }

    #[test]
    fn conjugate_cyclic_actions_give_the_same_quotient(sigma in permutation(5)) {
        let cycle = sigma.compose(&Permutation::long_cycle(5)).compose(&sigma.inverse());
        let group = PermutationGroup::generate(5, vec![cycle]).unwrap();
        for (poset, expected) in [
            (build_reduced_subset_lattice(5).unwrap(), "H_0 = Z, H_1 = Z/5, H_2 = 0, H_3 = Z"),
            (build_reduced_partition_lattice(5).unwrap(), "H_0 = Z, H_1 = Z/5, H_2 = Z^4"),
        ] {
            let full = order_complex(&poset);
            let action = GroupAction::new(group.clone(), &poset).unwrap();
            let q = quotient_complex(&full, &action).unwrap();
            q.check_simplicial_identities().unwrap();
            let scaled: Vec<usize> = q.f_vector().0.iter().map(|f| f * 5).collect();
            prop_assert_eq!(scaled, full.f_vector().0);
            let h = homology(&q, &[Coefficients::Integers]).unwrap();
            prop_assert_eq!(h.integral_summary().unwrap(), expected);
        }
    }
}
