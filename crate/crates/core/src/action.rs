//! Permutation group actions on posets and quotients of order complexes by
//! free actions.

use std::fmt;

use crate::complex::{find_tuple, DeltaComplex};
use crate::error::{Error, Result};
use crate::group::{Permutation, PermutationGroup};
use crate::poset::{FinitePoset, Partition, PosetElement, SubsetElement};

pub fn act_on_partition(g: &Permutation, v: &Partition) -> Result<Partition> {
    if g.degree() != v.n() {
        return Err(Error::DegreeMismatch {
            degree: g.degree(),
            ground: v.n(),
        });
    }
    Ok(v.map_points(|x| g.apply(x)))
}

pub fn act_on_subset(g: &Permutation, v: &SubsetElement) -> Result<SubsetElement> {
    if g.degree() != v.p() {
        return Err(Error::DegreeMismatch {
            degree: g.degree(),
            ground: v.p(),
        });
    }
    Ok(v.map_points(|x| g.apply(x)))
}

pub fn act_on_element(g: &Permutation, v: &PosetElement) -> Result<PosetElement> {
    match v {
        PosetElement::Partition(p) => act_on_partition(g, p).map(PosetElement::Partition),
        PosetElement::Subset(s) => act_on_subset(g, s).map(PosetElement::Subset),
        PosetElement::Label(l) => Err(Error::invalid(format!(
            "permutations do not act on the opaque label {l:?}"
        ))),
    }
}

/// A permutation group acting on the elements of a poset by order
/// automorphisms, tabulated as `table[g][v] = g·v`.
#[derive(Clone, Debug)]
pub struct GroupAction<'a> {
    group: PermutationGroup,
    poset: &'a FinitePoset,
    table: Vec<Vec<u32>>,
}

impl<'a> GroupAction<'a> {
    /// Tabulates the natural action and checks that every group element is
    /// an order automorphism of the poset.
    pub fn new(group: PermutationGroup, poset: &'a FinitePoset) -> Result<Self> {
        if group.degree() != poset.ground() {
            return Err(Error::DegreeMismatch {
                degree: group.degree(),
                ground: poset.ground(),
            });
        }
        let mut table = Vec::with_capacity(group.order());
        for g in group.elements() {
            let row = poset
                .elements()
                .iter()
                .map(|v| {
                    let image = act_on_element(g, v)?;
                    poset.index_of(&image).map(|i| i as u32).ok_or_else(|| {
                        Error::invalid(format!(
                            "{g} maps {v} to {image}, which is not in the poset"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let action = GroupAction {
            group,
            poset,
            table,
        };
        action.check_order_preserving()?;
        Ok(action)
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn poset(&self) -> &FinitePoset {
        self.poset
    }

    /// Index of `g·v` where `g` is the group element with index `g`.
    pub fn apply(&self, g: usize, v: usize) -> usize {
        self.table[g][v] as usize
    }

    /// Checks `u < v ⇔ g·u < g·v` for every group element and pair.
    pub fn check_order_preserving(&self) -> Result<()> {
        let n = self.poset.len();
        for (gi, row) in self.table.iter().enumerate() {
            for u in 0..n {
                for v in 0..n {
                    let before = self.poset.less_than(u, v);
                    let after = self.poset.less_than(row[u] as usize, row[v] as usize);
                    if before != after {
                        return Err(Error::invalid(format!(
                            "{} does not preserve the order between {} and {}",
                            self.group.elements()[gi],
                            self.poset.element(u),
                            self.poset.element(v)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A non-identity group element together with a poset element it fixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessWitness {
    pub permutation: Permutation,
    pub element: PosetElement,
    pub element_index: usize,
}

impl fmt::Display for FreenessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fixes {}", self.permutation, self.element)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free,
    Fixed(FreenessWitness),
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

/// Scans every (non-identity group element, poset element) pair for a fixed
/// point. Group elements are tried in order and poset elements from the top
/// of the linear extension down, so a witness on a graded lattice has the
/// highest rank available.
pub fn is_free_action(a: &GroupAction<'_>) -> Freeness {
    for (gi, g) in a.group.elements().iter().enumerate() {
        if g.is_identity() {
            continue;
        }
        if let Some(v) = (0..a.poset.len()).rev().find(|&v| a.apply(gi, v) == v) {
            return Freeness::Fixed(FreenessWitness {
                permutation: g.clone(),
                element: a.poset.element(v).clone(),
                element_index: v,
            });
        }
    }
    Freeness::Free
}

/// Orbit decomposition of a finite set under a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    /// `orbit_of[v]` is the orbit id of element `v`.
    pub orbit_of: Vec<u32>,
    /// Least element of each orbit, ascending; orbit ids follow this order.
    pub representatives: Vec<u32>,
    /// Members of each orbit, ascending.
    pub members: Vec<Vec<u32>>,
}

impl Orbits {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    fn from_images(n: usize, mut images: impl FnMut(usize) -> Vec<usize>) -> Self {
        const UNSEEN: u32 = u32::MAX;
        let mut orbit_of = vec![UNSEEN; n];
        let mut representatives = Vec::new();
        let mut members = Vec::new();
        for v in 0..n {
            if orbit_of[v] != UNSEEN {
                continue;
            }
            let id = representatives.len() as u32;
            let mut orbit: Vec<u32> = images(v).into_iter().map(|w| w as u32).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                orbit_of[w as usize] = id;
            }
            representatives.push(v as u32);
            members.push(orbit);
        }
        Orbits {
            orbit_of,
            representatives,
            members,
        }
    }
}

pub fn orbits(a: &GroupAction<'_>) -> Orbits {
    Orbits::from_images(a.poset.len(), |v| {
        (0..a.group.order()).map(|g| a.apply(g, v)).collect()
    })
}

/// Quotient of the order complex of `a.poset()` by a free action.
///
/// Output `d`-simplices are orbits of `d`-simplices, numbered in order of
/// their least member, and labelled by that representative chain. Face `i`
/// of an orbit is the orbit of face `i` of any member; this is checked for
/// every member.
pub fn quotient_complex(c: &DeltaComplex, a: &GroupAction<'_>) -> Result<DeltaComplex> {
    if let Freeness::Fixed(w) = is_free_action(a) {
        return Err(Error::NotFree(Box::new(w)));
    }
    let poset = a.poset;
    if c.num_simplices(0) != poset.len()
        || (0..poset.len()).any(|v| c.label(0, v) != Some(&[v as u32][..]))
    {
        return Err(Error::invalid(
            "quotient_complex needs the labelled order complex of the acting poset",
        ));
    }
    let order = a.group.order();
    let vertex_orbits = orbits(a);
    let dims = c.dim().map_or(0, |d| d + 1);

    let mut simplex_orbits: Vec<Orbits> = Vec::with_capacity(dims);
    for d in 0..dims {
        let labels = c
            .label_table(d)
            .ok_or_else(|| Error::invalid("order complex is missing labels"))?;
        let stride = d + 1;
        let mut image = vec![0u32; stride];
        let mut err = None;
        let orbits_d = Orbits::from_images(c.num_simplices(d), |s| {
            let chain = &labels[s * stride..(s + 1) * stride];
            (0..order)
                .map(|g| {
                    for (slot, &v) in image.iter_mut().zip(chain) {
                        *slot = a.table[g][v as usize];
                    }
                    find_tuple(labels, stride, &image).unwrap_or_else(|| {
                        err.get_or_insert_with(|| {
                            Error::invariant(format!("image of chain {chain:?} is not a chain"))
                        });
                        s
                    })
                })
                .collect()
        });
        if let Some(e) = err {
            return Err(e);
        }
        if let Some(bad) = orbits_d.members.iter().find(|m| m.len() != order) {
            return Err(Error::invariant(format!(
                "{d}-simplex orbit of size {} under a free action of order {order}",
                bad.len()
            )));
        }
        // No chain may meet an orbit twice.
        for chain in labels.chunks_exact(stride) {
            for (i, &u) in chain.iter().enumerate() {
                for &v in &chain[i + 1..] {
                    if vertex_orbits.orbit_of[u as usize] == vertex_orbits.orbit_of[v as usize] {
                        return Err(Error::invariant(format!(
                            "comparable elements {} and {} share an orbit",
                            poset.element(u as usize),
                            poset.element(v as usize)
                        )));
                    }
                }
            }
        }
        simplex_orbits.push(orbits_d);
    }

    let counts: Vec<usize> = simplex_orbits.iter().map(Orbits::len).collect();
    let mut faces = vec![Vec::new()];
    let mut labels = Vec::with_capacity(dims);
    labels.push(
        simplex_orbits
            .first()
            .map(|o| o.representatives.clone())
            .unwrap_or_default(),
    );
    for d in 1..dims {
        let here = &simplex_orbits[d];
        let below = &simplex_orbits[d - 1];
        let mut table = Vec::with_capacity(here.len() * (d + 1));
        let mut label_table = Vec::with_capacity(here.len() * (d + 1));
        for (o, members) in here.members.iter().enumerate() {
            let rep = here.representatives[o] as usize;
            for i in 0..=d {
                let target = below.orbit_of[c.face(d, rep, i)];
                if let Some(&m) = members
                    .iter()
                    .find(|&&m| below.orbit_of[c.face(d, m as usize, i)] != target)
                {
                    return Err(Error::invariant(format!(
                        "face {i} of {d}-simplex orbit {o} depends on the representative ({rep} vs {m})"
                    )));
                }
                table.push(target);
            }
            label_table.extend_from_slice(c.label(d, rep).expect("labels checked above"));
        }
        faces.push(table);
        labels.push(label_table);
    }
    if dims == 0 {
        return Ok(DeltaComplex::empty());
    }
    DeltaComplex::new(counts, faces, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};

    #[test]
    fn relabels_partitions() {
        let v: Partition = "{1,2}|{3}|{4}|{5}".parse().unwrap();
        let g = Permutation::long_cycle(5);
        assert_eq!(
            act_on_partition(&g, &v).unwrap().to_string(),
            "{1}|{2,3}|{4}|{5}"
        );
        assert_eq!(act_on_partition(&Permutation::identity(5), &v).unwrap(), v);
        let fix: Partition = "{1}|{2,3,4,5}".parse().unwrap();
        let h = Permutation::parse_cycles("(2 3 4 5)", 5).unwrap();
        assert_eq!(act_on_partition(&h, &fix).unwrap(), fix);
        assert!(matches!(
            act_on_partition(&Permutation::identity(4), &v),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn cyclic_actions_are_free() {
        let l5 = build_reduced_subset_lattice(5).unwrap();
        let a = GroupAction::new(PermutationGroup::cyclic(5), &l5).unwrap();
        assert!(is_free_action(&a).is_free());
        let o = orbits(&a);
        assert_eq!(o.len(), 6);
        assert!(o.members.iter().all(|m| m.len() == 5));

        let pi5 = build_reduced_partition_lattice(5).unwrap();
        let a = GroupAction::new(PermutationGroup::cyclic(5), &pi5).unwrap();
        assert!(is_free_action(&a).is_free());
        assert_eq!(orbits(&a).len(), 10);
    }

    #[test]
    fn stabilizer_of_one_is_not_free() {
        let pi5 = build_reduced_partition_lattice(5).unwrap();
        let g = PermutationGroup::from_cycle_strings(5, &["(2 3 4 5)"]).unwrap();
        let a = GroupAction::new(g, &pi5).unwrap();
        let Freeness::Fixed(w) = is_free_action(&a) else {
            panic!("expected a fixed point");
        };
        let image = act_on_element(&w.permutation, &w.element).unwrap();
        assert_eq!(image, w.element);
        assert!(!w.permutation.is_identity());

        let c = order_complex(&pi5);
        assert!(matches!(quotient_complex(&c, &a), Err(Error::NotFree(_))));
    }

    #[test]
    fn trivial_orbits_and_quotient() {
        let l4 = build_reduced_subset_lattice(4).unwrap();
        let a = GroupAction::new(PermutationGroup::trivial(4), &l4).unwrap();
        let o = orbits(&a);
        assert_eq!(o.len(), l4.len());
        let c = order_complex(&l4);
        let q = quotient_complex(&c, &a).unwrap();
        assert_eq!(q, c);
    }

    #[test]
    fn partition_quotient_f_vector() {
        let pi5 = build_reduced_partition_lattice(5).unwrap();
        let c = order_complex(&pi5);
        let a = GroupAction::new(PermutationGroup::cyclic(5), &pi5).unwrap();
        let q = quotient_complex(&c, &a).unwrap();
        assert_eq!(q.f_vector().0, vec![10, 41, 36]);
        assert_eq!(q.euler_characteristic(), 5);
        q.check_simplicial_identities().unwrap();
    }

    #[test]
    fn labels_are_required() {
        let l3 = build_reduced_subset_lattice(3).unwrap();
        let a = GroupAction::new(PermutationGroup::cyclic(3), &l3).unwrap();
        let c = DeltaComplex::new(vec![6], vec![vec![]], None).unwrap();
        assert!(quotient_complex(&c, &a).is_err());
    }
}
