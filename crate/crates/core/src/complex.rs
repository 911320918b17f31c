//! Semi-simplicial complexes (Δ-complexes) given by face maps, and the
//! order complex of a finite poset.

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Simplex counts per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Alternating sum `Σ (−1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A finite Δ-complex.
///
/// Simplices of dimension `d` carry dense ids `0..f_d`. For `d ≥ 1`,
/// `faces[d]` is a flat array with stride `d + 1`: entry `i` of a simplex is
/// the id of its `i`-th face (the face opposite vertex `i`). Labels, when
/// present, use the same layout and record the chain (or representative
/// chain) of poset elements a simplex came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    counts: Vec<usize>,
    faces: Vec<Vec<u32>>,
    labels: Option<Vec<Vec<u32>>>,
}

impl DeltaComplex {
    /// Assembles a complex from raw face tables, validating shapes and
    /// face index ranges.
    pub fn new(
        counts: Vec<usize>,
        faces: Vec<Vec<u32>>,
        labels: Option<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        if faces.len() != counts.len() {
            return Err(Error::invalid(
                "face table count differs from dimension count",
            ));
        }
        if counts.last() == Some(&0) {
            return Err(Error::invalid(
                "top dimension of a complex must be nonempty",
            ));
        }
        for (d, table) in faces.iter().enumerate() {
            if d == 0 {
                if !table.is_empty() {
                    return Err(Error::invalid("vertices have no faces"));
                }
                continue;
            }
            if table.len() != counts[d] * (d + 1) {
                return Err(Error::invalid(format!(
                    "dimension {d}: expected {} face entries, found {}",
                    counts[d] * (d + 1),
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&f| f as usize >= counts[d - 1]) {
                return Err(Error::invalid(format!(
                    "dimension {d}: face index {bad} out of range for {} simplices",
                    counts[d - 1]
                )));
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != counts.len()
                || labels
                    .iter()
                    .enumerate()
                    .any(|(d, l)| l.len() != counts[d] * (d + 1))
            {
                return Err(Error::invalid(
                    "label table shape does not match the complex",
                ));
            }
        }
        Ok(DeltaComplex {
            counts,
            faces,
            labels,
        })
    }

    pub fn empty() -> Self {
        DeltaComplex {
            counts: Vec::new(),
            faces: Vec::new(),
            labels: None,
        }
    }

    /// Builds the simplicial complex whose `d`-simplices are the given sorted
    /// vertex tuples. `simplices[d]` is a flat lexicographically sorted array
    /// with stride `d + 1` and must be closed under taking faces.
    pub fn from_sorted_simplices(simplices: Vec<Vec<u32>>) -> Result<Self> {
        let mut counts = Vec::with_capacity(simplices.len());
        let mut faces = Vec::with_capacity(simplices.len());
        for (d, flat) in simplices.iter().enumerate() {
            let stride = d + 1;
            counts.push(flat.len() / stride);
            if d == 0 {
                faces.push(Vec::new());
                continue;
            }
            let lower = &simplices[d - 1];
            let mut table = Vec::with_capacity(flat.len());
            let mut key = Vec::with_capacity(d);
            for simplex in flat.chunks_exact(stride) {
                for i in 0..stride {
                    key.clear();
                    key.extend(
                        simplex
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != i)
                            .map(|(_, &v)| v),
                    );
                    let id = find_tuple(lower, d, &key).ok_or_else(|| {
                        Error::invalid(format!("face {key:?} of {simplex:?} is missing"))
                    })?;
                    table.push(id as u32);
                }
            }
            faces.push(table);
        }
        while counts.last() == Some(&0) {
            counts.pop();
            faces.pop();
        }
        let mut labels = simplices;
        labels.truncate(counts.len());
        DeltaComplex::new(counts, faces, Some(labels))
    }

    /// Simplicial complex generated by the given facets (vertex sets).
    pub fn simplicial_closure(facets: &[Vec<u32>]) -> Result<Self> {
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.len() > 20 {
                return Err(Error::invalid("facet too large for subset closure"));
            }
            for mask in 1u32..(1 << f.len()) {
                let s: Vec<u32> = (0..f.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                let d = s.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, Vec::new());
                }
                by_dim[d].push(s);
            }
        }
        let flat = by_dim
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v.dedup();
                v.concat()
            })
            .collect();
        DeltaComplex::from_sorted_simplices(flat)
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn num_simplices(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn total_simplices(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Face ids of simplex `s` in dimension `d ≥ 1`.
    pub fn faces_of(&self, d: usize, s: usize) -> &[u32] {
        &self.faces[d][s * (d + 1)..(s + 1) * (d + 1)]
    }

    pub fn face(&self, d: usize, s: usize, i: usize) -> usize {
        self.faces[d][s * (d + 1) + i] as usize
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, d: usize, s: usize) -> Option<&[u32]> {
        self.labels
            .as_ref()
            .map(|l| &l[d][s * (d + 1)..(s + 1) * (d + 1)])
    }

    pub(crate) fn label_table(&self, d: usize) -> Option<&[u32]> {
        self.labels.as_ref().map(|l| l[d].as_slice())
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.counts.clone())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Checks `d_i ∘ d_j = d_{j−1} ∘ d_i` for all `i < j` on every simplex of
    /// dimension at least 2.
    pub fn check_simplicial_identities(&self) -> Result<()> {
        for d in 2..self.counts.len() {
            for s in 0..self.counts[d] {
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.face(d - 1, self.face(d, s, j), i);
                        let rhs = self.face(d - 1, self.face(d, s, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::invariant(format!(
                                "simplicial identity fails on {d}-simplex {s} for i={i}, j={j}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Binary search for a tuple in a flat, lexicographically sorted array of
/// tuples with `stride` entries each.
pub(crate) fn find_tuple(flat: &[u32], stride: usize, key: &[u32]) -> Option<usize> {
    let n = flat.len() / stride;
    let tuple = |i: usize| &flat[i * stride..(i + 1) * stride];
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match tuple(mid).cmp(key) {
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Some(mid),
        }
    }
    None
}

/// The order complex (nerve) of a poset: `d`-simplices are the chains with
/// `d + 1` elements, face `i` deletes the `i`-th smallest element, and each
/// simplex is labelled by its chain.
pub fn order_complex(poset: &FinitePoset) -> DeltaComplex {
    DeltaComplex::from_sorted_simplices(poset.chains_by_length(None))
        .expect("chains of a poset are closed under deletion")
}

/// Order complex truncated to chains of at most `max_dim + 1` elements.
pub fn order_complex_skeleton(poset: &FinitePoset, max_dim: usize) -> DeltaComplex {
    DeltaComplex::from_sorted_simplices(poset.chains_by_length(Some(max_dim + 1)))
        .expect("chains of a poset are closed under deletion")
}

pub fn f_vector(c: &DeltaComplex) -> FVector {
    c.f_vector()
}

pub fn euler_characteristic(c: &DeltaComplex) -> i64 {
    c.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};

    #[test]
    fn empty_and_point() {
        let e = DeltaComplex::empty();
        assert_eq!(e.f_vector(), FVector(vec![]));
        assert_eq!(e.dim(), None);
        assert_eq!(e.euler_characteristic(), 0);
        let pt = DeltaComplex::new(vec![1], vec![vec![]], None).unwrap();
        assert_eq!(pt.euler_characteristic(), 1);
    }

    #[test]
    fn rejects_bad_faces() {
        assert!(DeltaComplex::new(vec![2, 1], vec![vec![], vec![0, 2]], None).is_err());
        assert!(DeltaComplex::new(vec![2, 1], vec![vec![], vec![0]], None).is_err());
        assert!(DeltaComplex::new(vec![1], vec![vec![0]], None).is_err());
    }

    #[test]
    fn small_order_complexes() {
        let c3 = order_complex(&build_reduced_partition_lattice(3).unwrap());
        assert_eq!(c3.f_vector(), FVector(vec![3]));

        let c5 = order_complex(&build_reduced_partition_lattice(5).unwrap());
        assert_eq!(c5.f_vector(), FVector(vec![50, 205, 180]));
        assert_eq!(c5.dim(), Some(2));
        assert_eq!(c5.euler_characteristic(), 25);
        c5.check_simplicial_identities().unwrap();

        let l5 = order_complex(&build_reduced_subset_lattice(5).unwrap());
        assert_eq!(l5.dim(), Some(3));
        assert_eq!(l5.euler_characteristic(), 0);
        l5.check_simplicial_identities().unwrap();
    }

    #[test]
    fn skeleton_truncates() {
        let l5 = build_reduced_subset_lattice(5).unwrap();
        let sk = order_complex_skeleton(&l5, 1);
        let full = order_complex(&l5);
        assert_eq!(sk.dim(), Some(1));
        assert_eq!(sk.f_vector().0[..], full.f_vector().0[..2]);
    }

    #[test]
    fn closure_of_a_triangle_boundary() {
        let c = DeltaComplex::simplicial_closure(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(c.f_vector(), FVector(vec![3, 3]));
        assert_eq!(c.faces_of(1, 0), &[1, 0]);
    }
}
