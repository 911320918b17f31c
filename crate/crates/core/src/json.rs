//! JSON documents for posets, complexes, and group specifications.
//!
//! Field order is fixed by the struct definitions, so serializing the same
//! value always yields the same bytes.

use serde::{Deserialize, Serialize};

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::poset::{FinitePoset, Partition, PosetElement, PosetKind, SubsetElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub kind: PosetKind,
    pub n: usize,
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

impl PosetDocument {
    pub fn from_poset(poset: &FinitePoset) -> Self {
        PosetDocument {
            kind: poset.kind(),
            n: poset.ground(),
            elements: poset.elements().iter().map(ToString::to_string).collect(),
            covers: poset.covers().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Rebuilds the poset. For partition and subset documents the order is
    /// recomputed from the elements and must agree with the stored covers.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|c| (c[0], c[1])).collect();
        let poset = match self.kind {
            PosetKind::Explicit => {
                let elements = self
                    .elements
                    .iter()
                    .map(|e| PosetElement::Label(e.clone()))
                    .collect();
                return FinitePoset::from_covers(PosetKind::Explicit, self.n, elements, &covers);
            }
            PosetKind::Partition => {
                let elements = self
                    .elements
                    .iter()
                    .map(|e| {
                        let p: Partition = e.parse()?;
                        // Trailing singletons fix the ground set size.
                        let mut blocks = p.blocks().to_vec();
                        blocks.extend((p.n() + 1..=self.n).map(|x| vec![x]));
                        Partition::new(self.n, blocks).map(PosetElement::Partition)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let rank = elements
                    .iter()
                    .map(|e| match e {
                        PosetElement::Partition(p) => self.n - p.num_blocks(),
                        _ => unreachable!(),
                    })
                    .collect();
                FinitePoset::from_relation(
                    PosetKind::Partition,
                    self.n,
                    elements,
                    |a, b| match (a, b) {
                        (PosetElement::Partition(a), PosetElement::Partition(b)) => {
                            a != b && a.refines(b)
                        }
                        _ => false,
                    },
                    Some(rank),
                )?
            }
            PosetKind::Subset => {
                let elements = self
                    .elements
                    .iter()
                    .map(|e| SubsetElement::parse(self.n, e).map(PosetElement::Subset))
                    .collect::<Result<Vec<_>>>()?;
                let rank = elements
                    .iter()
                    .map(|e| match e {
                        PosetElement::Subset(s) => s.len(),
                        _ => unreachable!(),
                    })
                    .collect();
                FinitePoset::from_relation(
                    PosetKind::Subset,
                    self.n,
                    elements,
                    |a, b| match (a, b) {
                        (PosetElement::Subset(a), PosetElement::Subset(b)) => {
                            a.is_proper_subset_of(b)
                        }
                        _ => false,
                    },
                    Some(rank),
                )?
            }
        };
        if poset.covers() != covers.as_slice() {
            return Err(Error::invalid(
                "stored covers disagree with the order recomputed from the elements",
            ));
        }
        Ok(poset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    /// Top dimension; `null` for the empty complex.
    pub dims: Option<usize>,
    pub f: Vec<usize>,
    /// For each dimension `d ≥ 1`, the face ids of every `d`-simplex.
    pub faces: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<Vec<u32>>>>,
}

impl ComplexDocument {
    pub fn from_complex(c: &DeltaComplex) -> Self {
        let dims = c.dim();
        let top = dims.map_or(0, |d| d + 1);
        let faces = (1..top)
            .map(|d| {
                (0..c.num_simplices(d))
                    .map(|s| c.faces_of(d, s).to_vec())
                    .collect()
            })
            .collect();
        let labels = c.has_labels().then(|| {
            (0..top)
                .map(|d| {
                    (0..c.num_simplices(d))
                        .map(|s| c.label(d, s).expect("labels present").to_vec())
                        .collect()
                })
                .collect()
        });
        ComplexDocument {
            dims,
            f: c.f_vector().0,
            faces,
            labels,
        }
    }

    pub fn to_complex(&self) -> Result<DeltaComplex> {
        let top = self.dims.map_or(0, |d| d + 1);
        if self.f.len() != top || self.faces.len() != top.saturating_sub(1) {
            return Err(Error::invalid("complex document shape disagrees with dims"));
        }
        if top == 0 {
            return Ok(DeltaComplex::empty());
        }
        let flatten = |d: usize, rows: &[Vec<u32>]| -> Result<Vec<u32>> {
            if rows.iter().any(|r| r.len() != d + 1) {
                return Err(Error::invalid(format!(
                    "dimension {d} entries must have {} ids",
                    d + 1
                )));
            }
            Ok(rows.concat())
        };
        let mut faces = vec![Vec::new()];
        for (i, rows) in self.faces.iter().enumerate() {
            faces.push(flatten(i + 1, rows)?);
        }
        let labels = match &self.labels {
            None => None,
            Some(l) => Some(
                l.iter()
                    .enumerate()
                    .map(|(d, rows)| flatten(d, rows))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        DeltaComplex::new(self.f.clone(), faces, labels)
    }
}

/// `{ "degree": n, "generators": ["(1 2 3 4 5)"] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpecDocument {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupSpecDocument {
    pub fn to_group(&self) -> Result<PermutationGroup> {
        PermutationGroup::from_cycle_strings(self.degree, &self.generators)
    }

    pub fn from_group(g: &PermutationGroup) -> Self {
        GroupSpecDocument {
            degree: g.degree(),
            generators: g.generators().iter().map(ToString::to_string).collect(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};

    #[test]
    fn poset_documents_round_trip() {
        for poset in [
            build_reduced_partition_lattice(4).unwrap(),
            build_reduced_subset_lattice(4).unwrap(),
        ] {
            let doc = PosetDocument::from_poset(&poset);
            let back = doc.to_poset().unwrap();
            assert_eq!(PosetDocument::from_poset(&back), doc);
        }
    }

    #[test]
    fn partition_strings_are_canonical() {
        let doc = PosetDocument::from_poset(&build_reduced_partition_lattice(3).unwrap());
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"partition","n":3,"elements":["{1}|{2,3}","{1,2}|{3}","{1,3}|{2}"],"covers":[]}"#
        );
    }

    #[test]
    fn tampered_covers_are_rejected() {
        let mut doc = PosetDocument::from_poset(&build_reduced_subset_lattice(3).unwrap());
        doc.covers.pop();
        assert!(doc.to_poset().is_err());
    }

    #[test]
    fn explicit_documents() {
        let doc: PosetDocument = serde_json::from_str(
            r#"{"kind":"explicit","n":3,"elements":["a","b","c"],"covers":[[0,1],[1,2]]}"#,
        )
        .unwrap();
        let p = doc.to_poset().unwrap();
        assert!(p.less_than(0, 2));
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn complex_documents_round_trip() {
        let c = order_complex(&build_reduced_subset_lattice(4).unwrap());
        let doc = ComplexDocument::from_complex(&c);
        assert_eq!(doc.dims, Some(2));
        assert_eq!(doc.to_complex().unwrap(), c);
        let empty = ComplexDocument::from_complex(&DeltaComplex::empty());
        assert_eq!(
            serde_json::to_string(&empty).unwrap(),
            r#"{"dims":null,"f":[],"faces":[]}"#
        );
        assert_eq!(empty.to_complex().unwrap(), DeltaComplex::empty());
    }

    #[test]
    fn group_spec() {
        let doc: GroupSpecDocument =
            serde_json::from_str(r#"{"degree":5,"generators":["(1 2 3 4 5)"]}"#).unwrap();
        let g = doc.to_group().unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(GroupSpecDocument::from_group(&g), doc);
    }
}
