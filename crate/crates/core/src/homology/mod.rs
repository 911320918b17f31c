//! Exact homology of Δ-complexes over `Z`, `Q`, and prime fields.

mod dense;
mod matrix;
mod snf;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use dense::{smith_normal_form_with_transforms, SmithWitness};
pub use matrix::{boundary_matrix, IntegerMatrix};
pub use snf::{normalize_diagonal, rank_mod_prime, smith_normal_form, SmithForm};

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::group::is_prime;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    /// The prime field with `q` elements.
    Prime(u32),
}

impl Coefficients {
    pub fn prime(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::invalid(format!("F{q}: {q} is not prime")));
        }
        Ok(Coefficients::Prime(q))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Coefficients::Integers)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Rationals => f.write_str("Q"),
            Coefficients::Prime(q) => write!(f, "F{q}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(Coefficients::Integers),
            "Q" => Ok(Coefficients::Rationals),
            other => {
                let q = other
                    .strip_prefix('F')
                    .and_then(|q| q.parse::<u32>().ok())
                    .ok_or_else(|| Error::parse(format!("unknown coefficients {other:?}")))?;
                Coefficients::prime(q)
            }
        }
    }
}

/// Parses a comma-separated coefficient list such as `Z,Q,F2,F5`.
pub fn parse_coefficient_list(s: &str) -> Result<Vec<Coefficients>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// `H_i(·; Z) ≅ Z^free_rank ⊕ Z/t_1 ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralGroup {
    pub dim: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl IntegralGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for IntegralGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Homology of one complex: integral groups (when computed) and Betti
/// numbers per field.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyReport {
    pub integral: Option<Vec<IntegralGroup>>,
    /// Betti numbers per field, indexed by dimension.
    pub field_betti: BTreeMap<Coefficients, Vec<usize>>,
}

impl HomologyReport {
    pub fn group(&self, dim: usize) -> Option<&IntegralGroup> {
        self.integral.as_ref()?.get(dim)
    }

    pub fn betti(&self, field: Coefficients) -> Result<&[usize]> {
        self.field_betti
            .get(&field)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::FieldNotComputed(field.to_string()))
    }

    /// `Σ (−1)^i β_i^F`.
    pub fn euler_from_betti(&self, field: Coefficients) -> Result<i64> {
        Ok(alternating_sum(self.betti(field)?))
    }

    /// Text form `H_0 = Z, H_1 = Z/5, …` of the integral groups.
    pub fn integral_summary(&self) -> Option<String> {
        let groups = self.integral.as_ref()?;
        Some(
            groups
                .iter()
                .map(|g| format!("H_{} = {}", g.dim, g))
                .collect::<Vec<_>>()
                .join(", "),
        )
    }

    pub fn to_document(&self, coefficients: Coefficients) -> Result<HomologyDocument> {
        let groups = match coefficients {
            Coefficients::Integers => self
                .integral
                .as_ref()
                .ok_or_else(|| Error::FieldNotComputed("Z".into()))?
                .iter()
                .map(|g| GroupDocument {
                    dim: g.dim,
                    free_rank: g.free_rank,
                    torsion: g.torsion.iter().map(big_to_json).collect(),
                })
                .collect(),
            field => self
                .betti(field)?
                .iter()
                .enumerate()
                .map(|(dim, &b)| GroupDocument {
                    dim,
                    free_rank: b,
                    torsion: Vec::new(),
                })
                .collect(),
        };
        Ok(HomologyDocument {
            coefficients: coefficients.to_string(),
            groups,
        })
    }
}

pub(crate) fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

fn big_to_json(v: &BigInt) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::from(v.to_string()),
    }
}

/// JSON form of a homology computation over one coefficient ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyDocument {
    pub coefficients: String,
    pub groups: Vec<GroupDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub dim: usize,
    pub free_rank: usize,
    pub torsion: Vec<serde_json::Value>,
}

/// Computes unreduced homology of `c` over each requested coefficient ring.
///
/// Integral homology comes from Smith forms of the boundary maps; `Q`
/// Betti numbers are the integral free ranks. Over `F_q` only ranks mod `q`
/// are computed. Boundary maps of different dimensions are reduced in
/// parallel.
pub fn homology(c: &DeltaComplex, coefficients: &[Coefficients]) -> Result<HomologyReport> {
    for coeff in coefficients {
        if let Coefficients::Prime(q) = coeff {
            if !is_prime(*q as u64) {
                return Err(Error::invalid(format!("F{q}: {q} is not prime")));
            }
        }
    }
    let dims = c.dim().map_or(0, |d| d + 1);
    let boundaries: Vec<IntegerMatrix> = (1..dims)
        .map(|d| boundary_matrix(c, d))
        .collect::<Result<_>>()?;
    let counts: Vec<usize> = (0..dims).map(|d| c.num_simplices(d)).collect();

    let mut report = HomologyReport::default();
    let wants_integral = coefficients
        .iter()
        .any(|k| matches!(k, Coefficients::Integers | Coefficients::Rationals));
    if wants_integral {
        let forms: Vec<SmithForm> = boundaries.par_iter().map(smith_normal_form).collect();
        // rank of ∂_d for d = 0..=dims, with ∂_0 = ∂_{dims} = 0
        let rank = |d: usize| {
            if d == 0 || d >= dims {
                0
            } else {
                forms[d - 1].rank
            }
        };
        let groups: Vec<IntegralGroup> = (0..dims)
            .map(|d| IntegralGroup {
                dim: d,
                free_rank: counts[d] - rank(d) - rank(d + 1),
                torsion: if d + 1 < dims {
                    forms[d].torsion()
                } else {
                    Vec::new()
                },
            })
            .collect();
        if coefficients.contains(&Coefficients::Rationals) {
            report.field_betti.insert(
                Coefficients::Rationals,
                groups.iter().map(|g| g.free_rank).collect(),
            );
        }
        report.integral = Some(groups);
    }
    for coeff in coefficients {
        if let Coefficients::Prime(q) = *coeff {
            let ranks: Vec<usize> = boundaries
                .par_iter()
                .map(|b| rank_mod_prime(b, q))
                .collect();
            let rank = |d: usize| if d == 0 || d >= dims { 0 } else { ranks[d - 1] };
            let betti = (0..dims)
                .map(|d| counts[d] - rank(d) - rank(d + 1))
                .collect();
            report.field_betti.insert(*coeff, betti);
        }
    }
    Ok(report)
}

pub fn euler_from_betti(report: &HomologyReport, field: Coefficients) -> Result<i64> {
    report.euler_from_betti(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::poset::{build_reduced_partition_lattice, build_reduced_subset_lattice};

    const ALL: [Coefficients; 4] = [
        Coefficients::Integers,
        Coefficients::Rationals,
        Coefficients::Prime(2),
        Coefficients::Prime(5),
    ];

    fn summary(c: &DeltaComplex) -> String {
        homology(c, &[Coefficients::Integers])
            .unwrap()
            .integral_summary()
            .unwrap()
    }

    #[test]
    fn circle_and_point() {
        let circle =
            DeltaComplex::simplicial_closure(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(summary(&circle), "H_0 = Z, H_1 = Z");
        let pt = DeltaComplex::new(vec![1], vec![vec![]], None).unwrap();
        let r = homology(&pt, &ALL).unwrap();
        assert_eq!(r.integral_summary().unwrap(), "H_0 = Z");
        assert_eq!(r.euler_from_betti(Coefficients::Rationals).unwrap(), 1);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // Minimal Δ-complex RP²: one vertex, edges a and b, two triangles,
        // H_1 = Z/2 and H_2 = 0 over Z, but H_2 = F_2 over F_2.
        let c = DeltaComplex::new(
            vec![1, 2, 2],
            vec![vec![], vec![0, 0, 0, 0], vec![1, 0, 0, 0, 1, 0]],
            None,
        )
        .unwrap();
        c.check_simplicial_identities().unwrap();
        let r = homology(&c, &ALL).unwrap();
        assert_eq!(r.integral_summary().unwrap(), "H_0 = Z, H_1 = Z/2, H_2 = 0");
        assert_eq!(r.betti(Coefficients::Prime(2)).unwrap(), &[1, 1, 1]);
        assert_eq!(r.betti(Coefficients::Prime(5)).unwrap(), &[1, 0, 0]);
        for k in [
            Coefficients::Rationals,
            Coefficients::Prime(2),
            Coefficients::Prime(5),
        ] {
            assert_eq!(r.euler_from_betti(k).unwrap(), c.euler_characteristic());
        }
    }

    #[test]
    fn lattices_at_five() {
        let l5 = order_complex(&build_reduced_subset_lattice(5).unwrap());
        assert_eq!(summary(&l5), "H_0 = Z, H_1 = 0, H_2 = 0, H_3 = Z");
        let pi5 = order_complex(&build_reduced_partition_lattice(5).unwrap());
        assert_eq!(summary(&pi5), "H_0 = Z, H_1 = 0, H_2 = Z^24");
    }

    #[test]
    fn errors() {
        let pt = DeltaComplex::new(vec![1], vec![vec![]], None).unwrap();
        assert!(homology(&pt, &[Coefficients::Prime(4)]).is_err());
        assert!("F6".parse::<Coefficients>().is_err());
        assert!("R".parse::<Coefficients>().is_err());
        let r = homology(&pt, &[Coefficients::Prime(2)]).unwrap();
        assert!(matches!(
            r.euler_from_betti(Coefficients::Rationals),
            Err(Error::FieldNotComputed(_))
        ));
        assert_eq!(parse_coefficient_list("Z,Q,F2,F5").unwrap(), ALL.to_vec());
    }

    #[test]
    fn empty_complex() {
        let r = homology(&DeltaComplex::empty(), &ALL).unwrap();
        assert_eq!(r.integral.unwrap(), vec![]);
    }

    #[test]
    fn document_shape() {
        let circle =
            DeltaComplex::simplicial_closure(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let r = homology(&circle, &[Coefficients::Integers]).unwrap();
        let doc = serde_json::to_string(&r.to_document(Coefficients::Integers).unwrap()).unwrap();
        assert_eq!(
            doc,
            r#"{"coefficients":"Z","groups":[{"dim":0,"free_rank":1,"torsion":[]},{"dim":1,"free_rank":1,"torsion":[]}]}"#
        );
    }
}
