//! Finite posets: the reduced partition lattice and the reduced subset
//! lattice, plus explicitly given posets.
//!
//! Element indices always form a linear extension of the order
//! (`u < v` implies `index(u) < index(v)`), so a chain is simply a strictly
//! increasing index tuple.

mod partition;
mod subset;

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub use partition::{all_partitions, Partition};
pub use subset::{SubsetElement, MAX_SUBSET_GROUND};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetKind {
    Partition,
    Subset,
    Explicit,
}

impl fmt::Display for PosetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PosetKind::Partition => "partition",
            PosetKind::Subset => "subset",
            PosetKind::Explicit => "explicit",
        })
    }
}

/// Payload carried by a poset element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PosetElement {
    Partition(Partition),
    Subset(SubsetElement),
    Label(String),
}

impl fmt::Display for PosetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetElement::Partition(p) => p.fmt(f),
            PosetElement::Subset(s) => s.fmt(f),
            PosetElement::Label(l) => f.write_str(l),
        }
    }
}

/// A finite poset with an explicit strict-order relation.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    kind: PosetKind,
    ground: usize,
    elements: Vec<PosetElement>,
    index: HashMap<PosetElement, usize>,
    /// `above[i]` is the strict up-set of element `i`.
    above: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    rank: Option<Vec<usize>>,
}

impl FinitePoset {
    /// Builds a poset from elements and a strict-order predicate.
    ///
    /// The predicate must be a strict order and the element sequence a
    /// linear extension of it; both are checked.
    pub fn from_relation(
        kind: PosetKind,
        ground: usize,
        elements: Vec<PosetElement>,
        less_than: impl Fn(&PosetElement, &PosetElement) -> bool,
        rank: Option<Vec<usize>>,
    ) -> Result<Self> {
        let len = elements.len();
        let mut above = vec![FixedBitSet::with_capacity(len); len];
        for (i, row) in above.iter_mut().enumerate() {
            for j in 0..len {
                if less_than(&elements[i], &elements[j]) {
                    if j <= i {
                        return Err(Error::invalid(format!(
                            "element order is not a linear extension: {} < {}",
                            elements[i], elements[j]
                        )));
                    }
                    row.insert(j);
                }
            }
        }
        Self::assemble(kind, ground, elements, above, rank)
    }

    /// Builds a poset from cover pairs `(lower, upper)`; the order is their
    /// transitive closure.
    pub fn from_covers(
        kind: PosetKind,
        ground: usize,
        elements: Vec<PosetElement>,
        covers: &[(usize, usize)],
    ) -> Result<Self> {
        let len = elements.len();
        let mut above = vec![FixedBitSet::with_capacity(len); len];
        for &(lo, hi) in covers {
            if lo >= len || hi >= len {
                return Err(Error::invalid(format!(
                    "cover ({lo}, {hi}) is out of range"
                )));
            }
            if lo >= hi {
                return Err(Error::invalid(format!(
                    "cover ({lo}, {hi}) does not respect the element order"
                )));
            }
            above[lo].insert(hi);
        }
        for i in (0..len).rev() {
            let direct: Vec<usize> = above[i].ones().collect();
            for j in direct {
                let (head, tail) = above.split_at_mut(j);
                head[i].union_with(&tail[0]);
            }
        }
        Self::assemble(kind, ground, elements, above, None)
    }

    fn assemble(
        kind: PosetKind,
        ground: usize,
        elements: Vec<PosetElement>,
        above: Vec<FixedBitSet>,
        rank: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate poset element {e}")));
            }
        }
        if let Some(r) = &rank {
            if r.len() != elements.len() {
                return Err(Error::invalid(
                    "rank vector length differs from element count",
                ));
            }
        }
        let covers = transitive_reduction(&above);
        Ok(FinitePoset {
            kind,
            ground,
            elements,
            index,
            above,
            covers,
            rank,
        })
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    /// Size of the ground set the elements live over (`n` or `p`); for
    /// explicit posets this is the element count.
    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PosetElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &PosetElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn less_than(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    /// Strict up-set of `i`, ascending.
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[i].ones()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn rank(&self) -> Option<&[usize]> {
        self.rank.as_deref()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.len()];
        for row in &self.above {
            for j in row.ones() {
                has_lower[j] = true;
            }
        }
        (0..self.len()).filter(|&i| !has_lower[i]).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.above[i].is_clear())
            .collect()
    }

    /// Number of maximal chains, counted as cover paths from minimal to
    /// maximal elements.
    pub fn count_maximal_chains(&self) -> u128 {
        let mut upper = vec![Vec::new(); self.len()];
        for &(lo, hi) in &self.covers {
            upper[lo].push(hi);
        }
        let mut paths = vec![0u128; self.len()];
        for i in (0..self.len()).rev() {
            paths[i] = if upper[i].is_empty() {
                1
            } else {
                upper[i].iter().map(|&j| paths[j]).sum()
            };
        }
        self.minimal_elements().iter().map(|&i| paths[i]).sum()
    }

    /// Number of chains with `l + 1` elements, for each `l`, computed by
    /// dynamic programming without enumerating them.
    pub fn chain_counts(&self) -> Vec<u128> {
        let n = self.len();
        // starting[v][l]: chains with l + 1 elements whose least element is v
        let mut starting: Vec<Vec<u128>> = vec![Vec::new(); n];
        for v in (0..n).rev() {
            let mut counts = vec![1u128];
            for w in self.above[v].ones() {
                for (l, &c) in starting[w].iter().enumerate() {
                    if counts.len() <= l + 1 {
                        counts.push(0);
                    }
                    counts[l + 1] += c;
                }
            }
            starting[v] = counts;
        }
        let mut total: Vec<u128> = Vec::new();
        for counts in &starting {
            if total.len() < counts.len() {
                total.resize(counts.len(), 0);
            }
            for (l, &c) in counts.iter().enumerate() {
                total[l] += c;
            }
        }
        total
    }

    /// Chains grouped by length: entry `l` holds all chains with `l + 1`
    /// elements as a flat, lexicographically sorted array with stride `l + 1`.
    pub(crate) fn chains_by_length(&self, max_length: Option<usize>) -> Vec<Vec<u32>> {
        let cap = max_length.unwrap_or(usize::MAX);
        let mut out: Vec<Vec<u32>> = Vec::new();
        if cap == 0 {
            return out;
        }
        let mut stack: Vec<u32> = Vec::new();
        for start in 0..self.len() {
            stack.push(start as u32);
            self.extend_chains(&mut stack, cap, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, stack: &mut Vec<u32>, cap: usize, out: &mut Vec<Vec<u32>>) {
        let len = stack.len();
        if out.len() < len {
            out.push(Vec::new());
        }
        out[len - 1].extend_from_slice(stack);
        if len == cap {
            return;
        }
        let top = *stack.last().unwrap() as usize;
        for next in self.above[top].ones() {
            stack.push(next as u32);
            self.extend_chains(stack, cap, out);
            stack.pop();
        }
    }
}

fn transitive_reduction(above: &[FixedBitSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, row) in above.iter().enumerate() {
        let mut reachable_in_two = FixedBitSet::with_capacity(row.len());
        for j in row.ones() {
            reachable_in_two.union_with(&above[j]);
        }
        covers.extend(row.difference(&reachable_in_two).map(|j| (i, j)));
    }
    covers
}

/// Every nonempty chain of the poset as an ascending index tuple.
///
/// Chains are ordered by length, then lexicographically. `max_length`
/// bounds the number of elements per chain.
pub fn enumerate_chains(poset: &FinitePoset, max_length: Option<usize>) -> Vec<Vec<usize>> {
    poset
        .chains_by_length(max_length)
        .into_iter()
        .enumerate()
        .flat_map(|(l, flat)| {
            flat.chunks(l + 1)
                .map(|c| c.iter().map(|&x| x as usize).collect())
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The reduced partition lattice: all partitions of `[n]` except the
/// discrete and the one-block partition, ordered by refinement.
///
/// Indices are sorted by rank (`n − #blocks`), then by canonical form.
pub fn build_reduced_partition_lattice(n: usize) -> Result<FinitePoset> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "the reduced partition lattice needs n >= 3, got {n}"
        )));
    }
    let mut parts: Vec<Partition> = all_partitions(n)
        .into_iter()
        .filter(|p| p.num_blocks() > 1 && p.num_blocks() < n)
        .collect();
    parts.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
    let rank = parts.iter().map(|p| n - p.num_blocks()).collect();
    let elements = parts.into_iter().map(PosetElement::Partition).collect();
    FinitePoset::from_relation(
        PosetKind::Partition,
        n,
        elements,
        |a, b| match (a, b) {
            (PosetElement::Partition(a), PosetElement::Partition(b)) => a != b && a.refines(b),
            _ => false,
        },
        Some(rank),
    )
}

/// The reduced subset lattice: all nonempty proper subsets of `[p]` under
/// inclusion. Indices are sorted by cardinality, then by member list.
pub fn build_reduced_subset_lattice(p: usize) -> Result<FinitePoset> {
    if p < 2 {
        return Err(Error::invalid(format!(
            "the reduced subset lattice needs p >= 2, got {p}"
        )));
    }
    if p > MAX_SUBSET_GROUND {
        return Err(Error::invalid(format!(
            "p = {p} exceeds the supported maximum {MAX_SUBSET_GROUND}"
        )));
    }
    let full = (1u64 << p) - 1;
    let mut subsets: Vec<SubsetElement> = (1..full)
        .map(|m| SubsetElement::from_mask(p, m))
        .collect::<Result<_>>()?;
    subsets.sort_by_cached_key(|s| (s.len(), s.members()));
    let rank = subsets.iter().map(SubsetElement::len).collect();
    let elements = subsets.into_iter().map(PosetElement::Subset).collect();
    FinitePoset::from_relation(
        PosetKind::Subset,
        p,
        elements,
        |a, b| match (a, b) {
            (PosetElement::Subset(a), PosetElement::Subset(b)) => a.is_proper_subset_of(b),
            _ => false,
        },
        Some(rank),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain(k: usize) -> FinitePoset {
        let elements = (0..k)
            .map(|i| PosetElement::Label(format!("a{i}")))
            .collect();
        FinitePoset::from_covers(PosetKind::Explicit, k, elements, &[]).unwrap()
    }

    #[test]
    fn small_cases() {
        let p3 = build_reduced_partition_lattice(3).unwrap();
        assert_eq!(p3.len(), 3);
        assert!(p3.covers().is_empty());
        let names: Vec<String> = p3.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, vec!["{1}|{2,3}", "{1,2}|{3}", "{1,3}|{2}"]);

        let l2 = build_reduced_subset_lattice(2).unwrap();
        assert_eq!(l2.len(), 2);
        assert!(l2.covers().is_empty());
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            build_reduced_partition_lattice(2),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            build_reduced_subset_lattice(1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn antichain_chains() {
        let a = antichain(3);
        assert_eq!(enumerate_chains(&a, None), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn two_chain() {
        let elements = vec![
            PosetElement::Label("a".into()),
            PosetElement::Label("b".into()),
        ];
        let p = FinitePoset::from_covers(PosetKind::Explicit, 2, elements, &[(0, 1)]).unwrap();
        assert_eq!(
            enumerate_chains(&p, None),
            vec![vec![0], vec![1], vec![0, 1]]
        );
        assert_eq!(enumerate_chains(&p, Some(1)), vec![vec![0], vec![1]]);
    }

    #[test]
    fn covers_must_follow_index_order() {
        let elements = vec![
            PosetElement::Label("a".into()),
            PosetElement::Label("b".into()),
        ];
        assert!(FinitePoset::from_covers(PosetKind::Explicit, 2, elements, &[(1, 0)]).is_err());
    }

    #[test]
    fn ranks_increase_along_covers() {
        for poset in [
            build_reduced_partition_lattice(5).unwrap(),
            build_reduced_subset_lattice(5).unwrap(),
        ] {
            let rank = poset.rank().unwrap();
            for &(lo, hi) in poset.covers() {
                assert_eq!(rank[lo] + 1, rank[hi]);
            }
        }
    }
}
