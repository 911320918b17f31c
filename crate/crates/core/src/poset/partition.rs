//! Set partitions of `{1, …, n}` in canonical block form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A set partition of `[n] = {1, …, n}`.
///
/// Always stored canonically: elements ascend inside each block and blocks
/// are ordered by their least element. Structural equality is therefore
/// partition equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from blocks given in any order, validating that
    /// they are disjoint, nonempty, and cover `[n]`.
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::invalid("partition blocks must be nonempty"));
            }
            for &x in &block {
                if x == 0 || x > n {
                    return Err(Error::invalid(format!("point {x} is outside [1, {n}]")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::invalid(format!("point {x} appears in two blocks")));
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::invalid(format!(
                "point {x} is not covered by any block"
            )));
        }
        out.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { n, blocks: out })
    }

    /// Builds the partition described by a restricted growth string
    /// (`labels[i]` is the block of point `i + 1`).
    pub fn from_block_labels(labels: &[usize]) -> Self {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i + 1);
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition {
            n: labels.len(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `labels[i]` is the index of the block containing point `i + 1`.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x - 1] = b;
            }
        }
        labels
    }

    /// Whether `self` is finer than or equal to `other` (every block of
    /// `self` lies inside a block of `other`).
    pub fn refines(&self, other: &Partition) -> bool {
        if self.n != other.n || self.blocks.len() < other.blocks.len() {
            return false;
        }
        let coarse = other.block_labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| coarse[x - 1] == coarse[b[0] - 1]))
    }

    /// Image under a point map `x ↦ image(x)`, recanonicalized.
    pub(crate) fn map_points(&self, image: impl Fn(usize) -> usize) -> Partition {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&x| image(x)).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { n: self.n, blocks }
    }
}

/// All set partitions of `[n]`, generated as restricted growth strings in
/// lexicographic order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut labels = vec![0usize; n];
    let mut max_prefix = vec![0usize; n];
    loop {
        out.push(Partition::from_block_labels(&labels));
        // Advance to the next restricted growth string.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if labels[i] <= max_prefix[i - 1] {
                labels[i] += 1;
                let m = max_prefix[i - 1].max(labels[i]);
                max_prefix[i] = m;
                for j in i + 1..n {
                    labels[j] = 0;
                    max_prefix[j] = m;
                }
                break;
            }
            i -= 1;
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write_set(f, block)?;
        }
        Ok(())
    }
}

pub(crate) fn write_set(f: &mut fmt::Formatter<'_>, items: &[usize]) -> fmt::Result {
    f.write_str("{")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

pub(crate) fn parse_set(s: &str) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::parse(format!("expected a braced set, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::parse(format!("bad point {t:?}: {e}")))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the canonical string form, e.g. `{1,3}|{2}|{4,5}`. The ground
    /// set size is the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s.split('|').map(parse_set).collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        Partition::new(n, blocks)
    }
}
