//! Permutations of `[n]` and finite permutation groups given by generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 1_000_000;

/// A permutation of `[n]`. `images[i]` is the image of point `i + 1`,
/// stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from one-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::invalid(format!(
                    "{images:?} is not a bijection on [{n}]"
                )));
            }
            out.push((x - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// The cycle `(1 2 … n)`.
    pub fn long_cycle(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        }
    }

    /// Parses a product of disjoint cycles such as `(1 2 3 4 5)` or
    /// `(2 3)(4 5)`; `()` and the empty string denote the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(format!("expected '(' in cycle string {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::parse(format!("unclosed cycle in {s:?}")))?;
            let points = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::parse(format!("bad point {t:?} in {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &x in &points {
                if x == 0 || x > degree {
                    return Err(Error::parse(format!(
                        "point {x} in {s:?} is outside [1, {degree}]"
                    )));
                }
                if std::mem::replace(&mut used[x - 1], true) {
                    return Err(Error::parse(format!("point {x} repeats in {s:?}")));
                }
            }
            for (k, &x) in points.iter().enumerate() {
                let next = points[(k + 1) % points.len()];
                images[x - 1] = (next - 1) as u32;
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a one-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A finite permutation group with all elements enumerated.
///
/// Element 0 is always the identity; the rest follow breadth-first
/// discovery order from the generators, which makes the enumeration
/// deterministic.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::generate_capped(degree, generators, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn generate_capped(
        degree: usize,
        generators: Vec<Permutation>,
        max_order: usize,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                degree: g.degree(),
                ground: degree,
            });
        }
        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut elements = vec![identity];
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in &generators {
                let next = g.compose(&current);
                if !index.contains_key(&next) {
                    if elements.len() >= max_order {
                        return Err(Error::ResourceCap(format!(
                            "group order exceeds the cap of {max_order}"
                        )));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// The cyclic group generated by `(1 2 … n)`.
    pub fn cyclic(n: usize) -> Self {
        Self::generate(n, vec![Permutation::long_cycle(n)]).expect("cyclic group of degree n")
    }

    /// Parses a generator list from cycle strings.
    pub fn from_cycle_strings<S: AsRef<str>>(degree: usize, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::generate(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Invariant factors `d_1 | d_2 | …` (all > 1) of an abelian group, or
    /// `None` if the group is not abelian.
    ///
    /// Computed from counts of elements whose order divides `q^k` for each
    /// prime `q` dividing the group order.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let orders: Vec<usize> = self.elements.iter().map(Permutation::order).collect();
        // exponents[q] = multiset of exponents e with q^e a cyclic factor
        let mut exponents: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for q in prime_factors(self.order()) {
            let mut logs = vec![0u32];
            let mut k = 1u32;
            loop {
                let qk = q.pow(k);
                let count = orders.iter().filter(|&&o| qk % o == 0).count();
                let log = ilog_exact(count, q);
                if log == *logs.last().unwrap() {
                    break;
                }
                logs.push(log);
                k += 1;
            }
            // #factors with exponent >= k is logs[k] - logs[k-1].
            let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            let mut exps = Vec::new();
            for (k, w) in at_least.iter().enumerate() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(w - next) {
                    exps.push(k as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            exponents.insert(q, exps);
        }
        let width = exponents.values().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u64> = (0..width)
            .map(|i| {
                exponents
                    .iter()
                    .map(|(&q, e)| e.get(i).map_or(1, |&k| (q as u64).pow(k)))
                    .product()
            })
            .collect();
        factors.reverse();
        Some(factors)
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog_exact(mut x: usize, q: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % q, 0);
        x /= q;
        k += 1;
    }
    k
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g = Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap();
        assert_eq!(g, Permutation::long_cycle(5));
        assert_eq!(g.to_string(), "(1 2 3 4 5)");
        let h = Permutation::parse_cycles("(2 3)(4 5)", 5).unwrap();
        assert_eq!(h.to_string(), "(2 3)(4 5)");
        assert_eq!(h.order(), 2);
        assert!(Permutation::parse_cycles("()", 4).unwrap().is_identity());
        assert!(Permutation::parse_cycles("", 4).unwrap().is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 x)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let b = Permutation::parse_cycles("(1 2)", 3).unwrap();
        // a∘b: 1 -> 2 -> 3
        assert_eq!(a.compose(&b).apply(1), 3);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn group_orders() {
        assert_eq!(PermutationGroup::cyclic(5).order(), 5);
        let s4 = PermutationGroup::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(!s4.is_abelian());
        assert_eq!(s4.abelian_invariants(), None);
        assert!(PermutationGroup::trivial(4).elements()[0].is_identity());
        assert!(matches!(
            PermutationGroup::generate_capped(4, vec![Permutation::long_cycle(4)], 3),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn abelian_invariants() {
        assert_eq!(
            PermutationGroup::cyclic(5).abelian_invariants(),
            Some(vec![5])
        );
        assert_eq!(
            PermutationGroup::trivial(3).abelian_invariants(),
            Some(vec![])
        );
        let v4 = PermutationGroup::from_cycle_strings(4, &["(1 2)", "(3 4)"]).unwrap();
        assert_eq!(v4.abelian_invariants(), Some(vec![2, 2]));
        // Z/2 x Z/3 = Z/6
        let c6 = PermutationGroup::from_cycle_strings(5, &["(1 2)", "(3 4 5)"]).unwrap();
        assert_eq!(c6.abelian_invariants(), Some(vec![6]));
        // Z/2 x Z/4
        let z2z4 = PermutationGroup::from_cycle_strings(6, &["(1 2)", "(3 4 5 6)"]).unwrap();
        assert_eq!(z2z4.abelian_invariants(), Some(vec![2, 4]));
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
