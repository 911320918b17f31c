//! Sparse elimination over the integers and over prime fields.
//!
//! The engine works on rows of sparse entries and only ever needs the
//! diagonal it produces: row operations clear a pivot column, after which
//! the pivot row is cleared by column operations that touch no other row.
//! Unit pivots are taken first, choosing for each column the unit in the
//! shortest row; the remaining (usually tiny) non-unit residue is reduced by
//! repeatedly pivoting on an entry of minimal magnitude, tie-broken by the
//! fill estimate `row length + column length`.
//!
//! Integer elimination runs in `i64` with checked arithmetic and restarts in
//! `BigInt` on overflow, so results are always exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntegerMatrix;

/// Diagonal form of an integer matrix under unimodular row and column
/// operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors `d_1 | d_2 | … | d_r`.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    pub fn from_diagonal(diagonal: Vec<BigInt>) -> Self {
        let invariant_factors = normalize_diagonal(diagonal);
        SmithForm {
            rank: invariant_factors.len(),
            invariant_factors,
        }
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.invariant_factors.iter().all(|d| d.is_positive())
            && self
                .invariant_factors
                .windows(2)
                .all(|w| Zero::is_zero(&(&w[1] % &w[0])))
    }
}

/// Turns the nonzero diagonal of a diagonal matrix into invariant factors
/// by repeated `(a, b) → (gcd, lcm)` exchanges.
pub fn normalize_diagonal(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let mut ones = 0usize;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diagonal {
        if Zero::is_zero(&d) {
            continue;
        }
        let d = d.abs();
        if d.is_one() {
            ones += 1;
        } else {
            rest.push(d);
        }
    }
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = &rest[i] / &g * &rest[j];
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    let mut out = vec![BigInt::one(); ones];
    out.extend(rest);
    out.sort();
    out
}

/// Invariant factors of `m`.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let fits = m.max_abs_entry().to_i64().is_some_and(|v| v < i64::MAX / 4);
    if fits {
        let rows = engine_rows(m, |v| v.to_i64().expect("entry fits in i64"));
        if let Ok(diag) = Eliminator::new(m.rows(), rows).run() {
            return SmithForm::from_diagonal(diag.into_iter().map(BigInt::from).collect());
        }
    }
    let rows = engine_rows(m, Clone::clone);
    let diag = Eliminator::new(m.rows(), rows)
        .run()
        .unwrap_or_else(|_| unreachable!("BigInt arithmetic cannot overflow"));
    SmithForm::from_diagonal(diag)
}

/// Rank of `m` reduced modulo the prime `q`.
pub fn rank_mod_prime(m: &IntegerMatrix, q: u32) -> usize {
    let modulus = BigInt::from(q);
    let rows = engine_rows(m, |v| Fq {
        v: v.mod_floor(&modulus).to_u32().expect("residue below q"),
        q,
    });
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, x)| x.v != 0).collect())
        .collect();
    Eliminator::new(m.rows(), rows)
        .run()
        .unwrap_or_else(|_| unreachable!("field arithmetic cannot overflow"))
        .len()
}

/// Engine rows are the matrix columns; invariant factors and rank are
/// unchanged by transposition.
fn engine_rows<R>(m: &IntegerMatrix, conv: impl Fn(&BigInt) -> R) -> Vec<Vec<(u32, R)>> {
    (0..m.cols())
        .map(|c| m.column(c).iter().map(|(r, v)| (*r, conv(v))).collect())
        .collect()
}

#[derive(Debug)]
pub(crate) struct Overflow;

pub(crate) trait PivotRing: Clone + Debug {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// `q` such that `self − q·d` is zero or smaller in magnitude than `d`.
    fn quotient(&self, d: &Self) -> Result<Self, Overflow>;
    /// `self − q·x`.
    fn sub_mul(&self, q: &Self, x: &Self) -> Result<Self, Overflow>;
}

impl PivotRing for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }

    fn zero_like(&self) -> Self {
        0
    }

    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }

    fn quotient(&self, d: &Self) -> Result<Self, Overflow> {
        self.checked_div_euclid(*d).ok_or(Overflow)
    }

    fn sub_mul(&self, q: &Self, x: &Self) -> Result<Self, Overflow> {
        q.checked_mul(*x)
            .and_then(|p| self.checked_sub(p))
            .ok_or(Overflow)
    }
}

impl PivotRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn zero_like(&self) -> Self {
        BigInt::zero()
    }

    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }

    fn quotient(&self, d: &Self) -> Result<Self, Overflow> {
        Ok(self.div_floor(d))
    }

    fn sub_mul(&self, q: &Self, x: &Self) -> Result<Self, Overflow> {
        Ok(self - q * x)
    }
}

/// Element of the prime field `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fq {
    v: u32,
    q: u32,
}

impl Fq {
    fn inverse(self) -> u64 {
        let (q, mut base, mut exp, mut acc) =
            (self.q as u64, self.v as u64, self.q as u64 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            exp >>= 1;
        }
        acc
    }
}

impl PivotRing for Fq {
    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_unit(&self) -> bool {
        self.v != 0
    }

    fn zero_like(&self) -> Self {
        Fq { v: 0, q: self.q }
    }

    fn magnitude_lt(&self, _other: &Self) -> bool {
        false
    }

    fn quotient(&self, d: &Self) -> Result<Self, Overflow> {
        let v = self.v as u64 * d.inverse() % self.q as u64;
        Ok(Fq {
            v: v as u32,
            q: self.q,
        })
    }

    fn sub_mul(&self, q: &Self, x: &Self) -> Result<Self, Overflow> {
        let m = self.q as u64;
        let prod = q.v as u64 * x.v as u64 % m;
        let v = (self.v as u64 + m - prod) % m;
        Ok(Fq {
            v: v as u32,
            q: self.q,
        })
    }
}

struct Eliminator<R> {
    rows: Vec<Vec<(u32, R)>>,
    /// Rows that may hold an entry in each column; stale ids are purged
    /// lazily.
    cols: Vec<Vec<u32>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    pivots: Vec<R>,
}

impl<R: PivotRing> Eliminator<R> {
    fn new(ncols: usize, rows: Vec<Vec<(u32, R)>>) -> Self {
        let mut cols = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                cols[*c as usize].push(r as u32);
            }
        }
        let col_alive = cols.iter().map(|c| !c.is_empty()).collect();
        Eliminator {
            row_alive: rows.iter().map(|r| !r.is_empty()).collect(),
            rows,
            cols,
            col_alive,
            pivots: Vec::new(),
        }
    }

    fn run(mut self) -> Result<Vec<R>, Overflow> {
        self.unit_phase()?;
        self.general_phase()?;
        Ok(self.pivots)
    }

    fn entry(&self, r: usize, c: u32) -> Option<&R> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0)
            .ok()
            .map(|i| &row[i].1)
    }

    fn purge(&mut self, c: usize) {
        let rows = &self.rows;
        let alive = &self.row_alive;
        let list = &mut self.cols[c];
        list.retain(|&r| {
            alive[r as usize]
                && rows[r as usize]
                    .binary_search_by_key(&(c as u32), |e| e.0)
                    .is_ok()
        });
        list.sort_unstable();
        list.dedup();
    }

    /// `rows[t] -= f · rows[p]`.
    fn row_sub(&mut self, t: usize, f: &R, p: usize) -> Result<(), Overflow> {
        let pivot = std::mem::take(&mut self.rows[p]);
        let target = std::mem::take(&mut self.rows[t]);
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let mut ti = target.into_iter().peekable();
        let mut pi = pivot.iter().peekable();
        loop {
            let tc = ti.peek().map_or(u32::MAX, |e| e.0);
            let pc = pi.peek().map_or(u32::MAX, |e| e.0);
            if tc == u32::MAX && pc == u32::MAX {
                break;
            }
            if tc < pc {
                out.push(ti.next().unwrap());
            } else if pc < tc {
                let (c, x) = pi.next().unwrap();
                let v = x.zero_like().sub_mul(f, x)?;
                if !v.is_zero() {
                    self.cols[*c as usize].push(t as u32);
                    out.push((*c, v));
                }
            } else {
                let (c, a) = ti.next().unwrap();
                let (_, x) = pi.next().unwrap();
                let v = a.sub_mul(f, x)?;
                if !v.is_zero() {
                    out.push((c, v));
                }
            }
        }
        self.rows[t] = out;
        self.rows[p] = pivot;
        if self.rows[t].is_empty() {
            self.row_alive[t] = false;
        }
        Ok(())
    }

    /// Clears column `c` below/above the pivot at `(r, c)` with row
    /// operations. Returns whether any remainder was left in the column.
    fn clear_column(&mut self, r: usize, c: usize) -> Result<bool, Overflow> {
        self.purge(c);
        let a = self
            .entry(r, c as u32)
            .expect("pivot entry present")
            .clone();
        let others: Vec<u32> = self.cols[c]
            .iter()
            .copied()
            .filter(|&t| t as usize != r)
            .collect();
        let mut leftover = false;
        for t in others {
            let t = t as usize;
            let b = self
                .entry(t, c as u32)
                .expect("purged column lists live entries")
                .clone();
            let f = b.quotient(&a)?;
            self.row_sub(t, &f, r)?;
            leftover |= self.entry(t, c as u32).is_some();
        }
        Ok(leftover)
    }

    fn retire(&mut self, r: usize, c: usize) {
        let a = self
            .entry(r, c as u32)
            .expect("pivot entry present")
            .clone();
        self.pivots.push(a);
        self.row_alive[r] = false;
        self.col_alive[c] = false;
        self.cols[c].clear();
    }

    fn unit_phase(&mut self) -> Result<(), Overflow> {
        loop {
            let mut order: Vec<usize> = (0..self.cols.len())
                .filter(|&c| self.col_alive[c])
                .collect();
            for &c in &order {
                self.purge(c);
            }
            order.retain(|&c| !self.cols[c].is_empty());
            order.sort_by_key(|&c| (self.cols[c].len(), c));
            let mut progress = false;
            for c in order {
                if !self.col_alive[c] {
                    continue;
                }
                self.purge(c);
                let best = self.cols[c]
                    .iter()
                    .map(|&r| r as usize)
                    .filter(|&r| self.entry(r, c as u32).is_some_and(R::is_unit))
                    .min_by_key(|&r| (self.rows[r].len(), r));
                if let Some(r) = best {
                    // A unit pivot always clears its column exactly.
                    self.clear_column(r, c)?;
                    self.retire(r, c);
                    progress = true;
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }

    fn general_phase(&mut self) -> Result<(), Overflow> {
        loop {
            for c in 0..self.cols.len() {
                if self.col_alive[c] {
                    self.purge(c);
                }
            }
            let mut best: Option<(usize, usize)> = None;
            for r in (0..self.rows.len()).filter(|&r| self.row_alive[r]) {
                for (c, v) in &self.rows[r] {
                    let c = *c as usize;
                    let better = match best {
                        None => true,
                        Some((br, bc)) => {
                            let bv = self.entry(br, bc as u32).unwrap();
                            v.magnitude_lt(bv)
                                || (!bv.magnitude_lt(v)
                                    && self.rows[r].len() + self.cols[c].len()
                                        < self.rows[br].len() + self.cols[bc].len())
                        }
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
            let Some((r, c)) = best else {
                return Ok(());
            };
            if self.clear_column(r, c)? {
                continue;
            }
            if self.clear_pivot_row(r, c)? {
                continue;
            }
            self.retire(r, c);
        }
    }

    /// Column operations `col_j -= q · col_c` for every other entry of the
    /// pivot row; column `c` is already clear outside row `r`, so only row
    /// `r` changes. Returns whether any remainder was left.
    fn clear_pivot_row(&mut self, r: usize, c: usize) -> Result<bool, Overflow> {
        let a = self
            .entry(r, c as u32)
            .expect("pivot entry present")
            .clone();
        let row = std::mem::take(&mut self.rows[r]);
        let mut out = Vec::with_capacity(row.len());
        for (j, b) in row {
            if j as usize == c {
                out.push((j, b));
                continue;
            }
            let q = b.quotient(&a)?;
            let rem = b.sub_mul(&q, &a)?;
            if !rem.is_zero() {
                out.push((j, rem));
            }
        }
        let leftover = out.len() > 1;
        self.rows[r] = out;
        Ok(leftover)
    }
}
