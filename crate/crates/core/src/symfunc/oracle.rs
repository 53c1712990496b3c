//! Independent route to Schur coefficients: explicit monomial expansion of
//! `h_ν[h_μ]` followed by a unitriangular Kostka solve.
//!
//! Nothing in here touches power sums or characters. The coefficient of
//! `x^λ` in `h_n[g]`, for `g` with nonnegative integer monomial coefficients,
//! counts size-`n` multisets of monomials of `g` (each monomial repeated as
//! often as its coefficient) whose product is `x^λ`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{Basis, Rational, SymExpr};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// Number of semistandard tableaux of shape `lambda` and content `content`,
/// by peeling off the largest letter as a horizontal strip.
pub fn kostka(lambda: &Partition, content: &Partition) -> Result<BigUint> {
    if lambda.size() != content.size() {
        return Err(Error::usage(format!(
            "shape {lambda} and content {content} have different sizes"
        )));
    }
    let mut memo = HashMap::new();
    Ok(kostka_rec(lambda, content.parts(), &mut memo))
}

fn kostka_rec(
    lambda: &Partition,
    content: &[usize],
    memo: &mut HashMap<(Partition, usize), BigUint>,
) -> BigUint {
    let Some((&last, rest)) = content.split_last() else {
        return if lambda.is_empty() { BigUint::one() } else { BigUint::zero() };
    };
    if lambda.len() > content.len() {
        return BigUint::zero();
    }
    let key = (lambda.clone(), content.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for rho in horizontal_strip_removals(lambda, last) {
        total += kostka_rec(&rho, rest, memo);
    }
    memo.insert(key, total.clone());
    total
}

/// Every `ρ ⊆ λ` such that `λ/ρ` is a horizontal strip of size `k`.
fn horizontal_strip_removals(lambda: &Partition, k: usize) -> Vec<Partition> {
    fn go(lambda: &Partition, row: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if row == lambda.len() {
            if left == 0 {
                out.push(Partition::from_unsorted(cur.iter().copied()));
            }
            return;
        }
        let hi = lambda.part(row);
        let lo = lambda.part(row + 1);
        for keep in (lo..=hi).rev() {
            let removed = hi - keep;
            if removed > left {
                break;
            }
            cur.push(keep);
            go(lambda, row + 1, left - removed, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Dense polynomial in `len(bound)` variables with every exponent vector
/// bounded componentwise by `bound`.
struct BoundedPoly<'a> {
    space: &'a ExponentSpace,
    coeffs: Vec<BigUint>,
}

struct ExponentSpace {
    bound: Vec<usize>,
    digits: Vec<Vec<usize>>,
    strides: Vec<usize>,
}

impl ExponentSpace {
    fn new(bound: &[usize]) -> Self {
        let mut strides = Vec::with_capacity(bound.len());
        let mut size = 1;
        for &b in bound {
            strides.push(size);
            size *= b + 1;
        }
        let digits = (0..size)
            .map(|idx| bound.iter().zip(&strides).map(|(&b, &s)| (idx / s) % (b + 1)).collect())
            .collect();
        ExponentSpace {
            bound: bound.to_vec(),
            digits,
            strides,
        }
    }

    fn size(&self) -> usize {
        self.digits.len()
    }

    /// Index of `a + scale·b`, if it stays within the bound.
    fn shift(&self, a: usize, b: usize, scale: usize) -> Option<usize> {
        let (da, db) = (&self.digits[a], &self.digits[b]);
        let mut idx = 0;
        for i in 0..self.bound.len() {
            let e = da[i] + scale * db[i];
            if e > self.bound[i] {
                return None;
            }
            idx += e * self.strides[i];
        }
        Some(idx)
    }

    fn degree(&self, idx: usize) -> usize {
        self.digits[idx].iter().sum()
    }
}

impl<'a> BoundedPoly<'a> {
    fn one(space: &'a ExponentSpace) -> Self {
        let mut coeffs = vec![BigUint::zero(); space.size()];
        coeffs[0] = BigUint::one();
        BoundedPoly { space, coeffs }
    }

    /// `h_m` truncated to the bound: every monomial of degree `m`.
    fn complete(space: &'a ExponentSpace, m: usize) -> Self {
        let coeffs = (0..space.size())
            .map(|idx| if space.degree(idx) == m { BigUint::one() } else { BigUint::zero() })
            .collect();
        BoundedPoly { space, coeffs }
    }

    fn mul(&self, other: &BoundedPoly<'a>) -> Self {
        let mut coeffs = vec![BigUint::zero(); self.space.size()];
        for (a, ca) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if let Some(idx) = self.space.shift(a, b, 1) {
                    coeffs[idx] += ca * cb;
                }
            }
        }
        BoundedPoly { space: self.space, coeffs }
    }

    /// `h_n[self]`: size-`n` multisets drawn from the monomials of `self`,
    /// monomial `x^a` available in `coeff(a)` distinguishable copies.
    fn complete_plethysm(&self, n: usize) -> Self {
        let size = self.space.size();
        // ways[j][idx]: multisets of j letters with product x^idx
        let mut ways = vec![vec![BigUint::zero(); size]; n + 1];
        ways[0][0] = BigUint::one();
        for (letter, copies) in self.coeffs.iter().enumerate() {
            if copies.is_zero() {
                continue;
            }
            if letter == 0 {
                // constant letters only arise from h_0 = 1, which has one copy
                continue;
            }
            let mut next = ways.clone();
            for j in 0..n {
                for idx in 0..size {
                    if ways[j][idx].is_zero() {
                        continue;
                    }
                    for r in 1..=(n - j) {
                        let Some(target) = self.space.shift(idx, letter, r) else {
                            break;
                        };
                        next[j + r][target] += &ways[j][idx] * multiset_count(copies, r);
                    }
                }
            }
            ways = next;
        }
        let mut coeffs = std::mem::take(&mut ways[n]);
        if !self.coeffs[0].is_zero() && n > 0 {
            // g = 1: the only multiset is n copies of the constant
            debug_assert!(self.coeffs.iter().skip(1).all(|c| c.is_zero()));
            coeffs[0] = BigUint::one();
        }
        BoundedPoly { space: self.space, coeffs }
    }
}

/// Multisets of size `r` from `c` distinguishable items: `C(c + r - 1, r)`.
fn multiset_count(c: &BigUint, r: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= c + BigUint::from(i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Monomial coefficients of `h_ν[h_μ]` in `k` variables.
///
/// The table is symmetric under permuting variables, so only dominant
/// weights are reported: the key `λ` stands for the coefficient of
/// `x_1^{λ_1} x_2^{λ_2} …`, i.e. of `m_λ`. Requires `k ≥ |ν|·|μ|` so that
/// every weight is visible.
pub fn monomial_oracle_expand(
    nu: &Partition,
    mu: &Partition,
    k: usize,
) -> Result<BTreeMap<Partition, BigUint>> {
    let degree = nu.size() * mu.size();
    if k < degree {
        return Err(Error::usage(format!(
            "{k} variables cannot see every weight of degree {degree}"
        )));
    }
    let mut out = BTreeMap::new();
    for lambda in enumerate_partitions(degree)? {
        let space = ExponentSpace::new(lambda.parts());
        let mut inner = BoundedPoly::one(&space);
        for &m in mu.parts() {
            inner = inner.mul(&BoundedPoly::complete(&space, m));
        }
        let mut outer = BoundedPoly::one(&space);
        for &n in nu.parts() {
            outer = outer.mul(&inner.complete_plethysm(n));
        }
        let top = space.size() - 1;
        let c = std::mem::take(&mut outer.coeffs[top]);
        if !c.is_zero() {
            out.insert(lambda, c);
        }
    }
    Ok(out)
}

/// Recovers the Schur expansion from a table of monomial coefficients by
/// solving the unitriangular system `M_λ = Σ_ρ a_ρ K_{ρλ}`, working down the
/// reverse-lexicographic order.
pub fn schur_from_monomials(table: &BTreeMap<Partition, BigUint>, degree: usize) -> Result<SymExpr> {
    let shapes = enumerate_partitions(degree)?;
    let mut solved: Vec<(Partition, BigInt)> = Vec::new();
    for lambda in &shapes {
        let mut value = BigInt::from(table.get(lambda).cloned().unwrap_or_default());
        for (rho, a) in &solved {
            let k = kostka(rho, lambda)?;
            if !k.is_zero() {
                value -= a * BigInt::from(k);
            }
        }
        if !value.is_zero() {
            solved.push((lambda.clone(), value));
        }
    }
    SymExpr::from_terms(
        Basis::S,
        degree,
        solved.into_iter().map(|(p, a)| (p, Rational::from_integer(a))),
    )
}
