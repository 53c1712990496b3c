//! Exact symmetric functions in the power-sum, homogeneous, monomial and
//! Schur bases.
//!
//! Plethysm is computed in the power-sum basis, where `p_k[g]` rescales
//! every `p_j` in `g` to `p_{jk}`. Schur coefficients are then read off
//! with irreducible characters of the symmetric group (see
//! [`characters`]); the monomial brute force in [`oracle`] recovers the
//! same coefficients along an independent route.

pub mod characters;
pub mod oracle;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

pub use characters::{character_value, CharacterTable};
pub use oracle::{kostka, monomial_oracle_expand, schur_from_monomials};

pub type Rational = BigRational;

/// Which basis a [`SymExpr`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// power sums `p_λ`
    P,
    /// complete homogeneous `h_λ`
    H,
    /// monomial `m_λ`
    M,
    /// Schur `s_λ`
    S,
}

/// A homogeneous symmetric function with exact rational coefficients.
///
/// Zero coefficients are never stored, so two expressions are equal exactly
/// when their coefficient tables are.
#[derive(Clone, PartialEq, Eq)]
pub struct SymExpr {
    basis: Basis,
    degree: usize,
    terms: BTreeMap<Partition, Rational>,
}

impl SymExpr {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        SymExpr {
            basis,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant 1 in basis `P` (indexed by the empty partition).
    pub fn one() -> Self {
        SymExpr::basis_element(Basis::P, Partition::empty())
    }

    pub fn basis_element(basis: Basis, p: Partition) -> Self {
        let mut e = SymExpr::zero(basis, p.size());
        e.terms.insert(p, Rational::one());
        e
    }

    /// Builds an expression from `(partition, coefficient)` pairs, summing
    /// repeats and dropping zeros.
    pub fn from_terms(
        basis: Basis,
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Result<Self> {
        let mut e = SymExpr::zero(basis, degree);
        for (p, c) in terms {
            if p.size() != degree {
                return Err(Error::usage(format!("term {p} does not have degree {degree}")));
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Partition) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in lexicographic order of the index partitions.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, p: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &SymExpr) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::usage(format!(
                "basis mismatch: {:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::usage(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymExpr) -> Result<SymExpr> {
        self.check_compatible(other)?;
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        if !self.is_zero() {
            for (p, c) in &other.terms {
                out.add_term(p.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymExpr) -> Result<SymExpr> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> SymExpr {
        let mut out = SymExpr::zero(self.basis, self.degree);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * factor);
        }
        out
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// The first term (in reverse-lexicographic order) with a negative
    /// coefficient.
    pub fn first_negative(&self) -> Option<(&Partition, &Rational)> {
        self.terms.iter().rev().find(|(_, c)| c.is_negative())
    }

    /// Canonical JSON form; terms are listed in reverse-lexicographic order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| {
                serde_json::json!({
                    "partition": p,
                    "num": big_number(c.numer()),
                    "den": big_number(c.denom()),
                })
            })
            .collect();
        serde_json::json!({
            "basis": self.basis,
            "degree": self.degree,
            "terms": terms,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SymExpr> {
        #[derive(Deserialize)]
        struct Term {
            partition: Partition,
            num: serde_json::Number,
            den: serde_json::Number,
        }
        #[derive(Deserialize)]
        struct Raw {
            basis: Basis,
            degree: usize,
            terms: Vec<Term>,
        }
        let raw: Raw = serde_json::from_value(value.clone())?;
        let parse = |n: &serde_json::Number| -> Result<BigInt> {
            n.to_string()
                .parse::<BigInt>()
                .map_err(|_| Error::usage(format!("coefficient {n} is not an integer")))
        };
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let den = parse(&t.den)?;
            if den.is_zero() {
                return Err(Error::usage("zero denominator"));
            }
            terms.push((t.partition, Rational::new(parse(&t.num)?, den)));
        }
        SymExpr::from_terms(raw.basis, raw.degree, terms)
    }
}

pub(crate) fn big_number(n: &BigInt) -> serde_json::Value {
    // arbitrary_precision keeps every digit of the decimal string
    serde_json::Value::Number(n.to_string().parse().expect("decimal integer"))
}

impl fmt::Debug for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let name = match self.basis {
            Basis::P => "p",
            Basis::H => "h",
            Basis::M => "m",
            Basis::S => "s",
        };
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let sep = if i == 0 { "" } else { " + " };
            if c.is_one() {
                write!(f, "{sep}{name}[{}]", p.label())?;
            } else {
                write!(f, "{sep}{c}*{name}[{}]", p.label())?;
            }
        }
        Ok(())
    }
}

fn require_basis(f: &SymExpr, basis: Basis) -> Result<()> {
    if f.basis != basis {
        return Err(Error::usage(format!("expected basis {basis:?}, got {:?}", f.basis)));
    }
    Ok(())
}

/// The power-sum expansion of `h_λ`: `h_n = Σ_{μ ⊢ n} p_μ / z_μ`, extended
/// multiplicatively over the parts of `λ`.
pub fn h_to_p(lambda: &Partition) -> Result<SymExpr> {
    let mut out = SymExpr::one();
    for &part in lambda.parts() {
        out = multiply_p(&out, &h_single_to_p(part)?)?;
    }
    Ok(out)
}

fn h_single_to_p(n: usize) -> Result<SymExpr> {
    let mut e = SymExpr::zero(Basis::P, n);
    for mu in enumerate_partitions(n)? {
        let z = BigInt::from(mu.z());
        e.add_term(mu, Rational::new(BigInt::one(), z));
    }
    Ok(e)
}

/// Product in the power-sum basis, `p_λ · p_μ = p_{λ ⊔ μ}`.
pub fn multiply_p(f: &SymExpr, g: &SymExpr) -> Result<SymExpr> {
    require_basis(f, Basis::P)?;
    require_basis(g, Basis::P)?;
    let mut out = SymExpr::zero(Basis::P, f.degree + g.degree);
    let mut acc: HashMap<Partition, Rational> = HashMap::new();
    for (a, ca) in &f.terms {
        for (b, cb) in &g.terms {
            *acc.entry(a.union(b)).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    for (p, c) in acc {
        out.add_term(p, c);
    }
    Ok(out)
}

/// `p_k[g]`: every `p_j` occurring in `g` becomes `p_{jk}`.
fn power_sum_plethysm(k: usize, g: &SymExpr) -> SymExpr {
    let mut out = SymExpr::zero(Basis::P, k * g.degree);
    for (p, c) in &g.terms {
        let scaled = Partition::from_unsorted(p.parts().iter().map(|&j| j * k));
        out.add_term(scaled, c.clone());
    }
    out
}

/// The plethysm `f[g]` of two power-sum expressions.
pub fn plethysm(f: &SymExpr, g: &SymExpr) -> Result<SymExpr> {
    require_basis(f, Basis::P)?;
    require_basis(g, Basis::P)?;
    if g.is_zero() {
        return Err(Error::usage("plethysm with a zero inner function"));
    }
    let mut cache: HashMap<usize, SymExpr> = HashMap::new();
    let mut out = SymExpr::zero(Basis::P, f.degree * g.degree);
    for (mu, c) in &f.terms {
        let mut term = SymExpr::one();
        for &k in mu.parts() {
            let factor = cache.entry(k).or_insert_with(|| power_sum_plethysm(k, g));
            term = multiply_p(&term, factor)?;
        }
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// `h_ν[h_μ]` in the power-sum basis.
pub fn plethysm_h(nu: &Partition, mu: &Partition) -> Result<SymExpr> {
    plethysm(&h_to_p(nu)?, &h_to_p(mu)?)
}

/// `⟨f, s_λ⟩ = Σ_μ f_μ χ^λ(μ)` for `f` in the power-sum basis.
pub fn schur_coefficient(f: &SymExpr, lambda: &Partition) -> Result<Rational> {
    require_basis(f, Basis::P)?;
    if lambda.size() != f.degree {
        return Err(Error::usage(format!(
            "shape {lambda} has size {}, expression has degree {}",
            lambda.size(),
            f.degree
        )));
    }
    let mut total = Rational::zero();
    for (mu, c) in &f.terms {
        total += c * Rational::from_integer(BigInt::from(character_value(lambda, mu)?));
    }
    Ok(total)
}

/// The full Schur expansion of a power-sum expression.
pub fn schur_expand(f: &SymExpr) -> Result<SymExpr> {
    require_basis(f, Basis::P)?;
    let table = CharacterTable::for_degree(f.degree)?;
    // clear denominators so the accumulation runs over integers
    let den = f
        .terms
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut acc = vec![BigInt::zero(); table.shapes().len()];
    for (mu, c) in &f.terms {
        let weight = c.numer() * (&den / c.denom());
        let column = table.column(mu)?;
        for (slot, &chi) in acc.iter_mut().zip(column.iter()) {
            if chi != 0 {
                *slot += &weight * BigInt::from(chi);
            }
        }
    }
    let mut out = SymExpr::zero(Basis::S, f.degree);
    for (lambda, value) in table.shapes().iter().zip(acc) {
        out.add_term(lambda.clone(), Rational::new(value, den.clone()));
    }
    Ok(out)
}

/// `a_{ν[μ]}^λ`, the coefficient of `s_λ` in `h_ν[h_μ]`.
pub fn plethysm_coefficient(nu: &Partition, mu: &Partition, lambda: &Partition) -> Result<BigInt> {
    if lambda.size() != nu.size() * mu.size() {
        return Err(Error::usage(format!(
            "shape {lambda} does not have size |{nu}|·|{mu}|"
        )));
    }
    let c = plethysm_schur(nu, mu)?.coefficient(lambda);
    if !c.is_integer() {
        return Err(Error::CrossCheck(format!("non-integral coefficient {c} of s{lambda}")));
    }
    Ok(c.to_integer())
}

type PlethysmMemo = RwLock<HashMap<(Partition, Partition), Arc<SymExpr>>>;

/// Memoized Schur expansion of `h_ν[h_μ]`, shared across the process.
pub fn plethysm_schur(nu: &Partition, mu: &Partition) -> Result<Arc<SymExpr>> {
    static MEMO: OnceLock<PlethysmMemo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (nu.clone(), mu.clone());
    if let Some(hit) = memo.read().expect("plethysm memo poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let expanded = Arc::new(schur_expand(&plethysm_h(nu, mu)?)?);
    Ok(memo
        .write()
        .expect("plethysm memo poisoned")
        .entry(key)
        .or_insert(expanded)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p_expr(terms: &[(Partition, Rational)]) -> SymExpr {
        let degree = terms[0].0.size();
        SymExpr::from_terms(Basis::P, degree, terms.iter().cloned()).unwrap()
    }

    fn s_expr(terms: &[(Partition, i64)]) -> SymExpr {
        let degree = terms[0].0.size();
        SymExpr::from_terms(Basis::S, degree, terms.iter().map(|(p, c)| (p.clone(), q(*c, 1)))).unwrap()
    }

    #[test]
    fn h_to_p_examples() {
        assert_eq!(h_to_p(&partition![1]).unwrap(), p_expr(&[(partition![1], q(1, 1))]));
        let h2 = p_expr(&[(partition![2], q(1, 2)), (partition![1, 1], q(1, 2))]);
        assert_eq!(h_to_p(&partition![2]).unwrap(), h2);
        let h21 = multiply_p(&h2, &h_to_p(&partition![1]).unwrap()).unwrap();
        assert_eq!(h_to_p(&partition![2, 1]).unwrap(), h21);
    }

    #[test]
    fn multiply_examples() {
        let p = |x: Partition| SymExpr::basis_element(Basis::P, x);
        assert_eq!(multiply_p(&p(partition![2]), &p(partition![3])).unwrap(), p(partition![3, 2]));
        assert_eq!(multiply_p(&p(partition![1]), &p(partition![1])).unwrap(), p(partition![1, 1]));
        let h2 = h_to_p(&partition![2]).unwrap();
        let expected = p_expr(&[
            (partition![2, 2], q(1, 4)),
            (partition![2, 1, 1], q(1, 2)),
            (partition![1, 1, 1, 1], q(1, 4)),
        ]);
        assert_eq!(multiply_p(&h2, &h2).unwrap(), expected);
        let s = SymExpr::basis_element(Basis::S, partition![1]);
        assert!(matches!(multiply_p(&s, &h2), Err(Error::Usage(_))));
    }

    #[test]
    fn plethysm_identities() {
        let p = |x: Partition| SymExpr::basis_element(Basis::P, x);
        assert_eq!(plethysm(&p(partition![2]), &p(partition![3])).unwrap(), p(partition![6]));
        let f = h_to_p(&partition![3, 1]).unwrap();
        assert_eq!(plethysm(&f, &p(partition![1])).unwrap(), f);
        assert_eq!(plethysm(&p(partition![1]), &f).unwrap(), f);
    }

    #[test]
    fn h2_of_h2_power_sums() {
        // h2[h2] = (h2(p1²) + h2(p2)) / 2 expanded by hand
        let expected = p_expr(&[
            (partition![1, 1, 1, 1], q(1, 8)),
            (partition![2, 1, 1], q(1, 4)),
            (partition![2, 2], q(3, 8)),
            (partition![4], q(1, 4)),
        ]);
        assert_eq!(plethysm_h(&partition![2], &partition![2]).unwrap(), expected);
    }

    #[test]
    fn plethysm_h_degenerate_cases() {
        let mu = partition![2, 1];
        assert_eq!(plethysm_h(&partition![1], &mu).unwrap(), h_to_p(&mu).unwrap());
        assert_eq!(plethysm_h(&mu, &partition![1]).unwrap(), h_to_p(&mu).unwrap());
        let h2 = h_to_p(&partition![2]).unwrap();
        assert_eq!(
            plethysm_h(&partition![1, 1], &partition![2]).unwrap(),
            multiply_p(&h2, &h2).unwrap()
        );
    }

    #[test]
    fn plethysm_is_associative_and_a_morphism_in_first_argument() {
        let hs: Vec<SymExpr> = (1..=3).map(|n| h_to_p(&Partition::row(n)).unwrap()).collect();
        for f in &hs {
            for g in &hs {
                for h in &hs {
                    let left = plethysm(&plethysm(f, g).unwrap(), h).unwrap();
                    let right = plethysm(f, &plethysm(g, h).unwrap()).unwrap();
                    assert_eq!(left, right);
                    if f.degree() == g.degree() {
                        let sum = f.add(g).unwrap();
                        assert_eq!(
                            plethysm(&sum, h).unwrap(),
                            plethysm(f, h).unwrap().add(&plethysm(g, h).unwrap()).unwrap()
                        );
                    }
                    let prod = multiply_p(f, g).unwrap();
                    assert_eq!(
                        plethysm(&prod, h).unwrap(),
                        multiply_p(&plethysm(f, h).unwrap(), &plethysm(g, h).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn schur_coefficient_examples() {
        let h2 = h_to_p(&partition![2]).unwrap();
        assert_eq!(schur_coefficient(&h2, &partition![2]).unwrap(), q(1, 1));
        let h11 = h_to_p(&partition![1, 1]).unwrap();
        assert_eq!(schur_coefficient(&h11, &partition![1, 1]).unwrap(), q(1, 1));
        let f = plethysm_h(&partition![2], &partition![2]).unwrap();
        assert_eq!(schur_coefficient(&f, &partition![3, 1]).unwrap(), q(0, 1));
        assert!(schur_coefficient(&f, &partition![3]).is_err());
    }

    #[test]
    fn classical_schur_expansions() {
        let expand = |a: Partition, b: Partition| (*plethysm_schur(&a, &b).unwrap()).clone();
        assert_eq!(
            expand(partition![2], partition![2]),
            s_expr(&[(partition![4], 1), (partition![2, 2], 1)])
        );
        assert_eq!(
            expand(partition![2], partition![3]),
            s_expr(&[(partition![6], 1), (partition![4, 2], 1)])
        );
        assert_eq!(
            expand(partition![3], partition![2]),
            s_expr(&[(partition![6], 1), (partition![4, 2], 1), (partition![2, 2, 2], 1)])
        );
    }

    #[test]
    fn plethysm_coefficient_examples() {
        let a = |n: Partition, m: Partition, l: Partition| plethysm_coefficient(&n, &m, &l).unwrap();
        assert_eq!(a(partition![2], partition![2], partition![2, 2]), BigInt::from(1));
        assert_eq!(a(partition![3], partition![2], partition![2, 2, 2]), BigInt::from(1));
        assert_eq!(a(partition![2], partition![3], partition![2, 2, 2]), BigInt::from(0));
        assert!(plethysm_coefficient(&partition![2], &partition![3], &partition![5]).is_err());
    }

    #[test]
    fn json_is_canonical_and_round_trips() {
        let e = (*plethysm_schur(&partition![2], &partition![3]).unwrap()).clone();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"basis":"S","degree":6,"terms":[{"partition":[6],"num":1,"den":1},{"partition":[4,2],"num":1,"den":1}]}"#
        );
        let back = SymExpr::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        let big = h_to_p(&partition![24]).unwrap();
        assert_eq!(SymExpr::from_json(&big.to_json()).unwrap(), big);
    }
}
