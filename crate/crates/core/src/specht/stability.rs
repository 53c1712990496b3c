//! Stability of plethysm coefficients under adding a row to the inner
//! partition (`μ ↦ μ + μ̃`, `λ ↦ λ + (n|μ̃|)`) or a two-column block
//! (`μ ↦ μ + (2^{ℓ(μ)})`, `λ ↦ λ + (2^{nℓ(μ)})`), checked numerically and
//! exhibited through lifted semistandard homomorphisms.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{filling_key, key_fillings, ssh_family, theta_bar_coefficient, BijectiveTableau, FilledTableau};
use crate::error::{Error, Result};
use crate::linalg::{IncrementalRank, PivotOrder, Rational};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfunc::plethysm_coefficient;
use crate::tabloids::{BasisKey, Caps, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityMode {
    /// Add `μ̃` to `μ` and one row of `n|μ̃|` cells to `λ`.
    HStrip,
    /// Add two columns to `μ` and two columns of height `nℓ(μ)` to `λ`.
    TwoColumn,
}

impl FromStr for StabilityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(StabilityMode::HStrip),
            "2col" => Ok(StabilityMode::TwoColumn),
            other => Err(Error::usage(format!("unknown stability mode {other:?}; use h or 2col"))),
        }
    }
}

/// Row-wise concatenation `a ∨ b`.
pub fn join(a: &FilledTableau, b: &FilledTableau) -> Result<FilledTableau> {
    FilledTableau::from_rows(join_rows(a.rows(), b.rows()))
}

fn join_rows(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..a.len().max(b.len()))
        .map(|r| {
            let mut row = a.get(r).cloned().unwrap_or_default();
            row.extend(b.get(r).cloned().unwrap_or_default());
            row
        })
        .collect()
}

/// The letters of `μ̃^n` in one weakly increasing row.
fn h_block(n: usize, mu_tilde: &Partition) -> Vec<usize> {
    (0..n * mu_tilde.len())
        .flat_map(|k| std::iter::repeat(k + 1).take(mu_tilde.part(k / n)))
        .collect()
}

/// `τ ∨ τ̃` with `τ̃` the one-row tableau of content `μ̃^n`.
pub fn stability_lift_h(tau: &FilledTableau, n: usize, mu_tilde: &Partition) -> Result<FilledTableau> {
    let block = h_block(n, mu_tilde);
    if block.is_empty() {
        return Ok(tau.clone());
    }
    FilledTableau::from_rows(join_rows(tau.rows(), &[block]))
}

/// `τ̃ ∨ τ` with `τ̃` of shape `(2^k)` holding `r, r` in row `r`.
pub fn stability_lift_2col(tau: &FilledTableau, k: usize) -> Result<FilledTableau> {
    if tau.rows().len() > k {
        return Err(Error::usage(format!("{tau} has more than {k} rows")));
    }
    let block: Vec<Vec<usize>> = (1..=k).map(|r| vec![r, r]).collect();
    FilledTableau::from_rows(join_rows(&block, tau.rows()))
}

/// `t ∨ (N+1, …, N+extra)` in the first row.
pub fn lift_generator_h(t: &BijectiveTableau, extra: usize) -> Result<BijectiveTableau> {
    let size = t.shape().size();
    if extra == 0 {
        return Ok(t.clone());
    }
    BijectiveTableau::new(join_rows(t.rows(), &[(size + 1..=size + extra).collect()]))
}

/// `t̃ ∨ t` with row `r` of `t̃` holding `N+2r−1, N+2r`.
pub fn lift_generator_2col(t: &BijectiveTableau, k: usize) -> Result<BijectiveTableau> {
    let size = t.shape().size();
    let block: Vec<Vec<usize>> = (1..=k).map(|r| vec![size + 2 * r - 1, size + 2 * r]).collect();
    BijectiveTableau::new(join_rows(&block, t.rows()))
}

/// The lifted `μ`, `λ` and the lifting of fillings and generators.
struct Lift {
    mode: StabilityMode,
    n: usize,
    mu_tilde: Partition,
    k: usize,
    mu: Partition,
}

impl Lift {
    fn new(nu: &Partition, mu: &Partition, mu_tilde: &Partition, mode: StabilityMode) -> Lift {
        let n = nu.size();
        let (k, lifted_mu) = match mode {
            StabilityMode::HStrip => (0, mu.add(mu_tilde)),
            StabilityMode::TwoColumn => {
                let twos = Partition::from_unsorted(std::iter::repeat(2).take(mu.len()));
                (n * mu.len(), mu.add(&twos))
            }
        };
        Lift {
            mode,
            n,
            mu_tilde: mu_tilde.clone(),
            k,
            mu: lifted_mu,
        }
    }

    fn lambda(&self, lambda: &Partition) -> Partition {
        match self.mode {
            StabilityMode::HStrip => lambda.add(&Partition::row(self.n * self.mu_tilde.size())),
            StabilityMode::TwoColumn => {
                lambda.add(&Partition::from_unsorted(std::iter::repeat(2).take(self.k)))
            }
        }
    }

    fn tableau(&self, tau: &FilledTableau) -> Result<FilledTableau> {
        match self.mode {
            StabilityMode::HStrip => stability_lift_h(tau, self.n, &self.mu_tilde),
            StabilityMode::TwoColumn => stability_lift_2col(tau, self.k),
        }
    }

    fn generator(&self, t: &BijectiveTableau) -> Result<BijectiveTableau> {
        match self.mode {
            StabilityMode::HStrip => lift_generator_h(t, self.n * self.mu_tilde.size()),
            StabilityMode::TwoColumn => lift_generator_2col(t, self.k),
        }
    }

    /// Lifts a filling given cell by cell in reading order.
    fn filling(&self, shape: &Partition, fill: &[usize]) -> Result<Vec<usize>> {
        let mut rows = Vec::new();
        let mut rest = fill;
        for &len in shape.parts() {
            let (row, tail) = rest.split_at(len);
            rows.push(row.to_vec());
            rest = tail;
        }
        Ok(self.tableau(&FilledTableau::from_rows(rows)?)?.letters())
    }
}

/// A key of `M^{ν[μ']}` at which the lifted `Θ̄_{τ̂}(e(t̂))` has a nonzero
/// coefficient, with `t` the row reading tableau. The candidates are
/// `φ(f_t̂(τ̂))` and then the letter-wise lifts of the fillings behind each
/// key in the support of `Θ̄_τ(e(t))`. `None` when no candidate works.
pub fn lifted_nonvanishing(
    tau: &FilledTableau,
    nu: &Partition,
    mu_tilde: &Partition,
    mode: StabilityMode,
) -> Result<Option<BasisKey>> {
    let n = nu.size();
    let mu = super::split_content(&tau.content(), n)?;
    let lift = Lift::new(nu, &mu, mu_tilde, mode);
    let t = BijectiveTableau::row_reading(tau.shape());
    let t_hat = lift.generator(&t)?;
    let tau_hat = lift.tableau(tau)?;
    for key in lifted_candidates(tau, &t, nu, &lift, usize::MAX)? {
        if !theta_bar_coefficient(&tau_hat, &t_hat, nu, &key)?.is_zero() {
            return Ok(Some(key));
        }
    }
    Ok(None)
}

fn lifted_candidates(
    tau: &FilledTableau,
    t: &BijectiveTableau,
    nu: &Partition,
    lift: &Lift,
    limit: usize,
) -> Result<Vec<BasisKey>> {
    let n = nu.size();
    let ell = super::split_content(&tau.content(), n)?.len();
    let t_hat = lift.generator(t)?;
    let tau_hat = lift.tableau(tau)?;
    let canon = Space::plethystic(nu, &lift.mu).canonicalizer()?;
    let mut out = vec![filling_key(&tau_hat.letters(), &t_hat, n, lift.mu.len(), &canon)];
    let support = super::theta_bar(tau, t, nu)?;
    for (key, _) in support.terms() {
        for fill in key_fillings(t, nu, ell, key) {
            let lifted = lift.filling(tau.shape(), &fill)?;
            let k = filling_key(&lifted, &t_hat, n, lift.mu.len(), &canon);
            if !out.contains(&k) {
                out.push(k);
            }
            if out.len() >= limit {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// One line of a stability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub lambda: Partition,
    pub lifted_lambda: Partition,
    /// `a^λ_{ν,μ}`.
    pub r: BigInt,
    /// The lifted coefficient.
    pub lifted: BigInt,
    pub inequality_holds: bool,
    /// A lifted tableau `τ̂` from a family certified independent.
    pub witness_tableau: Option<FilledTableau>,
    /// Rank certified for the lifted family, when it was exhibited.
    pub lift_rank: Option<usize>,
}

impl StabilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.parts(),
            "r": self.r.to_string().parse::<serde_json::Number>().expect("integer"),
            "lifted": self.lifted.to_string().parse::<serde_json::Number>().expect("integer"),
            "inequality_holds": self.inequality_holds,
            "witness_tableau": self.witness_tableau.as_ref().map(|t| t.rows().to_vec()),
            "lifted_lambda": self.lifted_lambda.parts(),
            "lift_rank": self.lift_rank,
        })
    }
}

/// Largest `|ν||μ|` for which the lifted family is exhibited.
pub const EXHIBIT_DEGREE: usize = 6;

/// Compares `a^λ_{ν,μ}` with the lifted coefficient, and for small degrees
/// lifts an independent family of `Θ̄_τ` and certifies the independence of
/// the lifts on a set of coordinates.
pub fn verify_stability(
    nu: &Partition,
    mu: &Partition,
    mu_tilde: &Partition,
    lambda: &Partition,
    mode: StabilityMode,
    caps: &Caps,
) -> Result<StabilityReport> {
    if nu.is_empty() || mu.is_empty() {
        return Err(Error::usage("ν and μ must be nonempty"));
    }
    let lift = Lift::new(nu, mu, mu_tilde, mode);
    let lifted_lambda = lift.lambda(lambda);
    let r = plethysm_coefficient(nu, mu, lambda)?;
    let lifted = plethysm_coefficient(nu, &lift.mu, &lifted_lambda)?;
    let mut report = StabilityReport {
        lambda: lambda.clone(),
        lifted_lambda: lifted_lambda.clone(),
        inequality_holds: lifted >= r,
        r: r.clone(),
        lifted,
        witness_tableau: None,
        lift_rank: None,
    };
    let degree = nu.size() * mu.size();
    if r.is_zero() || degree > EXHIBIT_DEGREE || lifted_lambda.size() > caps.max_size {
        return Ok(report);
    }
    let family = independent_family(lambda, nu, mu, caps)?;
    if BigInt::from(family.len()) != r {
        return Err(Error::CrossCheck(format!(
            "{} independent Θ̄ for λ = {lambda}, coefficient is {r}",
            family.len()
        )));
    }
    let t = BijectiveTableau::row_reading(lambda);
    let t_hat = lift.generator(&t)?;
    let lifted_family: Vec<FilledTableau> = family.iter().map(|tau| lift.tableau(tau)).collect::<Result<_>>()?;
    let mut keys: Vec<BasisKey> = Vec::new();
    for tau in &family {
        for k in lifted_candidates(tau, &t, nu, &lift, 64)? {
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
    }
    let columns: Vec<Vec<(usize, Rational)>> = lifted_family
        .par_iter()
        .map(|tau_hat| {
            keys.iter()
                .enumerate()
                .map(|(i, key)| Ok((i, Rational::from_integer(theta_bar_coefficient(tau_hat, &t_hat, nu, key)?))))
                .filter(|c| c.as_ref().map_or(true, |(_, x)| !x.is_zero()))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut echelon = IncrementalRank::new(PivotOrder::First);
    for column in &columns {
        echelon.insert(column);
    }
    let rank = echelon.rank();
    report.lift_rank = Some(rank);
    if rank == family.len() {
        report.witness_tableau = lifted_family.into_iter().next();
    }
    Ok(report)
}

/// Semistandard `τ` whose `Θ̄_τ(e(t))` are independent, chosen greedily.
fn independent_family(lambda: &Partition, nu: &Partition, mu: &Partition, caps: &Caps) -> Result<Vec<FilledTableau>> {
    let mut index: BTreeMap<BasisKey, usize> = BTreeMap::new();
    let mut echelon = IncrementalRank::new(PivotOrder::First);
    let mut chosen = Vec::new();
    for (tau, v) in ssh_family(lambda, nu, mu, caps)? {
        let mut column: Vec<(usize, Rational)> = v
            .terms()
            .map(|(k, c)| {
                let next = index.len();
                (*index.entry(k.clone()).or_insert(next), c.clone())
            })
            .collect();
        column.sort_by_key(|(i, _)| *i);
        if echelon.insert(&column) {
            chosen.push(tau);
        }
    }
    Ok(chosen)
}

/// [`verify_stability`] for every `λ ⊢ |ν||μ|`.
pub fn verify_stability_all(
    nu: &Partition,
    mu: &Partition,
    mu_tilde: &Partition,
    mode: StabilityMode,
    caps: &Caps,
) -> Result<Vec<StabilityReport>> {
    enumerate_partitions(nu.size() * mu.size())?
        .iter()
        .map(|lambda| verify_stability(nu, mu, mu_tilde, lambda, mode, caps))
        .collect()
}
