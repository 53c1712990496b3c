//! Tableaux, polytabloids and the semistandard homomorphisms
//! `Θ_τ: S^λ → M^{μ^n}` together with their projections
//! `Θ̄_τ = φ ∘ Θ_τ: S^λ → M^{ν[μ]}`.
//!
//! Tableaux are stored as rows of cells, row 1 first. Columns of a
//! semistandard tableau increase strictly away from row 1.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{span_rank, Rational};
use crate::partitions::Partition;
use crate::tabloids::{BasisKey, Canonicalizer, Caps, ModuleVector, Space, Tabloid};

mod stability;

pub use stability::{
    join, lift_generator_2col, lift_generator_h, lifted_nonvanishing, stability_lift_2col, stability_lift_h,
    verify_stability, verify_stability_all, StabilityMode, StabilityReport,
};

fn shape_of(rows: &[Vec<usize>]) -> Result<Partition> {
    if rows.iter().any(|r| r.is_empty()) {
        return Err(Error::usage("tableau rows must be nonempty"));
    }
    Partition::new(rows.iter().map(Vec::len).collect())
}

/// Cells of each column, as indices into the reading order.
fn column_cells(shape: &Partition) -> Vec<Vec<usize>> {
    let mut columns = vec![Vec::new(); shape.part(0)];
    let mut i = 0;
    for &len in shape.parts() {
        for column in columns.iter_mut().take(len) {
            column.push(i);
            i += 1;
        }
    }
    columns
}

/// A tableau with entries `1..=n`, each once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BijectiveTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl BijectiveTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = shape_of(&rows)?;
        let mut seen = vec![false; shape.size() + 1];
        for &e in rows.iter().flatten() {
            if e == 0 || e > shape.size() || seen[e] {
                return Err(Error::usage(format!("{rows:?} is not a bijective tableau")));
            }
            seen[e] = true;
        }
        Ok(BijectiveTableau { shape, rows })
    }

    /// Entries `1..=n` written row by row.
    pub fn row_reading(shape: &Partition) -> Self {
        let mut next = 0;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                next += len;
                (next - len + 1..=next).collect()
            })
            .collect();
        BijectiveTableau { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entries in reading order.
    pub fn entries(&self) -> Vec<usize> {
        self.rows.concat()
    }
}

/// A tableau filled with letters `1, 2, …`, repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FilledTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl FilledTableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = shape_of(&rows)?;
        if rows.iter().flatten().any(|&l| l == 0) {
            return Err(Error::usage("letters start at 1"));
        }
        Ok(FilledTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn letters(&self) -> Vec<usize> {
        self.rows.concat()
    }

    /// Multiplicity of each letter `1..=max`.
    pub fn content(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut counts = vec![0; max];
        for &l in self.rows.iter().flatten() {
            counts[l - 1] += 1;
        }
        counts
    }

    /// The content as a partition, when it is one.
    pub fn content_partition(&self) -> Result<Partition> {
        let counts = self.content();
        if counts.contains(&0) {
            return Err(Error::usage(format!("content {counts:?} skips a letter")));
        }
        Partition::new(counts)
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(up, down)| up > down));
        rows_ok && cols_ok
    }
}

impl std::fmt::Display for FilledTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().join(",")).collect();
        write!(f, "[{}]", rows.join("|"))
    }
}

/// The filling with every cell of row `r` holding the letter `r`.
pub fn superstandard(shape: &Partition) -> FilledTableau {
    let rows = shape.parts().iter().enumerate().map(|(r, &len)| vec![r + 1; len]).collect();
    FilledTableau { shape: shape.clone(), rows }
}

/// All semistandard tableaux of the given shape and content, adding the
/// cells of each letter as a horizontal strip.
pub fn enumerate_ssyt(shape: &Partition, content: &Partition) -> Result<Vec<FilledTableau>> {
    if shape.size() != content.size() {
        return Err(Error::usage(format!(
            "shape {shape} and content {content} have different sizes"
        )));
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    ssyt_rec(shape.parts(), content.parts(), 0, &mut rows, &mut out);
    Ok(out)
}

fn ssyt_rec(
    shape: &[usize],
    content: &[usize],
    letter: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<FilledTableau>,
) {
    if letter == content.len() {
        if rows.iter().zip(shape).all(|(r, &len)| r.len() == len) {
            out.push(FilledTableau {
                shape: Partition::new(shape.to_vec()).expect("shape"),
                rows: rows.clone(),
            });
        }
        return;
    }
    let before: Vec<usize> = rows.iter().map(Vec::len).collect();
    strip_rec(shape, &before, 0, content[letter], letter + 1, rows, &mut |rows| {
        ssyt_rec(shape, content, letter + 1, rows, out)
    });
}

fn strip_rec(
    shape: &[usize],
    before: &[usize],
    row: usize,
    left: usize,
    letter: usize,
    rows: &mut Vec<Vec<usize>>,
    next: &mut dyn FnMut(&mut Vec<Vec<usize>>),
) {
    if row == shape.len() {
        if left == 0 {
            next(rows);
        }
        return;
    }
    let bound = if row == 0 { shape[0] } else { shape[row].min(before[row - 1]) };
    let most = bound.saturating_sub(before[row]).min(left);
    for k in (0..=most).rev() {
        rows[row].extend(std::iter::repeat(letter).take(k));
        strip_rec(shape, before, row + 1, left - k, letter, rows, next);
        rows[row].truncate(before[row]);
    }
}

fn sign_of(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Permutations of `0..h` with their signs.
fn signed_permutations(h: usize) -> Vec<(Vec<usize>, i64)> {
    (0..h).permutations(h).map(|p| {
        let s = sign_of(&p);
        (p, s)
    }).collect()
}

/// Walks the terms of `Θ̂_τ(e(t))` (unsigned) or `Θ_τ(e(t))` (signed),
/// reporting the letter of each entry (0-based letters, indexed by entry
/// minus one) and the sign.
fn expand(
    tau: &FilledTableau,
    t: &BijectiveTableau,
    signed: bool,
    emit: &mut dyn FnMut(&[u8], i64),
) -> Result<()> {
    if tau.shape != t.shape {
        return Err(Error::usage(format!(
            "τ has shape {} but t has shape {}",
            tau.shape, t.shape
        )));
    }
    if tau.letters().iter().any(|&l| l > u8::MAX as usize) {
        return Err(Error::usage("too many letters"));
    }
    let shape = &tau.shape;
    let arrangements: Vec<Vec<Vec<usize>>> = tau
        .rows
        .iter()
        .map(|r| r.iter().copied().permutations(r.len()).unique().collect())
        .collect();
    let columns = column_cells(shape);
    let perms: Vec<Vec<(Vec<usize>, i64)>> = (0..=shape.len()).map(signed_permutations).collect();
    let entries = t.entries();
    let mut walk = Walk {
        arrangements: &arrangements,
        columns: &columns,
        perms: &perms,
        entries: &entries,
        row_start: shape.parts().iter().scan(0, |s, &len| {
            *s += len;
            Some(*s - len)
        }).collect(),
        signed,
        fill: vec![0; shape.size()],
        moved: vec![0; shape.size()],
        labels: vec![0; shape.size()],
    };
    walk.rows(0, emit);
    Ok(())
}

struct Walk<'a> {
    arrangements: &'a [Vec<Vec<usize>>],
    columns: &'a [Vec<usize>],
    perms: &'a [Vec<(Vec<usize>, i64)>],
    entries: &'a [usize],
    row_start: Vec<usize>,
    signed: bool,
    fill: Vec<usize>,
    moved: Vec<usize>,
    labels: Vec<u8>,
}

impl Walk<'_> {
    fn rows(&mut self, r: usize, emit: &mut dyn FnMut(&[u8], i64)) {
        if r == self.arrangements.len() {
            if self.signed {
                self.moved.copy_from_slice(&self.fill);
                self.columns(0, 1, emit);
            } else {
                for (cell, &e) in self.entries.iter().enumerate() {
                    self.labels[e - 1] = (self.fill[cell] - 1) as u8;
                }
                emit(&self.labels, 1);
            }
            return;
        }
        let start = self.row_start[r];
        'next: for arrangement in &self.arrangements[r] {
            for (c, &letter) in arrangement.iter().enumerate() {
                // a column repeating a letter cancels under the column group
                if self.signed && (0..r).any(|below| self.fill[self.row_start[below] + c] == letter) {
                    continue 'next;
                }
                self.fill[start + c] = letter;
            }
            self.rows(r + 1, emit);
        }
    }

    fn columns(&mut self, c: usize, sign: i64, emit: &mut dyn FnMut(&[u8], i64)) {
        if c == self.columns.len() {
            for (cell, &e) in self.entries.iter().enumerate() {
                self.labels[e - 1] = (self.moved[cell] - 1) as u8;
            }
            emit(&self.labels, sign);
            return;
        }
        let cells = &self.columns[c];
        if cells.len() == 1 {
            self.columns(c + 1, sign, emit);
            return;
        }
        for (p, s) in &self.perms[cells.len()] {
            for (i, &cell) in cells.iter().enumerate() {
                self.moved[cell] = self.fill[cells[p[i]]];
            }
            self.columns(c + 1, sign * s, emit);
        }
    }
}

fn collect(space: Space, counts: HashMap<Vec<u8>, i64>) -> ModuleVector {
    let mut out = ModuleVector::zero(space);
    for (labels, c) in counts {
        if c != 0 {
            out.add_term(BasisKey::from_labels(labels), Rational::from_integer(BigInt::from(c)));
        }
    }
    out
}

/// The tabloid `f_t(τ)`: entry `t(c)` sits in row `τ(c)`.
pub fn f_t(tau: &FilledTableau, t: &BijectiveTableau) -> Result<Tabloid> {
    if tau.shape != t.shape {
        return Err(Error::usage("τ and t have different shapes"));
    }
    let content = tau.content_partition()?;
    let mut rows = vec![Vec::new(); content.len()];
    for (l, e) in tau.letters().into_iter().zip(t.entries()) {
        rows[l - 1].push(e);
    }
    Tabloid::new(rows)
}

fn permutation_expansion(tau: &FilledTableau, t: &BijectiveTableau, signed: bool) -> Result<ModuleVector> {
    let space = Space::Permutation(tau.content_partition()?);
    let mut counts: HashMap<Vec<u8>, i64> = HashMap::new();
    expand(tau, t, signed, &mut |labels, s| {
        *counts.entry(labels.to_vec()).or_insert(0) += s;
    })?;
    Ok(collect(space, counts))
}

/// `Θ̂_τ({t}) = Σ f_t(τ')` over the distinct row rearrangements `τ'` of `τ`.
pub fn theta_hat(tau: &FilledTableau, t: &BijectiveTableau) -> Result<ModuleVector> {
    permutation_expansion(tau, t, false)
}

/// `Θ_τ(e(t)) = Σ_{τ'} Σ_{π ∈ C_t} sgn(π) f_t(π·τ')`.
pub fn theta(tau: &FilledTableau, t: &BijectiveTableau) -> Result<ModuleVector> {
    permutation_expansion(tau, t, true)
}

/// The polytabloid `e(t) ∈ M^λ`.
pub fn polytabloid(t: &BijectiveTableau) -> Result<ModuleVector> {
    theta(&superstandard(t.shape()), t)
}

/// Reads a content `c` as `μ^n`: letter `k` (0-based) is row `k / n` of
/// copy `k % n`.
pub fn split_content(content: &[usize], n: usize) -> Result<Partition> {
    if n == 0 || content.len() % n != 0 {
        return Err(Error::usage(format!("content {content:?} is not of the form μ^{n}")));
    }
    let parts: Vec<usize> = content.chunks(n).map(|chunk| chunk[0]).collect();
    if content.chunks(n).any(|chunk| chunk.iter().any(|&c| c != chunk[0])) {
        return Err(Error::usage(format!("content {content:?} is not of the form μ^{n}")));
    }
    Partition::new(parts)
}

/// `Θ̄_τ(e(t)) ∈ M^{ν[μ]}`, where `τ` has content `μ^n` and `n = |ν|`.
pub fn theta_bar(tau: &FilledTableau, t: &BijectiveTableau, nu: &Partition) -> Result<ModuleVector> {
    let n = nu.size();
    let mu = split_content(&tau.content(), n)?;
    let space = Space::plethystic(nu, &mu);
    let canon = space.canonicalizer()?;
    let ell = mu.len();
    let mut counts: HashMap<Vec<u8>, i64> = HashMap::new();
    expand(tau, t, true, &mut |letters, s| {
        let mut labels: Vec<u8> = letters
            .iter()
            .map(|&l| {
                let l = l as usize;
                ((l % n) * ell + l / n) as u8
            })
            .collect();
        canon.apply(&mut labels);
        *counts.entry(labels).or_insert(0) += s;
    })?;
    Ok(collect(space, counts))
}

/// Rank of the span of `Θ̄_τ(e(t))` over semistandard `τ` of shape `λ` and
/// content `μ^n`, with `t` the row reading tableau.
pub fn ssh_rank(lambda: &Partition, nu: &Partition, mu: &Partition) -> Result<usize> {
    ssh_rank_capped(lambda, nu, mu, &Caps::default())
}

pub fn ssh_rank_capped(lambda: &Partition, nu: &Partition, mu: &Partition, caps: &Caps) -> Result<usize> {
    Ok(span_rank(&ssh_vectors(lambda, nu, mu, caps)?)?)
}

/// The vectors `Θ̄_τ(e(t))` paired with their tableaux, in enumeration order.
pub fn ssh_family(
    lambda: &Partition,
    nu: &Partition,
    mu: &Partition,
    caps: &Caps,
) -> Result<Vec<(FilledTableau, ModuleVector)>> {
    if nu.is_empty() || mu.is_empty() {
        return Err(Error::usage("ν and μ must be nonempty"));
    }
    let size = nu.size() * mu.size();
    if lambda.size() != size {
        return Err(Error::usage(format!("λ = {lambda} is not a partition of {size}")));
    }
    if size > caps.max_size {
        return Err(Error::resource("degree", size as u64, caps.max_size as u64));
    }
    let t = BijectiveTableau::row_reading(lambda);
    enumerate_ssyt(lambda, &mu.repeat(nu.size()))?
        .into_par_iter()
        .map(|tau| {
            let v = theta_bar(&tau, &t, nu)?;
            Ok((tau, v))
        })
        .collect()
}

fn ssh_vectors(lambda: &Partition, nu: &Partition, mu: &Partition, caps: &Caps) -> Result<Vec<ModuleVector>> {
    Ok(ssh_family(lambda, nu, mu, caps)?.into_iter().map(|(_, v)| v).collect())
}

/// Coefficient of the basis element `key` of `M^{ν[μ]}` in `Θ̄_τ(e(t))`,
/// without expanding the whole vector. Each outer-row-preserving way of
/// naming the slots of `key` determines one filling `F` with
/// `φ(f_t(F)) = key`; its weight is `Σ_{π ∈ C_t} sgn(π)` over those `π`
/// with `π⁻¹·F` a row rearrangement of `τ`.
pub fn theta_bar_coefficient(
    tau: &FilledTableau,
    t: &BijectiveTableau,
    nu: &Partition,
    key: &BasisKey,
) -> Result<BigInt> {
    if tau.shape != t.shape {
        return Err(Error::usage("τ and t have different shapes"));
    }
    let n = nu.size();
    let mu = split_content(&tau.content(), n)?;
    Space::plethystic(nu, &mu).validate_key(key)?;
    let columns = column_cells(&tau.shape);
    let perms: Vec<Vec<(Vec<usize>, i64)>> = (0..=tau.shape.len()).map(signed_permutations).collect();
    let row_of: Vec<usize> = tau
        .shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| std::iter::repeat(r).take(len))
        .collect();
    let max_letter = tau.content().len();
    let mut need = vec![vec![0i32; max_letter + 1]; tau.shape.len()];
    for (r, row) in tau.rows.iter().enumerate() {
        for &l in row {
            need[r][l] += 1;
        }
    }
    let mut total = 0i64;
    for fill in key_fillings(t, nu, mu.len(), key) {
        let repeats = columns
            .iter()
            .any(|cells| cells.iter().map(|&c| fill[c]).unique().count() < cells.len());
        if repeats {
            continue;
        }
        total += column_weight(&columns, &perms, &row_of, &fill, &mut need, 0, 1);
    }
    Ok(BigInt::from(total))
}

/// The fillings `F` (letters per cell, reading order) with
/// `φ(f_t(F)) = key`, one for each outer-row-preserving naming of slots.
pub(crate) fn key_fillings(t: &BijectiveTableau, nu: &Partition, ell: usize, key: &BasisKey) -> Vec<Vec<usize>> {
    let n = nu.size();
    let entries = t.entries();
    outer_slot_maps(nu)
        .into_iter()
        .map(|slots| {
            let mut copy_of = vec![0; n];
            for (copy, &s) in slots.iter().enumerate() {
                copy_of[s] = copy;
            }
            entries
                .iter()
                .map(|&e| {
                    let label = key.labels()[e - 1] as usize;
                    (label % ell) * n + copy_of[label / ell] + 1
                })
                .collect()
        })
        .collect()
}

/// `φ(f_t(F))` for a filling given cell by cell.
pub(crate) fn filling_key(fill: &[usize], t: &BijectiveTableau, n: usize, ell: usize, canon: &Canonicalizer) -> BasisKey {
    let mut labels = vec![0u8; fill.len()];
    for (&l, e) in fill.iter().zip(t.entries()) {
        let l = l - 1;
        labels[e - 1] = ((l % n) * ell + l / n) as u8;
    }
    canon.apply(&mut labels);
    BasisKey::from_labels(labels)
}

/// Every bijection of copies onto slots that preserves outer rows.
fn outer_slot_maps(nu: &Partition) -> Vec<Vec<usize>> {
    let mut start = 0;
    let per_row: Vec<Vec<Vec<usize>>> = nu
        .parts()
        .iter()
        .map(|&len| {
            start += len;
            (start - len..start).permutations(len).collect()
        })
        .collect();
    per_row.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v: Vec<usize> = prefix.clone();
                    v.extend_from_slice(c);
                    v
                })
            })
            .collect()
    })
}

fn column_weight(
    columns: &[Vec<usize>],
    perms: &[Vec<(Vec<usize>, i64)>],
    row_of: &[usize],
    fill: &[usize],
    need: &mut [Vec<i32>],
    c: usize,
    sign: i64,
) -> i64 {
    if c == columns.len() {
        return sign;
    }
    let cells = &columns[c];
    let mut total = 0;
    'perm: for (p, s) in &perms[cells.len()] {
        for (i, &cell) in cells.iter().enumerate() {
            let letter = fill[cells[p[i]]];
            let slot = &mut need[row_of[cell]][letter];
            if *slot == 0 {
                for j in 0..i {
                    need[row_of[cells[j]]][fill[cells[p[j]]]] += 1;
                }
                continue 'perm;
            }
            *slot -= 1;
        }
        total += column_weight(columns, perms, row_of, fill, need, c + 1, sign * s);
        for (i, &cell) in cells.iter().enumerate() {
            need[row_of[cell]][fill[cells[p[i]]]] += 1;
        }
    }
    total
}

#[cfg(test)]
mod tests;
