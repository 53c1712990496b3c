//! Irreducible characters of the symmetric group.
//!
//! A column `χ^·(μ)` is the Schur expansion of `p_μ`, built by multiplying
//! `p_{μ_1}` onto the column of `μ` with its first part removed. Multiplying
//! by `p_k` adds signed border strips of size `k` (Murnaghan–Nakayama), done
//! here on beta-sets. Columns are memoized per degree for the life of the
//! process.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// Character values fit in `i128` for every degree up to the enumeration
/// cap, since `|χ^λ(μ)| ≤ f^λ ≤ sqrt(n!)`.
pub type CharValue = i128;

/// Memoized character table of `S_n`, one column per conjugacy class.
pub struct CharacterTable {
    degree: usize,
    shapes: Vec<Partition>,
    index: HashMap<Partition, usize>,
    columns: RwLock<HashMap<Partition, Arc<Vec<CharValue>>>>,
}

type Registry = RwLock<HashMap<usize, Arc<CharacterTable>>>;

impl CharacterTable {
    /// The shared table for `S_n`.
    pub fn for_degree(n: usize) -> Result<Arc<CharacterTable>> {
        static TABLES: OnceLock<Registry> = OnceLock::new();
        let tables = TABLES.get_or_init(Default::default);
        if let Some(t) = tables.read().expect("character registry poisoned").get(&n) {
            return Ok(t.clone());
        }
        let shapes = enumerate_partitions(n)?;
        let index = shapes.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = Arc::new(CharacterTable {
            degree: n,
            shapes,
            index,
            columns: RwLock::new(HashMap::new()),
        });
        Ok(tables
            .write()
            .expect("character registry poisoned")
            .entry(n)
            .or_insert(table)
            .clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Row labels of every column, in reverse-lexicographic order.
    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    /// `χ^λ(μ)` for every `λ ⊢ n`, ordered like [`CharacterTable::shapes`].
    pub fn column(&self, mu: &Partition) -> Result<Arc<Vec<CharValue>>> {
        if mu.size() != self.degree {
            return Err(Error::usage(format!(
                "class {mu} is not a partition of {}",
                self.degree
            )));
        }
        if let Some(c) = self.columns.read().expect("character memo poisoned").get(mu) {
            return Ok(c.clone());
        }
        let column = Arc::new(self.compute_column(mu)?);
        // a racing thread may have inserted the same column; values agree
        Ok(self
            .columns
            .write()
            .expect("character memo poisoned")
            .entry(mu.clone())
            .or_insert(column)
            .clone())
    }

    fn compute_column(&self, mu: &Partition) -> Result<Vec<CharValue>> {
        let mut column = vec![0; self.shapes.len()];
        if mu.is_empty() {
            column[0] = 1;
            return Ok(column);
        }
        let k = mu.part(0);
        let rest = Partition::new(mu.parts()[1..].to_vec())?;
        let smaller = CharacterTable::for_degree(self.degree - k)?;
        let prev = smaller.column(&rest)?;
        for (rho, &value) in smaller.shapes.iter().zip(prev.iter()) {
            if value == 0 {
                continue;
            }
            for (lambda, sign) in add_border_strips(rho, k) {
                column[self.index[&lambda]] += sign * value;
            }
        }
        Ok(column)
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Result<CharValue> {
        let row = *self.index.get(lambda).ok_or_else(|| {
            Error::usage(format!("shape {lambda} is not a partition of {}", self.degree))
        })?;
        Ok(self.column(mu)?[row])
    }
}

/// `χ^λ(μ)`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<CharValue> {
    if lambda.size() != mu.size() {
        return Err(Error::usage(format!(
            "shape {lambda} and class {mu} have different sizes"
        )));
    }
    CharacterTable::for_degree(lambda.size())?.value(lambda, mu)
}

/// Every `λ ⊇ ρ` with `λ/ρ` a border strip of size `k`, with the sign
/// `(-1)^(height)`. Computed by sliding one bead of the beta-set of `ρ` by
/// `k` positions; the number of beads jumped over is the height.
pub fn add_border_strips(rho: &Partition, k: usize) -> Vec<(Partition, CharValue)> {
    let len = rho.len() + k;
    let beta: Vec<usize> = (0..len).map(|i| rho.part(i) + (len - 1 - i)).collect();
    let mut occupied = vec![false; beta[0] + k + 1];
    for &b in &beta {
        occupied[b] = true;
    }
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if occupied[b + k] {
            continue;
        }
        let jumped = occupied[b + 1..b + k].iter().filter(|&&o| o).count();
        let mut moved = beta.clone();
        moved[i] = b + k;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let parts = moved.iter().enumerate().map(|(j, &x)| x - (len - 1 - j));
        let lambda = Partition::from_unsorted(parts);
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((lambda, sign));
    }
    out
}
