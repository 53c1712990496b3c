//! Exact sparse rational matrices and their rank.
//!
//! Rank is computed by fraction-free elimination: every column is scaled to
//! a primitive integer vector, and reductions take integer combinations
//! `a·v − b·w` followed by division by the content. No floating point is
//! involved anywhere.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tabloids::ModuleVector;

pub type Rational = BigRational;

/// Column-major sparse matrix over the rationals.
///
/// Each column is a list of `(row, value)` with strictly increasing rows and
/// no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        SparseRationalMatrix { rows: n, columns }
    }

    /// Builds a matrix from raw columns; repeated rows are summed and zeros
    /// dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        let mut m = SparseRationalMatrix::zeros(rows, 0);
        for c in columns {
            m.push_column(c)?;
        }
        Ok(m)
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if c >= cols {
                return Err(Error::usage(format!("column {c} out of range for {cols} columns")));
            }
            columns[c].push((r, v));
        }
        SparseRationalMatrix::from_columns(rows, columns)
    }

    pub fn push_column(&mut self, mut column: Vec<(usize, Rational)>) -> Result<()> {
        if let Some(&(r, _)) = column.iter().find(|(r, _)| *r >= self.rows) {
            return Err(Error::usage(format!("row {r} out of range for {} rows", self.rows)));
        }
        column.sort_by_key(|(r, _)| *r);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(column.len());
        for (r, v) in column {
            match merged.last_mut() {
                Some((last, acc)) if *last == r => *acc += v,
                _ => merged.push((r, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.columns.push(merged);
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.columns[c].binary_search_by_key(&r, |(row, _)| *row) {
            Ok(i) => self.columns[c][i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn transpose(&self) -> SparseRationalMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        SparseRationalMatrix {
            rows: self.cols(),
            columns,
        }
    }

    /// Moves row `r` to `row_perm[r]` and column `c` to `col_perm[c]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseRationalMatrix {
        let mut columns = vec![Vec::new(); self.cols()];
        for (c, col) in self.columns.iter().enumerate() {
            let mut moved: Vec<(usize, Rational)> =
                col.iter().map(|(r, v)| (row_perm[*r], v.clone())).collect();
            moved.sort_by_key(|(r, _)| *r);
            columns[col_perm[c]] = moved;
        }
        SparseRationalMatrix {
            rows: self.rows,
            columns,
        }
    }

    pub fn scale_row(&self, row: usize, factor: &Rational) -> SparseRationalMatrix {
        let mut out = self.clone();
        for col in &mut out.columns {
            for (r, v) in col.iter_mut() {
                if *r == row {
                    *v *= factor;
                }
            }
            col.retain(|(_, v)| !v.is_zero());
        }
        out
    }

    /// Coordinate-list text: a header `# rows cols nnz`, then one line
    /// `row col num/den` per nonzero, 0-based, sorted by column then row.
    pub fn to_coordinate_list(&self) -> String {
        let mut out = format!("# {} {} {}\n", self.rows, self.cols(), self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                writeln!(out, "{r} {c} {}/{}", v.numer(), v.denom()).expect("write to string");
            }
        }
        out
    }

    pub fn from_coordinate_list(text: &str) -> Result<SparseRationalMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::usage("empty matrix file"))?;
        let dims: Vec<usize> = header
            .trim_start_matches('#')
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::usage(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(Error::usage(format!("bad header {header:?}")));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for line in lines {
            let bad = || Error::usage(format!("bad matrix line {line:?}"));
            let mut it = line.split_whitespace();
            let r: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let c: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let v: Rational = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            triplets.push((r, c, v));
        }
        if triplets.len() != nnz {
            return Err(Error::usage(format!(
                "header promises {nnz} entries, found {}",
                triplets.len()
            )));
        }
        SparseRationalMatrix::from_triplets(rows, cols, triplets)
    }
}

/// Which end of a reduced vector supplies its pivot row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    /// smallest row index
    First,
    /// largest row index
    Last,
}

type IntVector = Vec<(usize, BigInt)>;

/// Row-echelon basis grown one vector at a time; tells whether each new
/// vector is independent of those already inserted.
#[derive(Debug)]
pub struct IncrementalRank {
    order: PivotOrder,
    pivots: HashMap<usize, IntVector>,
}

impl IncrementalRank {
    pub fn new(order: PivotOrder) -> Self {
        IncrementalRank {
            order,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn pivot_of(&self, v: &IntVector) -> usize {
        match self.order {
            PivotOrder::First => v[0].0,
            PivotOrder::Last => v[v.len() - 1].0,
        }
    }

    /// Inserts a vector, returning true if it raised the rank.
    pub fn insert(&mut self, column: &[(usize, Rational)]) -> bool {
        let mut v = primitive(column);
        loop {
            if v.is_empty() {
                return false;
            }
            let p = self.pivot_of(&v);
            match self.pivots.get(&p) {
                Some(w) => v = eliminate(&v, w, p),
                None => {
                    self.pivots.insert(p, v);
                    return true;
                }
            }
        }
    }
}

/// Clears denominators and divides out the content.
fn primitive(column: &[(usize, Rational)]) -> IntVector {
    let den = column.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let v: IntVector = column
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(r, x)| (*r, x.numer() * (&den / x.denom())))
        .collect();
    normalize(v)
}

fn normalize(mut v: IntVector) -> IntVector {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in &mut v {
            *x /= &g;
        }
    }
    v
}

fn lookup(v: &IntVector, row: usize) -> &BigInt {
    let i = v.binary_search_by_key(&row, |(r, _)| *r).expect("pivot present");
    &v[i].1
}

/// `a·v − b·w` with `a, b` chosen to cancel row `p`.
fn eliminate(v: &IntVector, w: &IntVector, p: usize) -> IntVector {
    let (vp, wp) = (lookup(v, p), lookup(w, p));
    let g = vp.gcd(wp);
    let a = wp / &g;
    let b = vp / &g;
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j == w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i == v.len() || (j < w.len() && w[j].0 < v[i].0);
        let (row, value) = if take_v {
            i += 1;
            (v[i - 1].0, &a * &v[i - 1].1)
        } else if take_w {
            j += 1;
            (w[j - 1].0, -(&b * &w[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (v[i - 1].0, &a * &v[i - 1].1 - &b * &w[j - 1].1)
        };
        if !value.is_zero() {
            out.push((row, value));
        }
    }
    normalize(out)
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseRationalMatrix) -> usize {
    rank_with_order(m, PivotOrder::First)
}

/// Rank using the given pivot choice; sparsest columns are reduced first.
pub fn rank_with_order(m: &SparseRationalMatrix, order: PivotOrder) -> usize {
    let mut order_of_columns: Vec<usize> = (0..m.cols()).collect();
    order_of_columns.sort_by_key(|&c| (m.columns[c].len(), c));
    let mut echelon = IncrementalRank::new(order);
    let limit = m.rows().min(m.cols());
    for c in order_of_columns {
        if echelon.rank() == limit {
            break;
        }
        echelon.insert(&m.columns[c]);
    }
    echelon.rank()
}

/// Rank computed under both pivot orders; disagreement is reported as a
/// cross-check failure.
pub fn rank_cross_checked(m: &SparseRationalMatrix) -> Result<usize> {
    let first = rank_with_order(m, PivotOrder::First);
    let last = rank_with_order(m, PivotOrder::Last);
    if first != last {
        return Err(Error::CrossCheck(format!(
            "rank {first} with leading pivots but {last} with trailing pivots"
        )));
    }
    Ok(first)
}

pub fn is_injective(m: &SparseRationalMatrix) -> bool {
    m.cols() <= m.rows() && rank(m) == m.cols()
}

/// Rank of the span of module vectors, all drawn from the same space.
pub fn span_rank(vs: &[ModuleVector]) -> Result<usize> {
    let Some(first) = vs.first() else {
        return Ok(0);
    };
    if let Some(other) = vs.iter().find(|v| v.space() != first.space()) {
        return Err(Error::usage(format!(
            "vectors from different spaces: {:?} and {:?}",
            first.space(),
            other.space()
        )));
    }
    let mut index = HashMap::new();
    let mut echelon = IncrementalRank::new(PivotOrder::First);
    for v in vs {
        let column: Vec<(usize, Rational)> = v
            .terms()
            .map(|(key, c)| {
                let next = index.len();
                (*index.entry(key.clone()).or_insert(next), c.clone())
            })
            .collect();
        let mut column = column;
        column.sort_by_key(|(r, _)| *r);
        echelon.insert(&column);
    }
    Ok(echelon.rank())
}

#[cfg(test)]
fn leading_sign(column: &[(usize, Rational)]) -> bool {
    use num_traits::Signed;
    primitive(column).first().map(|(_, x)| x.is_positive()).unwrap_or(true)
}
