//! Permutation modules `M^λ`, tensor modules `M^{μ^n}` and plethystic
//! modules `M^{ν[μ]}`, with explicit tabloid bases.
//!
//! A basis element of any of these spaces is stored as a [`BasisKey`]: one
//! label per entry `1..=N`. The label of entry `e` is `slot·ℓ(μ) + i` when
//! `e` sits in row `i` of the inner tabloid occupying `slot`. For `M^λ`
//! there is one slot and the label is just the row. For `M^{ν[μ]}` the slots
//! are the cells of `ν` in reading order, row 1 first; inner tabloids in the
//! same outer row may be rearranged, so the canonical key numbers the slots
//! of each outer row by increasing minimum entry.

mod maps;
mod union;

pub use maps::{fh_map_image, fh_map_matrix, identity_map, phi, phi_tilde, psi, MapMatrix};
pub use union::{
    split_outer, tabloid_union, union_compose_injection, union_inner_inject, union_outer_iso,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::partitions::{factorial, Partition};

/// Which module a vector lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `M^λ`
    Permutation(Partition),
    /// `M^{μ^n}` written as ordered `n`-tuples of `μ`-tabloids
    Tensor { inner: Partition, copies: usize },
    /// `M^{ν[μ]}`
    Plethystic { outer: Partition, inner: Partition },
}

impl Space {
    pub fn plethystic(outer: &Partition, inner: &Partition) -> Space {
        Space::Plethystic {
            outer: outer.clone(),
            inner: inner.clone(),
        }
    }

    pub fn tensor(inner: &Partition, copies: usize) -> Space {
        Space::Tensor {
            inner: inner.clone(),
            copies,
        }
    }

    fn inner(&self) -> &Partition {
        match self {
            Space::Permutation(l) => l,
            Space::Tensor { inner, .. } | Space::Plethystic { inner, .. } => inner,
        }
    }

    fn slots(&self) -> usize {
        match self {
            Space::Permutation(_) => 1,
            Space::Tensor { copies, .. } => *copies,
            Space::Plethystic { outer, .. } => outer.size(),
        }
    }

    /// The `N` such that the symmetric group `S_N` acts.
    pub fn ambient(&self) -> usize {
        self.slots() * self.inner().size()
    }

    /// Closed-form dimension: `N! / ((Π μ_i!)^n · Π ν_j!)`.
    pub fn dimension(&self) -> BigUint {
        let inner = self.inner().row_group_order();
        let mut den = num_traits::pow(inner, self.slots());
        if let Space::Plethystic { outer, .. } = self {
            den *= outer.row_group_order();
        }
        factorial(self.ambient()) / den
    }

    fn layout(&self) -> Result<Layout> {
        let inner = self.inner().parts().to_vec();
        let slots = self.slots();
        if slots * inner.len() > 256 {
            return Err(Error::usage(format!("{self:?} has too many rows to label")));
        }
        let (slot_row, row_start) = match self {
            Space::Plethystic { outer, .. } => {
                let mut slot_row = Vec::with_capacity(slots);
                let mut row_start = Vec::with_capacity(outer.len());
                for (r, &len) in outer.parts().iter().enumerate() {
                    row_start.push(slot_row.len());
                    slot_row.extend(std::iter::repeat(r).take(len));
                }
                (slot_row, row_start)
            }
            // every slot is its own outer row: nothing may be rearranged
            _ => ((0..slots).collect(), (0..slots).collect()),
        };
        Ok(Layout {
            inner,
            slot_row,
            row_start,
        })
    }

    /// Puts a label vector in canonical form for this space.
    pub fn canonicalize(&self, labels: &mut [u8]) -> Result<()> {
        let layout = self.layout()?;
        layout.check(labels)?;
        if matches!(self, Space::Plethystic { .. }) {
            layout.canonicalize(labels);
        }
        Ok(())
    }

    /// A reusable canonicalizer, skipping the per-call layout work and
    /// validation of [`Space::canonicalize`].
    pub fn canonicalizer(&self) -> Result<Canonicalizer> {
        Ok(Canonicalizer {
            layout: self.layout()?,
            plethystic: matches!(self, Space::Plethystic { .. }),
        })
    }

    /// Checks that `key` is a canonical basis element of this space.
    pub fn validate_key(&self, key: &BasisKey) -> Result<()> {
        let mut copy = key.labels().to_vec();
        self.canonicalize(&mut copy)?;
        if copy != key.labels() {
            return Err(Error::usage(format!("{key:?} is not canonical in {self:?}")));
        }
        Ok(())
    }
}

struct Layout {
    inner: Vec<usize>,
    slot_row: Vec<usize>,
    row_start: Vec<usize>,
}

impl Layout {
    fn ell(&self) -> usize {
        self.inner.len()
    }

    fn labels(&self) -> usize {
        self.slot_row.len() * self.ell()
    }

    fn capacity(&self, label: usize) -> usize {
        self.inner[label % self.ell()]
    }

    fn check(&self, labels: &[u8]) -> Result<()> {
        let ambient = self.slot_row.len() * self.inner.iter().sum::<usize>();
        if labels.len() != ambient {
            return Err(Error::usage(format!(
                "expected {ambient} entries, found {}",
                labels.len()
            )));
        }
        let mut counts = vec![0usize; self.labels()];
        for &l in labels {
            let l = l as usize;
            if l >= counts.len() {
                return Err(Error::usage(format!("label {l} out of range")));
            }
            counts[l] += 1;
        }
        if counts.iter().enumerate().any(|(l, &c)| c != self.capacity(l)) {
            return Err(Error::usage("row sizes do not match the shape"));
        }
        Ok(())
    }

    fn canonicalize(&self, labels: &mut [u8]) {
        let ell = self.ell();
        let mut renamed = vec![usize::MAX; self.slot_row.len()];
        let mut opened = vec![0usize; self.row_start.len()];
        for l in labels.iter_mut() {
            let (slot, row) = (*l as usize / ell, *l as usize % ell);
            if renamed[slot] == usize::MAX {
                let r = self.slot_row[slot];
                renamed[slot] = self.row_start[r] + opened[r];
                opened[r] += 1;
            }
            *l = (renamed[slot] * ell + row) as u8;
        }
    }
}

/// Canonical form for label vectors already known to be well formed.
pub struct Canonicalizer {
    layout: Layout,
    plethystic: bool,
}

impl Canonicalizer {
    pub fn apply(&self, labels: &mut [u8]) {
        if self.plethystic {
            self.layout.canonicalize(labels);
        }
    }
}

/// A canonical basis element: the label of each entry `1..=N` in order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisKey(Box<[u8]>);

impl BasisKey {
    pub fn from_labels(labels: Vec<u8>) -> Self {
        BasisKey(labels.into_boxed_slice())
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

/// Limits on explicit basis enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// largest `N` accepted
    pub max_size: usize,
    /// largest number of basis elements materialized
    pub max_dimension: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_size: 12,
            max_dimension: 2_000_000,
        }
    }
}

impl Caps {
    pub fn check(&self, space: &Space) -> Result<()> {
        if space.ambient() > self.max_size {
            return Err(Error::resource(
                "tabloid size",
                space.ambient() as u128,
                self.max_size as u128,
            ));
        }
        let dim = space.dimension();
        if dim > BigUint::from(self.max_dimension) {
            let value = u128::try_from(&dim).unwrap_or(u128::MAX);
            return Err(Error::resource("basis dimension", value, self.max_dimension as u128));
        }
        Ok(())
    }
}

/// Visits every canonical basis key of `space` in increasing key order,
/// without materializing the list.
pub fn for_each_basis(space: &Space, mut visit: impl FnMut(&[u8])) -> Result<()> {
    let layout = space.layout()?;
    let canonical = matches!(space, Space::Plethystic { .. });
    let mut state = Walk {
        layout: &layout,
        canonical,
        left: (0..layout.labels()).map(|l| layout.capacity(l)).collect(),
        opened: vec![0; layout.row_start.len()],
        labels: Vec::with_capacity(space.ambient()),
        ambient: space.ambient(),
    };
    state.go(&mut visit);
    Ok(())
}

struct Walk<'a> {
    layout: &'a Layout,
    canonical: bool,
    left: Vec<usize>,
    opened: Vec<usize>,
    labels: Vec<u8>,
    ambient: usize,
}

impl Walk<'_> {
    fn go(&mut self, visit: &mut impl FnMut(&[u8])) {
        if self.labels.len() == self.ambient {
            visit(&self.labels);
            return;
        }
        let ell = self.layout.ell();
        for label in 0..self.left.len() {
            if self.left[label] == 0 {
                continue;
            }
            let slot = label / ell;
            let mut opens = None;
            if self.canonical {
                let r = self.layout.slot_row[slot];
                let next = self.layout.row_start[r] + self.opened[r];
                if slot > next {
                    continue;
                }
                if slot == next {
                    opens = Some(r);
                }
            }
            if let Some(r) = opens {
                self.opened[r] += 1;
            }
            self.left[label] -= 1;
            self.labels.push(label as u8);
            self.go(visit);
            self.labels.pop();
            self.left[label] += 1;
            if let Some(r) = opens {
                self.opened[r] -= 1;
            }
        }
    }
}

/// Number of basis elements found by walking the basis.
pub fn count_basis(space: &Space) -> Result<u64> {
    let mut n = 0u64;
    for_each_basis(space, |_| n += 1)?;
    Ok(n)
}

/// Every canonical basis element of `space`, sorted.
pub fn enumerate_basis(space: &Space) -> Result<Vec<BasisKey>> {
    enumerate_basis_capped(space, &Caps::default())
}

pub fn enumerate_basis_capped(space: &Space, caps: &Caps) -> Result<Vec<BasisKey>> {
    caps.check(space)?;
    let mut out = Vec::new();
    for_each_basis(space, |l| out.push(BasisKey::from_labels(l.to_vec())))?;
    Ok(out)
}

/// A tabloid: rows of distinct entries, each row stored sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tabloid {
    rows: Vec<Vec<usize>>,
}

impl Tabloid {
    /// Rows are given first row first; lengths must weakly decrease.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Tabloid> {
        if rows.iter().any(Vec::is_empty) || rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::usage(format!("row lengths {rows:?} do not form a partition")));
        }
        let mut rows = rows;
        for row in &mut rows {
            row.sort_unstable();
        }
        let t = Tabloid { rows };
        let mut all = t.entries();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) || all.first() == Some(&0) {
            return Err(Error::usage(format!("entries of {t} are not distinct positive integers")));
        }
        Ok(t)
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(Vec::len))
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entries in reading order: row 1 left to right, then row 2, …
    pub fn entries(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn min_entry(&self) -> usize {
        self.rows.iter().flatten().copied().min().unwrap_or(0)
    }

    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Tabloid {
        let mut rows: Vec<Vec<usize>> =
            self.rows.iter().map(|r| r.iter().map(|&e| f(e)).collect()).collect();
        for row in &mut rows {
            row.sort_unstable();
        }
        Tabloid { rows }
    }

    /// Key in `M^λ`; the entries must be exactly `1..=|λ|`.
    pub fn key(&self) -> Result<BasisKey> {
        let n = self.shape().size();
        let mut labels = vec![u8::MAX; n];
        for (i, row) in self.rows.iter().enumerate() {
            for &e in row {
                if e > n {
                    return Err(Error::usage(format!("{self} does not use entries 1..={n}")));
                }
                labels[e - 1] = i as u8;
            }
        }
        Ok(BasisKey::from_labels(labels))
    }

    pub fn from_key(shape: &Partition, key: &BasisKey) -> Result<Tabloid> {
        Space::Permutation(shape.clone()).validate_key(key)?;
        let mut rows = vec![Vec::new(); shape.len()];
        for (e, &l) in key.labels().iter().enumerate() {
            rows[l as usize].push(e + 1);
        }
        Ok(Tabloid { rows })
    }
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", rows.join("|"))
    }
}

impl fmt::Debug for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A plethystic tabloid: outer rows of inner tabloids, each outer row kept
/// sorted by minimum entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlethysticTabloid {
    inner: Partition,
    rows: Vec<Vec<Tabloid>>,
}

impl PlethysticTabloid {
    /// Builds and canonicalizes; outer rows are given first row first.
    pub fn new(inner: &Partition, rows: Vec<Vec<Tabloid>>) -> Result<PlethysticTabloid> {
        if rows.iter().any(Vec::is_empty) || rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::usage("outer row lengths do not form a partition"));
        }
        if let Some(t) = rows.iter().flatten().find(|t| t.shape() != *inner) {
            return Err(Error::usage(format!("inner tabloid {t} does not have shape {inner}")));
        }
        let mut all: Vec<usize> = rows.iter().flatten().flat_map(Tabloid::entries).collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::usage("an entry appears in two inner tabloids"));
        }
        let mut rows = rows;
        for row in &mut rows {
            row.sort_by_key(Tabloid::min_entry);
        }
        Ok(PlethysticTabloid {
            inner: inner.clone(),
            rows,
        })
    }

    pub fn outer(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(Vec::len))
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn rows(&self) -> &[Vec<Tabloid>] {
        &self.rows
    }

    pub fn space(&self) -> Space {
        Space::plethystic(&self.outer(), &self.inner)
    }

    /// All entries, sorted.
    pub fn entries(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.rows.iter().flatten().flat_map(Tabloid::entries).collect();
        all.sort_unstable();
        all
    }

    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> PlethysticTabloid {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut r: Vec<Tabloid> = r.iter().map(|t| t.relabel(&f)).collect();
                r.sort_by_key(Tabloid::min_entry);
                r
            })
            .collect();
        PlethysticTabloid {
            inner: self.inner.clone(),
            rows,
        }
    }

    /// Key in `M^{ν[μ]}`; the entries must be exactly `1..=N`.
    pub fn key(&self) -> Result<BasisKey> {
        let n = self.entries().len();
        let ell = self.inner.len();
        let mut labels = vec![u8::MAX; n];
        for (slot, t) in self.rows.iter().flatten().enumerate() {
            for (i, row) in t.rows().iter().enumerate() {
                for &e in row {
                    if e == 0 || e > n {
                        return Err(Error::usage(format!("{self} does not use entries 1..={n}")));
                    }
                    labels[e - 1] = (slot * ell + i) as u8;
                }
            }
        }
        let space = self.space();
        space.canonicalize(&mut labels)?;
        Ok(BasisKey::from_labels(labels))
    }

    pub fn from_key(outer: &Partition, inner: &Partition, key: &BasisKey) -> Result<Self> {
        let space = Space::plethystic(outer, inner);
        space.validate_key(key)?;
        let ell = inner.len();
        let mut cells = vec![vec![Vec::new(); ell]; outer.size()];
        for (e, &l) in key.labels().iter().enumerate() {
            cells[l as usize / ell][l as usize % ell].push(e + 1);
        }
        let mut slots = cells.into_iter().map(|rows| Tabloid { rows });
        let rows = outer
            .parts()
            .iter()
            .map(|&len| slots.by_ref().take(len).collect())
            .collect();
        Ok(PlethysticTabloid {
            inner: inner.clone(),
            rows,
        })
    }
}

impl fmt::Display for PlethysticTabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Tabloid::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

impl fmt::Debug for PlethysticTabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Key of an ordered tuple of tabloids in `M^{μ^n}`; entries `1..=nm`.
pub fn tensor_key(tuple: &[Tabloid]) -> Result<(Space, BasisKey)> {
    let inner = tuple.first().map(Tabloid::shape).unwrap_or_else(Partition::empty);
    if tuple.iter().any(|t| t.shape() != inner) {
        return Err(Error::usage("tuple entries have different shapes"));
    }
    let space = Space::tensor(&inner, tuple.len());
    let n = space.ambient();
    let ell = inner.len();
    let mut labels = vec![u8::MAX; n];
    for (slot, t) in tuple.iter().enumerate() {
        for (i, row) in t.rows().iter().enumerate() {
            for &e in row {
                if e > n || labels[e - 1] != u8::MAX {
                    return Err(Error::usage(format!("tuple does not use entries 1..={n}")));
                }
                labels[e - 1] = (slot * ell + i) as u8;
            }
        }
    }
    Ok((space, BasisKey::from_labels(labels)))
}

/// The tuple of tabloids named by a key of a tensor space.
pub fn tensor_tuple(space: &Space, key: &BasisKey) -> Result<Vec<Tabloid>> {
    let Space::Tensor { inner, copies } = space else {
        return Err(Error::usage(format!("{space:?} is not a tensor space")));
    };
    space.validate_key(key)?;
    let ell = inner.len();
    let mut cells = vec![vec![Vec::new(); ell]; *copies];
    for (e, &l) in key.labels().iter().enumerate() {
        cells[l as usize / ell][l as usize % ell].push(e + 1);
    }
    Ok(cells.into_iter().map(|rows| Tabloid { rows }).collect())
}

/// A finite linear combination of basis elements of one space.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleVector {
    space: Space,
    terms: BTreeMap<BasisKey, Rational>,
}

impl ModuleVector {
    pub fn zero(space: Space) -> Self {
        ModuleVector {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(space: Space, key: BasisKey) -> Result<Self> {
        space.validate_key(&key)?;
        let mut v = ModuleVector::zero(space);
        v.terms.insert(key, Rational::one());
        Ok(v)
    }

    pub(crate) fn single(space: Space, key: BasisKey, c: Rational) -> Self {
        let mut v = ModuleVector::zero(space);
        v.add_term(key, c);
        v
    }

    pub fn from_tabloid(t: &Tabloid) -> Result<Self> {
        ModuleVector::basis(Space::Permutation(t.shape()), t.key()?)
    }

    pub fn from_plethystic(t: &PlethysticTabloid) -> Result<Self> {
        ModuleVector::basis(t.space(), t.key()?)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &BasisKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·key`; the key must already be canonical for this space.
    pub fn add_term(&mut self, key: BasisKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        if self.space != other.space {
            return Err(Error::usage(format!(
                "cannot add vectors of {:?} and {:?}",
                self.space, other.space
            )));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero(self.space.clone());
        }
        ModuleVector {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: ", self.space)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Checks that `sigma` lists the images `σ(1), …, σ(N)` of a permutation.
pub fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if sigma.len() != n {
        return Err(Error::usage(format!(
            "permutation of {} points acting on {n} entries",
            sigma.len()
        )));
    }
    for &s in sigma {
        if s == 0 || s > n || seen[s] {
            return Err(Error::usage(format!("{sigma:?} is not a permutation of 1..={n}")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// `σ·v`: every entry `e` is replaced by `σ(e)`.
pub fn act(sigma: &[usize], v: &ModuleVector) -> Result<ModuleVector> {
    check_permutation(sigma, v.space.ambient())?;
    let layout = v.space.layout()?;
    let mut out = ModuleVector::zero(v.space.clone());
    for (key, c) in &v.terms {
        let mut labels = vec![0u8; key.labels().len()];
        for (e, &l) in key.labels().iter().enumerate() {
            labels[sigma[e] - 1] = l;
        }
        if matches!(v.space, Space::Plethystic { .. }) {
            layout.canonicalize(&mut labels);
        }
        out.add_term(BasisKey::from_labels(labels), c.clone());
    }
    Ok(out)
}
