//! The projection `φ`, its section `φ̃`, the transposition map `Ψ`, and the
//! generalized Foulkes–Howe map `F_{ν,μ} = φ ∘ Ψ ∘ φ̃` as an exact matrix.

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use super::{enumerate_basis_capped, BasisKey, Caps, ModuleVector, Space};
use crate::error::{Error, Result};
use crate::linalg::{self, Rational, SparseRationalMatrix};
use crate::partitions::Partition;

/// `φ: M^{μ^n} → M^{ν[μ]}`, placing the `i`-th tabloid of the tuple in the
/// `i`-th cell of `ν` (reading order).
pub fn phi(v: &ModuleVector, outer: &Partition) -> Result<ModuleVector> {
    let Space::Tensor { inner, copies } = v.space() else {
        return Err(Error::usage(format!("φ expects a tensor vector, got {:?}", v.space())));
    };
    if *copies != outer.size() {
        return Err(Error::usage(format!(
            "{copies} tabloids cannot fill the outer shape {outer}"
        )));
    }
    let target = Space::plethystic(outer, inner);
    let layout = target.layout()?;
    let mut out = ModuleVector::zero(target);
    for (key, c) in v.terms() {
        let mut labels = key.labels().to_vec();
        layout.canonicalize(&mut labels);
        out.add_term(BasisKey::from_labels(labels), c.clone());
    }
    Ok(out)
}

/// Every relabelling of slots that only moves slots within their outer row.
fn outer_rearrangements(outer: &Partition) -> Vec<Vec<usize>> {
    let mut start = 0;
    let mut per_row = Vec::new();
    for &len in outer.parts() {
        per_row.push((start..start + len).permutations(len).collect::<Vec<_>>());
        start += len;
    }
    concat_product(&per_row)
}

/// All concatenations choosing one sequence from each group.
fn concat_product(groups: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    groups.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(c);
                    v
                })
            })
            .collect()
    })
}

/// `φ̃: M^{ν[μ]} → M^{μ^n}`, averaging over the rearrangements of inner
/// tabloids within outer rows.
pub fn phi_tilde(w: &ModuleVector) -> Result<ModuleVector> {
    let Space::Plethystic { outer, inner } = w.space() else {
        return Err(Error::usage(format!("φ̃ expects a plethystic vector, got {:?}", w.space())));
    };
    let ell = inner.len();
    let arrangements = outer_rearrangements(outer);
    let weight = Rational::new(BigInt::from(1), BigInt::from(arrangements.len()));
    let mut out = ModuleVector::zero(Space::tensor(inner, outer.size()));
    for (key, c) in w.terms() {
        let c = c * &weight;
        for slots in &arrangements {
            let labels = key
                .labels()
                .iter()
                .map(|&l| {
                    let (slot, row) = (l as usize / ell, l as usize % ell);
                    (slots[slot] * ell + row) as u8
                })
                .collect();
            out.add_term(BasisKey::from_labels(labels), c.clone());
        }
    }
    Ok(out)
}

/// Row index of each cell of `shape`, cells in reading order.
fn cell_rows(shape: &Partition) -> Vec<usize> {
    shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| std::iter::repeat(r).take(len))
        .collect()
}

/// `Ψ: M^{μ^n} → M^{ν^m}`. With `x_{i,j}` the `j`-th entry of `t_i`,
/// `s_j` has `x_{i,j}` in its `i`-th cell; the result is summed over every
/// ordering of the rows of every `t_i`.
pub fn psi(v: &ModuleVector, target: &Partition) -> Result<ModuleVector> {
    let Space::Tensor { inner, copies } = v.space() else {
        return Err(Error::usage(format!("Ψ expects a tensor vector, got {:?}", v.space())));
    };
    if *copies != target.size() {
        return Err(Error::usage(format!(
            "a tuple of {copies} tabloids cannot be read through the shape {target}"
        )));
    }
    let (ell, n) = (inner.len(), *copies);
    let nu_rows = cell_rows(target);
    let nu_ell = target.len();
    let mut out = ModuleVector::zero(Space::tensor(target, inner.size()));
    for (key, c) in v.terms() {
        let mut rows = vec![vec![Vec::new(); ell]; n];
        for (e, &l) in key.labels().iter().enumerate() {
            rows[l as usize / ell][l as usize % ell].push(e);
        }
        let orderings: Vec<Vec<Vec<usize>>> = rows
            .iter()
            .map(|t| {
                let per_row: Vec<Vec<Vec<usize>>> =
                    t.iter().map(|r| r.iter().copied().permutations(r.len()).collect()).collect();
                concat_product(&per_row)
            })
            .collect();
        let mut labels = vec![0u8; key.labels().len()];
        fill_psi(&orderings, 0, &nu_rows, nu_ell, &mut labels, &mut |labels| {
            out.add_term(BasisKey::from_labels(labels.to_vec()), c.clone());
        });
    }
    Ok(out)
}

fn fill_psi(
    orderings: &[Vec<Vec<usize>>],
    i: usize,
    nu_rows: &[usize],
    nu_ell: usize,
    labels: &mut [u8],
    emit: &mut impl FnMut(&[u8]),
) {
    if i == orderings.len() {
        emit(labels);
        return;
    }
    for seq in &orderings[i] {
        for (j, &e) in seq.iter().enumerate() {
            labels[e] = (j * nu_ell + nu_rows[i]) as u8;
        }
        fill_psi(orderings, i + 1, nu_rows, nu_ell, labels, emit);
    }
}

/// A linear map between two tabloid spaces in their sorted bases; column
/// `j` is the image of `domain_basis[j]`.
#[derive(Clone, Debug)]
pub struct MapMatrix {
    pub domain: Space,
    pub codomain: Space,
    pub domain_basis: Vec<BasisKey>,
    pub codomain_basis: Vec<BasisKey>,
    pub matrix: SparseRationalMatrix,
}

impl MapMatrix {
    /// Assembles a matrix from the image of each domain basis element,
    /// computed in parallel.
    pub fn build(
        domain: Space,
        codomain: Space,
        caps: &Caps,
        image: impl Fn(&BasisKey) -> Result<ModuleVector> + Sync,
    ) -> Result<MapMatrix> {
        let domain_basis = enumerate_basis_capped(&domain, caps)?;
        let codomain_basis = enumerate_basis_capped(&codomain, caps)?;
        let columns = domain_basis
            .par_iter()
            .map(|key| {
                let v = image(key)?;
                if *v.space() != codomain {
                    return Err(Error::usage(format!("image lands in {:?}", v.space())));
                }
                v.terms()
                    .map(|(k, c)| {
                        let row = codomain_basis
                            .binary_search(k)
                            .map_err(|_| Error::usage(format!("{k:?} is not a basis key")))?;
                        Ok((row, c.clone()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = SparseRationalMatrix::from_columns(codomain_basis.len(), columns)?;
        Ok(MapMatrix {
            domain,
            codomain,
            domain_basis,
            codomain_basis,
            matrix,
        })
    }

    /// Image of one domain basis element.
    pub fn apply_key(&self, key: &BasisKey) -> Result<ModuleVector> {
        let j = self
            .domain_basis
            .binary_search(key)
            .map_err(|_| Error::usage(format!("{key:?} is not in the domain basis")))?;
        let mut out = ModuleVector::zero(self.codomain.clone());
        for (row, c) in self.matrix.column(j) {
            out.add_term(self.codomain_basis[*row].clone(), c.clone());
        }
        Ok(out)
    }

    pub fn apply(&self, v: &ModuleVector) -> Result<ModuleVector> {
        if *v.space() != self.domain {
            return Err(Error::usage(format!(
                "map from {:?} applied to a vector of {:?}",
                self.domain,
                v.space()
            )));
        }
        let mut out = ModuleVector::zero(self.codomain.clone());
        for (key, c) in v.terms() {
            for (k, d) in self.apply_key(key)?.terms() {
                out.add_term(k.clone(), c * d);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        linalg::is_injective(&self.matrix)
    }
}

/// `F_{ν,μ} = φ ∘ Ψ ∘ φ̃ : M^{ν[μ]} → M^{μ[ν]}`.
pub fn fh_map_image(key: &BasisKey, nu: &Partition, mu: &Partition) -> Result<ModuleVector> {
    let v = ModuleVector::single(Space::plethystic(nu, mu), key.clone(), Rational::from_integer(1.into()));
    phi(&psi(&phi_tilde(&v)?, nu)?, mu)
}

/// Matrix of the generalized Foulkes–Howe map `F_{ν,μ}`.
pub fn fh_map_matrix(nu: &Partition, mu: &Partition, caps: &Caps) -> Result<MapMatrix> {
    if nu.is_empty() || mu.is_empty() {
        return Err(Error::usage("the Foulkes–Howe map needs nonempty partitions"));
    }
    MapMatrix::build(
        Space::plethystic(nu, mu),
        Space::plethystic(mu, nu),
        caps,
        |key| fh_map_image(key, nu, mu),
    )
}

/// The identity on `space`.
pub fn identity_map(space: &Space, caps: &Caps) -> Result<MapMatrix> {
    MapMatrix::build(space.clone(), space.clone(), caps, |key| {
        Ok(ModuleVector::single(space.clone(), key.clone(), Rational::from_integer(1.into())))
    })
}

#[cfg(test)]
mod tests;
