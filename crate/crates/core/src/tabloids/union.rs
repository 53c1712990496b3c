//! Unions of plethystic tabloids along the outer shape (an isomorphism) and
//! along the inner shape (an injection), and the composite injection they
//! build from two Foulkes–Howe type maps.

use num_bigint::BigInt;

use super::maps::MapMatrix;
use super::{Caps, ModuleVector, PlethysticTabloid, Space, Tabloid};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::partitions::Partition;

/// Where the rows of `a` and of `b` land in `a ⊔ b`. Rows are sorted by
/// decreasing length; among equal lengths the rows of `a` come first, each
/// side keeping its own order.
fn merge_positions(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut tagged: Vec<(usize, usize, usize)> = a
        .iter()
        .enumerate()
        .map(|(i, &len)| (len, 0, i))
        .chain(b.iter().enumerate().map(|(i, &len)| (len, 1, i)))
        .collect();
    tagged.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut pos_a = vec![0; a.len()];
    let mut pos_b = vec![0; b.len()];
    for (p, &(_, side, i)) in tagged.iter().enumerate() {
        if side == 0 {
            pos_a[i] = p;
        } else {
            pos_b[i] = p;
        }
    }
    (pos_a, pos_b)
}

fn check_cover(first: &[usize], second: &[usize]) -> Result<()> {
    let mut all: Vec<usize> = first.iter().chain(second).copied().collect();
    all.sort_unstable();
    if all.iter().enumerate().any(|(i, &e)| e != i + 1) {
        return Err(Error::usage(
            "the two tabloids must use disjoint entries covering 1..=N",
        ));
    }
    Ok(())
}

/// `{T_1} ⊗ {T_2} ↦ {T_1 ⊔ T_2}`: stacks the outer rows.
pub fn union_outer_iso(t1: &PlethysticTabloid, t2: &PlethysticTabloid) -> Result<PlethysticTabloid> {
    if t1.inner() != t2.inner() && !t2.rows().is_empty() && !t1.rows().is_empty() {
        return Err(Error::usage(format!(
            "inner shapes {} and {} differ",
            t1.inner(),
            t2.inner()
        )));
    }
    check_cover(&t1.entries(), &t2.entries())?;
    let inner = if t1.rows().is_empty() { t2.inner() } else { t1.inner() };
    let (o1, o2) = (t1.outer(), t2.outer());
    let (pos1, pos2) = merge_positions(o1.parts(), o2.parts());
    let mut rows = vec![Vec::new(); o1.len() + o2.len()];
    for (r, row) in t1.rows().iter().enumerate() {
        rows[pos1[r]] = row.clone();
    }
    for (r, row) in t2.rows().iter().enumerate() {
        rows[pos2[r]] = row.clone();
    }
    PlethysticTabloid::new(inner, rows)
}

/// Inverse of [`union_outer_iso`]: splits `T` of shape `(ν_1 ⊔ ν_2)[μ]`.
pub fn split_outer(
    t: &PlethysticTabloid,
    nu1: &Partition,
    nu2: &Partition,
) -> Result<(PlethysticTabloid, PlethysticTabloid)> {
    if t.outer() != nu1.union(nu2) {
        return Err(Error::usage(format!(
            "outer shape {} is not {nu1} ⊔ {nu2}",
            t.outer()
        )));
    }
    let (pos1, pos2) = merge_positions(nu1.parts(), nu2.parts());
    let pick = |pos: &[usize]| pos.iter().map(|&p| t.rows()[p].clone()).collect();
    Ok((
        PlethysticTabloid::new(t.inner(), pick(&pos1))?,
        PlethysticTabloid::new(t.inner(), pick(&pos2))?,
    ))
}

/// `{t} ⊔ {t'}`: the rows of both, re-sorted by length, rows of `t` first
/// among equal lengths.
pub fn tabloid_union(a: &Tabloid, b: &Tabloid) -> Tabloid {
    let (sa, sb) = (a.shape(), b.shape());
    let (pa, pb) = merge_positions(sa.parts(), sb.parts());
    let mut rows = vec![Vec::new(); sa.len() + sb.len()];
    for (i, row) in a.rows().iter().enumerate() {
        rows[pa[i]] = row.clone();
    }
    for (i, row) in b.rows().iter().enumerate() {
        rows[pb[i]] = row.clone();
    }
    Tabloid::new(rows).expect("union of disjoint tabloids")
}

/// `{T_1} ⊗ {T_2} ↦ Σ_{σ ∈ R_{T_1} × R_{T_2}} σ·T` where `T` pairs the
/// inner tabloids of `T_1` and `T_2` cell by cell and takes row unions.
pub fn union_inner_inject(t1: &PlethysticTabloid, t2: &PlethysticTabloid) -> Result<ModuleVector> {
    if t1.outer() != t2.outer() {
        return Err(Error::usage(format!(
            "outer shapes {} and {} differ",
            t1.outer(),
            t2.outer()
        )));
    }
    check_cover(&t1.entries(), &t2.entries())?;
    let outer = t1.outer();
    let inner = t1.inner().union(t2.inner());
    // pairing a σ_1-arrangement with a σ_2-arrangement depends only on the
    // relative arrangement, reached Π ν_r! times each
    let multiplicity = BigInt::from(outer.row_group_order());
    let mut out = ModuleVector::zero(Space::plethystic(&outer, &inner));
    let per_row: Vec<Vec<Vec<usize>>> = outer
        .parts()
        .iter()
        .map(|&len| itertools::Itertools::permutations(0..len, len).collect())
        .collect();
    let mut choice = vec![0usize; outer.len()];
    loop {
        let rows = t1
            .rows()
            .iter()
            .zip(t2.rows())
            .enumerate()
            .map(|(r, (a, b))| {
                let perm = &per_row[r][choice[r]];
                a.iter().enumerate().map(|(i, ta)| tabloid_union(ta, &b[perm[i]])).collect()
            })
            .collect();
        let t = PlethysticTabloid::new(&inner, rows)?;
        out.add_term(t.key()?, Rational::from_integer(multiplicity.clone()));
        // odometer over the per-row permutations
        let mut r = 0;
        while r < choice.len() {
            choice[r] += 1;
            if choice[r] < per_row[r].len() {
                break;
            }
            choice[r] = 0;
            r += 1;
        }
        if r == choice.len() {
            break;
        }
    }
    Ok(out)
}

/// Order-preserving relabelling of `entries` onto `1..=k`, and back.
fn standardizer(entries: &[usize]) -> (impl Fn(usize) -> usize + '_, impl Fn(usize) -> usize + '_) {
    let to = move |e: usize| entries.binary_search(&e).expect("entry present") + 1;
    let back = move |i: usize| entries[i - 1];
    (to, back)
}

fn outer_inner(space: &Space) -> Result<(Partition, Partition)> {
    match space {
        Space::Plethystic { outer, inner } => Ok((outer.clone(), inner.clone())),
        other => Err(Error::usage(format!("{other:?} is not a plethystic space"))),
    }
}

/// Given injections `F_i: M^{ν_i[μ]} → M^{μ[ν_i]}`, the injection
/// `M^{(ν_1⊔ν_2)[μ]} → M^{μ[ν_1⊔ν_2]}` obtained by splitting the outer
/// shape, applying `F_1 ⊗ F_2`, and joining along the inner shape.
pub fn union_compose_injection(f1: &MapMatrix, f2: &MapMatrix, caps: &Caps) -> Result<MapMatrix> {
    let (nu1, mu) = outer_inner(&f1.domain)?;
    let (nu2, mu2) = outer_inner(&f2.domain)?;
    if mu != mu2 {
        return Err(Error::usage(format!("the maps act on {mu} and {mu2}")));
    }
    if f1.codomain != Space::plethystic(&mu, &nu1) || f2.codomain != Space::plethystic(&mu, &nu2) {
        return Err(Error::usage("each map must land in M^{μ[ν_i]}"));
    }
    if !f1.is_injective() {
        return Err(Error::usage("the first factor is not injective"));
    }
    if !f2.is_injective() {
        return Err(Error::usage("the second factor is not injective"));
    }
    let nu = nu1.union(&nu2);
    let image = |key: &super::BasisKey| -> Result<ModuleVector> {
        let t = PlethysticTabloid::from_key(&nu, &mu, key)?;
        let (t1, t2) = split_outer(&t, &nu1, &nu2)?;
        let (e1, e2) = (t1.entries(), t2.entries());
        let images = |f: &MapMatrix, t: &PlethysticTabloid, e: &[usize], nu_i: &Partition| {
            let (to, back) = standardizer(e);
            f.apply_key(&t.relabel(to).key()?)?
                .terms()
                .map(|(k, c)| Ok((PlethysticTabloid::from_key(&mu, nu_i, k)?.relabel(&back), c.clone())))
                .collect::<Result<Vec<_>>>()
        };
        let side1 = images(f1, &t1, &e1, &nu1)?;
        let side2 = images(f2, &t2, &e2, &nu2)?;
        let mut out = ModuleVector::zero(Space::plethystic(&mu, &nu));
        for (s1, c1) in &side1 {
            for (s2, c2) in &side2 {
                out = out.add(&union_inner_inject(s1, s2)?.scale(&(c1 * c2)))?;
            }
        }
        Ok(out)
    };
    MapMatrix::build(Space::plethystic(&nu, &mu), Space::plethystic(&mu, &nu), caps, image)
}
