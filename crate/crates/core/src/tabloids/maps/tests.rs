use super::*;
use crate::linalg::{rank_with_order, PivotOrder};
use crate::partition;
use crate::partitions::partitions_up_to;
use crate::tabloids::{
    act, enumerate_basis, tensor_key, union_compose_injection, union_inner_inject,
    union_outer_iso, split_outer, PlethysticTabloid, Tabloid,
};
use rand::{seq::SliceRandom, SeedableRng};

fn tab(rows: &[&[usize]]) -> Tabloid {
    Tabloid::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn tensor(tuple: &[Tabloid]) -> ModuleVector {
    let (space, key) = tensor_key(tuple).unwrap();
    ModuleVector::basis(space, key).unwrap()
}

#[test]
fn phi_tilde_worked_example() {
    let t1 = tab(&[&[1, 9], &[7, 11]]);
    let t2 = tab(&[&[6, 10], &[2, 8]]);
    let t3 = tab(&[&[4, 12], &[3, 5]]);
    let big_t = PlethysticTabloid::new(
        &partition![2, 2],
        vec![vec![t1.clone(), t2.clone()], vec![t3.clone()]],
    )
    .unwrap();
    let w = ModuleVector::from_plethystic(&big_t).unwrap();
    let lifted = phi_tilde(&w).unwrap();
    let expected = tensor(&[t1.clone(), t2.clone(), t3.clone()])
        .scale(&q(1, 2))
        .add(&tensor(&[t2, t1, t3]).scale(&q(1, 2)))
        .unwrap();
    assert_eq!(lifted, expected);
    assert_eq!(phi(&lifted, &partition![2, 1]).unwrap(), w);
}

#[test]
fn phi_identifies_outer_rearrangements() {
    let a = tab(&[&[1, 3]]);
    let b = tab(&[&[2, 4]]);
    let outer = partition![2];
    let x = phi(&tensor(&[a.clone(), b.clone()]), &outer).unwrap();
    let y = phi(&tensor(&[b, a]), &outer).unwrap();
    assert_eq!(x, y);
    assert_eq!(x.len(), 1);
    // ν = (1^n): φ̃ is a single term with coefficient 1
    let w = phi(&tensor(&[tab(&[&[1, 3]]), tab(&[&[2, 4]])]), &partition![1, 1]).unwrap();
    let lifted = phi_tilde(&w).unwrap();
    assert_eq!(lifted.len(), 1);
    assert_eq!(lifted.mass(), q(1, 1));
}

#[test]
fn phi_after_phi_tilde_is_identity() {
    for nu in partitions_up_to(6).unwrap() {
        for mu in partitions_up_to(6).unwrap() {
            let n = nu.size() * mu.size();
            if n == 0 || n > 6 {
                continue;
            }
            let space = Space::plethystic(&nu, &mu);
            for key in enumerate_basis(&space).unwrap() {
                let w = ModuleVector::basis(space.clone(), key).unwrap();
                assert_eq!(phi(&phi_tilde(&w).unwrap(), &nu).unwrap(), w);
            }
        }
    }
}

fn swaps(pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut sigma: Vec<usize> = (1..=12).collect();
    for &(a, b) in pairs {
        sigma.swap(a - 1, b - 1);
    }
    sigma
}

#[test]
fn psi_worked_example() {
    let v = tensor(&[
        tab(&[&[1, 2], &[3, 4]]),
        tab(&[&[5, 6], &[7, 8]]),
        tab(&[&[9, 10], &[11, 12]]),
    ]);
    let image = psi(&v, &partition![2, 1]).unwrap();
    let s = tensor(&[
        tab(&[&[1, 5], &[9]]),
        tab(&[&[2, 6], &[10]]),
        tab(&[&[3, 7], &[11]]),
        tab(&[&[4, 8], &[12]]),
    ]);
    // the row groups of t_1, t_2, t_3 are generated by these swaps
    let generators = [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 12)];
    let mut expected = ModuleVector::zero(s.space().clone());
    for mask in 0u32..64 {
        let chosen: Vec<(usize, usize)> = generators
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &g)| g)
            .collect();
        expected = expected.add(&act(&swaps(&chosen), &s).unwrap()).unwrap();
    }
    assert_eq!(image, expected);
    assert_eq!(image.mass(), q(64, 1));
}

#[test]
fn psi_on_columns_is_a_transpose() {
    let v = tensor(&[tab(&[&[3], &[1]]), tab(&[&[2], &[4]])]);
    let image = psi(&v, &partition![1, 1]).unwrap();
    let expected = tensor(&[tab(&[&[3], &[2]]), tab(&[&[1], &[4]])]);
    assert_eq!(image, expected);
}

#[test]
fn foulkes_howe_ranks() {
    let caps = Caps::default();
    let f22 = fh_map_matrix(&partition![2], &partition![2], &caps).unwrap();
    assert_eq!((f22.matrix.rows(), f22.matrix.cols()), (3, 3));
    assert_eq!(f22.rank(), 3);
    assert!(f22.is_injective());
    let f23 = fh_map_matrix(&partition![2], &partition![3], &caps).unwrap();
    assert_eq!((f23.matrix.rows(), f23.matrix.cols()), (15, 10));
    assert_eq!(rank_with_order(&f23.matrix, PivotOrder::First), 10);
    assert_eq!(rank_with_order(&f23.matrix, PivotOrder::Last), 10);
    let f32 = fh_map_matrix(&partition![3], &partition![2], &caps).unwrap();
    assert_eq!(f32.rank(), 10);
    assert!(!f32.is_injective());
    assert!(fh_map_matrix(&partition![1, 1], &partition![2], &caps).unwrap().is_injective());
}

#[test]
fn columns_of_foulkes_howe_map_are_injective_for_small_cases() {
    let caps = Caps::default();
    for n in 1..=2 {
        for mu in partitions_up_to(3).unwrap().into_iter().filter(|m| !m.is_empty()) {
            let f = fh_map_matrix(&Partition::column(n), &mu, &caps).unwrap();
            assert!(f.is_injective(), "(1^{n}),{mu}");
        }
    }
}

#[test]
fn column_image_has_a_single_support_orbit() {
    // t_1 = {2,3,9|4,7}, t_2 = {5,6,8|1,10} in a column of two outer cells
    let t1 = tab(&[&[2, 3, 9], &[4, 7]]);
    let t2 = tab(&[&[5, 6, 8], &[1, 10]]);
    let big_t = PlethysticTabloid::new(&partition![3, 2], vec![vec![t1], vec![t2]]).unwrap();
    let w = ModuleVector::from_plethystic(&big_t).unwrap();
    let image = fh_map_image(&big_t.key().unwrap(), &partition![1, 1], &partition![3, 2]).unwrap();
    let s = PlethysticTabloid::new(
        &partition![1, 1],
        vec![
            vec![tab(&[&[2], &[5]]), tab(&[&[3], &[6]]), tab(&[&[9], &[8]])],
            vec![tab(&[&[4], &[1]]), tab(&[&[7], &[10]])],
        ],
    )
    .unwrap();
    assert!(w.len() == 1);
    // every way of matching the rows of t_1 and t_2 inside each outer row
    assert_eq!(image.len(), 3 * 2 * 2);
    let c = image.coefficient(&s.key().unwrap());
    assert_eq!(c, q(12, 1));
    assert!(image.terms().all(|(_, d)| *d == c));
}

#[test]
fn maps_are_equivariant() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for (nu, mu) in [
        (partition![2], partition![2]),
        (partition![2, 1], partition![2]),
        (partition![2], partition![2, 1]),
    ] {
        let space = Space::plethystic(&nu, &mu);
        let basis = enumerate_basis(&space).unwrap();
        let n = space.ambient();
        for _ in 0..25 {
            let key = basis.choose(&mut rng).unwrap().clone();
            let w = ModuleVector::basis(space.clone(), key.clone()).unwrap();
            let mut sigma: Vec<usize> = (1..=n).collect();
            sigma.shuffle(&mut rng);
            let sw = act(&sigma, &w).unwrap();
            let lifted = phi_tilde(&w).unwrap();
            assert_eq!(phi_tilde(&sw).unwrap(), act(&sigma, &lifted).unwrap());
            let moved = psi(&lifted, &nu).unwrap();
            assert_eq!(psi(&act(&sigma, &lifted).unwrap(), &nu).unwrap(), act(&sigma, &moved).unwrap());
            assert_eq!(phi(&act(&sigma, &lifted).unwrap(), &nu).unwrap(), sw);
            let skey = sw.terms().next().unwrap().0.clone();
            assert_eq!(
                fh_map_image(&skey, &nu, &mu).unwrap(),
                act(&sigma, &fh_map_image(&key, &nu, &mu).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn outer_union_worked_example() {
    let inner = partition![3, 2];
    let t1 = PlethysticTabloid::new(
        &inner,
        vec![vec![tab(&[&[4, 19, 11], &[8, 14]]), tab(&[&[13, 5, 9], &[7, 20]])]],
    )
    .unwrap();
    let t2 = PlethysticTabloid::new(
        &inner,
        vec![vec![tab(&[&[3, 17, 18], &[1, 2]]), tab(&[&[6, 12, 10], &[15, 16]])]],
    )
    .unwrap();
    let joined = union_outer_iso(&t1, &t2).unwrap();
    let expected = PlethysticTabloid::new(
        &inner,
        vec![t1.rows()[0].clone(), t2.rows()[0].clone()],
    )
    .unwrap();
    assert_eq!(joined, expected);
    let (a, b) = split_outer(&joined, &partition![2], &partition![2]).unwrap();
    assert_eq!((a, b), (t1.clone(), t2));
    let empty = PlethysticTabloid::new(&inner, vec![]).unwrap();
    assert!(union_outer_iso(&t1, &empty).is_err());
}

#[test]
fn outer_union_is_a_bijection_on_bases() {
    // ν_1 = ν_2 = (1), μ = (2): pairs of tabloids over a split of {1,2,3,4}
    let mu = partition![2];
    let mut images = std::collections::BTreeSet::new();
    for first in [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]] {
        let second: Vec<usize> = (1..=4).filter(|e| !first.contains(e)).collect();
        let t1 = PlethysticTabloid::new(&mu, vec![vec![tab(&[&first])]]).unwrap();
        let t2 = PlethysticTabloid::new(&mu, vec![vec![tab(&[&second])]]).unwrap();
        images.insert(union_outer_iso(&t1, &t2).unwrap().key().unwrap());
    }
    let basis = enumerate_basis(&Space::plethystic(&partition![1, 1], &mu)).unwrap();
    assert_eq!(images.into_iter().collect::<Vec<_>>(), basis);
}

#[test]
fn inner_union_worked_example() {
    let outer_rows = |a: [&[usize]; 2], b: [&[usize]; 2]| vec![vec![tab(&[a[0]]), tab(&[a[1]])], vec![tab(&[b[0]]), tab(&[b[1]])]];
    let t1 = PlethysticTabloid::new(
        &partition![3],
        outer_rows([&[4, 11, 19], &[5, 9, 13]], [&[3, 17, 18], &[6, 10, 12]]),
    )
    .unwrap();
    let t2 = PlethysticTabloid::new(
        &partition![2],
        outer_rows([&[8, 14], &[7, 20]], [&[1, 2], &[15, 16]]),
    )
    .unwrap();
    let image = union_inner_inject(&t1, &t2).unwrap();
    let inner = partition![3, 2];
    let pick = |x: [usize; 2], y: [usize; 2]| {
        let b1: [&[usize]; 2] = [&[8, 14], &[7, 20]];
        let b2: [&[usize]; 2] = [&[1, 2], &[15, 16]];
        PlethysticTabloid::new(
            &inner,
            vec![
                vec![tab(&[&[4, 11, 19], b1[x[0]]]), tab(&[&[5, 9, 13], b1[x[1]]])],
                vec![tab(&[&[3, 17, 18], b2[y[0]]]), tab(&[&[6, 10, 12], b2[y[1]]])],
            ],
        )
        .unwrap()
        .key()
        .unwrap()
    };
    assert_eq!(image.len(), 4);
    for x in [[0, 1], [1, 0]] {
        for y in [[0, 1], [1, 0]] {
            assert_eq!(image.coefficient(&pick(x, y)), q(4, 1));
        }
    }
}

#[test]
fn inner_union_is_injective_on_small_case() {
    let nu = partition![2];
    let mut vectors = Vec::new();
    for first in [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]] {
        let second: Vec<usize> = (1..=4).filter(|e| !first.contains(e)).collect();
        let t1 = PlethysticTabloid::new(&partition![1], vec![vec![tab(&[&[first[0]]]), tab(&[&[first[1]]])]]).unwrap();
        let t2 = PlethysticTabloid::new(&partition![1], vec![vec![tab(&[&[second[0]]]), tab(&[&[second[1]]])]]).unwrap();
        let v = union_inner_inject(&t1, &t2).unwrap();
        assert_eq!(*v.space(), Space::plethystic(&nu, &partition![1, 1]));
        vectors.push(v);
    }
    assert_eq!(crate::linalg::span_rank(&vectors).unwrap(), 6);
}

#[test]
fn composite_injections() {
    let caps = Caps::default();
    let mu = partition![2];
    let f1 = fh_map_matrix(&partition![1], &mu, &caps).unwrap();
    let both = union_compose_injection(&f1, &f1, &caps).unwrap();
    assert_eq!(both.domain, Space::plethystic(&partition![1, 1], &mu));
    assert_eq!(both.matrix.cols(), 6);
    assert!(both.is_injective());

    let f11 = fh_map_matrix(&partition![1, 1], &mu, &caps).unwrap();
    let mixed = union_compose_injection(&f1, &f11, &caps).unwrap();
    assert_eq!(mixed.domain, Space::plethystic(&partition![1, 1, 1], &mu));
    assert!(mixed.is_injective());

    // μ ⊔ (1) ⊴ μ for μ = (2): identity on M^{(2)[(2)]} with F_{(1),(2)}
    let id = identity_map(&Space::plethystic(&mu, &mu), &caps).unwrap();
    let cor = union_compose_injection(&id, &f1, &caps).unwrap();
    assert_eq!(cor.codomain, Space::plethystic(&mu, &partition![2, 1]));
    assert!(cor.is_injective());

    let f32 = fh_map_matrix(&partition![3], &mu, &caps).unwrap();
    let err = union_compose_injection(&f32, &f1, &caps).unwrap_err();
    assert!(err.to_string().contains("first factor"));
}
