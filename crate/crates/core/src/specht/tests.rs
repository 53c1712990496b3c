use super::*;
use crate::partition;
use crate::partitions::{enumerate_partitions, factorial, partitions_up_to};
use crate::symfunc::{kostka, plethysm_coefficient};
use crate::tabloids::{act, phi, ModuleVector};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{seq::SliceRandom, SeedableRng};

fn tab(rows: &[&[usize]]) -> Tabloid {
    Tabloid::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn filled(rows: &[&[usize]]) -> FilledTableau {
    FilledTableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn bij(rows: &[&[usize]]) -> BijectiveTableau {
    BijectiveTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn vector(terms: &[(Tabloid, i64)]) -> ModuleVector {
    let space = Space::Permutation(terms[0].0.shape());
    let mut v = ModuleVector::zero(space);
    for (t, c) in terms {
        v.add_term(t.key().unwrap(), Rational::from_integer(BigInt::from(*c)));
    }
    v
}

fn example() -> (FilledTableau, BijectiveTableau) {
    (filled(&[&[1, 1, 3], &[2, 2]]), bij(&[&[1, 2, 3], &[4, 5]]))
}

#[test]
fn f_t_worked_example() {
    let (tau, t) = example();
    assert!(tau.is_semistandard());
    assert_eq!(f_t(&tau, &t).unwrap(), tab(&[&[1, 2], &[4, 5], &[3]]));
}

#[test]
fn theta_hat_worked_example() {
    let (tau, t) = example();
    let expected = vector(&[
        (tab(&[&[1, 2], &[4, 5], &[3]]), 1),
        (tab(&[&[1, 3], &[4, 5], &[2]]), 1),
        (tab(&[&[2, 3], &[4, 5], &[1]]), 1),
    ]);
    assert_eq!(theta_hat(&tau, &t).unwrap(), expected);
}

#[test]
fn theta_worked_example() {
    let (tau, t) = example();
    let plus = [
        tab(&[&[1, 2], &[4, 5], &[3]]),
        tab(&[&[1, 3], &[4, 5], &[2]]),
        tab(&[&[2, 3], &[4, 5], &[1]]),
        tab(&[&[4, 5], &[1, 2], &[3]]),
        tab(&[&[3, 4], &[1, 2], &[5]]),
        tab(&[&[3, 5], &[1, 2], &[4]]),
    ];
    let minus = [
        tab(&[&[2, 4], &[1, 5], &[3]]),
        tab(&[&[3, 4], &[1, 5], &[2]]),
        tab(&[&[2, 3], &[1, 5], &[4]]),
        tab(&[&[1, 5], &[2, 4], &[3]]),
        tab(&[&[1, 3], &[2, 4], &[5]]),
        tab(&[&[3, 5], &[2, 4], &[1]]),
    ];
    let terms: Vec<(Tabloid, i64)> = plus
        .into_iter()
        .map(|t| (t, 1))
        .chain(minus.into_iter().map(|t| (t, -1)))
        .collect();
    let v = theta(&tau, &t).unwrap();
    assert_eq!(v.len(), 12);
    assert_eq!(v, vector(&terms));
}

#[test]
fn join_worked_example() {
    let a = filled(&[&[1, 1, 1], &[2, 2, 3], &[3, 4]]);
    let b = filled(&[&[1, 2], &[3, 4]]);
    let j = join(&a, &b).unwrap();
    assert_eq!(j, filled(&[&[1, 1, 1, 1, 2], &[2, 2, 3, 3, 4], &[3, 4]]));
    assert_eq!(*j.shape(), partition![5, 5, 2]);
}

#[test]
fn ssyt_counts_are_kostka_numbers() {
    for n in 1..=7 {
        let all = enumerate_partitions(n).unwrap();
        for lambda in &all {
            for content in &all {
                let list = enumerate_ssyt(lambda, content).unwrap();
                assert_eq!(BigUint::from(list.len()), kostka(lambda, content).unwrap(), "{lambda} {content}");
                assert!(list.iter().all(|t| t.is_semistandard() && t.content_partition().unwrap() == *content));
                assert!(list.windows(2).all(|w| w[0] != w[1]));
            }
        }
    }
}

#[test]
fn kostka_times_dimension_is_permutation_module_dimension() {
    for n in 1..=6 {
        for content in enumerate_partitions(n).unwrap() {
            let total: BigUint = enumerate_partitions(n)
                .unwrap()
                .iter()
                .map(|l| BigUint::from(enumerate_ssyt(l, &content).unwrap().len()) * l.num_standard_tableaux())
                .sum();
            let dim = factorial(n) / content.parts().iter().map(|&p| factorial(p)).product::<BigUint>();
            assert_eq!(total, dim, "{content}");
        }
    }
}

#[test]
fn polytabloid_matches_its_definition() {
    let t = bij(&[&[1, 2], &[3]]);
    let expected = vector(&[(tab(&[&[1, 2], &[3]]), 1), (tab(&[&[2, 3], &[1]]), -1)]);
    assert_eq!(polytabloid(&t).unwrap(), expected);
    let t = bij(&[&[4, 1], &[2, 3]]);
    let expected = vector(&[
        (tab(&[&[1, 4], &[2, 3]]), 1),
        (tab(&[&[2, 1], &[4, 3]]), -1),
        (tab(&[&[4, 3], &[2, 1]]), -1),
        (tab(&[&[2, 3], &[4, 1]]), 1),
    ]);
    assert_eq!(polytabloid(&t).unwrap(), expected);
}

#[test]
fn theta_bar_is_phi_of_theta() {
    let nu = partition![2, 1];
    let mu = partition![2];
    let content = mu.repeat(3);
    for lambda in enumerate_partitions(6).unwrap() {
        let t = BijectiveTableau::row_reading(&lambda);
        for tau in enumerate_ssyt(&lambda, &content).unwrap() {
            let v = theta(&tau, &t).unwrap();
            let mut tensor = ModuleVector::zero(Space::tensor(&mu, 3));
            for (key, c) in v.terms() {
                let labels = key.labels().iter().map(|&l| l % 3 + l / 3).collect();
                tensor.add_term(BasisKey::from_labels(labels), c.clone());
            }
            assert_eq!(phi(&tensor, &nu).unwrap(), theta_bar(&tau, &t, &nu).unwrap());
        }
    }
}

#[test]
fn ssh_rank_matches_plethysm_coefficients() {
    let all = partitions_up_to(6).unwrap();
    for nu in all.iter().filter(|p| !p.is_empty()) {
        for mu in all.iter().filter(|p| !p.is_empty()) {
            let size = nu.size() * mu.size();
            if size > 6 {
                continue;
            }
            for lambda in enumerate_partitions(size).unwrap() {
                let rank = ssh_rank(&lambda, nu, mu).unwrap();
                let a = plethysm_coefficient(nu, mu, &lambda).unwrap();
                assert_eq!(BigInt::from(rank), a, "ν={nu} μ={mu} λ={lambda}");
            }
        }
    }
}

#[test]
fn ssh_rank_examples() {
    assert_eq!(ssh_rank(&partition![2, 2], &partition![2], &partition![2]).unwrap(), 1);
    assert_eq!(ssh_rank(&partition![2, 2, 2], &partition![2], &partition![3]).unwrap(), 0);
    assert_eq!(ssh_rank(&partition![2, 2, 2], &partition![3], &partition![2]).unwrap(), 1);
    assert_eq!(ssh_rank(&partition![1, 1, 1, 1], &partition![2], &partition![2]).unwrap(), 0);
    assert!(ssh_rank(&partition![3], &partition![2], &partition![2]).is_err());
}

#[test]
fn single_coefficients_match_full_expansion() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for (nu, mu) in [
        (partition![2], partition![2]),
        (partition![1, 1], partition![2, 1]),
        (partition![2, 1], partition![2]),
        (partition![3], partition![1, 1]),
    ] {
        let space = Space::plethystic(&nu, &mu);
        let basis = crate::tabloids::enumerate_basis(&space).unwrap();
        for lambda in enumerate_partitions(nu.size() * mu.size()).unwrap() {
            let t = BijectiveTableau::row_reading(&lambda);
            for tau in enumerate_ssyt(&lambda, &mu.repeat(nu.size())).unwrap() {
                let v = theta_bar(&tau, &t, &nu).unwrap();
                let mut keys: Vec<BasisKey> = v.terms().map(|(k, _)| k.clone()).collect();
                keys.extend(basis.choose_multiple(&mut rng, 5).cloned());
                for key in keys {
                    let c = theta_bar_coefficient(&tau, &t, &nu, &key).unwrap();
                    assert_eq!(Rational::from_integer(c), v.coefficient(&key), "{tau} {key:?}");
                }
            }
        }
    }
}

#[test]
fn homomorphisms_commute_with_the_action() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(9);
    let (tau, t) = example();
    for _ in 0..20 {
        let mut sigma: Vec<usize> = (1..=5).collect();
        sigma.shuffle(&mut rng);
        let moved = BijectiveTableau::new(
            t.rows().iter().map(|r| r.iter().map(|&e| sigma[e - 1]).collect()).collect(),
        )
        .unwrap();
        assert_eq!(theta_hat(&tau, &moved).unwrap(), act(&sigma, &theta_hat(&tau, &t).unwrap()).unwrap());
        assert_eq!(theta(&tau, &moved).unwrap(), act(&sigma, &theta(&tau, &t).unwrap()).unwrap());
        let nu = partition![1];
        let single = filled(&[&[1, 1, 1], &[2, 2]]);
        assert_eq!(
            theta_bar(&single, &moved, &nu).unwrap(),
            act(&sigma, &theta_bar(&single, &t, &nu).unwrap()).unwrap()
        );
    }
}

#[test]
fn malformed_tableaux_are_rejected() {
    assert!(BijectiveTableau::new(vec![vec![1, 1]]).is_err());
    assert!(BijectiveTableau::new(vec![vec![1], vec![2, 3]]).is_err());
    assert!(FilledTableau::from_rows(vec![vec![0]]).is_err());
    let (tau, _) = example();
    assert!(f_t(&tau, &bij(&[&[1, 2], &[3, 4], &[5]])).is_err());
    assert!(theta_bar(&tau, &bij(&[&[1, 2, 3], &[4, 5]]), &partition![2]).is_err());
}

#[test]
fn lifts_have_the_expected_shapes() {
    let tau = filled(&[&[1, 1, 2], &[3, 4]]);
    let h = stability_lift_h(&tau, 2, &partition![1]).unwrap();
    assert_eq!(h, filled(&[&[1, 1, 2, 1, 2], &[3, 4]]));
    let two = stability_lift_2col(&tau, 4).unwrap();
    assert_eq!(two, filled(&[&[1, 1, 1, 1, 2], &[2, 2, 3, 4], &[3, 3], &[4, 4]]));
    assert!(two.is_semistandard());
    let t = BijectiveTableau::row_reading(&partition![3, 2]);
    assert_eq!(lift_generator_h(&t, 2).unwrap().rows()[0], vec![1, 2, 3, 6, 7]);
    assert_eq!(
        lift_generator_2col(&t, 2).unwrap().rows().to_vec(),
        vec![vec![6, 7, 1, 2, 3], vec![8, 9, 4, 5]]
    );
    assert!(stability_lift_2col(&tau, 1).is_err());
}

#[test]
fn lifted_homomorphisms_do_not_vanish() {
    for (nu, mu) in [(partition![2], partition![1]), (partition![2], partition![2]), (partition![1, 1], partition![2])] {
        let size = nu.size() * mu.size();
        for lambda in enumerate_partitions(size).unwrap() {
            let t = BijectiveTableau::row_reading(&lambda);
            for tau in enumerate_ssyt(&lambda, &mu.repeat(nu.size())).unwrap() {
                if theta_bar(&tau, &t, &nu).unwrap().is_zero() {
                    continue;
                }
                for (mode, extra) in [(StabilityMode::HStrip, partition![1]), (StabilityMode::TwoColumn, partition![])] {
                    let key = lifted_nonvanishing(&tau, &nu, &extra, mode).unwrap();
                    assert!(key.is_some(), "{tau} under {mode:?}");
                }
            }
        }
    }
}

#[test]
fn stability_reports() {
    let caps = Caps::default();
    let reports =
        verify_stability_all(&partition![2], &partition![2], &partition![1], StabilityMode::HStrip, &caps).unwrap();
    assert_eq!(reports.len(), 5);
    for rep in &reports {
        assert!(rep.inequality_holds, "{rep:?}");
        if !rep.r.is_zero() {
            assert_eq!(rep.lift_rank.map(BigInt::from), Some(rep.r.clone()), "{rep:?}");
            assert!(rep.witness_tableau.is_some());
        }
    }
    let json = reports[0].to_json();
    assert_eq!(json["lambda"], serde_json::json!([4]));
    assert_eq!(json["lifted_lambda"], serde_json::json!([6]));
    let two = verify_stability_all(&partition![2], &partition![1], &partition![], StabilityMode::TwoColumn, &caps)
        .unwrap();
    assert!(two.iter().all(|r| r.inequality_holds));
    assert_eq!(two[0].lifted_lambda, partition![4, 2]);
}
