//! Checks against values known independently of the reconstruction: products of
//! projective spaces, the Apéry numbers, and the shipped fixtures.

use num_bigint::BigInt;
use num_traits::One;

use fano_qc::expr::named_lines;
use fano_qc::fixtures;
use fano_qc::lefschetz::{self, Annihilator, IntersectionSpec};
use fano_qc::novikov::QPoly;
use fano_qc::qde::{self, DifferentialSystem};
use fano_qc::rational::{factorial, int, Rational};
use fano_qc::reconstruct::{reconstruct, verify_relation};
use fano_qc::ring::{BundleSpec, CohRing, Monomial};
use fano_qc::seeds::{parse_seeds, seed_table, SeedSource};
use fano_qc::Error;

fn binom(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn flagship() -> CohRing {
    CohRing::new(&BundleSpec::flagship()).unwrap()
}

#[test]
fn product_j_functions() {
    // J of P^n x P^m has c_ab = 1 / (a!^(n+1) b!^(m+1))
    for (n, r) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let ring = CohRing::new(&BundleSpec::new(n, r, &[]).unwrap()).unwrap();
        let q = reconstruct(&ring, &SeedSource::Product).unwrap();
        let sys = DifferentialSystem::new(&ring, &q);
        assert_eq!(sys.weights(), (n + 1, r));
        let c = qde::identity_row_coefficients(&sys, 6).unwrap();
        for (&(a, b), v) in &c {
            let denom = factorial(a).pow(n + 1) * factorial(b).pow(r);
            assert_eq!(
                v,
                &Rational::new(BigInt::one(), denom),
                "P^{n} x P^{} at ({a}, {b})",
                r - 1
            );
        }
    }
}

#[test]
fn product_relations() {
    for (n, r) in [(1, 2), (2, 3), (3, 2)] {
        let ring = CohRing::new(&BundleSpec::new(n, r, &[]).unwrap()).unwrap();
        let q = reconstruct(&ring, &SeedSource::Product).unwrap();
        for rel in [format!("p^{} - q1", n + 1), format!("xi^{r} - q2")] {
            let res = verify_relation(&q, &rel).unwrap();
            assert!(res.iter().all(QPoly::is_zero), "{rel} on P^{n} x P^{}", r - 1);
        }
    }
}

#[test]
fn apery_diagonal_beyond_the_printed_table() {
    let ring = flagship();
    let q = reconstruct(&ring, &SeedSource::Blowup).unwrap();
    let sys = DifferentialSystem::new(&ring, &q);
    let c = qde::identity_row_coefficients(&sys, 20).unwrap();
    let table = qde::apery_table(&c, 11, sys.weights()).unwrap();
    for i in 0..11u32 {
        let apery: BigInt = (0..=i).map(|k| (binom(i, k) * binom(i + k, k)).pow(2)).sum();
        assert_eq!(table[i as usize][i as usize], apery, "diagonal entry {i}");
    }
    // zero below the slant diagonal
    for (i, row) in table.iter().enumerate() {
        for (j, v) in row.iter().enumerate().filter(|(j, _)| i > 2 * j) {
            assert_eq!(v, &BigInt::from(0), "({i}, {j})");
        }
    }
}

#[test]
fn printed_delta1_is_flagged() {
    let ring = flagship();
    let q = reconstruct(&ring, &SeedSource::Blowup).unwrap();
    let sys = DifferentialSystem::new(&ring, &q);
    let (_, printed) = qde::parse_operator_file(fixtures::DELTA1_PRINTED).unwrap().remove(0);
    assert_eq!(printed.len(), 23);
    let bad = printed.homogeneous_degree(sys.weights()).unwrap_err();
    assert_eq!(printed.term_text(bad), "-2*D1*D2*q1*q2*z");
    let ops = qde::parse_operator_file(fixtures::DELTA_OPS).unwrap();
    let counts: Vec<usize> = ops.iter().map(|(_, o)| o.len()).collect();
    assert_eq!(counts, vec![23, 9, 7, 12]);
    for (_, op) in &ops {
        assert!(op.homogeneous_degree(sys.weights()).unwrap().is_some());
    }
    // the printed one fails on J, the corrected one does not
    let j = qde::j_series(&sys, 6).unwrap();
    assert!(!qde::apply_operator(&sys, &printed, &j).is_zero());
    assert!(qde::apply_operator(&sys, &ops[0].1, &j).is_zero());
}

#[test]
fn seed_fixture_matches_computation() {
    let ring = flagship();
    let shipped = parse_seeds(&ring, fixtures::FLAGSHIP_BLOWUP_SEEDS).unwrap();
    let computed = seed_table(&ring, &SeedSource::Blowup).unwrap();
    assert_eq!(shipped.len(), computed.len());
    for (a, b, class, v) in computed.iter() {
        assert_eq!(shipped.get(a, b, class), Some(v));
    }
    // a table source holding exactly these values reproduces the builtin run
    let from_table = reconstruct(&ring, &SeedSource::Table(shipped)).unwrap();
    assert_eq!(from_table, reconstruct(&ring, &SeedSource::Blowup).unwrap());
}

#[test]
fn empty_seed_table_names_a_base_invariant() {
    let ring = flagship();
    let empty = parse_seeds(&ring, "# nothing\n").unwrap();
    match reconstruct(&ring, &SeedSource::Table(empty)) {
        Err(Error::MissingSeed { a, b, .. }) => assert_eq!((a, b), (1, 0)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn config_fixtures() {
    assert_eq!(
        BundleSpec::from_toml(fixtures::FLAGSHIP_TOML).unwrap(),
        BundleSpec::flagship()
    );
    assert_eq!(
        BundleSpec::from_toml(fixtures::P1_TRIVIAL_TOML).unwrap(),
        BundleSpec::p1_trivial()
    );
}

#[test]
fn flagship_top_class_and_dimensions() {
    let ring = flagship();
    assert_eq!(ring.size(), 30);
    let top = ring.monomial(Monomial { p: 4, xi: 5 });
    assert_eq!(ring.integrate(&top), int(1));
    // xi^6 = 3 p xi^5 - 5 p^2 xi^4 + 5 p^3 xi^3
    let xi6 = ring.reduce_monomial(0, 6);
    let expect = {
        let mut x = ring.monomial(Monomial { p: 1, xi: 5 }).scaled(&int(3));
        x.add_scaled(&ring.monomial(Monomial { p: 2, xi: 4 }), &int(-5));
        x.add_scaled(&ring.monomial(Monomial { p: 3, xi: 3 }), &int(5));
        x
    };
    assert_eq!(xi6, expect);
}

#[test]
fn relation_fixture_names() {
    let names: Vec<String> = named_lines(fixtures::RELATIONS)
        .unwrap()
        .into_iter()
        .map(|(_, n, _)| n)
        .collect();
    assert_eq!(names, ["R1", "R2"]);
}

#[test]
fn cut_product_space_period() {
    // a fibre hyperplane in P^1 x P^2 is P^1 x P^1: d_ab = 1/(a!^2 b!^2), no mirror correction
    let ring = CohRing::new(&BundleSpec::new(1, 3, &[]).unwrap()).unwrap();
    let q = reconstruct(&ring, &SeedSource::Product).unwrap();
    let sys = DifferentialSystem::new(&ring, &q);
    let c = qde::identity_row_coefficients(&sys, 24).unwrap();
    let cut = IntersectionSpec::parse("xi").unwrap();
    let d = lefschetz::hypergeometric_modify(&c, &cut);
    let mm = lefschetz::mirror_map_correction(&d, sys.weights(), &cut).unwrap();
    assert!(mm.g0.is_empty());
    let plain = lefschetz::period_sequence(&d, &mm.multiplier, 25).unwrap();
    for (m, v) in plain.iter().enumerate() {
        let m = m as u32;
        assert_eq!(v, &Rational::new(binom(2 * m, m), factorial(m).pow(2)));
    }
    // reg_m = binom(2m, m)/m! has (m+1)^2 reg_(m+1) = 2 (2m+1) reg_m
    let reg = lefschetz::regularize(&plain);
    let expect = lefschetz::PFOp::parse("D^2 - 4*t*D - 2*t").unwrap();
    assert!(lefschetz::pf_apply(&expect, &reg).iter().all(|x| *x == int(0)));
    match lefschetz::find_annihilator(&reg, 2, 1).unwrap() {
        Annihilator::Unique(op) => assert_eq!(op, expect),
        other => panic!("{other:?}"),
    }
}

#[test]
fn truncation_is_reported() {
    let ring = flagship();
    let q = reconstruct(&ring, &SeedSource::Blowup).unwrap();
    let sys = DifferentialSystem::new(&ring, &q);
    let c = qde::identity_row_coefficients(&sys, 5).unwrap();
    let cut = IntersectionSpec::parse("p,xi^5").unwrap();
    let d = lefschetz::hypergeometric_modify(&c, &cut);
    let mm = lefschetz::mirror_map_correction(&d, sys.weights(), &cut).unwrap();
    match lefschetz::period_sequence(&d, &mm.multiplier, 10) {
        Err(Error::Truncation {
            needed: 10,
            achievable: 6,
        }) => {}
        other => panic!("{other:?}"),
    }
}
