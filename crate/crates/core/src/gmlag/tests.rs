use super::search::random_smooth_lagrangian;
use super::wedge::{basis, index_of, omega, unit, wedge_vectors};
use super::*;
use crate::exact::{GaloisField, IntMatrix, Integers, Rationals, ZModPk};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn round_trip<R: Sample>(ring: &R, n: usize, seed: u64) {
    let d = random_gm(ring, n, &mut rng(seed)).unwrap();
    let lag = gm_to_lagrangian(&d).unwrap();
    assert_eq!(rank(ring, &lag.a), 10);
    assert_eq!(lag.intersection_rank(), 5 - n);
    let back = lagrangian_to_gm(&lag).unwrap();
    assert_eq!(back.w.rows(), n + 5);
    assert_eq!(back, d.canonical(), "n = {n}, seed = {seed}");
}

#[test]
fn round_trip_over_finite_fields() {
    for (p, k) in [(5, 1), (7, 1), (3, 2), (11, 1)] {
        let f = GaloisField::new(p, k).unwrap();
        for n in 3..=5 {
            round_trip(&f, n, 100 * p + n as u64);
        }
    }
}

#[test]
fn round_trip_over_rationals() {
    for n in 3..=5 {
        round_trip(&Rationals, n, 7 + n as u64);
    }
}

#[test]
fn lagrangian_side_round_trip() {
    let f = GaloisField::new(7, 1).unwrap();
    for n in 3..=5 {
        let lag = random_lagrangian(&f, n, 25, &mut rng(n as u64)).unwrap();
        let gm = lagrangian_to_gm(&lag).unwrap();
        let again = gm_to_lagrangian(&gm).unwrap();
        assert!(same_row_space(&f, &again.a, &lag.a));
    }
}

#[test]
fn compatibility_recovered_on_v5() {
    // q(v)(w,w') = ε(v∧w∧w') for v ∈ V5 holds for the output, checked
    // entry by entry against random vectors of V5.
    let f = GaloisField::new(5, 1).unwrap();
    let mut g = rng(3);
    let lag = random_lagrangian(&f, 4, 30, &mut g).unwrap();
    let gm = lagrangian_to_gm(&lag).unwrap();
    let top = wedge_vectors(&f, &gm.v5.row_vecs());
    for _ in 0..5 {
        let c: Vec<u32> = (0..5).map(|_| f.sample(&mut g)).collect();
        let v = gm.v5.left_apply(&f, &c);
        let qv = gm.q_at(&v);
        for s in 0..9 {
            for t in 0..9 {
                let x = wedge(&f, &wedge(&f, &v, 1, gm.w.row(s), 2), 3, gm.w.row(t), 2);
                assert_eq!(&eps_of(&f, &top, &gm.epsilon, &x), qv.get(s, t));
            }
        }
    }
}

#[test]
fn v0_choice_does_not_matter() {
    let f = GaloisField::new(7, 1).unwrap();
    let mut g = rng(11);
    let d = random_gm(&f, 4, &mut g).unwrap();
    let v0 = d.default_v0();
    let base = gm_to_lagrangian_with(&d, &v0).unwrap();
    for _ in 0..5 {
        let c: Vec<u32> = (0..5).map(|_| f.sample(&mut g)).collect();
        let shift = d.v5.left_apply(&f, &c);
        let v1: Vec<u32> = v0.iter().zip(&shift).map(|(a, b)| f.add(a, b)).collect();
        let other = gm_to_lagrangian_with(&d, &v1).unwrap();
        assert!(same_row_space(&f, &base.a, &other.a));
    }
}

#[test]
fn rescaling_phi_changes_nothing() {
    let f = GaloisField::new(3, 2).unwrap();
    let mut g = rng(5);
    let lag = random_lagrangian(&f, 3, 30, &mut g).unwrap();
    let phi = hyperplane_functional(&f, &lag.v5).unwrap();
    let base = lagrangian_to_gm_with(&lag, &phi).unwrap();
    for _ in 0..4 {
        let c = f.sample_unit(&mut g);
        let scaled: Vec<u32> = phi.iter().map(|x| f.mul(x, &c)).collect();
        assert_eq!(lagrangian_to_gm_with(&lag, &scaled).unwrap(), base);
    }
}

#[test]
fn incompatible_q_is_rejected() {
    let f = GaloisField::new(5, 1).unwrap();
    let d = random_gm(&f, 5, &mut rng(1)).unwrap();
    let mut q = d.q.clone();
    let x = f.add(q[0].get(0, 0), &1);
    q[0].set(0, 0, x);
    let err = GmDatum::new(f, 5, d.v5.clone(), d.w.clone(), q, d.epsilon).unwrap_err();
    assert!(matches!(err, GmError::CompatibilityViolation { .. }));
}

#[test]
fn degenerate_lagrangian_is_rejected() {
    // A = ∧³V5 meets ∧³V5 in rank 10, which no n allows
    let f = GaloisField::new(5, 1).unwrap();
    let v5 = Matrix::from_fn(5, 6, |i, j| u32::from(i == j));
    let a = wedge3_of_rows(&f, &v5);
    for n in 3..=5 {
        let err = LagrangianDatum::new(f.clone(), n, v5.clone(), a.clone(), 1).unwrap_err();
        assert!(matches!(err, GmError::RankDefect { found: 10, .. }));
    }
}

#[test]
fn omega_is_unimodular_over_the_integers() {
    let om = omega(&Integers);
    let rows: Vec<Vec<i64>> = (0..20)
        .map(|i| om.row(i).iter().map(|x| i64::try_from(x.clone()).unwrap()).collect())
        .collect();
    // Pf(Ω)^2 = det(Ω)
    assert_eq!(IntMatrix::from_i64_rows(&rows).det(), BigInt::from(1));
    assert_eq!(om.transpose().map(|x| -x.clone()), om);
}

fn pairing_rank(f: &GaloisField, a: &Matrix<u32>, u: &[u32]) -> usize {
    // independent test: A ∩ ∧³ker u = 0 iff A pairs perfectly with ∧³ker u
    let mut ker = Vec::new();
    let lead = u.iter().position(|x| *x != 0).unwrap();
    for j in (0..6).filter(|&j| j != lead) {
        let mut v = unit(f, j);
        v[lead] = f.neg(&f.mul(&u[j], &f.inv(&u[lead]).unwrap()));
        ker.push(v);
    }
    let b3 = wedge3_of_rows(f, &Matrix::from_rows_with_cols(ker, 6));
    rank(f, &a.mul_in(f, &omega(f)).mul_in(f, &b3.transpose()))
}

#[test]
fn own_v5_is_tried_first() {
    let f = GaloisField::new(5, 1).unwrap();
    let d = random_lagrangian(&f, 5, 30, &mut rng(2)).unwrap();
    let found = find_opposite_v5(&d, 1).unwrap().found.unwrap();
    assert_eq!(found.index, 0);
    assert_eq!(pairing_rank(&f, &d.a, &found.u), 10);
}

#[test]
fn opposite_v5_over_f5() {
    let f = GaloisField::new(5, 1).unwrap();
    let d = random_lagrangian(&f, 4, 30, &mut rng(2024)).unwrap();
    let search = find_opposite_v5(&d, 3).unwrap();
    let found = search.found.unwrap();
    assert_eq!(found.degree, 1);
    assert!(found.index > 0);
    assert_eq!(pairing_rank(&f, &d.a, &found.u), 10);
    assert_eq!(search.checked, found.index + 1);
}

fn span_of_triples_with(f: &GaloisField, i: usize) -> Matrix<u32> {
    let rows = basis(3)
        .iter()
        .filter(|s| s.contains(&i))
        .map(|s| {
            let mut v = vec![0u32; 20];
            v[index_of(s)] = f.one();
            v
        })
        .collect();
    Matrix::from_rows_with_cols(rows, 20)
}

#[test]
fn scan_finds_a_coordinate_plane() {
    let f = GaloisField::new(5, 1).unwrap();
    let a = span_of_triples_with(&f, 0);
    match scan_decomposables(&f, &a, 1000) {
        ScanOutcome::Witness { degree, basis, checked, .. } => {
            assert_eq!((degree, checked), (1, 1));
            assert_eq!(basis, vec![vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0], vec![0, 0, 1, 0, 0, 0]]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn dual_coordinate_in_perp_forces_e456() {
    // A Lagrangian whose e123-coordinates vanish contains e456: the
    // coordinate is ±ω(·, e456), so vanishing on A puts e456 in A^⊥ = A.
    let f = GaloisField::new(5, 1).unwrap();
    let mut g = rng(9);
    let block = loop {
        let m = Matrix::from_fn(6, 6, |i, j| if (i < 3) == (j < 3) { f.sample(&mut g) } else { 0 });
        if rank(&f, &m) == 6 {
            break m;
        }
    };
    let wedge3 = Matrix::from_rows_with_cols(
        basis(3)
            .iter()
            .map(|s| wedge_vectors(&f, &[block.row(s[0]).to_vec(), block.row(s[1]).to_vec(), block.row(s[2]).to_vec()]))
            .collect(),
        20,
    );
    let a = span_of_triples_with(&f, 3).mul_in(&f, &wedge3);
    let om = omega(&f);
    assert!(a.mul_in(&f, &om).mul_in(&f, &a.transpose()).is_zero_in(&f));
    let e123 = index_of(&[0, 1, 2]);
    assert!((0..10).all(|i| a.get(i, e123) == &0));
    let e456 = wedge_vectors(&f, &[unit(&f, 3), unit(&f, 4), unit(&f, 5)]);
    assert_eq!(rank(&f, &a.vstack(&Matrix::from_rows_with_cols(vec![e456], 20))), 10);
    assert!(scan_decomposables(&f, &a, 3_000_000).is_witness());
}

#[test]
fn gaussian_binomials() {
    assert_eq!(gaussian_binomial(4, 2, 2), 35);
    assert_eq!(gaussian_binomial(6, 3, 5), 2_558_556);
    // q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    for q in [2u128, 3, 5, 9] {
        assert_eq!(
            gaussian_binomial(6, 3, q),
            gaussian_binomial(5, 2, q) + q.pow(3) * gaussian_binomial(5, 3, q)
        );
    }
}

/// Seed of a random `n = 5` datum over `F_5` with no decomposable vector
/// among the first `10^7` subspaces.
const SMOOTH_SEED: u64 = 17;

#[test]
fn smooth_instance_has_no_decomposables_within_budget() {
    let f = GaloisField::new(5, 1).unwrap();
    let d = random_lagrangian(&f, 5, 30, &mut rng(SMOOTH_SEED)).unwrap();
    match scan_decomposables(&f, &d.a, 10_000_000) {
        ScanOutcome::NoneFoundWithinBudget { checked, exhausted_degrees } => {
            // degree 1 is exhausted after |Gr(3,6)(F_5)| subspaces
            assert_eq!(checked, 10_000_000);
            assert!(10_000_000 > gaussian_binomial(6, 3, 5));
            assert_eq!(exhausted_degrees, vec![1]);
        }
        other => panic!("{other:?}"),
    }
    let total = gaussian_binomial(6, 3, 5) as u64;
    let ScanOutcome::NoneFoundWithinBudget { checked, .. } = scan_decomposables(&f, &d.a, total) else {
        panic!("witness within a smaller budget");
    };
    assert_eq!(checked, total);
}

#[test]
fn smooth_sampler_rejects_witnesses() {
    let f = GaloisField::new(5, 1).unwrap();
    let d = random_smooth_lagrangian(&f, 3, 20_000, &mut rng(4)).unwrap();
    assert!(!scan_decomposables(&f, &d.a, 20_000).is_witness());
}

fn check_lift(p: u64, k: u32, n: usize, seed: u64) {
    let f = GaloisField::new(p, 1).unwrap();
    let d = random_lagrangian(&f, n, 30, &mut rng(seed)).unwrap();
    let rep = lift_lagrangian(&d, k).unwrap();
    let zr = ZModPk::new(p, k).unwrap();
    let out = &rep.datum;
    assert_eq!(out.ring, zr);
    assert!(out
        .a
        .mul_in(&zr, &omega(&zr))
        .mul_in(&zr, &out.a.transpose())
        .is_zero_in(&zr));
    assert_eq!(rank(&zr, &out.a), 10);
    assert_eq!(out.intersection_rank(), 5 - n);
    assert_eq!(reduce_mod_p(out).unwrap(), d);
    // the defect before step s is divisible by p^(2^s)
    for (s, v) in rep.valuations.iter().enumerate() {
        assert!(*v >= (1u32 << s).min(k), "valuations {:?}", rep.valuations);
    }
    assert_eq!(*rep.valuations.last().unwrap(), k);
}

#[test]
fn lifting_is_exact() {
    for seed in 0..50 {
        check_lift(5, 4, 3 + (seed % 3) as usize, seed);
    }
    for n in 3..=5 {
        check_lift(7, 3, n, 500 + n as u64);
        check_lift(5, 3, n, 600 + n as u64);
    }
}

#[test]
fn lift_to_precision_one_is_the_identity() {
    let f = GaloisField::new(5, 1).unwrap();
    let d = random_lagrangian(&f, 4, 30, &mut rng(8)).unwrap();
    let rep = lift_lagrangian(&d, 1).unwrap();
    assert_eq!(reduce_mod_p(&rep.datum).unwrap(), d);
}

#[test]
fn correspondence_over_truncated_dvr() {
    let f = GaloisField::new(5, 1).unwrap();
    let d = random_lagrangian(&f, 4, 30, &mut rng(31)).unwrap();
    let lifted = lift_lagrangian(&d, 3).unwrap().datum;
    let gm = lagrangian_to_gm(&lifted).unwrap();
    assert_eq!(gm.w.rows(), 9);
    let back = gm_to_lagrangian(&gm).unwrap();
    assert!(same_row_space(&lifted.ring, &back.a, &lifted.a));
}

#[test]
fn data_sets_round_trip_through_json() {
    let f = GaloisField::new(3, 2).unwrap();
    let d = random_lagrangian(&f, 4, 30, &mut rng(12)).unwrap();
    let ds = DataSet::from_datum(RingSpec::Gf { p: 3, k: 2 }, &d);
    let text = serde_json::to_string(&ds).unwrap();
    assert!(text.contains("\"kind\":\"gf\""));
    let back: DataSet = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_datum(&f).unwrap(), d);

    let q = random_gm(&Rationals, 3, &mut rng(12)).unwrap();
    let gs = GmDataSet::from_datum(RingSpec::Rationals, &q);
    let back: GmDataSet = serde_json::from_str(&serde_json::to_string(&gs).unwrap()).unwrap();
    assert_eq!(back.to_datum(&Rationals).unwrap(), q);

    let mut bad = ds.clone();
    bad.a[0][0] = "9".into();
    assert!(matches!(bad.to_datum(&f), Err(GmError::Format(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn round_trip_over_f7(seed in any::<u64>(), n in 3usize..=5) {
        let f = GaloisField::new(7, 1).unwrap();
        let d = random_gm(&f, n, &mut rng(seed)).unwrap();
        let back = lagrangian_to_gm(&gm_to_lagrangian(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d.canonical());
    }

    #[test]
    fn transvection_samples_are_lagrangian(seed in any::<u64>(), n in 3usize..=5) {
        let f = GaloisField::new(5, 1).unwrap();
        let d = random_lagrangian(&f, n, 20, &mut rng(seed)).unwrap();
        prop_assert!(d.is_isotropic());
        prop_assert_eq!(d.intersection_rank(), 5 - n);
    }
}
