//! Fixed inputs shared by the benches in `benches/`.

use gmlab_core::exact::{GaloisField, Matrix, Rationals, Ring};
use gmlab_core::gmlag::{random_gm, random_lagrangian, GmDatum, LagrangianDatum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6d6c_6162;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

pub fn lagrangian(p: u64, n: usize) -> LagrangianDatum<GaloisField> {
    let f = GaloisField::new(p, 1).expect("prime");
    random_lagrangian(&f, n, 30, &mut rng()).expect("random Lagrangian")
}

pub fn gm_rational(n: usize) -> GmDatum<Rationals> {
    random_gm(&Rationals, n, &mut rng()).expect("random GM datum")
}

/// A `rows`x`cols` matrix of small integers, embedded in `ring`.
pub fn small_matrix<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    let mut g = rng();
    Matrix::from_fn(rows, cols, |_, _| ring.from_i64(g.gen_range(-4..=4)))
}
