//! Euler characteristics computed without any cohomology: the Weyl
//! character formula on `Gr`, additivity along the restriction and
//! conormal sequences on `Y`, and the double-cover splitting on `X`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::bott::{euler_char, BundleSpec};
use crate::exact::binomial;

/// `chi(Omega^i_Gr(m))`, with `i = 0` the structure sheaf.
pub fn chi_gr(i: u8, m: i64) -> i128 {
    match i {
        0 => euler_char(&BundleSpec::structure(m)),
        i if i <= 6 => euler_char(&BundleSpec::omega(i, m).expect("1 <= i <= 6")),
        _ => 0,
    }
}

/// `chi(Omega^i_Gr(m)|_Y)` from `0 -> Omega^i(m-2) -> Omega^i(m) -> restriction -> 0`.
pub fn chi_restricted(i: u8, m: i64) -> i128 {
    chi_gr(i, m) - chi_gr(i, m - 2)
}

pub fn chi_y_twist(m: i64) -> i128 {
    chi_restricted(0, m)
}

/// `chi(Omega^i_Y(m))`, by induction on `i` along
/// `0 -> Omega^{i-1}_Y(m-2) -> Omega^i_Gr(m)|_Y -> Omega^i_Y(m) -> 0`.
pub fn chi_y_omega(i: u8, m: i64) -> i128 {
    if i == 0 {
        return chi_y_twist(m);
    }
    chi_restricted(i, m) - chi_y_omega(i - 1, m - 2)
}

/// `chi(Omega^i_X(m))` from the pushed-forward sequence
/// `0 -> Omega^i_Gr(m) + Omega^i_Gr(m-1) -> gamma_* Omega^i_X(m) -> Omega^{i-1}_Y(m-1) -> 0`.
pub fn chi_x_omega(i: u8, m: i64) -> i128 {
    let y = if i == 0 { 0 } else { chi_y_omega(i - 1, m - 1) };
    chi_gr(i, m) + chi_gr(i, m - 1) + y
}

/// `chi(O_X(m))` from the resolution of `O_X` on `P^10`:
/// `C(m+10,10) - 6C(m+8,10) + 5C(m+7,10) + 5C(m+6,10) - 6C(m+5,10) + C(m+3,10)`.
///
/// Binomials are the polynomials `C(n,10) = n(n-1)...(n-9)/10!`, so the
/// value is a polynomial in `m`. Truncating to `0` for `n < 10` is only
/// right when `m >= 0`.
pub fn chi_x_twist(m: i64) -> BigInt {
    let c = |shift: i64| binomial(&BigInt::from(m + shift), 10);
    c(10) - 6 * c(8) + 5 * c(7) + 5 * c(6) - 6 * c(5) + c(3)
}

/// The same number as an `i128`.
pub fn chi_x_twist_i128(m: i64) -> i128 {
    chi_x_twist(m).to_i128().expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn resolution_values() {
        assert_eq!(chi_x_twist_i128(0), 1);
        assert_eq!(chi_x_twist_i128(1), 11);
        assert_eq!(chi_x_twist_i128(2), 60);
    }

    #[test]
    fn fivefold_characteristics() {
        assert_eq!(chi_y_twist(0), 1);
        assert_eq!(chi_y_twist(1), 10);
        assert_eq!(chi_y_twist(2), 49);
        assert_eq!(chi_y_twist(-3), -1);
        // columns of the diamond of Y
        let want = [1, -1, 2 - 10, 10 - 2, 1, -1];
        for i in 0..6u8 {
            assert_eq!(chi_y_omega(i, 0), want[i as usize], "column {i}");
        }
    }

    #[test]
    fn sixfold_characteristics() {
        let want = [1, -1, 2 + 1, -22, 2 + 1, -1, 1];
        for i in 0..7u8 {
            assert_eq!(chi_x_omega(i, 0), want[i as usize], "column {i}");
        }
    }

    proptest! {
        #[test]
        fn resolution_matches_double_cover(m in -30i64..30) {
            prop_assert_eq!(chi_x_twist_i128(m), chi_gr(0, m) + chi_gr(0, m - 1));
        }

        #[test]
        fn resolution_is_serre_symmetric(m in -30i64..30) {
            prop_assert_eq!(chi_x_twist(m), chi_x_twist(-m - 4));
        }
    }
}
