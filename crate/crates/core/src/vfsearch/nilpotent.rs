//! Nilpotent `A`: for each of the 16 upper-triangular nilpotent patterns
//! (superdiagonal entries in `{0, 1}`), the solution space of `A ∘ Q = 0`
//! has the same dimension over `Q` and over `F_p`, so every solution mod
//! `p` lifts.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::VfError;
use crate::exact::{is_prime, rank_over, FieldDesc, Integers, IntMatrix, Matrix};
use crate::pluecker::{action_matrix, NMONO};

/// Pattern bits are the superdiagonal entries `(1,2), (2,3), (3,4), (4,5)`.
pub fn nilpotent_pattern(bits: [u8; 4]) -> IntMatrix {
    Matrix::from_fn(5, 5, |i, j| {
        if j == i + 1 {
            BigInt::from(bits[i])
        } else {
            BigInt::from(0)
        }
    })
}

/// Pattern `code` in `0..16`, most significant bit first.
pub fn pattern_bits(code: u8) -> [u8; 4] {
    [code >> 3 & 1, code >> 2 & 1, code >> 1 & 1, code & 1]
}

fn pattern_name(bits: [u8; 4]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternResult {
    pub pattern: String,
    pub kernel_q: usize,
    pub kernel_p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentReport {
    pub p: u64,
    pub patterns: Vec<PatternResult>,
}

impl NilpotentReport {
    pub fn all_equal(&self) -> bool {
        self.patterns.iter().all(|r| r.kernel_q == r.kernel_p)
    }
}

/// Kernel dimensions of `Q -> A ∘ Q` over `Q` and `F_p` for all 16 patterns.
pub fn nilpotent_kernels(p: u64) -> Result<NilpotentReport, VfError> {
    if p < 5 || !is_prime(p) {
        return Err(VfError::BadPrime(p));
    }
    let patterns = (0u8..16)
        .map(|code| {
            let bits = pattern_bits(code);
            let m = action_matrix(&Integers, &nilpotent_pattern(bits));
            PatternResult {
                pattern: pattern_name(bits),
                kernel_q: NMONO - rank_over(&m, FieldDesc::Rationals),
                kernel_p: NMONO - rank_over(&m, FieldDesc::Prime(p)),
            }
        })
        .collect();
    Ok(NilpotentReport { p, patterns })
}

/// [`nilpotent_kernels`], failing on the first pattern whose kernel grows mod `p`.
pub fn verify_nilpotent_lift(p: u64) -> Result<NilpotentReport, VfError> {
    let rep = nilpotent_kernels(p)?;
    if let Some(bad) = rep.patterns.iter().find(|r| r.kernel_q != r.kernel_p) {
        return Err(VfError::KernelJump {
            pattern: bad.pattern.clone(),
            p,
            over_q: bad.kernel_q,
            over_p: bad.kernel_p,
        });
    }
    Ok(rep)
}
