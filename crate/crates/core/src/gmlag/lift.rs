//! Lifting a Lagrangian datum from `F_p` to `Z/p^k`.
//!
//! With `L = A ∩ ∧³V5` lifted to `𝓛 ⊂ ∧³𝓥5`, the quotient `𝓛^⊥/𝓛` is a
//! free symplectic module with basis `K`, and `A/L` is a Lagrangian there
//! mod `p`. Newton steps `B ↦ B − ½ G R`, with `G = B ψ Bᵀ` the isotropy
//! defect and `R` a left inverse of `ψ Bᵀ`, square the defect's `p`-adic
//! size each time. The lifted Lagrangian is `𝓐 = 𝓛 + B K`.

use serde::{Deserialize, Serialize};

use super::wedge::omega;
use super::{canonical_rows, wedge3_of_rows, GmError, LagrangianDatum};
use crate::exact::{kernel, rank, rref, solve_right_inverse, GaloisField, Matrix, Ring, ZModPk};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub datum: LagrangianDatum<ZModPk>,
    /// Valuation of the isotropy defect before each Newton step, then
    /// after the last (`k` when it vanishes).
    pub valuations: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSummary {
    pub p: u64,
    pub k: u32,
    pub valuations: Vec<u32>,
}

impl LiftReport {
    pub fn summary(&self) -> LiftSummary {
        LiftSummary {
            p: self.datum.ring.p(),
            k: self.datum.ring.k(),
            valuations: self.valuations.clone(),
        }
    }
}

fn bug(msg: &str) -> GmError {
    GmError::Invalid(format!("lift: {msg}"))
}

fn to_zk(zr: &ZModPk, m: &Matrix<u32>) -> Matrix<u64> {
    m.map(|x| zr.from_i64(*x as i64))
}

fn mod_p(f: &GaloisField, m: &Matrix<u64>) -> Matrix<u32> {
    m.map(|x| f.from_i64((*x % f.p()) as i64))
}

fn min_valuation(zr: &ZModPk, m: &Matrix<u64>) -> u32 {
    (0..m.rows())
        .flat_map(|i| m.row(i).iter().map(|x| zr.valuation(*x)).collect::<Vec<_>>())
        .min()
        .unwrap_or(zr.k())
}

/// Reduce a datum over `Z/p^k` to `F_p`.
pub fn reduce_mod_p(d: &LagrangianDatum<ZModPk>) -> Result<LagrangianDatum<GaloisField>, GmError> {
    let f = GaloisField::new(d.ring.p(), 1).map_err(|e| GmError::Invalid(e.to_string()))?;
    LagrangianDatum::new(
        f.clone(),
        d.n,
        mod_p(&f, &d.v5),
        mod_p(&f, &d.a),
        f.from_i64((d.epsilon % d.ring.p()) as i64),
    )
}

/// Lift `d` over a prime field `F_p` (`p` odd) to `Z/p^k`. The stored
/// bases lift the given ones entry by entry, so reducing the output
/// returns `d` verbatim.
pub fn lift_lagrangian(d: &LagrangianDatum<GaloisField>, k: u32) -> Result<LiftReport, GmError> {
    let f = &d.ring;
    let p = f.p();
    if f.degree() != 1 || p == 2 {
        return Err(GmError::Invalid("lifting needs an odd prime field".into()));
    }
    if k == 0 {
        return Err(GmError::Invalid("precision must be at least 1".into()));
    }
    let zr = ZModPk::new(p, k).map_err(|e| GmError::Invalid(e.to_string()))?;
    let datum_zk = |a: Matrix<u64>| {
        LagrangianDatum::new(zr, d.n, to_zk(&zr, &d.v5), a, zr.from_i64(d.epsilon as i64))
    };
    if k == 1 {
        return Ok(LiftReport {
            datum: datum_zk(to_zk(&zr, &d.a))?,
            valuations: vec![1],
        });
    }
    let om = omega(&zr);
    let v5 = to_zk(&zr, &d.v5);
    let w3 = wedge3_of_rows(&zr, &v5);
    let m = 5 - d.n;

    // L = A ∩ ∧³V5 in ∧³V5-coordinates, lifted naively.
    let s3 = wedge3_of_rows(f, &d.v5);
    let ker = kernel(f, &d.a.vstack(&s3).transpose()).ok_or_else(|| bug("intersection"))?;
    if ker.len() != m {
        return Err(bug("intersection rank"));
    }
    let y = Matrix::from_fn(m, 10, |i, j| f.neg(&ker[i][10 + j]));
    let big_l = to_zk(&zr, &y).mul_in(&zr, &w3);

    // L^⊥ and its coordinates: kernel vectors are unit vectors on the free columns.
    let (perp, free): (Matrix<u64>, Vec<usize>) = if m == 0 {
        (Matrix::identity_in(&zr, 20), (0..20).collect())
    } else {
        let lo = big_l.mul_in(&zr, &om);
        let red = rref(&zr, &lo);
        if red.rank() != m {
            return Err(bug("𝓛 is not a direct summand"));
        }
        let vecs = kernel(&zr, &lo).ok_or_else(|| bug("𝓛^⊥"))?;
        let free = (0..20).filter(|c| !red.pivots.contains(c)).collect();
        (Matrix::from_rows_with_cols(vecs, 20), free)
    };
    let coords_p = |x: &Matrix<u32>| x.submatrix(&(0..x.rows()).collect::<Vec<_>>(), &free);

    // Complement K of 𝓛 in 𝓛^⊥: unit coordinates off the pivots of 𝓛.
    let lc = coords_p(&mod_p(f, &big_l));
    let lred = rref(f, &lc);
    let kpos: Vec<usize> = (0..free.len()).filter(|c| !lred.pivots.contains(c)).collect();
    if kpos.len() != 10 + 2 * d.n {
        return Err(bug("complement rank"));
    }
    let kmat = perp.submatrix(&kpos, &(0..20).collect::<Vec<_>>());
    let psi = kmat.mul_in(&zr, &om).mul_in(&zr, &kmat.transpose());

    // A/L in K-coordinates mod p.
    let c = coords_p(&d.a);
    let beta = Matrix::from_fn(10, kpos.len(), |i, j| {
        let mut x = c.get(i, kpos[j]).clone();
        for (r, &pc) in lred.pivots.iter().enumerate() {
            x = f.sub(&x, &f.mul(c.get(i, pc), lred.matrix.get(r, kpos[j])));
        }
        x
    });
    let b0 = canonical_rows(f, &beta);
    if b0.rows() != 5 + d.n {
        return Err(bug("A/L has the wrong rank"));
    }

    // Newton iteration for isotropy.
    let half = zr.inv(&zr.from_i64(2)).expect("p odd");
    let mut b = to_zk(&zr, &b0);
    let mut valuations = Vec::new();
    loop {
        let g = b.mul_in(&zr, &psi).mul_in(&zr, &b.transpose());
        let v = min_valuation(&zr, &g);
        valuations.push(v);
        if g.is_zero_in(&zr) {
            break;
        }
        if valuations.len() > 40 {
            return Err(bug("Newton iteration does not converge"));
        }
        let mt = b.mul_in(&zr, &psi.transpose());
        let x = solve_right_inverse(&zr, &mt).ok_or_else(|| bug("ψ Bᵀ is not injective mod p"))?;
        let delta = g.mul_in(&zr, &x.transpose()).map(|e| zr.neg(&zr.mul(e, &half)));
        b = Matrix::from_fn(b.rows(), b.cols(), |i, j| zr.add(b.get(i, j), delta.get(i, j)));
    }

    // 𝓐 = 𝓛 + B K, rebased so that it reduces to the given basis of A.
    let full = big_l.vstack(&b.mul_in(&zr, &kmat));
    let xr = solve_right_inverse(f, &mod_p(f, &full)).ok_or_else(|| bug("𝓐 has rank < 10 mod p"))?;
    let change = d.a.mul_in(f, &xr);
    let lifted = to_zk(&zr, &change).mul_in(&zr, &full);
    if mod_p(f, &lifted) != d.a {
        return Err(bug("reduction differs from the input"));
    }
    let out = datum_zk(lifted)?;
    if !out.is_isotropic() {
        return Err(bug("isotropy is not exact"));
    }
    if rank(&zr, &out.a.vstack(&w3)) != 20 - m || (m > 0 && rank(&zr, &out.a.vstack(&big_l)) != 10) {
        return Err(bug("𝓐 ∩ ∧³𝓥5 is not 𝓛"));
    }
    Ok(LiftReport { datum: out, valuations })
}
