//! The fixed derivation scripts. Each script is an ordered list of ledger
//! operations; the trace they leave is the audit record.

use serde::{Deserialize, Serialize};

use super::euler::{chi_gr, chi_x_omega, chi_y_omega};
use super::{HodgeDiamond, Ledger, LedgerError, SheafRef, TraceStep, Variety};
use crate::bott::CohomEntry;

use Variety::{Gr, X, Y};

fn gr(i: u8, m: i64) -> SheafRef {
    SheafRef::omega(Gr, i, m)
}

fn y(i: u8, m: i64) -> SheafRef {
    SheafRef::omega(Y, i, m)
}

/// `0 -> Omega^i_Gr(m-2) -> Omega^i_Gr(m) -> Omega^i_Gr(m)|_Y -> 0`.
fn restrict(l: &mut Ledger, i: u8, m: i64) -> Result<(), LedgerError> {
    let step = format!("restriction sequence for Omega^{i}_Gr({m}) along Y (i = {i}, m = {m})");
    l.short_exact(&step, &[gr(i, m - 2)], &[gr(i, m)], &[SheafRef::restricted(i, m)])
}

/// `0 -> Omega^{i-1}_Y(m-2) -> Omega^i_Gr(m)|_Y -> Omega^i_Y(m) -> 0`.
fn conormal(l: &mut Ledger, i: u8, m: i64) -> Result<(), LedgerError> {
    let step = format!("conormal sequence of Y in Gr (i = {i}, m = {m})");
    l.short_exact(&step, &[y(i - 1, m - 2)], &[SheafRef::restricted(i, m)], &[y(i, m)])
}

/// `0 -> Omega^i_Gr + Omega^i_Gr(-1) -> gamma_* Omega^i_X -> Omega^{i-1}_Y(-1) -> 0`.
fn double_cover(l: &mut Ledger, i: u8) -> Result<(), LedgerError> {
    let step = format!("pushforward along the double cover X -> Gr (i = {i})");
    let c: Vec<SheafRef> = if i == 0 { vec![] } else { vec![y(i - 1, -1)] };
    l.short_exact(&step, &[gr(i, 0), gr(i, -1)], &[SheafRef::omega(X, i, 0)], &c)
}

fn gr_script(l: &mut Ledger) -> Result<(), LedgerError> {
    for i in 0..=6u8 {
        l.get(gr(i, 0), 0)?;
    }
    for i in 0..=3u8 {
        l.serre(gr(i, 0))?;
    }
    for i in 0..=6u8 {
        l.pin_by_chi(gr(i, 0), chi_gr(i, 0))?;
    }
    Ok(())
}

fn y_script(l: &mut Ledger) -> Result<(), LedgerError> {
    // column 0 and the twists of O_Y needed later
    for m in [0, -2, 1, -1, 2] {
        restrict(l, 0, m)?;
    }
    l.serre(SheafRef::o(Y, -4))?;
    l.serre(SheafRef::o(Y, -3))?;
    // column 1
    restrict(l, 1, 0)?;
    conormal(l, 1, 0)?;
    // Omega^1_Y(-2) through O_Y(-4), dual to O_Y(1)
    restrict(l, 1, -2)?;
    conormal(l, 1, -2)?;
    // column 2
    restrict(l, 2, 0)?;
    conormal(l, 2, 0)?;
    // columns 3..5 by duality
    for i in 0..=2u8 {
        l.serre(y(i, 0))?;
    }
    // Omega^1_Y(-1), used by the sixfold
    restrict(l, 1, -1)?;
    conormal(l, 1, -1)?;
    for i in 0..=1u8 {
        l.raynaud(Y, i)?;
    }
    for i in 0..=5u8 {
        l.pin_by_chi(y(i, 0), chi_y_omega(i, 0))?;
    }
    Ok(())
}

fn x_script(l: &mut Ledger) -> Result<(), LedgerError> {
    y_script(l)?;
    for i in 0..=2u8 {
        double_cover(l, i)?;
    }
    // h^j(Omega^2_Y(-1)) = 0 for j <= 2 kills the low degrees of column 3
    l.raynaud(Y, 2)?;
    double_cover(l, 3)?;
    for i in 0..=3u8 {
        l.serre(SheafRef::omega(X, i, 0))?;
    }
    l.pin_by_chi(SheafRef::omega(X, 3, 0), chi_x_omega(3, 0))?;
    // feed h^{3,3} back to read off h^3(Omega^2_Y(-1))
    double_cover(l, 3)?;
    for i in 0..=6u8 {
        l.pin_by_chi(SheafRef::omega(X, i, 0), chi_x_omega(i, 0))?;
    }
    Ok(())
}

fn read_diamond(l: &mut Ledger, v: Variety) -> Result<HodgeDiamond, LedgerError> {
    let d = v.dim();
    let mut cols = Vec::with_capacity(d + 1);
    for i in 0..=d as u8 {
        cols.push(l.column(SheafRef::omega(v, i, 0))?);
    }
    let diamond = HodgeDiamond::from_fn(d, |i, j| cols[i][j]);
    if !diamond.is_serre_symmetric() {
        return Err(LedgerError::Inconsistent {
            step: format!("diamond of {v}"),
            detail: "Serre symmetry fails".into(),
        });
    }
    Ok(diamond)
}

/// A diamond with the ledger that produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Derivation {
    pub variety: Variety,
    pub p: u64,
    pub diamond: HodgeDiamond,
    pub trace: Vec<TraceStep>,
}

/// Replay the derivation of the Hodge diamond of `Gr`, `Y` or `X` at `p`.
pub fn derive_diamond(variety: Variety, p: u64) -> Result<Derivation, LedgerError> {
    let mut l = Ledger::new(p)?;
    derive_into(&mut l, variety)?;
    let diamond = read_diamond(&mut l, variety)?;
    Ok(Derivation {
        variety,
        p,
        diamond,
        trace: l.trace,
    })
}

fn derive_into(l: &mut Ledger, variety: Variety) -> Result<(), LedgerError> {
    match variety {
        Gr => gr_script(l),
        Y => y_script(l),
        X => x_script(l),
    }
}

pub fn topological_euler(variety: Variety, p: u64) -> Result<i128, LedgerError> {
    Ok(derive_diamond(variety, p)?.diamond.topological_euler())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub p: u64,
    pub h_tangent_y: Vec<u128>,
    pub h_tangent_x: Vec<u128>,
    pub h0_oy1: u128,
    pub h0_oy2: u128,
    pub h33_x: u128,
    pub h33_x_00: u128,
    pub h3_omega2_y_minus1: u128,
    pub h24_x: u128,
    pub axioms: Vec<String>,
}

pub const NO_VECTOR_FIELDS: &str = "Y carries no nonzero global vector field";
pub const NO_VECTOR_FIELDS_SOURCE: &str =
    "diagonal reduction plus the exhaustive vector-field search (vfsearch)";

/// Dimensions around the tangent bundles of `Y` and `X`.
///
/// The only input beyond the Bott engine is the axiom `h^0(T_Y) = 0`,
/// which the `vfsearch` module certifies. It makes the map
/// `H^0(T_Gr) -> H^0(O_Y(2))` injective, and that same map computes
/// `H^0(T_X)`.
pub fn tangent_report(p: u64) -> Result<(TangentReport, Vec<TraceStep>), LedgerError> {
    let mut l = Ledger::new(p)?;
    x_script(&mut l)?;

    let ty = SheafRef::tangent(Y, 0);
    let tx = SheafRef::tangent(X, 0);
    let tgr_y = SheafRef::restricted_tangent(0);
    l.short_exact(
        "restriction of T_Gr to Y",
        &[SheafRef::tangent(Gr, -2)],
        &[SheafRef::tangent(Gr, 0)],
        &[tgr_y],
    )?;
    l.axiom(NO_VECTOR_FIELDS, NO_VECTOR_FIELDS_SOURCE, ty, 0, CohomEntry::Zero)?;
    l.short_exact(
        "normal bundle sequence 0 -> T_Y -> T_Gr|_Y -> O_Y(2) -> 0",
        &[ty],
        &[tgr_y],
        &[SheafRef::o(Y, 2)],
    )?;
    // H^0(T_X) and H^0(T_Y) are both the kernel of H^0(T_Gr) -> H^0(O_Y(2)),
    // because H^0(T_Gr) -> H^0(T_Gr|_Y) is an isomorphism.
    let h0ty = l.exact(ty, 0)?.ok_or(LedgerError::Undetermined { sheaf: ty, degree: 0 })?;
    l.axiom(
        "H^0(T_X) and H^0(T_Y) are the kernel of the same map into H^0(O_Y(2))",
        "restriction of T_Gr to Y is bijective on sections",
        tx,
        0,
        CohomEntry::Exact(h0ty),
    )?;
    l.short_exact(
        "pushforward of 0 -> T_X -> gamma^* T_Gr -> O_Y(2) -> 0",
        &[tx],
        &[SheafRef::tangent(Gr, 0), SheafRef::tangent(Gr, -1)],
        &[SheafRef::o(Y, 2)],
    )?;

    let h_tangent_y = l.column(ty)?;
    let h_tangent_x = l.column(tx)?;
    let h0_oy1 = l.column(SheafRef::o(Y, 1))?[0];
    let h0_oy2 = l.column(SheafRef::o(Y, 2))?[0];
    let h33_x = l.column(SheafRef::omega(X, 3, 0))?[3];
    let h33_gr = l.column(SheafRef::omega(Gr, 3, 0))?[3];
    let h3_omega2_y_minus1 = l.column(y(2, -1))?[3];
    let h24_x = l.column(SheafRef::omega(X, 2, 0))?[4];
    let h33_x_00 = h33_x - h33_gr;
    if h33_x_00 != h3_omega2_y_minus1 {
        return Err(LedgerError::Inconsistent {
            step: "primitive part of H^{3,3}(X)".into(),
            detail: format!("{h33_x_00} != h^3(Omega^2_Y(-1)) = {h3_omega2_y_minus1}"),
        });
    }
    let axioms = l
        .facts()
        .filter_map(|f| match &f.why {
            super::Justification::Axiom { name, .. } => Some(name.clone()),
            _ => None,
        })
        .collect();
    Ok((
        TangentReport {
            p,
            h_tangent_y,
            h_tangent_x,
            h0_oy1,
            h0_oy2,
            h33_x,
            h33_x_00,
            h3_omega2_y_minus1,
            h24_x,
            axioms,
        },
        l.trace,
    ))
}
