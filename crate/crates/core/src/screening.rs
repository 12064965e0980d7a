//! Screened laser detunings, resonance conditions, the exciton-resonance
//! solver and the electron-hole t-matrix cross-check.
//!
//! With spin-symmetric occupations the Hartree shift is
//! h = −U₁₁ν + U₁₂·2ν, and the shifted detuning is D_k = Δ⁰_k + h. The
//! screened detuning is
//!
//! ```text
//! Δ_k = D_k − (U₁₂/N) Σ_k' ⟨n_k'⟩ D_k / D_k'
//! ```
//!
//! and its Bloch-Siegert partner Δ^BS_k follows from Δ⁰ → Δ⁰ + 2ω_L. The
//! k'-sum factorises, so every array here costs one O(N) reduction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{BzGrid, ModelParams, Occupation};
use crate::reduce::{map_indices, tree_sum};

/// Smallest |D_k| accepted before a grid point counts as resonant.
pub const RESONANCE_GUARD: f64 = 1e-9;

/// Smallest |1/T| accepted by [`grpa_tmatrix`].
pub const TMATRIX_GUARD: f64 = 1e-12;

/// Bracket width at which the exciton bisection counts as converged.
pub const SOLVER_TOL: f64 = 1e-10;

/// Interband transitions entering the screening sums: gaps ε_{k,2} − ε_{k,1}
/// with the lower-band occupation of each k and the filling ν.
///
/// This is the grid-free view used by both the lattice code and the
/// small-system oracle.
#[derive(Debug, Clone, Copy)]
pub struct Transitions<'a> {
    pub gaps: &'a [f64],
    pub n_k: &'a [f64],
    pub nu: f64,
}

impl<'a> Transitions<'a> {
    pub fn new(grid: &'a BzGrid, occ: &'a Occupation) -> Self {
        debug_assert_eq!(grid.len(), occ.n_k.len());
        Transitions {
            gaps: grid.gaps(),
            n_k: &occ.n_k,
            nu: occ.nu,
        }
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Hartree shift −U₁₁ν_s̄ + U₁₂Σ_s'ν_s' for spin-symmetric filling.
pub fn hartree_shift(params: &ModelParams, nu: f64) -> f64 {
    -params.u11 * nu + params.u12 * (nu + nu)
}

fn guard(shifted: &[f64]) -> Result<()> {
    match shifted.iter().position(|d| d.abs() < RESONANCE_GUARD) {
        Some(i) => Err(Error::ResonantDenominator {
            index: Some(i),
            value: shifted[i],
        }),
        None => Ok(()),
    }
}

/// (U₁₂/N) Σ_k ⟨n_k⟩ / D_k.
fn ladder(u12: f64, n_k: &[f64], shifted: &[f64]) -> f64 {
    let n = shifted.len();
    u12 * tree_sum(n, |i| n_k[i] / shifted[i]) / n as f64
}

/// Screens a full array of Hartree-shifted detunings.
fn screen(u12: f64, n_k: &[f64], shifted: &[f64]) -> Result<Vec<f64>> {
    guard(shifted)?;
    let lad = ladder(u12, n_k, shifted);
    Ok(map_indices(shifted.len(), |i| shifted[i] - shifted[i] * lad))
}

/// Δ⁰_k, Δ_k and Δ^BS_k over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenedDetunings {
    pub delta0: Vec<f64>,
    pub delta: Vec<f64>,
    pub delta_bs: Vec<f64>,
}

impl ScreenedDetunings {
    pub fn compute(params: &ModelParams, grid: &BzGrid, occ: &Occupation) -> Result<Self> {
        let grid = grid.with_bands(params);
        Self::from_transitions(params, Transitions::new(&grid, occ))
    }

    pub fn from_transitions(params: &ModelParams, tr: Transitions<'_>) -> Result<Self> {
        let n = tr.len();
        let wl = params.omega_l;
        let h = hartree_shift(params, tr.nu);
        let delta0 = map_indices(n, |i| tr.gaps[i] - wl);
        let shifted = map_indices(n, |i| delta0[i] + h);
        let shifted_bs = map_indices(n, |i| (delta0[i] + 2.0 * wl) + h);
        let delta = screen(params.u12, tr.n_k, &shifted)?;
        let delta_bs = screen(params.u12, tr.n_k, &shifted_bs)?;
        Ok(ScreenedDetunings {
            delta0,
            delta,
            delta_bs,
        })
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }
}

fn single(params: &ModelParams, grid: &BzGrid, occ: &Occupation, k: usize, bs: bool) -> Result<f64> {
    let grid = grid.with_bands(params);
    let tr = Transitions::new(&grid, occ);
    let h = hartree_shift(params, tr.nu);
    let extra = if bs { 2.0 * params.omega_l } else { 0.0 };
    let shifted = map_indices(tr.len(), |i| (tr.gaps[i] - params.omega_l + extra) + h);
    guard(&shifted)?;
    let lad = ladder(params.u12, tr.n_k, &shifted);
    Ok(shifted[k] - shifted[k] * lad)
}

/// Screened detuning Δ_{k,s} at grid point `k`.
///
/// Like every grid operation here, a grid whose cached bands belong to
/// other band parameters is rebuilt for `params` first.
pub fn screened_detuning(params: &ModelParams, grid: &BzGrid, occ: &Occupation, k: usize) -> Result<f64> {
    single(params, grid, occ, k, false)
}

/// Screened Bloch-Siegert detuning Δ^BS_{k,s} at grid point `k`.
pub fn screened_detuning_bs(
    params: &ModelParams,
    grid: &BzGrid,
    occ: &Occupation,
    k: usize,
) -> Result<f64> {
    single(params, grid, occ, k, true)
}

/// Minimum Hartree-shifted gap, the onset of the interband continuum.
pub fn band_resonance_edge(params: &ModelParams, grid: &BzGrid, occ: &Occupation) -> f64 {
    let grid = grid.with_bands(params);
    transitions_edge(params, Transitions::new(&grid, occ))
}

fn transitions_edge(params: &ModelParams, tr: Transitions<'_>) -> f64 {
    let min_gap = tr.gaps.iter().copied().fold(f64::INFINITY, f64::min);
    min_gap + hartree_shift(params, tr.nu)
}

/// Left side of the exciton condition at trial frequency `omega`:
/// (U₁₂/N) Σ_k ⟨n_k⟩ / (gap_k − ω + h).
pub fn exciton_condition(params: &ModelParams, tr: Transitions<'_>, omega: f64) -> f64 {
    let h = hartree_shift(params, tr.nu);
    let n = tr.len();
    params.u12 * tree_sum(n, |i| tr.n_k[i] / ((tr.gaps[i] - omega) + h)) / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceReport {
    pub omega_ex: f64,
    pub continuum_edge: f64,
    /// continuum_edge − omega_ex.
    pub binding: f64,
    /// Laser-exciton detuning ω_ex − ω_L.
    pub delta_ex: f64,
    pub converged: bool,
    /// |condition − 1| at `omega_ex`.
    pub residual: f64,
    pub iterations: usize,
}

pub fn solve_exciton_resonance(
    params: &ModelParams,
    grid: &BzGrid,
    occ: &Occupation,
) -> Result<ResonanceReport> {
    let grid = grid.with_bands(params);
    solve_exciton_for(params, Transitions::new(&grid, occ))
}

/// Bisection for the exciton line below the continuum edge.
///
/// The condition grows monotonically on (−∞, edge), so a sign change of
/// condition − 1 in [edge − U₁₁ − 5U₁₂, edge − 1e−9] brackets a unique
/// root. Bisection runs to floating-point exhaustion.
pub fn solve_exciton_for(params: &ModelParams, tr: Transitions<'_>) -> Result<ResonanceReport> {
    let edge = transitions_edge(params, tr);
    let mut lo = edge - params.u11 - 5.0 * params.u12;
    let mut hi = edge - RESONANCE_GUARD;
    let f = |w: f64| exciton_condition(params, tr, w) - 1.0;
    let (f_lo, f_hi) = (f(lo), f(hi));
    if params.u12 <= 0.0 || !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoResonance { lo, hi });
    }
    let mut iterations = 0;
    while iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    let omega_ex = 0.5 * (lo + hi);
    Ok(ResonanceReport {
        omega_ex,
        continuum_edge: edge,
        binding: edge - omega_ex,
        delta_ex: omega_ex - params.omega_l,
        converged: hi - lo <= SOLVER_TOL,
        residual: f(omega_ex).abs(),
        iterations,
    })
}

/// Lowest optical resonance: the exciton line when U₁₂ > 0, otherwise the
/// continuum edge.
pub fn optical_resonance(params: &ModelParams, grid: &BzGrid, occ: &Occupation) -> Result<f64> {
    if params.u12 == 0.0 {
        return Ok(band_resonance_edge(params, grid, occ));
    }
    solve_exciton_resonance(params, grid, occ).map(|r| r.omega_ex)
}

/// Zero-temperature electron-hole t-matrix
/// T = (1 + (U₁₂/N) Σ_k ⟨n_k⟩ / (−Δ⁰_k + U₁₁ν − U₁₂·2ν))⁻¹.
pub fn grpa_tmatrix(params: &ModelParams, grid: &BzGrid, occ: &Occupation) -> Result<f64> {
    let grid = grid.with_bands(params);
    let n = grid.len();
    let gaps = grid.gaps();
    let nu = occ.nu;
    let wl = params.omega_l;
    let e = map_indices(n, |i| -(gaps[i] - wl) + params.u11 * nu - params.u12 * (nu + nu));
    guard(&e)?;
    let inv_t = 1.0 + params.u12 * tree_sum(n, |i| occ.n_k[i] / e[i]) / n as f64;
    if inv_t.abs() < TMATRIX_GUARD {
        return Err(Error::ResonantDenominator {
            index: None,
            value: inv_t,
        });
    }
    Ok(1.0 / inv_t)
}

/// The GRPA bubble |g_L|²(−⟨n_k⟩/D_k)T and the screened Stark value
/// −|g_L|²⟨n_k⟩/Δ_k at grid point `k`. The two are algebraically equal.
pub fn grpa_stark_equivalence(
    params: &ModelParams,
    grid: &BzGrid,
    occ: &Occupation,
    k: usize,
) -> Result<(f64, f64)> {
    let grid = grid.with_bands(params);
    let t = grpa_tmatrix(params, &grid, occ)?;
    let g2 = params.g_l * params.g_l;
    let nu = occ.nu;
    let e_k = -(grid.gaps()[k] - params.omega_l) + params.u11 * nu - params.u12 * (nu + nu);
    let bubble = g2 * occ.n_k[k] / e_k * t;
    let delta = screened_detuning(params, &grid, occ, k)?;
    let screened = -g2 * occ.n_k[k] / delta;
    Ok((bubble, screened))
}
