//! Stark and Bloch-Siegert renormalised lower band, effective hopping and
//! the two-level-atom comparison.

use crate::error::{Error, Result};
use crate::lattice::{BzGrid, ModelParams, Occupation};
use crate::reduce::map_indices;
use crate::screening::{optical_resonance, solve_exciton_resonance, ResonanceReport, ScreenedDetunings};

/// Guard on |ω_L − ω_ex| in [`tla_shifts`].
pub const TLA_GUARD: f64 = 1e-12;

/// Lower band dressed by the drive: ε̃_k = ε_{k,1} + stark_k + bs_k with
/// stark_k = −|g_L|²/Δ_k and bs_k = −|g_L|²/Δ^BS_k.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveBand {
    pub energies: Vec<f64>,
    pub stark: Vec<f64>,
    pub bs: Vec<f64>,
}

impl EffectiveBand {
    /// Band change ε̃_k − ε_{k,1} at grid point `k`.
    pub fn change(&self, k: usize) -> f64 {
        self.stark[k] + self.bs[k]
    }
}

pub fn effective_band(params: &ModelParams, grid: &BzGrid, occ: &Occupation) -> Result<EffectiveBand> {
    let grid = grid.with_bands(params);
    let s = ScreenedDetunings::compute(params, &grid, occ)?;
    Ok(band_from_detunings(params, &grid, &s))
}

/// Builds the dressed band from precomputed detunings.
pub fn band_from_detunings(params: &ModelParams, grid: &BzGrid, s: &ScreenedDetunings) -> EffectiveBand {
    let g2 = params.g_l * params.g_l;
    let lower = grid.lower();
    let stark = map_indices(s.len(), |i| -g2 / s.delta[i]);
    let bs = map_indices(s.len(), |i| -g2 / s.delta_bs[i]);
    let energies = map_indices(s.len(), |i| lower[i] + stark[i] + bs[i]);
    EffectiveBand { energies, stark, bs }
}

fn curvature_hopping(band: &EffectiveBand, grid: &BzGrid, plus: usize, minus: usize) -> f64 {
    let h = grid.spacing();
    let e = &band.energies;
    let c = e[grid.gamma_index()];
    let second = (e[plus] - 2.0 * c + e[minus]) / (h * h);
    -0.5 * second
}

/// Effective hopping t̃ = −½ ∂²ε̃/∂k_x² at Γ by a central difference with
/// the grid spacing. Meaningful for l ≥ 16.
pub fn effective_hopping(band: &EffectiveBand, grid: &BzGrid) -> f64 {
    let l = grid.l();
    curvature_hopping(band, grid, grid.index(1 % l, 0), grid.index(l - 1, 0))
}

/// Same as [`effective_hopping`] along k_y.
pub fn effective_hopping_ky(band: &EffectiveBand, grid: &BzGrid) -> f64 {
    let l = grid.l();
    curvature_hopping(band, grid, grid.index(0, 1 % l), grid.index(0, l - 1))
}

/// Two-level-atom Stark and Bloch-Siegert shifts
/// (|g_L|²/(ω_L − ω_ex), |g_L|²/(ω_L + ω_ex)).
pub fn tla_shifts(params: &ModelParams, omega_ex: f64) -> Result<(f64, f64)> {
    let d = params.omega_l - omega_ex;
    if d.abs() < TLA_GUARD {
        return Err(Error::ResonantDenominator {
            index: None,
            value: d,
        });
    }
    let g2 = params.g_l * params.g_l;
    Ok((g2 / d, g2 / (params.omega_l + omega_ex)))
}

/// |Stark / Bloch-Siegert| of the two-level atom.
pub fn tla_ratio(params: &ModelParams, omega_ex: f64) -> Result<f64> {
    let (st, bs) = tla_shifts(params, omega_ex)?;
    Ok((st / bs).abs())
}

/// Signed ratio Δε_Stark(k)/Δε_BS(k) = Δ^BS_k/Δ_k.
pub fn stark_bs_ratio_signed(params: &ModelParams, grid: &BzGrid, occ: &Occupation, k: usize) -> Result<f64> {
    let s = ScreenedDetunings::compute(params, grid, occ)?;
    Ok(s.delta_bs[k] / s.delta[k])
}

/// Magnitude of [`stark_bs_ratio_signed`].
pub fn stark_bs_ratio(params: &ModelParams, grid: &BzGrid, occ: &Occupation, k: usize) -> Result<f64> {
    stark_bs_ratio_signed(params, grid, occ, k).map(f64::abs)
}

/// Re-solves the exciton line and places the laser `delta_ex` below it.
/// The cavity detuning Δ_c is kept fixed.
pub fn laser_below_exciton(
    params: &ModelParams,
    grid: &BzGrid,
    occ: &Occupation,
    delta_ex: f64,
) -> Result<(ModelParams, ResonanceReport)> {
    let report = solve_exciton_resonance(params, grid, occ)?;
    let tuned = params.with_laser(report.omega_ex - delta_ex);
    let report = ResonanceReport {
        delta_ex: report.omega_ex - tuned.omega_l,
        ..report
    };
    Ok((tuned, report))
}

/// Places the laser `detuning` below the lowest optical resonance (the
/// exciton line, or the continuum edge without inter-band attraction),
/// keeping Δ_c fixed.
pub fn laser_below_resonance(
    params: &ModelParams,
    grid: &BzGrid,
    occ: &Occupation,
    detuning: f64,
) -> Result<ModelParams> {
    optical_resonance(params, grid, occ).map(|w| params.with_laser(w - detuning))
}

/// Places the laser `delta_gap` below the bare gap at Γ, keeping Δ_c fixed.
pub fn laser_below_gap(params: &ModelParams, grid: &BzGrid, delta_gap: f64) -> ModelParams {
    let grid = grid.with_bands(params);
    params.with_laser(grid.gaps()[grid.gamma_index()] - delta_gap)
}
