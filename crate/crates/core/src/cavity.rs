//! Cavity-mediated, laser-stimulated interaction and the excitonic
//! enhancement of it.
//!
//! The kernel
//! V(k, k') = −|g_L g_c|² / (N Δ_c Δ_k Δ_k')
//! is rank one, so it is stored as a prefactor and the vector 1/Δ_k.

use crate::error::{Error, Result};
use crate::floquet::laser_below_gap;
use crate::lattice::{occupations, BzGrid, ModelParams, Occupation};
use crate::reduce::{map_indices, map_slice};
use crate::scan::ScanResult;
use crate::screening::{optical_resonance, ScreenedDetunings};

/// Smallest accepted |Δ_c|.
pub const CAVITY_GUARD: f64 = 1e-9;

/// Largest l for which [`InteractionKernel::dense`] materialises V.
pub const DENSE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct InteractionKernel {
    /// −|g_L g_c|² / (N Δ_c).
    pub prefactor: f64,
    /// 1/Δ_k over the grid.
    pub inv_delta: Vec<f64>,
    pub delta_c: f64,
    l: usize,
}

impl InteractionKernel {
    pub fn len(&self) -> usize {
        self.inv_delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_delta.is_empty()
    }

    pub fn get(&self, k: usize, kp: usize) -> f64 {
        self.prefactor * (self.inv_delta[k] * self.inv_delta[kp])
    }

    /// Forward-scattering element V(k, k).
    pub fn forward(&self, k: usize) -> f64 {
        self.get(k, k)
    }

    /// Separable form V = sign · v vᵀ with v_k = |g_L g_c| / (√(N|Δ_c|) Δ_k).
    /// The sign is −sign(Δ_c).
    pub fn separable(&self) -> (f64, Vec<f64>) {
        let scale = self.prefactor.abs().sqrt();
        (
            self.prefactor.signum(),
            self.inv_delta.iter().map(|x| scale * x).collect(),
        )
    }

    /// Row-major N×N matrix, only for l ≤ [`DENSE_LIMIT`].
    pub fn dense(&self) -> Result<Vec<f64>> {
        if self.l > DENSE_LIMIT {
            return Err(Error::GridTooLarge {
                l: self.l,
                limit: DENSE_LIMIT,
            });
        }
        let n = self.len();
        Ok(map_indices(n * n, |i| self.get(i / n, i % n)))
    }
}

pub fn interaction_kernel(params: &ModelParams, grid: &BzGrid, occ: &Occupation) -> Result<InteractionKernel> {
    let delta_c = params.delta_c();
    if delta_c.abs() < CAVITY_GUARD {
        return Err(Error::ResonantCavity(delta_c));
    }
    let s = ScreenedDetunings::compute(params, grid, occ)?;
    Ok(kernel_from_detunings(params, grid, &s))
}

pub fn kernel_from_detunings(params: &ModelParams, grid: &BzGrid, s: &ScreenedDetunings) -> InteractionKernel {
    let g = params.g_l * params.g_c;
    let delta_c = params.delta_c();
    InteractionKernel {
        prefactor: -(g * g) / (grid.len() as f64 * delta_c),
        inv_delta: map_indices(s.len(), |i| 1.0 / s.delta[i]),
        delta_c,
        l: grid.l(),
    }
}

/// Laser placements and forward kernels behind one enhancement value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enhancement {
    pub resonance: f64,
    pub omega_l: f64,
    pub omega_l_unscreened: f64,
    pub v_screened: f64,
    pub v_unscreened: f64,
    pub ratio: f64,
}

/// V_screened(k, k) / V_unscreened(k, k) with each laser `detuning` below
/// its own resonance: ω_ex for the interacting model, gap(Γ) for the
/// unscreened one. Δ_c is held fixed while the laser moves, so the ratio
/// does not depend on it.
pub fn enhancement(
    params_screened: &ModelParams,
    params_unscreened: &ModelParams,
    grid: &BzGrid,
    k: usize,
    detuning: f64,
) -> Result<Enhancement> {
    if detuning.is_nan() || detuning <= 0.0 {
        return Err(Error::invalid("detuning", "must be positive"));
    }
    let grid_s = grid.with_bands(params_screened);
    let occ_s = occupations(params_screened, &grid_s)?;
    let w_res = optical_resonance(params_screened, &grid_s, &occ_s)?;
    let ps = params_screened.with_laser(w_res - detuning);
    let v_s = interaction_kernel(&ps, &grid_s, &occ_s)?.forward(k);

    let grid_u = grid.with_bands(params_unscreened);
    let occ_u = occupations(params_unscreened, &grid_u)?;
    let pu = laser_below_gap(params_unscreened, &grid_u, detuning);
    let v_u = interaction_kernel(&pu, &grid_u, &occ_u)?.forward(k);
    Ok(Enhancement {
        resonance: w_res,
        omega_l: ps.omega_l,
        omega_l_unscreened: pu.omega_l,
        v_screened: v_s,
        v_unscreened: v_u,
        ratio: v_s / v_u,
    })
}

pub fn enhancement_ratio(
    params_screened: &ModelParams,
    params_unscreened: &ModelParams,
    grid: &BzGrid,
    k: usize,
    detuning: f64,
) -> Result<f64> {
    enhancement(params_screened, params_unscreened, grid, k, detuning).map(|e| e.ratio)
}

/// Enhancement at Γ against U₁₂, each point with its own exciton line.
///
/// The first row (axis value 0, `baseline` = 1) is the non-interacting
/// model with U₁₁ = U₁₂ = 0. Points where no exciton is found keep their
/// row with NaN values and `ok` = 0.
pub fn u12_sweep(params: &ModelParams, grid: &BzGrid, detuning: f64, u12_values: &[f64]) -> Result<ScanResult> {
    let unscreened = params.unscreened();
    let k = grid.gamma_index();
    let base = enhancement(&unscreened, &unscreened, grid, k, detuning)?;
    let rows = map_slice(u12_values, |&u12| {
        let p = ModelParams { u12, ..*params };
        enhancement(&p, &unscreened, grid, k, detuning)
    });

    let mut axis = vec![0.0];
    axis.extend_from_slice(u12_values);
    let mut cols: [Vec<f64>; 6] = Default::default();
    let mut push = |e: Option<&Enhancement>, baseline: bool| {
        let nan = f64::NAN;
        let e = e.copied();
        cols[0].push(e.map_or(nan, |e| e.resonance));
        cols[1].push(e.map_or(nan, |e| e.omega_l));
        cols[2].push(e.map_or(nan, |e| e.v_screened));
        cols[3].push(e.map_or(nan, |e| e.ratio));
        cols[4].push(if e.is_some() { 1.0 } else { 0.0 });
        cols[5].push(if baseline { 1.0 } else { 0.0 });
    };
    push(Some(&base), true);
    let mut failures = Vec::new();
    for (u12, r) in u12_values.iter().zip(&rows) {
        push(r.as_ref().ok(), false);
        if let Err(e) = r {
            failures.push(format!("u12={u12:?}: {e}"));
        }
    }
    let names = ["resonance", "omega_l", "v_gamma", "ratio", "ok", "baseline"];
    let mut scan = ScanResult::new("u12", axis);
    for (name, values) in names.iter().zip(cols) {
        scan.push_column(*name, values)?;
    }
    scan.set_meta("v_gamma_unscreened", base.v_unscreened);
    scan.set_meta("failures", failures);
    Ok(scan)
}
