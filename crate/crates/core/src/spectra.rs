//! Mean-field absorbance from the screened interband resolvent.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{BzGrid, ModelParams, Occupation};
use crate::reduce::{map_slice, tree_sum};
use crate::screening::hartree_shift;

/// Default broadening γ.
pub const DEFAULT_GAMMA: f64 = 0.005;

/// Default spacing of the frequency mesh.
pub const DEFAULT_OMEGA_STEP: f64 = 0.002;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCurve {
    pub omegas: Vec<f64>,
    /// α(ω) divided by `scale`, so the maximum is 1.
    pub alpha: Vec<f64>,
    pub gamma: f64,
    /// Maximum of the unnormalised α.
    pub scale: f64,
}

impl SpectrumCurve {
    /// α(ω) before normalisation.
    pub fn raw(&self) -> Vec<f64> {
        self.alpha.iter().map(|a| a * self.scale).collect()
    }
}

/// (1/π) Σ_k ⟨n_k⟩ Im[1/Δ_k(ω + iγ)] / N: the screened detuning continued
/// to complex laser frequency, with the Hartree shift kept real.
pub fn absorbance_raw(params: &ModelParams, grid: &BzGrid, occ: &Occupation, omega: f64, gamma: f64) -> f64 {
    let grid = grid.with_bands(params);
    let gaps = grid.gaps();
    let n = gaps.len();
    let z = Complex64::new(omega, gamma);
    let h = hartree_shift(params, occ.nu);
    let d = |i: usize| Complex64::new(gaps[i] + h, 0.0) - z;
    let ladder = tree_sum(n, |i| occ.n_k[i] / d(i)) * (params.u12 / n as f64);
    let resolvent = tree_sum(n, |i| {
        let di = d(i);
        occ.n_k[i] / (di - di * ladder)
    });
    resolvent.im / (std::f64::consts::PI * n as f64)
}

pub fn absorbance(
    params: &ModelParams,
    grid: &BzGrid,
    occ: &Occupation,
    omegas: &[f64],
    gamma: f64,
) -> Result<SpectrumCurve> {
    if gamma.is_nan() || gamma <= 0.0 || !gamma.is_finite() {
        return Err(Error::invalid("gamma", "must be positive"));
    }
    let grid = grid.with_bands(params);
    let raw = map_slice(omegas, |&w| absorbance_raw(params, &grid, occ, w, gamma));
    let scale = raw.iter().copied().fold(0.0, f64::max);
    let alpha = if scale > 0.0 {
        raw.iter().map(|a| a / scale).collect()
    } else {
        raw
    };
    Ok(SpectrumCurve {
        omegas: omegas.to_vec(),
        alpha,
        gamma,
        scale,
    })
}

/// Smallest-ω interior local maximum above 10 % of the global maximum.
pub fn peak_location(curve: &SpectrumCurve) -> Result<f64> {
    let a = &curve.alpha;
    let top = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (1..a.len().saturating_sub(1))
        .find(|&i| a[i] > 0.1 * top && a[i] > a[i - 1] && a[i] >= a[i + 1])
        .map(|i| curve.omegas[i])
        .ok_or(Error::NoPeak)
}

/// Trapezoidal ∫α dω of the unnormalised curve.
pub fn spectral_weight(curve: &SpectrumCurve) -> f64 {
    let raw = curve.raw();
    curve
        .omegas
        .windows(2)
        .zip(raw.windows(2))
        .map(|(w, a)| 0.5 * (w[1] - w[0]) * (a[0] + a[1]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::occupations;
    use crate::scan::linspace_step;
    use crate::screening::solve_exciton_resonance;

    fn setup(p: &ModelParams, l: usize) -> (BzGrid, Occupation) {
        let g = BzGrid::new(l, p).unwrap();
        let occ = occupations(p, &g).unwrap();
        (g, occ)
    }

    #[test]
    fn lorentzian_peak() {
        let omegas = linspace_step(0.0, 2.0, 0.01);
        let alpha: Vec<f64> = omegas
            .iter()
            .map(|w| 0.1 / ((w - 1.23).powi(2) + 0.01))
            .collect();
        let curve = SpectrumCurve {
            omegas,
            alpha,
            gamma: 0.1,
            scale: 1.0,
        };
        assert!((peak_location(&curve).unwrap() - 1.23).abs() < 1e-12);
    }

    #[test]
    fn monotone_curve_has_no_peak() {
        let omegas = linspace_step(0.0, 1.0, 0.1);
        let curve = SpectrumCurve {
            alpha: omegas.clone(),
            omegas,
            gamma: 0.1,
            scale: 1.0,
        };
        assert_eq!(peak_location(&curve), Err(Error::NoPeak));
    }

    #[test]
    fn bare_absorption_lies_in_continuum() {
        let p = ModelParams::default().unscreened();
        let (g, occ) = setup(&p, 32);
        let omegas = linspace_step(2.0, 5.5, 0.002);
        let c = absorbance(&p, &g, &occ, &omegas, 0.005).unwrap();
        assert!(c.alpha.iter().all(|&a| a >= 0.0));
        let w = peak_location(&c).unwrap();
        assert!((2.9..=4.5).contains(&w), "{w}");
    }

    #[test]
    fn no_in_gap_peak_without_attraction() {
        let p = ModelParams {
            u12: 0.0,
            ..Default::default()
        };
        let (g, occ) = setup(&p, 32);
        // Continuum edge is min gap − U₁₁ = 1.3.
        let omegas = linspace_step(0.5, 4.0, 0.002);
        let c = absorbance(&p, &g, &occ, &omegas, 0.005).unwrap();
        assert!(peak_location(&c).unwrap() >= 1.3 - 0.002);
    }

    #[test]
    fn exciton_peak() {
        let p = ModelParams::default();
        let (g, occ) = setup(&p, 64);
        let w_ex = solve_exciton_resonance(&p, &g, &occ).unwrap().omega_ex;
        let omegas = linspace_step(2.5, 3.2, DEFAULT_OMEGA_STEP);
        let c = absorbance(&p, &g, &occ, &omegas, DEFAULT_GAMMA).unwrap();
        assert!(c.alpha.iter().all(|&a| a >= 0.0));
        assert!((peak_location(&c).unwrap() - w_ex).abs() <= DEFAULT_OMEGA_STEP);
    }

    #[test]
    fn weight_stable_under_narrowing() {
        let p = ModelParams::default();
        let (g, occ) = setup(&p, 32);
        let omegas = linspace_step(1.5, 6.0, 0.0005);
        let a = absorbance(&p, &g, &occ, &omegas, 0.005).unwrap();
        let b = absorbance(&p, &g, &occ, &omegas, 0.0025).unwrap();
        let (wa, wb) = (spectral_weight(&a), spectral_weight(&b));
        assert!(((wa - wb) / wa).abs() < 0.01, "{wa} {wb}");
        assert!(b.scale > a.scale);
    }

    #[test]
    fn gamma_must_be_positive() {
        let p = ModelParams::default();
        let (g, occ) = setup(&p, 4);
        assert!(absorbance(&p, &g, &occ, &[2.7], 0.0).is_err());
    }
}
