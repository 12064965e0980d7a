//! Brute-force checks of the resummed formulas on systems with a handful of
//! momenta and arbitrary band energies.
//!
//! * The single electron-hole-pair sector above the full lower band gives a
//!   dense resolvent whose drive matrix element must equal Σ_{q,s}(−Δ_q)⁻¹.
//! * Its lowest eigenvalue is the exciton line.
//! * Free resolvents on a truncated Fock space obey exact shift identities
//!   under fermion and photon creation.
//! * A full Fock-space model with local interactions measures how much of
//!   the pair response escapes the restricted sector.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::ModelParams;
use crate::screening::{solve_exciton_for, ScreenedDetunings, Transitions};

/// Largest number of momenta accepted by [`SmallSystem`].
pub const MAX_MOMENTA: usize = 6;

/// Largest number of momenta for the Fock-space commutator check.
pub const MAX_FOCK_MOMENTA: usize = 3;

/// Photon cutoff of the truncated Fock space.
pub const PHOTON_CUTOFF: usize = 2;

/// Minimum distance of a sampled E from every pole of the resolvents.
pub const MIN_POLE_DISTANCE: f64 = 0.05;

/// Tolerance of the exact commutator identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// A fully occupied lower band on a few momenta with arbitrary energies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallSystem {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub params: ModelParams,
}

impl SmallSystem {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, params: ModelParams) -> Result<Self> {
        if lower.is_empty() || lower.len() > MAX_MOMENTA {
            return Err(Error::invalid(
                "n_k",
                format!("need 1..={MAX_MOMENTA} momenta, got {}", lower.len()),
            ));
        }
        if lower.len() != upper.len() {
            return Err(Error::invalid("n_k", "lower and upper energies differ in length"));
        }
        if lower.iter().chain(&upper).any(|e| !e.is_finite()) {
            return Err(Error::invalid("energies", "must be finite"));
        }
        params.validate()?;
        Ok(SmallSystem { lower, upper, params })
    }

    /// Lower band at zero, upper band at the given gaps.
    pub fn from_gaps(gaps: Vec<f64>, params: ModelParams) -> Result<Self> {
        SmallSystem::new(vec![0.0; gaps.len()], gaps, params)
    }

    pub fn n_k(&self) -> usize {
        self.lower.len()
    }

    pub fn gaps(&self) -> Vec<f64> {
        self.upper.iter().zip(&self.lower).map(|(u, l)| u - l).collect()
    }

    /// Dimension 1 + 2·n_k of the sea ⊕ single-pair sector.
    pub fn sector_dim(&self) -> usize {
        1 + 2 * self.n_k()
    }

    /// One spin block of the pair Hamiltonian relative to the sea:
    /// diag(gap_q − U₁₁ + 2U₁₂) − (U₁₂/n_k)·11ᵀ.
    pub fn pair_block(&self) -> DMatrix<f64> {
        let n = self.n_k();
        let p = &self.params;
        let gaps = self.gaps();
        let c = p.u12 / n as f64;
        DMatrix::from_fn(n, n, |i, j| {
            let diag = if i == j { gaps[i] - p.u11 + 2.0 * p.u12 } else { 0.0 };
            diag - c
        })
    }

    /// Sector Hamiltonian on {|sea⟩} ∪ {b†_{q,↑}|sea⟩} ∪ {b†_{q,↓}|sea⟩}.
    /// The sea row is empty: scattering out of the full band is blocked.
    pub fn sector_hamiltonian(&self) -> DMatrix<f64> {
        let n = self.n_k();
        let block = self.pair_block();
        let mut h = DMatrix::zeros(1 + 2 * n, 1 + 2 * n);
        for s in 0..2 {
            let o = 1 + s * n;
            h.view_mut((o, o), (n, n)).copy_from(&block);
        }
        h
    }

    /// Analytic resummation Σ_{q,s} (−Δ_q)⁻¹ from the screening formulas.
    pub fn analytic_stark(&self) -> Result<f64> {
        let gaps = self.gaps();
        let n_k = vec![1.0; gaps.len()];
        let tr = Transitions {
            gaps: &gaps,
            n_k: &n_k,
            nu: 1.0,
        };
        let s = ScreenedDetunings::from_transitions(&self.params, tr)?;
        Ok(2.0 * s.delta.iter().map(|d| -1.0 / d).sum::<f64>())
    }

    /// Exciton line from the bisection solver on the same momenta.
    pub fn analytic_exciton(&self) -> Result<f64> {
        let gaps = self.gaps();
        let n_k = vec![1.0; gaps.len()];
        let tr = Transitions {
            gaps: &gaps,
            n_k: &n_k,
            nu: 1.0,
        };
        solve_exciton_for(&self.params, tr).map(|r| r.omega_ex)
    }

    /// Random instance with band energies ε₁ ∈ [−0.3, 0.3] and gaps in
    /// [`gap_lo`, `gap_hi`], redrawn until ω_L is at least
    /// [`MIN_POLE_DISTANCE`] from every pair energy.
    pub fn random<R: Rng>(rng: &mut R, n_k: usize, gap_lo: f64, gap_hi: f64, params: ModelParams) -> Result<Self> {
        for _ in 0..10_000 {
            let lower: Vec<f64> = (0..n_k).map(|_| rng.random_range(-0.3..=0.3)).collect();
            let upper: Vec<f64> = lower
                .iter()
                .map(|l| l + rng.random_range(gap_lo..=gap_hi))
                .collect();
            let sys = SmallSystem::new(lower, upper, params)?;
            let eig = SymmetricEigen::new(sys.pair_block()).eigenvalues;
            if eig.iter().all(|e| (params.omega_l - e).abs() >= MIN_POLE_DISTANCE) {
                return Ok(sys);
            }
        }
        Err(Error::SingularResolvent(params.omega_l))
    }
}

fn drive_solve(h: &DMatrix<f64>, v: &DVector<f64>, omega: f64) -> Result<f64> {
    let n = h.nrows();
    let a = DMatrix::from_diagonal_element(n, n, omega) - h;
    let x = a.lu().solve(v).ok_or(Error::SingularResolvent(omega))?;
    let val = v.dot(&x);
    if val.is_finite() {
        Ok(val)
    } else {
        Err(Error::SingularResolvent(omega))
    }
}

/// ⟨sea|D̂†(ω_L − H)⁻¹D̂|sea⟩/|g_L|² by a dense solve in the pair sector.
pub fn oracle_stark(system: &SmallSystem) -> Result<f64> {
    let h = system.sector_hamiltonian();
    let mut v = DVector::from_element(system.sector_dim(), 1.0);
    v[0] = 0.0;
    drive_solve(&h, &v, system.params.omega_l)
}

/// Lowest eigenvalue of one spin block of the pair Hamiltonian.
pub fn oracle_exciton_eigen(system: &SmallSystem) -> f64 {
    SymmetricEigen::new(system.pair_block())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

// ---------------------------------------------------------------------------
// Fermion Fock space

/// Mode index of (k, band, spin) with band ∈ {0, 1}, spin ∈ {0, 1}.
fn mode(k: usize, band: usize, spin: usize) -> usize {
    (k * 2 + band) * 2 + spin
}

/// c†_m on an occupation bitstring, with the Jordan-Wigner sign.
fn create(state: u32, m: usize) -> Option<(u32, f64)> {
    if state & (1 << m) != 0 {
        return None;
    }
    let below = (state & ((1u32 << m) - 1)).count_ones();
    let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
    Some((state | (1 << m), sign))
}

fn annihilate(state: u32, m: usize) -> Option<(u32, f64)> {
    if state & (1 << m) == 0 {
        return None;
    }
    let below = (state & ((1u32 << m) - 1)).count_ones();
    let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
    Some((state & !(1 << m), sign))
}

/// Free energies h⁰ = Σ_m (ε_m − μ) n_m + ω_c a†a over the product basis
/// fermions ⊗ photons (index = state·(cutoff+1) + n_ph).
fn free_energies(system: &SmallSystem, mode_energy: &[f64]) -> Vec<f64> {
    let modes = mode_energy.len();
    let nph = PHOTON_CUTOFF + 1;
    let p = &system.params;
    (0..(1usize << modes) * nph)
        .map(|i| {
            let state = i / nph;
            let ph = i % nph;
            let fermions: f64 = (0..modes)
                .filter(|m| state & (1 << m) != 0)
                .map(|m| mode_energy[m] - p.mu)
                .sum();
            fermions + p.omega_c * ph as f64
        })
        .collect()
}

/// Sparse creation operator: entries (row, col, value).
type Sparse = Vec<(usize, usize, f64)>;

fn fermion_creation(modes: usize, m: usize) -> Sparse {
    let nph = PHOTON_CUTOFF + 1;
    let mut out = Vec::new();
    for state in 0..(1u32 << modes) {
        if let Some((to, sign)) = create(state, m) {
            for ph in 0..nph {
                out.push((to as usize * nph + ph, state as usize * nph + ph, sign));
            }
        }
    }
    out
}

fn photon_creation(modes: usize) -> Sparse {
    let nph = PHOTON_CUTOFF + 1;
    let mut out = Vec::new();
    for state in 0..(1usize << modes) {
        for ph in 0..PHOTON_CUTOFF {
            out.push((state * nph + ph + 1, state * nph + ph, ((ph + 1) as f64).sqrt()));
        }
    }
    out
}

/// max |[ĝ⁰(E) X − X ĝ⁰(E − shift)]_{ij}|. ĝ⁰ is diagonal in the
/// occupation basis, so both products share the sparsity pattern of X.
fn identity_deviation(h: &[f64], x: &Sparse, e: f64, shift: f64) -> f64 {
    x.iter()
        .map(|&(i, j, v)| {
            let left = v / (e - h[i]);
            let right = v / ((e - shift) - h[j]);
            (left - right).abs()
        })
        .fold(0.0, f64::max)
}

fn min_distance(sorted: &[f64], e: f64) -> f64 {
    let i = sorted.partition_point(|&h| h < e);
    let mut d = f64::INFINITY;
    if i < sorted.len() {
        d = d.min(sorted[i] - e);
    }
    if i > 0 {
        d = d.min(e - sorted[i - 1]);
    }
    d
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub seed: u64,
    pub trials: usize,
    pub n_k: usize,
    pub dim: usize,
    /// Worst deviation of ĝ⁰(E)ĉ† = ĉ†ĝ⁰(E − ε + μ) over all modes.
    pub max_dev_fermion: f64,
    /// Worst deviation of ĝ⁰(E)â† = â†ĝ⁰(E − ω_c).
    pub max_dev_photon: f64,
    /// Smallest worst-case deviation of the wrong shift E − ε/2 (and
    /// E − ω_c/2) over trials.
    pub min_dev_negative: f64,
    pub resamples: usize,
    pub tolerance: f64,
    pub passed: bool,
    pub negative_control_fails: bool,
}

/// Checks the free-resolvent shift identities at `trials` random E values
/// on the Fock space of 4·n_k fermion modes and one photon mode.
pub fn check_commutator_identities(system: &SmallSystem, trials: usize, seed: u64) -> Result<CommutatorReport> {
    let n_k = system.n_k();
    if n_k > MAX_FOCK_MOMENTA {
        return Err(Error::invalid(
            "n_k",
            format!("Fock-space check supports at most {MAX_FOCK_MOMENTA} momenta"),
        ));
    }
    let p = &system.params;
    let modes = 4 * n_k;
    let mode_energy: Vec<f64> = (0..modes)
        .map(|m| {
            let k = m / 4;
            if (m / 2) % 2 == 0 {
                system.lower[k]
            } else {
                system.upper[k]
            }
        })
        .collect();
    let h = free_energies(system, &mode_energy);
    let mut levels = h.clone();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let ops: Vec<(Sparse, f64, f64)> = (0..modes)
        .map(|m| (fermion_creation(modes, m), mode_energy[m] - p.mu, 0.5 * mode_energy[m]))
        .chain(std::iter::once((photon_creation(modes), p.omega_c, 0.5 * p.omega_c)))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (levels[0] - 1.0, levels[levels.len() - 1] + 1.0);
    let mut report = CommutatorReport {
        seed,
        trials,
        n_k,
        dim: h.len(),
        max_dev_fermion: 0.0,
        max_dev_photon: 0.0,
        min_dev_negative: f64::INFINITY,
        resamples: 0,
        tolerance: IDENTITY_TOL,
        passed: false,
        negative_control_fails: false,
    };
    for _ in 0..trials {
        let admissible = |e: f64| {
            min_distance(&levels, e) >= MIN_POLE_DISTANCE
                && ops.iter().all(|(_, s, wrong)| {
                    min_distance(&levels, e - s) >= MIN_POLE_DISTANCE
                        && min_distance(&levels, e - wrong) >= MIN_POLE_DISTANCE
                })
        };
        let mut e = rng.random_range(lo..hi);
        let mut attempts = 0;
        while !admissible(e) {
            attempts += 1;
            if attempts > 100_000 {
                return Err(Error::SingularResolvent(e));
            }
            e = rng.random_range(lo..hi);
        }
        report.resamples += attempts;
        let mut worst_negative = 0.0f64;
        for (idx, (x, shift, wrong)) in ops.iter().enumerate() {
            let dev = identity_deviation(&h, x, e, *shift);
            if idx < modes {
                report.max_dev_fermion = report.max_dev_fermion.max(dev);
            } else {
                report.max_dev_photon = report.max_dev_photon.max(dev);
            }
            worst_negative = worst_negative.max(identity_deviation(&h, x, e, *wrong));
        }
        report.min_dev_negative = report.min_dev_negative.min(worst_negative);
    }
    report.passed = report.max_dev_fermion <= IDENTITY_TOL && report.max_dev_photon <= IDENTITY_TOL;
    report.negative_control_fails = report.min_dev_negative > 1e3 * IDENTITY_TOL;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Full Fock space with local interactions

/// Dense Hamiltonian of n_k = 2 momenta on a two-site ring, both bands and
/// spins (256 states), with on-site U₁₁, U₂₂ and U₁₂ density interactions
/// written in momentum space.
fn full_hamiltonian(system: &SmallSystem) -> DMatrix<f64> {
    let n = system.n_k();
    let modes = 4 * n;
    let dim = 1usize << modes;
    let p = &system.params;
    let mut h = DMatrix::zeros(dim, dim);
    for state in 0..dim as u32 {
        let mut diag = 0.0;
        for k in 0..n {
            for s in 0..2 {
                if state & (1 << mode(k, 0, s)) != 0 {
                    diag += system.lower[k];
                }
                if state & (1 << mode(k, 1, s)) != 0 {
                    diag += system.upper[k];
                }
            }
        }
        h[(state as usize, state as usize)] += diag;
    }
    // (U/N) Σ_{k,k',q} c†_{k+q,a,s} c_{k,a,s} c†_{k'−q,b,s'} c_{k',b,s'}
    let mut add_density = |u: f64, a: usize, sa: usize, b: usize, sb: usize| {
        if u == 0.0 {
            return;
        }
        let c = u / n as f64;
        for state in 0..dim as u32 {
            for k in 0..n {
                for kp in 0..n {
                    for q in 0..n {
                        let r = annihilate(state, mode(kp, b, sb))
                            .and_then(|(st, s1)| create(st, mode((kp + n - q) % n, b, sb)).map(|(st, s2)| (st, s1 * s2)))
                            .and_then(|(st, s12)| annihilate(st, mode(k, a, sa)).map(|(st, s3)| (st, s12 * s3)))
                            .and_then(|(st, s123)| create(st, mode((k + q) % n, a, sa)).map(|(st, s4)| (st, s123 * s4)));
                        if let Some((to, sign)) = r {
                            h[(to as usize, state as usize)] += c * sign;
                        }
                    }
                }
            }
        }
    };
    add_density(p.u11, 0, 0, 0, 1);
    add_density(p.u22, 1, 0, 1, 1);
    for sa in 0..2 {
        for sb in 0..2 {
            add_density(p.u12, 0, sa, 1, sb);
        }
    }
    h
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeakageReport {
    /// ‖H|sea⟩ − E_sea|sea⟩‖ in the full Fock space.
    pub sea_residual: f64,
    pub restricted: f64,
    pub full: f64,
    /// |full − restricted| / |restricted|.
    pub relative: f64,
}

/// Compares the restricted-sector oracle with the same drive response in
/// the full 256-state Fock space (two momenta only).
pub fn leakage_estimate(system: &SmallSystem) -> Result<LeakageReport> {
    if system.n_k() != 2 {
        return Err(Error::invalid("n_k", "the full Fock-space model needs exactly 2 momenta"));
    }
    let h = full_hamiltonian(system);
    let dim = h.nrows();
    let n = system.n_k();
    let sea_state: u32 = (0..n).flat_map(|k| (0..2).map(move |s| 1u32 << mode(k, 0, s))).sum();
    let mut sea = DVector::zeros(dim);
    sea[sea_state as usize] = 1.0;
    let h_sea = &h * &sea;
    let e_sea = sea.dot(&h_sea);
    let sea_residual = (h_sea - &sea * e_sea).norm();

    // D̂ = Σ_{q,s} c†_{q,2,s} c_{q,1,s}
    let mut drive = DVector::zeros(dim);
    for q in 0..n {
        for s in 0..2 {
            let r = annihilate(sea_state, mode(q, 0, s))
                .and_then(|(st, s1)| create(st, mode(q, 1, s)).map(|(st, s2)| (st, s1 * s2)));
            if let Some((to, sign)) = r {
                drive[to as usize] += sign;
            }
        }
    }
    let shifted = h - DMatrix::from_diagonal_element(dim, dim, e_sea);
    let full = drive_solve(&shifted, &drive, system.params.omega_l)?;
    let restricted = oracle_stark(system)?;
    Ok(LeakageReport {
        sea_residual,
        restricted,
        full,
        relative: ((full - restricted) / restricted).abs(),
    })
}

// ---------------------------------------------------------------------------
// Randomised suite

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceResult {
    pub n_k: usize,
    pub oracle_stark: f64,
    pub analytic_stark: f64,
    pub stark_rel_err: f64,
    pub oracle_exciton: f64,
    pub solver_exciton: f64,
    pub exciton_abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub seed: u64,
    pub instances: Vec<InstanceResult>,
    pub max_stark_rel_err: f64,
    pub max_exciton_abs_err: f64,
    pub commutator: CommutatorReport,
    pub leakage: LeakageReport,
}

/// `count` random full-filling instances with 1..=4 momenta, gaps in
/// [2.5, 4.5] and the couplings of `params`, plus the commutator suite on
/// two momenta and the leakage diagnostic.
pub fn run_oracle_suite(params: &ModelParams, count: usize, trials: usize, seed: u64) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(count);
    for i in 0..count {
        let n_k = 1 + i % 4;
        let sys = SmallSystem::random(&mut rng, n_k, 2.5, 4.5, *params)?;
        let oracle = oracle_stark(&sys)?;
        let analytic = sys.analytic_stark()?;
        let eig = oracle_exciton_eigen(&sys);
        let solved = sys.analytic_exciton()?;
        instances.push(InstanceResult {
            n_k,
            oracle_stark: oracle,
            analytic_stark: analytic,
            stark_rel_err: ((oracle - analytic) / analytic).abs(),
            oracle_exciton: eig,
            solver_exciton: solved,
            exciton_abs_err: (eig - solved).abs(),
        });
    }
    let fock = SmallSystem::random(&mut rng, 2, 2.5, 4.5, *params)?;
    let commutator = check_commutator_identities(&fock, trials, seed)?;
    let leakage = leakage_estimate(&fock)?;
    Ok(OracleReport {
        seed,
        max_stark_rel_err: instances.iter().map(|r| r.stark_rel_err).fold(0.0, f64::max),
        max_exciton_abs_err: instances.iter().map(|r| r.exciton_abs_err).fold(0.0, f64::max),
        instances,
        commutator,
        leakage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(omega_l: f64) -> ModelParams {
        ModelParams {
            omega_l,
            ..Default::default()
        }
    }

    #[test]
    fn single_momentum() {
        let sys = SmallSystem::from_gaps(vec![3.3], params(2.4)).unwrap();
        let expect = -1.0 / (3.3 - 2.4 - 1.6 + 0.8);
        assert!((oracle_stark(&sys).unwrap() / 2.0 / expect - 1.0).abs() < 1e-13);
        assert!((sys.analytic_stark().unwrap() / 2.0 / expect - 1.0).abs() < 1e-13);
    }

    #[test]
    fn no_interband_attraction() {
        let p = ModelParams {
            u12: 0.0,
            ..params(2.4)
        };
        let gaps = vec![2.7, 3.1, 4.2];
        let sys = SmallSystem::from_gaps(gaps.clone(), p).unwrap();
        let expect: f64 = 2.0 * gaps.iter().map(|g| -1.0 / (g - 2.4 - 1.6)).sum::<f64>();
        assert!(((oracle_stark(&sys).unwrap() - expect) / expect).abs() < 1e-13);
        assert!(((sys.analytic_stark().unwrap() - expect) / expect).abs() < 1e-13);
        assert!((oracle_exciton_eigen(&sys) - (2.7 - 1.6)).abs() < 1e-13);
    }

    #[test]
    fn two_momenta_closed_form() {
        let sys = SmallSystem::from_gaps(vec![2.9, 3.4], params(2.4)).unwrap();
        let c: f64 = 0.4;
        let (a1, a2) = (2.9 - 1.6 + 1.6, 3.4 - 1.6 + 1.6);
        let mean = 0.5 * (a1 + a2) - c;
        let lam = mean - (0.25 * (a1 - a2) * (a1 - a2) + c * c).sqrt();
        assert!((oracle_exciton_eigen(&sys) - lam).abs() < 1e-13);
        assert!((sys.analytic_exciton().unwrap() - lam).abs() < 1e-10);
    }

    #[test]
    fn degenerate_gaps_bind_by_u12() {
        let sys = SmallSystem::from_gaps(vec![3.0; 5], params(2.4)).unwrap();
        assert!((oracle_exciton_eigen(&sys) - (3.0 - 1.6 + 1.6 - 0.8)).abs() < 1e-12);
    }

    #[test]
    fn random_instances_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let sys = SmallSystem::random(&mut rng, 4, 2.5, 4.5, params(2.4)).unwrap();
            let a = oracle_stark(&sys).unwrap();
            let b = sys.analytic_stark().unwrap();
            assert!(((a - b) / b).abs() < 1e-10, "{a} {b}");
            assert!((oracle_exciton_eigen(&sys) - sys.analytic_exciton().unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn sea_row_is_empty() {
        let sys = SmallSystem::from_gaps(vec![2.9, 3.4, 3.9], params(2.4)).unwrap();
        let h = sys.sector_hamiltonian();
        assert_eq!(h.nrows(), sys.sector_dim());
        assert!(h.row(0).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn commutators_hold_and_control_fails() {
        let mut p = params(2.4);
        p.mu = 0.13;
        let sys = SmallSystem::new(vec![-0.1, 0.2], vec![3.2, 3.9], p).unwrap();
        let r = check_commutator_identities(&sys, 20, 7).unwrap();
        assert_eq!(r.dim, 256 * 3);
        assert!(r.passed, "{r:?}");
        assert!(r.negative_control_fails, "{r:?}");
    }

    #[test]
    fn commutators_three_momenta() {
        let sys = SmallSystem::new(vec![-0.1, 0.0, 0.2], vec![3.2, 3.5, 3.9], params(2.4)).unwrap();
        let r = check_commutator_identities(&sys, 5, 3).unwrap();
        assert_eq!(r.dim, 4096 * 3);
        assert!(r.passed && r.negative_control_fails, "{r:?}");
    }

    #[test]
    fn jordan_wigner_anticommutes() {
        // c†_0 c†_1 |0⟩ = −c†_1 c†_0 |0⟩
        let (a, s1) = create(0, 1).unwrap();
        let (a, s2) = create(a, 0).unwrap();
        let (b, t1) = create(0, 0).unwrap();
        let (b, t2) = create(b, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(s1 * s2, -(t1 * t2));
        assert!(create(1, 0).is_none());
    }

    #[test]
    fn full_fock_sea_is_eigenstate() {
        let sys = SmallSystem::new(vec![-0.1, 0.1], vec![3.1, 3.6], params(2.4)).unwrap();
        let r = leakage_estimate(&sys).unwrap();
        assert!(r.sea_residual < 1e-12);
        assert!(r.relative.is_finite());
    }

    #[test]
    fn suite_is_reproducible() {
        let a = run_oracle_suite(&params(2.4), 8, 4, 7).unwrap();
        let b = run_oracle_suite(&params(2.4), 8, 4, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.max_stark_rel_err < 1e-10);
    }
}
