//! Model parameters, the square-lattice momentum mesh, tight-binding bands
//! and zero-temperature occupations of the lower band.

use std::borrow::Cow;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Couplings, band parameters and drive/cavity frequencies, all in eV.
///
/// Band centres are fixed at ε₁ = 0 and ε₂ = `eps21`; only the difference
/// is physical. `u22` is carried for completeness but does not enter any
/// of the implemented formulas, and neither does `mu`, which cancels in
/// every laser detuning. `doping` is the hole fraction per spin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub u11: f64,
    pub u12: f64,
    pub u22: f64,
    pub eps21: f64,
    pub t1: f64,
    pub t2: f64,
    pub g_l: f64,
    pub g_c: f64,
    pub omega_l: f64,
    pub omega_c: f64,
    pub mu: f64,
    pub doping: f64,
}

impl Default for ModelParams {
    /// Tetracene-like parameters with a fully occupied lower band, a laser
    /// 30 meV below the default exciton line and a cavity 0.1 eV above the
    /// laser.
    fn default() -> Self {
        ModelParams {
            u11: 1.6,
            u12: 0.8,
            u22: 0.0,
            eps21: 3.7,
            t1: 0.05,
            t2: -0.15,
            g_l: 0.01,
            g_c: 0.005,
            omega_l: 2.68,
            omega_c: 2.78,
            mu: 0.0,
            doping: 0.0,
        }
    }
}

impl ModelParams {
    /// Band-gap hopping t₂₁ = t₂ − t₁.
    pub fn t21(&self) -> f64 {
        self.t2 - self.t1
    }

    /// Laser-cavity detuning Δ_c = ω_c − ω_L.
    pub fn delta_c(&self) -> f64 {
        self.omega_c - self.omega_l
    }

    /// The same model with both interactions switched off.
    pub fn unscreened(&self) -> Self {
        ModelParams {
            u11: 0.0,
            u12: 0.0,
            ..*self
        }
    }

    /// Moves the laser to `omega_l` while keeping Δ_c fixed.
    pub fn with_laser(&self, omega_l: f64) -> Self {
        ModelParams {
            omega_l,
            omega_c: omega_l + self.delta_c(),
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("u11", self.u11),
            ("u12", self.u12),
            ("u22", self.u22),
            ("eps21", self.eps21),
            ("t1", self.t1),
            ("t2", self.t2),
            ("g_l", self.g_l),
            ("g_c", self.g_c),
            ("omega_l", self.omega_l),
            ("omega_c", self.omega_c),
            ("mu", self.mu),
            ("doping", self.doping),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("{v} is not finite")));
            }
        }
        if self.u11 < 0.0 {
            return Err(Error::invalid("u11", "must be >= 0"));
        }
        if self.u12 < 0.0 {
            return Err(Error::invalid("u12", "must be >= 0"));
        }
        if !(0.0..1.0).contains(&self.doping) {
            return Err(Error::invalid("doping", "must lie in [0, 1)"));
        }
        Ok(())
    }

    fn bands_equal(&self, other: &ModelParams) -> bool {
        self.eps21 == other.eps21 && self.t1 == other.t1 && self.t2 == other.t2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Lower,
    Upper,
}

/// Dimensionless quasi-momentum in units of the inverse lattice constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Momentum {
    pub kx: f64,
    pub ky: f64,
}

impl Momentum {
    pub const GAMMA: Momentum = Momentum { kx: 0.0, ky: 0.0 };
    pub const Y: Momentum = Momentum { kx: 0.0, ky: PI };
    pub const M: Momentum = Momentum { kx: PI, ky: PI };

    pub fn new(kx: f64, ky: f64) -> Self {
        Momentum { kx, ky }
    }

    /// −k folded back into [0, 2π).
    pub fn inverted(&self) -> Self {
        let fold = |k: f64| {
            let r = (-k).rem_euclid(2.0 * PI);
            if r >= 2.0 * PI {
                0.0
            } else {
                r
            }
        };
        Momentum::new(fold(self.kx), fold(self.ky))
    }
}

#[inline]
fn band_energy(center: f64, hopping: f64, cos_x: f64, cos_y: f64) -> f64 {
    center + 2.0 * hopping * (cos_x + cos_y)
}

#[inline]
fn band_coefficients(params: &ModelParams, band: Band) -> (f64, f64) {
    match band {
        Band::Lower => (0.0, params.t1),
        Band::Upper => (params.eps21, params.t2),
    }
}

/// ε_{k,b} = ε_b + 2 t_b (cos kx + cos ky).
pub fn dispersion(params: &ModelParams, band: Band, k: Momentum) -> f64 {
    let (center, hop) = band_coefficients(params, band);
    band_energy(center, hop, k.kx.cos(), k.ky.cos())
}

/// Interband gap ε_{k,2} − ε_{k,1}.
pub fn bandgap(params: &ModelParams, k: Momentum) -> f64 {
    dispersion(params, Band::Upper, k) - dispersion(params, Band::Lower, k)
}

/// Laser-bandgap detuning Δ⁰_k = ε_{k,2} − ε_{k,1} − ω_L.
pub fn bare_detuning(params: &ModelParams, k: Momentum) -> f64 {
    bandgap(params, k) - params.omega_l
}

/// Uniform l×l mesh k = 2π(nx, ny)/l with Γ on the mesh.
///
/// Points are stored in lexicographic order, index = nx·l + ny. The grid
/// also caches ε_{k,1} and the gap for the band parameters it was built
/// with; cosines come from a table symmetric under n → l − n so the cached
/// bands are exactly inversion symmetric.
#[derive(Debug, Clone)]
pub struct BzGrid {
    l: usize,
    momenta: Vec<Momentum>,
    cos_table: Vec<f64>,
    lower: Vec<f64>,
    gap: Vec<f64>,
    bands: ModelParams,
}

impl BzGrid {
    pub fn new(l: usize, params: &ModelParams) -> Result<Self> {
        if l == 0 {
            return Err(Error::invalid("grid", "l must be positive"));
        }
        let step = 2.0 * PI / l as f64;
        let cos_table: Vec<f64> = (0..l)
            .map(|n| {
                let m = n.min(l - n);
                (step * m as f64).cos()
            })
            .collect();
        let momenta = (0..l * l)
            .map(|i| Momentum::new(step * (i / l) as f64, step * (i % l) as f64))
            .collect();
        let mut grid = BzGrid {
            l,
            momenta,
            cos_table,
            lower: Vec::new(),
            gap: Vec::new(),
            bands: *params,
        };
        grid.fill_bands(params);
        Ok(grid)
    }

    fn fill_bands(&mut self, params: &ModelParams) {
        let l = self.l;
        let (c1, h1) = band_coefficients(params, Band::Lower);
        let (c2, h2) = band_coefficients(params, Band::Upper);
        let mut lower = Vec::with_capacity(l * l);
        let mut gap = Vec::with_capacity(l * l);
        for nx in 0..l {
            let cx = self.cos_table[nx];
            for ny in 0..l {
                let cy = self.cos_table[ny];
                let e1 = band_energy(c1, h1, cx, cy);
                let e2 = band_energy(c2, h2, cx, cy);
                lower.push(e1);
                gap.push(e2 - e1);
            }
        }
        self.lower = lower;
        self.gap = gap;
        self.bands = *params;
    }

    /// This mesh with band caches for `params`; a cheap clone when the band
    /// parameters already match.
    pub fn for_params(&self, params: &ModelParams) -> BzGrid {
        let mut g = self.clone();
        if !self.bands.bands_equal(params) {
            g.fill_bands(params);
        }
        g
    }

    /// Borrowed when the cached bands already belong to `params`.
    pub fn with_bands(&self, params: &ModelParams) -> Cow<'_, BzGrid> {
        if self.bands.bands_equal(params) {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.for_params(params))
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of lattice sites N = l².
    pub fn len(&self) -> usize {
        self.l * self.l
    }

    pub fn is_empty(&self) -> bool {
        self.l == 0
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Spacing 2π/l.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.l as f64
    }

    pub fn momenta(&self) -> &[Momentum] {
        &self.momenta
    }

    pub fn momentum(&self, i: usize) -> Momentum {
        self.momenta[i]
    }

    pub fn index(&self, nx: usize, ny: usize) -> usize {
        (nx % self.l) * self.l + ny % self.l
    }

    pub fn coords(&self, i: usize) -> (usize, usize) {
        (i / self.l, i % self.l)
    }

    /// Index of −k mod 2π.
    pub fn inverse_index(&self, i: usize) -> usize {
        let (nx, ny) = self.coords(i);
        self.index((self.l - nx) % self.l, (self.l - ny) % self.l)
    }

    /// Lower-band energies ε_{k,1}.
    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    /// Interband gaps ε_{k,2} − ε_{k,1}.
    pub fn gaps(&self) -> &[f64] {
        &self.gap
    }

    pub fn gamma_index(&self) -> usize {
        0
    }

    /// Y = (0, π); needs an even l.
    pub fn y_index(&self) -> Option<usize> {
        self.l.is_multiple_of(2).then(|| self.index(0, self.l / 2))
    }

    /// M = (π, π); needs an even l.
    pub fn m_index(&self) -> Option<usize> {
        self.l.is_multiple_of(2).then(|| self.index(self.l / 2, self.l / 2))
    }

    /// Grid points along Y → Γ → M, with the path length at each point.
    pub fn high_symmetry_path(&self) -> Result<Vec<(usize, f64)>> {
        if !self.l.is_multiple_of(2) {
            return Err(Error::invalid("grid", "Y and M need an even l"));
        }
        let half = self.l / 2;
        let h = self.spacing();
        let mut path = Vec::with_capacity(2 * half + 1);
        for n in (0..=half).rev() {
            path.push((self.index(0, n), (half - n) as f64 * h));
        }
        let diag = h * std::f64::consts::SQRT_2;
        for n in 1..=half {
            path.push((self.index(n, n), half as f64 * h + n as f64 * diag));
        }
        Ok(path)
    }
}

/// Zero-temperature, spin-symmetric filling of the lower band.
#[derive(Debug, Clone, PartialEq)]
pub struct Occupation {
    /// ⟨n_{k,1,s}⟩ ∈ {0, 1} per grid point.
    pub n_k: Vec<f64>,
    /// Filling ν_s per spin.
    pub nu: f64,
}

impl Occupation {
    /// Full lower band on `len` points.
    pub fn full(len: usize) -> Self {
        Occupation {
            n_k: vec![1.0; len],
            nu: 1.0,
        }
    }

    pub fn filled(&self) -> usize {
        self.n_k.iter().filter(|&&n| n > 0.0).count()
    }
}

/// Fills the (1 − δ) fraction of lowest ε_{k,1} states. Ties are broken by
/// lexicographic (kx, ky), i.e. by grid index.
pub fn occupations(params: &ModelParams, grid: &BzGrid) -> Result<Occupation> {
    if !(0.0..1.0).contains(&params.doping) || !params.doping.is_finite() {
        return Err(Error::invalid("doping", "must lie in [0, 1)"));
    }
    let grid = grid.with_bands(params);
    let n = grid.len();
    let n_fill = ((1.0 - params.doping) * n as f64).round() as usize;
    let mut n_k = vec![0.0; n];
    if n_fill == n {
        n_k.fill(1.0);
    } else {
        let lower = grid.lower();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| lower[a].total_cmp(&lower[b]).then(a.cmp(&b)));
        for &i in &order[..n_fill] {
            n_k[i] = 1.0;
        }
    }
    Ok(Occupation {
        n_k,
        nu: n_fill as f64 / n as f64,
    })
}
