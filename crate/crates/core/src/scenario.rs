//! Named scenarios producing the data behind each figure, plus the
//! resonance, absorbance and oracle runs.
//!
//! Every scenario returns one or more tables. The first is written as
//! `<name>.{csv,json,meta.json}`, further ones as `<name>.<part>.*`.

use std::path::{Path, PathBuf};

use serde_json::json;

use crate::cavity::{enhancement_ratio, interaction_kernel, u12_sweep};
use crate::config::Config;
use crate::ed_oracle::run_oracle_suite;
use crate::error::{Error, Result};
use crate::floquet::{band_from_detunings, effective_hopping, laser_below_gap, laser_below_resonance, tla_ratio};
use crate::lattice::{occupations, BzGrid, ModelParams, Occupation};
use crate::reduce::map_slice;
use crate::scan::{argmax, first_zero_crossing, linspace_step, ScanResult};
use crate::screening::{band_resonance_edge, optical_resonance, solve_exciton_resonance, ScreenedDetunings};
use crate::spectra::{absorbance, peak_location};

pub const SCENARIOS: &[&str] = &[
    "fig1a",
    "fig1b",
    "fig2",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig4",
    "resonance",
    "absorbance",
    "oracle",
];

/// Mesh size for scans when none is configured.
pub const DEFAULT_SCAN_GRID: usize = 256;

/// Mesh size for the resonance solver when none is configured.
pub const DEFAULT_RESONANCE_GRID: usize = 1024;

/// Band hoppings t₂₁ of the three dispersion panels; t₂ is kept and t₁
/// adjusted.
pub const FIG4_T21: [f64; 3] = [-0.2, -0.1, -0.05];

/// A named table produced by a scenario; `part` is `None` for the main one.
#[derive(Debug, Clone)]
pub struct Table {
    pub part: Option<String>,
    pub scan: ScanResult,
}

impl Table {
    pub fn stem(&self, name: &str) -> String {
        match &self.part {
            Some(p) => format!("{name}.{p}"),
            None => name.to_string(),
        }
    }
}

struct Setup {
    params: ModelParams,
    grid: BzGrid,
    occ: Occupation,
}

fn setup(cfg: &Config, default_l: usize) -> Result<Setup> {
    cfg.params.validate()?;
    let l = cfg.options.grid.unwrap_or(default_l);
    let grid = BzGrid::new(l, &cfg.params)?;
    let occ = occupations(&cfg.params, &grid)?;
    Ok(Setup {
        params: cfg.params,
        grid,
        occ,
    })
}

fn even_grid(grid: &BzGrid) -> Result<(usize, usize)> {
    match (grid.y_index(), grid.m_index()) {
        (Some(y), Some(m)) => Ok((y, m)),
        _ => Err(Error::invalid("grid", "this scenario needs an even grid size")),
    }
}

fn nan_or<T>(r: &Result<T>, f: impl Fn(&T) -> f64) -> f64 {
    r.as_ref().map_or(f64::NAN, f)
}

fn ok_flags<T>(rows: &[Result<T>]) -> Vec<f64> {
    rows.iter().map(|r| if r.is_ok() { 1.0 } else { 0.0 }).collect()
}

fn failures<T>(axis: &[f64], rows: &[Result<T>]) -> Vec<String> {
    axis.iter()
        .zip(rows)
        .filter_map(|(x, r)| r.as_ref().err().map(|e| format!("{x:?}: {e}")))
        .collect()
}

/// Runs a scenario and returns its tables with metadata attached.
pub fn compute_scenario(name: &str, cfg: &Config) -> Result<Vec<Table>> {
    let (tables, l) = match name {
        "fig1a" => fig1a(cfg)?,
        "fig1b" => fig1b(cfg)?,
        "fig2" => fig2(cfg)?,
        "fig3a" => fig3a(cfg)?,
        "fig3b" => fig3b(cfg)?,
        "fig3c" => fig3c(cfg)?,
        "fig4" => fig4(cfg)?,
        "resonance" => resonance(cfg)?,
        "absorbance" => absorbance_scan(cfg)?,
        "oracle" => oracle(cfg)?,
        _ => return Err(Error::UnknownScenario(name.to_string())),
    };
    Ok(tables
        .into_iter()
        .map(|mut t| {
            let scan = &mut t.scan;
            scan.set_meta("scenario", name);
            scan.set_meta("part", &t.part);
            scan.set_meta("params", cfg.params);
            scan.set_meta("options", cfg.options);
            scan.set_meta("grid_l", l);
            scan.set_meta("seed", cfg.options.seed);
            scan.set_meta("version", env!("CARGO_PKG_VERSION"));
            t
        })
        .collect())
}

/// Runs a scenario and writes its files into `out`.
pub fn run_scenario(name: &str, cfg: &Config, out: &Path) -> Result<Vec<PathBuf>> {
    let tables = compute_scenario(name, cfg)?;
    let mut written = Vec::new();
    for t in &tables {
        written.extend(t.scan.write_files(out, &t.stem(name))?);
    }
    Ok(written)
}

type Tables = (Vec<Table>, Option<usize>);

fn main_table(scan: ScanResult, l: Option<usize>) -> Tables {
    (vec![Table { part: None, scan }], l)
}

/// Band change divided by |g_L|², −1/Δ_k − 1/Δ^BS_k.
fn change_per_g2(s: &ScreenedDetunings, k: usize) -> f64 {
    -1.0 / s.delta[k] - 1.0 / s.delta_bs[k]
}

fn path_scan(grid: &BzGrid) -> Result<(ScanResult, Vec<usize>)> {
    let path = grid.high_symmetry_path()?;
    let idx: Vec<usize> = path.iter().map(|p| p.0).collect();
    let scan = ScanResult::new("path", path.iter().map(|p| p.1).collect())
        .with_column("kx", idx.iter().map(|&i| grid.momentum(i).kx).collect())?
        .with_column("ky", idx.iter().map(|&i| grid.momentum(i).ky).collect())?;
    Ok((scan, idx))
}

fn fig1a(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let d = cfg.options.detuning.unwrap_or(0.03);
    let ps = laser_below_resonance(&st.params, &st.grid, &st.occ, d)?;
    let pu = laser_below_gap(&st.params.unscreened(), &st.grid, d);
    let ss = ScreenedDetunings::compute(&ps, &st.grid, &st.occ)?;
    let su = ScreenedDetunings::compute(&pu, &st.grid, &st.occ)?;
    let (scan, idx) = path_scan(&st.grid)?;
    let mut scan = scan
        .with_column("change_screened", idx.iter().map(|&k| change_per_g2(&ss, k)).collect())?
        .with_column("change_unscreened", idx.iter().map(|&k| change_per_g2(&su, k)).collect())?;
    scan.set_meta("omega_l_screened", ps.omega_l);
    scan.set_meta("omega_l_unscreened", pu.omega_l);
    Ok(main_table(scan, Some(st.grid.l())))
}

fn fig1b(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let d = cfg.options.detuning.unwrap_or(0.03);
    let ps = laser_below_resonance(&st.params, &st.grid, &st.occ, d)?;
    let pu = laser_below_gap(&st.params.unscreened(), &st.grid, d);
    let ss = ScreenedDetunings::compute(&ps, &st.grid, &st.occ)?;
    let su = ScreenedDetunings::compute(&pu, &st.grid, &st.occ)?;
    let g_values = linspace_step(0.0, 0.03, 0.0005);
    let hop = |p: &ModelParams, s: &ScreenedDetunings| -> Vec<f64> {
        map_slice(&g_values, |&g_l| {
            let pg = ModelParams { g_l, ..*p };
            effective_hopping(&band_from_detunings(&pg, &st.grid, s), &st.grid)
        })
    };
    let t_eff = hop(&ps, &ss);
    let t_un = hop(&pu, &su);
    let crossing = first_zero_crossing(&g_values, &t_eff);
    let crossing_un = first_zero_crossing(&g_values, &t_un);
    let p = &st.params;
    let closed_form = (2.0 * p.t1.abs() * d * d / (2.0 * p.t21().abs())).sqrt();
    let mut scan = ScanResult::new("g_l", g_values)
        .with_column("t_eff", t_eff)?
        .with_column("t_eff_unscreened", t_un)?;
    scan.set_meta("detuning", d);
    scan.set_meta("zero_crossing", crossing);
    scan.set_meta("zero_crossing_unscreened", crossing_un);
    scan.set_meta("closed_form_unscreened", closed_form);
    Ok(main_table(scan, Some(st.grid.l())))
}

/// |Δ^BS/Δ| at Γ, Y, M and the two-level value for one laser placement.
fn ratios(p: &ModelParams, st: &Setup, ks: [usize; 3], omega_ex: f64) -> Result<[f64; 4]> {
    let s = ScreenedDetunings::compute(p, &st.grid, &st.occ)?;
    let r = |k: usize| (s.delta_bs[k] / s.delta[k]).abs();
    Ok([r(ks[0]), r(ks[1]), r(ks[2]), tla_ratio(p, omega_ex)?])
}

fn ratio_table(axis_name: &str, axis: Vec<f64>, rows: &[Result<(f64, [f64; 4])>]) -> Result<ScanResult> {
    let names = ["ratio_gamma", "ratio_y", "ratio_m", "ratio_tla"];
    let mut scan = ScanResult::new(axis_name, axis.clone())
        .with_column("omega_ex", rows.iter().map(|r| nan_or(r, |v| v.0)).collect())?;
    for (j, n) in names.iter().enumerate() {
        scan.push_column(*n, rows.iter().map(|r| nan_or(r, |v| v.1[j])).collect())?;
    }
    scan.push_column("ok", ok_flags(rows))?;
    scan.set_meta("failures", failures(&axis, rows));
    Ok(scan)
}

fn fig2(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let (y, m) = even_grid(&st.grid)?;
    let ks = [st.grid.gamma_index(), y, m];
    let w_ex = optical_resonance(&st.params, &st.grid, &st.occ)?;

    let detunings = linspace_step(0.01, 0.3, 0.01);
    let rows: Vec<_> = map_slice(&detunings, |&d| {
        let p = st.params.with_laser(w_ex - d);
        ratios(&p, &st, ks, w_ex).map(|r| (w_ex, r))
    });
    let main = ratio_table("delta_ex", detunings, &rows)?;

    let d = cfg.options.detuning.unwrap_or(0.03);
    let sweep = |values: Vec<f64>, set: fn(&mut ModelParams, f64), name: &str| -> Result<ScanResult> {
        let rows: Vec<_> = map_slice(&values, |&v| {
            let mut p = st.params;
            set(&mut p, v);
            let w = solve_exciton_resonance(&p, &st.grid, &st.occ)?.omega_ex;
            ratios(&p.with_laser(w - d), &st, ks, w).map(|r| (w, r))
        });
        let mut scan = ratio_table(name, values, &rows)?;
        scan.set_meta("delta_ex", d);
        Ok(scan)
    };
    let by_u12 = sweep(linspace_step(0.1, 1.2, 0.05), |p, v| p.u12 = v, "u12")?;
    let by_u11 = sweep(linspace_step(0.4, 2.4, 0.1), |p, v| p.u11 = v, "u11")?;
    Ok((
        vec![
            Table { part: None, scan: main },
            Table {
                part: Some("u12".into()),
                scan: by_u12,
            },
            Table {
                part: Some("u11".into()),
                scan: by_u11,
            },
        ],
        Some(st.grid.l()),
    ))
}

fn fig3a(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let d = cfg.options.detuning.unwrap_or(0.05);
    let ps = laser_below_resonance(&st.params, &st.grid, &st.occ, d)?;
    let pu = laser_below_gap(&st.params.unscreened(), &st.grid, d);
    let vs = interaction_kernel(&ps, &st.grid, &st.occ)?;
    let vu = interaction_kernel(&pu, &st.grid, &st.occ)?;
    // V(k, k) with the prefactor |g_L g_c|²/(N Δ_c) removed.
    let norm = |x: f64| -x * x;
    let (scan, idx) = path_scan(&st.grid)?;
    let screened: Vec<f64> = idx.iter().map(|&k| norm(vs.inv_delta[k])).collect();
    let unscreened: Vec<f64> = idx.iter().map(|&k| norm(vu.inv_delta[k])).collect();
    let ratio = screened.iter().zip(&unscreened).map(|(a, b)| a / b).collect();
    let mut scan = scan
        .with_column("v_screened", screened)?
        .with_column("v_unscreened", unscreened)?
        .with_column("ratio", ratio)?;
    scan.set_meta("detuning", d);
    scan.set_meta("delta_c", st.params.delta_c());
    Ok(main_table(scan, Some(st.grid.l())))
}

fn fig3b(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let (y, m) = even_grid(&st.grid)?;
    let ks = [st.grid.gamma_index(), y, m];
    let un = st.params.unscreened();
    let detunings = linspace_step(0.05, 0.5, 0.01);
    let rows: Vec<Result<[f64; 3]>> = map_slice(&detunings, |&d| {
        let r = |k| enhancement_ratio(&st.params, &un, &st.grid, k, d);
        Ok([r(ks[0])?, r(ks[1])?, r(ks[2])?])
    });
    let mut scan = ScanResult::new("detuning", detunings.clone());
    for (j, n) in ["ratio_gamma", "ratio_y", "ratio_m"].iter().enumerate() {
        scan.push_column(*n, rows.iter().map(|r| nan_or(r, |v| v[j])).collect())?;
    }
    scan.push_column("ok", ok_flags(&rows))?;
    scan.set_meta("failures", failures(&detunings, &rows));
    Ok(main_table(scan, Some(st.grid.l())))
}

fn fig3c(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let d = cfg.options.detuning.unwrap_or(0.05);
    let mut scan = u12_sweep(&st.params, &st.grid, d, &linspace_step(0.1, 1.2, 0.05))?;
    let ratio = scan.column("ratio").unwrap_or_default();
    let baseline = scan.column("baseline").unwrap_or_default();
    let screened: Vec<f64> = ratio
        .iter()
        .zip(baseline)
        .map(|(&r, &b)| if b == 0.0 { r } else { f64::NAN })
        .collect();
    let peak = argmax(&screened).map(|i| (scan.axis[i], screened[i]));
    scan.set_meta("detuning", d);
    scan.set_meta("argmax_u12", peak.map(|p| p.0));
    scan.set_meta("peak_ratio", peak.map(|p| p.1));
    Ok(main_table(scan, Some(st.grid.l())))
}

fn fig4(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let omegas = linspace_step(2.0, 3.2, 0.005);
    let mut scan = ScanResult::new("omega_l", omegas.clone());
    let mut resonances = Vec::new();
    for t21 in FIG4_T21 {
        let p = ModelParams {
            t1: st.params.t2 - t21,
            ..st.params
        };
        let grid = st.grid.for_params(&p);
        let occ = occupations(&p, &grid)?;
        let edge = band_resonance_edge(&p, &grid, &occ);
        let w_ex = solve_exciton_resonance(&p, &grid, &occ).ok().map(|r| r.omega_ex);
        let m = grid.m_index();
        let rows: Vec<Option<(f64, f64)>> = map_slice(&omegas, |&w| {
            if w >= edge {
                return None;
            }
            let s = ScreenedDetunings::compute(&p.with_laser(w), &grid, &occ).ok()?;
            Some((s.delta[grid.gamma_index()], m.map_or(f64::NAN, |m| s.delta[m])))
        });
        scan.push_column(
            format!("delta_gamma_t21_{t21:?}"),
            rows.iter().map(|r| r.map_or(f64::NAN, |v| v.0)).collect(),
        )?;
        scan.push_column(
            format!("delta_m_t21_{t21:?}"),
            rows.iter().map(|r| r.map_or(f64::NAN, |v| v.1)).collect(),
        )?;
        resonances.push(json!({ "t21": t21, "t1": p.t1, "omega_ex": w_ex, "continuum_edge": edge }));
    }
    scan.set_meta("resonances", resonances);
    Ok(main_table(scan, Some(st.grid.l())))
}

fn resonance(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_RESONANCE_GRID)?;
    let r = solve_exciton_resonance(&st.params, &st.grid, &st.occ)?;
    let one = |v: f64| vec![v];
    let mut scan = ScanResult::new("l", one(st.grid.l() as f64))
        .with_column("omega_ex", one(r.omega_ex))?
        .with_column("continuum_edge", one(r.continuum_edge))?
        .with_column("binding", one(r.binding))?
        .with_column("delta_ex", one(r.delta_ex))?
        .with_column("converged", one(if r.converged { 1.0 } else { 0.0 }))?
        .with_column("residual", one(r.residual))?
        .with_column("iterations", one(r.iterations as f64))?;
    scan.set_meta("report", r);
    Ok(main_table(scan, Some(st.grid.l())))
}

fn absorbance_scan(cfg: &Config) -> Result<Tables> {
    let st = setup(cfg, DEFAULT_SCAN_GRID)?;
    let w_res = optical_resonance(&st.params, &st.grid, &st.occ)?;
    let edge = band_resonance_edge(&st.params, &st.grid, &st.occ);
    let top = edge + st.grid.gaps().iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - st.grid.gaps().iter().copied().fold(f64::INFINITY, f64::min);
    let omegas = linspace_step(w_res.min(edge) - 0.2, top + 0.2, cfg.options.omega_step);
    let curve = absorbance(&st.params, &st.grid, &st.occ, &omegas, cfg.options.gamma)?;
    let peak = peak_location(&curve).ok();
    let mut scan = ScanResult::new("omega", curve.omegas.clone()).with_column("alpha", curve.alpha.clone())?;
    scan.set_meta("peak", peak);
    scan.set_meta("resonance", w_res);
    scan.set_meta("continuum_edge", edge);
    scan.set_meta("gamma", curve.gamma);
    scan.set_meta("scale", curve.scale);
    Ok(main_table(scan, Some(st.grid.l())))
}

fn oracle(cfg: &Config) -> Result<Tables> {
    cfg.params.validate()?;
    let report = run_oracle_suite(&cfg.params, 50, 20, cfg.options.seed)?;
    let axis = (0..report.instances.len()).map(|i| i as f64).collect();
    let col = |f: fn(&crate::ed_oracle::InstanceResult) -> f64| report.instances.iter().map(f).collect::<Vec<_>>();
    let mut scan = ScanResult::new("instance", axis)
        .with_column("n_k", col(|r| r.n_k as f64))?
        .with_column("oracle_stark", col(|r| r.oracle_stark))?
        .with_column("analytic_stark", col(|r| r.analytic_stark))?
        .with_column("stark_rel_err", col(|r| r.stark_rel_err))?
        .with_column("oracle_exciton", col(|r| r.oracle_exciton))?
        .with_column("solver_exciton", col(|r| r.solver_exciton))?
        .with_column("exciton_abs_err", col(|r| r.exciton_abs_err))?;
    scan.set_meta(
        "report",
        json!({
            "max_stark_rel_err": report.max_stark_rel_err,
            "max_exciton_abs_err": report.max_exciton_abs_err,
            "commutator": report.commutator,
            "leakage": report.leakage,
        }),
    );
    Ok(main_table(scan, None))
}
