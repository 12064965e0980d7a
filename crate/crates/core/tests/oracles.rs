//! Checks against independent reference evaluations.

use floquet_exciton::cavity::enhancement_ratio;
use floquet_exciton::config::Config;
use floquet_exciton::floquet::{effective_band, effective_hopping, laser_below_exciton, laser_below_gap};
use floquet_exciton::lattice::{occupations, BzGrid, ModelParams};
use floquet_exciton::scan::linspace_step;
use floquet_exciton::scenario::compute_scenario;
use floquet_exciton::screening::solve_exciton_resonance;
use floquet_exciton::spectra::{absorbance, peak_location};

fn setup(p: &ModelParams, l: usize) -> (BzGrid, floquet_exciton::Occupation) {
    let g = BzGrid::new(l, p).unwrap();
    let occ = occupations(p, &g).unwrap();
    (g, occ)
}

#[test]
fn quarter_doping_fills_lowest_states() {
    let p = ModelParams {
        doping: 0.25,
        ..Default::default()
    };
    let (g, occ) = setup(&p, 16);
    assert_eq!(occ.filled(), 192);
    // Exhaustive sort of (energy, kx, ky) built from the closed-form band.
    let mut states: Vec<(f64, f64, f64, usize)> = g
        .momenta()
        .iter()
        .enumerate()
        .map(|(i, k)| (2.0 * p.t1 * (k.kx.cos() + k.ky.cos()), k.kx, k.ky, i))
        .collect();
    states.sort_by(|a, b| {
        let de = a.0 - b.0;
        if de.abs() > 1e-12 {
            a.0.total_cmp(&b.0)
        } else {
            a.1.total_cmp(&b.1).then(a.2.total_cmp(&b.2))
        }
    });
    let mut expect = vec![0.0; g.len()];
    for s in &states[..192] {
        expect[s.3] = 1.0;
    }
    assert_eq!(occ.n_k, expect);
}

#[test]
fn exciton_line_converges_with_grid() {
    let p = ModelParams::default();
    let w: Vec<f64> = [128, 256, 512, 1024]
        .iter()
        .map(|&l| {
            let (g, occ) = setup(&p, l);
            solve_exciton_resonance(&p, &g, &occ).unwrap().omega_ex
        })
        .collect();
    let diffs: Vec<f64> = w.windows(2).map(|x| (x[1] - x[0]).abs()).collect();
    for d in &diffs {
        assert!(*d < 1e-6, "{w:?}");
    }
    assert!(diffs.windows(2).all(|d| d[1] <= d[0] || d[1] < 1e-12), "{diffs:?}");
}

/// Literal O(N²) evaluation of the dressed-band change at one point.
fn naive_change(p: &ModelParams, g: &BzGrid, nu: f64, k: usize) -> f64 {
    let n = g.len() as f64;
    let detuning = |extra: f64| {
        let d = |i: usize| g.gaps()[i] - p.omega_l + extra - p.u11 * nu + 2.0 * p.u12 * nu;
        let mut acc = 0.0;
        for kp in 0..g.len() {
            acc += d(k) / d(kp);
        }
        d(k) - p.u12 / n * acc
    };
    let g2 = p.g_l * p.g_l;
    -g2 / detuning(0.0) - g2 / detuning(2.0 * p.omega_l)
}

#[test]
fn band_change_matches_reference_along_path() {
    let mut cfg = Config::default();
    cfg.options.grid = Some(64);
    let scan = compute_scenario("fig1a", &cfg).unwrap().remove(0).scan;
    let p = ModelParams::default();
    let (g, occ) = setup(&p, 64);
    let (ps, _) = laser_below_exciton(&p, &g, &occ, 0.03).unwrap();
    let path = g.high_symmetry_path().unwrap();
    let change = scan.column("change_screened").unwrap();
    let g2 = ps.g_l * ps.g_l;
    let max_ref = path.iter().map(|&(k, _)| naive_change(&ps, &g, 1.0, k).abs()).fold(0.0, f64::max);
    let max_ours = change.iter().map(|c| (c * g2).abs()).fold(0.0, f64::max);
    assert!(((max_ours - max_ref) / max_ref).abs() < 0.05);
    for (c, &(k, _)) in change.iter().zip(&path) {
        let r = naive_change(&ps, &g, 1.0, k);
        assert!(((c * g2 - r) / r).abs() < 1e-10);
    }
    // Screening broadens the dispersion of the change relative to U = 0.
    let un = scan.column("change_unscreened").unwrap();
    let spread = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max) - v.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(spread(change) > spread(un));
}

#[test]
fn unscreened_hopping_vanishes_at_closed_form_drive() {
    let p = ModelParams::default().unscreened();
    let (g, occ) = setup(&p, 256);
    let pu = laser_below_gap(&p, &g, 0.03);
    let t = |g_l: f64| effective_hopping(&effective_band(&ModelParams { g_l, ..pu }, &g, &occ).unwrap(), &g);
    // Bisection on the drive strength.
    let (mut lo, mut hi) = (0.005, 0.03);
    assert!(t(lo) > 0.0 && t(hi) < 0.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if t(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let closed = (2.0 * 0.05 * 0.03f64.powi(2) / 0.4).sqrt();
    assert!((lo - closed).abs() <= 0.001, "{lo} vs {closed}");

    let ps = ModelParams::default();
    let (ps, _) = laser_below_exciton(&ps, &g, &occ, 0.03).unwrap();
    let screened = effective_hopping(&effective_band(&ModelParams { g_l: 0.015, ..ps }, &g, &occ).unwrap(), &g);
    assert!(screened > 0.0, "{screened}");
}

#[test]
fn hopping_difference_is_second_order() {
    let base = ModelParams {
        g_l: 0.05,
        ..Default::default()
    };
    let t: Vec<f64> = [64, 128, 256]
        .iter()
        .map(|&l| {
            let (g, occ) = setup(&base, l);
            let p = laser_below_gap(&base, &g, 0.3);
            effective_hopping(&effective_band(&p, &g, &occ).unwrap(), &g)
        })
        .collect();
    let ratio = (t[0] - t[1]) / (t[1] - t[2]);
    assert!((ratio - 4.0).abs() < 0.3, "{t:?} ratio {ratio}");
}

#[test]
fn narrower_lines_keep_the_exciton_peak() {
    let p = ModelParams::default();
    let (g, occ) = setup(&p, 64);
    let omegas = linspace_step(2.5, 3.0, 0.002);
    let wide = absorbance(&p, &g, &occ, &omegas, 0.005).unwrap();
    let narrow = absorbance(&p, &g, &occ, &omegas, 0.0025).unwrap();
    assert!(narrow.scale > wide.scale);
    let (a, b) = (peak_location(&wide).unwrap(), peak_location(&narrow).unwrap());
    assert!((a - b).abs() <= 0.002 + 1e-12);
}

#[test]
fn flat_bands_show_no_enhancement() {
    let p = ModelParams {
        t1: -0.15,
        ..Default::default()
    };
    let g = BzGrid::new(64, &p).unwrap();
    let u = ModelParams::default().unscreened();
    for d in [0.05, 0.2, 0.5] {
        let r = enhancement_ratio(&p, &u, &g, 0, d).unwrap();
        assert!((r - 1.0).abs() < 1e-9, "{d}: {r}");
    }
}
