//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use caloron_core::boundary::{fredholm_check, spectral_gap, BoundaryData, Line};
use caloron_core::chern_weil::{
    chern_simons_consistency, default_sphere_radius, integrate_c1_sphere, integrate_degree_ball, GridSpec,
};
use caloron_core::eta::{eta_bar_lim, eta_mu_spectral};
use caloron_core::field::{
    decay_report, default_regular_value, make_clutching_map, make_monopole_pullback, make_twisted_caloron,
    preimage_degree,
};
use caloron_core::index::{charge_closed_form, index_total};
use caloron_core::nahm::rank_profile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn random_data(rng: &mut ChaCha8Rng, trivial: bool) -> BoundaryData {
    loop {
        let n = rng.gen_range(1..=6);
        let mu0 = rng.gen_range(0.3..3.0);
        let mut ks: Vec<i64> = (0..n - 1)
            .map(|_| if trivial { 0 } else { rng.gen_range(-5..=5) })
            .collect();
        let last = -ks.iter().sum::<i64>();
        if last.abs() > 5 {
            continue;
        }
        ks.push(last);
        let lines = ks
            .into_iter()
            .map(|k| Line::new(rng.gen_range(-4.0..4.0) * mu0, k))
            .collect();
        return BoundaryData::new(mu0, lines, rng.gen_range(-5..=5)).unwrap();
    }
}

/// A shift comfortably away from every lattice hit.
fn random_t(rng: &mut ChaCha8Rng, d: &BoundaryData) -> f64 {
    loop {
        let t = rng.gen_range(-3.0..3.0) * d.mu0;
        if spectral_gap(d, t) > 1e-6 * d.mu0 && spectral_gap(d, t + d.mu0) > 1e-6 * d.mu0 {
            return t;
        }
    }
}

fn suite(seed: u64, count: usize) -> Vec<(BoundaryData, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = random_data(&mut rng, false);
            let t = random_t(&mut rng, &d);
            (d, t)
        })
        .collect()
}

fn shifted(d: &BoundaryData, t: f64) -> BoundaryData {
    BoundaryData {
        lines: d.lines.iter().map(|l| Line::new(l.mu - t, l.k)).collect(),
        ..d.clone()
    }
}

fn corollary() -> Check {
    let mut worst = 0.0_f64;
    for (d, t) in suite(1, 1000) {
        let ind = index_total(&d, t).map_err(|e| e.to_string())?.total as f64;
        let eta = eta_bar_lim(&d, t).map_err(|e| e.to_string())?;
        let rhs = charge_closed_form(&shifted(&d, t)) - 0.5 * eta;
        worst = worst.max((ind - rhs).abs());
    }
    if worst <= 1e-9 {
        Ok(format!("max residual {worst:.2e} over 1000 sets"))
    } else {
        Err(format!("max residual {worst:.2e} > 1e-9"))
    }
}

fn excision_and_periodicity() -> Check {
    for (d, t) in suite(2, 1000) {
        let ind = |d: &BoundaryData, t: f64| index_total(d, t).unwrap().total;
        let (a, b) = (d.k0, -d.k0 + 3);
        let diff = ind(&d.with_k0(a), t) - ind(&d.with_k0(b), t);
        if diff != -(a - b) {
            return Err(format!("excision failed for {d:?} at t = {t}"));
        }
        if ind(&d, t) != ind(&d, t + d.mu0) {
            return Err(format!("periodicity failed for {d:?} at t = {t}"));
        }
    }
    Ok("exact over 1000 sets".into())
}

fn jump_rule() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..200 {
        let d = random_data(&mut rng, false);
        for l in &d.lines {
            let p = l.mu + rng.gen_range(-2..=2) as f64 * d.mu0;
            // lines congruent to p, and the distance to the nearest other one
            let mut expected = 0;
            let mut clearance = d.mu0;
            for m in &d.lines {
                let q = (m.mu - p) / d.mu0;
                let off = (q - q.round()).abs() * d.mu0;
                if off < 1e-9 * d.mu0 {
                    expected += m.k;
                } else {
                    clearance = clearance.min(off);
                }
            }
            let delta = (clearance / 4.0).min(1e-4 * d.mu0);
            if delta < 1e-7 * d.mu0 {
                continue;
            }
            let jump = index_total(&d, p + delta).unwrap().total - index_total(&d, p - delta).unwrap().total;
            if jump != expected {
                return Err(format!("jump {jump} != {expected} at t = {p} for {d:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} crossings"))
}

fn trivial_nahm() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k0 in 0..=3 {
        for _ in 0..25 {
            let d = random_data(&mut rng, true).with_k0(k0);
            let p = rank_profile(&d).map_err(|e| e.to_string())?;
            let constant = p.segments.iter().all(|s| s.rank == k0);
            let mj = p.mj_sequence.iter().all(|m| m.m == k0) && p.mj_ranks(&d).iter().all(|&m| m == k0);
            if !(constant && mj) {
                return Err(format!("k0 = {k0}: profile {:?}", p.segments));
            }
        }
    }
    Ok("rank ≡ k0 ≡ m_j for k0 = 0..3".into())
}

fn eta_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    let mut done = 0;
    while done < 100 {
        let mu0: f64 = rng.gen_range(0.3..3.0);
        let mu: f64 = rng.gen_range(-5.0..5.0) * mu0;
        let q = mu / mu0;
        if (q - q.round()).abs() < 1e-6 {
            continue;
        }
        let eps = mu - q.floor() * mu0;
        let e = eta_mu_spectral(mu, mu0, 10_000).map_err(|e| e.to_string())?;
        worst = worst.max((e.value - (1.0 - 2.0 * eps / mu0)).abs());
        done += 1;
    }
    if worst <= 1e-6 {
        Ok(format!("max error {worst:.2e}"))
    } else {
        Err(format!("max error {worst:.2e} > 1e-6"))
    }
}

fn degree_quadrature() -> Check {
    let grid = GridSpec::with_n3(48);
    let mut worst = 0.0_f64;
    for d in -2..=2 {
        let c = make_clutching_map(2, d, 0.45).map_err(|e| e.to_string())?;
        let r = integrate_degree_ball(&c, &grid).map_err(|e| e.to_string())?;
        let oracle = preimage_degree(&c, default_regular_value()).map_err(|e| e.to_string())?;
        if oracle.degree != d {
            return Err(format!("preimage oracle gives {} for d = {d}", oracle.degree));
        }
        if (r.numeric - d as f64).abs() > 0.05 || r.rounded != Some(d) {
            return Err(format!("d = {d}: quadrature {}", r.numeric));
        }
        worst = worst.max(r.abs_error());
    }
    Ok(format!("max error {worst:.2e}, oracle agrees"))
}

fn sphere_chern() -> Check {
    let grid = GridSpec::with_n3(64);
    let mut worst = 0.0_f64;
    for k in -3..=3 {
        let d = BoundaryData::from_pairs(1.0, &[(0.3, k), (-0.3, -k)], 0).map_err(|e| e.to_string())?;
        let f = make_monopole_pullback(&d, 0.6).map_err(|e| e.to_string())?;
        let r = integrate_c1_sphere(&f, 0, default_sphere_radius(&f), &grid).map_err(|e| e.to_string())?;
        if (r.numeric - k as f64).abs() > 1e-6 {
            return Err(format!("k = {k}: {}", r.numeric));
        }
        worst = worst.max(r.abs_error());
    }
    Ok(format!("max error {worst:.2e}"))
}

fn grand_chern_weil() -> Check {
    let data = BoundaryData::from_pairs(1.0, &[(0.3, 1), (-0.3, -1)], 0).map_err(|e| e.to_string())?;
    let base = make_monopole_pullback(&data, 0.6).map_err(|e| e.to_string())?;
    let grid = GridSpec::default();
    let mut summary = Vec::new();
    for d in [0i64, 1, -1] {
        let field = if d == 0 {
            base.clone()
        } else {
            let c = make_clutching_map(2, d, 0.45).map_err(|e| e.to_string())?;
            make_twisted_caloron(&base, &c, base.default_profile()).map_err(|e| e.to_string())?
        };
        let cs = chern_simons_consistency(&field, None, &grid).map_err(|e| e.to_string())?;
        let bulk = cs.parts["ch_4d"];
        let closed = charge_closed_form(&data.with_k0(-d));
        let rel = (bulk - closed).abs() / closed.abs();
        if rel > 0.01 {
            return Err(format!("d = {d}: 4D {bulk} vs {closed}"));
        }
        if !cs.passed() {
            return Err(format!("d = {d}: Stokes split {:?}", cs.parts));
        }
        summary.push(format!("d={d}: {bulk:.5} (rel {rel:.1e})"));
    }
    Ok(summary.join(", "))
}

fn fredholm_boundary() -> Check {
    let d = BoundaryData::from_pairs(1.0, &[(0.3, 2), (-0.3, -1), (0.05, -1)], 0).map_err(|e| e.to_string())?;
    let distances: Vec<f64> = (0..10).map(|i| 1e-1 * 10f64.powf(-7.0 * i as f64 / 9.0)).collect();
    for l in &d.lines {
        for n in -2..=2 {
            let p = l.mu + n as f64 * d.mu0;
            if fredholm_check(&d, p) || spectral_gap(&d, p) != 0.0 {
                return Err(format!("t = {p} is a lattice hit"));
            }
            for &delta in &distances {
                for t in [p - delta, p + delta] {
                    if !fredholm_check(&d, t) {
                        return Err(format!("t = {t} should be Fredholm"));
                    }
                }
                let slope = spectral_gap(&d, p + delta) / delta;
                if (slope - 1.0).abs() > 1e-6 {
                    return Err(format!("gap slope {slope} at distance {delta}"));
                }
            }
        }
    }
    Ok("flips at every hit, gap slope 1 at 10 distances".into())
}

fn field_contracts() -> Check {
    let data = BoundaryData::from_pairs(1.0, &[(0.3, 1), (-0.3, -1)], 0).map_err(|e| e.to_string())?;
    let base = make_monopole_pullback(&data, 0.6).map_err(|e| e.to_string())?;
    let mut worst = 0.0_f64;
    for deg in [1, -1, 2] {
        let c = make_clutching_map(2, deg, 0.45).map_err(|e| e.to_string())?;
        let f = make_twisted_caloron(&base, &c, base.default_profile()).map_err(|e| e.to_string())?;
        for i in 0..20 {
            for j in 0..20 {
                for k in 0..20 {
                    let x = [i, j, k].map(|m| -0.9 + 1.8 * (m as f64 + 0.5) / 20.0);
                    let (a, phi) = f.clutching_residual(x);
                    worst = worst.max(a).max(phi);
                }
            }
        }
    }
    if worst > 1e-12 {
        return Err(format!("clutching residual {worst:.2e}"));
    }
    let radii = [0.8, 1.2, 2.4, 5.0, 10.0];
    let report = decay_report(&base, &radii).map_err(|e| e.to_string())?;
    let c = make_clutching_map(2, 1, 0.45).map_err(|e| e.to_string())?;
    let twisted = make_twisted_caloron(&base, &c, base.default_profile()).map_err(|e| e.to_string())?;
    if decay_report(&twisted, &radii).map_err(|e| e.to_string())? != report {
        return Err("twisted decay report differs from the base".into());
    }
    let spread = report.r_norm_a_spread();
    let defect = report.r2_higgs_defect.iter().cloned().fold(0.0, f64::max);
    if spread > 1e-9 || defect != 0.0 {
        return Err(format!("decay spread {spread:.2e}, defect {defect:.2e}"));
    }
    Ok(format!("residual {worst:.1e}, r|A| spread {spread:.1e}, defect 0"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("corollary identity", corollary, Duration::from_secs(1)),
        ("excision and periodicity", excision_and_periodicity, Duration::from_secs(1)),
        ("jump rule", jump_rule, Duration::from_secs(1)),
        ("trivial-eigenbundle ranks", trivial_nahm, Duration::from_secs(1)),
        ("eta spectral oracle", eta_oracle, Duration::from_secs(5)),
        ("degree quadrature", degree_quadrature, Duration::from_secs(30)),
        ("sphere Chern numbers", sphere_chern, Duration::from_secs(5)),
        ("4D Chern-Weil and Stokes split", grand_chern_weil, Duration::from_secs(600)),
        ("Fredholm boundary", fredholm_boundary, Duration::from_secs(1)),
        ("field-builder contracts", field_contracts, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(s) if elapsed <= *budget => (true, s),
            Ok(s) => (false, format!("{s}; over the {budget:?} budget")),
            Err(s) => (false, s),
        };
        failed += usize::from(!ok);
        println!(
            "[{}] {:2} {name}: {detail} ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
