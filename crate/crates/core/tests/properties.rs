use caloron_core::boundary::{
    fredholm_check, indicial_invertible, reduce, spectral_gap, BoundaryData, Line,
};
use caloron_core::eta::{corollary_identity, eta_mu_closed, eta_mu_spectral};
use caloron_core::field::{
    curvature_at, decay_report, make_clutching_map, make_monopole_pullback, make_twisted_caloron,
    preimage_degree, default_regular_value, Gauge, Stencil,
};
use caloron_core::index::index_total;
use caloron_core::linalg::{su2_exp, CMat, C64};
use caloron_core::nahm::{jump_annotations, rank_profile};
use proptest::prelude::*;

/// Validated boundary data with `n ≤ 6`, `|k| ≤ 5`, `|k0| ≤ 5`.
fn boundary(trivial: bool) -> impl Strategy<Value = BoundaryData> {
    (1usize..=6, 0.3f64..3.0, -5i64..=5)
        .prop_flat_map(move |(n, mu0, k0)| {
            let k = if trivial { 0i64..=0 } else { -5i64..=5 };
            (
                Just(mu0),
                prop::collection::vec(-4.0f64..4.0, n),
                prop::collection::vec(k, n - 1),
                Just(k0),
            )
        })
        .prop_filter_map("last Chern number out of range", |(mu0, mus, mut ks, k0)| {
            let last = -ks.iter().sum::<i64>();
            (last.abs() <= 5).then(|| {
                ks.push(last);
                let lines = mus.iter().zip(ks).map(|(&m, k)| Line::new(m * mu0, k)).collect();
                BoundaryData::new(mu0, lines, k0).unwrap()
            })
        })
}

/// Boundary data with a shift at least `1e-6·mu0` away from every lattice hit.
fn fredholm_pair() -> impl Strategy<Value = (BoundaryData, f64)> {
    (boundary(false), -3.0f64..3.0).prop_filter_map("too close to a lattice hit", |(d, s)| {
        let t = s * d.mu0;
        (spectral_gap(&d, t) > 1e-6 * d.mu0 && spectral_gap(&d, t + d.mu0) > 1e-6 * d.mu0).then_some((d, t))
    })
}

fn off_lattice() -> impl Strategy<Value = (f64, f64)> {
    (0.3f64..3.0, -5.0f64..5.0).prop_filter_map("on the lattice", |(mu0, q)| {
        ((q - q.round()).abs() > 1e-6).then_some((q * mu0, mu0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fredholm_iff_positive_gap(d in boundary(false), s in -3.0f64..3.0) {
        let t = s * d.mu0;
        prop_assert_eq!(fredholm_check(&d, t), spectral_gap(&d, t) > 0.0);
        // hitting a line exactly is never Fredholm
        prop_assert!(!fredholm_check(&d, d.lines[0].mu));
    }

    #[test]
    fn gap_is_periodic((d, t) in fredholm_pair()) {
        let a = spectral_gap(&d, t);
        let b = spectral_gap(&d, t + d.mu0);
        prop_assert!((a - b).abs() <= 1e-12 * d.mu0.max(t.abs()), "{a} vs {b}");
    }

    #[test]
    fn reduce_reconstructs((mu, mu0) in off_lattice()) {
        let r = reduce(mu, mu0).unwrap();
        prop_assert!(r.eps > 0.0 && r.eps < mu0);
        let back = r.reconstruct(mu0);
        prop_assert!((back - mu).abs() <= 4.0 * f64::EPSILON * mu.abs().max(mu0));
    }

    #[test]
    fn indicial_operator(d in boundary(false), s in -3.0f64..3.0, e in prop::array::uniform3(-1.0f64..1.0)) {
        let t = s * d.mu0;
        if e != [0.0; 3] {
            prop_assert!(indicial_invertible(&d, e[0], e[1], e[2], t));
        }
        prop_assert_eq!(indicial_invertible(&d, 0.0, 0.0, 0.0, t), fredholm_check(&d, t));
    }

    #[test]
    fn index_periodicity_and_excision((d, t) in fredholm_pair(), a in -5i64..=5, b in -5i64..=5) {
        let ind = |d: &BoundaryData, t: f64| index_total(d, t).unwrap().total;
        prop_assert_eq!(ind(&d, t), ind(&d, t + d.mu0));
        prop_assert_eq!(ind(&d.with_k0(a), t) - ind(&d.with_k0(b), t), -(a - b));
    }

    #[test]
    fn mode_terms_have_finite_support((d, t) in fredholm_pair()) {
        let b = index_total(&d, t).unwrap();
        let reach = d.lines.iter().map(|l| (l.mu - t).abs()).fold(0.0, f64::max) / d.mu0 + 1.0;
        for &k in b.mode_terms.keys() {
            prop_assert!((k as f64).abs() <= reach);
        }
    }

    #[test]
    fn trivial_eigenbundles_give_minus_k0(d in boundary(true), s in -3.0f64..3.0) {
        let t = s * d.mu0;
        prop_assume!(fredholm_check(&d, t));
        prop_assert_eq!(index_total(&d, t).unwrap().total, -d.k0);
    }

    #[test]
    fn index_jumps_by_congruent_charges(d in boundary(false), pick in 0usize..6, n in -2i64..=2) {
        let l = &d.lines[pick % d.lines.len()];
        let p = l.mu + n as f64 * d.mu0;
        let mut expected = 0;
        let mut clearance = d.mu0;
        for m in &d.lines {
            let q = (m.mu - p) / d.mu0;
            let off = (q - q.round()).abs() * d.mu0;
            if off < 1e-9 * d.mu0 { expected += m.k } else { clearance = clearance.min(off) }
        }
        let delta = (clearance / 4.0).min(1e-4 * d.mu0);
        prop_assume!(delta > 1e-7 * d.mu0);
        let up = index_total(&d, p + delta).unwrap().total - index_total(&d, p - delta).unwrap().total;
        prop_assert_eq!(up, expected);
    }

    #[test]
    fn eta_range_periodicity_oddness((mu, mu0) in off_lattice()) {
        let e = eta_mu_closed(mu, mu0).unwrap();
        prop_assert!(e > -1.0 && e < 1.0);
        prop_assert!((eta_mu_closed(mu + mu0, mu0).unwrap() - e).abs() < 1e-12);
        prop_assert!((eta_mu_closed(-mu, mu0).unwrap() + e).abs() < 1e-12);
    }

    #[test]
    fn eta_spectral_matches_closed((mu, mu0) in off_lattice()) {
        let e = eta_mu_spectral(mu, mu0, 10_000).unwrap();
        prop_assert!((e.value - eta_mu_closed(mu, mu0).unwrap()).abs() <= 1e-6);
    }

    #[test]
    fn corollary_residual((d, t) in fredholm_pair()) {
        let r = corollary_identity(&d, t).unwrap();
        prop_assert!(r.residual.abs() <= 1e-9, "{r:?}");
        prop_assert!(r.is_consistent());
    }

    #[test]
    fn profile_jumps_and_sum_rule(d in boundary(false)) {
        let p = rank_profile(&d).unwrap();
        let segs = &p.segments;
        let jumps = jump_annotations(&d);
        prop_assert_eq!(segs.len(), jumps.len());
        // crossing each jump point upward, the index changes by its annotation
        for (i, jp) in jumps.iter().enumerate() {
            let left = if i == 0 { segs.last().unwrap() } else { &segs[i - 1] };
            prop_assert_eq!(segs[i].index - left.index, jp.jump);
        }
        prop_assert_eq!(jumps.iter().map(|j| j.jump).sum::<i64>(), 0);
        // one extra period repeats the values
        let ext = p.extend(segs[0].t_lo, segs[0].t_lo + 2.0 * d.mu0);
        for (a, b) in ext.iter().zip(ext.iter().skip(segs.len())) {
            prop_assert_eq!(a.index, b.index);
        }
    }

    #[test]
    fn trivial_profile_is_constant(d in boundary(true), k0 in 0i64..=3) {
        let d = d.with_k0(k0);
        let p = rank_profile(&d).unwrap();
        prop_assert!(p.segments.iter().all(|s| s.rank == k0));
        prop_assert!(p.mj_sequence.iter().all(|m| m.m == k0));
    }
}

fn random_unitary(n: usize, angles: &[f64]) -> CMat {
    let mut u = CMat::from_diag(&(0..n).map(|j| C64::from_polar(1.0, angles[j])).collect::<Vec<_>>());
    for j in 0..n - 1 {
        let axis = [angles[j].sin(), angles[j].cos(), 0.3];
        let norm = (axis.iter().map(|v| v * v).sum::<f64>()).sqrt();
        let block = su2_exp(angles[n + j], axis.map(|v| v / norm));
        u = &u * &CMat::embed_2x2(n, j, j + 1, &block);
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chern_density_is_gauge_invariant(
        angles in prop::collection::vec(-3.0f64..3.0, 6),
        x in prop::array::uniform3(-0.55f64..0.55),
        z in 0.0f64..6.28,
        deg in -2i64..=2,
    ) {
        let d = BoundaryData::from_pairs(1.0, &[(0.3, 1), (-0.2, 2), (-0.1, -3)], 0).unwrap();
        let base = make_monopole_pullback(&d, 0.6).unwrap();
        let c = make_clutching_map(3, deg, 0.45).unwrap();
        let f = make_twisted_caloron(&base, &c, base.default_profile()).unwrap();
        let u = random_unitary(3, &angles);
        prop_assert!(u.unitarity_defect() < 1e-12);
        let p = [z, x[0], x[1], x[2]];
        let plain = curvature_at(&f, p, 1e-3, Gauge::Global).unwrap();
        let conj = f.conjugated(&u).curvature(p, 1e-3, Stencil::default());
        let scale = plain.max_abs().max(1.0).powi(2);
        prop_assert!((plain.chern_density() - conj.chern_density()).abs() <= 1e-10 * scale);
        // rounding in A is amplified by 1/h through the difference quotients
        let rounding = 64.0 * f64::EPSILON / 1e-3 * f.potential(z, x).comps.iter().map(|m| m.max_abs()).fold(1.0, f64::max);
        prop_assert!(plain.max_skew_defect() < rounding * plain.max_abs().max(1.0));
    }

    #[test]
    fn clutching_maps_are_unitary_and_twists_close_up(
        x in prop::array::uniform3(-0.9f64..0.9),
        z in 0.0f64..6.28,
        deg in -3i64..=3,
    ) {
        let d = BoundaryData::from_pairs(1.0, &[(0.3, 1), (-0.3, -1)], 0).unwrap();
        let base = make_monopole_pullback(&d, 0.6).unwrap();
        let c = make_clutching_map(2, deg, 0.45).unwrap();
        prop_assert!(c.eval(x).unitarity_defect() < 1e-12);
        let f = make_twisted_caloron(&base, &c, base.default_profile()).unwrap();
        prop_assert!(f.potential(z, x).max_skew_defect() < 1e-12);
        let (a, phi) = f.clutching_residual(x);
        prop_assert!(a <= 1e-12 && phi <= 1e-12);
    }

    #[test]
    fn product_region_is_admissible(ks in prop::collection::vec(-3i64..=3, 1..4), r in 0.7f64..20.0) {
        let mut pairs: Vec<(f64, i64)> = ks.iter().enumerate().map(|(j, &k)| (0.1 + 0.2 * j as f64, k)).collect();
        pairs.push((-0.45, -ks.iter().sum::<i64>()));
        let d = BoundaryData::from_pairs(1.0, &pairs, 0).unwrap();
        let f = make_monopole_pullback(&d, 0.6).unwrap();
        let rep = decay_report(&f, &[r, 2.0 * r]).unwrap();
        prop_assert!(rep.r2_higgs_defect.iter().all(|&v| v == 0.0));
        prop_assert!(rep.r_norm_a_spread() <= 1e-9 * rep.r_norm_a[0].max(1.0));
    }
}

#[test]
fn preimage_oracle_recovers_degree() {
    for deg in -2..=2 {
        let c = make_clutching_map(2, deg, 0.45).unwrap();
        assert_eq!(preimage_degree(&c, default_regular_value()).unwrap().degree, deg);
    }
}
