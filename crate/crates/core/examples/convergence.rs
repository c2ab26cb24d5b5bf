//! Pilot convergence study for the quadratures.
//!
//! Run with `cargo run --release -p caloron-core --example convergence`.

use caloron_core::boundary::BoundaryData;
use caloron_core::chern_weil::{
    boundary_face_integral, chern_simons_consistency, integrate_ch_4d, integrate_degree_ball, GridSpec,
};
use caloron_core::field::{make_clutching_map, make_monopole_pullback, make_twisted_caloron};

fn main() -> Result<(), caloron_core::Error> {
    println!("degree ball");
    for &(n3, h) in &[(24usize, 1.0 / 48.0), (48, 1.0 / 96.0)] {
        for d in -2..=2 {
            let c = make_clutching_map(2, d, 0.45)?;
            let grid = GridSpec { n3, h_fd: h, ..Default::default() };
            let r = integrate_degree_ball(&c, &grid)?;
            println!("  n3={n3:3} d={d:2} numeric={:.6} err={:.2e} ({:.2}s)", r.numeric, r.abs_error(), r.seconds);
        }
    }

    let data = BoundaryData::from_pairs(1.0, &[(0.3, 1), (-0.3, -1)], 0)?;
    let base = make_monopole_pullback(&data, 0.6)?;
    let face = boundary_face_integral(&base, 0.8, &GridSpec::with_n3(64))?;
    println!("boundary face: {:.9} (closed {:.9})", face.numeric, face.closed_form);

    println!("4D ch");
    for &(n3, nz, h) in &[(24usize, 16usize, 1.0 / 48.0), (48, 32, 1.0 / 96.0)] {
        for d in [0i64, 1, -1] {
            let field = if d == 0 {
                base.clone()
            } else {
                let c = make_clutching_map(2, d, 0.45)?;
                make_twisted_caloron(&base, &c, base.default_profile())?
            };
            let grid = GridSpec { n3, nz, h_fd: h, ..Default::default() };
            let r = integrate_ch_4d(&field, &grid)?;
            println!(
                "  n3={n3:3} nz={nz:3} d={d:2} numeric={:.6} closed={:.6} rel={:.2e} ({:.2}s)",
                r.numeric,
                r.closed_form,
                r.abs_error() / r.closed_form.abs(),
                r.seconds
            );
        }
    }

    let c = make_clutching_map(2, 1, 0.45)?;
    let twisted = make_twisted_caloron(&base, &c, base.default_profile())?;
    let cs = chern_simons_consistency(&twisted, None, &GridSpec::default())?;
    println!("chern-simons: {:?} passed={}", cs.parts, cs.passed());
    Ok(())
}
