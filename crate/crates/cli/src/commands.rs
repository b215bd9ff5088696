use std::thread;

use rydberg1d_core::fit::{asymptotic_shift, fit_least_squares, fit_two_point};
use rydberg1d_core::isospectral::IsospectralFamily;
use rydberg1d_core::matelem::{dipole_ground, expectation_x, moment, MatrixElementSpec};
use rydberg1d_core::model::{
    constants, derive_scales, energy, wavefunction as psi, DefectModel, PhysicalSetup, StateSpec,
};
use rydberg1d_core::oracle::{integrate, rayleigh_residual, solve_bound_states, GridSpec};
use serde_json::Value;

use crate::error::CliError;
use crate::report::{fmt_num, num, Check, Report};
use crate::transitions::read_transitions;
use crate::{
    ConstantsArgs, FitArgs, MatrixElementArgs, Output, SpectrumArgs, VerifyArgs, WavefunctionArgs,
};

fn json_output(report: &Report) -> Result<Output, CliError> {
    let mut text = report.to_json()?;
    text.push('\n');
    Ok(Output {
        text,
        failed_checks: report.failures(),
    })
}

fn csv_output(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> Result<Output, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.into_iter().map(fmt_num))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Output {
        text: String::from_utf8(bytes).expect("csv output is UTF-8"),
        failed_checks: 0,
    })
}

pub fn constants(args: &ConstantsArgs) -> Result<Output, CliError> {
    let setup = PhysicalSetup::with_constants(
        args.epsilon,
        args.rydberg_ev.unwrap_or(constants::RYDBERG_EV),
        args.bohr_angstrom
            .unwrap_or(constants::BOHR_RADIUS_ANGSTROM),
        constants::GHZ_PER_MEV,
    )?;
    let s = derive_scales(&setup);
    let mut r = Report::default();
    r.input("epsilon", num(setup.epsilon()))
        .input("rydberg_ev", num(setup.rydberg_inf_ev()))
        .input("bohr_angstrom", num(setup.bohr_radius_angstrom()))
        .input("ghz_per_mev", num(setup.ghz_per_mev()));
    r.result("coupling_z", num(s.coupling))
        .result("e0_mev", num(s.e0_mev))
        .result("e0_ghz", num(s.e0_ghz))
        .result("x0_angstrom", num(s.x0_angstrom))
        .result("b0_angstrom", num(s.b0_angstrom));
    json_output(&r)
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Output, CliError> {
    let m = DefectModel::new(args.e0_ghz, args.delta, 1.0)?;
    let ground = m.level(1);
    csv_output(
        &["n", "n_star", "energy_ghz", "delta_to_ground_ghz"],
        (1..=args.nmax).map(|n| vec![f64::from(n), m.n_star(n), m.level(n), m.level(n) - ground]),
    )
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<Output, CliError> {
    if !(args.xmax_x0 > 0.0 && args.xmax_x0.is_finite()) {
        return Err(CliError::Usage(format!(
            "--xmax-x0 must be positive, got {}",
            args.xmax_x0
        )));
    }
    let model = DefectModel::reduced(args.delta)?;
    let last = f64::from(args.points - 1);
    let nodes: Vec<f64> = (0..args.points)
        .map(|i| args.xmax_x0 * f64::from(i) / last)
        .collect();
    let interior = &nodes[1..];

    let mut values = vec![0.0];
    if args.isospectral {
        let family = IsospectralFamily::new(args.delta, args.bigr)?;
        if args.n == 1 {
            values.extend(family.ground_samples(interior)?);
        } else {
            values.extend(family.chi_samples(args.n, interior)?);
        }
    } else {
        let state = StateSpec::new(args.n, model)?;
        for &u in interior {
            values.push(psi(&state, u)?);
        }
    }

    let (header, x0) = match (args.angstrom, args.epsilon) {
        (true, Some(eps)) => (
            "x_angstrom",
            derive_scales(&PhysicalSetup::new(eps)?).x0_angstrom,
        ),
        _ => ("x_over_x0", 1.0),
    };
    let amp = 1.0 / x0.sqrt();
    csv_output(
        &[header, "value"],
        nodes
            .iter()
            .zip(values)
            .map(|(&u, v)| vec![u * x0, v * amp]),
    )
}

pub fn fit(args: &FitArgs) -> Result<Output, CliError> {
    let set = read_transitions(&args.input)?;
    let result = if args.least_squares {
        fit_least_squares(&set, None)?
    } else {
        fit_two_point(&set)?
    };
    let mut r = Report::default();
    r.input("input", args.input.display().to_string())
        .input(
            "method",
            if args.least_squares {
                "least_squares"
            } else {
                "two_point"
            },
        )
        .input("records", set.records().len());
    r.result("e0_ghz", num(result.e0))
        .result("delta", num(result.delta))
        .result(
            "residuals_ghz",
            Value::Array(result.residuals.iter().map(|&x| num(x)).collect()),
        )
        .result("rms_residual_ghz", num(result.rms_residual()))
        .result("shift_infinity_ghz", num(asymptotic_shift(&result)))
        .result("iterations", result.iterations);
    json_output(&r)
}

pub fn matrix_element(args: &MatrixElementArgs) -> Result<Output, CliError> {
    let m = DefectModel::new(1.0, args.delta, args.x0)?;
    let spec = MatrixElementSpec::new(args.bra, args.ket, args.power, m)?;
    let value = moment(&spec)?;
    let mut r = Report::default();
    r.input("bra", args.bra)
        .input("ket", args.ket)
        .input("power", args.power)
        .input("delta", num(args.delta))
        .input("x0", num(args.x0));
    r.result("value", num(value))
        .result("magnitude", num(value.abs()));
    if args.power == 1 && args.bra == args.ket {
        let closed = expectation_x(&StateSpec::new(args.bra, m)?);
        r.check_rel("expectation_closed_form", closed, value, 1e-10);
    }
    if args.power == 1 && (args.bra == 1 || args.ket == 1) {
        let closed = dipole_ground(args.bra.max(args.ket), &m)?;
        r.check_rel("ground_dipole_closed_form", closed, value, 1e-10);
    }
    json_output(&r)
}

fn half_line(f: impl Fn(f64) -> f64) -> Result<f64, CliError> {
    Ok(integrate(
        |u| if u > 0.0 { f(u) } else { 0.0 },
        0.0,
        f64::INFINITY,
        1e-12,
    )?)
}

fn spectrum_checks(delta: f64, nmax: u32) -> Result<Vec<Check>, CliError> {
    let mut r = Report::default();
    let grid = GridSpec::standard(nmax, delta)?;
    let states = solve_bound_states(&grid, delta, None, nmax as usize)?;
    for (n, st) in (1..).zip(&states) {
        let s = f64::from(n) - delta;
        r.check_rel(
            format!("eigenvalue_n{n}"),
            -0.25 / (s * s),
            st.eigenvalue,
            1e-4,
        );
    }
    Ok(r.checks)
}

fn quadrature_checks(delta: f64, nmax: u32) -> Result<Vec<Check>, CliError> {
    let mut r = Report::default();
    let m = DefectModel::reduced(delta)?;
    let states: Vec<StateSpec> = (1..=nmax)
        .map(|n| StateSpec::new(n, m))
        .collect::<Result<_, _>>()?;
    for (j, a) in (1..).zip(&states) {
        for (k, b) in (1..).zip(&states).skip(j as usize - 1) {
            let s = half_line(|u| psi(a, u).unwrap_or(f64::NAN) * psi(b, u).unwrap_or(f64::NAN))?;
            let want = if j == k { 1.0 } else { 0.0 };
            r.check_abs(format!("overlap_{j}_{k}"), want, s, 1e-8);
        }
    }
    let ground = &states[0];
    for (n, s) in (1..).zip(&states) {
        let xx = half_line(|u| u * psi(s, u).unwrap_or(f64::NAN).powi(2))?;
        r.check_rel(format!("expectation_x_n{n}"), xx, expectation_x(s), 1e-8);
        let x1 =
            half_line(|u| u * psi(ground, u).unwrap_or(f64::NAN) * psi(s, u).unwrap_or(f64::NAN))?;
        r.check_rel(format!("dipole_1_{n}"), x1, dipole_ground(n, &m)?, 1e-8);
    }
    if delta == 0.0 {
        for (n, s) in (1..).zip(&states) {
            let inv = half_line(|u| psi(s, u).unwrap_or(f64::NAN).powi(2) / u)?;
            r.check_abs(format!("virial_n{n}"), -2.0 * energy(s), inv, 1e-10);
        }
    }
    Ok(r.checks)
}

fn isospectral_checks(family: &IsospectralFamily, nmax: u32) -> Result<Vec<Check>, CliError> {
    let mut r = Report::default();
    let delta = family.delta();
    let v2 = |u: f64| family.v2(u).unwrap_or(f64::NAN);
    let grid = GridSpec::standard(nmax.max(2), delta)?;
    let count = nmax as usize;
    let with = solve_bound_states(&grid, delta, Some(&v2), count)?;
    let without = solve_bound_states(&grid, delta, None, count)?;
    for (n, (a, b)) in (1..).zip(with.iter().zip(&without)) {
        r.check_rel(
            format!("isospectral_eigenvalue_n{n}"),
            b.eigenvalue,
            a.eigenvalue,
            1e-4,
        );
    }
    let nodes = grid.nodes();
    let ground = family.ground_samples(&nodes)?;
    let (q, res) = rayleigh_residual(&grid, delta, Some(&v2), &ground)?;
    let s = family.one_star();
    r.check_abs("isospectral_quotient_n1", -0.25 / (s * s), q, 1e-4);
    r.check_below("isospectral_residual_n1", res, 1e-3);
    for n in 2..=nmax {
        let samples = family.chi_samples(n, &nodes)?;
        let (q, res) = rayleigh_residual(&grid, delta, Some(&v2), &samples)?;
        let s = f64::from(n) - delta;
        r.check_rel(
            format!("isospectral_quotient_n{n}"),
            -0.25 / (s * s),
            q,
            1e-4,
        );
        r.check_below(format!("isospectral_residual_n{n}"), res, 1e-3);
    }
    Ok(r.checks)
}

pub fn verify(args: &VerifyArgs) -> Result<Output, CliError> {
    let family = IsospectralFamily::new(args.delta, args.bigr)?;
    let (spec, quad, iso) = thread::scope(|scope| {
        let spec = scope.spawn(|| spectrum_checks(args.delta, args.nmax));
        let quad = scope.spawn(|| quadrature_checks(args.delta, args.nmax));
        let iso = isospectral_checks(&family, args.nmax);
        (
            spec.join().expect("spectrum checks panicked"),
            quad.join().expect("quadrature checks panicked"),
            iso,
        )
    });
    let mut r = Report::default();
    r.input("delta", num(args.delta))
        .input("nmax", args.nmax)
        .input("bigr", num(args.bigr));
    r.result("gamma", num(family.gamma()));
    r.checks.extend(spec?);
    r.checks.extend(quad?);
    r.checks.extend(iso?);
    let (passed, total) = (r.checks.iter().filter(|c| c.pass).count(), r.checks.len());
    r.result("checks_passed", passed)
        .result("checks_total", total);
    json_output(&r)
}
