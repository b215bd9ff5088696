use proptest::prelude::*;
use rydberg1d_core::model::{wavefunction, DefectModel, StateSpec};
use rydberg1d_core::oracle::{integrate, rayleigh_residual, solve_bound_states, GridSpec};

fn exact(n: usize, delta: f64) -> f64 {
    let s = n as f64 - delta;
    -0.25 / (s * s)
}

#[test]
fn eigenvalues_match_defect_levels() {
    for &d in &[0.0, 0.0237, 0.1] {
        let grid = GridSpec::standard(5, d).unwrap();
        let states = solve_bound_states(&grid, d, None, 5).unwrap();
        for (k, st) in states.iter().enumerate() {
            let want = exact(k + 1, d);
            let rel = ((st.eigenvalue - want) / want).abs();
            assert!(rel < 1e-4, "δ={d} n={}: {} vs {want}", k + 1, st.eigenvalue);
            assert!(st.eigenvalue < 0.0);
            assert!(st.residual < 1e-6);
        }
    }
}

#[test]
fn eigenvectors_have_k_minus_one_nodes() {
    let d = 0.0237;
    let grid = GridSpec::standard(6, d).unwrap();
    let states = solve_bound_states(&grid, d, None, 6).unwrap();
    for (k, st) in states.iter().enumerate() {
        let peak = st.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let significant: Vec<f64> = st
            .samples
            .iter()
            .copied()
            .filter(|v| v.abs() > 1e-9 * peak)
            .collect();
        let changes = significant
            .windows(2)
            .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
            .count();
        assert_eq!(changes, k, "state {}", k + 1);
        // ψ ~ u^{1-δ} next to the wall at the origin.
        assert!(st.samples.first().unwrap().abs() < 5.0 * grid.step() * peak);
        assert!(st.samples.last().unwrap().abs() < 1e-9 * peak);
    }
}

#[test]
fn eigenvectors_match_analytic_states() {
    let d = 0.0237;
    let grid = GridSpec::standard(3, d).unwrap();
    let states = solve_bound_states(&grid, d, None, 3).unwrap();
    let m = DefectModel::reduced(d).unwrap();
    let h = grid.step();
    for (k, st) in states.iter().enumerate() {
        let s = StateSpec::new(k as u32 + 1, m).unwrap();
        let dot: f64 = grid
            .nodes()
            .iter()
            .zip(&st.samples)
            .map(|(&u, &v)| wavefunction(&s, u).unwrap() * v * h)
            .sum();
        assert!((dot.abs() - 1.0).abs() < 1e-6, "n={}: {dot}", k + 1);
    }
}

#[test]
fn analytic_states_are_discrete_eigenvectors() {
    for &d in &[0.0, 0.0237, 0.1] {
        let grid = GridSpec::standard(4, d).unwrap();
        let m = DefectModel::reduced(d).unwrap();
        for n in 1..=4 {
            let s = StateSpec::new(n, m).unwrap();
            let v: Vec<f64> = grid
                .nodes()
                .iter()
                .map(|&u| wavefunction(&s, u).unwrap())
                .collect();
            let (q, r) = rayleigh_residual(&grid, d, None, &v).unwrap();
            let want = exact(n as usize, d);
            assert!(((q - want) / want).abs() < 1e-4, "δ={d} n={n}");
            assert!(r < 1e-3);
        }
    }
}

#[test]
fn noise_is_far_from_eigenvector() {
    use rand::{Rng, SeedableRng};
    let grid = GridSpec::standard(1, 0.0).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let v: Vec<f64> = (0..grid.points())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let (_, r) = rayleigh_residual(&grid, 0.0, None, &v).unwrap();
    // Relative to the largest matrix entry, white noise is O(1).
    let scale = 4.0 / (grid.step() * grid.step());
    assert!(r > 0.1 * scale);
}

fn halving_factor(n: usize, delta: f64, points: usize) -> f64 {
    let length = 20.0 * (n * n) as f64 + 40.0;
    let coarse = GridSpec::from_origin(length, points).unwrap();
    let fine = GridSpec::from_origin(length, 2 * points + 1).unwrap();
    let want = exact(n, delta);
    let ec = solve_bound_states(&coarse, delta, None, n).unwrap()[n - 1].mesh_eigenvalue - want;
    let ef = solve_bound_states(&fine, delta, None, n).unwrap()[n - 1].mesh_eigenvalue - want;
    ec / ef
}

#[test]
fn second_order_convergence() {
    for &d in &[0.0, 0.0237, 0.1] {
        for n in 1..=3 {
            let f = halving_factor(n, d, 3999);
            assert!((3.5..4.5).contains(&f), "δ={d} n={n}: factor {f}");
        }
    }
}

#[test]
fn coarse_grid_is_rejected() {
    let grid = GridSpec::from_origin(400.0, 1000).unwrap();
    assert!(solve_bound_states(&grid, 0.0, None, 5).is_err());
    let short = GridSpec::from_origin(20.0, 2000).unwrap();
    assert!(solve_bound_states(&short, 0.0, None, 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quadrature_exact_on_gamma_integrands(k in 0i32..=12, c in 0.3f64..4.0) {
        // ∫₀^∞ u^k e^{-c u} du = k!/c^{k+1}
        let exact = (1..=k).map(f64::from).product::<f64>() / c.powi(k + 1);
        let q = integrate(|u| u.powi(k) * (-c * u).exp(), 0.0, f64::INFINITY, 1e-13).unwrap();
        prop_assert!((q - exact).abs() <= 1e-12 * exact.max(1.0));
    }
}
