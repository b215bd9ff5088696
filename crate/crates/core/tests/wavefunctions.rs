use rydberg1d_core::model::{energy, reduced_potential, wavefunction, DefectModel, StateSpec};
use rydberg1d_core::oracle::integrate;

const DELTAS: [f64; 3] = [0.0, 0.0237, 0.1];

fn state(n: u32, delta: f64) -> StateSpec {
    StateSpec::new(n, DefectModel::reduced(delta).unwrap()).unwrap()
}

fn overlap(a: &StateSpec, b: &StateSpec) -> f64 {
    integrate(
        |u| wavefunction(a, u).unwrap() * wavefunction(b, u).unwrap(),
        0.0,
        f64::INFINITY,
        1e-12,
    )
    .unwrap()
}

#[test]
fn orthonormal_up_to_eight() {
    for &d in &DELTAS {
        for j in 1..=8 {
            let a = state(j, d);
            for k in j..=8 {
                let s = overlap(&a, &state(k, d));
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-8, "δ={d} ⟨{j}|{k}⟩ = {s}");
            }
        }
    }
}

#[test]
fn orthonormal_in_physical_units() {
    let m = DefectModel::new(158.4, 0.0237, 76.0).unwrap();
    let a = StateSpec::new(2, m).unwrap();
    let b = StateSpec::new(5, m).unwrap();
    let f = |p: &StateSpec, q: &StateSpec| {
        integrate(
            |x| wavefunction(p, x).unwrap() * wavefunction(q, x).unwrap(),
            0.0,
            f64::INFINITY,
            1e-12,
        )
        .unwrap()
    };
    assert!((f(&a, &a) - 1.0).abs() < 1e-8);
    assert!(f(&a, &b).abs() < 1e-8);
}

// −ψ'' + Vψ = Eψ by a fine central difference, relative to the local scale.
#[test]
fn satisfies_reduced_equation() {
    let h = 1e-3;
    for &d in &DELTAS {
        for n in 1..=5 {
            let s = state(n, d);
            let e = energy(&s);
            let peak = (1..400)
                .map(|i| wavefunction(&s, 0.1 * f64::from(i)).unwrap().abs())
                .fold(0.0, f64::max);
            for &u in &[0.3, 1.0, 2.5, 6.0, 14.0, 30.0] {
                let p = |x: f64| wavefunction(&s, x).unwrap();
                let second = (p(u + h) - 2.0 * p(u) + p(u - h)) / (h * h);
                let lhs = -second + reduced_potential(d, u).unwrap() * p(u);
                assert!(
                    (lhs - e * p(u)).abs() < 1e-5 * peak,
                    "δ={d} n={n} u={u}: {lhs} vs {}",
                    e * p(u)
                );
            }
        }
    }
}

#[test]
fn continuous_in_delta() {
    for n in 1..=4 {
        let base = state(n, 0.0);
        for &u in &[0.5, 3.0, 10.0] {
            let p0 = wavefunction(&base, u).unwrap();
            let mut last = f64::INFINITY;
            for &eps in &[1e-2, 1e-4, 1e-6] {
                let gap = (wavefunction(&state(n, eps), u).unwrap() - p0).abs();
                assert!(gap < last || gap < 1e-14);
                last = gap;
            }
            assert!(last < 1e-4);
        }
    }
}

// 2⟨T⟩ = ⟨u V'⟩ for V = −1/u gives ⟨1/u⟩ = −2E and ⟨T⟩ = −E.
#[test]
fn virial_theorem_coulomb() {
    for n in 1..=6 {
        let s = state(n, 0.0);
        let e = energy(&s);
        let inv = integrate(
            |u| {
                let p = wavefunction(&s, u).unwrap();
                if u > 0.0 {
                    p * p / u
                } else {
                    0.0
                }
            },
            0.0,
            f64::INFINITY,
            1e-12,
        )
        .unwrap();
        assert!((inv + 2.0 * e).abs() < 1e-10, "n={n}");
        let h = 1e-4;
        let kinetic = integrate(
            |u| {
                let d = (wavefunction(&s, u + h).unwrap()
                    - wavefunction(&s, (u - h).max(0.0)).unwrap())
                    / (u + h - (u - h).max(0.0));
                d * d
            },
            0.0,
            f64::INFINITY,
            1e-11,
        )
        .unwrap();
        assert!((kinetic + e).abs() < 1e-6, "n={n} T={kinetic}");
    }
}

#[test]
fn levels_ordered_and_deepen_with_delta() {
    for &d in &DELTAS {
        let m = DefectModel::reduced(d).unwrap();
        for n in 1..20 {
            assert!(m.level(n) < m.level(n + 1));
            assert!(m.level(n) < 0.0);
        }
    }
    for n in 1..10 {
        let a = DefectModel::reduced(0.0).unwrap().level(n);
        let b = DefectModel::reduced(0.0237).unwrap().level(n);
        let c = DefectModel::reduced(0.1).unwrap().level(n);
        assert!(c < b && b < a);
    }
}

#[test]
fn node_count_matches_n_minus_one() {
    for &d in &DELTAS {
        for n in 1..=8 {
            let s = state(n, d);
            let vals: Vec<f64> = (1..10000)
                .map(|i| wavefunction(&s, 0.04 * f64::from(i)).unwrap())
                .filter(|v| v.abs() > 1e-200)
                .collect();
            let changes = vals
                .windows(2)
                .filter(|w| (w[0] < 0.0) != (w[1] < 0.0))
                .count();
            assert_eq!(changes as u32, n - 1, "δ={d} n={n}");
        }
    }
}
