use proptest::prelude::*;
use volcano_core::{Complex, PotentialSpec, S0Form};

fn cs(a: f64, b: f64) -> PotentialSpec {
    PotentialSpec::cosh_sech(a, b).unwrap()
}

/// Brute-force interior maximum of V on a fine grid over (0, 6].
fn grid_max(spec: &PotentialSpec) -> Option<(f64, f64)> {
    let n = 600_000;
    let xs: Vec<f64> = (1..=n).map(|i| 6.0 * i as f64 / n as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| spec.v_eval(x).unwrap()).collect();
    (1..n - 1)
        .filter(|&i| vs[i] > vs[i - 1] && vs[i] >= vs[i + 1])
        .map(|i| (xs[i], vs[i]))
        .max_by(|p, q| p.1.total_cmp(&q.1))
}

#[test]
fn extrema_a3_b1_match_closed_form_and_grid() {
    let spec = cs(3.0, 1.0);
    let e = spec.extrema();
    let x_closed = libm::acosh(libm::pow(35.0, 0.25));
    let x = e.x_max.unwrap();
    assert!((x - x_closed).abs() < 1e-14);
    assert!((e.v_max.unwrap() + libm::sqrt(35.0) / 2.0).abs() < 1e-14);
    assert_eq!(e.v_min, -9.0);
    assert_eq!(e.v_origin, -9.0);
    let (gx, gv) = grid_max(&spec).unwrap();
    assert!((gx - x).abs() < 1e-4, "{gx} vs {x}");
    assert!((gv - e.v_max.unwrap()).abs() < 1e-9);
    // the value itself, for the record
    assert!((x - 1.5367).abs() < 1e-4);
}

#[test]
fn extrema_a1_b1() {
    let spec = cs(1.0, 1.0);
    let e = spec.extrema();
    let x = e.x_max.unwrap();
    assert!((x - libm::acosh(libm::pow(3.0, 0.25))).abs() < 1e-14);
    assert!((e.v_max.unwrap() + libm::sqrt(3.0) / 2.0).abs() < 1e-14);
    let (gx, _) = grid_max(&spec).unwrap();
    assert!((gx - x).abs() < 1e-4);
    assert!((x - 0.7755).abs() < 1e-4);
}

#[test]
fn barrier_absent_for_large_b() {
    let spec = cs(1.0, 2.0);
    assert_eq!(spec.extrema().x_max, None);
    assert_eq!(spec.default_u0(), 0.0);
}

#[test]
fn default_expansion_points() {
    let u = cs(3.0, 1.0).default_u0();
    assert!((u - libm::sinh(libm::acosh(libm::pow(35.0, 0.25)))).abs() < 1e-13);
    assert!((u - 2.2172).abs() < 1e-3);

    let spec = cs(20.0, 2.0);
    let closed = libm::sinh(libm::acosh(libm::pow(1599.0 / 4.0, 0.25)));
    assert!((spec.default_u0() - closed).abs() < 1e-12);
    let (gx, _) = grid_max(&spec).unwrap();
    assert!((libm::sinh(gx) - closed).abs() < 1e-3);
}

#[test]
fn closed_form_conditions_hold() {
    for (a, b) in [(3.0, 1.0), (20.0, 2.0), (1.0, 1.5), (0.75, 0.3)] {
        let e = cs(a, b).extrema();
        let q: f64 = 4.0 * a * a - 1.0;
        assert_eq!(e.x_max.is_some(), q > 0.0 && b < libm::sqrt(q), "a={a} b={b}");
        assert_eq!(e.v_min, -(a * a - 0.25) - b * b / 4.0);
        if let Some(v_max) = e.v_max {
            assert!(e.v_min <= v_max);
            let vx = cs(a, b).v_eval(e.x_max.unwrap()).unwrap();
            assert!((vx - v_max).abs() <= 1e-10 * v_max.abs());
        }
    }
}

#[test]
fn damped_extrema_approach_undamped_ones() {
    let exact = cs(1.0, 1.0).extrema().x_max.unwrap();
    let mut last = f64::INFINITY;
    for c in [1e-3, 1e-5, 1e-7] {
        let e = PotentialSpec::modified(1.0, 1.0, c).unwrap().extrema();
        let err = (e.x_max.unwrap() - exact).abs();
        assert!(err <= last);
        last = err;
    }
    assert!(last < 1e-6, "{last}");
}

#[test]
fn strongly_damped_potential_is_a_single_well() {
    let spec = PotentialSpec::modified(1.0, 1.0, 0.5).unwrap();
    let e = spec.extrema();
    assert_eq!(e.x_max, None);
    assert_eq!(e.v_origin, spec.v_eval(0.0).unwrap());
    assert!((e.v_min + 1.0).abs() < 1e-12);
    // V rises monotonically from the origin
    let mut prev = spec.v_eval(0.0).unwrap();
    for i in 1..400 {
        let v = spec.v_eval(i as f64 * 0.02).unwrap();
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn weakly_damped_barrier_moves_out() {
    let x0 = cs(1.0, 1.0).extrema().x_max.unwrap();
    let x1 = PotentialSpec::modified(1.0, 1.0, 0.05)
        .unwrap()
        .extrema()
        .x_max
        .unwrap();
    let x2 = PotentialSpec::modified(1.0, 1.0, 0.2).unwrap().extrema().x_max.unwrap();
    assert!(x0 < x1 && x1 < x2);
}

#[test]
fn origin_value_is_exact_for_every_family() {
    for spec in [
        cs(2.0, 0.5),
        PotentialSpec::modified(1.0, 1.0, 0.3).unwrap(),
        PotentialSpec::modified(4.0, 3.0, 1e-4).unwrap(),
    ] {
        assert_eq!(spec.extrema().v_origin, spec.v_eval(0.0).unwrap());
    }
}

/// `lambda0(u)` and `s0(u; E)` evaluated directly.
fn coefficient_functions(spec: &PotentialSpec, u: f64, energy: f64) -> (Complex<f64>, Complex<f64>) {
    let (a, b, c) = (spec.a, spec.b, spec.c);
    let g = 1.0 + u * u;
    let lambda0 = Complex::new(2.0 * (a - 1.0) * u / g, 2.0 * b);
    let ash = libm::asinh(u);
    let damp = libm::exp(-c * ash * ash);
    let tail = match (spec.c == 0.0, spec.s0_form) {
        (true, _) => 0.75 * b * b,
        (false, S0Form::Additive) => 0.25 * b * b * (2.0 + damp),
        (false, S0Form::Exact) => 0.25 * b * b * (4.0 - damp),
    };
    let s0 = Complex::new((-energy + a - a * a - 0.25) / g + tail, -2.0 * u * b * (a - 1.0) / g);
    (lambda0, s0)
}

#[test]
fn jets_match_finite_differences_of_the_coefficients() {
    let specs = [
        cs(3.0, 1.0),
        cs(0.6, 2.5),
        PotentialSpec::modified(1.3, 1.0, 0.4).unwrap(),
        PotentialSpec::modified(1.3, 1.0, 0.4)
            .unwrap()
            .with_s0_form(S0Form::Exact),
    ];
    let energy = -0.7;
    let e = Complex::real(energy);
    for spec in specs {
        for u0 in [0.0, 0.8, -1.7] {
            let pair = spec.init_coeffs::<f64>(u0, 6).unwrap();
            let h = 1e-4;
            let (lp, sp) = coefficient_functions(&spec, u0 + h, energy);
            let (lm, sm) = coefficient_functions(&spec, u0 - h, energy);
            let (l0, s0) = coefficient_functions(&spec, u0, energy);
            let d1 = |p: Complex<f64>, m: Complex<f64>| (p - m).scale(0.5 / h);
            let d2 = |p: Complex<f64>, z: Complex<f64>, m: Complex<f64>| (p - z.scale(2.0) + m).scale(1.0 / (h * h));
            // value, first derivative, and half the second derivative
            assert!((pair.lambda0.coeff(0).eval(e) - l0).abs() < 1e-14);
            assert!((pair.s0.coeff(0).eval(e) - s0).abs() < 1e-14);
            assert!((pair.lambda0.coeff(1).eval(e) - d1(lp, lm)).abs() < 1e-7);
            assert!((pair.s0.coeff(1).eval(e) - d1(sp, sm)).abs() < 1e-7);
            assert!((pair.lambda0.coeff(2).eval(e).scale(2.0) - d2(lp, l0, lm)).abs() < 1e-5);
            assert!((pair.s0.coeff(2).eval(e).scale(2.0) - d2(sp, s0, sm)).abs() < 1e-5);
            // one jet derivative shifts the Taylor coefficients down
            let ds = pair.s0.derivative().unwrap();
            assert!((ds.coeff(0).eval(e) - d1(sp, sm)).abs() < 1e-7);
            // the whole jet reproduces the function a short step away
            let t = 0.05;
            let (lt, st) = coefficient_functions(&spec, u0 + t, energy);
            assert!((pair.s0.eval(Complex::real(t), e) - st).abs() < 1e-6);
            assert!((pair.lambda0.eval(Complex::real(t), e) - lt).abs() < 1e-6);
        }
    }
}

#[test]
fn energy_enters_linearly() {
    let pair = PotentialSpec::modified(2.0, 1.0, 0.2)
        .unwrap()
        .init_coeffs::<f64>(0.3, 8)
        .unwrap();
    assert!(pair.s0.max_energy_degree().unwrap() <= 1);
    assert_eq!(pair.lambda0.max_energy_degree(), Some(0));
    assert_eq!(pair.lambda0.order(), pair.s0.order());
    assert_eq!(pair.lambda0.u0(), pair.s0.u0());
}

proptest! {
    #[test]
    fn potential_is_even(a in 0.0..6.0f64, b in 0.0..4.0f64, c in 0.0..1.0f64, x in -8.0..8.0f64) {
        let spec = PotentialSpec::modified(a, b, c).unwrap();
        prop_assert_eq!(spec.v_eval(x).unwrap(), spec.v_eval(-x).unwrap());
        let plain = cs(a, b);
        prop_assert_eq!(plain.v_eval(x).unwrap(), plain.v_eval(-x).unwrap());
    }

    #[test]
    fn zero_damping_is_the_plain_potential(a in 0.0..6.0f64, b in 0.0..4.0f64, x in -30.0..30.0f64, u0 in -3.0..3.0f64) {
        let m = PotentialSpec::modified(a, b, 0.0).unwrap();
        let p = cs(a, b);
        prop_assert_eq!(m.v_eval(x).unwrap().to_bits(), p.v_eval(x).unwrap().to_bits());
        prop_assert_eq!(m.init_coeffs::<f64>(u0, 5).unwrap(), p.init_coeffs::<f64>(u0, 5).unwrap());
    }

    #[test]
    fn canonical_text_round_trips(a in -5.0..5.0f64, b in 0.0..5.0f64, c in 0.0..2.0f64, exact in any::<bool>()) {
        let form = if exact { S0Form::Exact } else { S0Form::Additive };
        for spec in [cs(a, b), PotentialSpec::modified(a, b, c).unwrap().with_s0_form(form)] {
            let back: PotentialSpec = spec.to_string().parse().unwrap();
            prop_assert_eq!(back, spec);
        }
    }
}
