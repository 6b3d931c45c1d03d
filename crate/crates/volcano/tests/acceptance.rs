//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use volcano_core::aim::{poly_roots, AimIterations};
use volcano_core::fd::{build_hamiltonian, cross_validate, FdGrid, OracleOptions};
use volcano_core::spectrum::{analyze, nearest_root_gap, splitting_curve, AnalysisOptions};
use volcano_core::units::{classify_band, energy_scale, transition_wavelength, Band, UnitContext, ELECTRON_MASS};
use volcano_core::{
    solve_spec, CoefficientPair, Complex, EnergyPoly, ExpansionPoint, Jet, PotentialSpec, Precision, ScalarJet,
    SolverConfig,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cs(a: f64, b: f64) -> PotentialSpec {
    PotentialSpec::cosh_sech(a, b).unwrap()
}

fn exact_state() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for b in [0.5, 1.0, 2.0] {
        let start = Instant::now();
        let spec = cs(1.0, b);
        let sol = solve_spec(&spec, &SolverConfig::new(&spec, 12)).unwrap();
        let hit = sol
            .converged()
            .filter(|c| (c.energy.re + 0.25).abs() <= 1e-3 && c.residual <= 1e-6)
            .min_by(|p, q| (p.energy.re + 0.25).abs().total_cmp(&(q.energy.re + 0.25).abs()));
        let elapsed = start.elapsed();
        pass &= hit.is_some() && elapsed <= Duration::from_secs(10);
        notes.push(match hit {
            Some(c) => format!("b={b}: E={:.10} res={:.1e} {:.2?}", c.energy.re, c.residual, elapsed),
            None => format!("b={b}: no converged state at -0.25"),
        });
    }
    outcome(pass, notes.join("; "))
}

const TARGET_A3: [f64; 6] = [-6.47301, -6.3402, -2.6222, -2.6058, 0.9607, 0.9624];

fn published_spectrum() -> Outcome {
    let start = Instant::now();
    let spec = cs(3.0, 1.0);
    let mut best: Option<(f64, usize, &str, Vec<f64>)> = None;
    let mut hit = None;
    for k in [11, 12, 13] {
        for (name, point) in [("valley", ExpansionPoint::Valley), ("max", ExpansionPoint::Maximum)] {
            let opts = AnalysisOptions {
                expansion: point,
                ..AnalysisOptions::default().with_k(k)
            };
            let Ok(report) = analyze(&spec, &opts) else { continue };
            let states = &report.bound_states;
            // nearest computed state to each published value
            let dev = TARGET_A3
                .iter()
                .map(|p| states.iter().map(|e| (e - p).abs()).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max);
            let grouped = report.pairs.len() >= 3;
            if dev <= 5e-3 && grouped && hit.is_none() {
                hit = Some((k, name));
            }
            if best.as_ref().is_none_or(|b| dev < b.0) {
                best = Some((dev, k, name, states.clone()));
            }
        }
    }
    let elapsed = start.elapsed();
    let (dev, k, name, states) = best.unwrap();
    let shown: Vec<String> = states.iter().map(|e| format!("{e:.5}")).collect();
    let detail = format!(
        "best k={k} u0={name}: max deviation {dev:.4} (states {}) {:.2?}",
        shown.join(", "),
        elapsed
    );
    outcome(hit.is_some() && elapsed <= Duration::from_secs(60), detail)
}

fn pair_gap_contraction() -> Outcome {
    let spec = cs(3.0, 1.0);
    let centers: Vec<f64> = analyze(&spec, &AnalysisOptions::default().with_k(14))
        .unwrap()
        .pairs
        .iter()
        .map(|p| p.midpoint())
        .collect();
    let base = spec.init_coeffs::<f64>(0.0, 16).unwrap();
    let records: Vec<_> = AimIterations::new(&base, 14).map(Result::unwrap).collect();
    let mut pass = centers.len() == 3;
    let mut notes = Vec::new();
    for c in &centers {
        let g8 = nearest_root_gap(&records[7].roots, *c).unwrap();
        let g14 = nearest_root_gap(&records[13].roots, *c).unwrap();
        pass &= g14 < g8;
        notes.push(format!("E~{c:.3}: {g8:.2e} -> {g14:.2e}"));
    }
    outcome(pass, notes.join("; "))
}

fn oscillator(order: usize) -> CoefficientPair {
    let two_u = ScalarJet::<f64>::identity(0.0, order).scale(Complex::real(2.0));
    let one = ScalarJet::constant(0.0, order, Complex::one());
    let minus_one = ScalarJet::constant(0.0, order, Complex::real(-1.0));
    CoefficientPair {
        lambda0: Jet::lift(&two_u),
        s0: Jet::affine_in_energy(&one, &minus_one).unwrap(),
        u0: 0.0,
    }
}

fn oscillator_oracle() -> Outcome {
    let base = oscillator(12);
    let mut worst: f64 = 0.0;
    for rec in AimIterations::new(&base, 10) {
        let rec = rec.unwrap();
        for n in 0..rec.k {
            let target = (2 * n + 1) as f64;
            let err = rec
                .roots
                .iter()
                .map(|z| (*z - Complex::real(target)).abs())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(err);
        }
    }
    outcome(worst <= 1e-8, format!("max |root - (2n+1)| over k<=10: {worst:.2e}"))
}

fn splitting() -> Outcome {
    let start = Instant::now();
    let opts = AnalysisOptions::default();
    let cs = [0.005, 0.01, 0.05, 0.1, 0.2, 0.5];
    let rows = splitting_curve(1.0, 1.0, &cs, &opts);
    let gaps: Vec<Option<f64>> = rows.iter().map(|r| r.gap).collect();
    let monotone = gaps.iter().all(Option::is_some) && gaps.windows(2).all(|w| w[0] <= w[1]);
    let floor = splitting_curve(1.0, 1.0, &[0.0], &opts)[0].gap;
    let floor_ok = floor.is_some_and(|g| (5e-7..=5e-5).contains(&g));
    let elapsed = start.elapsed();
    let shown: Vec<String> = gaps
        .iter()
        .map(|g| g.map_or("lost".into(), |g| format!("{g:.2e}")))
        .collect();
    outcome(
        monotone && floor_ok && elapsed <= Duration::from_secs(300),
        format!(
            "gaps [{}], c=0 floor {:?} {:.2?}",
            shown.join(", "),
            floor.map(|g| format!("{g:.2e}")),
            elapsed
        ),
    )
}

fn cross_validation() -> Outcome {
    let spec = PotentialSpec::modified(1.0, 1.0, 0.5).unwrap();
    let opts = OracleOptions {
        grid: FdGrid::new(12.0, 4000).unwrap(),
        ..OracleOptions::default()
    };
    let cfg = SolverConfig::new(&spec, 12);
    let cv = cross_validate(&spec, &cfg, &opts).unwrap();
    let fd_lowest = cv.fd_levels.iter().find(|l| l.stable).map(|l| l.energy);
    let aim_lowest = cv.comparisons.first().map(|c| c.aim);
    let rel = match (aim_lowest, fd_lowest) {
        (Some(a), Some(f)) => Some((a - f).abs() / f.abs()),
        _ => None,
    };
    let agree = rel.is_some_and(|r| r <= 1e-3);

    let lowest = |n: usize| {
        let g = FdGrid::new(12.0, n).unwrap();
        build_hamiltonian(&spec, &g).unwrap().lowest_eigenvalues(1).unwrap()[0]
    };
    let (e1, e2, e4) = (lowest(999), lowest(1999), lowest(3999));
    let ratio = (e1 - e2) / (e2 - e4);
    let second_order = (ratio - 4.0).abs() < 0.2;
    outcome(
        agree && second_order,
        format!(
            "AIM lowest {:?}, FD lowest {:?}, rel {:?}; FD refinement ratio {ratio:.3}",
            aim_lowest, fd_lowest, rel
        ),
    )
}

fn units() -> Outcome {
    let mev = energy_scale(10.0, ELECTRON_MASS).unwrap() * 1e3;
    let four_figures = format!("{:.2}", mev) == "38.10";
    let ctx = UnitContext::electron(10.0).unwrap();
    let l400 = transition_wavelength(81.51, &ctx).unwrap();
    let l800 = transition_wavelength(40.75, &ctx).unwrap();
    let l569 = transition_wavelength(57.3, &ctx).unwrap();
    let edges = (l400 - 0.4).abs() < 5e-4 && (l800 - 0.8).abs() < 5e-4;
    let fig = (l569 - 0.569).abs() <= 0.005 * 0.569 && classify_band(l569) == Band::Visible;
    outcome(
        four_figures && edges && fig,
        format!("scale {mev:.4} meV; 81.51 -> {l400:.5} um; 40.75 -> {l800:.5} um; 57.3 -> {l569:.5} um"),
    )
}

fn trends() -> Outcome {
    let lowest = |a: f64, b: f64| analyze(&cs(a, b), &AnalysisOptions::default()).unwrap().bound_states[0];
    let (b2, b6) = (lowest(20.0, 2.0), lowest(20.0, 6.0));
    let b_trend = b6 > b2;
    let by_a: Vec<f64> = [12.0, 14.0, 16.0, 18.0, 20.0].iter().map(|&a| lowest(a, 2.0)).collect();
    let a_trend = by_a.windows(2).all(|w| w[1] < w[0]);

    // stretch: a = 19, b = 2 in extended precision
    let start = Instant::now();
    let spec = cs(19.0, 2.0);
    let cfg = SolverConfig::new(&spec, 40).with_precision(Precision::Extended);
    let v_max = spec.extrema().v_max.unwrap();
    let ctx = UnitContext::electron(10.0).unwrap();
    let stretch = solve_spec(&spec, &cfg).ok().and_then(|sol| {
        let conv: Vec<f64> = sol.converged_energies();
        // every converged pair across the barrier top, closest wavelength first
        conv.iter()
            .filter(|&&lo| lo <= v_max)
            .flat_map(|&lo| conv.iter().filter(|&&hi| hi > v_max).map(move |&hi| (lo, hi)))
            .filter_map(|(lo, hi)| Some((lo, hi, transition_wavelength(hi - lo, &ctx).ok()?)))
            .min_by(|p, q| (p.2 - 0.569).abs().total_cmp(&(q.2 - 0.569).abs()))
    });
    let stretch_note =
        match stretch {
            Some((lo, hi, l)) => format!(
            "stretch a=19 b=2 k=40 extended: {lo:.3} / {hi:.3} across V_max {v_max:.2}, lambda {l:.4} um ({}) {:.2?}",
            if (l - 0.569).abs() <= 0.02 * 0.569 { "within 2%" } else { "outside 2%" },
            start.elapsed()
        ),
            None => "stretch a=19 b=2: no straddling converged pair".into(),
        };
    let shown: Vec<String> = by_a.iter().map(|e| format!("{e:.2}")).collect();
    outcome(
        b_trend && a_trend,
        format!(
            "a=20: lowest b=2 {b2:.3}, b=6 {b6:.3} ({}); b=2, a=12..20: [{}] ({}); {stretch_note}",
            if b_trend { "rises" } else { "falls" },
            shown.join(", "),
            if a_trend { "decreasing" } else { "not decreasing" },
        ),
    )
}

fn rand_complex(rng: &mut ChaCha8Rng) -> Complex<f64> {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn rand_jet(rng: &mut ChaCha8Rng, u0: f64, order: usize) -> Jet {
    let coeffs = (0..=order)
        .map(|_| {
            let len = rng.gen_range(0..=4);
            EnergyPoly::new((0..len).map(|_| rand_complex(rng)).collect())
        })
        .collect();
    Jet::new(u0, coeffs)
}

fn product_scale(a: &Jet, b: &Jet, m: usize) -> f64 {
    (0..=m)
        .map(|j| a.coeff(j).max_abs() * b.coeff(m - j).max_abs() * 4.0)
        .sum::<f64>()
        .max(f64::MIN_POSITIVE)
}

fn jet_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = [0usize; 4];
    for _ in 0..1000 {
        let order = rng.gen_range(1..8);
        let u0 = rng.gen_range(-2.0..2.0);
        let f = rand_jet(&mut rng, u0, order);
        let g = rand_jet(&mut rng, u0, order);

        // Leibniz
        let lhs = f.mul(&g).unwrap().derivative().unwrap();
        let rhs = f
            .derivative()
            .unwrap()
            .mul(&g.truncate(order - 1))
            .unwrap()
            .add(&f.truncate(order - 1).mul(&g.derivative().unwrap()).unwrap())
            .unwrap();
        if (0..order)
            .any(|m| lhs.coeff(m).sub(rhs.coeff(m)).max_abs() > 1e-13 * (m + 1) as f64 * product_scale(&f, &g, m + 1))
        {
            failures[0] += 1;
        }

        // division round trip with an invertible leading coefficient
        let lead = rand_complex(&mut rng);
        let lead = lead + Complex::real(if lead.re >= 0.0 { 0.5 } else { -0.5 });
        let mut gc = g.coeffs().to_vec();
        gc[0] = EnergyPoly::constant(lead);
        let g = Jet::new(u0, gc);
        let h = f.div(&g).unwrap();
        let back = g.mul(&h).unwrap();
        if (0..=order).any(|m| back.coeff(m).sub(f.coeff(m)).max_abs() > 1e-12 * product_scale(&g, &h, m)) {
            failures[1] += 1;
        }

        // exp(s) exp(-s) = 1
        let s = ScalarJet::new(u0, (0..=order).map(|_| rand_complex(&mut rng)).collect());
        let (a, b) = (s.exp(), s.scale(Complex::real(-1.0)).exp());
        let prod = a.mul(&b).unwrap();
        if prod.coeffs().iter().enumerate().any(|(m, c)| {
            let target = if m == 0 { Complex::one() } else { Complex::zero() };
            let scale: f64 = (0..=m).map(|j| a.coeffs()[j].abs() * b.coeffs()[m - j].abs()).sum();
            (*c - target).abs() > 1e-12 * scale.max(1.0)
        }) {
            failures[2] += 1;
        }

        // Vieta: sum of roots of a degree-8 polynomial
        let mut c: Vec<Complex<f64>> = (0..9).map(|_| rand_complex(&mut rng)).collect();
        c[8] = Complex::new(rng.gen_range(0.1..1.0), c[8].im * 0.1);
        let roots = poly_roots(&EnergyPoly::new(c.clone())).unwrap();
        let sum = roots.iter().fold(Complex::zero(), |acc, z| acc + *z);
        let size = roots.iter().map(|z| z.abs()).sum::<f64>().max(1.0);
        if roots.len() != 8 || (sum + c[7] / c[8]).abs() > 1e-8 * size {
            failures[3] += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.iter().all(|&n| n == 0) && elapsed <= Duration::from_secs(30),
        format!(
            "1000 instances each, failures: leibniz {}, division {}, exp {}, vieta {} {:.2?}",
            failures[0], failures[1], failures[2], failures[3], elapsed
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("exact-state regression", exact_state),
        ("a=3 b=1 target spectrum", published_spectrum),
        ("pair-gap contraction", pair_gap_contraction),
        ("oscillator oracle", oscillator_oracle),
        ("splitting curve", splitting),
        ("FD cross-validation", cross_validation),
        ("units", units),
        ("trend checks", trends),
        ("jet-algebra properties", jet_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failed += 1;
        }
        println!("[{tag}] {} {name} ({:.2?}): {}", i + 1, start.elapsed(), result.detail);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
