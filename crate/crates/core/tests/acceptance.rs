//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion;
//! every comparison is exact (tolerance zero).

use std::io::Write;
use std::time::Instant;

use jetcalc::counter::{implicit_numerator, measure_degree, regular_prolongation};
use jetcalc::equation::{DifferentialEquation, Provenance};
use jetcalc::formula::{degree_by_theorem, hessian_bezout, parabolic_degree, parabolic_degree_smooth, umbilical_equation, umbilical_parity};
use jetcalc::invariants::{compute_invariants, cylinder_tests, Coefficients};
use jetcalc::jet::{total_derivative, JetChart};
use jetcalc::job::route_agreement;
use jetcalc::parse::{format_polynomial, hessian_determinant, parse_expression};
use jetcalc::poly::gcd::square_free_decomposition;
use jetcalc::poly::resultant::resultant;
use jetcalc::poly::{ratio, Ideal, Monomial, Polynomial, QuotientDim, Rational};
use jetcalc::variety::{cuspidal_numbers, CuspidalNumbers, Smoothness, Variety};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P = Polynomial<Rational>;
type Outcome = Result<String, String>;

const SEED: u64 = 2024;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn plane(src: &str, smoothness: Smoothness) -> Variety {
    let c = JetChart::new(2, 1, 0).unwrap();
    Variety::new(2, 1, vec![parse_expression(src, &c).unwrap()], smoothness).unwrap()
}

fn plane_eq(src: &str) -> DifferentialEquation {
    let c = JetChart::new(2, 1, 3).unwrap();
    DifferentialEquation::new(&c, parse_expression(src, &c).unwrap()).unwrap()
}

fn hypersurface(n: usize, src: &str) -> Variety {
    let c = JetChart::new(n, n - 1, 0).unwrap();
    Variety::new(n, n - 1, vec![parse_expression(src, &c).unwrap()], Smoothness::Smooth).unwrap()
}

fn hessian_eq(n: usize) -> DifferentialEquation {
    let c = JetChart::new(n, n - 1, 2).unwrap();
    DifferentialEquation::new(&c, hessian_determinant(&c, 1).unwrap()).unwrap()
}

fn split(s: &Variety, eq: &str) -> Result<(u64, u64), String> {
    let r = measure_degree(s, &plane_eq(eq), SEED).map_err(|e| e.to_string())?;
    Ok((r.affine_count, r.total - r.affine_count))
}

fn criterion_1() -> Outcome {
    let s = plane("x^3 + y^2 - 1", Smoothness::Smooth);
    let a = split(&s, "y'")?;
    let b = split(&s, "y''")?;
    ensure(a == (4, 2) && b == (8, 1), format!("y': {a:?}, y'': {b:?}"))?;
    Ok("S(y') = 4 + 2, S(y'') = 8 + 1".into())
}

fn criterion_2() -> Outcome {
    let t = plane("x^3 + y^2", Smoothness::Singular);
    // the order-one closure contains the branch x = -s^2, y = s^3, y' = -3s/2
    let ideal = regular_prolongation(&t, 1).map_err(|e| e.to_string())?;
    let s = P::var(1, 0);
    let images = [-s.pow(2), s.pow(3), s.scale(&ratio(-3, 2))];
    for g in ideal.generators() {
        ensure(g.compose(&images).is_zero(), "a generator of the closure misses the cusp branch")?;
    }
    let a = split(&t, "y'")?;
    let b = split(&t, "y''")?;
    ensure(a == (1, 2) && b == (0, 1), format!("y': {a:?}, y'': {b:?}"))?;
    Ok("T(y') = 1 + 2, T(y'') = 0 + 1".into())
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for (src, expected) in [("y'", vec![0, 1]), ("y''", vec![-3, 3, 1])] {
        let eq = plane_eq(src);
        let report = compute_invariants(&eq, &[], Coefficients::Rationals, SEED).map_err(|e| e.to_string())?;
        ensure(report.invariants.values() == Some(expected.clone()), format!("{src}: {:?}", report.invariants.values()))?;
        let top = report.invariants.entries.last().unwrap().provenance;
        ensure(top == Provenance::Distinguished, format!("{src}: top entry from {top:?}"))?;
        let checks = route_agreement(&eq, SEED).map_err(|e| e.to_string())?;
        ensure(checks.iter().any(|c| c.index == eq.order()), format!("{src}: top entry not calibrated"))?;
        ensure(checks.iter().all(|c| c.agree), format!("{src}: routes disagree {checks:?}"))?;
        notes.push(format!("{src} -> {expected:?}"));
    }
    Ok(format!("{} with route agreement", notes.join(", ")))
}

fn criterion_4() -> Outcome {
    let s = cuspidal_numbers(&plane("x^3 + y^2 - 1", Smoothness::Smooth), 2, SEED).map_err(|e| e.to_string())?;
    let t = cuspidal_numbers(&plane("x^3 + y^2", Smoothness::Singular), 2, SEED).map_err(|e| e.to_string())?;
    ensure(s.values() == Some(vec![3, 6, 0]) && t.values() == Some(vec![3, 3, 1]), format!("S {:?}, T {:?}", s.values(), t.values()))?;
    Ok("S (3, 6, 0), T (3, 3, 1)".into())
}

fn sum(n: usize, f: impl Fn(usize) -> String) -> String {
    (1..n).map(f).collect::<Vec<_>>().join(" + ")
}

fn criterion_5() -> Outcome {
    for n in 2..=4usize {
        let eq = hessian_eq(n);
        let report = compute_invariants(&eq, &[], Coefficients::Rationals, SEED).map_err(|e| e.to_string())?;
        let m = n as i64;
        ensure(report.invariants.values() == Some(vec![-(m + 1), m + 1, m - 1]), format!("n = {n}: {:?}", report.invariants.values()))?;
        let measured: Vec<i64> = report.tests.iter().map(|t| t.measured).collect();
        ensure(measured == vec![0, 3 * (m + 1)], format!("n = {n}: tests measured {measured:?}"))?;
        ensure(report.invariants.entries[2].provenance == Provenance::Diagonal || n == 2, format!("n = {n}: top not diagonal"))?;

        // the restricted Hessian agrees with (-3)^{n-1} x_1..x_{n-1} (y^2 - 3) / 4y^{n+1}
        // on the cubic away from y = 0
        let cubic_src = if n == 2 { "x1^3 + y1^2 - 1".to_string() } else { format!("{} + y1^2 + 1", sum(n, |i| format!("x{i}^3"))) };
        let cubic = hypersurface(n, &cubic_src);
        if n > 2 {
            let num = implicit_numerator(&cubic, &eq).map_err(|e| e.to_string())?;
            let base = JetChart::new(n, n - 1, 0).unwrap();
            let closed = parse_expression(&format!("{} * (y1^2 - 3)", sum(n, |i| format!("x{i}"))).replace(" + ", " * "), &base).unwrap();
            let lift = |p: &P| p.remap(&(1..=n).collect::<Vec<_>>(), n + 1);
            let t = P::var(n + 1, 0);
            let y = P::var(n + 1, n);
            let unit = &(&t * &y) - &P::one(n + 1);
            let a = Ideal::new(n + 1, vec![lift(cubic.equation()), lift(&num), unit.clone()]);
            let b = Ideal::new(n + 1, vec![lift(cubic.equation()), lift(&closed), unit]);
            ensure(a.same_ideal(&b), format!("n = {n}: restricted Hessian differs from the closed form"))?;
        }
        for d in 2..=4i64 {
            let theorem = parabolic_degree(m, &[d, d * (d - 1), 0]).map_err(|e| e.to_string())?;
            ensure(theorem == parabolic_degree_smooth(m, d), format!("n = {n}, d = {d}: {theorem}"))?;
            let fermat = format!("{} + y1^{d} - 1", sum(n, |i| format!("x{i}^{d}")));
            let bezout = hessian_bezout(hypersurface(n, &fermat).equation()).map_err(|e| e.to_string())?;
            ensure(bezout == theorem, format!("n = {n}, d = {d}: Bezout {bezout} vs {theorem}"))?;
            if n <= 3 {
                let measured = measure_degree(&hypersurface(n, &fermat), &eq, SEED).map_err(|e| e.to_string())?.total as i64;
                ensure(measured == theorem, format!("n = {n}, d = {d}: measured {measured} vs {theorem}"))?;
            }
        }
    }
    Ok("gamma = (-(n+1), n+1, n-1) for n = 2, 3, 4; (n+1)d(d-2) for d = 2, 3, 4".into())
}

/// A random plane curve of degree `d` whose projective closure is smooth.
fn random_smooth_curve(rng: &mut ChaCha8Rng, d: u32) -> P {
    loop {
        let mut terms = Vec::new();
        for a in 0..=d {
            for b in 0..=d - a {
                let top = a + b == d;
                if top && (b == d || a == d) || rng.gen_bool(0.6) {
                    let c: i64 = loop {
                        let v = rng.gen_range(-5..=5);
                        if v != 0 {
                            break v;
                        }
                    };
                    terms.push((Monomial::from_exponents(vec![a, b]), Rational::from_integer(c.into())));
                }
            }
        }
        let f = P::from_terms(2, terms);
        let fh = f.homogenize();
        let mut gens = vec![fh.clone()];
        gens.extend((0..3).map(|v| fh.derivative(v).unwrap()));
        if let QuotientDim::Finite(_) = Ideal::new(3, gens).quotient_dimension() {
            return f;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut pairs: Vec<(Variety, DifferentialEquation, CuspidalNumbers, Smoothness)> = Vec::new();
    for (src, sm, cusp) in [("x^2 + y^2 - 1", Smoothness::Smooth, vec![2, 2, 0]), ("x^3 + y^2 - 1", Smoothness::Smooth, vec![3, 6, 0]), ("x^3 + y^2", Smoothness::Singular, vec![3, 3, 1])] {
        for eq in ["y'", "y''"] {
            pairs.push((plane(src, sm), plane_eq(eq), CuspidalNumbers::from_values(&cusp, Provenance::Measured), sm));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let base = &JetChart::new(2, 1, 0).unwrap();
    for i in 0..20 {
        let d = 2 + (i % 3) as u32;
        let f = random_smooth_curve(&mut rng, d);
        let eq = match i % 4 {
            0 | 3 => "y''".to_string(),
            1 => "y'".to_string(),
            _ => format!("y' - {}", rng.gen_range(1..=4)),
        };
        let s = Variety::new(2, 1, vec![f], Smoothness::Smooth).unwrap();
        let cusp = cuspidal_numbers(&s, 2, SEED).map_err(|e| e.to_string())?;
        pairs.push((s, plane_eq(&eq), cusp, Smoothness::Smooth));
    }
    let total = pairs.len();
    let failures: Vec<String> = std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .iter()
            .map(|(s, eq, cusp, sm)| {
                scope.spawn(move || -> Result<(), String> {
                    let inv = compute_invariants(eq, &[], Coefficients::Rationals, SEED).map_err(|e| e.to_string())?;
                    let theorem = degree_by_theorem(&inv.invariants.entries, cusp, *sm).map_err(|e| e.to_string())?;
                    let measured = measure_degree(s, eq, SEED).map_err(|e| e.to_string())?.total as i64;
                    ensure(theorem == measured, format!("{} on {}: theorem {theorem}, measured {measured}", eq.to_text(), format_polynomial(&s.generators()[0], base)))
                })
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().unwrap().err()).collect()
    });
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok(format!("{total} pairs agree"))
}

fn criterion_7() -> Outcome {
    let eq = umbilical_equation();
    let tests = cylinder_tests(&eq, SEED).map_err(|e| e.to_string())?;
    let measured: Vec<i64> = tests.iter().map(|t| t.measured % 2).collect();
    ensure(measured == vec![0, 0], format!("cylinder measurements mod 2: {measured:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10 {
        let gamma_s: Vec<i64> = (0..3).map(|_| rng.gen_range(0..50)).collect();
        let p = umbilical_parity(&gamma_s, SEED).map_err(|e| e.to_string())?;
        ensure(p.gamma_f == vec![0, 0, 0], format!("gamma_f {:?}", p.gamma_f))?;
        ensure(p.parity == 0, format!("odd for {gamma_s:?}"))?;
    }
    Ok("gamma_f = (0, 0, 0); even for 10 random gamma_S".into())
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u32, terms: usize) -> P {
    let mut out = P::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let c = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into());
        out = &out + &P::term(Monomial::from_exponents(exps), c);
    }
    out
}

fn dense(rng: &mut ChaCha8Rng, nvars: usize, d: u32) -> P {
    fn all(nvars: usize, d: u32) -> Vec<Vec<u32>> {
        if nvars == 0 {
            return vec![vec![]];
        }
        (0..=d).flat_map(|e| all(nvars - 1, d - e).into_iter().map(move |mut rest| {
            rest.push(e);
            rest
        })).collect()
    }
    let terms = all(nvars, d).into_iter().map(|e| (Monomial::from_exponents(e), Rational::from_integer(rng.gen_range(1..=30).into())));
    P::from_terms(nvars, terms)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    // total derivatives: Leibniz and commutation
    let charts = [JetChart::new(2, 1, 2).unwrap(), JetChart::new(3, 2, 1).unwrap(), JetChart::new(4, 2, 1).unwrap()];
    for case in 0..200 {
        let c = &charts[case % charts.len()];
        let p = random_poly(&mut rng, c.nvars(), 3, 4);
        let q = random_poly(&mut rng, c.nvars(), 3, 4);
        let up = c.with_order(c.r() + 1);
        let i = 1 + case % c.k();
        let j = 1 + (case / 2) % c.k();
        let d = |p: &P, i| total_derivative(c, p, i).unwrap();
        let lhs = d(&(&p * &q), i);
        let rhs = &(&d(&p, i) * &q.extend(up.nvars())) + &(&p.extend(up.nvars()) * &d(&q, i));
        ensure(lhs == rhs, format!("Leibniz fails in case {case}"))?;
        let dij = total_derivative(&up, &d(&p, j), i).unwrap();
        let dji = total_derivative(&up, &d(&p, i), j).unwrap();
        ensure(dij == dji, format!("commutation fails in case {case}"))?;
    }
    // Bezout for dense generic systems
    for case in 0..12 {
        let m = 1 + case % 3;
        let degrees: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
        let gens: Vec<P> = degrees.iter().map(|&d| dense(&mut rng, m, d)).collect();
        let expected: u32 = degrees.iter().product();
        let got = Ideal::new(m, gens).quotient_dimension();
        ensure(got == QuotientDim::Finite(expected as u64), format!("Bezout {degrees:?}: {got:?}"))?;
    }
    // quotient dimension against the resultant on bivariate systems with
    // constant leading coefficients in x
    let mut checked = 0;
    while checked < 50 {
        let mk = |rng: &mut ChaCha8Rng| {
            let a = rng.gen_range(1..=3u32);
            let lead = P::term(Monomial::from_exponents(vec![a, 0]), Rational::from_integer(rng.gen_range(1..=3).into()));
            let tail = random_poly(rng, 2, a, 4);
            let tail = P::from_terms(2, tail.terms().filter(|(m, _)| m.exponents()[0] < a).map(|(m, c)| (m.clone(), c.clone())));
            &lead + &tail
        };
        let p = mk(&mut rng);
        let q = mk(&mut rng);
        let Ok(res) = resultant(&p, &q, 0) else { continue };
        if res.is_zero() {
            continue;
        }
        let deg = res.degree_in(1) as u64;
        let weighted: u64 = square_free_decomposition(&res, 1).iter().map(|(f, m)| f.degree_in(1) as u64 * *m as u64).sum();
        let got = Ideal::new(2, vec![p.clone(), q.clone()]).quotient_dimension();
        ensure(weighted == deg && got == QuotientDim::Finite(deg), format!("resultant degree {deg}, weighted {weighted}, count {got:?}"))?;
        checked += 1;
    }
    // parser round trip
    let c = JetChart::new(3, 2, 2).unwrap();
    let plane_chart = JetChart::new(2, 1, 3).unwrap();
    for case in 0..200 {
        let chart = if case % 2 == 0 { &c } else { &plane_chart };
        let p = random_poly(&mut rng, chart.nvars(), 4, 5);
        let text = format_polynomial(&p, chart);
        let back = parse_expression(&text, chart).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == p && format_polynomial(&back, chart) == text, format!("round trip fails for {text}"))?;
    }
    Ok("200 derivative cases, 12 Bezout systems, 50 resultant systems, 200 round trips".into())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("plane cubic degrees", criterion_1),
        ("cuspidal cubic degrees", criterion_2),
        ("invariants of y' and y''", criterion_3),
        ("cuspidal numbers", criterion_4),
        ("parabolic points", criterion_5),
        ("theorem against measurement", criterion_6),
        ("mod-2 umbilical parity", criterion_7),
        ("property suites", criterion_8),
    ];
    // written to the raw handle so the lines survive libtest output capture
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => writeln!(out, "criterion {} PASS {name} [tolerance: exact] {detail} ({elapsed:.2}s)", i + 1).unwrap(),
            Err(detail) => {
                writeln!(out, "criterion {} FAIL {name} [tolerance: exact] {detail} ({elapsed:.2}s)", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
