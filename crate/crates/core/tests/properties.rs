use jetcalc::equation::{DifferentialEquation, Entry, Provenance};
use jetcalc::formula::{degree_by_theorem, degree_mod2};
use jetcalc::invariants::{compute_invariants, Coefficients};
use jetcalc::jet::{total_derivative, JetChart};
use jetcalc::parse::{format_polynomial, parse_expression};
use jetcalc::poly::resultant::resultant;
use jetcalc::poly::{Gf2, Ideal, Monomial, Polynomial, QuotientDim, Rational};
use jetcalc::variety::{CuspidalNumbers, Smoothness};
use num_bigint::BigInt;
use proptest::prelude::*;

type P = Polynomial<Rational>;

fn poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(move |terms| {
        P::from_terms(nvars, terms.into_iter().map(|(e, n, d)| (Monomial::from_exponents(e), Rational::new(BigInt::from(n), BigInt::from(d)))))
    })
}

fn poly_gf2(nvars: usize) -> impl Strategy<Value = Polynomial<Gf2>> {
    prop::collection::vec((prop::collection::vec(0..=2u32, nvars), any::<bool>()), 0..=5)
        .prop_map(move |terms| Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), Gf2(c)))))
}

/// Dense polynomial of exact degree `d` with positive integer coefficients.
fn dense(nvars: usize, d: u32) -> impl Strategy<Value = P> {
    fn exps(nvars: usize, d: u32) -> Vec<Vec<u32>> {
        if nvars == 0 {
            return vec![vec![]];
        }
        (0..=d)
            .flat_map(|e| {
                exps(nvars - 1, d - e).into_iter().map(move |mut rest| {
                    rest.push(e);
                    rest
                })
            })
            .collect()
    }
    let all = exps(nvars, d);
    prop::collection::vec(1i64..=40, all.len())
        .prop_map(move |cs| P::from_terms(nvars, all.iter().cloned().zip(cs).map(|(e, c)| (Monomial::from_exponents(e), Rational::from_integer(c.into())))))
}

fn plane_eq(src: &str) -> DifferentialEquation {
    let c = JetChart::new(2, 1, 2).unwrap();
    DifferentialEquation::new(&c, parse_expression(src, &c).unwrap()).unwrap()
}

/// Entries padded to order two; `None` where no route reaches the entry.
fn invariants(src: &str) -> Vec<Option<i64>> {
    let mut v: Vec<Option<i64>> = compute_invariants(&plane_eq(src), &[], Coefficients::Rationals, 7).unwrap().invariants.entries.iter().map(|e| e.value).collect();
    v.resize(3, Some(0));
    v
}

const EQUATIONS: [&str; 4] = ["y'", "y''", "y' - 2", "x + y'"];

fn chart() -> impl Strategy<Value = JetChart> {
    prop_oneof![Just((2, 1, 2)), Just((3, 2, 1)), Just((4, 2, 1)), Just((3, 1, 2))].prop_map(|(n, k, r)| JetChart::new(n, k, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 3, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &P::one(3), a.clone());
    }

    #[test]
    fn gf2_ring_axioms(a in poly_gf2(3), b in poly_gf2(3), c in poly_gf2(3)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a + &a).is_zero());
    }

    #[test]
    fn total_derivative_is_a_derivation((c, p, q) in chart().prop_flat_map(|c| { let nv = c.nvars(); (Just(c), poly(nv, 2, 4), poly(nv, 2, 4)) })) {
        let up = c.with_order(c.r() + 1);
        for i in 1..=c.k() {
            let d = |f: &P| total_derivative(&c, f, i).unwrap();
            let lhs = d(&(&p * &q));
            let rhs = &(&d(&p) * &q.extend(up.nvars())) + &(&p.extend(up.nvars()) * &d(&q));
            prop_assert_eq!(lhs, rhs);
            for j in 1..=c.k() {
                let dij = total_derivative(&up, &total_derivative(&c, &p, j).unwrap(), i).unwrap();
                let dji = total_derivative(&up, &d(&p), j).unwrap();
                prop_assert_eq!(dij, dji);
            }
        }
    }

    #[test]
    fn parser_round_trip(p in poly(7, 3, 6)) {
        let c = JetChart::new(2, 1, 5).unwrap();
        prop_assert_eq!(c.nvars(), 7);
        let text = format_polynomial(&p, &c);
        let back = parse_expression(&text, &c).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(format_polynomial(&back, &c), text);
    }

    #[test]
    fn saturation_contains_and_is_idempotent(a in poly(2, 2, 3), b in poly(2, 2, 3), g in poly(2, 1, 2)) {
        prop_assume!(!g.is_zero());
        let i = Ideal::new(2, vec![a, b]);
        let sat = i.saturate(&g);
        prop_assert!(sat.contains_ideal(&i));
        prop_assert!(sat.saturate(&g).same_ideal(&sat));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bezout_for_generic_dense_systems(system in (1usize..=3).prop_flat_map(|m| prop::collection::vec(1u32..=3, m))
        .prop_flat_map(|ds| { let m = ds.len(); (Just(ds.clone()), ds.into_iter().map(move |d| dense(m, d)).collect::<Vec<_>>()) })) {
        let (degrees, gens) = system;
        let m = degrees.len();
        let expected: u32 = degrees.iter().product();
        prop_assert_eq!(Ideal::new(m, gens).quotient_dimension(), QuotientDim::Finite(expected as u64));
    }

    #[test]
    fn resultant_degree_matches_count(a in 1u32..=3, b in 1u32..=3, p in poly(2, 2, 4), q in poly(2, 2, 4), ca in 1i64..=3, cb in 1i64..=3) {
        // monic-in-x leading terms keep every solution affine
        let lower = |f: &P, a: u32| P::from_terms(2, f.terms().filter(|(m, _)| m.exponent(0) < a).map(|(m, c)| (m.clone(), c.clone())));
        let f = &P::term(Monomial::from_exponents(vec![a, 0]), Rational::from_integer(ca.into())) + &lower(&p, a);
        let g = &P::term(Monomial::from_exponents(vec![b, 0]), Rational::from_integer(cb.into())) + &lower(&q, b);
        let res = resultant(&f, &g, 0).unwrap();
        let count = Ideal::new(2, vec![f, g]).quotient_dimension();
        if res.is_zero() {
            prop_assert_eq!(count, QuotientDim::Infinite);
        } else {
            prop_assert_eq!(count, QuotientDim::Finite(res.degree_in(1) as u64));
        }
    }

    #[test]
    fn groebner_count_is_permutation_invariant(a in dense(2, 2), b in poly(2, 2, 4), swap in any::<bool>()) {
        let gens = vec![a, b];
        let base = Ideal::new(2, gens.clone()).quotient_dimension();
        let mut reordered = gens.clone();
        reordered.reverse();
        prop_assert_eq!(Ideal::new(2, reordered).quotient_dimension(), base);
        if swap {
            let swapped: Vec<P> = gens.iter().map(|g| g.remap(&[1, 0], 2)).collect();
            prop_assert_eq!(Ideal::new(2, swapped).quotient_dimension(), base);
        }
    }

    #[test]
    fn theorem_is_bilinear(f in prop::collection::vec(-9i64..=9, 3), g in prop::collection::vec(-9i64..=9, 3), s in prop::collection::vec(0i64..=20, 3), t in prop::collection::vec(0i64..=20, 3)) {
        let deg = |f: &[i64], s: &[i64]| {
            let f: Vec<Entry> = f.iter().map(|&v| Entry::known(v, Provenance::User)).collect();
            degree_by_theorem(&f, &CuspidalNumbers::from_values(s, Provenance::User), Smoothness::Singular).unwrap()
        };
        let fg: Vec<i64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let st: Vec<i64> = s.iter().zip(&t).map(|(a, b)| a + b).collect();
        prop_assert_eq!(deg(&fg, &s), deg(&f, &s) + deg(&g, &s));
        prop_assert_eq!(deg(&f, &st), deg(&f, &s) + deg(&f, &t));
        prop_assert_eq!(degree_mod2(&f, &s).unwrap(), deg(&f, &s).rem_euclid(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn invariants_ignore_scalars(i in 0..EQUATIONS.len(), c in prop_oneof![-5i64..=-1, 2i64..=5]) {
        let src = EQUATIONS[i];
        prop_assert_eq!(invariants(&format!("{c}*({src})")), invariants(src));
    }

    #[test]
    fn invariants_add_over_products(i in 0..EQUATIONS.len(), j in 0..EQUATIONS.len()) {
        let (a, b) = (EQUATIONS[i], EQUATIONS[j]);
        let sum: Vec<Option<i64>> = invariants(a).iter().zip(invariants(b)).map(|(x, y)| Some(x.unwrap() + y.unwrap())).collect();
        for (got, want) in invariants(&format!("({a})*({b})")).into_iter().zip(sum) {
            if got.is_some() {
                prop_assert_eq!(got, want);
            }
        }
    }
}
