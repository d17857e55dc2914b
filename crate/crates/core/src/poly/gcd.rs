//! Exact division and greatest common divisors of multivariate polynomials.
//!
//! The gcd is the recursive primitive polynomial remainder sequence: the
//! main variable is the highest-indexed one present, contents are computed
//! recursively in the remaining variables.

use crate::error::{Error, Result};

use super::field::Field;
use super::monomial::MonomialOrder;
use super::polynomial::Polynomial;

/// Exact quotient `a / b`; fails if `b` does not divide `a`.
pub fn div_exact<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let order = MonomialOrder::Lex;
    let (lm_b, lc_b) = b.leading_term(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let lc_inv = lc_b.inv().expect("nonzero leading coefficient");
    let mut rem = a.clone();
    let mut quot = Polynomial::zero(a.nvars());
    while let Some((m, c)) = rem.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let q = m.div(&lm_b).ok_or(Error::NotDivisible)?;
        let coef = c * lc_inv.clone();
        rem = &rem - &b.mul_term(&q, &coef);
        quot = &quot + &Polynomial::term(q, coef);
    }
    Ok(quot)
}

/// Whether `b` divides `a`.
pub fn divides<F: Field>(b: &Polynomial<F>, a: &Polynomial<F>) -> bool {
    div_exact(a, b).is_ok()
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
pub fn pseudo_remainder<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let db = b.degree_in(v);
    let cb = b.coefficients_in(v);
    let lc_b = cb[db as usize].clone();
    let nv = a.nvars();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lc_r = r.coefficients_in(v)[dr as usize].clone();
        let shift = Polynomial::var(nv, v).pow(dr - db);
        r = &(&lc_b * &r) - &(&(&lc_r * &shift) * b);
    }
    r
}

/// Greatest common divisor, normalized (see [`Polynomial::normalized`]).
/// `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let nv = a.nvars();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(nv);
    }
    let main = (0..nv).rev().find(|&v| a.has_var(v) || b.has_var(v)).unwrap();
    if !a.has_var(main) {
        return gcd(a, &content(b, main));
    }
    if !b.has_var(main) {
        return gcd(&content(a, main), b);
    }
    let ca = content(a, main);
    let cb = content(b, main);
    let g_content = gcd(&ca, &cb);
    let mut r0 = div_exact(a, &ca).expect("content divides");
    let mut r1 = div_exact(b, &cb).expect("content divides");
    if r0.degree_in(main) < r1.degree_in(main) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = pseudo_remainder(&r0, &r1, main);
        if r.is_zero() {
            break;
        }
        if r.degree_in(main) == 0 {
            return g_content.normalized();
        }
        let pr = primitive_part(&r, main);
        r0 = r1;
        r1 = pr;
    }
    (&g_content * &primitive_part(&r1, main)).normalized()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let mut g = Polynomial::zero(p.nvars());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Polynomial::one(p.nvars());
        }
    }
    g
}

pub fn primitive_part<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    if p.is_zero() {
        return p.clone();
    }
    div_exact(p, &content(p, v)).expect("content divides").normalized()
}

/// Removes from `p` every irreducible factor it shares with `b`, with full
/// multiplicity.
pub fn strip_common_factors<F: Field>(p: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let mut out = p.clone();
    if b.is_zero() || b.is_constant() {
        return out;
    }
    loop {
        let g = gcd(&out, b);
        if g.is_constant() {
            return out;
        }
        out = div_exact(&out, &g).expect("gcd divides");
    }
}

/// Square-free decomposition of a univariate polynomial in variable `v`
/// (characteristic zero): returns `(factor, multiplicity)` pairs with
/// pairwise coprime square-free factors. Yun's algorithm.
pub fn square_free_decomposition<F: Field>(p: &Polynomial<F>, v: usize) -> Vec<(Polynomial<F>, u32)> {
    let mut out = Vec::new();
    if p.is_zero() || p.degree_in(v) == 0 {
        return out;
    }
    let dp = p.derivative(v).expect("variable in range");
    let a0 = gcd(p, &dp);
    let mut b = div_exact(p, &a0).expect("gcd divides");
    let mut c = div_exact(&dp, &a0).expect("gcd divides");
    let mut d = &c - &b.derivative(v).unwrap();
    let mut i = 1;
    while b.degree_in(v) > 0 {
        let a = gcd(&b, &d);
        if a.degree_in(v) > 0 {
            out.push((a.clone(), i));
        }
        b = div_exact(&b, &a).expect("gcd divides");
        c = div_exact(&d, &a).expect("gcd divides");
        d = &c - &b.derivative(v).unwrap();
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{rat, Rational};

    type P = Polynomial<Rational>;

    fn v(i: usize) -> P {
        P::var(3, i)
    }
    fn c(k: i64) -> P {
        P::constant(3, rat(k))
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = &v(0) * &v(1) + c(1);
        let a = &g * &(v(0).pow(2) - v(2));
        let b = &g * &(&v(1) + &(&v(2) * &v(0)));
        assert_eq!(gcd(&a, &b), g.normalized());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = v(0).pow(2) + v(1).pow(2) - c(1);
        let b = &v(0) - &v(1);
        assert_eq!(gcd(&a, &b), P::one(3));
    }

    #[test]
    fn gcd_with_powers() {
        let f = &v(0) + &v(1);
        let a = f.pow(3) * v(2);
        let b = f.pow(2) * (&v(2) + &c(1));
        assert_eq!(gcd(&a, &b), f.pow(2).normalized());
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = v(0).pow(2) - v(1).pow(2);
        let b = &v(0) - &v(1);
        assert_eq!(div_exact(&a, &b).unwrap(), &v(0) + &v(1));
        assert_eq!(div_exact(&(&a + &c(1)), &b), Err(Error::NotDivisible));
    }

    #[test]
    fn strip_removes_all_multiplicity() {
        let b = &v(0) * &v(1);
        let p = v(0).pow(3) * v(1) * (&v(2) + &c(2));
        assert_eq!(strip_common_factors(&p, &b), &v(2) + &c(2));
    }

    #[test]
    fn yun_decomposition() {
        let x = P::var(1, 0);
        let one = P::one(1);
        let p = (&x - &one) * (&x + &one).pow(2) * x.pow(3);
        let sqf = square_free_decomposition(&p, 0);
        let total: u32 = sqf.iter().map(|(f, m)| f.degree_in(0) * m).sum();
        assert_eq!(total, 6);
        let mults: Vec<u32> = sqf.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }
}
