use crate::error::{Error, Result};

use super::field::Field;
use super::gcd::div_exact;
use super::polynomial::Polynomial;

/// Determinant of a square matrix of polynomials, fraction-free
/// (Bareiss elimination with exact divisions).
pub fn determinant<F: Field>(mut m: Vec<Vec<Polynomial<F>>>, nvars: usize) -> Polynomial<F> {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = div_exact(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester resultant of `p` and `q` with respect to variable `v`.
pub fn resultant<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>, v: usize) -> Result<Polynomial<F>> {
    let dp = p.degree_in(v) as usize;
    let dq = q.degree_in(v) as usize;
    if p.is_zero() || q.is_zero() || dp == 0 || dq == 0 {
        return Err(Error::Degenerate(format!("resultant needs positive degree in variable {v}")));
    }
    let nvars = p.nvars();
    let cp = p.coefficients_in(v);
    let cq = q.coefficients_in(v);
    let size = dp + dq;
    let mut m = vec![vec![Polynomial::zero(nvars); size]; size];
    for row in 0..dq {
        for (i, c) in cp.iter().rev().enumerate() {
            m[row][row + i] = c.clone();
        }
    }
    for row in 0..dp {
        for (i, c) in cq.iter().rev().enumerate() {
            m[dq + row][row + i] = c.clone();
        }
    }
    Ok(determinant(m, nvars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{rat, Rational};

    type P = Polynomial<Rational>;

    #[test]
    fn eliminates_by_substitution() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = x.pow(2) - P::constant(2, rat(2));
        let q = &x - &y;
        let r = resultant(&p, &q, 0).unwrap();
        assert_eq!(r.normalized(), (y.pow(2) - P::constant(2, rat(2))).normalized());
    }

    #[test]
    fn self_resultant_vanishes() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = x.pow(3) + y.pow(2) - P::one(2);
        assert!(resultant(&p, &p, 0).unwrap().is_zero());
    }

    #[test]
    fn constant_in_variable_rejected() {
        let y = P::var(2, 1);
        assert!(resultant(&y, &y, 0).is_err());
    }
}
