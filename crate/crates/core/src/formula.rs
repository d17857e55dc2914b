//! Closed formulas for `deg S(f)` in terms of the two invariant vectors.

use serde::{Deserialize, Serialize};

use crate::equation::{DifferentialEquation, Entry};
use crate::error::{Error, Result};
use crate::invariants::{compute_invariants, Coefficients};
use crate::jet::JetChart;
use crate::parse::parse_expression;
use crate::poly::resultant::determinant;
use crate::poly::{Polynomial, Rational};
use crate::variety::{CuspidalNumbers, Smoothness};

/// `Σ_s γ^f_s γ^s_S`. The cuspidal vector is padded by `smoothness`;
/// an unknown entry is fatal only when its partner is nonzero.
pub fn degree_by_theorem(gamma_f: &[Entry], gamma_s: &CuspidalNumbers, smoothness: Smoothness) -> Result<i64> {
    let padded = gamma_s.padded(gamma_f.len(), smoothness);
    let mut total = 0i64;
    for (s, (a, b)) in gamma_f.iter().zip(&padded.entries).enumerate() {
        match (a.value, b.value) {
            (Some(x), Some(y)) => total += x * y,
            (Some(0), None) | (None, Some(0)) => {}
            _ => return Err(Error::UnknownEntryNeeded(s)),
        }
    }
    Ok(total)
}

/// `γ_0 d + γ_1 (2g - 2 + 2d)`, or `γ_0 d + γ_1 d(d - 1)` for sections
/// that are plane curves.
pub fn degree_smooth(gamma_f: &[i64], d: i64, genus: Option<i64>, hypersurface: bool) -> Result<i64> {
    let g0 = gamma_f.first().copied().unwrap_or(0);
    let g1 = gamma_f.get(1).copied().unwrap_or(0);
    let class = if hypersurface {
        d * (d - 1)
    } else {
        2 * genus.ok_or(Error::MissingGenus)? - 2 + 2 * d
    };
    Ok(g0 * d + g1 * class)
}

/// Degree of the divisor of parabolic points of a hypersurface of `P^n`.
pub fn parabolic_degree(n: i64, gamma_s: &[i64]) -> Result<i64> {
    if gamma_s.len() < 3 {
        return Err(Error::Bounds("parabolic degree needs γ^0, γ^1 and γ^2".into()));
    }
    Ok(-(n + 1) * gamma_s[0] + (n + 1) * gamma_s[1] + (n - 1) * gamma_s[2])
}

/// Shortcut for a smooth hypersurface of degree `d`.
pub fn parabolic_degree_smooth(n: i64, d: i64) -> i64 {
    (n + 1) * d * (d - 2)
}

/// Bezout degree of `F^h = 0` against the determinant of the homogeneous
/// Hessian of `F^h`; an independent check of the parabolic degree of a
/// smooth hypersurface given by its affine equation.
pub fn hessian_bezout(f: &Polynomial<Rational>) -> Result<i64> {
    let fh = f.homogenize();
    let nv = fh.nvars();
    let d = fh.total_degree().ok_or(Error::Degenerate("zero polynomial".into()))? as i64;
    let hess: Vec<Vec<Polynomial<Rational>>> = (0..nv).map(|i| (0..nv).map(|j| fh.derivative(i).and_then(|p| p.derivative(j))).collect::<Result<_>>()).collect::<Result<_>>()?;
    let det = determinant(hess, nv);
    if det.is_zero() {
        return Err(Error::Degenerate("the Hessian determinant vanishes identically".into()));
    }
    Ok(d * det.total_degree().unwrap_or(0) as i64)
}

/// `Σ_s γ^f_s γ^s_S` reduced mod 2; lengths must agree.
pub fn degree_mod2(gamma_f: &[i64], gamma_s: &[i64]) -> Result<i64> {
    if gamma_f.len() != gamma_s.len() {
        return Err(Error::Bounds(format!("vectors of lengths {} and {}", gamma_f.len(), gamma_s.len())));
    }
    Ok(gamma_f.iter().zip(gamma_s).map(|(a, b)| a.rem_euclid(2) * b.rem_euclid(2)).sum::<i64>().rem_euclid(2))
}

/// `(y_11 - y_22)^2 + 4 y_12^2` on surfaces of `P^3`.
pub fn umbilical_equation() -> DifferentialEquation {
    let c = JetChart::new(3, 2, 2).expect("valid chart");
    let f = parse_expression("(y1_11 - y1_22)^2 + 4*y1_12^2", &c).expect("valid expression");
    DifferentialEquation::new(&c, f).expect("nonconstant")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parity {
    pub gamma_f: Vec<i64>,
    pub parity: i64,
}

/// Parity of the number of umbilical points of a real surface with
/// cuspidal numbers `gamma_s` (padded or truncated to three entries). The
/// invariants of the umbilical equation are calibrated mod 2.
pub fn umbilical_parity(gamma_s: &[i64], seed: u64) -> Result<Parity> {
    let report = compute_invariants(&umbilical_equation(), &[], Coefficients::Mod2, seed)?;
    let gamma_f = report.invariants.values().ok_or(Error::SingularSystem)?;
    let mut s = gamma_s.to_vec();
    s.resize(gamma_f.len(), 0);
    let parity = degree_mod2(&gamma_f, &s)?;
    Ok(Parity { gamma_f, parity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::Provenance;
    use crate::variety::CuspidalNumbers;

    fn known(v: &[i64]) -> Vec<Entry> {
        v.iter().map(|&x| Entry::known(x, Provenance::User)).collect()
    }

    #[test]
    fn theorem_examples() {
        let s = CuspidalNumbers::from_values(&[3, 6], Provenance::Formula);
        assert_eq!(degree_by_theorem(&known(&[-3, 3, 1]), &s, Smoothness::Smooth), Ok(9));
        let t = CuspidalNumbers::from_values(&[3, 3, 1], Provenance::Measured);
        assert_eq!(degree_by_theorem(&known(&[-3, 3, 1]), &t, Smoothness::Singular), Ok(1));
        assert_eq!(degree_by_theorem(&known(&[0, 0, 0]), &t, Smoothness::Singular), Ok(0));
    }

    #[test]
    fn unknown_entries() {
        let t = CuspidalNumbers::from_values(&[3, 3], Provenance::Measured);
        assert_eq!(degree_by_theorem(&known(&[-3, 3, 1]), &t, Smoothness::Unknown), Err(Error::UnknownEntryNeeded(2)));
        assert_eq!(degree_by_theorem(&known(&[0, 1, 0]), &t, Smoothness::Unknown), Ok(3));
        let mut f = known(&[-3, 3, 1]);
        f[1] = Entry::unknown();
        let s = CuspidalNumbers::from_values(&[3, 0], Provenance::User);
        assert_eq!(degree_by_theorem(&f, &s, Smoothness::Smooth), Ok(-9));
    }

    #[test]
    fn smooth_corollary() {
        assert_eq!(degree_smooth(&[-3, 3], 3, None, true), Ok(9));
        assert_eq!(degree_smooth(&[0, 1], 2, None, true), Ok(2));
        assert_eq!(degree_smooth(&[0, 0], 5, None, true), Ok(0));
        assert_eq!(degree_smooth(&[0, 1], 3, Some(0), false), Ok(4));
        assert_eq!(degree_smooth(&[0, 1], 3, None, false), Err(Error::MissingGenus));
    }

    #[test]
    fn parabolic() {
        assert_eq!(parabolic_degree_smooth(3, 3), 12);
        for n in 2..6 {
            assert_eq!(parabolic_degree_smooth(n, 2), 0);
            assert_eq!(parabolic_degree(n, &[3, 6, 0]), Ok(3 * (n + 1)));
        }
    }

    #[test]
    fn bezout_cross_check() {
        let c = JetChart::new(3, 2, 0).unwrap();
        for (src, d) in [("x1^2 + x2^2 + y1^2 - 1", 2), ("x1^3 + x2^3 + y1^3 - 1", 3), ("x1^4 + x2^4 + y1^4 - 1", 4)] {
            let f = parse_expression(src, &c).unwrap();
            assert_eq!(hessian_bezout(&f), Ok(parabolic_degree_smooth(3, d)), "{src}");
        }
    }

    #[test]
    fn mod2() {
        assert_eq!(degree_mod2(&[1, 0], &[1, 1]), Ok(1));
        assert_eq!(degree_mod2(&[-3, 3, 1], &[3, 6, 0]), Ok(1));
        assert_eq!(degree_mod2(&[0, 0, 0], &[5, 7, 3]), Ok(0));
    }

    #[test]
    fn umbilical_points_are_even() {
        let out = umbilical_parity(&[3, 3, 1], 11).unwrap();
        assert_eq!(out.gamma_f, vec![0, 0, 0]);
        assert_eq!(out.parity, 0);
    }
}
