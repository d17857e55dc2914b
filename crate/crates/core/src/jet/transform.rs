//! Projective changes of reference on the plane and their prolongation to
//! jet coordinates of plane curves.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::gcd::strip_common_factors;
use crate::poly::ratfun::substitute;
use crate::poly::{Polynomial, Rational, RationalFunction};

use super::chart::JetChart;
use super::derivative::apply_total_derivative;

pub type Matrix3 = [[Rational; 3]; 3];

fn det3(m: &Matrix3) -> Rational {
    let t = |a: usize, b: usize, c: usize| m[0][a].clone() * (m[1][b].clone() * m[2][c].clone() - m[1][c].clone() * m[2][b].clone());
    t(0, 1, 2) - t(1, 0, 2) + t(2, 0, 1)
}

fn inverse3(m: &Matrix3) -> Option<Matrix3> {
    let d = det3(m);
    if d.is_zero() {
        return None;
    }
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone();
    // adjugate: inv[i][j] = cofactor(j, i) / det
    let cof = [
        [c(1, 2, 1, 2), -c(1, 2, 0, 2), c(1, 2, 0, 1)],
        [-c(0, 2, 1, 2), c(0, 2, 0, 2), -c(0, 2, 0, 1)],
        [c(0, 1, 1, 2), -c(0, 1, 0, 2), c(0, 1, 0, 1)],
    ];
    let mut inv: Matrix3 = Default::default();
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = cof[j][i].clone() / d.clone();
        }
    }
    Some(inv)
}

/// `a*u + b*v + c` in a ring of `nvars` variables whose first two are `u, v`.
fn affine_form(row: &[Rational; 3], nvars: usize) -> Polynomial<Rational> {
    &(&Polynomial::var(nvars, 0).scale(&row[0]) + &Polynomial::var(nvars, 1).scale(&row[1])) + &Polynomial::constant(nvars, row[2].clone())
}

/// A change of reference on the plane induced by an invertible 3×3 matrix
/// acting on homogeneous coordinates `(X : Y : Z)`, with `x = X/Z`,
/// `y = Y/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTransformation {
    matrix: Matrix3,
    inverse: Matrix3,
}

impl PointTransformation {
    pub fn from_matrix(matrix: Matrix3) -> Result<Self> {
        let inverse = inverse3(&matrix).ok_or_else(|| Error::DegenerateTransformation("singular matrix".into()))?;
        Ok(PointTransformation { matrix, inverse })
    }

    pub fn from_integers(m: [[i64; 3]; 3]) -> Result<Self> {
        let mut out: Matrix3 = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = Rational::from_integer(m[i][j].into());
            }
        }
        Self::from_matrix(out)
    }

    pub fn identity() -> Self {
        Self::from_integers([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    /// `x̃ = y`, `ỹ = x`.
    pub fn swap() -> Self {
        Self::from_integers([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap()
    }

    /// `x̃ = x/y`, `ỹ = 1/y`: brings the point `(0 : 1 : 0)` to the origin.
    pub fn reciprocal() -> Self {
        Self::from_integers([[1, 0, 0], [0, 0, 1], [0, 1, 0]]).unwrap()
    }

    /// `x̃ = y + a·x`, `ỹ = x`.
    pub fn shear(a: Rational) -> Self {
        let o = Rational::one;
        let z = Rational::zero;
        Self::from_matrix([[a, o(), z()], [o(), z(), z()], [z(), z(), o()]]).unwrap()
    }

    pub fn matrix(&self) -> &Matrix3 {
        &self.matrix
    }

    pub fn inverse(&self) -> Self {
        PointTransformation { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    fn maps(m: &Matrix3, nvars: usize) -> [RationalFunction<Rational>; 2] {
        let den = affine_form(&m[2], nvars);
        let f = |row: &[Rational; 3]| RationalFunction::new(affine_form(row, nvars), den.clone()).expect("nonzero denominator");
        [f(&m[0]), f(&m[1])]
    }

    /// `(x̃, ỹ)` as rational functions of `(x, y)`, placed in the first two
    /// variables of an `nvars`-variable ring.
    pub fn forward_maps(&self, nvars: usize) -> [RationalFunction<Rational>; 2] {
        Self::maps(&self.matrix, nvars)
    }

    /// `(x, y)` as rational functions of `(x̃, ỹ)`.
    pub fn inverse_maps(&self, nvars: usize) -> [RationalFunction<Rational>; 2] {
        Self::maps(&self.inverse, nvars)
    }

    /// Common denominator of the inverse maps, the old line at infinity in
    /// new coordinates.
    pub fn inverse_denominator(&self, nvars: usize) -> Polynomial<Rational> {
        affine_form(&self.inverse[2], nvars)
    }

    /// Image of a projective point.
    pub fn apply_projective(&self, p: &[Rational; 3]) -> [Rational; 3] {
        let mut out: [Rational; 3] = Default::default();
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).fold(Rational::zero(), |acc, j| acc + self.matrix[i][j].clone() * p[j].clone());
        }
        out
    }

    /// Image of an affine point, `None` when it is sent to infinity.
    pub fn apply(&self, x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
        let [a, b, c] = self.apply_projective(&[x.clone(), y.clone(), Rational::one()]);
        (!c.is_zero()).then(|| (a / c.clone(), b / c))
    }

    /// Checks `inverse ∘ forward = id` at the given affine points.
    pub fn round_trips(&self, points: &[(Rational, Rational)]) -> bool {
        let inv = self.inverse();
        points.iter().all(|(x, y)| match self.apply(x, y) {
            None => true,
            Some((u, v)) => inv.apply(&u, &v) == Some((x.clone(), y.clone())),
        })
    }

    /// Equations of a plane variety in the new reference: substitutes the
    /// inverse maps and clears the old line at infinity.
    pub fn transform_variety(&self, gens: &[Polynomial<Rational>]) -> Vec<Polynomial<Rational>> {
        let images = self.inverse_maps(2);
        let boundary = self.inverse_denominator(2);
        gens.iter()
            .map(|g| {
                let r = substitute(g, &images).expect("denominators are nonzero");
                strip_common_factors(r.num(), &boundary).normalized()
            })
            .collect()
    }
}

/// Rewrites a plane-curve equation `f` on `chart` in the reference given by
/// `t`. Returns the numerator of the substituted equation with every factor
/// shared with `D̃x` or with the inverse-map denominators removed, scaled to
/// content one with positive leading coefficient.
pub fn prolong_transformation(t: &PointTransformation, chart: &JetChart, f: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
    if !chart.is_plane_curve() {
        return Err(Error::Bounds("chart transformations need n = 2, k = 1".into()));
    }
    let r = chart.r();
    let big = chart.with_order(r + 1);
    let nv = big.nvars();
    let d = |p: &Polynomial<Rational>| apply_total_derivative(&big, p, 1);
    let [x_img, y_img] = t.inverse_maps(nv);
    let dx = x_img.derive_with(d);
    if dx.is_zero() {
        return Err(Error::DegenerateTransformation("total derivative of x vanishes".into()));
    }
    let mut images = vec![x_img.clone(), y_img.clone()];
    let mut prev = y_img.clone();
    for _ in 1..=r {
        let next = prev.derive_with(d).div(&dx)?;
        images.push(next.clone());
        prev = next;
    }
    images.push(RationalFunction::from_poly(Polynomial::var(nv, nv - 1)));
    let sub = substitute(&f.extend(nv), &images)?;
    let boundary = &(dx.num() * x_img.den()) * y_img.den();
    let stripped = strip_common_factors(sub.num(), &boundary);
    Ok(stripped.truncate(chart.nvars()).expect("no coordinate above the chart order").normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    type P = Polynomial<Rational>;

    fn chart(r: usize) -> JetChart {
        JetChart::new(2, 1, r).unwrap()
    }

    #[test]
    fn cubic_under_reciprocal() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let s = x.pow(3) + y.pow(2) - P::one(2);
        let out = PointTransformation::reciprocal().transform_variety(&[s]);
        assert_eq!(out[0].to_text(&chart(0).names()), "x^3 - y^3 + y");
    }

    #[test]
    fn slope_under_reciprocal() {
        let c = chart(1);
        let f = P::var(c.nvars(), 2);
        let g = prolong_transformation(&PointTransformation::reciprocal(), &c, &f).unwrap();
        assert_eq!(g.to_text(&c.names()), "y'");
    }

    #[test]
    fn second_derivative_under_reciprocal() {
        let c = chart(2);
        let f = P::var(c.nvars(), 3);
        let g = prolong_transformation(&PointTransformation::reciprocal(), &c, &f).unwrap();
        assert_eq!(g.to_text(&c.names()), "y''");
    }

    #[test]
    fn swap_inverts_slope() {
        let c = chart(1);
        let f = &P::var(c.nvars(), 2) - &P::constant(c.nvars(), rat(5));
        let g = prolong_transformation(&PointTransformation::swap(), &c, &f).unwrap();
        assert_eq!(g.to_text(&c.names()), "5*y' - 1");
    }

    #[test]
    fn identity_is_neutral() {
        let c = chart(2);
        let names = c.names();
        let f = &(&P::var(c.nvars(), 0) * &P::var(c.nvars(), 3)) + &P::var(c.nvars(), 2).pow(2);
        let g = prolong_transformation(&PointTransformation::identity(), &c, &f).unwrap();
        assert_eq!(g.to_text(&names), f.to_text(&names));
    }

    #[test]
    fn matrix_inverse_round_trips() {
        let t = PointTransformation::from_integers([[2, 1, 0], [0, 1, 3], [1, 0, 1]]).unwrap();
        let pts = vec![(rat(1), rat(2)), (ratio(1, 3), rat(-4)), (rat(0), rat(0))];
        assert!(t.round_trips(&pts));
        assert!(PointTransformation::from_integers([[1, 1, 0], [1, 1, 0], [0, 0, 1]]).is_err());
    }
}
