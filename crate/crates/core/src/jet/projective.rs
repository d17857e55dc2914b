//! Projective changes of reference on `P^n` and their prolongation to the
//! jet coordinates of any chart `(n, k, r)`.
//!
//! Old jets are rational functions of the new ones with denominators that
//! are powers of two known polynomials: the form `L` cutting out the old
//! hyperplane at infinity, and `Δ = det P`, where `P / L²` is the matrix
//! `D̃_i x_a` of total derivatives of the old independent coordinates.
//! Tracking these powers avoids rational-function arithmetic until the
//! final factor stripping.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::gcd::strip_common_factors;
use crate::poly::linalg::{solve, Solution};
use crate::poly::resultant::determinant;
use crate::poly::{Polynomial, Rational};

use super::chart::{JetChart, JetVar};
use super::derivative::apply_total_derivative;

type P = Polynomial<Rational>;

/// An invertible `(n+1) × (n+1)` matrix acting on homogeneous coordinates
/// `(X_1 : … : X_n : Z)` of `P^n`, where the affine coordinates are
/// `x_1..x_k, y_1..y_{n-k}` divided by `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap {
    n: usize,
    matrix: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl ProjectiveMap {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let size = matrix.len();
        if size < 2 || matrix.iter().any(|row| row.len() != size) {
            return Err(Error::DegenerateTransformation("matrix must be square of size at least 2".into()));
        }
        let mut columns = Vec::with_capacity(size);
        for c in 0..size {
            let e: Vec<Rational> = (0..size).map(|i| if i == c { Rational::one() } else { Rational::zero() }).collect();
            match solve(&matrix, &e) {
                Solution::Unique(col) => columns.push(col),
                _ => return Err(Error::DegenerateTransformation("singular matrix".into())),
            }
        }
        let inverse = (0..size).map(|i| (0..size).map(|j| columns[j][i].clone()).collect()).collect();
        Ok(ProjectiveMap { n: size - 1, matrix, inverse })
    }

    /// The map sending homogeneous coordinate `perm[i]` to position `i`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let size = perm.len();
        let mut m = vec![vec![Rational::zero(); size]; size];
        for (i, &p) in perm.iter().enumerate() {
            if p >= size {
                return Err(Error::DegenerateTransformation(format!("index {p} out of range")));
            }
            m[i][p] = Rational::one();
        }
        Self::new(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// The old homogeneous coordinates as linear forms in the new affine
    /// coordinates, which are the first `n` of `nvars` variables. The last
    /// entry is `L`, the old `Z`.
    pub fn inverse_forms(&self, nvars: usize) -> Vec<P> {
        self.inverse
            .iter()
            .map(|row| {
                let mut p = P::constant(nvars, row[self.n].clone());
                for (v, c) in row[..self.n].iter().enumerate() {
                    p = &p + &P::var(nvars, v).scale(c);
                }
                p
            })
            .collect()
    }

    /// A polynomial in the old affine coordinates rewritten in the new ones,
    /// with every factor of `L` removed.
    pub fn transform_polynomial(&self, g: &P) -> P {
        assert_eq!(g.nvars(), self.n);
        let forms = self.inverse_forms(self.n);
        let out = g.homogenize().compose(&forms);
        strip_common_factors(&out, &forms[self.n]).normalized()
    }

    /// Rewrites an equation `f` on `chart` in the new reference: the
    /// numerator of the substituted equation with all factors shared with
    /// `L` or `Δ` removed.
    pub fn prolong(&self, chart: &JetChart, f: &P) -> Result<P> {
        if chart.n() != self.n {
            return Err(Error::Bounds(format!("chart dimension {} does not match the map on P^{}", chart.n(), self.n)));
        }
        let nv = chart.nvars();
        let k = chart.k();
        let forms = self.inverse_forms(nv);
        let l = forms[self.n].clone();
        let d = |p: &P, i: usize| apply_total_derivative(chart, p, i);
        // T(g)_i = D_i(g) L - g D_i(L), so D_i(g / L) = T(g)_i / L²
        let t = |g: &P, i: usize| &(&d(g, i) * &l) - &(g * &d(&l, i));
        let pm: Vec<Vec<P>> = (0..k).map(|a| (1..=k).map(|i| t(&forms[a], i)).collect()).collect();
        let delta = determinant(pm.clone(), nv);
        if delta.is_zero() {
            return Err(Error::DegenerateTransformation("the independent coordinates are dependent on the new chart".into()));
        }
        // adj[i][a] = (-1)^(a+i) det(P without row a and column i)
        let adj: Vec<Vec<P>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|a| {
                        let minor: Vec<Vec<P>> = (0..k).filter(|&r| r != a).map(|r| (0..k).filter(|&c| c != i).map(|c| pm[r][c].clone()).collect()).collect();
                        let m = determinant(minor, nv);
                        if (a + i) % 2 == 1 {
                            -m
                        } else {
                            m
                        }
                    })
                    .collect()
            })
            .collect();
        let l2 = l.pow(2);
        let d_delta: Vec<P> = if chart.r() >= 2 { (1..=k).map(|i| d(&delta, i)).collect() } else { Vec::new() };

        // images: numerator, power of L, power of Δ
        let mut images: Vec<(P, u32, u32)> = Vec::with_capacity(nv);
        for v in 0..chart.base_len() {
            images.push((forms[v].clone(), 1, 0));
        }
        for v in chart.base_len()..nv {
            let JetVar::Jet(idx) = chart.var(v) else { unreachable!("jets follow the base coordinates") };
            let (&a, prefix) = idx.alpha.split_last().expect("jets have order at least one");
            let a = a - 1;
            let num = if prefix.is_empty() {
                let yj = &forms[k + idx.j - 1];
                (0..k).fold(P::zero(nv), |acc, i| &acc + &(&t(yj, i + 1) * &adj[i][a]))
            } else {
                let parent = chart.jet(idx.j, prefix).expect("lower orders precede");
                let (np, _, e) = images[parent].clone();
                let e_poly = P::constant(nv, Rational::from_integer(e.into()));
                let sum = (0..k).fold(P::zero(nv), |acc, i| {
                    let di = &(&d(&np, i + 1) * &delta) - &(&(&np * &d_delta[i]) * &e_poly);
                    &acc + &(&di * &adj[i][a])
                });
                &l2 * &sum
            };
            let e = 2 * idx.order() as u32 - 1;
            images.push((num, 0, e));
        }

        let mut max_l = 0;
        let mut max_d = 0;
        for (m, _) in f.terms() {
            let (a, b) = weights(m.exponents(), &images);
            max_l = max_l.max(a);
            max_d = max_d.max(b);
        }
        let mut powers: HashMap<(usize, u32), P> = HashMap::new();
        let mut pow_of = |v: usize, e: u32, base: &P| powers.entry((v, e)).or_insert_with(|| base.pow(e)).clone();
        let mut num = P::zero(nv);
        for (m, c) in f.terms() {
            let (a, b) = weights(m.exponents(), &images);
            let mut term = P::constant(nv, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &pow_of(v, e, &images[v].0);
                }
            }
            if max_l > a {
                term = &term * &pow_of(usize::MAX, max_l - a, &l);
            }
            if max_d > b {
                term = &term * &pow_of(usize::MAX - 1, max_d - b, &delta);
            }
            num = &num + &term;
        }
        if num.is_zero() {
            return Err(Error::DegenerateTransformation("the equation vanishes identically in the new reference".into()));
        }
        let stripped = strip_common_factors(&strip_common_factors(&num, &l), &delta);
        Ok(stripped.normalized())
    }
}

fn weights(exps: &[u32], images: &[(P, u32, u32)]) -> (u32, u32) {
    exps.iter().zip(images).fold((0, 0), |(a, b), (&e, img)| (a + e * img.1, b + e * img.2))
}
