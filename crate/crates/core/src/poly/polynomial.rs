use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};

/// Sparse multivariate polynomial over a field `F`.
///
/// Terms are kept in a map with no zero coefficients, so two equal
/// polynomials always have identical term maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable index {v} out of range for {nvars} variables");
        Self::term(Monomial::var(nvars, v), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated terms, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> F {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(F::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `v` (zero for the zero polynomial).
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn has_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Indices of variables occurring in the polynomial.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.has_var(v)).collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_coefficient(&self, order: MonomialOrder) -> F {
        self.leading_term(order).map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; fails if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (t, a) in &self.terms {
            let q = t.div(m).ok_or(Error::NotDivisible)?;
            terms.insert(q, a.clone());
        }
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Result<Self> {
        if v >= self.nvars {
            return Err(Error::UnknownVariable(format!("#{v}")));
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps_mut()[v] -= 1;
            out.add_term(dm, c.clone() * F::from_i64(e as i64));
        }
        Ok(out)
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t * point[v].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Sets every variable not selected by `keep` to zero.
    pub fn restrict_to(&self, keep: impl Fn(usize) -> bool) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponents().iter().enumerate().all(|(v, &e)| e == 0 || keep(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes a constant for variable `v`.
    pub fn specialize(&self, v: usize, value: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let mut mm = m.clone();
            mm.exps_mut()[v] = 0;
            let mut cc = c.clone();
            for _ in 0..e {
                cc = cc * value.clone();
            }
            out.add_term(mm, cc);
        }
        out
    }

    /// Re-embeds into a ring with `new_nvars` variables, sending variable
    /// `i` to `map[i]`.
    pub fn remap(&self, map: &[usize], new_nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// Appends variables at the end of the ambient list.
    pub fn extend(&self, new_nvars: usize) -> Self {
        assert!(new_nvars >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(&map, new_nvars)
    }

    /// Drops trailing variables, which must not occur.
    pub fn truncate(&self, new_nvars: usize) -> Result<Self> {
        if (new_nvars..self.nvars).any(|v| self.has_var(v)) {
            return Err(Error::Bounds("polynomial uses variables beyond the target ring".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::from_exponents(m.exponents()[..new_nvars].to_vec()), c.clone()))
            .collect();
        Ok(Polynomial { nvars: new_nvars, terms })
    }

    /// Coefficients as a univariate polynomial in `v`; entry `i` is the
    /// coefficient of `v^i` (a polynomial free of `v`).
    pub fn coefficients_in(&self, v: usize) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        if self.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            let mut mm = m.clone();
            mm.exps_mut()[v] = 0;
            out[e].add_term(mm, c.clone());
        }
        out
    }

    /// Substitutes polynomial `images[v]` for each variable `v`. All images
    /// share one target ring.
    pub fn compose(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[v].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Homogenization with a new last variable.
    pub fn homogenize(&self) -> Self {
        let d = self.total_degree().unwrap_or(0);
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            e.push(d - m.degree());
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    /// Canonical associate: divided by the field normalizer of its
    /// coefficients, leading coefficient taken in lex order.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<&F> = self.terms.values().rev().collect();
        let c = F::normalizer(&coeffs);
        let inv = c.inv().expect("normalizer is nonzero");
        self.scale(&inv)
    }

    /// Divided by its lex leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Writes the polynomial with the given variable names. Terms appear in
    /// descending grevlex order; powers are written with `^`.
    pub fn to_text(&self, names: &[String]) -> String {
        assert!(names.len() >= self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b.0, a.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { names[v].clone() } else { format!("{}^{}", names[v], e) })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Text form with default names `v0, v1, ...`.
    pub fn to_text_default(&self) -> String {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        self.to_text(&names)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text_default())
    }
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable lists differ");
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<F: Field> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{rat, Rational};

    type P = Polynomial<Rational>;

    fn x() -> P {
        P::var(2, 0)
    }
    fn y() -> P {
        P::var(2, 1)
    }
    fn c(v: i64) -> P {
        P::constant(2, rat(v))
    }

    #[test]
    fn difference_of_squares() {
        let lhs = (&x() + &y()) * (&x() - &y());
        let rhs = x().pow(2) - y().pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let p = x().pow(3) + y().pow(2) - c(1);
        assert_eq!(&p + &P::zero(2), p);
        assert!((&p * &c(1) - p.clone()).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        let p = x().pow(3) + y().pow(2);
        assert_eq!(p.derivative(0).unwrap(), c(3) * x().pow(2));
        assert_eq!(p.derivative(1).unwrap(), c(2) * y());
        assert!(c(7).derivative(0).unwrap().is_zero());
        assert!(matches!(p.derivative(5), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn monomial_division() {
        let p = x().pow(2) * y() + x() * y().pow(3);
        let m = Monomial::from_exponents(vec![1, 1]);
        assert_eq!(p.div_monomial(&m).unwrap(), x() + y().pow(2));
        let q = x() + c(1);
        assert_eq!(q.div_monomial(&m), Err(Error::NotDivisible));
    }

    #[test]
    fn text_form() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = x().pow(3) + y().pow(2) - c(1);
        assert_eq!(p.to_text(&names), "x^3 + y^2 - 1");
        let q = c(-2) * x() * y() + P::constant(2, crate::poly::field::ratio(1, 2));
        assert_eq!(q.to_text(&names), "-2*x*y + 1/2");
    }

    #[test]
    fn normalization_is_primitive_positive() {
        let p = c(-4) * x() + c(6);
        assert_eq!(p.normalized(), c(2) * x() - c(3));
    }
}
