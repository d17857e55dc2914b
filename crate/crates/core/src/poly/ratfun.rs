use crate::error::{Error, Result};

use super::field::Field;
use super::gcd::{div_exact, gcd};
use super::polynomial::Polynomial;

/// A quotient of polynomials kept in lowest terms: numerator and
/// denominator are coprime and the denominator is normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nv = num.nvars();
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Polynomial::one(nv) });
        }
        let g = gcd(&num, &den);
        let mut n = div_exact(&num, &g).expect("gcd divides");
        let mut d = div_exact(&den, &g).expect("gcd divides");
        // move the scalar of the denominator into the numerator
        let dn = d.normalized();
        if !d.is_zero() {
            let (m, c) = d.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
            let c_norm = dn.coefficient(&m);
            // d = k * dn with k = c / c_norm, so n / d = (n / k) / dn
            n = n.scale(&c_norm.div(&c));
            d = dn;
        }
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        let nv = p.nvars();
        RationalFunction { num: p, den: Polynomial::one(nv) }
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// Applies a derivation `d` given on polynomials (quotient rule).
    pub fn derive_with(&self, d: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        let dn = d(&self.num);
        let dd = d(&self.den);
        Self::new(&(&dn * &self.den) - &(&self.num * &dd), self.den.pow(2)).expect("nonzero")
    }

    pub fn eval(&self, point: &[F]) -> Option<F> {
        let d = self.den.eval(point);
        d.inv().map(|inv| self.num.eval(point) * inv)
    }

    /// Re-embeds numerator and denominator into a larger ring.
    pub fn extend(&self, nvars: usize) -> Self {
        RationalFunction { num: self.num.extend(nvars), den: self.den.extend(nvars) }
    }
}

/// Substitutes `images[v]` for every variable `v` of `p`. All images live
/// in a common target ring. The result is a coprime numerator/denominator
/// pair.
pub fn substitute<F: Field>(p: &Polynomial<F>, images: &[RationalFunction<F>]) -> Result<RationalFunction<F>> {
    assert_eq!(images.len(), p.nvars(), "one image per variable");
    let target = images.first().map(|r| r.nvars()).unwrap_or(0);
    // common denominator: product of den_v^(max exponent of v)
    let max_exp: Vec<u32> = (0..p.nvars()).map(|v| p.degree_in(v)).collect();
    let mut common = Polynomial::one(target);
    for (v, &e) in max_exp.iter().enumerate() {
        if e > 0 {
            common = &common * &images[v].den.pow(e);
        }
    }
    let mut num_pows: Vec<Vec<Polynomial<F>>> = Vec::with_capacity(p.nvars());
    let mut den_pows: Vec<Vec<Polynomial<F>>> = Vec::with_capacity(p.nvars());
    for (v, &e) in max_exp.iter().enumerate() {
        let mut np = vec![Polynomial::one(target)];
        let mut dp = vec![Polynomial::one(target)];
        for i in 1..=e as usize {
            np.push(&np[i - 1] * &images[v].num);
            dp.push(&dp[i - 1] * &images[v].den);
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut numerator = Polynomial::zero(target);
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(target, c.clone());
        for (v, &e) in m.exponents().iter().enumerate() {
            let e = e as usize;
            let max = max_exp[v] as usize;
            if e > 0 {
                t = &t * &num_pows[v][e];
            }
            if max > e {
                t = &t * &den_pows[v][max - e];
            }
        }
        numerator = &numerator + &t;
    }
    RationalFunction::new(numerator, common)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{rat, Rational};

    type P = Polynomial<Rational>;

    #[test]
    fn reciprocal_substitution() {
        // y' -> 1/y' applied to f = y'
        let t = P::var(1, 0);
        let f = t.clone();
        let img = RationalFunction::new(P::one(1), t.clone()).unwrap();
        let r = substitute(&f, &[img]).unwrap();
        assert_eq!(r.num(), &P::one(1));
        assert_eq!(r.den(), &t);
    }

    #[test]
    fn identity_substitution() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.pow(3) + y.pow(2) - P::one(2);
        let imgs = vec![RationalFunction::from_poly(x), RationalFunction::from_poly(y)];
        let r = substitute(&f, &imgs).unwrap();
        assert_eq!(r.num(), &f);
        assert_eq!(r.den(), &P::one(2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(P::one(1), P::zero(1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn lowest_terms() {
        let x = P::var(1, 0);
        let r = RationalFunction::new(x.pow(2).scale(&rat(2)), x.scale(&rat(4))).unwrap();
        assert_eq!(r.num(), &x.scale(&crate::poly::field::ratio(1, 2)));
        assert_eq!(r.den(), &P::one(1));
    }
}
