//! Buchberger's algorithm with the product and chain criteria, reduced
//! bases, and the ideal-theoretic operations built on them: quotient
//! dimension, elimination, intersection, quotient and saturation.
//!
//! Internally the computation is fraction-free: polynomials carry integral
//! coefficients (see [`Integral`]) and their content is removed after every
//! reduction step. Pairs are selected by sugar degree.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::field::{Field, Integral};
use super::gcd::div_exact;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;

type Terms<C> = Vec<(Monomial, C)>;

fn integral_terms<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> (Terms<F::Integral>, F) {
    let mut t: Vec<(&Monomial, &F)> = p.terms().collect();
    t.sort_by(|a, b| order.cmp(b.0, a.0));
    let coeffs: Vec<&F> = t.iter().map(|x| x.1).collect();
    let (ints, scale) = F::clear_denominators(&coeffs);
    (t.into_iter().map(|x| x.0.clone()).zip(ints).collect(), scale)
}

fn to_poly<F: Field>(nvars: usize, t: &[(Monomial, F::Integral)]) -> Polynomial<F> {
    Polynomial::from_terms(nvars, t.iter().map(|(m, c)| (m.clone(), F::from_integral(c))))
}

/// Gcd of all coefficients of the given term lists, stopping early at a unit.
fn content<C: Integral>(lists: &[&[(Monomial, C)]]) -> C {
    let mut g = C::zero();
    for list in lists {
        for (_, c) in list.iter() {
            g = g.gcd(c);
            if g.is_unit() {
                return g;
            }
        }
    }
    g
}

fn divide_all<C: Integral>(t: &mut [(Monomial, C)], d: &C) {
    for (_, c) in t.iter_mut() {
        *c = c.div_exact(d);
    }
}

fn make_primitive<C: Integral>(t: &mut Terms<C>) {
    let g = content(&[t]);
    if !g.is_zero() && !g.is_unit() {
        divide_all(t, &g);
    }
}

/// `a * p - c * m * g`, all lists sorted descending.
fn sub_scaled<C: Integral>(p: &[(Monomial, C)], a: &C, c: &C, m: &Monomial, g: &[(Monomial, C)], order: MonomialOrder) -> Terms<C> {
    let scale_p = *a != C::one();
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gm: Option<Monomial> = g.first().map(|t| t.0.mul(m));
    while i < p.len() || j < g.len() {
        let ord = match (&gm, p.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(sm), Some(pt)) => order.cmp(&pt.0, sm),
        };
        match ord {
            Ordering::Greater => {
                let v = if scale_p { a.mul_ref(&p[i].1) } else { p[i].1.clone() };
                out.push((p[i].0.clone(), v));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.take().unwrap(), c.mul_ref(&g[j].1).neg()));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = C::fused(a, &p[i].1, c, &g[j].1);
                if !v.is_zero() {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

/// Result of a full reduction: `rem = (num / den) * p` modulo the basis.
struct Reduced<C> {
    rem: Terms<C>,
    num: C,
    den: C,
}

/// Full reduction of `p` modulo `basis`. The scalars are only tracked when
/// `track` is set.
fn reduce_full<C: Integral>(p: Terms<C>, basis: &[Terms<C>], order: MonomialOrder, track: bool) -> Reduced<C> {
    let mut rem: Terms<C> = Vec::new();
    let mut work = p;
    let mut start = 0;
    let mut num = C::one();
    let mut den = C::one();
    while start < work.len() {
        let divisor = basis.iter().find(|g| g[0].0.divides(&work[start].0));
        match divisor {
            Some(g) => {
                let q = work[start].0.div(&g[0].0).expect("divisible");
                let h = g[0].1.gcd(&work[start].1);
                let a = g[0].1.div_exact(&h);
                let c = work[start].1.div_exact(&h);
                work = sub_scaled(&work[start..], &a, &c, &q, g, order);
                start = 0;
                if a != C::one() {
                    for (_, r) in rem.iter_mut() {
                        *r = a.mul_ref(r);
                    }
                    if track {
                        num = num.mul_ref(&a);
                    }
                }
                let k = content(&[&rem, &work]);
                if !k.is_zero() && !k.is_unit() {
                    divide_all(&mut rem, &k);
                    divide_all(&mut work, &k);
                    if track {
                        den = den.mul_ref(&k);
                    }
                }
            }
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    Reduced { rem, num, den }
}

fn s_polynomial<C: Integral>(a: &Terms<C>, b: &Terms<C>, order: MonomialOrder) -> Terms<C> {
    let l = a[0].0.lcm(&b[0].0);
    let ma = l.div(&a[0].0).unwrap();
    let mb = l.div(&b[0].0).unwrap();
    let h = a[0].1.gcd(&b[0].1);
    let fa = b[0].1.div_exact(&h);
    let fb = a[0].1.div_exact(&h);
    let a_shift: Terms<C> = a.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
    // the leading terms cancel
    sub_scaled(&a_shift, &fa, &fb, &mb, b, order)
}

struct Pair {
    lcm: Monomial,
    sugar: u32,
}

/// Runs Buchberger's algorithm. Pairs among the first `done` elements of
/// `basis` are assumed already treated (the prefix is a Gröbner basis).
fn buchberger<C: Integral>(basis: Vec<Terms<C>>, done: usize, extra: Vec<Terms<C>>, order: MonomialOrder) -> Vec<Terms<C>> {
    let degree = |t: &Terms<C>| t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
    let mut sugar: Vec<u32> = basis.iter().map(degree).collect();
    let mut basis = basis;
    let mut pending: HashMap<(usize, usize), Pair> = HashMap::new();
    let add_pairs = |basis: &Vec<Terms<C>>, sugar: &Vec<u32>, pending: &mut HashMap<(usize, usize), Pair>, i: usize| {
        for j in 0..i {
            let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
            let lcm = li.lcm(lj);
            let d = lcm.degree();
            let s = (sugar[i] + d - li.degree()).max(sugar[j] + d - lj.degree());
            pending.insert((j, i), Pair { lcm, sugar: s });
        }
    };
    for i in done..basis.len() {
        add_pairs(&basis, &sugar, &mut pending, i);
    }
    for mut g in extra {
        let s = degree(&g);
        make_primitive(&mut g);
        let h = reduce_full(g, &basis, order, false).rem;
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return vec![vec![(h[0].0.clone(), C::one())]];
        }
        basis.push(h);
        sugar.push(s);
        add_pairs(&basis, &sugar, &mut pending, basis.len() - 1);
    }
    while !pending.is_empty() {
        let (&(i, j), _) = pending
            .iter()
            .min_by(|a, b| {
                a.1.sugar
                    .cmp(&b.1.sugar)
                    .then_with(|| order.cmp(&a.1.lcm, &b.1.lcm))
                    .then_with(|| (a.0 .1, a.0 .0).cmp(&(b.0 .1, b.0 .0)))
            })
            .unwrap();
        let pair = pending.remove(&(i, j)).unwrap();
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&pair.lcm)
                && !pending.contains_key(&key(i, k))
                && !pending.contains_key(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let h = reduce_full(s, &basis, order, false).rem;
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return vec![vec![(h[0].0.clone(), C::one())]];
        }
        basis.push(h);
        sugar.push(pair.sugar);
        add_pairs(&basis, &sugar, &mut pending, basis.len() - 1);
    }
    interreduce(basis, order)
}

fn interreduce<C: Integral>(basis: Vec<Terms<C>>, order: MonomialOrder) -> Vec<Terms<C>> {
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && keep[j] && basis[j][0].0.divides(&basis[i][0].0) && (basis[j][0].0 != basis[i][0].0 || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Terms<C>> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect();
    minimal.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    // reducing in increasing order lets each element use the already
    // reduced smaller ones
    for i in 0..minimal.len() {
        let others: Vec<Terms<C>> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, b)| b.clone()).collect();
        let mut r = reduce_tail(std::mem::take(&mut minimal[i]), &others, order);
        make_primitive(&mut r);
        minimal[i] = r;
    }
    minimal
}

/// Reduces every term but the leading one, keeping the leading monomial.
fn reduce_tail<C: Integral>(g: Terms<C>, basis: &[Terms<C>], order: MonomialOrder) -> Terms<C> {
    let red = reduce_full(g[1..].to_vec(), basis, order, true);
    // rem = (num / den) * tail, so num * head + den * rem is a multiple of g
    let mut out = vec![(g[0].0.clone(), red.num.mul_ref(&g[0].1))];
    out.extend(red.rem.into_iter().map(|(m, c)| (m, red.den.mul_ref(&c))));
    out
}

/// Dimension of a quotient ring as a vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDim::Finite(n) => Some(n),
            QuotientDim::Infinite => None,
        }
    }
}

impl std::fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientDim::Finite(n) => write!(f, "{n}"),
            QuotientDim::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// A reduced Gröbner basis for a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    nvars: usize,
    order: MonomialOrder,
    elems: Vec<Terms<F::Integral>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn compute(nvars: usize, gens: &[Polynomial<F>], order: MonomialOrder) -> Self {
        let extra = gens.iter().filter(|g| !g.is_zero()).map(|g| integral_terms(g, order).0).collect();
        let elems = buchberger(Vec::new(), 0, extra, order);
        GroebnerBasis { nvars, order, elems }
    }

    /// The basis of `self + <gens>`, reusing the work already done.
    pub fn extend(&self, gens: &[Polynomial<F>]) -> Self {
        let extra = gens.iter().filter(|g| !g.is_zero()).map(|g| integral_terms(g, self.order).0).collect();
        let done = self.elems.len();
        let elems = buchberger(self.elems.clone(), done, extra, self.order);
        GroebnerBasis { nvars: self.nvars, order: self.order, elems }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis elements as content-normalized polynomials, sorted by
    /// increasing leading monomial.
    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        self.elems.iter().map(|t| to_poly::<F>(self.nvars, t).normalized()).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|t| t[0].0.is_one())
    }

    /// Normal form of `p`.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        if p.is_zero() {
            return p.clone();
        }
        let (t, scale) = integral_terms(p, self.order);
        let r = reduce_full(t, &self.elems, self.order, true);
        // rem = (num / den) * scale * p modulo the basis
        let factor = F::from_integral(&r.den).div(&(F::from_integral(&r.num) * scale));
        to_poly::<F>(self.nvars, &r.rem).scale(&factor)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.reduce(p).is_zero()
    }

    /// Number of standard monomials.
    pub fn quotient_dimension(&self) -> QuotientDim {
        count_standard_monomials(&self.leading_monomials(), self.nvars)
    }
}

/// Counts monomials outside the monomial ideal generated by `lms`.
pub fn count_standard_monomials(lms: &[Monomial], nvars: usize) -> QuotientDim {
    if lms.iter().any(Monomial::is_one) {
        return QuotientDim::Finite(0);
    }
    for v in 0..nvars {
        if !lms.iter().any(|m| m.pure_power_var() == Some(v)) {
            return QuotientDim::Infinite;
        }
    }
    let mut count = 0u64;
    let mut stack = vec![Monomial::one(nvars)];
    while let Some(m) = stack.pop() {
        count += 1;
        let last = (0..nvars).rev().find(|&v| m.exponent(v) > 0).unwrap_or(0);
        for v in last..nvars {
            let next = m.mul(&Monomial::var(nvars, v));
            if !lms.iter().any(|l| l.divides(&next)) {
                stack.push(next);
            }
        }
    }
    QuotientDim::Finite(count)
}

/// A polynomial ideal given by generators over a fixed ambient ring.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    nvars: usize,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(nvars: usize, gens: Vec<Polynomial<F>>) -> Self {
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "ambient variable lists differ");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn with(&self, more: impl IntoIterator<Item = Polynomial<F>>) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(more);
        Ideal::new(self.nvars, gens)
    }

    pub fn groebner(&self, order: MonomialOrder) -> GroebnerBasis<F> {
        GroebnerBasis::compute(self.nvars, &self.gens, order)
    }

    /// Reduced basis under grevlex.
    pub fn basis(&self) -> GroebnerBasis<F> {
        self.groebner(MonomialOrder::GrevLex)
    }

    /// Dimension of the quotient ring; the number of solutions counted
    /// with multiplicity when the ideal is zero-dimensional.
    pub fn quotient_dimension(&self) -> QuotientDim {
        self.basis().quotient_dimension()
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.basis().contains(p)
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        let gb = self.basis();
        other.gens.iter().all(|g| gb.contains(g))
    }

    /// Equality of ideals via reduced bases.
    pub fn same_ideal(&self, other: &Ideal<F>) -> bool {
        self.basis().polynomials() == other.basis().polynomials()
    }

    /// Eliminates the first `k` variables: returns `I ∩ F[x_k, ..]` as an
    /// ideal in the remaining variables.
    pub fn eliminate_leading(&self, k: usize) -> Ideal<F> {
        let gb = self.groebner(MonomialOrder::Block(k));
        let rest = self.nvars - k;
        let map: Vec<usize> = (0..self.nvars).map(|v| v.saturating_sub(k)).collect();
        let gens = gb
            .polynomials()
            .into_iter()
            .filter(|p| (0..k).all(|v| !p.has_var(v)))
            .map(|p| p.remap(&map, rest))
            .collect();
        Ideal::new(rest, gens)
    }

    /// Embeds into a ring with `k` extra variables prepended.
    fn shift_right(&self, k: usize) -> Vec<Polynomial<F>> {
        let map: Vec<usize> = (0..self.nvars).map(|v| v + k).collect();
        self.gens.iter().map(|g| g.remap(&map, self.nvars + k)).collect()
    }

    /// `I : g^∞` by the extra-variable method: adjoin `t·g - 1` and
    /// eliminate `t`.
    pub fn saturate(&self, g: &Polynomial<F>) -> Ideal<F> {
        assert!(!g.is_zero(), "saturation by the zero polynomial");
        if g.is_constant() {
            return self.clone();
        }
        let n = self.nvars + 1;
        let map: Vec<usize> = (0..self.nvars).map(|v| v + 1).collect();
        let t = Polynomial::var(n, 0);
        let mut gens = self.shift_right(1);
        gens.push(&(&t * &g.remap(&map, n)) - &Polynomial::one(n));
        Ideal::new(n, gens).eliminate_leading(1)
    }

    /// `I ∩ J` via `t·I + (1 - t)·J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Ideal<F> {
        assert_eq!(self.nvars, other.nvars);
        let n = self.nvars + 1;
        let t = Polynomial::var(n, 0);
        let one_minus_t = &Polynomial::one(n) - &t;
        let mut gens: Vec<Polynomial<F>> = self.shift_right(1).iter().map(|g| &t * g).collect();
        gens.extend(other.shift_right(1).iter().map(|g| &one_minus_t * g));
        Ideal::new(n, gens).eliminate_leading(1)
    }

    /// Ideal quotient `I : g`.
    pub fn quotient(&self, g: &Polynomial<F>) -> Ideal<F> {
        let principal = Ideal::new(self.nvars, vec![g.clone()]);
        let meet = self.intersect(&principal);
        let gens = meet.gens.iter().map(|h| div_exact(h, g).expect("element of <g> is divisible by g")).collect();
        Ideal::new(self.nvars, gens)
    }

    /// `I : g^∞` by iterating ideal quotients until they stabilize.
    pub fn saturate_iterated(&self, g: &Polynomial<F>) -> Ideal<F> {
        let mut current = self.clone();
        loop {
            let next = current.quotient(g);
            if next.same_ideal(&current) {
                return next;
            }
            current = next;
        }
    }

    /// `I : J^∞ = ⋂ I : g_i^∞` over the generators of `J`.
    pub fn saturate_by_ideal(&self, j: &[Polynomial<F>]) -> Ideal<F> {
        let mut acc: Option<Ideal<F>> = None;
        for g in j.iter().filter(|g| !g.is_zero()) {
            let s = self.saturate(g);
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s),
            });
        }
        acc.unwrap_or_else(|| self.clone())
    }
}

/// Reduced Gröbner basis of `gens` for `order`, as normalized polynomials.
pub fn groebner_basis<F: Field>(gens: &[Polynomial<F>], order: MonomialOrder) -> Vec<Polynomial<F>> {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    GroebnerBasis::compute(nvars, gens, order).polynomials()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::field::{rat, Gf2, Rational};

    type P = Polynomial<Rational>;

    fn v(n: usize, i: usize) -> P {
        P::var(n, i)
    }
    fn c(n: usize, k: i64) -> P {
        P::constant(n, rat(k))
    }

    #[test]
    fn basis_of_coordinate_ideal() {
        let gb = groebner_basis(&[v(2, 0), v(2, 1)], MonomialOrder::Lex);
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&v(2, 0)) && gb.contains(&v(2, 1)));
    }

    #[test]
    fn circle_and_diagonal_lex() {
        let x = v(2, 0);
        let y = v(2, 1);
        let gens = [x.pow(2) + y.pow(2) - c(2, 1), &x - &y];
        let gb = groebner_basis(&gens, MonomialOrder::Lex);
        assert_eq!(gb, vec![c(2, 2) * y.pow(2) - c(2, 1), &x - &y]);
    }

    #[test]
    fn unit_ideal() {
        let x = v(1, 0);
        let gb = groebner_basis(&[x.clone(), &c(1, 1) - &x], MonomialOrder::GrevLex);
        assert_eq!(gb, vec![P::one(1)]);
    }

    #[test]
    fn positive_dimensional_count() {
        let ideal = Ideal::new(2, vec![v(2, 0)]);
        assert_eq!(ideal.quotient_dimension(), QuotientDim::Infinite);
    }

    #[test]
    fn count_with_multiplicity() {
        // x^2 = 0, y^3 = 0 has a single point of multiplicity 6
        let ideal = Ideal::new(2, vec![v(2, 0).pow(2), v(2, 1).pow(3)]);
        assert_eq!(ideal.quotient_dimension(), QuotientDim::Finite(6));
    }

    #[test]
    fn saturation_removes_axis() {
        let x = v(2, 0);
        let y = v(2, 1);
        let sat = Ideal::new(2, vec![&x * &y]).saturate(&x);
        assert!(sat.same_ideal(&Ideal::new(2, vec![y.clone()])));
        let iter = Ideal::new(2, vec![&x * &y]).saturate_iterated(&x);
        assert!(iter.same_ideal(&sat));
        let by_one = Ideal::new(2, vec![&x * &y]).saturate(&P::one(2));
        assert!(by_one.same_ideal(&Ideal::new(2, vec![&x * &y])));
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let x = v(2, 0);
        let y = v(2, 1);
        let i = Ideal::new(2, vec![x.clone()]).intersect(&Ideal::new(2, vec![y.clone()]));
        assert!(i.same_ideal(&Ideal::new(2, vec![&x * &y])));
    }

    #[test]
    fn works_over_gf2() {
        let x = Polynomial::<Gf2>::var(2, 0);
        let y = Polynomial::<Gf2>::var(2, 1);
        let one = Polynomial::<Gf2>::one(2);
        // x^2 + x = 0, y^2 + y = 0 has 4 points over the algebraic closure
        let ideal = Ideal::new(2, vec![&x.pow(2) + &x, &y.pow(2) + &y]);
        assert_eq!(ideal.quotient_dimension(), QuotientDim::Finite(4));
        let unit = Ideal::new(2, vec![x.clone(), &x + &one]);
        assert!(unit.is_unit());
    }
}
