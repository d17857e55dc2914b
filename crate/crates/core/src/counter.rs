//! Measured degrees of solution divisors: affine multiplicity counts,
//! contributions at infinity and at vertical tangents for plane curves, and
//! an implicit-differentiation count on generic sections of hypersurfaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::equation::DifferentialEquation;
use crate::error::{Error, Result};
use crate::jet::transform::Matrix3;
use crate::jet::{prolong_ideal, prolong_transformation, JetChart, JetVar, PointTransformation, ProjectiveMap};
use crate::poly::gcd::{div_exact, gcd, strip_common_factors};
use crate::poly::ratfun::substitute;
use crate::poly::{GroebnerBasis, Ideal, MonomialOrder, Polynomial, QuotientDim, Rational, RationalFunction};
use crate::variety::Variety;

type P = Polynomial<Rational>;

const MAX_REFERENCE_TRIES: usize = 24;
const MAX_POWER: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionKind {
    Infinity,
    VerticalTangent,
}

/// Solutions found outside the affine jet chart of the given reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub kind: CorrectionKind,
    pub point: String,
    pub chart: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub route: String,
    pub affine_count: u64,
    pub corrections: Vec<Correction>,
    pub total: u64,
    pub seed: u64,
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub(crate) fn small_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Maximal minors of the Jacobian matrix of `gens` with respect to the
/// first `nbase` variables, of size `c`.
pub fn jacobian_minors(gens: &[P], nbase: usize, c: usize) -> Vec<P> {
    let rows: Vec<Vec<P>> = gens.iter().map(|g| (0..nbase).map(|v| g.derivative(v).expect("base variable")).collect()).collect();
    let nv = gens.first().map(|g| g.nvars()).unwrap_or(0);
    let mut out = Vec::new();
    let row_sets = combinations(rows.len(), c);
    let col_sets = combinations(nbase, c);
    for rs in &row_sets {
        for cs in &col_sets {
            let m: Vec<Vec<P>> = rs.iter().map(|&r| cs.iter().map(|&col| rows[r][col].clone()).collect()).collect();
            let d = crate::poly::resultant::determinant(m, nv);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn combinations(n: usize, c: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, c: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, c, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, c, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether the singular locus of the variety cut out by `gens` meets the
/// zero set of `target` (everything in the same base ring).
fn singular_locus_meets(gens: &[P], nbase: usize, codim: usize, target: &[P]) -> bool {
    let mut all = gens.to_vec();
    all.extend(jacobian_minors(gens, nbase, codim));
    all.extend(target.iter().cloned());
    let nv = gens[0].nvars();
    !Ideal::new(nv, all).is_unit()
}

fn prolonged_system(chart: &JetChart, gens: &[P], f: &P, saturate: bool) -> Result<Ideal<Rational>> {
    let base = prolong_ideal(chart, gens)?;
    let base = if saturate {
        let nv = chart.nvars();
        let minors: Vec<P> = jacobian_minors(gens, chart.base_len(), chart.n() - chart.k()).into_iter().map(|m| m.extend(nv)).collect();
        base.saturate_by_ideal(&minors)
    } else {
        base
    };
    Ok(base.with([f.clone()]))
}

/// Prolongation of `S` to order `r`, restricted to the closure of its
/// regular part by saturating with the Jacobian minors. Varieties declared
/// smooth or normal are returned unsaturated.
pub fn regular_prolongation(s: &Variety, r: usize) -> Result<Ideal<Rational>> {
    let chart = JetChart::new(s.n(), s.k(), r)?;
    let ideal = prolong_ideal(&chart, s.generators())?;
    if s.smoothness().is_regular() {
        return Ok(ideal);
    }
    let codim = s.n() - s.k();
    if !singular_locus_meets(s.generators(), s.n(), codim, &[]) {
        return Ok(ideal);
    }
    let minors: Vec<P> = jacobian_minors(s.generators(), s.n(), codim).into_iter().map(|m| m.extend(chart.nvars())).collect();
    Ok(ideal.saturate_by_ideal(&minors))
}

fn affine_system(s: &Variety, eq: &DifferentialEquation) -> Result<Ideal<Rational>> {
    let r = eq.order();
    Ok(regular_prolongation(s, r)?.with([eq.on_chart(r)]))
}

/// Number of solutions, with multiplicity, of `eq` on `S` inside the
/// affine jet chart.
pub fn count_affine(s: &Variety, eq: &DifferentialEquation) -> Result<u64> {
    check_plane_curve(s, eq)?;
    match affine_system(s, eq)?.quotient_dimension() {
        QuotientDim::Finite(n) => Ok(n),
        QuotientDim::Infinite => Err(Error::PositiveDimensional),
    }
}

fn check_plane_curve(s: &Variety, eq: &DifferentialEquation) -> Result<()> {
    if !s.is_plane_curve() || !eq.chart().is_plane_curve() {
        return Err(Error::SliceNotSupported("the chart route needs a plane curve and a plane-curve equation".into()));
    }
    Ok(())
}

/// All products of `n` elements of `gens`.
fn ideal_power(gens: &[P], n: u32) -> Vec<P> {
    let mut current: Vec<(usize, P)> = vec![(0, P::one(gens[0].nvars()))];
    for _ in 0..n {
        let mut next = Vec::new();
        for (start, p) in &current {
            for (i, g) in gens.iter().enumerate().skip(*start) {
                next.push((i, p * g));
            }
        }
        current = next;
    }
    current.into_iter().map(|(_, p)| p).collect()
}

/// Powers of the target tried before switching to saturation.
const CHEAP_POWERS: u32 = 4;

/// Sum of local multiplicities of `system` over the zero set of `target`:
/// the stable value of `dim R / (I + J^N)`, or `dim R/I - dim R/(I : J^∞)`
/// when `I` is zero-dimensional and small powers have not stabilized.
pub fn local_count(system: &Ideal<Rational>, target: &[P]) -> Result<u64> {
    let gb = system.basis();
    if gb.is_unit() {
        return Ok(0);
    }
    let target: Vec<P> = target.iter().filter(|t| !t.is_zero()).cloned().collect();
    if target.is_empty() {
        return Err(Error::UnsupportedCuspidalComponent);
    }
    let mut prev: Option<u64> = None;
    for n in 1..=MAX_POWER {
        if n == CHEAP_POWERS + 1 {
            if let QuotientDim::Finite(all) = gb.quotient_dimension() {
                if let QuotientDim::Finite(away) = system.saturate_by_ideal(&target).quotient_dimension() {
                    return Ok(all - away);
                }
            }
        }
        let extended: GroebnerBasis<Rational> = gb.extend(&ideal_power(&target, n));
        let dim = extended.quotient_dimension().finite().ok_or(Error::UnsupportedCuspidalComponent)?;
        if prev == Some(dim) {
            return Ok(dim);
        }
        prev = Some(dim);
    }
    Err(Error::UnsupportedCuspidalComponent)
}

/// A group of points of a plane curve on the line at infinity, given by a
/// binary form in `(X, Y)`.
#[derive(Clone, Debug)]
struct InfinityCluster {
    form: P,
    description: String,
}

fn clear_denominators(coeffs: &[Rational]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a univariate polynomial given by coefficients in
/// increasing degree.
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let ints = clear_denominators(coeffs);
    let mut out = Vec::new();
    let lo = ints.iter().position(|c| !c.is_zero());
    let Some(lo) = lo else { return out };
    if lo > 0 {
        out.push(Rational::zero());
    }
    let hi = ints.len() - 1;
    let (Some(ps), Some(qs)) = (divisors(&ints[lo]), divisors(&ints[hi])) else {
        return out;
    };
    let eval = |x: &Rational| coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c);
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let x = Rational::new(p * sign, q.clone());
                if !out.contains(&x) && eval(&x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    out
}

fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Splits the points at infinity, `A(X, Y) = 0` with `A` the top-degree
/// form, into rational points and one cluster for the rest.
fn infinity_clusters(a: &P) -> Vec<InfinityCluster> {
    let mut rest = a.clone();
    let mut out = Vec::new();
    let x = P::var(2, 0);
    let y = P::var(2, 1);
    // the point (1 : 0 : 0)
    if rest.coefficients_in(1)[0].is_zero() {
        while rest.coefficients_in(1)[0].is_zero() {
            rest = div_exact(&rest, &y).expect("y divides");
        }
        out.push(InfinityCluster { form: y.clone(), description: "(1 : 0 : 0)".into() });
    }
    // remaining roots (t : 1 : 0) with A(t, 1) = 0
    let uni = rest.specialize(1, &Rational::one());
    let coeffs: Vec<Rational> = uni.coefficients_in(0).iter().map(|c| c.constant_term()).collect();
    for t in rational_roots(&coeffs) {
        let lin = &x - &y.scale(&t);
        while let Ok(q) = div_exact(&rest, &lin) {
            rest = q;
        }
        out.push(InfinityCluster { form: lin, description: format!("({} : 1 : 0)", format_rational(&t)) });
    }
    if !rest.is_constant() {
        let names = ["X".to_string(), "Y".to_string()];
        out.push(InfinityCluster { form: rest.normalized(), description: format!("{} = 0 on Z = 0", rest.normalized().to_text(&names)) });
    }
    out
}

fn format_matrix(m: &Matrix3) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.iter().map(format_rational).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix3 {
    let mut m: Matrix3 = Default::default();
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = rat(rng.gen_range(-3..=3));
        }
    }
    m
}

/// Restriction of a form in `(X, Y, Z)` to `Z = 0`, as a form in `(X, Y)`.
fn at_infinity(p: &P) -> P {
    p.specialize(2, &Rational::zero()).truncate(2).expect("Z eliminated")
}

/// Checks that a reference is usable at the points at infinity: the new
/// line at infinity avoids them, and no nonsingular one has a tangent
/// through the new vertical direction.
fn reference_is_valid(t: &PointTransformation, fh: &P, a: &P) -> bool {
    let m = t.matrix();
    if m[2][0].is_zero() && m[2][1].is_zero() {
        return false;
    }
    if a.eval(&[m[2][1].clone(), -m[2][0].clone()]).is_zero() {
        return false;
    }
    let inv = t.inverse();
    let mi = inv.matrix();
    let v = [mi[0][1].clone(), mi[1][1].clone(), mi[2][1].clone()];
    let grads: Vec<P> = (0..3).map(|i| fh.derivative(i).unwrap()).collect();
    let g = (0..3).fold(P::zero(3), |acc, i| &acc + &grads[i].scale(&v[i]));
    let common = gcd(a, &at_infinity(&g));
    if common.is_constant() {
        return true;
    }
    let sing = grads.iter().fold(a.clone(), |acc, d| gcd(&acc, &at_infinity(d)));
    strip_common_factors(&common, &sing).is_constant()
}

fn equation_in_reference(t: &PointTransformation, s: &Variety, eq: &DifferentialEquation) -> Result<(Vec<P>, P)> {
    let sn = t.transform_variety(s.generators());
    let fnew = prolong_transformation(t, eq.chart(), eq.polynomial())?;
    Ok((sn, fnew))
}

/// Local count in a new reference over the zero set of `target` (a system
/// in the base coordinates of the new reference).
fn count_in_reference(s: &Variety, eq: &DifferentialEquation, sn: &[P], fnew: &P, target: &[P]) -> Result<u64> {
    let chart = eq.chart();
    let nv = chart.nvars();
    let saturate = !s.smoothness().is_regular() && singular_locus_meets(sn, 2, 1, target);
    let system = prolonged_system(chart, sn, fnew, saturate)?;
    let target: Vec<P> = target.iter().map(|t| t.extend(nv)).collect();
    local_count(&system, &target)
}

/// Contributions of the points of `S` on the line at infinity, each
/// computed in a random projective reference that moves them to finite
/// position.
pub fn count_at_infinity(s: &Variety, eq: &DifferentialEquation, rng: &mut ChaCha8Rng) -> Result<Vec<Correction>> {
    check_plane_curve(s, eq)?;
    let f = s.equation();
    let fh = f.homogenize();
    let a = at_infinity(&fh);
    let clusters = infinity_clusters(&a);
    let mut last_err = Error::DegenerateTransformation("no admissible reference found".into());
    for _ in 0..MAX_REFERENCE_TRIES {
        let Ok(t) = PointTransformation::from_matrix(random_matrix(rng)) else { continue };
        if !reference_is_valid(&t, &fh, &a) {
            continue;
        }
        let (sn, fnew) = match equation_in_reference(&t, s, eq) {
            Ok(v) => v,
            Err(e @ Error::DegenerateTransformation(_)) => {
                last_err = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        let [xr, yr] = t.inverse_maps(2);
        let l = t.inverse_denominator(2);
        let mut out = Vec::new();
        for c in &clusters {
            let form = c.form.compose(&[xr.num().clone(), yr.num().clone()]);
            let mult = count_in_reference(s, eq, &sn, &fnew, &[l.clone(), form])?;
            if mult > 0 {
                out.push(Correction { kind: CorrectionKind::Infinity, point: c.description.clone(), chart: format_matrix(t.matrix()), multiplicity: mult });
            }
        }
        return Ok(out);
    }
    Err(last_err)
}

/// Contributions over the points where `∂F/∂y` vanishes, where the affine
/// chart misses solutions with infinite slope. Measured in a sheared
/// reference and compared with what the affine count already saw there.
pub fn count_vertical(s: &Variety, eq: &DifferentialEquation, rng: &mut ChaCha8Rng) -> Result<Vec<Correction>> {
    check_plane_curve(s, eq)?;
    let f = s.equation();
    let fy = f.derivative(1).unwrap();
    let base = vec![f.clone(), fy.clone()];
    let b_ideal = Ideal::new(2, base.clone());
    match b_ideal.quotient_dimension() {
        QuotientDim::Finite(0) => return Ok(Vec::new()),
        QuotientDim::Finite(_) => {}
        QuotientDim::Infinite => return Err(Error::SliceNotSupported("the curve has a vertical line component".into())),
    }
    let nv = eq.chart().nvars();
    let old_system = affine_system(s, eq)?;
    let old = local_count(&old_system, &base.iter().map(|b| b.extend(nv)).collect::<Vec<_>>())?;
    let mut last_err = Error::DegenerateTransformation("no admissible shear found".into());
    for _ in 0..MAX_REFERENCE_TRIES {
        let a = small_nonzero(rng, 9);
        let t = PointTransformation::shear(rat(a));
        let (sn, fnew) = match equation_in_reference(&t, s, eq) {
            Ok(v) => v,
            Err(e @ Error::DegenerateTransformation(_)) => {
                last_err = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        let target = t.transform_variety(&base);
        let new = count_in_reference(s, eq, &sn, &fnew, &target)?;
        if new < old {
            return Err(Error::Degenerate("local counts disagree between references".into()));
        }
        if new == old {
            return Ok(Vec::new());
        }
        let names = ["x".to_string(), "y".to_string()];
        return Ok(vec![Correction {
            kind: CorrectionKind::VerticalTangent,
            point: format!("{} = {} = 0", f.to_text(&names), fy.to_text(&names)),
            chart: format_matrix(t.matrix()),
            multiplicity: new - old,
        }]);
    }
    Err(last_err)
}

/// Degree of the solution divisor `S(f)`. Plane curves are counted in the
/// affine chart plus corrections at infinity and at vertical tangents;
/// hypersurfaces of higher dimension go through [`count_hypersurface_section`].
pub fn measure_degree(s: &Variety, eq: &DifferentialEquation, seed: u64) -> Result<CountReport> {
    if eq.chart().n() != s.n() || eq.chart().k() != s.k() {
        return Err(Error::Degenerate("equation and variety live in different charts".into()));
    }
    if !s.is_plane_curve() {
        if s.is_hypersurface() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total = count_hypersurface_section(s, eq, &mut rng)?;
            return Ok(CountReport { route: "chart-cover".into(), affine_count: total, corrections: Vec::new(), total, seed });
        }
        return Err(Error::SliceNotSupported(format!("codimension {} with k = {}", s.n() - s.k(), s.k())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let affine = count_affine(s, eq)?;
    let mut corrections = count_at_infinity(s, eq, &mut rng)?;
    corrections.extend(count_vertical(s, eq, &mut rng)?);
    let total = affine + corrections.iter().map(|c| c.multiplicity).sum::<u64>();
    Ok(CountReport { route: "plane-chart".into(), affine_count: affine, corrections, total, seed })
}

/// Jets of a hypersurface `F(x, y) = 0` as rational functions of the base
/// coordinates, by implicit differentiation.
fn implicit_jets(chart: &JetChart, f: &P) -> Result<Vec<RationalFunction<Rational>>> {
    let n = chart.n();
    let k = chart.k();
    let fy = f.derivative(k).unwrap();
    if fy.is_zero() {
        return Err(Error::SliceNotSupported("the equation does not involve y".into()));
    }
    let yi: Vec<RationalFunction<Rational>> = (0..k).map(|i| RationalFunction::new(-f.derivative(i).unwrap(), fy.clone())).collect::<Result<_>>()?;
    let mut images: Vec<RationalFunction<Rational>> = (0..n).map(|v| RationalFunction::from_poly(P::var(n, v))).collect();
    for v in chart.vars().iter().skip(n) {
        let JetVar::Jet(idx) = v else { unreachable!() };
        let (last, prefix) = idx.alpha.split_last().unwrap();
        let img = if prefix.is_empty() {
            yi[last - 1].clone()
        } else {
            let parent = chart.jet(1, prefix).expect("lower order precedes");
            let dirn = &yi[last - 1];
            // D_i = ∂_i + y_i ∂_y acting on a rational function of (x, y)
            let g = &images[parent];
            let part = |p: &P| p.derivative(last - 1).unwrap();
            let dyp = |p: &P| p.derivative(k).unwrap();
            let num_d = RationalFunction::from_poly(part(g.num())).add(&RationalFunction::from_poly(dyp(g.num())).mul(dirn));
            let den_d = RationalFunction::from_poly(part(g.den())).add(&RationalFunction::from_poly(dyp(g.den())).mul(dirn));
            let num = RationalFunction::from_poly(g.num().clone());
            let den = RationalFunction::from_poly(g.den().clone());
            num_d.mul(&den).sub(&num.mul(&den_d)).div(&den.mul(&den))?
        };
        images.push(img);
    }
    Ok(images)
}

/// Numerator of `f` restricted to the hypersurface `F = 0` by implicit
/// differentiation, with all factors of `∂F/∂y` removed.
fn implicit_numerator_of(chart: &JetChart, hyper: &P, f: &P) -> Result<P> {
    let images = implicit_jets(chart, hyper)?;
    let sub = substitute(f, &images)?;
    let fy = hyper.derivative(chart.k()).unwrap();
    Ok(strip_common_factors(sub.num(), &fy).normalized())
}

pub fn implicit_numerator(s: &Variety, eq: &DifferentialEquation) -> Result<P> {
    if !s.is_hypersurface() {
        return Err(Error::SliceNotSupported("implicit differentiation needs a hypersurface".into()));
    }
    implicit_numerator_of(eq.chart(), s.equation(), eq.polynomial())
}

/// Whether the cone of `gens` has a point off `b = 0`.
fn meets_outside(gens: &[P], b: &P) -> bool {
    let nv = b.nvars();
    let m: Vec<usize> = (1..=nv).collect();
    let mut all: Vec<P> = gens.iter().map(|g| g.remap(&m, nv + 1)).collect();
    all.push(&P::one(nv + 1) - &(&P::var(nv + 1, 0) * &b.remap(&m, nv + 1)));
    !Ideal::new(nv + 1, all).is_unit()
}

/// Homogeneous coordinate `h` becomes `Z` and `d` becomes `y`; the rest keep
/// their relative order.
fn chart_permutation(n: usize, h: usize, d: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..=n).filter(|&i| i != h && i != d).collect();
    perm.push(d);
    perm.push(h);
    perm
}

/// Solutions on a generic curve section `S ∩ H_1 ∩ … ∩ H_{k-1}`, counted
/// with multiplicity. The section is covered by the charts `(h, d)` in which
/// `X_h ≠ 0` and `∂F/∂X_d ≠ 0`, so that `X_d` is a local graph coordinate;
/// each chart counts only the points missed by the previous ones.
pub fn count_hypersurface_section(s: &Variety, eq: &DifferentialEquation, rng: &mut ChaCha8Rng) -> Result<u64> {
    let n = s.n();
    let chart = eq.chart();
    let hyper = s.equation();
    let fh = hyper.homogenize();
    let mut planes = Vec::with_capacity(s.k() - 1);
    for _ in 0..s.k() - 1 {
        let mut h = P::constant(n, rat(small_nonzero(rng, 7)));
        for v in 0..n {
            h = &h + &P::var(n, v).scale(&rat(small_nonzero(rng, 7)));
        }
        planes.push(h);
    }
    let mut cone: Vec<P> = std::iter::once(fh.clone()).chain(planes.iter().map(|h| h.homogenize())).collect();
    let map: Vec<usize> = (0..n).map(|v| v + 1).collect();
    let lift = |p: &P| p.remap(&map, n + 1);
    let t = P::var(n + 1, 0);

    let mut order: Vec<(usize, usize)> = vec![(n, n - 1)];
    for h in (0..=n).rev() {
        for d in (0..=n).rev() {
            if h != d && (h, d) != (n, n - 1) {
                order.push((h, d));
            }
        }
    }
    let mut bad: Vec<P> = Vec::new();
    let mut total = 0;
    for (h, d) in order {
        let b = &P::var(n + 1, h) * &fh.derivative(d).unwrap();
        if !bad.is_empty() && !meets_outside(&cone, &b) {
            continue;
        }
        let map_c = ProjectiveMap::permutation(&chart_permutation(n, h, d))?;
        let back = map_c.inverse_forms(n);
        let fc = map_c.transform_polynomial(hyper);
        if fc.derivative(n - 1).unwrap().is_zero() {
            continue;
        }
        let eq_c = map_c.prolong(chart, eq.polynomial())?;
        let num = implicit_numerator_of(chart, &fc, &eq_c)?;
        let fy = fc.derivative(n - 1).unwrap();
        let mut gens = vec![lift(&fc), lift(&num), &(&t * &lift(&fy)) - &P::one(n + 1)];
        gens.extend(planes.iter().map(|p| lift(&map_c.transform_polynomial(p))));
        let system = Ideal::new(n + 1, gens);
        total += if bad.is_empty() {
            system.groebner(MonomialOrder::GrevLex).quotient_dimension().finite().ok_or(Error::PositiveDimensional)?
        } else {
            let target: Vec<P> = bad.iter().map(|b| lift(&b.compose(&back))).collect();
            local_count(&system, &target)?
        };
        cone.push(b.clone());
        bad.push(b);
        if Ideal::new(n + 1, cone.clone()).quotient_dimension().finite().is_some() {
            return Ok(total);
        }
    }
    Err(Error::SliceNotSupported("the curve section passes through singular points".into()))
}
