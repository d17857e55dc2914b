//! The invariant vector `γ^f = (γ_0, …, γ_r)` of a differential equation.
//!
//! Entries come from three routes: evaluation at a distinguished variable,
//! the diagonal top-degree test, and calibration against test varieties
//! with known cuspidal numbers and measured solution degrees.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::counter::measure_degree;
use crate::equation::{DifferentialEquation, Entry, Provenance};
use crate::error::{Error, Result};
use crate::jet::{JetChart, ProjectiveMap};
use crate::parse::parse_expression;
use crate::poly::linalg::{solve, Solution};
use crate::poly::{Field, Gf2, Polynomial, Rational};
use crate::variety::{Smoothness, Variety};

type P = Polynomial<Rational>;

/// Coefficient ring of an invariant pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Rationals,
    Mod2,
}

impl Coefficients {
    pub fn reduce(self, v: i64) -> i64 {
        match self {
            Coefficients::Rationals => v,
            Coefficients::Mod2 => v.rem_euclid(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationInvariants {
    pub entries: Vec<Entry>,
    pub coefficients: Coefficients,
}

impl EquationInvariants {
    pub fn values(&self) -> Option<Vec<i64>> {
        crate::equation::values(&self.entries)
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }
}

/// A variety with known cuspidal numbers and the measured degree of its
/// solution divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationTest {
    pub name: String,
    pub cuspidal: Vec<i64>,
    pub measured: i64,
}

/// Values an entry received from different routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteCheck {
    pub index: usize,
    pub routes: Vec<(Provenance, i64)>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub invariants: EquationInvariants,
    pub tests: Vec<CalibrationTest>,
    pub checks: Vec<RouteCheck>,
}

/// `deg f` if some variable of `vars` carries the full degree of `f`.
fn distinguished(f: &P, vars: &[usize]) -> Option<i64> {
    let d = f.total_degree()?;
    if d == 0 {
        return None;
    }
    vars.iter().find(|&&v| f.restrict_to(|u| u == v).degree_in(v) == d).map(|_| d as i64)
}

fn pure_jets(chart: &JetChart, s: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for j in 1..=chart.n() - chart.k() {
        for i in 1..=chart.k() {
            out.extend(chart.jet(j, &vec![i; s]));
        }
    }
    out
}

pub fn gamma_top_distinguished(eq: &DifferentialEquation) -> Option<i64> {
    let chart = eq.chart();
    let vars = if chart.r() == 0 { (0..chart.base_len()).collect() } else { pure_jets(chart, chart.r()) };
    distinguished(eq.polynomial(), &vars)
}

/// Keeps every pure top-order jet at once; applies when the restriction
/// still has the full degree.
pub fn gamma_top_diagonal(eq: &DifferentialEquation) -> Option<i64> {
    let chart = eq.chart();
    if chart.r() == 0 {
        return None;
    }
    let keep = pure_jets(chart, chart.r());
    let f = eq.polynomial();
    let d = f.total_degree()?;
    let restricted = f.restrict_to(|v| keep.contains(&v));
    (restricted.total_degree() == Some(d)).then_some(d as i64)
}

/// Whether `f`, rewritten by the coordinate swap `a <-> b` (homogeneous
/// indices), is nonzero at the zero jet of the new chart.
fn nonzero_after_swap(chart: &JetChart, f: &P, a: usize, b: usize) -> bool {
    let mut perm: Vec<usize> = (0..=chart.n()).collect();
    perm.swap(a, b);
    ProjectiveMap::permutation(&perm).and_then(|m| m.prolong(chart, f)).map(|g| !g.constant_term().is_zero()).unwrap_or(false)
}

/// Also requires `f` to stay nonzero at the vertical jet closing the line
/// family, which fails once higher jets enter (`y'' + y'` has `γ_1 = 3`).
pub fn gamma_1_distinguished(eq: &DifferentialEquation) -> Option<i64> {
    let chart = eq.chart();
    if chart.r() < 1 {
        return None;
    }
    let f = eq.polynomial();
    let d = f.total_degree().filter(|&d| d > 0)?;
    for j in 1..=chart.n() - chart.k() {
        for i in 1..=chart.k() {
            let Some(v) = chart.jet(j, &[i]) else { continue };
            if f.restrict_to(|u| u == v).degree_in(v) == d && nonzero_after_swap(chart, f, chart.x(i), chart.y(j)) {
                return Some(d as i64);
            }
        }
    }
    None
}

/// Also requires `f` to stay nonzero where the `x_i`-axis meets infinity.
pub fn gamma_0_distinguished(eq: &DifferentialEquation) -> Option<i64> {
    let chart = eq.chart();
    let f = eq.polynomial();
    let d = f.total_degree().filter(|&d| d > 0)?;
    (1..=chart.k())
        .find(|&i| f.restrict_to(|u| u == chart.x(i)).degree_in(chart.x(i)) == d && nonzero_after_swap(chart, f, chart.x(i), chart.n()))
        .map(|_| d as i64)
}

/// Entries given by evaluation routes, with every route that applied.
fn route_values(eq: &DifferentialEquation) -> Vec<Vec<(Provenance, i64)>> {
    let r = eq.order();
    let mut out = vec![Vec::new(); r + 1];
    if let Some(v) = gamma_top_distinguished(eq) {
        out[r].push((Provenance::Distinguished, v));
    }
    if let Some(v) = gamma_top_diagonal(eq) {
        out[r].push((Provenance::Diagonal, v));
    }
    if r > 1 {
        if let Some(v) = gamma_1_distinguished(eq) {
            out[1].push((Provenance::Distinguished, v));
        }
    }
    if r > 0 {
        if let Some(v) = gamma_0_distinguished(eq) {
            out[0].push((Provenance::Distinguished, v));
        }
    }
    out
}

fn solve_in<F: Field>(a: &[Vec<i64>], b: &[i64]) -> Solution<F> {
    let a: Vec<Vec<F>> = a.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect();
    let b: Vec<F> = b.iter().map(|&v| F::from_i64(v)).collect();
    solve(&a, &b)
}

/// Completes `known` from the linear system `Σ_s γ_s γ^s_S = deg S(f)` over
/// the tests. Unknown entries whose cuspidal numbers vanish on every test
/// stay unknown.
pub fn calibrate(known: &[Entry], tests: &[CalibrationTest], coefficients: Coefficients) -> Result<EquationInvariants> {
    let len = known.len();
    let cusp = |t: &CalibrationTest, s: usize| coefficients.reduce(t.cuspidal.get(s).copied().unwrap_or(0));
    let unknown: Vec<usize> = (0..len).filter(|&s| known[s].value.is_none() && tests.iter().any(|t| cusp(t, s) != 0)).collect();
    let mut a = Vec::with_capacity(tests.len());
    let mut b = Vec::with_capacity(tests.len());
    for t in tests {
        let mut rhs = coefficients.reduce(t.measured);
        for (s, e) in known.iter().enumerate() {
            if let Some(v) = e.value {
                rhs -= coefficients.reduce(v) * cusp(t, s);
            }
        }
        a.push(unknown.iter().map(|&s| cusp(t, s)).collect::<Vec<_>>());
        b.push(coefficients.reduce(rhs));
    }
    let mut entries: Vec<Entry> = known.iter().map(|e| Entry { value: e.value.map(|v| coefficients.reduce(v)), provenance: e.provenance }).collect();
    if unknown.is_empty() {
        if b.iter().any(|&v| v != 0) {
            return Err(Error::NonIntegral("known entries contradict a measured degree".into()));
        }
        return Ok(EquationInvariants { entries, coefficients });
    }
    let solution: Vec<i64> = match coefficients {
        Coefficients::Rationals => match solve_in::<Rational>(&a, &b) {
            Solution::Unique(x) => x
                .into_iter()
                .map(|q| if q.is_integer() { Ok(q.to_integer().try_into().map_err(|_| Error::NonIntegral("entry out of range".into()))?) } else { Err(Error::NonIntegral(format!("solution {q} is not an integer"))) })
                .collect::<Result<_>>()?,
            Solution::Underdetermined => return Err(Error::SingularSystem),
            Solution::Inconsistent => return Err(Error::NonIntegral("measured degrees are inconsistent".into())),
        },
        Coefficients::Mod2 => match solve_in::<Gf2>(&a, &b) {
            Solution::Unique(x) => x.into_iter().map(|v| if v.is_one() { 1 } else { 0 }).collect(),
            Solution::Underdetermined => return Err(Error::SingularSystem),
            Solution::Inconsistent => return Err(Error::NonIntegral("measured degrees are inconsistent mod 2".into())),
        },
    };
    for (&s, v) in unknown.iter().zip(solution) {
        entries[s] = Entry::known(v, Provenance::Calibrated);
    }
    Ok(EquationInvariants { entries, coefficients })
}

fn sum_of(pieces: impl Fn(usize) -> String, count: usize) -> String {
    (1..=count).map(pieces).collect::<Vec<_>>().join(" + ")
}

/// Measures `eq` on each variety concurrently.
fn measure_all(eq: &DifferentialEquation, varieties: Vec<(String, Variety, Vec<i64>)>, seed: u64) -> Result<Vec<CalibrationTest>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = varieties
            .into_iter()
            .map(|(name, s, cusp)| {
                scope.spawn(move || measure_degree(&s, eq, seed).map(|r| CalibrationTest { name, cuspidal: cusp, measured: r.total as i64 }))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("measurement task panicked")).collect()
    })
}

/// The smooth quadric and cubic of the chart's dimension, with cuspidal
/// numbers `(2, 2)` and `(3, 6)`.
pub fn standard_tests(eq: &DifferentialEquation, seed: u64) -> Result<Vec<CalibrationTest>> {
    let chart = eq.chart();
    let (n, k) = (chart.n(), chart.k());
    if k + 1 != n {
        return Err(Error::SliceNotSupported(format!("no standard test varieties for n = {n}, k = {k}")));
    }
    let base = chart.with_order(0);
    let xs = |e: u32| sum_of(|i| format!("x{i}^{e}"), k);
    let quadric = format!("{} + y1^2 - 1", xs(2));
    let cubic = if n == 2 { "x1^3 + y1^2 - 1".to_string() } else { format!("{} + y1^2 + 1", xs(3)) };
    let mut varieties = Vec::new();
    for (src, cusp) in [(quadric, vec![2, 2]), (cubic, vec![3, 6])] {
        let g = parse_expression(&src, &base)?;
        varieties.push((src, Variety::new(n, k, vec![g], Smoothness::Smooth)?, cusp));
    }
    measure_all(eq, varieties, seed)
}

/// The cuspidal cubic `x^3 + y^2 = 0` with its known cuspidal numbers
/// `(3, 3, 1)`. Used when an order-two entry has to be calibrated.
pub fn cusp_test(eq: &DifferentialEquation, seed: u64) -> Result<CalibrationTest> {
    let chart = eq.chart();
    if !chart.is_plane_curve() {
        return Err(Error::SliceNotSupported("the cuspidal cubic test needs a plane-curve equation".into()));
    }
    let g = parse_expression("x^3 + y^2", &chart.with_order(0))?;
    let t = Variety::new(2, 1, vec![g], Smoothness::Singular)?;
    Ok(measure_all(eq, vec![("x^3 + y^2".into(), t, vec![3, 3, 1])], seed)?.remove(0))
}

/// Restriction of an equation on a hypersurface chart to varieties that
/// are cylinders over plane curves in `(x_1, y_1)`: every jet with an index
/// other than 1 vanishes there.
pub fn reduce_to_cylinder(eq: &DifferentialEquation) -> Result<DifferentialEquation> {
    let chart = eq.chart();
    if chart.k() + 1 != chart.n() {
        return Err(Error::SliceNotSupported("cylinder reduction needs a hypersurface chart".into()));
    }
    let plane = JetChart::new(2, 1, chart.r())?;
    let mut map = vec![usize::MAX; chart.nvars()];
    map[chart.x(1)] = plane.x(1);
    map[chart.y(1)] = plane.y(1);
    for m in 1..=chart.r() {
        map[chart.curve_jet(m).expect("order within chart")] = plane.curve_jet(m).expect("order within chart");
    }
    let kept = eq.polynomial().restrict_to(|v| map[v] != usize::MAX);
    let slots: Vec<usize> = map.iter().map(|&m| if m == usize::MAX { 0 } else { m }).collect();
    let reduced = kept.remap(&slots, plane.nvars());
    if reduced.is_zero() || reduced.is_constant() {
        return Err(Error::Degenerate("the equation has no content on cylinders".into()));
    }
    DifferentialEquation::new(&plane, reduced)
}

/// Mod-2 tests: the cylinders over the smooth cubic `x^3 + y^2 + 1 = 0`
/// and the cuspidal cubic `x^3 + y^2 = 0`, measured on the plane curves.
pub fn cylinder_tests(eq: &DifferentialEquation, seed: u64) -> Result<Vec<CalibrationTest>> {
    let reduced = reduce_to_cylinder(eq)?;
    let base = reduced.chart().with_order(0);
    let s = Variety::new(2, 1, vec![parse_expression("x^3 + y^2 + 1", &base)?], Smoothness::Smooth)?;
    let t = Variety::new(2, 1, vec![parse_expression("x^3 + y^2", &base)?], Smoothness::Singular)?;
    measure_all(&reduced, vec![("x1^3 + y1^2 + 1".into(), s, vec![3, 6, 0]), ("x1^3 + y1^2".into(), t, vec![3, 3, 1])], seed)
}

fn check(index: usize, routes: Vec<(Provenance, i64)>) -> RouteCheck {
    let agree = routes.windows(2).all(|w| w[0].1 == w[1].1);
    RouteCheck { index, routes, agree }
}

/// Full pipeline: evaluation routes, user entries (which take precedence),
/// then calibration for the remaining entries.
pub fn compute_invariants(eq: &DifferentialEquation, user: &[(usize, i64)], coefficients: Coefficients, seed: u64) -> Result<InvariantsReport> {
    let r = eq.order();
    let routes = route_values(eq);
    let mut known: Vec<Entry> = routes.iter().map(|rs| rs.first().map_or(Entry::unknown(), |&(p, v)| Entry::known(v, p))).collect();
    for &(s, v) in user {
        if s > r {
            return Err(Error::Bounds(format!("invariant index {s} exceeds the order {r}")));
        }
        known[s] = Entry::known(v, Provenance::User);
    }
    let mut checks: Vec<RouteCheck> = Vec::new();
    for (s, rs) in routes.iter().enumerate() {
        let mut all = rs.clone();
        if known[s].provenance == Provenance::User {
            all.push((Provenance::User, known[s].value.unwrap()));
        }
        if all.len() > 1 {
            checks.push(check(s, all));
        }
    }
    if known.iter().all(|e| e.value.is_some()) {
        let entries = known.into_iter().map(|e| Entry { value: e.value.map(|v| coefficients.reduce(v)), provenance: e.provenance }).collect();
        return Ok(InvariantsReport { invariants: EquationInvariants { entries, coefficients }, tests: Vec::new(), checks });
    }
    let tests = match coefficients {
        Coefficients::Rationals => standard_tests(eq, seed)?,
        Coefficients::Mod2 => cylinder_tests(eq, seed)?,
    };
    let invariants = calibrate(&known, &tests, coefficients)?;
    Ok(InvariantsReport { invariants, tests, checks })
}

/// Calibrates every entry from the tests alone and compares with the
/// entries obtained by evaluation routes.
pub fn calibration_checks(eq: &DifferentialEquation, tests: &[CalibrationTest]) -> Result<(EquationInvariants, Vec<RouteCheck>)> {
    let r = eq.order();
    let blind = calibrate(&vec![Entry::unknown(); r + 1], tests, Coefficients::Rationals)?;
    let mut checks = Vec::new();
    for (s, rs) in route_values(eq).into_iter().enumerate() {
        if let Some(c) = blind.entries[s].value {
            if !rs.is_empty() {
                let mut routes = rs;
                routes.push((Provenance::Calibrated, c));
                checks.push(check(s, routes));
            }
        }
    }
    Ok((blind, checks))
}
