use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counter::{measure_degree, small_nonzero};
use crate::equation::{DifferentialEquation, Entry, Provenance};
use crate::error::{Error, Result};
use crate::invariants::{compute_invariants, Coefficients};
use crate::jet::JetChart;
use crate::poly::{Ideal, MonomialOrder, Polynomial, Rational};

const MAX_SLICE_TRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Smoothness {
    Smooth,
    Normal,
    Unknown,
    Singular,
}

impl Smoothness {
    /// Smooth or normal: cuspidal numbers of order two and above vanish.
    pub fn is_regular(self) -> bool {
        matches!(self, Smoothness::Smooth | Smoothness::Normal)
    }
}

/// A subvariety of the affine chart of projective `n`-space, given by
/// generators in `x_1..x_k, y_1..y_{n-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variety {
    n: usize,
    k: usize,
    gens: Vec<Polynomial<Rational>>,
    smoothness: Smoothness,
    genus: Option<i64>,
}

impl Variety {
    pub fn new(n: usize, k: usize, gens: Vec<Polynomial<Rational>>, smoothness: Smoothness) -> Result<Self> {
        let chart = JetChart::new(n, k, 0)?;
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::Degenerate("variety needs a nonzero generator".into()));
        }
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.is_constant() {
                return Err(Error::Degenerate("a nonzero constant generator defines the empty set".into()));
            }
            let g = if g.nvars() > chart.nvars() { g.truncate(chart.nvars()).map_err(|_| Error::Degenerate("variety generators may involve only x_i and y_j".into()))? } else { g };
            out.push(g);
        }
        if (n - k) == 1 && out.len() != 1 {
            return Err(Error::Degenerate("a hypersurface needs exactly one generator".into()));
        }
        Ok(Variety { n, k, gens: out, smoothness, genus: None })
    }

    pub fn with_genus(mut self, genus: Option<i64>) -> Self {
        self.genus = genus;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Polynomial<Rational>] {
        &self.gens
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn genus(&self) -> Option<i64> {
        self.genus
    }

    pub fn is_hypersurface(&self) -> bool {
        self.k + 1 == self.n
    }

    pub fn is_plane_curve(&self) -> bool {
        self.n == 2 && self.k == 1
    }

    /// The chart of order zero on which the generators live.
    pub fn base_chart(&self) -> JetChart {
        JetChart::new(self.n, self.k, 0).expect("validated on construction")
    }

    /// The defining polynomial of a hypersurface.
    pub fn equation(&self) -> &Polynomial<Rational> {
        &self.gens[0]
    }
}

/// The vector `(γ^0, …, γ^r)` of a variety, with provenance per entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalNumbers {
    pub entries: Vec<Entry>,
}

impl CuspidalNumbers {
    pub fn from_values(values: &[i64], provenance: Provenance) -> Self {
        CuspidalNumbers { entries: values.iter().map(|&v| Entry::known(v, provenance)).collect() }
    }

    pub fn values(&self) -> Option<Vec<i64>> {
        crate::equation::values(&self.entries)
    }

    /// Extends to `len` entries: zeros for regular varieties, unknown
    /// otherwise.
    pub fn padded(&self, len: usize, smoothness: Smoothness) -> Self {
        let mut entries = self.entries.clone();
        while entries.len() < len {
            let s = entries.len();
            entries.push(if s >= 2 && smoothness.is_regular() { Entry::known(0, Provenance::Smooth) } else { Entry::unknown() });
        }
        CuspidalNumbers { entries }
    }
}

fn random_linear(rng: &mut ChaCha8Rng, nvars: usize) -> Polynomial<Rational> {
    (0..nvars).fold(Polynomial::zero(nvars), |acc, v| &acc + &Polynomial::var(nvars, v).scale(&Rational::from_integer(small_nonzero(rng, 29).into())))
}

/// Number of points of the projective closure on `k` random hyperplanes,
/// counted in a random affine chart of `P^n`.
fn slice_count(s: &Variety, rng: &mut ChaCha8Rng) -> Option<u64> {
    let n = s.n();
    let closure: Vec<Polynomial<Rational>> = Ideal::new(n, s.gens.clone()).groebner(MonomialOrder::GrevLex).polynomials().iter().map(|g| g.homogenize()).collect();
    let mut gens = closure;
    for _ in 0..s.k() {
        gens.push(random_linear(rng, n + 1));
    }
    gens.push(&random_linear(rng, n + 1) - &Polynomial::one(n + 1));
    Ideal::new(n + 1, gens).groebner(MonomialOrder::GrevLex).quotient_dimension().finite()
}

/// `γ^0`: total degree for a hypersurface, otherwise the number of points
/// on a random linear section, accepted once two sections agree.
pub fn degree(s: &Variety, seed: u64) -> Result<i64> {
    if s.is_hypersurface() {
        return Ok(s.equation().total_degree().unwrap_or(0) as i64);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..MAX_SLICE_TRIES {
        let c = slice_count(s, &mut rng);
        if c.is_some() && c == last {
            return Ok(c.unwrap() as i64);
        }
        last = c;
    }
    Err(Error::DegenerateSlice(MAX_SLICE_TRIES))
}

/// `γ^1` of a smooth or normal variety: `d(d-1)` when the generic curve
/// section is a plane curve, `2g - 2 + 2d` otherwise.
pub fn class_smooth(s: &Variety, seed: u64) -> Result<i64> {
    if !s.smoothness.is_regular() {
        return Err(Error::Degenerate("the class formula needs a smooth or normal variety".into()));
    }
    let d = degree(s, seed)?;
    if s.is_hypersurface() {
        return Ok(d * (d - 1));
    }
    let g = s.genus.ok_or(Error::MissingGenus)?;
    Ok(2 * g - 2 + 2 * d)
}

/// `γ^1` as the measured degree of `S(y^1_1)`, whose invariants are `(0, 1)`.
pub fn class_measured(s: &Variety, seed: u64) -> Result<i64> {
    let chart = JetChart::new(s.n, s.k, 1)?;
    let f = Polynomial::var(chart.nvars(), chart.jet(1, &[1]).expect("order one"));
    let eq = DifferentialEquation::new(&chart, f)?;
    Ok(measure_degree(s, &eq, seed)?.total as i64)
}

/// `γ^s` from `deg S(eq) = Σ_t γ^eq_t γ^t_S`, given the invariants of `eq`
/// (of order `s`) and the lower cuspidal numbers.
pub fn higher_cuspidal(s: &Variety, eq: &DifferentialEquation, gamma_eq: &[i64], lower: &[i64], seed: u64) -> Result<i64> {
    let order = eq.order();
    if gamma_eq.len() != order + 1 || lower.len() != order {
        return Err(Error::Bounds(format!("need {} invariants and {} lower cuspidal numbers", order + 1, order)));
    }
    let top = gamma_eq[order];
    if top == 0 {
        return Err(Error::Degenerate("the top invariant of the test equation vanishes".into()));
    }
    let measured = measure_degree(s, eq, seed)?.total as i64;
    let rest = measured - gamma_eq.iter().zip(lower).map(|(a, b)| a * b).sum::<i64>();
    if rest % top != 0 || rest / top < 0 {
        return Err(Error::NonIntegral(format!("{rest} / {top} is not a non-negative integer")));
    }
    Ok(rest / top)
}

/// `(γ^0, …, γ^r)`. Regular varieties use the closed formulas and vanish
/// from order two on; otherwise the class and `γ^2` are measured through
/// `y^1_1` and `y^1_11`, and higher entries are unknown.
pub fn cuspidal_numbers(s: &Variety, r: usize, seed: u64) -> Result<CuspidalNumbers> {
    let d = degree(s, seed)?;
    let d_prov = if s.is_hypersurface() { Provenance::Formula } else { Provenance::Measured };
    let mut entries = vec![Entry::known(d, d_prov)];
    if r >= 1 {
        if s.smoothness.is_regular() {
            entries.push(Entry::known(class_smooth(s, seed)?, Provenance::Formula));
        } else {
            entries.push(Entry::known(class_measured(s, seed)?, Provenance::Measured));
        }
    }
    if r >= 2 && !s.smoothness.is_regular() {
        let chart = JetChart::new(s.n, s.k, 2)?;
        let f = Polynomial::var(chart.nvars(), chart.jet(1, &[1, 1]).expect("order two"));
        let eq = DifferentialEquation::new(&chart, f)?;
        let gamma = compute_invariants(&eq, &[], Coefficients::Rationals, seed)?.invariants.values().ok_or(Error::SingularSystem)?;
        let lower = [d, entries[1].value.unwrap()];
        entries.push(Entry::known(higher_cuspidal(s, &eq, &gamma, &lower, seed)?, Provenance::Measured));
    }
    Ok(CuspidalNumbers { entries }.padded(r + 1, s.smoothness))
}
