use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poly::{Field, Ideal, Polynomial};

use super::chart::{multisets, JetChart, JetVar};

/// Applies `D_i` to `p`, where `p` lives on `chart` and involves only
/// coordinates of order below `chart.r()`. The result stays on `chart`.
pub(crate) fn apply_total_derivative<F: Field>(chart: &JetChart, p: &Polynomial<F>, i: usize) -> Polynomial<F> {
    let nv = chart.nvars();
    let mut out = p.derivative(chart.x(i)).expect("x_i in chart");
    for v in p.vars_used() {
        let raised = match chart.var(v) {
            JetVar::X(_) => continue,
            JetVar::Y(j) => chart.jet(*j, &[i]),
            JetVar::Jet(idx) => chart.index_of(&JetVar::Jet(idx.raised(i))),
        };
        let target = raised.expect("coordinate order below the chart order");
        let d = p.derivative(v).expect("variable in chart");
        out = &out + &(&Polynomial::var(nv, target) * &d);
    }
    out
}

/// `D_i p` for `p` on `chart`; the result lives on the chart of order
/// `chart.r() + 1`.
pub fn total_derivative<F: Field>(chart: &JetChart, p: &Polynomial<F>, i: usize) -> Result<Polynomial<F>> {
    if i < 1 || i > chart.k() {
        return Err(Error::Bounds(format!("derivative index {i} outside 1..={}", chart.k())));
    }
    let up = chart.with_order(chart.r() + 1);
    Ok(apply_total_derivative(&up, &p.extend(up.nvars()), i))
}

/// The generators of a variety together with all their total derivatives
/// `D_α g`, `|α| <= r`, on the order-`r` chart. Derivatives are taken once
/// per multiset `α`.
pub fn prolong_ideal<F: Field>(chart: &JetChart, gens: &[Polynomial<F>]) -> Result<Ideal<F>> {
    let nv = chart.nvars();
    let base = chart.base_len();
    let mut out = Vec::new();
    for g in gens {
        if g.vars_used().iter().any(|&v| v >= base) {
            return Err(Error::Degenerate("variety generators may involve only x_i and y_j".into()));
        }
        let g = if g.nvars() == nv { g.clone() } else { g.extend(nv) };
        let mut memo: HashMap<Vec<usize>, Polynomial<F>> = HashMap::new();
        memo.insert(Vec::new(), g.clone());
        out.push(g);
        for s in 1..=chart.r() {
            for alpha in multisets(chart.k(), s) {
                let (last, prefix) = alpha.split_last().unwrap();
                let d = apply_total_derivative(chart, &memo[prefix], *last);
                if !d.is_zero() {
                    out.push(d.clone());
                }
                memo.insert(alpha, d);
            }
        }
    }
    Ok(Ideal::new(nv, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Rational};

    type P = Polynomial<Rational>;

    #[test]
    fn derivative_of_cubic() {
        let c1 = JetChart::new(2, 1, 0).unwrap();
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.pow(3) + y.pow(2) - P::one(2);
        let d = total_derivative(&c1, &f, 1).unwrap();
        let names = c1.with_order(1).names();
        assert_eq!(d.to_text(&names), "3*x^2 + 2*y*y'");
        let d2 = total_derivative(&c1.with_order(1), &d, 1).unwrap();
        assert_eq!(d2.to_text(&c1.with_order(2).names()), "2*y'^2 + 2*y*y'' + 6*x");
    }

    #[test]
    fn derivative_of_constant() {
        let c = JetChart::new(3, 2, 1).unwrap();
        let k = P::constant(c.nvars(), rat(7));
        assert!(total_derivative(&c, &k, 2).unwrap().is_zero());
        assert!(total_derivative(&c, &k, 3).is_err());
    }

    #[test]
    fn prolongation_of_cubic() {
        let c = JetChart::new(2, 1, 2).unwrap();
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let f = x.pow(3) + y.pow(2) - P::one(2);
        let ideal = prolong_ideal(&c, &[f.clone()]).unwrap();
        let texts: Vec<String> = ideal.generators().iter().map(|g| g.to_text(&c.names())).collect();
        assert_eq!(texts, vec!["x^3 + y^2 - 1", "3*x^2 + 2*y*y'", "2*y'^2 + 2*y*y'' + 6*x"]);
        let zero = prolong_ideal(&c.with_order(0), &[f]).unwrap();
        assert_eq!(zero.generators().len(), 1);
    }
}
