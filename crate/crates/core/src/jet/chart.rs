use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A jet coordinate `y^j_α`: dependent index `j` and a sorted multiset `α`
/// of independent indices, all 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetIndex {
    pub j: usize,
    pub alpha: Vec<usize>,
}

impl JetIndex {
    pub fn new(j: usize, mut alpha: Vec<usize>) -> Self {
        alpha.sort_unstable();
        JetIndex { j, alpha }
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    /// The index `α + {i}`.
    pub fn raised(&self, i: usize) -> JetIndex {
        let mut alpha = self.alpha.clone();
        alpha.push(i);
        JetIndex::new(self.j, alpha)
    }
}

/// One coordinate of a chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JetVar {
    X(usize),
    Y(usize),
    Jet(JetIndex),
}

impl JetVar {
    /// Jet order: 0 for `x_i` and `y_j`.
    pub fn order(&self) -> usize {
        match self {
            JetVar::Jet(idx) => idx.order(),
            _ => 0,
        }
    }
}

/// Multisets of size `s` drawn from `1..=k`, as sorted vectors in
/// lexicographic order.
pub fn multisets(k: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, s: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in min..=k {
            cur.push(i);
            go(k, s, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, s, 1, &mut Vec::new(), &mut out);
    out
}

/// The coordinates of the order-`r` chart for `k`-dimensional data in
/// `n`-space: `x_1..x_k`, `y_1..y_{n-k}`, then every jet coordinate
/// ordered by order, then `j`, then `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetChart {
    n: usize,
    k: usize,
    r: usize,
    vars: Vec<JetVar>,
    index: HashMap<JetVar, usize>,
}

impl JetChart {
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self> {
        if k < 1 || k + 1 > n {
            return Err(Error::Bounds(format!("need 1 <= k <= n-1, got n={n}, k={k}")));
        }
        if k > 9 || n - k > 9 {
            return Err(Error::Bounds("at most nine independent and nine dependent variables".into()));
        }
        let mut vars: Vec<JetVar> = (1..=k).map(JetVar::X).collect();
        vars.extend((1..=n - k).map(JetVar::Y));
        for s in 1..=r {
            let alphas = multisets(k, s);
            for j in 1..=n - k {
                for a in &alphas {
                    vars.push(JetVar::Jet(JetIndex { j, alpha: a.clone() }));
                }
            }
        }
        let index = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(JetChart { n, k, r, vars, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The plane-curve case, where primed aliases apply.
    pub fn is_plane_curve(&self) -> bool {
        self.n == 2 && self.k == 1
    }

    pub fn vars(&self) -> &[JetVar] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &JetVar {
        &self.vars[i]
    }

    pub fn index_of(&self, v: &JetVar) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Index of `x_i` (1-based `i`).
    pub fn x(&self, i: usize) -> usize {
        i - 1
    }

    /// Index of `y_j` (1-based `j`).
    pub fn y(&self, j: usize) -> usize {
        self.k + j - 1
    }

    /// Index of `y^j_α`, if it lies in the chart.
    pub fn jet(&self, j: usize, alpha: &[usize]) -> Option<usize> {
        if alpha.is_empty() {
            return (j >= 1 && j <= self.n - self.k).then(|| self.y(j));
        }
        self.index_of(&JetVar::Jet(JetIndex::new(j, alpha.to_vec())))
    }

    /// Index of the `m`-th derivative `y^(m)` in the plane-curve case.
    pub fn curve_jet(&self, m: usize) -> Option<usize> {
        self.jet(1, &vec![1; m])
    }

    /// Number of base coordinates `x_i, y_j`.
    pub fn base_len(&self) -> usize {
        self.n
    }

    /// Chart of the same kind with a different order. Charts of lower order
    /// are prefixes of charts of higher order.
    pub fn with_order(&self, r: usize) -> JetChart {
        JetChart::new(self.n, self.k, r).expect("same bounds")
    }

    pub fn name(&self, i: usize) -> String {
        let v = &self.vars[i];
        if self.is_plane_curve() {
            return match v {
                JetVar::X(_) => "x".into(),
                JetVar::Y(_) => "y".into(),
                JetVar::Jet(idx) => format!("y{}", "'".repeat(idx.order())),
            };
        }
        match v {
            JetVar::X(i) => format!("x{i}"),
            JetVar::Y(j) => format!("y{j}"),
            JetVar::Jet(idx) => {
                let digits: String = idx.alpha.iter().map(|d| d.to_string()).collect();
                format!("y{}_{}", idx.j, digits)
            }
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.nvars()).map(|i| self.name(i)).collect()
    }

    /// Resolves a textual variable name (canonical or alias).
    pub fn lookup(&self, name: &str) -> Option<usize> {
        if self.is_plane_curve() {
            match name {
                "x" => return Some(0),
                "y" => return Some(1),
                _ => {}
            }
            if let Some(rest) = name.strip_prefix('y') {
                if !rest.is_empty() && rest.chars().all(|c| c == '\'') {
                    return self.curve_jet(rest.len());
                }
            }
        }
        let var = parse_var_name(name)?;
        self.index_of(&var)
    }
}

impl fmt::Display for JetChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U^{}(n={}, k={})", self.r, self.n, self.k)
    }
}

/// Parses `x<i>`, `y<j>` or `y<j>_<digits>`.
fn parse_var_name(name: &str) -> Option<JetVar> {
    let digit = |c: char| c.to_digit(10).filter(|&d| d >= 1).map(|d| d as usize);
    let mut chars = name.chars();
    let head = chars.next()?;
    let idx = digit(chars.next()?)?;
    let rest: String = chars.collect();
    match (head, rest.as_str()) {
        ('x', "") => Some(JetVar::X(idx)),
        ('y', "") => Some(JetVar::Y(idx)),
        ('y', r) => {
            let digits = r.strip_prefix('_')?;
            if digits.is_empty() {
                return None;
            }
            let alpha: Option<Vec<usize>> = digits.chars().map(digit).collect();
            let alpha = alpha?;
            if alpha.windows(2).any(|w| w[0] > w[1]) {
                return None;
            }
            Some(JetVar::Jet(JetIndex { j: idx, alpha }))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_curve_chart() {
        let c = JetChart::new(2, 1, 2).unwrap();
        assert_eq!(c.names(), vec!["x", "y", "y'", "y''"]);
        assert_eq!(c.lookup("y''"), Some(3));
        assert_eq!(c.lookup("y1_11"), Some(3));
        assert_eq!(c.lookup("x1"), Some(0));
    }

    #[test]
    fn surface_chart() {
        let c = JetChart::new(3, 2, 2).unwrap();
        assert_eq!(c.names(), vec!["x1", "x2", "y1", "y1_1", "y1_2", "y1_11", "y1_12", "y1_22"]);
        assert_eq!(c.lookup("y1_21"), None);
    }

    #[test]
    fn order_zero_and_bounds() {
        let c = JetChart::new(4, 2, 0).unwrap();
        assert_eq!(c.names(), vec!["x1", "x2", "y1", "y2"]);
        assert!(JetChart::new(2, 2, 1).is_err());
        assert!(JetChart::new(2, 0, 1).is_err());
    }

    #[test]
    fn variable_count_formula() {
        for (n, k, r) in [(2, 1, 3), (3, 2, 3), (5, 2, 2), (4, 3, 2)] {
            let c = JetChart::new(n, k, r).unwrap();
            let binom = |a: usize, b: usize| -> usize { (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1)) };
            let expected = k + (n - k) * (0..=r).map(|s| binom(k + s - 1, s)).sum::<usize>();
            assert_eq!(c.nvars(), expected);
        }
    }

    #[test]
    fn lower_order_is_prefix() {
        let small = JetChart::new(3, 2, 1).unwrap();
        let big = JetChart::new(3, 2, 3).unwrap();
        assert_eq!(&big.vars()[..small.nvars()], small.vars());
    }
}
