use super::field::Field;

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    Underdetermined,
    Inconsistent,
}

/// Gauss-Jordan elimination over an exact field.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Solution<F> {
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for c in col..=cols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for c in col..=cols {
                    let t = m[row][c].clone() * factor.clone();
                    m[i][c] = m[i][c].clone() - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..cols).map(|i| m[i][cols].clone()).collect())
}
