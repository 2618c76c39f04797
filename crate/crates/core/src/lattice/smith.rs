//! Smith normal form of small integer matrices.

/// `u · a · v = diag(d)` with `u`, `v` unimodular and `d_i | d_{i+1}`,
/// `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub d: Vec<i128>,
    pub v: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Smith normal form of a square integer matrix.
#[must_use]
pub fn smith_normal_form(a: &[Vec<i64>]) -> Smith {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut u = identity(n);
    let mut v = identity(n);

    for t in 0..n {
        loop {
            // Pivot: smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }

            let mut dirty = false;
            for i in t + 1..n {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in 0..n {
                        m[i][j] -= q * m[t][j];
                        u[i][j] -= q * u[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..n {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for i in 0..n {
                        m[i][j] -= q * m[i][t];
                        v[i][j] -= q * v[i][t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| m[i][j] % m[t][t] != 0));
            match bad {
                Some(i) => {
                    for j in 0..n {
                        m[t][j] += m[i][j];
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for j in 0..n {
                m[t][j] = -m[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    let d = (0..n).map(|i| m[i][i]).collect();
    Smith { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn reconstructs_diagonal() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a);
        assert_eq!(s.d, vec![2, 6, 12]);
        let a128: Vec<Vec<i128>> = a
            .iter()
            .map(|r| r.iter().map(|&x| i128::from(x)).collect())
            .collect();
        let p = mul(&mul(&s.u, &a128), &s.v);
        for (i, row) in p.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { s.d[i] } else { 0 });
            }
        }
    }
}
