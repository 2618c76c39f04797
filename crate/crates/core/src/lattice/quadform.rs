//! Rational quadratic forms over `Q_p`: diagonalization, Hasse invariants and
//! the normalized invariant `η_p`.

use num_traits::{One, Zero};

use crate::arith::{hilbert_symbol, int, psi_bar, Place, Rational};
use crate::error::{JflError, Result};

/// Diagonal entries of a form congruent over `Q` to the symmetric matrix `b`.
pub fn diagonalize(b: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = b.to_vec();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(i, j);
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                // x_i ↦ x_i + x_j turns the diagonal entry into 2·b_ij.
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[i][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][i] += v;
                }
            } else {
                return Err(JflError::InvalidInput("degenerate quadratic form".into()));
            }
        }
        let piv = m[i][i].clone();
        for r in i + 1..n {
            let f = &m[r][i] / &piv;
            if f.is_zero() {
                continue;
            }
            for c in i..n {
                let v = &f * &m[i][c];
                m[r][c] -= v;
            }
        }
        for c in i + 1..n {
            m[i][c] = Rational::zero();
        }
        for r in i + 1..n {
            m[r][i] = Rational::zero();
        }
        diag.push(piv);
    }
    Ok(diag)
}

/// Classical Hasse invariant `Π_{i<j} (a_i, a_j)_p` of a diagonal form.
#[must_use]
pub fn hasse_invariant(diag: &[Rational], p: u64) -> i32 {
    let mut h = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            h *= hilbert_symbol(&diag[i], &diag[j], Place::Finite(p));
        }
    }
    h
}

fn det_diag(diag: &[Rational]) -> Rational {
    diag.iter().fold(Rational::one(), |acc, x| acc * x)
}

fn hyperbolic(m: usize) -> Vec<Rational> {
    (0..m).flat_map(|_| [int(1), int(-1)]).collect()
}

/// Whether the diagonal form is isometric over `Q_p` to the diagonal model
/// of equal dimension and determinant class.
fn same_class(diag: &[Rational], model: &[Rational], p: u64) -> bool {
    hasse_invariant(diag, p) == hasse_invariant(model, p)
}

/// `η_p(B)`: for odd rank `2 - η` is the dimension of the anisotropic
/// kernel; for even rank with `(-1)^{r/2} det B` a square, `η = ±1` for the
/// split and quaternionic cases; otherwise `B ≅ H^{r/2-1} ⊥ α·N` with `N`
/// the norm form of `Q_p(√((-1)^{r/2} det B))` and `η = χ_B(α)`.
pub fn eta_general(b: &[Vec<Rational>], p: u64) -> Result<i32> {
    let diag = diagonalize(b)?;
    let r = diag.len();
    let det = det_diag(&diag);
    let model = if r % 2 == 1 {
        let m = (r - 1) / 2;
        let c = if m % 2 == 0 { det } else { -det };
        let mut v = hyperbolic(m);
        v.push(c);
        v
    } else {
        let m = r / 2;
        let d = if m % 2 == 0 { det } else { -det };
        let mut v = hyperbolic(m - 1);
        v.push(int(1));
        v.push(-d);
        v
    };
    Ok(if same_class(&diag, &model, p) { 1 } else { -1 })
}

/// Dimension of the anisotropic kernel of `B` over `Q_p`.
pub fn anisotropic_dim(b: &[Vec<Rational>], p: u64) -> Result<usize> {
    let eta = eta_general(b, p)?;
    let diag = diagonalize(b)?;
    let r = diag.len();
    if r % 2 == 1 {
        return Ok(if eta == 1 { 1 } else { 3 });
    }
    let det = det_diag(&diag);
    let d = if (r / 2) % 2 == 0 { det } else { -det };
    if psi_bar(&d, p) == 1 {
        Ok(if eta == 1 { 0 } else { 4 })
    } else {
        Ok(2)
    }
}
