//! Even positive definite lattices and the local and global invariants that
//! parametrize the lifting formulas.

mod counting;
mod disc;
mod global;
mod local;
mod overlattice;
mod quadform;
mod smith;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, Rational};
use crate::error::{JflError, Result};

pub use counting::{a_s_count_direct, a_s_count_local, a_s_local_factor, forced_k_parity};
pub use disc::{disc_group, is_maximal, DiscGroup};
pub use global::{global_data, GlobalData};
pub(crate) use local::kernel_mod_p;
pub use local::{local_data, s_p, LocalData, PrimeClass};
pub use overlattice::maximal_overlattice_at;
pub use quadform::{anisotropic_dim, diagonalize, eta_general, hasse_invariant};
pub use smith::{smith_normal_form, Smith};

/// Integer Gram matrix `S` of a positive definite even lattice `L = Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenLattice {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub gram: Vec<Vec<i64>>,
}

impl EvenLattice {
    /// Validates symmetry, even diagonal and positive definiteness.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let l = EvenLattice { name: None, gram };
        l.validate()?;
        Ok(l)
    }

    pub fn named(name: &str, gram: Vec<Vec<i64>>) -> Result<Self> {
        let mut l = Self::new(gram)?;
        l.name = Some(name.to_string());
        Ok(l)
    }

    /// Parses `{"name"?: string, "gram": [[int]]}` and validates it.
    pub fn from_json(text: &str) -> Result<Self> {
        let l: EvenLattice = serde_json::from_str(text)
            .map_err(|e| JflError::InvalidInput(format!("gram JSON: {e}")))?;
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.gram.len();
        if n == 0 {
            return Err(JflError::InvalidInput(
                "gram matrix must be nonempty".into(),
            ));
        }
        if self.gram.iter().any(|r| r.len() != n) {
            return Err(JflError::InvalidInput("gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(JflError::InvalidInput(format!(
                        "gram matrix must be symmetric (entry ({i},{j}))"
                    )));
                }
            }
            if self.gram[i][i] % 2 != 0 {
                return Err(JflError::InvalidInput(format!(
                    "gram diagonal must be even so that S[x] is even (entry ({i},{i}))"
                )));
            }
        }
        for m in 1..=n {
            let minor: Vec<Vec<i64>> = self.gram[..m].iter().map(|r| r[..m].to_vec()).collect();
            if !det_big(&minor).is_positive() {
                return Err(JflError::InvalidInput(format!(
                    "gram matrix must be positive definite (leading minor of size {m} is not positive)"
                )));
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    #[must_use]
    pub fn det(&self) -> i64 {
        det_big(&self.gram)
            .to_i64()
            .expect("determinant exceeds i64")
    }

    #[must_use]
    pub fn gram_rat(&self) -> Vec<Vec<Rational>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    /// `S(x, y) = xᵀSy`.
    #[must_use]
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, &s) in row.iter().enumerate() {
                if s != 0 {
                    acc += &x[i] * &y[j] * int(s);
                }
            }
        }
        acc
    }

    /// `S[x] = xᵀSx`.
    #[must_use]
    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.bilinear(x, x)
    }

    /// `S·x`.
    #[must_use]
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(x).map(|(&s, xi)| int(s) * xi).sum())
            .collect()
    }
}

/// Determinant of an integer matrix by fraction-free elimination.
#[must_use]
pub fn det_big(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    prev * sign
}

/// The catalog lattices `A1 = (2)`, `A1A1`, `A2`, `D4`, `E8`.
pub fn catalog(name: &str) -> Result<EvenLattice> {
    let gram = match name.to_ascii_uppercase().as_str() {
        "A1" => vec![vec![2]],
        "A1A1" => vec![vec![2, 0], vec![0, 2]],
        "A2" => vec![vec![2, 1], vec![1, 2]],
        "D4" => vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ],
        "E8" => vec![
            vec![2, -1, 0, 0, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0, 0, 0],
            vec![0, -1, 2, -1, 0, 0, 0, -1],
            vec![0, 0, -1, 2, -1, 0, 0, 0],
            vec![0, 0, 0, -1, 2, -1, 0, 0],
            vec![0, 0, 0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, 0, 0, -1, 2, 0],
            vec![0, 0, -1, 0, 0, 0, 0, 2],
        ],
        _ => {
            return Err(JflError::InvalidInput(format!(
                "unknown catalog lattice {name:?}"
            )))
        }
    };
    EvenLattice::named(name, gram)
}

/// Names accepted by [`catalog`].
pub const CATALOG: [&str; 5] = ["A1", "A1A1", "A2", "D4", "E8"];

/// `(n+1)`-dimensional Gram matrix `S_{a,α} = [[S, Sα], [αᵀS, 2a]]`; integral
/// whenever `α ∈ L*`.
pub fn extended_gram(s: &EvenLattice, a: i64, alpha: &[Rational]) -> Result<EvenLattice> {
    let n = s.rank();
    let sa = s.apply(alpha);
    let mut col = Vec::with_capacity(n);
    for v in &sa {
        if !v.is_integer() {
            return Err(JflError::InvalidInput(
                "α must lie in the dual lattice L*".into(),
            ));
        }
        col.push(v.to_integer().to_i64().expect("entry exceeds i64"));
    }
    let mut gram: Vec<Vec<i64>> = s.gram.clone();
    for (row, c) in gram.iter_mut().zip(&col) {
        row.push(*c);
    }
    let mut last = col;
    last.push(2 * a);
    gram.push(last);
    EvenLattice::new(gram)
}
