//! `Ĩ_{p,S,a,α}` indexed by the anisotropic-kernel dimension and radical
//! dimension of `S` and of the maximal lattice `S^∼` over `S_{a,α}`.

use super::{h_poly, hi, l_plain, l_poly, ph, HPoly};
use crate::error::{JflError, Result};

/// The admissible `(n₀, ∂, n₀', ∂')`.
pub const TABLE1_ROWS: [(usize, usize, usize, usize); 24] = [
    (0, 0, 1, 0),
    (0, 0, 1, 1),
    (1, 0, 0, 0),
    (1, 0, 2, 0),
    (1, 0, 2, 1),
    (1, 1, 0, 0),
    (1, 1, 2, 1),
    (1, 1, 2, 2),
    (2, 0, 1, 0),
    (2, 0, 3, 1),
    (2, 1, 1, 0),
    (2, 1, 1, 1),
    (2, 1, 3, 1),
    (2, 1, 3, 2),
    (2, 2, 1, 1),
    (2, 2, 3, 2),
    (3, 1, 2, 0),
    (3, 1, 2, 1),
    (3, 1, 4, 2),
    (3, 2, 2, 1),
    (3, 2, 2, 2),
    (3, 2, 4, 2),
    (4, 2, 3, 1),
    (4, 2, 3, 2),
];

/// The row `(n0, d) → (n0p, dp)` evaluated at `f ≥ 0`; rows outside the
/// table are rejected.
pub fn table1_lookup(n0: usize, d: usize, n0p: usize, dp: usize, f: i64, p: u64) -> Result<HPoly> {
    let l = l_plain;
    let lm = |e: i64| l_poly(e, -1);
    let s = |q: HPoly| q.scale(&ph(p, 1));
    let si = |q: HPoly| q.scale(&ph(p, -1));
    let pp = |q: HPoly| q.scale(&hi(p as i64));
    Ok(match (n0, d, n0p, dp) {
        (0, 0, 1, 0) => l(2 * f),
        (0, 0, 1, 1) => l(2 * f + 1),
        (1, 0, 0, 0) => l(f) - si(l(f - 1)),
        (1, 0, 2, 0) => l(f) + si(l(f - 1)),
        (1, 0, 2, 1) => l(f),
        (1, 1, 0, 0) => l(f) - si(l(f - 1)) + s(l(f - 1) - si(l(f - 2))),
        (1, 1, 2, 1) => l(f) + s(l(f - 1)),
        (1, 1, 2, 2) => l(f + 1) + si(l(f)) + s(l(f) + si(l(f - 1))),
        (2, 0, 1, 0) => lm(2 * f),
        (2, 0, 3, 1) => lm(2 * f + 1),
        (2, 1, 1, 0) => h_poly(2 * f, 1),
        (2, 1, 1, 1) => h_poly(2 * f + 1, 1),
        (2, 1, 3, 1) => h_poly(2 * f + 1, -1),
        (2, 1, 3, 2) => h_poly(2 * f + 2, -1),
        (2, 2, 1, 1) => lm(2 * f) + pp(lm(2 * f - 2)),
        (2, 2, 3, 2) => lm(2 * f + 1) + pp(lm(2 * f - 1)),
        (3, 1, 2, 0) => l(f) + si(l(f - 1)) - s(l(f - 1) + si(l(f - 2))),
        (3, 1, 2, 1) => l(f) - s(l(f - 1)),
        (3, 1, 4, 2) => l(f + 1) - si(l(f)) - s(l(f) - si(l(f - 1))),
        (3, 2, 2, 1) => l(f) - pp(l(f - 2)),
        (3, 2, 2, 2) if f > 0 => l(f + 1) + si(l(f)) - pp(l(f - 1) + si(l(f - 2))),
        (3, 2, 2, 2) => l(1) + si(l(0)) + s(l(0)),
        (3, 2, 4, 2) if f > 0 => l(f + 1) - si(l(f)) - pp(l(f - 1) - si(l(f - 2))),
        (3, 2, 4, 2) => l(1) - si(l(0)) - s(l(0)),
        (4, 2, 3, 1) => l(2 * f) - pp(l(2 * f - 2)),
        (4, 2, 3, 2) => l(2 * f + 1) - pp(l(2 * f - 1)),
        _ => {
            return Err(JflError::Unsupported(format!(
                "no table row for (n0, ∂) = ({n0}, {d}), (n0', ∂') = ({n0p}, {dp})"
            )))
        }
    })
}
