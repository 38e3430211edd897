//! Closed-form minimum conditional determinant for two-mode Gaussian discord.
//!
//! The optimum over Gaussian measurements on mode 2 is a function of the
//! local symplectic invariants only. The expression is usually written in
//! "vacuum = 1" units, so the invariants are rescaled on the way in
//! (`det` of a 2×2 block scales by 4, `det Σ` by 16) and the result is
//! scaled back on the way out.

use crate::gaussian::Invariants;

/// Below this distance from 1 (in vacuum-1 units) the measured mode is
/// treated as pure, which forces a product state.
const PURE_MEASURED_MODE: f64 = 1e-12;

/// `min det σ_{1|2}` over Gaussian measurements on mode 2.
pub fn emin_closed_form(inv: &Invariants) -> f64 {
    let a = 4.0 * inv.i1;
    let b = 4.0 * inv.i2;
    let c = 4.0 * inv.i3;
    let d = 16.0 * inv.i4;

    if b - 1.0 <= PURE_MEASURED_MODE {
        return inv.i1;
    }

    let c2 = c * c;
    let e = if (d - a * b).powi(2) <= (1.0 + b) * c2 * (a + d) {
        // [2C² + (B−1)(D−A) + 2|C|√(C² + (B−1)(D−A))]/(B−1)², written as a square
        let x = (b - 1.0) * (d - a);
        let root = (c2 + x).max(0.0).sqrt();
        let r = (c.abs() + root) / (b - 1.0);
        r * r
    } else {
        // [AB − C² + D − √(C⁴ + (D−AB)² − 2C²(AB+D))]/(2B), rationalised:
        // the numerator equals 4ABD / (AB − C² + D + √…)
        let ab = a * b;
        let s = (c2 * c2 + (d - ab).powi(2) - 2.0 * c2 * (ab + d))
            .max(0.0)
            .sqrt();
        2.0 * a * d / (ab - c2 + d + s)
    };
    0.25 * e
}
