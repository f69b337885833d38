//! The curl operator `*_g d` on left-invariant 1-forms.
//!
//! On a 3-manifold `*_g d` is an endomorphism of 1-forms squaring to
//! `Δ₁` on coexact forms (the factorization holds whenever the
//! dimension and degree satisfy `n = 2p+1`). Under the diagonal metric
//! change `T = diag(a², b², c²)` on the invariant coframe it transforms
//! as
//!
//! ```text
//!   Curl_g = abc · T⁻¹ · Curl₀,
//! ```
//!
//! where `Curl₀` is curl for the round metric and acts as `−2·Id` on the
//! invariant basis forms (`dE₁* = −2 E₂*∧E₃*` cyclically). Squaring
//! recovers the weight-0 block of `Δ₁` — the transformation matrix
//! `(abc·T⁻¹)²` is, up to the factor 4, the Weitzenböck tensor
//! `−C∇ + 2q(R)`. Only invariant forms are handled here; the spectral
//! consequences at higher weight enter through the coexact bound check,
//! not through a per-weight curl matrix.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::MetricParams;
use crate::laplacian::{self, SpectralTag};
use crate::linalg::C64;

/// A left-invariant 1-form `c₁E₁* + c₂E₂* + c₃E₃*`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeftInvariantForm {
    pub coeffs: [C64; 3],
}

/// A left-invariant 2-form in the dual-pairing basis
/// `(E₂*∧E₃*, E₃*∧E₁*, E₁*∧E₂*)`, ordered so the round Hodge star is the
/// identity on coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantTwoForm {
    pub coeffs: [C64; 3],
}

impl LeftInvariantForm {
    pub fn basis(i: usize) -> Self {
        let mut coeffs = [C64::new(0.0, 0.0); 3];
        coeffs[i] = C64::new(1.0, 0.0);
        LeftInvariantForm { coeffs }
    }
}

fn t_diag(m: &MetricParams) -> [f64; 3] {
    [m.a() * m.a(), m.b() * m.b(), m.c() * m.c()]
}

/// The diagonal endomorphism `T(E_i*) = (a², b², c²)_i · E_i*`, or its
/// inverse.
pub fn apply_t(f: &LeftInvariantForm, m: &MetricParams, inverse: bool) -> LeftInvariantForm {
    let t = t_diag(m);
    let mut coeffs = f.coeffs;
    for i in 0..3 {
        if inverse {
            coeffs[i] /= t[i];
        } else {
            coeffs[i] *= t[i];
        }
    }
    LeftInvariantForm { coeffs }
}

/// Exterior derivative on invariant 1-forms: `dE_i* = −2·(E_j*∧E_k*)`
/// cyclically, from `dα(X,Y) = −α([X,Y])` on left-invariant fields.
pub fn exterior_derivative(f: &LeftInvariantForm) -> InvariantTwoForm {
    let mut coeffs = f.coeffs;
    for c in coeffs.iter_mut() {
        *c *= -2.0;
    }
    InvariantTwoForm { coeffs }
}

/// `*_g` on invariant 1-forms: `*_g α = (1/abc)·*₀(Tα)`.
pub fn star_one_form(f: &LeftInvariantForm, m: &MetricParams) -> InvariantTwoForm {
    let scaled = apply_t(f, m, false);
    let abc = m.a() * m.b() * m.c();
    let mut coeffs = scaled.coeffs;
    for c in coeffs.iter_mut() {
        *c /= abc;
    }
    InvariantTwoForm { coeffs }
}

/// `*_g` on invariant 2-forms: `*_g ω = abc·T⁻¹(*₀ ω)`.
pub fn star_two_form(w: &InvariantTwoForm, m: &MetricParams) -> LeftInvariantForm {
    let abc = m.a() * m.b() * m.c();
    let as_one = LeftInvariantForm { coeffs: w.coeffs };
    let mut out = apply_t(&as_one, m, true);
    for c in out.coeffs.iter_mut() {
        *c *= abc;
    }
    out
}

/// `Curl_g = *_g d` on an invariant form, computed compositionally.
/// Componentwise this multiplies the coefficients by
/// `(−2bc/a, −2ac/b, −2ab/c)` — see [`curl_scaling`].
pub fn curl_invariant(f: &LeftInvariantForm, m: &MetricParams) -> LeftInvariantForm {
    star_two_form(&exterior_derivative(f), m)
}

/// The closed-form eigenvalues of `Curl_g` on the invariant basis.
pub fn curl_scaling(m: &MetricParams) -> [f64; 3] {
    let (a, b, c) = (m.a(), m.b(), m.c());
    [-2.0 * b * c / a, -2.0 * a * c / b, -2.0 * a * b / c]
}

/// Result of scanning the coexact spectrum against the curl-derived
/// lower bound `min(4b²c²/a², 4a²c²/b², 4a²b²/c²)`.
#[derive(Clone, Debug, Serialize)]
pub struct CoexactBoundReport {
    pub bound: f64,
    pub k_max: usize,
    /// Whether the bound is attained inside the weight-0 block.
    pub attained_at_k0: bool,
    /// Coexact eigenvalues found below the bound (empty on pass).
    pub violations: Vec<(usize, f64)>,
    pub pass: bool,
}

/// Verifies that every coexact eigenvalue of `Δ₁` up to `k_max` sits
/// above the invariant-form minimum, with equality inside the `k = 0`
/// block.
pub fn coexact_bound_check(m: &MetricParams, k_max: usize) -> Result<CoexactBoundReport> {
    let wd = crate::geometry::weitzenboeck_diagonal(m);
    let bound = wd.iter().copied().fold(f64::INFINITY, f64::min);
    let spectrum = laplacian::full_spectrum(m, 1, k_max)?;
    let tol = 1e-8 * bound.max(1.0);
    let mut violations = Vec::new();
    let mut attained_at_k0 = false;
    for e in &spectrum.entries {
        if e.tag != SpectralTag::Coexact {
            continue;
        }
        if e.eigenvalue < bound - tol {
            violations.push((e.k, e.eigenvalue));
        }
        if e.k == 0 && (e.eigenvalue - bound).abs() <= tol {
            attained_at_k0 = true;
        }
    }
    let pass = violations.is_empty() && attained_at_k0;
    Ok(CoexactBoundReport {
        bound,
        k_max,
        attained_at_k0,
        violations,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Group;

    fn su2(a: f64, b: f64, c: f64) -> MetricParams {
        MetricParams::new(a, b, c, Group::Su2).unwrap()
    }

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn t_examples() {
        let m = su2(1.0, 2.0, 3.0);
        let t1 = apply_t(&LeftInvariantForm::basis(0), &m, false);
        assert_eq!(t1.coeffs[0], re(1.0));
        let t3 = apply_t(&LeftInvariantForm::basis(2), &m, false);
        assert_eq!(t3.coeffs[2], re(9.0));
        // T⁻¹(T(f)) = f.
        let f = LeftInvariantForm {
            coeffs: [re(0.3), C64::new(1.0, -2.0), re(-7.0)],
        };
        let back = apply_t(&apply_t(&f, &m, false), &m, true);
        for (x, y) in back.coeffs.iter().zip(f.coeffs.iter()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn curl_on_basis_forms() {
        // Round: Curl = −2·Id on the invariant basis.
        let round = su2(1.0, 1.0, 1.0);
        let c1 = curl_invariant(&LeftInvariantForm::basis(0), &round);
        assert_eq!(c1.coeffs[0], re(-2.0));
        // (1,2,3): Curl_g E₂* = −2ac/b·E₂* = −3·E₂*.
        let m = su2(1.0, 2.0, 3.0);
        let c2 = curl_invariant(&LeftInvariantForm::basis(1), &m);
        assert!((c2.coeffs[1] - re(-3.0)).norm() < 1e-14);
        assert_eq!(c2.coeffs[0], re(0.0));
    }

    #[test]
    fn compositional_curl_matches_closed_scaling() {
        for &(a, b, c) in &[(1.0, 2.0, 3.0), (0.4, 1.1, 0.8), (2.0, 0.3, 5.0)] {
            let m = su2(a, b, c);
            let want = curl_scaling(&m);
            for i in 0..3 {
                let out = curl_invariant(&LeftInvariantForm::basis(i), &m);
                assert!((out.coeffs[i] - re(want[i])).norm() < 1e-12 * want[i].abs().max(1.0));
                for j in 0..3 {
                    if j != i {
                        assert_eq!(out.coeffs[j], re(0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn curl_squared_equals_weight_zero_block() {
        // (abc·T⁻¹·Curl₀)² on the invariant basis reproduces the
        // diagonal of Δ₁⁽⁰⁾ exactly.
        for &(a, b, c) in &[(1.0, 1.0, 1.0), (1.0, 2.0, 3.0), (0.7, 0.2, 1.9)] {
            let m = su2(a, b, c);
            let wd = crate::geometry::weitzenboeck_diagonal(&m);
            for i in 0..3 {
                let once = curl_invariant(&LeftInvariantForm::basis(i), &m);
                let twice = curl_invariant(&once, &m);
                assert!(
                    (twice.coeffs[i] - re(wd[i])).norm() <= 1e-12 * wd[i],
                    "component {i} at ({a},{b},{c})"
                );
            }
        }
    }

    #[test]
    fn hodge_star_squares_to_identity() {
        // *_g on 1-forms followed by *_g on 2-forms is the identity
        // (sign +1 in odd dimension for both degrees).
        let m = su2(0.9, 2.4, 1.3);
        let f = LeftInvariantForm {
            coeffs: [C64::new(1.0, 0.5), re(-2.0), C64::new(0.0, 3.0)],
        };
        let round_trip = star_two_form(&star_one_form(&f, &m), &m);
        for (x, y) in round_trip.coeffs.iter().zip(f.coeffs.iter()) {
            assert!((x - y).norm() < 1e-13);
        }
        // And in the other order, on 2-forms.
        let w = InvariantTwoForm {
            coeffs: [re(0.2), C64::new(-1.0, 1.0), re(4.0)],
        };
        let round_trip2 = star_one_form(&star_two_form(&w, &m), &m);
        for (x, y) in round_trip2.coeffs.iter().zip(w.coeffs.iter()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn round_coexact_square_roots_are_integers() {
        // At the round metric the coexact eigenvalues are squares of the
        // curl eigenvalues k+2 (and k via the mixed minus family).
        let spec = laplacian::full_spectrum(&su2(1.0, 1.0, 1.0), 1, 10).unwrap();
        for e in &spec.entries {
            if e.tag == SpectralTag::Coexact {
                let root = e.eigenvalue.sqrt();
                assert!(
                    (root - root.round()).abs() <= 1e-8 * root.max(1.0),
                    "√{} = {root} not an integer",
                    e.eigenvalue
                );
                assert!(root.round() >= 2.0);
            }
        }
    }

    #[test]
    fn coexact_bound_examples() {
        let r = coexact_bound_check(&su2(1.0, 1.0, 1.0), 6).unwrap();
        assert!(r.pass);
        assert!((r.bound - 4.0).abs() < 1e-14);

        let r = coexact_bound_check(&su2(1.0, 2.0, 3.0), 6).unwrap();
        assert!(r.pass);
        assert!((r.bound - 16.0 / 9.0).abs() < 1e-14);

        let r = coexact_bound_check(&su2(3.0, 1.0, 1.0), 6).unwrap();
        assert!(r.pass);
        assert!((r.bound - 4.0 / 9.0).abs() < 1e-14);
    }
}
