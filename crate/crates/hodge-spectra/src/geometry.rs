//! Closed-form differential geometry of `(SU(2), g_(a,b,c))`.
//!
//! The basis `E₁, E₂, E₃` of `su(2)` satisfies `[E₁,E₂] = 2E₃` cyclically
//! and is orthonormal for the bi-invariant inner product `−½·tr(XY)`.
//! A left-invariant metric is fixed by positive scalings `(a,b,c)` making
//! `X₁ = aE₁, X₂ = bE₂, X₃ = cE₃` orthonormal; permutations of `(a,b,c)`
//! give isometric metrics. Everything here — connection coefficients,
//! curvature-operator eigenvalues, Ricci data, curvature norms, volume —
//! is a short rational function of `(a,b,c)` evaluated in double
//! precision; no symbolic layer is involved.
//!
//! Sign convention: the curvature-operator eigenvalues `r_ij` carry the
//! sign for which the round metric `a=b=c=1` gives `r_ij = −1` while its
//! sectional curvature is `+1`. Formulas are used verbatim in that
//! convention rather than "fixed".

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectralError};

/// The compact group carrying the metric: `SU(2) ≅ S³` or its quotient
/// `SO(3) ≅ P³(ℝ)`. The quotient only sees even representation weights
/// and half the volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Su2,
    So3,
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Group::Su2 => write!(f, "su2"),
            Group::So3 => write!(f, "so3"),
        }
    }
}

/// The validated parameter triple `(a,b,c)` of a left-invariant metric,
/// together with the group it lives on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    a: f64,
    b: f64,
    c: f64,
    group: Group,
}

impl MetricParams {
    /// Validates `a, b, c > 0` and finite.
    pub fn new(a: f64, b: f64, c: f64, group: Group) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("c", c)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(SpectralError::InvalidParameter { name, value });
            }
        }
        Ok(MetricParams { a, b, c, group })
    }

    /// Berger metric `g_(a,b,b)`.
    pub fn berger(a: f64, b: f64, group: Group) -> Result<Self> {
        MetricParams::new(a, b, b, group)
    }

    /// The round metric `g_(1,1,1)` of constant sectional curvature 1.
    pub fn round(group: Group) -> Self {
        MetricParams {
            a: 1.0,
            b: 1.0,
            c: 1.0,
            group,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn abc(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn is_berger(&self, tol: f64) -> bool {
        (self.b - self.c).abs() <= tol * self.b.max(self.c)
    }

    /// The isometric metric with parameters permuted by `perm`
    /// (`perm[i]` is the index of the old parameter placed in slot `i`).
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let p = self.abc();
        MetricParams {
            a: p[perm[0]],
            b: p[perm[1]],
            c: p[perm[2]],
            group: self.group,
        }
    }
}

/// The six nonzero connection coefficients `∇_{X_i}X_j` and the three
/// Christoffel symbols `γ₁ = Γ²₁₃, γ₂ = Γ¹₂₃, γ₃ = Γ¹₃₂` entering the
/// Hodge-Laplacian assembly.
#[derive(Clone, Copy, Debug)]
pub struct ChristoffelTable {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    /// Coefficient of `X₃` in `∇_{X₁}X₂`.
    pub nabla_12: f64,
    /// Coefficient of `X₃` in `∇_{X₂}X₁`.
    pub nabla_21: f64,
    /// Coefficient of `X₂` in `∇_{X₁}X₃`.
    pub nabla_13: f64,
    /// Coefficient of `X₂` in `∇_{X₃}X₁`.
    pub nabla_31: f64,
    /// Coefficient of `X₁` in `∇_{X₂}X₃`.
    pub nabla_23: f64,
    /// Coefficient of `X₁` in `∇_{X₃}X₂`.
    pub nabla_32: f64,
}

/// Koszul-formula connection coefficients of `g_(a,b,c)`.
pub fn christoffel(m: &MetricParams) -> ChristoffelTable {
    let (a, b, c) = (m.a(), m.b(), m.c());
    let ab_c = a * b / c;
    let ac_b = a * c / b;
    let bc_a = b * c / a;
    let gamma1 = -ab_c - ac_b + bc_a;
    let gamma2 = ab_c - ac_b + bc_a;
    let gamma3 = ab_c - ac_b - bc_a;
    ChristoffelTable {
        gamma1,
        gamma2,
        gamma3,
        nabla_12: ab_c + ac_b - bc_a, // = -gamma1
        nabla_21: -ab_c + ac_b - bc_a, // = -gamma2
        nabla_13: gamma1,
        nabla_31: -ab_c + ac_b + bc_a, // = -gamma3
        nabla_23: gamma2,
        nabla_32: gamma3,
    }
}

/// Curvature data of `g_(a,b,c)`: curvature-operator eigenvalues,
/// Ricci eigenvalues, scalar curvature, and the squared tensor norms.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureData {
    /// Eigenvalue of the curvature operator on `X₁∧X₂`.
    pub r12: f64,
    pub r13: f64,
    pub r23: f64,
    /// Eigenvalues of `2q(R) = Ric` on `X₁*, X₂*, X₃*`.
    pub ricci: [f64; 3],
    pub scal: f64,
    /// `‖Ric‖²`.
    pub norm_ric2: f64,
    /// `‖R‖²`, computed from the curvature-operator eigenvalues
    /// (the diagonal operator has `‖R‖² = 4(r₁₂² + r₁₃² + r₂₃²)`),
    /// independently of the Kulkarni–Nomizu identity
    /// `‖R‖² = 4‖Ric‖² − Scal²` it is tested against.
    pub norm_r2: f64,
}

/// Curvature-operator eigenvalues and derived Ricci/scalar data.
pub fn curvature(m: &MetricParams) -> CurvatureData {
    let (a, b, c) = (m.a(), m.b(), m.c());
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let ab2 = a2 * b2 / c2;
    let ac2 = a2 * c2 / b2;
    let bc2 = b2 * c2 / a2;
    let r12 = 3.0 * ab2 - ac2 - bc2 - 2.0 * a2 - 2.0 * b2 + 2.0 * c2;
    let r13 = -ab2 + 3.0 * ac2 - bc2 - 2.0 * a2 + 2.0 * b2 - 2.0 * c2;
    let r23 = -ab2 - ac2 + 3.0 * bc2 + 2.0 * a2 - 2.0 * b2 - 2.0 * c2;
    let ricci = [-r12 - r13, -r12 - r23, -r13 - r23];
    let scal = ricci[0] + ricci[1] + ricci[2];
    let norm_ric2 = ricci.iter().map(|x| x * x).sum();
    let norm_r2 = 4.0 * (r12 * r12 + r13 * r13 + r23 * r23);
    CurvatureData {
        r12,
        r13,
        r23,
        ricci,
        scal,
        norm_ric2,
        norm_r2,
    }
}

/// Eigenvalues of the connection operator `C∇ = Σ ∇_{X_k}²` on the dual
/// basis `X₁*, X₂*, X₃*`.
pub fn connection_casimir(m: &MetricParams) -> [f64; 3] {
    let (a, b, c) = (m.a(), m.b(), m.c());
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let sum = b2 * c2 / a2 + a2 * c2 / b2 + a2 * b2 / c2;
    [
        -2.0 * (sum - 2.0 * a2),
        -2.0 * (sum - 2.0 * b2),
        -2.0 * (sum - 2.0 * c2),
    ]
}

/// The constant Weitzenböck diagonal `−C∇ + 2q(R)` entering the
/// Hodge-Laplacian on 1-forms: `4·(b²c²/a², a²c²/b², a²b²/c²)`.
pub fn weitzenboeck_diagonal(m: &MetricParams) -> [f64; 3] {
    let (a, b, c) = (m.a(), m.b(), m.c());
    let (a2, b2, c2) = (a * a, b * b, c * c);
    [
        4.0 * b2 * c2 / a2,
        4.0 * a2 * c2 / b2,
        4.0 * a2 * b2 / c2,
    ]
}

/// Riemannian volume `V₀ / (abc)` with `V₀ = 2π²` for `SU(2)` (the unit
/// round 3-sphere under the `−⅛·Killing` normalization) and `π²` for the
/// `ℤ₂` quotient `SO(3)`.
pub fn volume(m: &MetricParams) -> f64 {
    let v0 = match m.group() {
        Group::Su2 => 2.0 * std::f64::consts::PI * std::f64::consts::PI,
        Group::So3 => std::f64::consts::PI * std::f64::consts::PI,
    };
    v0 / (m.a() * m.b() * m.c())
}

/// All geometric scalars of a metric in one record.
#[derive(Clone, Copy, Debug)]
pub struct GeometryTensors {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub r12: f64,
    pub r13: f64,
    pub r23: f64,
    pub ricci: [f64; 3],
    pub cnabla: [f64; 3],
    pub scal: f64,
    pub norm_ric2: f64,
    pub norm_r2: f64,
    pub volume: f64,
}

pub fn tensors(m: &MetricParams) -> GeometryTensors {
    let ch = christoffel(m);
    let cv = curvature(m);
    GeometryTensors {
        gamma1: ch.gamma1,
        gamma2: ch.gamma2,
        gamma3: ch.gamma3,
        r12: cv.r12,
        r13: cv.r13,
        r23: cv.r23,
        ricci: cv.ricci,
        cnabla: connection_casimir(m),
        scal: cv.scal,
        norm_ric2: cv.norm_ric2,
        norm_r2: cv.norm_r2,
        volume: volume(m),
    }
}
