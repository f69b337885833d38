//! Irreducible `SU(2)` representations on the polynomial basis.
//!
//! The `(k+1)`-dimensional irreducible representation `ρ_k` acts on
//! homogeneous polynomials of degree `k` in two complex variables, with
//! basis `P_l(z,w) = zˡ w^{k−l}`, `0 ≤ l ≤ k` (ascending `l` is the
//! canonical ordering for every matrix downstream). The Lie algebra
//! basis acts by
//!
//! ```text
//!   dρ_k(E₁)·P_l = (k−2l)·i·P_l
//!   dρ_k(E₂)·P_l = −l·P_{l−1} + (k−l)·P_{l+1}
//!   dρ_k(E₃)·P_l = −l·i·P_{l−1} − (k−l)·i·P_{l+1}
//! ```
//!
//! with `P_l = 0` outside `0 ≤ l ≤ k`. Matrices follow the column
//! convention `M·e_s = Σ_r M_{r,s}·e_r`.
//!
//! The metric-scaled Casimir matrix `C_{ρ_k} = Σ dρ_k(X_i)²` is stored in
//! its explicit entry form (diagonal plus `r ± 2` couplings, with the
//! corrected sign on the off-diagonal terms); the matrix product
//! `dX₁² + dX₂² + dX₃²` is kept available as an independent construction
//! of the same operator.

use num_complex::Complex64;

use crate::geometry::MetricParams;
use crate::linalg::{C64, CMat};

/// Generator matrices of `ρ_k` at weight `k`, plus metric scalings.
#[derive(Clone, Debug)]
pub struct GeneratorMatrices {
    pub k: usize,
    pub d_e1: CMat,
    pub d_e2: CMat,
    pub d_e3: CMat,
    /// `a·dρ(E₁)`, `b·dρ(E₂)`, `c·dρ(E₃)` for the metric `g_(a,b,c)`.
    pub d_x1: CMat,
    pub d_x2: CMat,
    pub d_x3: CMat,
    /// Casimir matrix from the explicit entry formulas.
    pub casimir: CMat,
}

impl GeneratorMatrices {
    /// The Casimir rebuilt as the literal matrix product
    /// `dX₁² + dX₂² + dX₃²`; agrees with [`GeneratorMatrices::casimir`]
    /// and serves as its independent cross-check.
    pub fn casimir_from_products(&self) -> CMat {
        let sq = |m: &CMat| m.mul(m);
        sq(&self.d_x1).add(&sq(&self.d_x2)).add(&sq(&self.d_x3))
    }
}

/// Builds the generator action and Casimir matrices at weight `k`.
pub fn generators(k: usize, m: &MetricParams) -> GeneratorMatrices {
    let n = k + 1;
    let kf = k as f64;
    let mut d_e1 = CMat::zeros(n, n);
    let mut d_e2 = CMat::zeros(n, n);
    let mut d_e3 = CMat::zeros(n, n);
    for l in 0..n {
        let lf = l as f64;
        d_e1.set(l, l, C64::new(0.0, kf - 2.0 * lf));
        if l >= 1 {
            d_e2.set(l - 1, l, C64::new(-lf, 0.0));
            d_e3.set(l - 1, l, C64::new(0.0, -lf));
        }
        if l + 1 < n {
            d_e2.set(l + 1, l, C64::new(kf - lf, 0.0));
            d_e3.set(l + 1, l, C64::new(0.0, -(kf - lf)));
        }
    }
    let sa = C64::new(m.a(), 0.0);
    let sb = C64::new(m.b(), 0.0);
    let sc = C64::new(m.c(), 0.0);
    GeneratorMatrices {
        k,
        d_x1: d_e1.scale(sa),
        d_x2: d_e2.scale(sb),
        d_x3: d_e3.scale(sc),
        d_e1,
        d_e2,
        d_e3,
        casimir: casimir_matrix(k, m),
    }
}

/// The metric-scaled Casimir `C_{ρ_k}` from its explicit entries:
///
/// ```text
///   (C)_{r,r}   = −(a²(k−2r)² + (b²+c²)(k(2r+1) − 2r²))
///   (C)_{r,r+2} = (b²−c²)(r+2)(r+1)
///   (C)_{r,r−2} = (b²−c²)(k−r+1)(k−r+2)
/// ```
pub fn casimir_matrix(k: usize, m: &MetricParams) -> CMat {
    let n = k + 1;
    let kf = k as f64;
    let a2 = m.a() * m.a();
    let bc2 = m.b() * m.b() + m.c() * m.c();
    let bmc2 = m.b() * m.b() - m.c() * m.c();
    let mut c = CMat::zeros(n, n);
    for r in 0..n {
        let rf = r as f64;
        let diag = -(a2 * (kf - 2.0 * rf).powi(2) + bc2 * (kf * (2.0 * rf + 1.0) - 2.0 * rf * rf));
        c.set(r, r, C64::new(diag, 0.0));
        if r + 2 < n {
            c.set(r, r + 2, C64::new(bmc2 * (rf + 2.0) * (rf + 1.0), 0.0));
        }
        if r >= 2 {
            c.set(r, r - 2, C64::new(bmc2 * (kf - rf + 1.0) * (kf - rf + 2.0), 0.0));
        }
    }
    c
}

/// Natural logarithms of the orthonormalizing diagonal scaling
/// `s_r = sqrt(r!·(k−r)!/k!)`, computed in log space so arbitrarily
/// large weights cannot overflow. Conjugating by `S = diag(s_r)` as
/// `S·M·S⁻¹` turns `dρ(E₂)` real skew-symmetric and `dρ(E₃)` into
/// `i·(real symmetric)`, i.e. makes the unitary structure explicit.
/// Only ratios `s_i/s_j` with `|i−j| ≤ 2` ever enter a matrix, so the
/// normalization (any global factor) is immaterial.
pub fn scaling_log(k: usize) -> Vec<f64> {
    // ln(n!) accumulated by summation; exact enough at desk scale and
    // free of the Stirling-series bookkeeping.
    let mut ln_fact = vec![0.0_f64; k + 1];
    for i in 1..=k {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    (0..=k)
        .map(|r| 0.5 * (ln_fact[r] + ln_fact[k - r] - ln_fact[k]))
        .collect()
}

/// The scaling entries `s_r` themselves (for inspection and tests).
pub fn scaling(k: usize) -> Vec<f64> {
    scaling_log(k).into_iter().map(f64::exp).collect()
}

/// Conjugates a block matrix by `S ⊗ Id_comps`, where row `i` belongs to
/// weight-basis index `i / comps`. Entry `(i,j)` picks up the factor
/// `s_{r_i}/s_{r_j}`, computed as `exp(log s_{r_i} − log s_{r_j})`.
pub fn conjugate_by_scaling(mat: &CMat, log_s: &[f64], comps: usize) -> CMat {
    let n = mat.rows();
    let mut out = CMat::zeros(n, n);
    for i in 0..n {
        let li = log_s[i / comps];
        for j in 0..n {
            let v = mat.at(i, j);
            if v != Complex64::new(0.0, 0.0) {
                let factor = (li - log_s[j / comps]).exp();
                out.set(i, j, v * factor);
            }
        }
    }
    out
}
