//! Weight-block matrices of `Δ₁` and `Δ₀`, their eigenvalues, and full
//! spectra with multiplicities.
//!
//! On `SU(2)` every irreducible representation enters the Peter–Weyl
//! decomposition, so the Hodge-Laplacian on 1-forms splits into one
//! `3(k+1)×3(k+1)` matrix per weight `k` over the basis
//! `e_(r,p) = P_r ⊗ X_p*`, `0 ≤ r ≤ k`, `p ∈ {1,2,3}` — and the
//! Laplace–Beltrami operator into `Δ₀⁽ᵏ⁾ = −C_{ρ_k}`. The `Δ₁` matrix
//! is block-penta-diagonal,
//!
//! ```text
//!   ⎛ M₀   K₀⁺  F₀            ⎞        Mᵣ  = [[D_{r,1}, 0, 0], [0, D_{r,2}, Aᵣ], [0, −Aᵣ, D_{r,3}]]
//!   ⎜ K₁⁻  M₁   K₁⁺  F₁       ⎟        Kᵣ± = [[0, B_{r,±}, C_{r,±}], [−B_{r,±}, 0, 0], [−C_{r,±}, 0, 0]]
//!   ⎜ E₂   K₂⁻  M₂   K₂⁺  ⋱   ⎟        Eᵣ, Fᵣ scalar×Id₃
//!   ⎝      ⋱    ⋱    ⋱        ⎠
//! ```
//!
//! with every scalar an explicit function of `(a,b,c)` and the
//! Christoffel symbols `γ₁,γ₂,γ₃`. The raw matrix is not normal, but
//! conjugating by the orthonormalizing scaling `S ⊗ Id₃` makes it
//! Hermitian; eigenvalues are then obtained through the real symmetric
//! embedding (see [`crate::linalg`]). Each block eigenvalue carries
//! global multiplicity `(k+1) ×` its multiplicity within the block.
//!
//! Eigenvalues matching a nonzero `Δ₀` eigenvalue of the same weight are
//! tagged `exact` (the image of `d` on eigenfunctions, `Δ₁d = dΔ₀`);
//! the remaining degree-1 eigenvalues are `coexact`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, SpectralError};
use crate::geometry::{self, Group, MetricParams};
use crate::linalg::{self, C64, CMat};
use crate::su2_rep;

/// Relative tolerance for merging numerically equal eigenvalues when
/// aggregating a spectrum: values merge iff `|λᵢ−λⱼ| ≤ merge_tol·max(1,λᵢ)`.
pub const MERGE_TOL: f64 = 1e-9;

/// Relative tolerance for cross-matching a `Δ₁` eigenvalue against the
/// `Δ₀` spectrum of the same weight when tagging exact eigenforms.
/// Matches the Hodge-containment tolerance; solver noise on large
/// blocks makes the merge tolerance too sharp for classification.
pub const TAG_TOL: f64 = 1e-8;

/// Eigenvalues this close to zero count as harmonic (the constant
/// function in degree 0).
pub const ZERO_TOL: f64 = 1e-9;

/// One assembled weight block of `Δ₀` or `Δ₁`.
#[derive(Clone, Debug)]
pub struct WeightBlockMatrix {
    pub k: usize,
    pub degree: u8,
    pub metric: MetricParams,
    pub entries: CMat,
}

/// Assembles the `3(k+1)×3(k+1)` matrix of `Δ₁⁽ᵏ⁾` for `g_(a,b,c)`.
pub fn assemble_delta1(k: usize, m: &MetricParams) -> WeightBlockMatrix {
    let (a, b, c) = (m.a(), m.b(), m.c());
    let ch = geometry::christoffel(m);
    let wdiag = geometry::weitzenboeck_diagonal(m);
    let kf = k as f64;
    let a2 = a * a;
    let b2c2 = b * b + c * c;
    let bmc2 = b * b - c * c;

    let n = 3 * (k + 1);
    let mut mat = CMat::zeros(n, n);
    let idx = |r: usize, p: usize| 3 * r + p; // p is 0-based here

    for r in 0..=k {
        let rf = r as f64;
        let casimir_diag = a2 * (kf - 2.0 * rf).powi(2) + b2c2 * (kf * (2.0 * rf + 1.0) - 2.0 * rf * rf);
        for p in 0..3 {
            mat.set(idx(r, p), idx(r, p), C64::new(casimir_diag + wdiag[p], 0.0));
        }

        // In-block coupling A_r between the X₂* and X₃* components.
        let a_r = C64::new(0.0, -2.0 * a * (kf - 2.0 * rf) * ch.gamma1);
        mat.set(idx(r, 1), idx(r, 2), a_r);
        mat.set(idx(r, 2), idx(r, 1), -a_r);

        // K_r⁺ block coupling weight rows r and r+1.
        if r + 1 <= k {
            let b_plus = C64::new(0.0, 2.0 * c * (rf + 1.0) * ch.gamma3);
            let c_plus = C64::new(2.0 * b * (rf + 1.0) * ch.gamma2, 0.0);
            mat.set(idx(r, 0), idx(r + 1, 1), b_plus);
            mat.set(idx(r, 0), idx(r + 1, 2), c_plus);
            mat.set(idx(r, 1), idx(r + 1, 0), -b_plus);
            mat.set(idx(r, 2), idx(r + 1, 0), -c_plus);
        }

        // K_r⁻ block coupling weight rows r and r−1.
        if r >= 1 {
            let b_minus = C64::new(0.0, 2.0 * c * (kf - rf + 1.0) * ch.gamma3);
            let c_minus = C64::new(-2.0 * b * (kf - rf + 1.0) * ch.gamma2, 0.0);
            mat.set(idx(r, 0), idx(r - 1, 1), b_minus);
            mat.set(idx(r, 0), idx(r - 1, 2), c_minus);
            mat.set(idx(r, 1), idx(r - 1, 0), -b_minus);
            mat.set(idx(r, 2), idx(r - 1, 0), -c_minus);
        }

        // Scalar E_r / F_r couplings from the Casimir ±2 bands.
        if r >= 2 {
            let e_r = C64::new(-bmc2 * (kf - rf + 1.0) * (kf - rf + 2.0), 0.0);
            for p in 0..3 {
                mat.set(idx(r, p), idx(r - 2, p), e_r);
            }
        }
        if r + 2 <= k {
            let f_r = C64::new(-bmc2 * (rf + 2.0) * (rf + 1.0), 0.0);
            for p in 0..3 {
                mat.set(idx(r, p), idx(r + 2, p), f_r);
            }
        }
    }

    WeightBlockMatrix {
        k,
        degree: 1,
        metric: *m,
        entries: mat,
    }
}

/// Assembles `Δ₀⁽ᵏ⁾ = −C_{ρ_k}`, the `(k+1)×(k+1)` Laplace–Beltrami
/// block.
pub fn assemble_delta0(k: usize, m: &MetricParams) -> WeightBlockMatrix {
    let c = su2_rep::casimir_matrix(k, m).scale(C64::new(-1.0, 0.0));
    WeightBlockMatrix {
        k,
        degree: 0,
        metric: *m,
        entries: c,
    }
}

impl WeightBlockMatrix {
    /// Components per weight index: 3 for 1-forms, 1 for functions.
    pub fn components(&self) -> usize {
        if self.degree == 1 {
            3
        } else {
            1
        }
    }

    /// The Hermitian form `S·M·S⁻¹` (with `S ⊗ Id₃` in degree 1),
    /// validated against the Hermiticity budget `1e−8·‖M‖`.
    pub fn hermitian_form(&self) -> Result<CMat> {
        let log_s = su2_rep::scaling_log(self.k);
        let h = su2_rep::conjugate_by_scaling(&self.entries, &log_s, self.components());
        let scale = h.frobenius_norm().max(1.0);
        let residual = h.hermitian_residual();
        if residual > 1e-8 * scale {
            return Err(SpectralError::InternalConsistency(format!(
                "block k={} degree={} failed to symmetrize: residual {:.3e} vs norm {:.3e}",
                self.k, self.degree, residual, scale
            )));
        }
        Ok(h)
    }

    /// Sorted real eigenvalues of the block.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let h = self.hermitian_form()?;
        let scale = h.frobenius_norm();
        linalg::hermitian_eigenvalues(&h, scale)
    }

    /// Sorted eigenvalues through cyclic Jacobi: slower, but accurate
    /// relative to each eigenvalue rather than to the block norm.
    pub fn eigenvalues_precise(&self) -> Result<Vec<f64>> {
        let h = self.hermitian_form()?;
        let scale = h.frobenius_norm();
        linalg::hermitian_eigenvalues_precise(&h, scale)
    }

    /// Sorted eigenvalues with a per-eigenvector residual check
    /// `‖Mv − λv‖ ≤ 1e−8·‖M‖·‖v‖` on eigenvectors mapped back to the
    /// raw (unscaled) basis. Slower; used in verification mode.
    pub fn eigenvalues_verified(&self) -> Result<Vec<f64>> {
        let h = self.hermitian_form()?;
        let scale = h.frobenius_norm();
        let (vals, vecs) = linalg::hermitian_eigenpairs(&h, scale)?;
        let log_s = su2_rep::scaling_log(self.k);
        let comps = self.components();
        let m_norm = self.entries.frobenius_norm();
        for (lam, u) in vals.iter().zip(vecs.iter()) {
            // H = S M S⁻¹, so M (S⁻¹ u) = λ (S⁻¹ u).
            let v: Vec<C64> = u
                .iter()
                .enumerate()
                .map(|(i, z)| z * (-log_s[i / comps]).exp())
                .collect();
            let mv = self.entries.matvec(&v);
            let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let resid = mv
                .iter()
                .zip(v.iter())
                .map(|(x, y)| (x - lam * y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if resid > 1e-8 * m_norm * vnorm {
                return Err(SpectralError::InternalConsistency(format!(
                    "eigenvector residual {:.3e} exceeds 1e-8·‖M‖·‖v‖ at k={}, λ={}",
                    resid, self.k, lam
                )));
            }
        }
        Ok(vals)
    }
}

/// Classification of a spectrum entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralTag {
    Exact,
    Coexact,
    Harmonic,
    Untagged,
}

impl std::fmt::Display for SpectralTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SpectralTag::Exact => "exact",
            SpectralTag::Coexact => "coexact",
            SpectralTag::Harmonic => "harmonic",
            SpectralTag::Untagged => "untagged",
        };
        write!(f, "{s}")
    }
}

/// One aggregated eigenvalue with its global multiplicity and weight of
/// origin.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectrumEntry {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub k: usize,
    pub degree: u8,
    pub tag: SpectralTag,
}

/// A truncated spectrum, sorted ascending, with per-weight provenance
/// kept (coincidences across weights are not merged).
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub metric: MetricParams,
    pub degree: u8,
    pub k_max: usize,
    pub merge_tol: f64,
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    /// Smallest eigenvalue above the harmonic threshold.
    pub fn min_nonzero(&self) -> Option<f64> {
        self.entries
            .iter()
            .map(|e| e.eigenvalue)
            .filter(|&x| x > ZERO_TOL)
            .fold(None, |acc: Option<f64>, x| {
                Some(acc.map_or(x, |a| a.min(x)))
            })
    }
}

/// Clusters a sorted eigenvalue list into `(value, multiplicity)` pairs
/// under the merge tolerance.
fn cluster(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && (sorted[j] - sorted[j - 1]).abs() <= tol * sorted[j].abs().max(1.0)
        {
            j += 1;
        }
        let mean = sorted[i..j].iter().sum::<f64>() / (j - i) as f64;
        out.push((mean, j - i));
        i = j;
    }
    out
}

/// The weights contributing to the spectrum of a group: all `k ≤ k_max`
/// for `SU(2)`, even `k` only for `SO(3)`.
pub fn contributing_weights(group: Group, k_max: usize) -> Vec<usize> {
    match group {
        Group::Su2 => (0..=k_max).collect(),
        Group::So3 => (0..=k_max).step_by(2).collect(),
    }
}

/// Aggregates the full spectrum up to weight `k_max`: the multiset union
/// over contributing weights of block eigenvalues, each with global
/// multiplicity `(k+1) ×` its block multiplicity.
pub fn full_spectrum(m: &MetricParams, degree: u8, k_max: usize) -> Result<Spectrum> {
    if degree > 1 {
        return Err(SpectralError::InvalidArgument(format!(
            "form degree {degree} not supported (0 or 1)"
        )));
    }
    let weights = contributing_weights(m.group(), k_max);
    let per_k: Vec<Result<Vec<SpectrumEntry>>> = weights
        .par_iter()
        .map(|&k| {
            let block = if degree == 1 {
                assemble_delta1(k, m)
            } else {
                assemble_delta0(k, m)
            };
            let vals = block.eigenvalues()?;
            let clustered = cluster(&vals, MERGE_TOL);
            let delta0_vals = if degree == 1 {
                assemble_delta0(k, m).eigenvalues()?
            } else {
                Vec::new()
            };
            let entries = clustered
                .into_iter()
                .map(|(val, mult)| {
                    let tag = if degree == 1 {
                        let is_exact = delta0_vals
                            .iter()
                            .any(|&mu| mu > ZERO_TOL && (val - mu).abs() <= TAG_TOL * val.abs().max(1.0));
                        if is_exact {
                            SpectralTag::Exact
                        } else {
                            SpectralTag::Coexact
                        }
                    } else if val.abs() <= ZERO_TOL {
                        SpectralTag::Harmonic
                    } else {
                        SpectralTag::Untagged
                    };
                    SpectrumEntry {
                        eigenvalue: val,
                        multiplicity: (k + 1) * mult,
                        k,
                        degree,
                        tag,
                    }
                })
                .collect();
            Ok(entries)
        })
        .collect();

    let mut entries = Vec::new();
    for res in per_k {
        entries.extend(res?);
    }
    entries.sort_by(|x, y| {
        x.eigenvalue
            .partial_cmp(&y.eigenvalue)
            .unwrap()
            .then(x.k.cmp(&y.k))
    });
    Ok(Spectrum {
        metric: *m,
        degree,
        k_max,
        merge_tol: MERGE_TOL,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Group;
    use crate::linalg::kron;
    use proptest::prelude::*;

    fn metric(a: f64, b: f64, c: f64) -> MetricParams {
        MetricParams::new(a, b, c, Group::Su2).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn k0_block_is_the_weitzenboeck_diagonal() {
        let m = metric(1.0, 2.0, 3.0);
        let block = assemble_delta1(0, &m);
        let d = geometry::weitzenboeck_diagonal(&m);
        for p in 0..3 {
            for q in 0..3 {
                let want = if p == q { C64::new(d[p], 0.0) } else { C64::new(0.0, 0.0) };
                assert_eq!(block.entries.at(p, q), want);
            }
        }
        // Eigenvalues {4b²c²/a², 4a²c²/b², 4a²b²/c²} = {144, 9, 16/9}.
        let vals = block.eigenvalues().unwrap();
        assert!(rel(vals[0], 16.0 / 9.0) < 1e-12);
        assert!(rel(vals[1], 9.0) < 1e-12);
        assert!(rel(vals[2], 144.0) < 1e-12);
    }

    /// The 6×6 matrix of `Δ₁⁽¹⁾` as displayed against the unscaled dual
    /// basis `P_r ⊗ E_p*`; the assembled matrix (in the `P_r ⊗ X_p*`
    /// basis) must match after the diagonal change of basis
    /// `entry ← entry · (col scale / row scale)` with scales `(a,b,c)`.
    fn k1_display_matrix(a: f64, b: f64, c: f64) -> CMat {
        let (a2, b2, c2) = (a * a, b * b, c * c);
        let i = |x: f64| C64::new(0.0, x);
        let re = |x: f64| C64::new(x, 0.0);
        let diag = [
            a2 + b2 + 4.0 * b2 * c2 / a2 + c2,
            a2 + b2 + 4.0 * a2 * c2 / b2 + c2,
            a2 + b2 + 4.0 * a2 * b2 / c2 + c2,
        ];
        let mut m = CMat::zeros(6, 6);
        for r in 0..2 {
            for p in 0..3 {
                m.set(3 * r + p, 3 * r + p, re(diag[p]));
            }
        }
        m.set(0, 4, i(2.0 * b2 - 2.0 * b2 * c2 / a2 - 2.0 * c2));
        m.set(0, 5, re(2.0 * b2 + 2.0 * b2 * c2 / a2 - 2.0 * c2));
        m.set(1, 2, i(2.0 * a2 + 2.0 * a2 * c2 / b2 - 2.0 * c2));
        m.set(1, 3, i(-2.0 * a2 + 2.0 * a2 * c2 / b2 + 2.0 * c2));
        m.set(2, 1, i(-2.0 * a2 + 2.0 * b2 - 2.0 * a2 * b2 / c2));
        m.set(2, 3, re(2.0 * a2 - 2.0 * b2 - 2.0 * a2 * b2 / c2));
        m.set(3, 1, i(2.0 * b2 - 2.0 * b2 * c2 / a2 - 2.0 * c2));
        m.set(3, 2, re(-2.0 * b2 - 2.0 * b2 * c2 / a2 + 2.0 * c2));
        m.set(4, 0, i(-2.0 * a2 + 2.0 * a2 * c2 / b2 + 2.0 * c2));
        m.set(4, 5, i(-2.0 * a2 - 2.0 * a2 * c2 / b2 + 2.0 * c2));
        m.set(5, 0, re(-2.0 * a2 + 2.0 * b2 + 2.0 * a2 * b2 / c2));
        m.set(5, 4, i(2.0 * a2 - 2.0 * b2 + 2.0 * a2 * b2 / c2));
        m
    }

    #[test]
    fn k1_block_matches_displayed_matrix_entrywise() {
        for &(a, b, c) in &[(1.0, 2.0, 3.0), (0.7, 1.1, 0.4), (2.0, 0.5, 1.5)] {
            let m = metric(a, b, c);
            let block = assemble_delta1(1, &m);
            let scales = [a, b, c];
            let display = k1_display_matrix(a, b, c);
            for row in 0..6 {
                for col in 0..6 {
                    let converted = block.entries.at(row, col) * (scales[col % 3] / scales[row % 3]);
                    let want = display.at(row, col);
                    assert!(
                        (converted - want).norm() <= 1e-12 * want.norm().max(1.0),
                        "entry ({row},{col}) at ({a},{b},{c}): {converted} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn assembly_matches_tensor_product_construction() {
        // Independent route: Δ₁ = −C_ρ ⊗ Id₃ − 2Σᵢ dρ(Xᵢ) ⊗ ∇ᵢ + Id ⊗ 4D.
        for &(k, a, b, c) in &[(1usize, 1.0, 2.0, 3.0), (4, 0.6, 1.7, 0.9), (9, 2.2, 0.4, 1.3)] {
            let m = metric(a, b, c);
            let ch = geometry::christoffel(&m);
            let g = su2_rep::generators(k, &m);
            let id3 = CMat::identity(3);
            let idk = CMat::identity(k + 1);

            let mut nabla1 = CMat::zeros(3, 3);
            nabla1.set(1, 2, C64::new(ch.gamma1, 0.0));
            nabla1.set(2, 1, C64::new(-ch.gamma1, 0.0));
            let mut nabla2 = CMat::zeros(3, 3);
            nabla2.set(0, 2, C64::new(ch.gamma2, 0.0));
            nabla2.set(2, 0, C64::new(-ch.gamma2, 0.0));
            let mut nabla3 = CMat::zeros(3, 3);
            nabla3.set(0, 1, C64::new(ch.gamma3, 0.0));
            nabla3.set(1, 0, C64::new(-ch.gamma3, 0.0));

            let mut wdiag = CMat::zeros(3, 3);
            for (p, v) in geometry::weitzenboeck_diagonal(&m).iter().enumerate() {
                wdiag.set(p, p, C64::new(*v, 0.0));
            }

            let minus2 = C64::new(-2.0, 0.0);
            let op = kron(&g.casimir, &id3)
                .scale(C64::new(-1.0, 0.0))
                .add(&kron(&g.d_x1, &nabla1).scale(minus2))
                .add(&kron(&g.d_x2, &nabla2).scale(minus2))
                .add(&kron(&g.d_x3, &nabla3).scale(minus2))
                .add(&kron(&idk, &wdiag));

            let block = assemble_delta1(k, &m);
            let diff = block.entries.sub(&op).frobenius_norm();
            assert!(
                diff <= 1e-12 * op.frobenius_norm(),
                "k={k}: tensor-product route disagrees by {diff}"
            );
        }
    }

    #[test]
    fn block_structure_zeros_and_skew_pattern() {
        let m = metric(1.3, 0.7, 2.1);
        let k = 6;
        let block = assemble_delta1(k, &m);
        let idx = |r: usize, p: usize| 3 * r + p;
        for r in 0..=k {
            for s in 0..=k {
                for p in 0..3 {
                    for q in 0..3 {
                        let v = block.entries.at(idx(r, p), idx(s, q));
                        let rr = r as i64 - s as i64;
                        let zero = match rr.abs() {
                            0 => p.min(q) == 0 && p != q, // M_r couples only X₂*↔X₃*
                            1 => !(p == 0 || q == 0) || (p == 0 && q == 0),
                            2 => p != q,
                            _ => true,
                        };
                        if zero {
                            assert_eq!(v, C64::new(0.0, 0.0), "({r},{p})-({s},{q})");
                        }
                    }
                }
            }
            // Within-block skew: K blocks have first row (0, B, C) and
            // first column (0, −B, −C); A is skew inside M_r.
            if r + 1 <= k {
                assert_eq!(
                    block.entries.at(idx(r, 0), idx(r + 1, 1)),
                    -block.entries.at(idx(r, 1), idx(r + 1, 0))
                );
                assert_eq!(
                    block.entries.at(idx(r, 0), idx(r + 1, 2)),
                    -block.entries.at(idx(r, 2), idx(r + 1, 0))
                );
            }
            assert_eq!(
                block.entries.at(idx(r, 1), idx(r, 2)),
                -block.entries.at(idx(r, 2), idx(r, 1))
            );
            // A and B entries are purely imaginary, C/E/F purely real.
            assert_eq!(block.entries.at(idx(r, 1), idx(r, 2)).re, 0.0);
            if r + 1 <= k {
                assert_eq!(block.entries.at(idx(r, 0), idx(r + 1, 1)).re, 0.0);
                assert_eq!(block.entries.at(idx(r, 0), idx(r + 1, 2)).im, 0.0);
            }
            if r >= 2 {
                assert_eq!(block.entries.at(idx(r, 0), idx(r - 2, 0)).im, 0.0);
            }
        }
    }

    #[test]
    fn round_k1_eigenvalues() {
        // Δ₁⁽¹⁾ at (1,1,1) has spectrum {3,3,9,9,9,9}: the exact pair
        // a²+b²+c² = 3 and the two coclosed pairs which coincide at 9.
        let vals = assemble_delta1(1, &metric(1.0, 1.0, 1.0)).eigenvalues().unwrap();
        let want = [3.0, 3.0, 9.0, 9.0, 9.0, 9.0];
        for (v, w) in vals.iter().zip(want.iter()) {
            assert!(rel(*v, *w) < 1e-12, "{vals:?}");
        }
    }

    /// The two coclosed eigenvalues of `Δ₁⁽¹⁾` in radical form.
    pub(crate) fn lambda_coclosed_pm(a: f64, b: f64, c: f64) -> (f64, f64) {
        let (a2, b2, c2) = (a * a, b * b, c * c);
        let (a4, b4, c4) = (a2 * a2, b2 * b2, c2 * c2);
        let denom = a2 * b2 * c2;
        let base = (2.0 * a4 * b4 + (2.0 * a4 + a2 * b2 + 2.0 * b4) * c4
            + (a4 * b2 + a2 * b4) * c2)
            / denom;
        let s = (a4 * b4 + (a4 - a2 * b2 + b4) * c4 - (a4 * b2 + a2 * b4) * c2)
            .max(0.0)
            .sqrt();
        let spread = 2.0 * s * (a2 * b2 + (a2 + b2) * c2) / denom;
        (base - spread, base + spread)
    }

    #[test]
    fn k1_closed_forms_match_numerics() {
        for &(a, b, c) in &[(1.0, 2.0, 3.0), (0.3, 0.9, 1.7), (2.5, 0.6, 1.05)] {
            let m = metric(a, b, c);
            let vals = assemble_delta1(1, &m).eigenvalues().unwrap();
            let exact = a * a + b * b + c * c;
            let (lm, lp) = lambda_coclosed_pm(a, b, c);
            let mut want = vec![exact, exact, lm, lm, lp, lp];
            want.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (v, w) in vals.iter().zip(want.iter()) {
                assert!(rel(*v, *w) < 1e-10, "({a},{b},{c}): {vals:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn delta0_weight_one_is_scalar() {
        let m = metric(1.4, 0.8, 2.3);
        let block = assemble_delta0(1, &m);
        let s = m.a() * m.a() + m.b() * m.b() + m.c() * m.c();
        assert!(rel(block.entries.at(0, 0).re, s) < 1e-14);
        assert!(rel(block.entries.at(1, 1).re, s) < 1e-14);
        assert_eq!(block.entries.at(0, 1), C64::new(0.0, 0.0));
        let vals = block.eigenvalues().unwrap();
        assert!(rel(vals[0], s) < 1e-12 && rel(vals[1], s) < 1e-12);
    }

    #[test]
    fn delta0_berger_matches_tanno_eigenvalues() {
        // For b=c the function block is diagonal with entries
        // ν_{k,j} = a²(k−2j)² + b²((4j+2)k − 4j²).
        for &(k, a, b) in &[(3usize, 1.0, 2.0), (7, 0.5, 1.25)] {
            let m = metric(a, b, b);
            let vals = assemble_delta0(k, &m).eigenvalues().unwrap();
            let mut want: Vec<f64> = (0..=k)
                .map(|j| {
                    let (kf, jf) = (k as f64, j as f64);
                    a * a * (kf - 2.0 * jf).powi(2) + b * b * ((4.0 * jf + 2.0) * kf - 4.0 * jf * jf)
                })
                .collect();
            want.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (v, w) in vals.iter().zip(want.iter()) {
                assert!(rel(*v, *w) < 1e-12);
            }
        }
    }

    #[test]
    fn delta0_first_eigenvalue_matches_known_formula() {
        // Smallest positive Δ₀ eigenvalue is
        // min(a²+b²+c², 4(a²+b²), 4(a²+c²), 4(b²+c²)) — appearing at
        // weights 1 and 2 respectively.
        for &(a, b, c) in &[(1.0, 1.0, 1.0), (1.0, 2.0, 3.0), (0.3, 2.0, 0.7), (3.0, 0.2, 0.25)] {
            let m = metric(a, b, c);
            let spec = full_spectrum(&m, 0, 12).unwrap();
            let got = spec.min_nonzero().unwrap();
            let (x, y, z) = (a * a, b * b, c * c);
            let want = (x + y + z)
                .min(4.0 * (x + y))
                .min(4.0 * (x + z))
                .min(4.0 * (y + z));
            assert!(rel(got, want) < 1e-10, "({a},{b},{c}): {got} vs {want}");
        }
    }

    #[test]
    fn round_function_spectrum_with_multiplicities() {
        // k(k+2) with multiplicity (k+1)² on the round 3-sphere.
        let spec = full_spectrum(&metric(1.0, 1.0, 1.0), 0, 3).unwrap();
        let want = [(0.0, 1usize), (3.0, 4), (8.0, 9), (15.0, 16)];
        assert_eq!(spec.entries.len(), 4);
        for (e, (val, mult)) in spec.entries.iter().zip(want.iter()) {
            assert!(rel(e.eigenvalue, *val) < 1e-12);
            assert_eq!(e.multiplicity, *mult);
        }
        assert_eq!(spec.entries[0].tag, SpectralTag::Harmonic);
    }

    #[test]
    fn round_one_form_spectrum_tags_and_min() {
        let spec = full_spectrum(&metric(1.0, 1.0, 1.0), 1, 2).unwrap();
        assert!(rel(spec.min_nonzero().unwrap(), 3.0) < 1e-12);
        let first = &spec.entries[0];
        assert!(rel(first.eigenvalue, 3.0) < 1e-12);
        assert_eq!(first.tag, SpectralTag::Exact);
        assert_eq!(first.multiplicity, 4);
        assert_eq!(first.k, 1);
        // The eigenvalue 4 = μ⁻ at k=2 is coexact with multiplicity 3.
        let second = &spec.entries[1];
        assert!(rel(second.eigenvalue, 4.0) < 1e-12);
        assert_eq!(second.tag, SpectralTag::Coexact);
        assert_eq!(second.multiplicity, 3);
    }

    #[test]
    fn so3_round_min_is_four() {
        let m = MetricParams::new(1.0, 1.0, 1.0, Group::So3).unwrap();
        let spec = full_spectrum(&m, 1, 2).unwrap();
        assert!(rel(spec.min_nonzero().unwrap(), 4.0) < 1e-12);
        assert!(spec.entries.iter().all(|e| e.k % 2 == 0));
    }

    #[test]
    fn exterior_derivative_intertwines_blocks() {
        // Δ₁⁽ᵏ⁾ · D = D · Δ₀⁽ᵏ⁾ where D stacks the generator matrices:
        // D_{(r,i),s} = (dρ(Xᵢ))_{r,s}. This is the block form of
        // Δ₁ d = d Δ₀ and pins the exact-tagging convention.
        for &(k, a, b, c) in &[(2usize, 1.0, 2.0, 3.0), (5, 0.7, 1.3, 0.5)] {
            let m = metric(a, b, c);
            let g = su2_rep::generators(k, &m);
            let n0 = k + 1;
            let mut d = CMat::zeros(3 * n0, n0);
            for s in 0..n0 {
                for r in 0..n0 {
                    d.set(3 * r, s, g.d_x1.at(r, s));
                    d.set(3 * r + 1, s, g.d_x2.at(r, s));
                    d.set(3 * r + 2, s, g.d_x3.at(r, s));
                }
            }
            let d1 = assemble_delta1(k, &m).entries;
            let d0 = assemble_delta0(k, &m).entries;
            let lhs = d1.mul(&d);
            let rhs = d.mul(&d0);
            let diff = lhs.sub(&rhs).frobenius_norm();
            assert!(
                diff <= 1e-10 * rhs.frobenius_norm().max(1.0),
                "k={k}: intertwining residual {diff}"
            );
        }
    }

    #[test]
    fn verified_eigenvalues_agree_with_plain() {
        let m = metric(0.8, 1.9, 1.1);
        let block = assemble_delta1(5, &m);
        let plain = block.eigenvalues().unwrap();
        let checked = block.eigenvalues_verified().unwrap();
        for (x, y) in plain.iter().zip(checked.iter()) {
            assert!(rel(*x, *y) < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn hermitian_after_scaling_and_nonnegative(
            a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0,
            k in 0usize..18
        ) {
            let m = metric(a, b, c);
            let block = assemble_delta1(k, &m);
            let h = block.hermitian_form().unwrap();
            prop_assert!(h.hermitian_residual() <= 1e-10 * h.frobenius_norm().max(1.0));
            let vals = block.eigenvalues().unwrap();
            let scale = block.entries.frobenius_norm();
            prop_assert!(vals[0] >= -1e-8 * scale.max(1.0));
        }

        #[test]
        fn exact_eigenvalue_present_with_multiplicity_two(
            a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0
        ) {
            let m = metric(a, b, c);
            let vals = assemble_delta1(1, &m).eigenvalues().unwrap();
            let exact = a * a + b * b + c * c;
            let hits = vals.iter().filter(|&&v| rel(v, exact) < 1e-9).count();
            prop_assert!(hits >= 2, "{vals:?} missing {exact}");
        }

        #[test]
        fn hodge_containment_per_weight(
            a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0,
            k in 1usize..10
        ) {
            let m = metric(a, b, c);
            let d0 = assemble_delta0(k, &m).eigenvalues().unwrap();
            let d1 = assemble_delta1(k, &m).eigenvalues().unwrap();
            for mu in d0.iter().filter(|&&x| x > ZERO_TOL) {
                let hit = d1.iter().any(|&v| (v - mu).abs() <= 1e-8 * mu.abs().max(1.0));
                prop_assert!(hit, "Δ₀ eigenvalue {mu} missing from Δ₁ at k={k}");
            }
        }
    }
}
