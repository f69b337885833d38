//! Dense complex matrices and a real-symmetric eigensolver.
//!
//! The weight-block matrices of this crate are complex, similar to
//! Hermitian by an explicit diagonal scaling, and small (a few hundred
//! rows at most). Eigenvalues are therefore computed by embedding the
//! Hermitian form `H = Re + i·Im` into the real symmetric matrix
//!
//! ```text
//!   B = [ Re  -Im ]
//!       [ Im   Re ]
//! ```
//!
//! and running Householder tridiagonalization followed by the implicit
//! QL iteration. The `2N` eigenvalues of `B` are the eigenvalues of `H`
//! doubled; deduplication pairs consecutive sorted values and enforces
//! a pair-gap guard so a defective embedding cannot pass silently.

use num_complex::Complex64;

use crate::error::{Result, SpectralError};

pub type C64 = Complex64;

/// Dense row-major complex matrix.
#[derive(Clone, Debug)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.at(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn scale(&self, s: C64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn conj_transpose(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖M − M†‖_F`, zero iff the matrix is Hermitian.
    pub fn hermitian_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self.at(i, j) - self.at(j, i).conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let mut out = CMat::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.at(i, j);
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for p in 0..b.rows {
                for q in 0..b.cols {
                    out.set(i * b.rows + p, j * b.cols + q, aij * b.at(p, q));
                }
            }
        }
    }
    out
}

/// Householder reduction of a real symmetric matrix to tridiagonal form,
/// followed by implicit-shift QL iteration. Ported from the classic
/// EISPACK `tred2`/`tql2` pair.
///
/// `a` is row-major `n×n` and is destroyed; when `want_vectors` is set it
/// is overwritten with the orthonormal eigenvectors (column `j` belongs
/// to `eigenvalue[j]`). Eigenvalues are returned sorted ascending.
pub fn symmetric_eigen(
    a: &mut [f64],
    n: usize,
    want_vectors: bool,
) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = vec![0.0_f64; n];
    let mut e = vec![0.0_f64; n];

    // --- Householder tridiagonalization (tred2) ---
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        let mut scale = 0.0;
        if l > 0 {
            for k in 0..=l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let mut g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    if want_vectors {
                        a[j * n + i] = a[i * n + j] / h;
                    }
                    g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if want_vectors {
            if d[i] != 0.0 {
                for j in 0..i {
                    let mut g = 0.0;
                    for k in 0..i {
                        g += a[i * n + k] * a[k * n + j];
                    }
                    for k in 0..i {
                        a[k * n + j] -= g * a[k * n + i];
                    }
                }
            }
            d[i] = a[i * n + i];
            a[i * n + i] = 1.0;
            for j in 0..i {
                a[j * n + i] = 0.0;
                a[i * n + j] = 0.0;
            }
        } else {
            d[i] = a[i * n + i];
        }
    }

    // --- Implicit QL with shifts (tql2) ---
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(SpectralError::InternalConsistency(format!(
                    "QL iteration failed to converge at row {l} of a {n}x{n} matrix"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if want_vectors {
                    for k in 0..n {
                        f = a[k * n + i + 1];
                        a[k * n + i + 1] = s * a[k * n + i] + c * f;
                        a[k * n + i] = c * a[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort ascending, carrying eigenvectors along.
    if want_vectors {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
        let sorted_d: Vec<f64> = order.iter().map(|&i| d[i]).collect();
        let old = a.to_vec();
        for (new_j, &old_j) in order.iter().enumerate() {
            for k in 0..n {
                a[k * n + new_j] = old[k * n + old_j];
            }
        }
        d = sorted_d;
    } else {
        d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    }
    Ok(d)
}

/// Cyclic Jacobi on a real symmetric matrix (row-major, destroyed).
///
/// Slower than tridiagonalization + QL but computes the eigenvalues of
/// positive definite matrices to high *relative* accuracy — the error
/// scales with the condition number of the diagonally scaled matrix
/// rather than with `‖A‖`. The weight-0/1 blocks that decide the first
/// eigenvalue can have `‖A‖/λ_min ~ 1e8` at box extremes, where QL's
/// `eps·‖A‖` absolute error would swamp a 1e−10 relative comparison.
/// Rotations stop when every `|a_pq| ≤ eps·√(a_pp·a_qq)`.
pub fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let threshold = f64::EPSILON
                    * (a[p * n + p].abs() * a[q * n + q].abs())
                        .sqrt()
                        .max(f64::MIN_POSITIVE);
                if apq.abs() <= threshold {
                    continue;
                }
                rotated = true;
                let tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    let new_p = c * aip - s * aiq;
                    let new_q = s * aip + c * aiq;
                    a[i * n + p] = new_p;
                    a[p * n + i] = new_p;
                    a[i * n + q] = new_q;
                    a[q * n + i] = new_q;
                }
            }
        }
        if !rotated {
            let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            d.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return Ok(d);
        }
    }
    Err(SpectralError::InternalConsistency(format!(
        "Jacobi sweep limit reached on a {n}x{n} matrix"
    )))
}

/// Real symmetric embedding `[[Re, -Im], [Im, Re]]` of a complex matrix.
pub fn hermitian_embedding(h: &CMat) -> Vec<f64> {
    let n = h.rows();
    assert_eq!(n, h.cols());
    let m = 2 * n;
    let mut b = vec![0.0_f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h.at(i, j);
            b[i * m + j] = z.re;
            b[i * m + (j + n)] = -z.im;
            b[(i + n) * m + j] = z.im;
            b[(i + n) * m + (j + n)] = z.re;
        }
    }
    b
}

/// Eigenvalues of a Hermitian matrix via the real symmetric embedding.
///
/// The `2N` eigenvalues of the embedding come in duplicated pairs; each
/// pair collapses to one returned eigenvalue. `norm_scale` sets the
/// pair-gap guard `gap ≤ 1e−10·max(1, norm_scale)`: a wider gap means
/// the input was not actually Hermitian-similar and is reported as an
/// internal error.
///
/// Small matrices go through cyclic Jacobi for relative accuracy; the
/// rest through Householder + QL for speed.
pub fn hermitian_eigenvalues(h: &CMat, norm_scale: f64) -> Result<Vec<f64>> {
    let n = h.rows();
    let mut b = hermitian_embedding(h);
    let all = if 2 * n <= JACOBI_SIZE_CUTOFF {
        jacobi_symmetric_eigenvalues(&mut b, 2 * n)?
    } else {
        symmetric_eigen(&mut b, 2 * n, false)?
    };
    collapse_pairs(&all, norm_scale)
}

/// Embeddings up to this size use Jacobi (covers the weight 0 and 1
/// blocks, which decide first-eigenvalue comparisons).
const JACOBI_SIZE_CUTOFF: usize = 16;

/// Eigenvalues through cyclic Jacobi regardless of size: high relative
/// accuracy at `O(n³)`-with-a-bigger-constant cost.
pub fn hermitian_eigenvalues_precise(h: &CMat, norm_scale: f64) -> Result<Vec<f64>> {
    let n = h.rows();
    let mut b = hermitian_embedding(h);
    let all = jacobi_symmetric_eigenvalues(&mut b, 2 * n)?;
    collapse_pairs(&all, norm_scale)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
///
/// Each real eigenvector `(x; y)` of the embedding corresponds to the
/// complex eigenvector `x + i·y`; one vector per duplicated pair is
/// returned.
pub fn hermitian_eigenpairs(h: &CMat, norm_scale: f64) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    let n = h.rows();
    let mut b = hermitian_embedding(h);
    let all = symmetric_eigen(&mut b, 2 * n, true)?;
    let vals = collapse_pairs(&all, norm_scale)?;
    let m = 2 * n;
    let mut vecs = Vec::with_capacity(n);
    for pair in 0..n {
        let col = 2 * pair;
        let mut v = vec![C64::new(0.0, 0.0); n];
        for k in 0..n {
            v[k] = C64::new(b[k * m + col], b[(k + n) * m + col]);
        }
        vecs.push(v);
    }
    Ok((vals, vecs))
}

fn collapse_pairs(all: &[f64], norm_scale: f64) -> Result<Vec<f64>> {
    let n = all.len() / 2;
    let guard = 1e-10 * norm_scale.max(1.0);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = all[2 * i];
        let hi = all[2 * i + 1];
        if hi - lo > guard {
            return Err(SpectralError::InternalConsistency(format!(
                "eigenvalue pair gap {:.3e} exceeds guard {:.3e}; embedding not doubled",
                hi - lo,
                guard
            )));
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}
