//! Dense factorizations: LU, Householder QR, Cholesky, one-sided Jacobi SVD
//! and the two-sided Jacobi method for Hermitian matrices.

use super::dense::Mat;
use super::scalar::{Real, Scalar};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P M = L U`.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Mat<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> Lu<T> {
    pub fn new(m: &Mat<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let floor = <T::Real as Real>::from_f64(n as f64 * T::Real::EPSILON) * m.norm_max();
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|i| (i, lu[(i, k)].abs1()))
                .fold((k, <T::Real as Real>::zero()), |b, c| if c.1 > b.1 { c } else { b });
            if pmag <= floor || pmag == <T::Real as Real>::zero() {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / d;
                lu[(i, k)] = f;
                if f == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        let n = self.lu.rows();
        if rhs.rows() != n {
            return Err(Error::DimensionMismatch {
                what: "solve right-hand side",
                expected: n,
                found: rhs.rows(),
            });
        }
        let mut x = Mat::from_fn(n, rhs.cols(), |i, j| rhs[(self.perm[i], j)]);
        for c in 0..rhs.cols() {
            for i in 0..n {
                let mut acc = x[(i, c)];
                for k in 0..i {
                    acc -= self.lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = x[(i, c)];
                for k in i + 1..n {
                    acc -= self.lu[(i, k)] * x[(k, c)];
                }
                x[(i, c)] = acc / self.lu[(i, i)];
            }
        }
        Ok(x)
    }
}

/// Solves `M Z = rhs`.
pub fn solve_linear<T: Scalar>(m: &Mat<T>, rhs: &Mat<T>) -> Result<Mat<T>> {
    Lu::new(m)?.solve(rhs)
}

/// Explicit inverse through LU solves.
pub fn inverse<T: Scalar>(m: &Mat<T>) -> Result<Mat<T>> {
    solve_linear(m, &Mat::identity(m.rows()))
}

/// Householder QR of a matrix with `rows >= cols`: returns `(Q, R)` with
/// `Q` square unitary and `R` upper trapezoidal.
pub fn householder_qr<T: Scalar>(m: &Mat<T>) -> (Mat<T>, Mat<T>) {
    let (rows, cols) = m.shape();
    let mut r = m.clone();
    let mut q = Mat::<T>::identity(rows);
    let zero = <T::Real as Real>::zero();
    for k in 0..cols.min(rows.saturating_sub(1)) {
        // the reflector is invariant under scaling, so work with the column
        // scaled to unit max entry and keep 2/|v|^2 finite for tiny columns
        let cmax = (k..rows).map(|i| r[(i, k)].abs()).fold(zero, |a, x| if x > a { x } else { a });
        if cmax == zero {
            continue;
        }
        let inv = <T::Real as Real>::one() / cmax;
        let mut v: Vec<T> = (k..rows).map(|i| r[(i, k)].scale(inv)).collect();
        let norm = v.iter().fold(zero, |a, &x| a + x.abs_sqr()).sqrt();
        let x0 = v[0];
        let x0abs = x0.abs();
        let phase = if x0abs == zero { T::one() } else { x0.scale(<T::Real as Real>::one() / x0abs) };
        let alpha = -phase.scale(norm);
        v[0] -= alpha;
        let vn2: T::Real = v.iter().fold(zero, |a, &x| a + x.abs_sqr());
        if vn2 == zero {
            continue;
        }
        let two_over = <T::Real as Real>::from_f64(2.0) / vn2;
        // R <- H R
        for j in k..cols {
            let mut dot = T::zero();
            for (idx, i) in (k..rows).enumerate() {
                dot += v[idx].conj() * r[(i, j)];
            }
            let f = dot.scale(two_over);
            for (idx, i) in (k..rows).enumerate() {
                let upd = v[idx] * f;
                r[(i, j)] -= upd;
            }
        }
        // Q <- Q H
        for i in 0..rows {
            let mut dot = T::zero();
            for (idx, j) in (k..rows).enumerate() {
                dot += q[(i, j)] * v[idx];
            }
            let f = dot.scale(two_over);
            for (idx, j) in (k..rows).enumerate() {
                let upd = f * v[idx].conj();
                q[(i, j)] -= upd;
            }
        }
        for i in k + 1..rows {
            r[(i, k)] = T::zero();
        }
    }
    (q, r)
}

/// Lower Cholesky factor `L` with `M = L L*`.
pub fn cholesky<T: Scalar>(m: &Mat<T>) -> Result<Mat<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut l = Mat::<T>::zeros(n, n);
    let zero = <T::Real as Real>::zero();
    for j in 0..n {
        let mut d = m[(j, j)].re();
        for k in 0..j {
            d -= l[(j, k)].abs_sqr();
        }
        if !(d > zero) {
            return Err(Error::NotPositiveDefinite { index: j });
        }
        let djj = d.sqrt();
        l[(j, j)] = T::from_real(djj);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s.scale(<T::Real as Real>::one() / djj);
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower triangular `L`.
pub fn solve_lower<T: Scalar>(l: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let n = l.rows();
    let mut x = b.clone();
    for c in 0..b.cols() {
        for i in 0..n {
            let mut acc = x[(i, c)];
            for k in 0..i {
                acc -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = acc / l[(i, i)];
        }
    }
    x
}

/// Solves `L* X = B` for lower triangular `L`.
pub fn solve_lower_adjoint<T: Scalar>(l: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let n = l.rows();
    let mut x = b.clone();
    for c in 0..b.cols() {
        for i in (0..n).rev() {
            let mut acc = x[(i, c)];
            for k in i + 1..n {
                acc -= l[(k, i)].conj() * x[(k, c)];
            }
            x[(i, c)] = acc / l[(i, i)].conj();
        }
    }
    x
}

/// One-sided Jacobi on the columns of `work` (`rows >= cols`). Returns the
/// column norms after convergence and, if requested, the accumulated
/// right rotations as columns.
fn one_sided_jacobi<T: Scalar>(work: &Mat<T>, accumulate: bool) -> (Vec<T::Real>, Vec<Vec<T>>) {
    let (rows, cols) = work.shape();
    let zero = <T::Real as Real>::zero();
    let one = <T::Real as Real>::one();
    // column-major copy for cache-friendly column rotations
    let mut c: Vec<Vec<T>> = (0..cols).map(|j| work.column(j)).collect();
    let mut v: Vec<Vec<T>> = if accumulate {
        (0..cols).map(|j| (0..cols).map(|i| if i == j { T::one() } else { T::zero() }).collect()).collect()
    } else {
        Vec::new()
    };
    let tol = <T::Real as Real>::from_f64(rows as f64 * T::Real::EPSILON);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = zero;
                let mut beta = zero;
                let mut gamma = T::zero();
                for i in 0..rows {
                    alpha += c[p][i].abs_sqr();
                    beta += c[q][i].abs_sqr();
                    gamma += c[p][i].conj() * c[q][i];
                }
                let gabs = gamma.abs();
                // a subnormal |gamma| would overflow the phase computation
                if gabs.to_f64() < f64::MIN_POSITIVE || alpha == zero || beta == zero {
                    continue;
                }
                if gabs <= tol * alpha.sqrt() * beta.sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma.scale(one / gabs);
                let zeta = (beta - alpha) / (gabs + gabs);
                let sgn = if zeta < zero { -one } else { one };
                let t = sgn / (zeta.abs() + (one + zeta * zeta).sqrt());
                let cs = one / (one + t * t).sqrt();
                let sn = cs * t;
                let rotate = |cols: &mut Vec<Vec<T>>| {
                    let (lo, hi) = cols.split_at_mut(q);
                    let (cp, cq) = (&mut lo[p], &mut hi[0]);
                    for i in 0..cp.len() {
                        let xp = cp[i];
                        let xq = cq[i] * phase.conj();
                        cp[i] = xp.scale(cs) - xq.scale(sn);
                        cq[i] = xp.scale(sn) + xq.scale(cs);
                    }
                };
                rotate(&mut c);
                if accumulate {
                    rotate(&mut v);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms = c
        .iter()
        .map(|col| {
            let mut acc = zero;
            let scale = col.iter().fold(zero, |m, x| m.max(x.abs1()));
            if scale == zero {
                return zero;
            }
            for x in col {
                acc += x.scale(one / scale).abs_sqr();
            }
            scale * acc.sqrt()
        })
        .collect();
    (norms, v)
}

/// Singular values (nonincreasing) by one-sided Jacobi rotations.
pub fn singular_values<T: Scalar>(m: &Mat<T>) -> Vec<T::Real> {
    if m.is_empty() {
        return Vec::new();
    }
    let work = if m.rows() >= m.cols() { m.clone() } else { m.adjoint() };
    let (mut s, _) = one_sided_jacobi(&work, false);
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Orthonormal basis of `{x : ‖m x‖ <= tol ‖x‖}` read off the right
/// singular vectors; `m` must have at least as many rows as columns.
pub fn null_space<T: Scalar>(m: &Mat<T>, tol: f64) -> Mat<T> {
    assert!(m.rows() >= m.cols(), "null_space expects a tall matrix");
    let (s, v) = one_sided_jacobi(m, true);
    let keep: Vec<usize> = (0..s.len()).filter(|&j| s[j].to_f64() <= tol).collect();
    Mat::from_fn(m.cols(), keep.len(), |i, k| v[keep[k]][i])
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in ascending order with matching eigenvector columns.
pub fn hermitian_eigen<T: Scalar>(m: &Mat<T>) -> Result<(Vec<T::Real>, Mat<T>)> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let zero = <T::Real as Real>::zero();
    let one = <T::Real as Real>::one();
    let mut a = m.clone();
    // enforce exact Hermitian symmetry
    for i in 0..n {
        a[(i, i)] = T::from_real(a[(i, i)].re());
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()).scale(<T::Real as Real>::from_f64(0.5));
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = Mat::<T>::identity(n);
    let eps = <T::Real as Real>::from_f64(T::Real::EPSILON);
    let mut converged = n < 2;
    for _sweep in 0..100 {
        let mut off = zero;
        let mut diag = zero;
        for i in 0..n {
            diag += a[(i, i)].abs_sqr();
            for j in i + 1..n {
                off += a[(i, j)].abs_sqr();
            }
        }
        if off <= eps * eps * diag || off == zero {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = a[(p, q)];
                let babs = b.abs();
                if babs == zero {
                    continue;
                }
                let app = a[(p, p)].re();
                let aqq = a[(q, q)].re();
                if babs <= eps * (app.abs().sqrt() * aqq.abs().sqrt()) {
                    a[(p, q)] = T::zero();
                    a[(q, p)] = T::zero();
                    continue;
                }
                let phase = b.scale(one / babs);
                let tau = (aqq - app) / (babs + babs);
                let sgn = if tau < zero { -one } else { one };
                let t = sgn / (tau.abs() + (one + tau * tau).sqrt());
                let c = one / (one + t * t).sqrt();
                let s = c * t;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let g00 = T::from_real(c);
                let g01 = T::from_real(s);
                let g10 = phase.conj().scale(-s);
                let g11 = phase.conj().scale(c);
                // A <- A G
                for k in 0..n {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    a[(k, p)] = x * g00 + y * g10;
                    a[(k, q)] = x * g01 + y * g11;
                }
                // A <- G* A
                for k in 0..n {
                    let x = a[(p, k)];
                    let y = a[(q, k)];
                    a[(p, k)] = g00.conj() * x + g10.conj() * y;
                    a[(q, k)] = g01.conj() * x + g11.conj() * y;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                a[(p, p)] = T::from_real(a[(p, p)].re());
                a[(q, q)] = T::from_real(a[(q, q)].re());
                for k in 0..n {
                    let x = v[(k, p)];
                    let y = v[(k, q)];
                    v[(k, p)] = x * g00 + y * g10;
                    v[(k, q)] = x * g01 + y * g11;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "Hermitian Jacobi", iterations: 100 });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)].re().partial_cmp(&a[(j, j)].re()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals = order.iter().map(|&i| a[(i, i)].re()).collect();
    let vecs = Mat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::dd::Dd;
    use crate::matcore::dense::{CMatrix, RMatrix};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lu_solves_diagonal() {
        let m = RMatrix::from_diag(&[2.0, 4.0]);
        let b = RMatrix::from_vec(2, 1, vec![2.0, 4.0]);
        let x = solve_linear(&m, &b).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 1.0]);
    }

    #[test]
    fn lu_rejects_singular() {
        let m = RMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(solve_linear(&m, &RMatrix::identity(2)), Err(Error::Singular { .. })));
    }

    #[test]
    fn qr_reconstructs_complex() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0)],
            vec![c(0.0, -1.0), c(3.0, 1.0), c(2.0, 0.0)],
            vec![c(4.0, 0.0), c(-2.0, 0.5), c(0.0, 0.0)],
        ]);
        let (q, r) = householder_qr(&m);
        let back = &q * &r;
        assert!((&back - &m).norm_max() < 1e-14);
        let qq = &q.adjoint() * &q;
        assert!((&qq - &CMatrix::identity(3)).norm_max() < 1e-15);
        for i in 0..3 {
            for j in 0..i {
                assert_eq!(r[(i, j)], c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn jacobi_singular_values_of_known_matrix() {
        // singular values of [[3, 0], [4, 5]] are sqrt(45) and sqrt(5)
        let m = RMatrix::from_rows(&[vec![3.0, 0.0], vec![4.0, 5.0]]);
        let s = singular_values(&m);
        assert!((s[0] - 45f64.sqrt()).abs() < 1e-14);
        assert!((s[1] - 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn jacobi_singular_values_double_double() {
        let m = RMatrix::from_rows(&[vec![3.0, 0.0], vec![4.0, 5.0]]).to_dd();
        let s = singular_values(&m);
        let e = (s[0] * s[0] - Dd::from_f64(45.0)).abs();
        assert!(e.hi < 1e-29);
    }

    #[test]
    fn cholesky_and_triangular_solves() {
        let m = CMatrix::from_rows(&[vec![c(4.0, 0.0), c(1.0, 1.0)], vec![c(1.0, -1.0), c(3.0, 0.0)]]);
        let l = cholesky(&m).unwrap();
        assert!((&(&l * &l.adjoint()) - &m).norm_max() < 1e-15);
        let b = CMatrix::identity(2);
        let y = solve_lower(&l, &b);
        let x = solve_lower_adjoint(&l, &y);
        assert!((&(&m * &x) - &b).norm_max() < 1e-15);
        let not_pd = RMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(matches!(cholesky(&not_pd), Err(Error::NotPositiveDefinite { index: 1 })));
    }

    #[test]
    fn hermitian_jacobi_recovers_spectrum() {
        let m = CMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(5.0, 0.0)],
        ]);
        let (vals, vecs) = hermitian_eigen(&m).unwrap();
        let expect = [1.0, 3.0, 5.0];
        for (v, e) in vals.iter().zip(expect) {
            assert!((v - e).abs() < 1e-14);
        }
        let lhs = &m * &vecs;
        let rhs = &vecs * &CMatrix::from_diag(&vals.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        assert!((&lhs - &rhs).norm_max() < 1e-14);
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(0.0, 2.0), c(4.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        let n = null_space(&m, 1e-12);
        assert_eq!(n.shape(), (3, 2));
        assert!((&m * &n).norm_max() < 1e-14);
        assert!((&(&n.adjoint() * &n) - &CMatrix::identity(2)).norm_max() < 1e-14);
        assert_eq!(null_space(&CMatrix::identity(2), 1e-12).cols(), 0);
    }
}
