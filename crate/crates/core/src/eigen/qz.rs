//! Complex QZ iteration for dense square pencils.
//!
//! The reduction follows the classical LAPACK layout: Householder QR of the
//! right-hand matrix, Givens reduction to Hessenberg-triangular form, then
//! single-shift implicit QZ sweeps with the standard treatment of negligible
//! diagonal entries of the triangular factor (infinite eigenvalues).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{householder_qr, CMatrix};

const ULP: f64 = f64::EPSILON;
const SAFMIN: f64 = f64::MIN_POSITIVE;

/// Generalized Schur form `Q* 𝒜 Z = S`, `Q* ℬ Z = T`.
#[derive(Clone, Debug)]
pub struct Schur {
    pub s: CMatrix,
    pub t: CMatrix,
    pub z: CMatrix,
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
}

#[inline]
fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Plane rotation `[c s; -conj(s) c]` mapping `(f, g)` to `(r, 0)`.
fn lartg(f: Complex64, g: Complex64) -> (f64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    if g == zero {
        return (1.0, zero, f);
    }
    let ga = g.norm();
    if f == zero {
        return (0.0, g.conj() / ga, Complex64::new(ga, 0.0));
    }
    let fa = f.norm();
    let norm = fa.hypot(ga);
    let phase = f / fa;
    (fa / norm, phase * g.conj() / norm, phase * norm)
}

/// Rows `r1, r2` over columns `cols`: `x ← c x + s y`, `y ← −conj(s) x + c y`.
fn rot_rows(m: &mut CMatrix, r1: usize, r2: usize, cols: std::ops::Range<usize>, c: f64, s: Complex64) {
    for j in cols {
        let x = m[(r1, j)];
        let y = m[(r2, j)];
        m[(r1, j)] = x * c + s * y;
        m[(r2, j)] = y * c - s.conj() * x;
    }
}

/// Columns over `rows`: `cx ← c cx + s cy`, `cy ← c cy − conj(s) cx`.
fn rot_cols(m: &mut CMatrix, cx: usize, cy: usize, rows: std::ops::Range<usize>, c: f64, s: Complex64) {
    for i in rows {
        let x = m[(i, cx)];
        let y = m[(i, cy)];
        m[(i, cx)] = x * c + s * y;
        m[(i, cy)] = y * c - s.conj() * x;
    }
}

fn hessenberg_triangular(a: &CMatrix, b: &CMatrix) -> (CMatrix, CMatrix, CMatrix) {
    let n = a.rows();
    let (q, r) = householder_qr(b);
    let mut h = &q.adjoint() * a;
    let mut t = r;
    let mut z = CMatrix::identity(n);
    for j in 0..n.saturating_sub(2) {
        for i in (j + 2..n).rev() {
            let (c, s, r) = lartg(h[(i - 1, j)], h[(i, j)]);
            h[(i - 1, j)] = r;
            h[(i, j)] = Complex64::new(0.0, 0.0);
            rot_rows(&mut h, i - 1, i, j + 1..n, c, s);
            rot_rows(&mut t, i - 1, i, i - 1..n, c, s);
            let (c, s, r) = lartg(t[(i, i)], t[(i, i - 1)]);
            t[(i, i)] = r;
            t[(i, i - 1)] = Complex64::new(0.0, 0.0);
            rot_cols(&mut h, i, i - 1, 0..n, c, s);
            rot_cols(&mut t, i, i - 1, 0..i, c, s);
            rot_cols(&mut z, i, i - 1, 0..n, c, s);
        }
    }
    (h, t, z)
}

enum Step {
    /// A 1×1 block at `ilast` has split off.
    Deflate,
    /// `T(ilast, ilast)` is zero: rotate `H(ilast, ilast-1)` away first.
    InfiniteAtBottom,
    /// Run a QZ sweep on `ifirst..=ilast`.
    Sweep(usize),
}

/// Computes the complex generalized Schur form of `(a, b)`.
pub fn qz(a: &CMatrix, b: &CMatrix) -> Result<Schur> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { what: "pencil right-hand side", expected: a.rows(), found: b.rows() });
    }
    let n = a.rows();
    let zero = Complex64::new(0.0, 0.0);
    let mut alpha = vec![zero; n];
    let mut beta = vec![zero; n];
    if n == 0 {
        return Ok(Schur { s: a.clone(), t: b.clone(), z: CMatrix::zeros(0, 0), alpha, beta });
    }
    let (mut h, mut t, mut z) = hessenberg_triangular(a, b);

    let anorm = h.norm_fro();
    let bnorm = t.norm_fro();
    let atol = SAFMIN.max(ULP * anorm);
    let btol = SAFMIN.max(ULP * bnorm);
    let ascale = 1.0 / SAFMIN.max(anorm);
    let bscale = 1.0 / SAFMIN.max(bnorm);

    let ilo = 0usize;
    let ilastm = n - 1;
    let ifrstm = 0usize;
    let mut ilast = n - 1;
    let mut iiter = 0usize;
    let mut eshift = zero;
    let maxit = 30 * n.max(2);
    let mut done = false;

    for _ in 0..maxit {
        let step = if ilast == ilo {
            Step::Deflate
        } else if abs1(h[(ilast, ilast - 1)]) <= atol {
            h[(ilast, ilast - 1)] = zero;
            Step::Deflate
        } else if t[(ilast, ilast)].norm() <= btol {
            t[(ilast, ilast)] = zero;
            Step::InfiniteAtBottom
        } else {
            let mut found = None;
            for j in (ilo..ilast).rev() {
                let ilazro = if j == ilo {
                    true
                } else if abs1(h[(j, j - 1)]) <= atol {
                    h[(j, j - 1)] = zero;
                    true
                } else {
                    false
                };
                if t[(j, j)].norm() < btol {
                    t[(j, j)] = zero;
                    let mut ilazr2 = !ilazro
                        && abs1(h[(j, j - 1)]) * (ascale * abs1(h[(j + 1, j)]))
                            <= abs1(h[(j, j)]) * (ascale * atol);
                    if ilazro || ilazr2 {
                        // split off the infinite eigenvalue at the top
                        let mut next = Step::InfiniteAtBottom;
                        for jch in j..ilast {
                            let (c, s, r) = lartg(h[(jch, jch)], h[(jch + 1, jch)]);
                            h[(jch, jch)] = r;
                            h[(jch + 1, jch)] = zero;
                            rot_rows(&mut h, jch, jch + 1, jch + 1..ilastm + 1, c, s);
                            rot_rows(&mut t, jch, jch + 1, jch + 1..ilastm + 1, c, s);
                            if ilazr2 {
                                h[(jch, jch - 1)] *= c;
                            }
                            ilazr2 = false;
                            if abs1(t[(jch + 1, jch + 1)]) >= btol {
                                next = if jch + 1 >= ilast { Step::Deflate } else { Step::Sweep(jch + 1) };
                                break;
                            }
                            t[(jch + 1, jch + 1)] = zero;
                        }
                        found = Some(next);
                    } else {
                        // chase the zero down to T(ilast, ilast)
                        for jch in j..ilast {
                            let (c, s, r) = lartg(t[(jch, jch + 1)], t[(jch + 1, jch + 1)]);
                            t[(jch, jch + 1)] = r;
                            t[(jch + 1, jch + 1)] = zero;
                            if jch + 2 <= ilastm {
                                rot_rows(&mut t, jch, jch + 1, jch + 2..ilastm + 1, c, s);
                            }
                            rot_rows(&mut h, jch, jch + 1, jch - 1..ilastm + 1, c, s);
                            let (c, s, r) = lartg(h[(jch + 1, jch)], h[(jch + 1, jch - 1)]);
                            h[(jch + 1, jch)] = r;
                            h[(jch + 1, jch - 1)] = zero;
                            rot_cols(&mut h, jch, jch - 1, ifrstm..jch + 1, c, s);
                            rot_cols(&mut t, jch, jch - 1, ifrstm..jch, c, s);
                            rot_cols(&mut z, jch, jch - 1, 0..n, c, s);
                        }
                        found = Some(Step::InfiniteAtBottom);
                    }
                    break;
                } else if ilazro {
                    found = Some(Step::Sweep(j));
                    break;
                }
            }
            found.expect("deflation scan always terminates at ilo")
        };

        let step = match step {
            Step::InfiniteAtBottom => {
                let (c, s, r) = lartg(h[(ilast, ilast)], h[(ilast, ilast - 1)]);
                h[(ilast, ilast)] = r;
                h[(ilast, ilast - 1)] = zero;
                rot_cols(&mut h, ilast, ilast - 1, ifrstm..ilast, c, s);
                rot_cols(&mut t, ilast, ilast - 1, ifrstm..ilast, c, s);
                rot_cols(&mut z, ilast, ilast - 1, 0..n, c, s);
                Step::Deflate
            }
            other => other,
        };

        match step {
            Step::Deflate => {
                alpha[ilast] = h[(ilast, ilast)];
                beta[ilast] = t[(ilast, ilast)];
                if ilast == ilo {
                    done = true;
                    break;
                }
                ilast -= 1;
                iiter = 0;
                eshift = zero;
            }
            Step::Sweep(ifirst) => {
                iiter += 1;
                let shift = if !iiter.is_multiple_of(10) {
                    wilkinson_shift(&h, &t, ilast, ascale, bscale)
                } else {
                    if iiter.is_multiple_of(20) && bscale * abs1(t[(ilast, ilast)]) > SAFMIN {
                        eshift += (h[(ilast, ilast)] * ascale) / (t[(ilast, ilast)] * bscale);
                    } else {
                        eshift += (h[(ilast, ilast - 1)] * ascale) / (t[(ilast - 1, ilast - 1)] * bscale);
                    }
                    eshift
                };
                // look for two consecutive small subdiagonals
                let mut istart = ifirst;
                let mut ctemp = h[(ifirst, ifirst)] * ascale - shift * (t[(ifirst, ifirst)] * bscale);
                for j in (ifirst + 1..ilast).rev() {
                    let cand = h[(j, j)] * ascale - shift * (t[(j, j)] * bscale);
                    let mut temp = abs1(cand);
                    let mut temp2 = ascale * abs1(h[(j + 1, j)]);
                    let tempr = temp.max(temp2);
                    if tempr < 1.0 && tempr != 0.0 {
                        temp /= tempr;
                        temp2 /= tempr;
                    }
                    if abs1(h[(j, j - 1)]) * temp2 <= temp * atol {
                        istart = j;
                        ctemp = cand;
                        break;
                    }
                }
                let ctemp2 = h[(istart + 1, istart)] * ascale;
                let (mut c, mut s, _) = lartg(ctemp, ctemp2);
                for j in istart..ilast {
                    if j > istart {
                        let (c1, s1, r) = lartg(h[(j, j - 1)], h[(j + 1, j - 1)]);
                        h[(j, j - 1)] = r;
                        h[(j + 1, j - 1)] = zero;
                        c = c1;
                        s = s1;
                    }
                    rot_rows(&mut h, j, j + 1, j..ilastm + 1, c, s);
                    rot_rows(&mut t, j, j + 1, j..ilastm + 1, c, s);
                    let (c2, s2, r) = lartg(t[(j + 1, j + 1)], t[(j + 1, j)]);
                    t[(j + 1, j + 1)] = r;
                    t[(j + 1, j)] = zero;
                    rot_cols(&mut h, j + 1, j, ifrstm..(j + 3).min(ilast + 1), c2, s2);
                    rot_cols(&mut t, j + 1, j, ifrstm..j + 1, c2, s2);
                    rot_cols(&mut z, j + 1, j, 0..n, c2, s2);
                }
            }
            Step::InfiniteAtBottom => unreachable!(),
        }
    }
    if !done {
        return Err(Error::NoConvergence { what: "QZ iteration", iterations: maxit });
    }
    // entries below the diagonal are rounding-level leftovers of deflation
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = zero;
            t[(i, j)] = zero;
        }
    }
    Ok(Schur { s: h, t, z, alpha, beta })
}

fn wilkinson_shift(h: &CMatrix, t: &CMatrix, ilast: usize, ascale: f64, bscale: f64) -> Complex64 {
    let l = ilast;
    let u12 = (t[(l - 1, l)] * bscale) / (t[(l, l)] * bscale);
    let ad11 = (h[(l - 1, l - 1)] * ascale) / (t[(l - 1, l - 1)] * bscale);
    let ad21 = (h[(l, l - 1)] * ascale) / (t[(l - 1, l - 1)] * bscale);
    let ad12 = (h[(l - 1, l)] * ascale) / (t[(l, l)] * bscale);
    let ad22 = (h[(l, l)] * ascale) / (t[(l, l)] * bscale);
    let abi22 = ad22 - u12 * ad21;
    let abi12 = ad12 - u12 * ad11;
    let mut shift = abi22;
    let ctemp = abi12.sqrt() * ad21.sqrt();
    let mut temp = abs1(ctemp);
    if ctemp != Complex64::new(0.0, 0.0) {
        let x = (ad11 - shift) * 0.5;
        let temp2 = abs1(x);
        temp = temp.max(temp2);
        let xs = x / temp;
        let cs = ctemp / temp;
        let mut y = (xs * xs + cs * cs).sqrt() * temp;
        if temp2 > 0.0 {
            let xn = x / temp2;
            if xn.re * y.re + xn.im * y.im < 0.0 {
                y = -y;
            }
        }
        shift -= ctemp * (ctemp / (x + y));
    }
    shift
}

/// Right eigenvectors of the triangular pair `(S, T)` mapped back through `Z`,
/// one unit-norm column per eigenvalue.
pub fn right_eigenvectors(schur: &Schur) -> CMatrix {
    let n = schur.s.rows();
    let s = &schur.s;
    let t = &schur.t;
    let snorm = s.norm_fro();
    let tnorm = t.norm_fro();
    let mut out = CMatrix::zeros(n, n);
    let zero = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let (mut a, mut b) = (s[(k, k)], t[(k, k)]);
        let scale = a.norm().max(b.norm());
        if scale > SAFMIN {
            a /= scale;
            b /= scale;
        }
        let dmin = SAFMIN.max(ULP * (b.norm() * snorm + a.norm() * tnorm));
        let mut x = vec![zero; k + 1];
        x[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut sum = zero;
            for i in j + 1..=k {
                sum += (b * s[(j, i)] - a * t[(j, i)]) * x[i];
            }
            let mut d = b * s[(j, j)] - a * t[(j, j)];
            if d.norm() < dmin {
                d = Complex64::new(dmin, 0.0);
            }
            x[j] = -sum / d;
            let big = x[j].norm();
            if big > 1e100 {
                for xi in x.iter_mut() {
                    *xi /= big;
                }
            }
        }
        let mut w = vec![zero; n];
        for (i, wi) in w.iter_mut().enumerate() {
            for (j, xj) in x.iter().enumerate() {
                *wi += schur.z[(i, j)] * xj;
            }
        }
        let norm = w.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for wi in w.iter_mut() {
                *wi /= norm;
            }
        }
        out.set_column(k, &w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{haar_unitary, seeded_rng};
    use crate::matcore::random::gaussian_complex;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_lambdas(s: &Schur) -> Vec<Complex64> {
        let mut l: Vec<Complex64> = s.alpha.iter().zip(&s.beta).map(|(a, b)| a / b).collect();
        l.sort_by(|x, y| (x.re, x.im).partial_cmp(&(y.re, y.im)).unwrap());
        l
    }

    #[test]
    fn rotation_zeroes_second_component() {
        let f = c(1.0, 2.0);
        let g = c(-0.5, 3.0);
        let (cs, s, r) = lartg(f, g);
        assert!((s.conj() * -f + g * cs).norm() < 1e-15);
        assert!((f * cs + s * g - r).norm() < 1e-15);
    }

    #[test]
    fn diagonal_pencil() {
        let a = CMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let s = qz(&a, &CMatrix::identity(2)).unwrap();
        let l = sorted_lambdas(&s);
        assert!((l[0] - c(1.0, 0.0)).norm() < 1e-15 && (l[1] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn schur_form_reproduces_pencil() {
        let mut rng = seeded_rng(7);
        let a = gaussian_complex(9, 9, &mut rng);
        let b = gaussian_complex(9, 9, &mut rng);
        let s = qz(&a, &b).unwrap();
        // (A − λB) w = 0 for every eigenpair
        let w = right_eigenvectors(&s);
        for k in 0..9 {
            let col = w.column(k);
            let r1 = a.matvec(&col);
            let r2 = b.matvec(&col);
            let res: f64 = r1
                .iter()
                .zip(&r2)
                .map(|(x, y)| (s.beta[k] * x - s.alpha[k] * y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let scale = s.beta[k].norm() * a.norm_fro() + s.alpha[k].norm() * b.norm_fro();
            assert!(res <= 1e-13 * scale, "residual {res} for k={k}");
        }
        let uu = &s.z.adjoint() * &s.z;
        assert!((&uu - &CMatrix::identity(9)).norm_max() < 1e-13);
    }

    #[test]
    fn unitary_equivalence_preserves_spectrum() {
        let mut rng = seeded_rng(19);
        let d: Vec<Complex64> = (1..=6).map(|k| c(k as f64, 0.5 * k as f64)).collect();
        let a0 = CMatrix::from_diag(&d);
        let q1 = haar_unitary(6, &mut rng);
        let q2 = haar_unitary(6, &mut rng);
        let a = &(&q1.adjoint() * &a0) * &q2;
        let b = &q1.adjoint() * &q2;
        let l = sorted_lambdas(&qz(&a, &b).unwrap());
        for (x, y) in l.iter().zip(&d) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_rhs_gives_infinite_pair() {
        let a = CMatrix::identity(2);
        let b = CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = qz(&a, &b).unwrap();
        let infinite = s.beta.iter().filter(|b| b.norm() < 1e-15).count();
        assert_eq!(infinite, 1);
    }
}
