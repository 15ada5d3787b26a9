//! Dense complex linear-algebra kernel: matrix exponential, Hermitian
//! eigendecomposition, and the tolerance checks used throughout the crate.
//!
//! Matrices are square `DMatrix<Complex<f64>>` values; all routines validate
//! their inputs and return [`Error`](crate::Error) on violation.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

/// Largest entry magnitude.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `‖m − m†‖_max`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// `‖m + m†‖_max`.
pub fn anti_hermitian_defect(m: &CMatrix) -> f64 {
    max_abs(&(m + m.adjoint()))
}

/// `‖U†U − I‖_max`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let dim = u.nrows();
    max_abs(&(u.adjoint() * u - CMatrix::identity(dim, dim)))
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Require `u` to be unitary to within `tol`.
pub fn check_unitary(u: &CMatrix, tol: f64) -> Result<()> {
    let defect = unitarity_defect(u);
    if defect < tol {
        Ok(())
    } else {
        Err(Error::NotUnitary { defect })
    }
}

/// Eigendecomposition `h = V diag(λ) V†` of a Hermitian matrix.
///
/// Eigenvalues are returned in ascending order with the eigenvector columns
/// permuted to match. Fails if `‖h − h†‖_max ≥ 1e−10` or entries are not
/// finite.
pub fn hermitian_eigendecomposition(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if h.nrows() != h.ncols() {
        return Err(Error::InvalidSpec(format!(
            "matrix must be square (got {}x{})",
            h.nrows(),
            h.ncols()
        )));
    }
    if !all_finite(h) {
        return Err(Error::NonFiniteMatrix);
    }
    let defect = hermitian_defect(h);
    if defect >= 1e-10 {
        return Err(Error::NotHermitian { defect });
    }
    let eig = SymmetricEigen::new(h.clone());
    let dim = h.nrows();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// Matrix exponential `exp(a)`.
///
/// Anti-Hermitian arguments (the dominant case: every `exp(iH)` factor and
/// every holonomy step) go through the eigendecomposition of `−i·a`, which
/// keeps the result unitary to machine precision. Hermitian arguments use the
/// same spectral route. Everything else falls back to scaling-and-squaring
/// with a [6/6] Padé approximant.
pub fn matrix_exponential(a: &CMatrix) -> Result<CMatrix> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidSpec(format!(
            "matrix must be square (got {}x{})",
            a.nrows(),
            a.ncols()
        )));
    }
    if !all_finite(a) {
        return Err(Error::NonFiniteMatrix);
    }
    let scale = 1.0 + max_abs(a);
    if anti_hermitian_defect(a) <= 1e-12 * scale {
        // exp(a) = V diag(e^{iλ}) V† with λ the spectrum of the Hermitian −i·a
        let h = a.map(|z| -I * z);
        let (values, vectors) = hermitian_eigendecomposition(&h)?;
        return Ok(spectral_apply(&values, &vectors, |x| {
            (I * C64::from(x)).exp()
        }));
    }
    if hermitian_defect(a) <= 1e-12 * scale {
        let (values, vectors) = hermitian_eigendecomposition(a)?;
        return Ok(spectral_apply(&values, &vectors, |x| C64::from(x.exp())));
    }
    Ok(pade_exponential(a))
}

/// `V diag(f(λ)) V†`.
pub(crate) fn spectral_apply(values: &[f64], vectors: &CMatrix, f: impl Fn(f64) -> C64) -> CMatrix {
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let fz = f(lambda);
        scaled.column_mut(k).iter_mut().for_each(|z| *z *= fz);
    }
    scaled * vectors.adjoint()
}

/// Scaling-and-squaring with a fixed [6/6] Padé approximant.
fn pade_exponential(a: &CMatrix) -> CMatrix {
    // coefficients of p₆(x) = Σ b_k x^k ; q₆(x) = p₆(−x)
    const B: [f64; 7] = [
        1.0,
        0.5,
        5.0 / 44.0,
        1.0 / 66.0,
        1.0 / 792.0,
        1.0 / 15840.0,
        1.0 / 665280.0,
    ];
    let dim = a.nrows();
    let norm = max_abs(a) * dim as f64;
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil().max(0.0) as u32
    } else {
        0
    };
    let scaled = a.map(|z| z / C64::from(2f64.powi(squarings as i32)));

    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let id = CMatrix::identity(dim, dim);
    // odd part U = A(b1 + b3 A² + b5 A⁴), even part V = b0 + b2 A² + b4 A⁴ + b6 A⁶
    let u = &scaled * (&id * C64::from(B[1]) + &a2 * C64::from(B[3]) + &a4 * C64::from(B[5]));
    let v = &id * C64::from(B[0])
        + &a2 * C64::from(B[2])
        + &a4 * C64::from(B[4])
        + &a6 * C64::from(B[6]);

    let p = &v + &u;
    let q = &v - &u;
    let mut result = q
        .lu()
        .solve(&p)
        .expect("Padé denominator is singular; argument norm out of range");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Truncated Taylor series with norm scaling, the independent oracle for
    /// the exponential on small matrices.
    pub(crate) fn taylor_exponential(a: &CMatrix, terms: usize) -> CMatrix {
        let dim = a.nrows();
        let norm = max_abs(a) * dim as f64;
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = a.map(|z| z / C64::from(2f64.powi(squarings as i32)));
        let mut sum = CMatrix::identity(dim, dim);
        let mut term = CMatrix::identity(dim, dim);
        for k in 1..=terms {
            term = &term * &scaled / C64::from(k as f64);
            sum += &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    fn from_rows(dim: usize, rows: &[&[C64]]) -> CMatrix {
        CMatrix::from_fn(dim, dim, |r, c| rows[r][c])
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = CMatrix::zeros(3, 3);
        let e = matrix_exponential(&z).unwrap();
        assert!(max_abs(&(e - CMatrix::identity(3, 3))) < 1e-15);
    }

    #[test]
    fn exp_of_diagonal_is_entrywise() {
        let a = from_rows(2, &[&[I, ZERO], &[ZERO, -I]]);
        let e = matrix_exponential(&a).unwrap();
        assert!((e[(0, 0)] - I.exp()).norm() < 1e-14);
        assert!((e[(1, 1)] - (-I).exp()).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-14 && e[(1, 0)].norm() < 1e-14);
    }

    #[test]
    fn exp_of_i_pi_jy_spin_half() {
        // iπJ_y for j=1/2 is (π/2)·[[0,1],[−1,0]]; its exponential rotates by π.
        let half_pi = C64::from(std::f64::consts::FRAC_PI_2);
        let a = from_rows(2, &[&[ZERO, half_pi], &[-half_pi, ZERO]]);
        let oracle = taylor_exponential(&a, 30);
        let e = matrix_exponential(&a).unwrap();
        assert!(max_abs(&(&e - &oracle)) < 1e-12);
        let expected = from_rows(2, &[&[ZERO, ONE], &[-ONE, ZERO]]);
        assert!(max_abs(&(e - expected)) < 1e-12);
    }

    #[test]
    fn exp_matches_taylor_oracle_on_general_arguments() {
        // a deliberately non-normal matrix exercises the Padé fallback
        let a = from_rows(
            3,
            &[
                &[C64::new(0.3, 0.1), C64::new(1.2, -0.4), C64::new(0.0, 0.9)],
                &[C64::new(0.0, 0.0), C64::new(-0.5, 0.2), C64::new(2.0, 0.0)],
                &[C64::new(0.7, 0.0), C64::new(0.0, -1.1), C64::new(0.1, 0.1)],
            ],
        );
        let e = matrix_exponential(&a).unwrap();
        let oracle = taylor_exponential(&a, 30);
        assert!(max_abs(&(e - oracle)) < 1e-10);
    }

    #[test]
    fn exp_of_anti_hermitian_is_unitary_and_inverts() {
        // fixed LCG so the cases are reproducible
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for dim in 2..=4 {
            let g = CMatrix::from_fn(dim, dim, |_, _| C64::new(next() * 4.0, next() * 4.0));
            let a = (&g - g.adjoint()).map(|z| z * C64::from(0.5));
            assert!(max_abs(&a) <= 10.0);
            let e = matrix_exponential(&a).unwrap();
            assert!(unitarity_defect(&e) < 1e-10);
            let e_inv = matrix_exponential(&a.map(|z| -z)).unwrap();
            let dim_i = CMatrix::identity(dim, dim);
            assert!(max_abs(&(e * e_inv - dim_i)) < 1e-10);
        }
    }

    #[test]
    fn eigendecomposition_sorts_ascending() {
        let h = from_rows(
            3,
            &[
                &[C64::from(3.0), ZERO, ZERO],
                &[ZERO, C64::from(1.0), ZERO],
                &[ZERO, ZERO, C64::from(2.0)],
            ],
        );
        let (values, _) = hermitian_eigendecomposition(&h).unwrap();
        assert!((values[0] - 1.0).abs() < 1e-12);
        assert!((values[1] - 2.0).abs() < 1e-12);
        assert!((values[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigendecomposition_reconstructs() {
        let h = from_rows(
            3,
            &[
                &[C64::from(1.0), C64::new(0.5, 0.25), C64::new(0.0, -0.7)],
                &[C64::new(0.5, -0.25), C64::from(-2.0), C64::new(1.0, 0.1)],
                &[C64::new(0.0, 0.7), C64::new(1.0, -0.1), C64::from(0.5)],
            ],
        );
        let (values, vectors) = hermitian_eigendecomposition(&h).unwrap();
        let mut reconstructed = CMatrix::zeros(3, 3);
        for (k, value) in values.iter().enumerate() {
            let v = vectors.column(k);
            reconstructed += (v * v.adjoint()).map(|z| z * C64::from(*value));
        }
        assert!(max_abs(&(reconstructed - h)) < 1e-10);
        assert!(unitarity_defect(&vectors) < 1e-10);
    }

    #[test]
    fn eigendecomposition_rejects_non_hermitian() {
        let m = from_rows(2, &[&[ONE, ONE], &[ZERO, ONE]]);
        assert!(matches!(
            hermitian_eigendecomposition(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn exp_rejects_non_finite() {
        let m = from_rows(2, &[&[C64::new(f64::NAN, 0.0), ZERO], &[ZERO, ONE]]);
        assert!(matches!(
            matrix_exponential(&m),
            Err(Error::NonFiniteMatrix)
        ));
    }
}
