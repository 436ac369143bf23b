use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol;

/// Spectral decomposition `M = V·diag(values)·V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Eigenvalues, descending; ties keep the order in which Jacobi left them on the diagonal.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors matching `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// Rebuilds `V·f(Λ)·V†` for a real function of the eigenvalues.
    pub fn map_values(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fv: Vec<C64> = self.values.iter().map(|&x| f(x)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// a real symmetric Jacobi rotation, so the accumulated transform stays
/// unitary. Sweeps stop once the off-diagonal Frobenius norm falls below
/// `JACOBI_OFF · max(1, ‖M‖_F)`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::Dims(format!("eigendecomposition of a {}x{} matrix", m.rows(), m.cols())));
    }
    let herm_err = m.hermiticity_error();
    let scale = m.max_abs().max(1.0);
    if herm_err > tol::ALGEBRAIC * scale {
        return Err(Error::Hermiticity(herm_err));
    }

    let n = m.rows();
    // symmetrize so the rotations act on an exactly Hermitian matrix
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol::JACOBI_OFF * m.frobenius_norm().max(1.0);

    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps ties in index order
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEig { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b < f64::MIN_POSITIVE {
        return;
    }
    let n = a.rows();
    let phase = apq / b; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane
    let u00 = C64::new(c, 0.0);
    let u01 = C64::new(s, 0.0);
    let u10 = -phase.conj() * s;
    let u11 = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u00 + akq * u10;
        a[(k, q)] = akp * u01 + akq * u11;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u00 + vkq * u10;
        v[(k, q)] = vkp * u01 + vkq * u11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u00.conj() * apk + u10.conj() * aqk;
        a[(q, k)] = u01.conj() * apk + u11.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * b, 0.0);
    a[(q, q)] = C64::new(aqq + t * b, 0.0);
}

/// Propagator `exp(−i·H·t)` of a Hermitian generator, via its eigendecomposition.
pub fn unitary_exp(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.map_values(|e| C64::from_polar(1.0, -e * t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&g + &g.adjoint()).scale_real(0.5)
    }

    #[test]
    fn diagonal_input() {
        let m = ComplexMatrix::diag_real(&[0.0, 1.0, 0.0, 0.0]);
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.values, vec![1.0, 0.0, 0.0, 0.0]);
        assert!(e.vectors.is_unitary(1e-14));
    }

    #[test]
    fn ties_keep_index_order() {
        let m = ComplexMatrix::diag_real(&[0.5, 2.0, 0.5]);
        let e = hermitian_eig(&m).unwrap();
        assert_eq!(e.values, vec![2.0, 0.5, 0.5]);
        assert_eq!(e.vectors[(0, 1)], C64::new(1.0, 0.0));
        assert_eq!(e.vectors[(2, 2)], C64::new(1.0, 0.0));
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 3, 6, 12, 18] {
            let m = random_hermitian(n, &mut rng);
            let e = hermitian_eig(&m).unwrap();
            assert!(e.vectors.is_unitary(1e-10));
            let lambda = ComplexMatrix::diag_real(&e.values);
            let mv = m.matmul(&e.vectors);
            let vl = e.vectors.matmul(&lambda);
            assert!((&mv - &vl).inf_norm() <= 1e-10, "n = {n}");
            let back = e.map_values(|x| C64::new(x, 0.0));
            assert!(back.max_abs_diff(&m) <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::Hermiticity(_))));
        assert!(matches!(unitary_exp(&m, 1.0), Err(Error::Hermiticity(_))));
    }

    #[test]
    fn exp_trivial_cases() {
        let zero = ComplexMatrix::zeros(3, 3);
        assert!(unitary_exp(&zero, 2.5).unwrap().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(5, &mut rng);
        assert!(unitary_exp(&h, 0.0).unwrap().max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);
    }

    #[test]
    fn exp_of_pauli_x() {
        // exp(-i σx t) = cos t I − i sin t σx
        let sx = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let t = 0.7_f64;
        let u = unitary_exp(&sx, t).unwrap();
        let expected = &ComplexMatrix::identity(2).scale_real(t.cos()) - &sx.scale(C64::new(0.0, t.sin()));
        assert!(u.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn exp_group_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let h = random_hermitian(8, &mut rng).scale_real(5.0);
            let t = rng.gen_range(-3.0..3.0);
            let u = unitary_exp(&h, t).unwrap();
            let w = unitary_exp(&h, -t).unwrap();
            assert!(u.is_unitary(1e-10));
            assert!(u.matmul(&w).max_abs_diff(&ComplexMatrix::identity(8)) < 1e-10);
        }
    }
}
