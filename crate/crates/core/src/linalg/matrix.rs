use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let v: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    /// Column vector from amplitudes.
    pub fn column(v: &[C64]) -> Self {
        Self { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Commutator [A, B] = AB − BA.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced ∞-norm (max absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square()
            && self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.rows)) <= tol
    }

    /// Restriction to the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Ordered per-subsystem dimensions of a composite Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemDims(Vec<usize>);

impl SubsystemDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dims(format!("subsystem dims must be non-empty and >= 1: {dims:?}")));
        }
        Ok(Self(dims))
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Dims of the listed subsystems, in the listed order.
    pub fn select(&self, which: &[usize]) -> Self {
        Self(which.iter().map(|&k| self.0[k]).collect())
    }

    /// Mixed-radix digits of a flat index, most significant subsystem first.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (k, &d) in self.0.iter().enumerate().rev() {
            out[k] = index % d;
            index /= d;
        }
        out
    }

    /// Inverse of [`digits`](Self::digits).
    pub fn flat(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.0).fold(0, |acc, (&x, &d)| acc * d + x)
    }
}

/// Kronecker product: `(A⊗B)[i·rB + k, j·cB + l] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rb, cb) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * rb, a.cols * cb, |r, c| {
        a[(r / rb, c / cb)] * b[(r % rb, c % cb)]
    })
}

/// Traces out every subsystem not listed in `keep`.
///
/// The result is ordered by `keep` as given, so `keep = [2, 1]` returns the
/// reduced operator on subsystem 2 ⊗ subsystem 1.
pub fn partial_trace(rho: &ComplexMatrix, dims: &SubsystemDims, keep: &[usize]) -> Result<ComplexMatrix> {
    if !rho.is_square() {
        return Err(Error::Dims(format!("partial trace of a {}x{} matrix", rho.rows, rho.cols)));
    }
    if dims.total() != rho.rows {
        return Err(Error::Dims(format!(
            "dims {:?} (total {}) do not tag a {}-dimensional operator",
            dims.as_slice(),
            dims.total(),
            rho.rows
        )));
    }
    if keep.is_empty() {
        return Err(Error::Dims("keep list is empty".into()));
    }
    let mut seen = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() || std::mem::replace(&mut seen[k], true) {
            return Err(Error::Dims(format!("invalid keep list {keep:?} for {} subsystems", dims.len())));
        }
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !seen[*k]).collect();
    let kept_dims = dims.select(keep);
    let traced_dims = dims.select(&traced);
    let d_keep = kept_dims.total();
    let d_trace = if traced.is_empty() { 1 } else { traced_dims.total() };

    let mut out = ComplexMatrix::zeros(d_keep, d_keep);
    let mut full_i = vec![0; dims.len()];
    let mut full_j = vec![0; dims.len()];
    for i in 0..d_keep {
        let ki = kept_dims.digits(i);
        for j in 0..d_keep {
            let kj = kept_dims.digits(j);
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..d_trace {
                let tt = if traced.is_empty() { Vec::new() } else { traced_dims.digits(t) };
                for (pos, &k) in keep.iter().enumerate() {
                    full_i[k] = ki[pos];
                    full_j[k] = kj[pos];
                }
                for (pos, &k) in traced.iter().enumerate() {
                    full_i[k] = tt[pos];
                    full_j[k] = tt[pos];
                }
                acc += rho[(dims.flat(&full_i), dims.flat(&full_j))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let z = ComplexMatrix::diag_real(&[1.0, -1.0]);
        assert_eq!(kron(&z, &i2), ComplexMatrix::diag_real(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_matches_definition() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c(i as f64 + 0.5, j as f64 - 0.25));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c((i * j) as f64 - 1.0, (i + 2 * j) as f64 * 0.3));
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..3 {
                    for q in 0..3 {
                        assert_eq!(k[(i * 3 + p, j * 3 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_of_product() {
        let g = ComplexMatrix::diag_real(&[0.0, 1.0]);
        let vac = ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]);
        let rho = kron(&g, &vac);
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        assert_eq!(partial_trace(&rho, &dims, &[0]).unwrap(), g);
        assert_eq!(partial_trace(&rho, &dims, &[1]).unwrap(), vac);
        assert_eq!(partial_trace(&rho, &dims, &[0, 1]).unwrap(), rho);
    }

    #[test]
    fn partial_trace_reorders_kept_subsystems() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c((i + j) as f64, i as f64 - j as f64));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c(1.0 + (i * j) as f64, 0.0));
        let dims = SubsystemDims::new(vec![2, 3, 1]).unwrap();
        let rho = kron(&kron(&a, &b), &ComplexMatrix::identity(1));
        let swapped = partial_trace(&rho, &dims, &[1, 0]).unwrap();
        assert!(swapped.max_abs_diff(&kron(&b, &a)) < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let rho = ComplexMatrix::identity(4);
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        assert!(matches!(partial_trace(&rho, &dims, &[0]), Err(Error::Dims(_))));
        let dims = SubsystemDims::new(vec![2, 2]).unwrap();
        assert!(matches!(partial_trace(&rho, &dims, &[2]), Err(Error::Dims(_))));
        assert!(matches!(partial_trace(&rho, &dims, &[0, 0]), Err(Error::Dims(_))));
        let rect = ComplexMatrix::zeros(4, 2);
        assert!(matches!(partial_trace(&rect, &dims, &[0]), Err(Error::Dims(_))));
        assert!(SubsystemDims::new(vec![2, 0]).is_err());
    }

    #[test]
    fn digits_roundtrip() {
        let dims = SubsystemDims::new(vec![2, 3, 4]).unwrap();
        for idx in 0..dims.total() {
            assert_eq!(dims.flat(&dims.digits(idx)), idx);
        }
        assert_eq!(dims.digits(5), vec![0, 1, 1]);
    }
}
