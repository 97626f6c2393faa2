//! Dense square complex matrices and the small-dimension algebra the
//! simulator runs on: Pauli operators, Kronecker products, partial traces,
//! and Gauss-Jordan inversion. Everything here is exact desk-scale linear
//! algebra over `Complex64`; no sparsity, no large dimensions.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shorthand constructor for a complex scalar.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense `dim x dim` complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Build a matrix entry by entry from a closure over (row, col).
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Build a square matrix from row slices. Panics if the rows are ragged.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "rows must form a square matrix");
            entries.extend_from_slice(row);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.dim + c] = v;
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Multiply every entry by a scalar.
    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * k).collect(),
        }
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u * &(self * &u.adjoint())
    }

    /// Largest entrywise absolute difference between two matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality within an explicit tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max entry of `|M - M†|`; zero for an exactly Hermitian matrix.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    /// `(M + M†)/2`, the exactly Hermitian part.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |r, c| {
            (self.get(r, c) + self.get(c, r).conj()) * 0.5
        })
    }

    /// Kronecker product with system-major ordering: the row index of the
    /// result is `a * other.dim + b` for row `a` of `self` and row `b` of
    /// `other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        Self::from_fn(da * db, |r, c| {
            self.get(r / db, c / db) * other.get(r % db, c % db)
        })
    }

    /// Trace out the second (environment) qubit of a 4x4 matrix:
    /// `(Tr_E M)_{rs} = sum_e M_{(r,e),(s,e)}`.
    pub fn partial_trace_env(&self) -> Result<Self> {
        if self.dim != 4 {
            return Err(Error::Dimension {
                expected: 4,
                got: self.dim,
            });
        }
        Ok(Self::from_fn(2, |r, s| {
            self.get(2 * r, 2 * s) + self.get(2 * r + 1, 2 * s + 1)
        }))
    }

    /// Trace out the first (system) qubit of a 4x4 matrix.
    pub fn partial_trace_system(&self) -> Result<Self> {
        if self.dim != 4 {
            return Err(Error::Dimension {
                expected: 4,
                got: self.dim,
            });
        }
        Ok(Self::from_fn(2, |e, f| {
            self.get(e, f) + self.get(2 + e, 2 + f)
        }))
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn invert(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| {
                    a.get(i, col)
                        .norm()
                        .partial_cmp(&a.get(j, col).norm())
                        .unwrap()
                })
                .unwrap();
            if a.get(pivot_row, col).norm() < 1e-300 {
                return Err(Error::Singular);
            }
            if pivot_row != col {
                for k in 0..n {
                    let (x, y) = (a.get(col, k), a.get(pivot_row, k));
                    a.set(col, k, y);
                    a.set(pivot_row, k, x);
                    let (x, y) = (inv.get(col, k), inv.get(pivot_row, k));
                    inv.set(col, k, y);
                    inv.set(pivot_row, k, x);
                }
            }
            let pivot = a.get(col, col);
            for k in 0..n {
                a.set(col, k, a.get(col, k) / pivot);
                inv.set(col, k, inv.get(col, k) / pivot);
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let factor = a.get(row, col);
                if factor.norm() == 0.0 {
                    continue;
                }
                for k in 0..n {
                    let av = a.get(row, k) - factor * a.get(col, k);
                    a.set(row, k, av);
                    let iv = inv.get(row, k) - factor * inv.get(col, k);
                    inv.set(row, k, iv);
                }
            }
        }
        Ok(inv)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| self.get(r, k) * rhs.get(k, c)).sum()
        })
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(c64(-1.0, 0.0))
    }
}

/// Pauli matrix by index: `0` is the identity, `1..=3` are sigma_x,
/// sigma_y, sigma_z in the standard convention.
///
/// Panics if `j > 3`.
pub fn pauli(j: usize) -> ComplexMatrix {
    let one = Complex64::ONE;
    let i = Complex64::I;
    let z = Complex64::ZERO;
    match j {
        0 => ComplexMatrix::from_rows(&[&[one, z], &[z, one]]),
        1 => ComplexMatrix::from_rows(&[&[z, one], &[one, z]]),
        2 => ComplexMatrix::from_rows(&[&[z, -i], &[i, z]]),
        3 => ComplexMatrix::from_rows(&[&[one, z], &[z, -one]]),
        _ => panic!("pauli index must be 0..=3, got {j}"),
    }
}

/// Real linear combination `k0*I + k.σ` of Pauli matrices.
pub fn pauli_combination(k0: f64, k: [f64; 3]) -> ComplexMatrix {
    let mut m = pauli(0).scale(c64(k0, 0.0));
    for (j, kj) in k.iter().enumerate() {
        if *kj != 0.0 {
            m = &m + &pauli(j + 1).scale(c64(*kj, 0.0));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_identities() {
        assert!(pauli(0).approx_eq(&ComplexMatrix::identity(2), 0.0));
        // σ2 σ3 = i σ1
        let prod = &pauli(2) * &pauli(3);
        assert!(prod.approx_eq(&pauli(1).scale(c64(0.0, 1.0)), 1e-15));
        // tr(σj σk) = 2 δjk
        for j in 0..4 {
            for k in 0..4 {
                let t = (&pauli(j) * &pauli(k)).trace();
                let expect = if j == k { 2.0 } else { 0.0 };
                assert!((t - c64(expect, 0.0)).norm() < 1e-15, "j={j} k={k}");
            }
        }
    }

    #[test]
    #[should_panic(expected = "pauli index")]
    fn pauli_index_out_of_range() {
        pauli(4);
    }

    #[test]
    fn tensor_products() {
        let i4 = pauli(0).tensor(&pauli(0));
        assert!(i4.approx_eq(&ComplexMatrix::identity(4), 0.0));

        let zz = pauli(3).tensor(&pauli(3));
        let mut diag = ComplexMatrix::zeros(4);
        for (i, v) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            diag[(i, i)] = c64(v, 0.0);
        }
        assert!(zz.approx_eq(&diag, 0.0));
    }

    #[test]
    fn partial_trace_of_product() {
        // Tr_E(P ⊗ ρE) = P tr(ρE)
        let p = pauli_combination(0.5, [0.15, -0.3, 0.2]);
        let env = pauli_combination(0.5, [0.0, 0.1, -0.4]);
        let traced = p.tensor(&env).partial_trace_env().unwrap();
        assert!(traced.approx_eq(&p, 1e-15));

        // σ2⊗σ3 is traceless over either factor
        let m = &pauli(0).tensor(&pauli(0)).scale(c64(0.25, 0.0))
            + &pauli(2).tensor(&pauli(3)).scale(c64(0.125, 0.0));
        let sys = m.partial_trace_env().unwrap();
        assert!(sys.approx_eq(&pauli(0).scale(c64(0.5, 0.0)), 1e-15));
    }

    #[test]
    fn partial_trace_rejects_wrong_dimension() {
        assert!(matches!(
            pauli(1).partial_trace_env(),
            Err(Error::Dimension {
                expected: 4,
                got: 2
            })
        ));
    }

    #[test]
    fn inversion_round_trip() {
        let m = ComplexMatrix::from_rows(&[
            &[c64(2.0, 0.0), c64(0.3, 0.1), c64(0.0, -0.2)],
            &[c64(0.3, -0.1), c64(1.5, 0.0), c64(0.4, 0.0)],
            &[c64(0.0, 0.2), c64(0.4, 0.0), c64(1.1, 0.0)],
        ]);
        let inv = m.invert().unwrap();
        assert!((&m * &inv).approx_eq(&ComplexMatrix::identity(3), 1e-12));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = c64(1.0, 0.0);
        assert!(matches!(m.invert(), Err(Error::Singular)));
    }
}
