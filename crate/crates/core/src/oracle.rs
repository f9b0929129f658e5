//! Dense-matrix ground truth.
//!
//! Every symbolic identity in the crate is checked against explicit
//! `2^m × 2^m` complex matrices built here. The builders deliberately do not
//! reuse the symbolic code paths: the diagonal of `τ_R` is recomputed from
//! the raw entries of `R`, and Paulis are assembled from Kronecker products of
//! `X` and `Z`.

use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::diagonal::SymForm;
use crate::error::{Error, Result};
use crate::pauli::PauliLabel;
use crate::ring::BitVector;

/// Tolerance for membership and structural comparisons.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
/// Tolerance for direct entrywise comparisons.
pub const ENTRY_TOL: f64 = 1e-12;

/// Largest qubit count accepted by the level decision procedure.
pub const LEVEL_GUARD: usize = 2;
/// Largest qubit count for the other dense builders.
pub const DENSE_GUARD: usize = 4;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A dense complex matrix acting on `m` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator(DMatrix<Complex64>);

impl DenseOperator {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "dense operators are square");
        Self(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(entries: &[Complex64]) -> Self {
        let mut m = DMatrix::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        Self(m)
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        Self(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self(self.0.map(|z| z * c))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    pub fn unitarity_defect(&self) -> f64 {
        let prod = &self.0 * self.0.adjoint();
        Self(prod).max_abs_diff(&Self::identity(self.dim()))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.0[(i, j)].norm() <= tol))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 * &rhs.0)
    }
}

impl Mul for DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: DenseOperator) -> DenseOperator {
        DenseOperator(self.0 * rhs.0)
    }
}

pub fn pauli_x() -> DenseOperator {
    DenseOperator::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]])
}

pub fn pauli_z() -> DenseOperator {
    DenseOperator::from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]])
}

pub fn pauli_y() -> DenseOperator {
    DenseOperator::from_rows(&[&[ZERO, -I], &[I, ZERO]])
}

pub fn hadamard() -> DenseOperator {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    DenseOperator::from_rows(&[&[h, h], &[h, -h]])
}

/// Kronecker product of a list of operators, first factor most significant.
pub fn kron_all<'a>(ops: impl IntoIterator<Item = &'a DenseOperator>) -> DenseOperator {
    ops.into_iter()
        .fold(DenseOperator::identity(1), |acc, op| acc.kron(op))
}

fn i_power(e: i64) -> Complex64 {
    match e.rem_euclid(4) {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// `E(a, b) = i^{abᵀ mod 4} ⊗_j X^{a_j} Z^{b_j}` for integer `a, b`.
pub fn dense_pauli(p: &PauliLabel) -> DenseOperator {
    let x = pauli_x();
    let z = pauli_z();
    let id = DenseOperator::identity(2);
    let factors: Vec<DenseOperator> = p
        .a
        .entries()
        .iter()
        .zip(p.b.entries())
        .map(|(&aj, &bj)| {
            let xf = if aj.rem_euclid(2) == 1 { &x } else { &id };
            let zf = if bj.rem_euclid(2) == 1 { &z } else { &id };
            xf * zf
        })
        .collect();
    let dot: i64 = p.a.entries().iter().zip(p.b.entries()).map(|(a, b)| a * b).sum();
    kron_all(&factors).scale(i_power(dot))
}

/// `diag(exp(2πi · vRvᵀ / 2^k))`, evaluated from the raw matrix entries.
pub fn dense_diagonal(form: &SymForm) -> DenseOperator {
    let m = form.num_qubits();
    let k = form.level();
    let entries: Vec<Complex64> = (0..1usize << m)
        .map(|idx| {
            let v = BitVector::from_index(idx, m);
            let bits = v.bits();
            let mut acc: i64 = 0;
            for i in 0..m {
                for j in 0..m {
                    acc += bits[i] as i64 * form.entry(i, j) as i64 * bits[j] as i64;
                }
            }
            Complex64::from_polar(1.0, 2.0 * PI * acc as f64 / (1u64 << k) as f64)
        })
        .collect();
    DenseOperator::from_diagonal(&entries)
}

/// `u · p · u†`.
pub fn conjugate_dense(u: &DenseOperator, p: &DenseOperator) -> Result<DenseOperator> {
    if u.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.num_qubits(),
            found: p.num_qubits(),
        });
    }
    Ok(&(u * p) * &u.adjoint())
}

/// If `u = c · D(a, b)` with `|c| = 1`, returns `(c, label)` with `label`
/// binary and `c` the coefficient relative to the Hermitian `E(a, b)`.
pub fn match_pauli(u: &DenseOperator, tol: f64) -> Option<(Complex64, PauliLabel)> {
    let m = u.num_qubits();
    let n = u.dim() as f64;
    for label in PauliLabel::all_binary(m) {
        let e = dense_pauli(&label);
        let overlap = (&e.adjoint() * u).trace() / n;
        if (overlap.norm() - 1.0).abs() <= tol && u.approx_eq(&e.scale(overlap), tol) {
            return Some((overlap, label));
        }
    }
    None
}

fn in_pauli_group(u: &DenseOperator, tol: f64) -> bool {
    match match_pauli(u, tol) {
        // E(a,b) already carries i^{ab}, so the HW coefficient is c·i^{ab};
        // any power of i is allowed either way.
        Some((c, _)) => [ONE, I, -ONE, -I].iter().any(|&w| (c - w).norm() <= tol),
        None => false,
    }
}

fn in_level(u: &DenseOperator, k: u32, tol: f64) -> bool {
    let m = u.num_qubits();
    match k {
        0 => false,
        1 => in_pauli_group(u, tol),
        2 => (0..m)
            .flat_map(|i| [PauliLabel::x(m, i), PauliLabel::z(m, i)])
            .all(|g| {
                let image = conjugate_dense(u, &dense_pauli(&g)).expect("same dim");
                in_pauli_group(&image, tol)
            }),
        _ => PauliLabel::all_binary(m).skip(1).all(|p| {
            let image = conjugate_dense(u, &dense_pauli(&p)).expect("same dim");
            in_level(&image, k - 1, tol)
        }),
    }
}

/// Smallest `k ≤ max_k` with `u ∈ C^(k)`, or `None` when no such level
/// exists within the bound.
///
/// Level 2 is decided from the generators `X_i, Z_i` alone, which suffices
/// because the Pauli group is closed under products. From level 3 upwards
/// the levels are not groups, so every non-identity Pauli is conjugated.
pub fn hierarchy_level(u: &DenseOperator, max_k: u32) -> Result<Option<u32>> {
    let m = u.num_qubits();
    if m > LEVEL_GUARD {
        return Err(Error::GuardExceeded {
            what: "qubits",
            value: m,
            limit: LEVEL_GUARD,
        });
    }
    let defect = u.unitarity_defect();
    if defect > MEMBERSHIP_TOL {
        return Err(Error::NonUnitary(defect));
    }
    Ok((1..=max_k).find(|&k| in_level(u, k, MEMBERSHIP_TOL)))
}

/// `u = e^{iθ} v` for some `θ`, entrywise to within `tol`.
pub fn equal_up_to_global_phase(u: &DenseOperator, v: &DenseOperator, tol: f64) -> bool {
    if u.dim() != v.dim() {
        return false;
    }
    let overlap = (&v.adjoint() * u).trace();
    if overlap.norm() <= tol {
        return u.max_abs_diff(&DenseOperator::identity(u.dim()).scale(ZERO)) <= tol
            && v.max_abs_diff(&DenseOperator::identity(v.dim()).scale(ZERO)) <= tol;
    }
    let phase = overlap / overlap.norm();
    u.approx_eq(&v.scale(phase), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(a: &[i64], b: &[i64]) -> PauliLabel {
        PauliLabel::from_ints(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn paulis() {
        assert!(dense_pauli(&lab(&[1], &[1])).approx_eq(&pauli_y(), ENTRY_TOL));
        assert!(dense_pauli(&lab(&[0, 0], &[0, 0])).approx_eq(&DenseOperator::identity(4), 0.0));
        let xz = dense_pauli(&lab(&[1, 0], &[0, 1]));
        assert!(xz.approx_eq(&pauli_x().kron(&pauli_z()), ENTRY_TOL));
        assert!(xz.approx_eq(&xz.adjoint(), ENTRY_TOL));
        assert!((&xz * &xz).approx_eq(&DenseOperator::identity(4), ENTRY_TOL));
    }

    #[test]
    fn diagonal_gates() {
        let t = SymForm::from_rows(3, &[vec![1]]).unwrap();
        let expected = DenseOperator::from_diagonal(&[ONE, Complex64::from_polar(1.0, PI / 4.0)]);
        assert!(dense_diagonal(&t).approx_eq(&expected, ENTRY_TOL));

        let zero = SymForm::zero(2, 3);
        assert!(dense_diagonal(&zero).approx_eq(&DenseOperator::identity(4), ENTRY_TOL));

        let cp = SymForm::from_rows(3, &[vec![0, 1], vec![1, 0]]).unwrap();
        let expected = DenseOperator::from_diagonal(&[ONE, ONE, ONE, I]);
        assert!(dense_diagonal(&cp).approx_eq(&expected, ENTRY_TOL));
    }

    #[test]
    fn conjugations() {
        let t = dense_diagonal(&SymForm::from_rows(3, &[vec![1]]).unwrap());
        let txt = conjugate_dense(&t, &pauli_x()).unwrap();
        let expected = pauli_x().add(&pauli_y()).scale(Complex64::new(0.5f64.sqrt(), 0.0));
        assert!(txt.approx_eq(&expected, ENTRY_TOL));

        let y = pauli_y();
        assert!(conjugate_dense(&DenseOperator::identity(2), &y).unwrap().approx_eq(&y, 0.0));

        let cz = dense_diagonal(&SymForm::from_rows(3, &[vec![0, 2], vec![2, 0]]).unwrap());
        let xi = pauli_x().kron(&DenseOperator::identity(2));
        let out = conjugate_dense(&cz, &xi).unwrap();
        assert!(out.approx_eq(&pauli_x().kron(&pauli_z()), ENTRY_TOL));

        assert!(conjugate_dense(&cz, &pauli_x()).is_err());
    }

    #[test]
    fn levels() {
        let t = dense_diagonal(&SymForm::from_rows(3, &[vec![1]]).unwrap());
        assert_eq!(hierarchy_level(&t, 4).unwrap(), Some(3));
        assert_eq!(hierarchy_level(&pauli_z(), 3).unwrap(), Some(1));
        assert_eq!(hierarchy_level(&hadamard(), 3).unwrap(), Some(2));
        // √T sits at level 4
        let sqrt_t = dense_diagonal(&SymForm::from_rows(4, &[vec![1]]).unwrap());
        assert_eq!(hierarchy_level(&sqrt_t, 3).unwrap(), None);
        assert_eq!(hierarchy_level(&sqrt_t, 4).unwrap(), Some(4));

        let not_unitary = pauli_x().scale(Complex64::new(2.0, 0.0));
        assert!(matches!(hierarchy_level(&not_unitary, 2), Err(Error::NonUnitary(_))));
        let three = kron_all(&[pauli_x(), pauli_x(), pauli_x()]);
        assert!(matches!(hierarchy_level(&three, 2), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn global_phase() {
        let t = dense_diagonal(&SymForm::from_rows(3, &[vec![1]]).unwrap());
        let p = dense_diagonal(&SymForm::from_rows(3, &[vec![2]]).unwrap());
        let shifted = t.scale(Complex64::from_polar(1.0, PI / 8.0));
        assert!(equal_up_to_global_phase(&t, &shifted, 1e-12));
        assert!(!equal_up_to_global_phase(&t, &p, 1e-8));
    }
}
