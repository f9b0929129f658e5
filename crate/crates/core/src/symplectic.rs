//! Integer and binary symplectic matrices.
//!
//! Labels are row vectors `[a, b]` of length `2m` acted on from the right,
//! `[a, b] ↦ [a, b]F`, and `Ω = [[0, I], [I, 0]]`. A Clifford `g` with
//! matrix `F` satisfies `g E(a, b) g† = ±E([a, b]F)`; the sign is read off
//! the dense operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagonal::SymForm;
use crate::error::{Error, Result};
use crate::oracle::{conjugate_dense, dense_pauli, hadamard, kron_all, match_pauli, DenseOperator};
use crate::pauli::PauliLabel;
use crate::ring::{BitVector, IntVector};

/// `Γ_R = [[I, R], [0, I]]` over ℤ_{2^k}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GammaMatrix {
    form: SymForm,
}

pub fn gamma_of(form: &SymForm) -> GammaMatrix {
    GammaMatrix { form: form.clone() }
}

impl GammaMatrix {
    pub fn form(&self) -> &SymForm {
        &self.form
    }

    pub fn num_qubits(&self) -> usize {
        self.form.num_qubits()
    }

    pub fn level(&self) -> u32 {
        self.form.level()
    }

    /// The `2m × 2m` integer matrix with canonical entries in the `R` block.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let m = self.num_qubits();
        let mut out = vec![vec![0i64; 2 * m]; 2 * m];
        for i in 0..2 * m {
            out[i][i] = 1;
        }
        for i in 0..m {
            for j in 0..m {
                out[i][m + j] = self.form.entry(i, j) as i64;
            }
        }
        out
    }

    /// `Γ Ω Γᵀ` over the integers.
    pub fn omega_product(&self) -> Vec<Vec<i64>> {
        let g = self.matrix();
        let omega = omega_int(self.num_qubits());
        int_mul(&int_mul(&g, &omega), &transpose(&g))
    }

    /// `Γ Ω Γᵀ ≡ Ω (mod 2)`.
    pub fn is_symplectic_mod2(&self) -> bool {
        let m = self.num_qubits();
        let omega = omega_int(m);
        self.omega_product()
            .iter()
            .zip(&omega)
            .all(|(r, s)| r.iter().zip(s).all(|(x, y)| (x - y).rem_euclid(2) == 0))
    }

    /// `Γ_{R₁} Γ_{R₂} = Γ_{R₁ + R₂}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(gamma_of(&self.form.group_add(&other.form)?))
    }
}

fn omega_int(m: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; 2 * m]; 2 * m];
    for i in 0..m {
        out[i][m + i] = 1;
        out[m + i][i] = 1;
    }
    out
}

fn transpose<T: Copy>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub(crate) fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Image of a label under `Γ_R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaImage {
    /// `(a₀, b₀ + a₀R)` before reduction.
    pub integer: PauliLabel,
    /// The same label reduced mod 2.
    pub binary: PauliLabel,
}

pub fn apply_gamma(label: &PauliLabel, g: &GammaMatrix) -> Result<GammaImage> {
    if label.num_qubits() != g.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: g.num_qubits(),
            found: label.num_qubits(),
        });
    }
    let a0 = label.a0().to_int();
    let b = label.b0().to_int().add(&g.form.row_product(&a0)?)?;
    let integer = PauliLabel::new(a0, b)?;
    let binary = PauliLabel::from_bits(&integer.a0(), &integer.b0())?;
    Ok(GammaImage { integer, binary })
}

/// A bit matrix given as rows.
pub type BitMatrix = Vec<Vec<u8>>;

fn check_bit_matrix(rows: &[Vec<u8>], n: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rows.len(),
        });
    }
    for row in rows {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
        if let Some(&bad) = row.iter().find(|&&x| x > 1) {
            return Err(Error::InvalidParameter(format!("bit entry {bad}")));
        }
    }
    Ok(())
}

fn bit_mul(a: &[Vec<u8>], b: &[Vec<u8>]) -> BitMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(0, |acc, (x, brow)| acc ^ (x & brow[j])))
                .collect()
        })
        .collect()
}

fn bit_identity(n: usize) -> BitMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
        .collect()
}

/// Inverse over GF(2) by Gauss-Jordan elimination.
pub fn gf2_inverse(q: &[Vec<u8>]) -> Result<BitMatrix> {
    let n = q.len();
    check_bit_matrix(q, n)?;
    let mut a: BitMatrix = q.to_vec();
    let mut inv = bit_identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] == 1).ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && a[r][col] == 1 {
                for c in 0..n {
                    a[r][c] ^= a[col][c];
                    inv[r][c] ^= inv[col][c];
                }
            }
        }
    }
    Ok(inv)
}

/// A `2m × 2m` binary matrix with `F Ω Fᵀ = Ω` over ℤ₂.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSymplectic", into = "RawSymplectic")]
pub struct BinarySymplectic {
    f: BitMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawSymplectic {
    #[serde(rename = "F")]
    f: BitMatrix,
}

impl TryFrom<RawSymplectic> for BinarySymplectic {
    type Error = Error;
    fn try_from(raw: RawSymplectic) -> Result<Self> {
        Self::new(raw.f)
    }
}

impl From<BinarySymplectic> for RawSymplectic {
    fn from(s: BinarySymplectic) -> Self {
        RawSymplectic { f: s.f }
    }
}

fn bit_omega(m: usize) -> BitMatrix {
    let mut out = vec![vec![0u8; 2 * m]; 2 * m];
    for i in 0..m {
        out[i][m + i] = 1;
        out[m + i][i] = 1;
    }
    out
}

impl BinarySymplectic {
    pub fn new(f: BitMatrix) -> Result<Self> {
        let n = f.len();
        if n % 2 == 1 {
            return Err(Error::InvalidParameter(format!("odd dimension {n}")));
        }
        check_bit_matrix(&f, n)?;
        let s = Self { f };
        if !s.preserves_omega() {
            return Err(Error::InvalidParameter(
                "matrix does not preserve the symplectic form".into(),
            ));
        }
        Ok(s)
    }

    fn from_blocks(a: &[Vec<u8>], b: &[Vec<u8>], c: &[Vec<u8>], d: &[Vec<u8>]) -> Self {
        let m = a.len();
        let mut f = vec![vec![0u8; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                f[i][j] = a[i][j];
                f[i][m + j] = b[i][j];
                f[m + i][j] = c[i][j];
                f[m + i][m + j] = d[i][j];
            }
        }
        Self { f }
    }

    pub fn identity(m: usize) -> Self {
        Self { f: bit_identity(2 * m) }
    }

    pub fn omega(m: usize) -> Self {
        Self { f: bit_omega(m) }
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.f
    }

    pub fn num_qubits(&self) -> usize {
        self.f.len() / 2
    }

    pub fn preserves_omega(&self) -> bool {
        let m = self.num_qubits();
        bit_mul(&bit_mul(&self.f, &bit_omega(m)), &transpose(&self.f)) == bit_omega(m)
    }

    /// `self` followed by `other`: `[a,b] ↦ [a,b]·F_self·F_other`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            f: bit_mul(&self.f, &other.f),
        }
    }

    /// The binary label `[a₀, b₀]F`.
    pub fn map_label(&self, p: &PauliLabel) -> Result<PauliLabel> {
        let m = self.num_qubits();
        if p.num_qubits() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: p.num_qubits(),
            });
        }
        let row: Vec<Vec<u8>> = vec![p.a0().bits().iter().chain(p.b0().bits()).copied().collect()];
        let out = &bit_mul(&row, &self.f)[0];
        PauliLabel::from_bits(
            &BitVector::new(out[..m].to_vec())?,
            &BitVector::new(out[m..].to_vec())?,
        )
    }
}

/// Parameters of the elementary Clifford generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gen", content = "params")]
pub enum CliffordGenerator {
    /// `H^{⊗m}`, matrix `Ω`.
    #[serde(rename = "H")]
    Hadamard,
    /// `|v⟩ ↦ |vQ⟩`, matrix `[[Q, 0], [0, Q^{-T}]]`.
    #[serde(rename = "L_Q")]
    Linear(BitMatrix),
    /// `diag(i^{vRvᵀ mod 4})`, matrix `[[I, R], [0, I]]`.
    #[serde(rename = "T_R")]
    Phase(BitMatrix),
    /// `I_{2^t} ⊗ H^{⊗(m−t)}`.
    #[serde(rename = "partialH")]
    PartialHadamard(usize),
}

/// A Clifford with its binary symplectic matrix and dense operator.
#[derive(Clone, Debug)]
pub struct CliffordLayer {
    pub generator: CliffordGenerator,
    pub symplectic: BinarySymplectic,
    pub dense: DenseOperator,
}

impl CliffordGenerator {
    pub fn build(&self, m: usize) -> Result<CliffordLayer> {
        let (symplectic, dense) = match self {
            Self::Hadamard => (
                BinarySymplectic::omega(m),
                kron_all(&vec![hadamard(); m]),
            ),
            Self::Linear(q) => {
                check_bit_matrix(q, m)?;
                let q_inv_t = transpose(&gf2_inverse(q)?);
                let zero = vec![vec![0u8; m]; m];
                let f = BinarySymplectic::from_blocks(q, &zero, &zero, &q_inv_t);
                let dim = 1usize << m;
                let mut mat = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
                for v in BitVector::all(m) {
                    let row = vec![v.bits().to_vec()];
                    let w = BitVector::new(bit_mul(&row, q).remove(0))?;
                    mat[w.index()][v.index()] = Complex64::new(1.0, 0.0);
                }
                let rows: Vec<&[Complex64]> = mat.iter().map(Vec::as_slice).collect();
                (f, DenseOperator::from_rows(&rows))
            }
            Self::Phase(r) => {
                check_bit_matrix(r, m)?;
                for i in 0..m {
                    for j in 0..i {
                        if r[i][j] != r[j][i] {
                            return Err(Error::NotSymmetric { row: i, col: j });
                        }
                    }
                }
                let id = bit_identity(m);
                let zero = vec![vec![0u8; m]; m];
                let f = BinarySymplectic::from_blocks(&id, r, &zero, &id);
                let entries: Vec<Complex64> = BitVector::all(m)
                    .map(|v| {
                        let b = v.bits();
                        let e: i64 = (0..m)
                            .flat_map(|i| (0..m).map(move |j| (i, j)))
                            .map(|(i, j)| (b[i] * r[i][j] * b[j]) as i64)
                            .sum();
                        Complex64::i().powi(e.rem_euclid(4) as i32)
                    })
                    .collect();
                (f, DenseOperator::from_diagonal(&entries))
            }
            Self::PartialHadamard(t) => {
                if *t > m {
                    return Err(Error::InvalidParameter(format!(
                        "partial Hadamard offset {t} exceeds {m} qubits"
                    )));
                }
                let upper: BitMatrix = (0..m)
                    .map(|i| (0..m).map(|j| u8::from(i == j && i < *t)).collect())
                    .collect();
                let lower: BitMatrix = (0..m)
                    .map(|i| (0..m).map(|j| u8::from(i == j && i >= *t)).collect())
                    .collect();
                let f = BinarySymplectic::from_blocks(&upper, &lower, &lower, &upper);
                let dense = DenseOperator::identity(1usize << t)
                    .kron(&kron_all(&vec![hadamard(); m - t]));
                (f, dense)
            }
        };
        Ok(CliffordLayer {
            generator: self.clone(),
            symplectic,
            dense,
        })
    }
}

/// The four generator families on `m` qubits for the given parameters.
pub fn table1_generators(m: usize, q: &[Vec<u8>], r: &[Vec<u8>], t: usize) -> Result<Vec<CliffordLayer>> {
    [
        CliffordGenerator::Hadamard,
        CliffordGenerator::Linear(q.to_vec()),
        CliffordGenerator::Phase(r.to_vec()),
        CliffordGenerator::PartialHadamard(t),
    ]
    .iter()
    .map(|g| g.build(m))
    .collect()
}

impl CliffordLayer {
    pub fn num_qubits(&self) -> usize {
        self.symplectic.num_qubits()
    }

    /// `(s, [a,b]F)` with `g E(a,b) g† = s · E([a,b]F)`, `s = ±1`, for a
    /// binary label. The sign comes from the dense operator.
    pub fn image(&self, p: &PauliLabel) -> Result<(i8, PauliLabel)> {
        let binary = PauliLabel::from_bits(&p.a0(), &p.b0())?;
        let label = self.symplectic.map_label(&binary)?;
        let conj = conjugate_dense(&self.dense, &dense_pauli(&binary))?;
        let (c, found) = match_pauli(&conj, crate::oracle::MEMBERSHIP_TOL).ok_or_else(|| {
            Error::InvalidParameter("Clifford image is not a Pauli operator".into())
        })?;
        if found != label {
            return Err(Error::InvalidParameter(format!(
                "symplectic image {label} disagrees with dense image {found}"
            )));
        }
        Ok((if c.re > 0.0 { 1 } else { -1 }, label))
    }
}

/// Convenience wrapper for a label given as integer vectors.
pub fn label_from_bits(a: &[u8], b: &[u8]) -> Result<PauliLabel> {
    PauliLabel::new(
        IntVector::new(a.iter().map(|&x| x as i64).collect()),
        IntVector::new(b.iter().map(|&x| x as i64).collect()),
    )
}
