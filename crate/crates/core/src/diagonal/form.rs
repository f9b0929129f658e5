use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{check_level, reduce, BitVector, IntVector, RingScalar};

/// A symmetric `m × m` matrix `R` over ℤ_{2^k} describing the diagonal gate
/// `τ_R^(k) = Σ_v ξ^{vRvᵀ} |v⟩⟨v|` with `ξ = exp(2πi / 2^k)`.
///
/// Stored in canonical mixed-modulus form: diagonal entries mod `2^k`,
/// off-diagonal entries mod `2^{k-1}`. Off-diagonal entries enter `vRvᵀ`
/// twice, so this is exactly the information the gate depends on. Level
/// `k = 0` is the identity form, all of whose entries are zero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct SymForm {
    m: usize,
    k: u32,
    entries: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    m: usize,
    k: u32,
    #[serde(rename = "R")]
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawForm> for SymForm {
    type Error = Error;
    fn try_from(raw: RawForm) -> Result<Self> {
        if raw.rows.len() != raw.m {
            return Err(Error::DimensionMismatch {
                expected: raw.m,
                found: raw.rows.len(),
            });
        }
        SymForm::from_rows(raw.k, &raw.rows)
    }
}

impl From<SymForm> for RawForm {
    fn from(f: SymForm) -> Self {
        RawForm {
            m: f.m,
            k: f.k,
            rows: f.rows(),
        }
    }
}

fn off_diagonal_level(k: u32) -> u32 {
    k.saturating_sub(1)
}

impl SymForm {
    /// Builds a form from integer rows, normalizing negative values and
    /// reducing into canonical form. Rows must be exactly symmetric as given.
    pub fn from_rows(k: u32, rows: &[Vec<i64>]) -> Result<Self> {
        check_level(k)?;
        let m = rows.len();
        for row in rows {
            if row.len() != m {
                return Err(Error::NotSquare {
                    rows: m,
                    cols: row.len(),
                });
            }
        }
        for i in 0..m {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let mut entries = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                entries[i * m + j] = reduce(rows[i][j], if i == j { k } else { off_diagonal_level(k) });
            }
        }
        Ok(Self { m, k, entries })
    }

    /// Builds from an entry function over the upper triangle `i ≤ j`.
    pub(crate) fn from_fn(m: usize, k: u32, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut entries = vec![0; m * m];
        for i in 0..m {
            for j in i..m {
                let level = if i == j { k } else { off_diagonal_level(k) };
                let x = reduce(f(i, j), level);
                entries[i * m + j] = x;
                entries[j * m + i] = x;
            }
        }
        Self { m, k, entries }
    }

    pub fn zero(m: usize, k: u32) -> Self {
        Self {
            m,
            k,
            entries: vec![0; m * m],
        }
    }

    /// The level-0 form, `τ^(0) = I`.
    pub fn empty(m: usize) -> Self {
        Self::zero(m, 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.m + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self.entry(i, j) as i64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// The diagonal `d_R` reduced mod 2; `τ_R^(1) = E(0, d_R)`.
    pub fn diagonal_bits(&self) -> BitVector {
        BitVector::new((0..self.m).map(|i| (self.entry(i, i) & 1) as u8).collect())
            .expect("bits")
    }

    fn check_vec(&self, len: usize) -> Result<()> {
        if len != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: len,
            });
        }
        Ok(())
    }

    /// `x R yᵀ` over the integers (no reduction).
    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_vec(x.len())?;
        self.check_vec(y.len())?;
        let mut acc = 0i64;
        for i in 0..self.m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.m {
                acc += x[i] * self.entry(i, j) as i64 * y[j];
            }
        }
        Ok(acc)
    }

    /// `vRvᵀ mod 2^k`.
    pub fn eval(&self, v: &BitVector) -> Result<u64> {
        let x = v.to_int();
        Ok(reduce(self.bilinear(x.entries(), x.entries())?, self.k))
    }

    /// The integer row vector `x R`.
    pub fn row_product(&self, x: &IntVector) -> Result<IntVector> {
        self.check_vec(x.len())?;
        Ok(IntVector::new(
            (0..self.m)
                .map(|j| {
                    (0..self.m)
                        .map(|i| x.entries()[i] * self.entry(i, j) as i64)
                        .sum()
                })
                .collect(),
        ))
    }

    /// The same gate written at a higher level: `R ↦ 2^{to-k} R`.
    pub fn embed(&self, to: u32) -> Result<Self> {
        check_level(to)?;
        if to < self.k {
            return Err(Error::LevelOrder {
                outer: to,
                inner: self.k,
            });
        }
        let shift = to - self.k;
        Ok(Self::from_fn(self.m, to, |i, j| (self.entry(i, j) as i64) << shift))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        if self.k != other.k {
            return Err(Error::LevelMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(())
    }

    /// The group law: `τ_{R₁} τ_{R₂} = τ_{R₁+R₂}` with mixed-modulus sums.
    pub fn group_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_fn(self.m, self.k, |i, j| {
            (self.entry(i, j) + other.entry(i, j)) as i64
        }))
    }

    /// The inverse `τ_R† = τ_{-R}`.
    pub fn negate(&self) -> Self {
        Self::from_fn(self.m, self.k, |i, j| -(self.entry(i, j) as i64))
    }

    /// Product of two forms at possibly different levels, embedding the
    /// lower one first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let k = self.k.max(other.k);
        self.embed(k)?.group_add(&other.embed(k)?)
    }

    /// Block-diagonal form of `τ_self ⊗ τ_other`; requires
    /// `other.level() ≤ self.level()`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if other.k > self.k {
            return Err(Error::LevelOrder {
                outer: self.k,
                inner: other.k,
            });
        }
        let lifted = other.embed(self.k)?;
        let (m, n) = (self.m, other.m);
        Ok(Self::from_fn(m + n, self.k, |i, j| {
            if i < m && j < m {
                self.entry(i, j) as i64
            } else if i >= m && j >= m {
                lifted.entry(i - m, j - m) as i64
            } else {
                0
            }
        }))
    }

    /// Exponents `vRvᵀ mod 2^k` in basis-index order.
    pub fn diagonal_entries(&self) -> Vec<u64> {
        BitVector::all(self.m)
            .map(|v| self.eval(&v).expect("length matches"))
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(m: usize, k: u32, rng: &mut R) -> Self {
        Self::from_fn(m, k, |i, j| {
            let level = if i == j { k } else { off_diagonal_level(k) };
            rng.gen_range(0..1i64 << level)
        })
    }

    /// Every canonical form at `(m, k)`, in lexicographic order of the upper
    /// triangle.
    pub fn enumerate(m: usize, k: u32) -> impl Iterator<Item = SymForm> {
        let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let radices: Vec<u64> = slots
            .iter()
            .map(|&(i, j)| 1u64 << if i == j { k } else { off_diagonal_level(k) })
            .collect();
        let total: u64 = radices.iter().product();
        (0..total).map(move |mut code| {
            let mut values = vec![0i64; m * m];
            for (&(i, j), &r) in slots.iter().zip(&radices) {
                values[i * m + j] = (code % r) as i64;
                code /= r;
            }
            Self::from_fn(m, k, |i, j| values[i * m + j])
        })
    }
}

impl fmt::Debug for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymForm(k={}, R={:?})", self.k, self.rows())
    }
}

impl fmt::Display for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} R=[", self.k)?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A diagonal gate `τ_R^(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiagonalGate {
    form: SymForm,
}

impl DiagonalGate {
    pub fn new(form: SymForm) -> Self {
        Self { form }
    }

    pub fn form(&self) -> &SymForm {
        &self.form
    }

    pub fn num_qubits(&self) -> usize {
        self.form.num_qubits()
    }

    pub fn level(&self) -> u32 {
        self.form.level()
    }

    pub fn diagonal_entries(&self) -> Vec<u64> {
        self.form.diagonal_entries()
    }

    /// The phase exponent at basis vector `v`.
    pub fn exponent(&self, v: &BitVector) -> Result<RingScalar> {
        Ok(RingScalar::new(self.form.eval(v)? as i64, self.form.level()))
    }

    pub fn tensor(&self, other: &DiagonalGate) -> Result<DiagonalGate> {
        Ok(DiagonalGate::new(self.form.tensor(&other.form)?))
    }
}

impl From<SymForm> for DiagonalGate {
    fn from(form: SymForm) -> Self {
        Self::new(form)
    }
}

pub fn diagonal_entries(g: &DiagonalGate) -> Vec<u64> {
    g.diagonal_entries()
}

pub fn tensor(g1: &DiagonalGate, g2: &DiagonalGate) -> Result<DiagonalGate> {
    g1.tensor(g2)
}

pub fn group_add(f1: &SymForm, f2: &SymForm) -> Result<SymForm> {
    f1.group_add(f2)
}

/// `log₂` of the number of canonical forms at `(m, k)`:
/// `mk + (k-1)·m(m-1)/2`.
pub fn group_order_log2(m: usize, k: u32) -> u64 {
    let m = m as u64;
    let k = k as u64;
    if k == 0 {
        return 0;
    }
    m * k + (k - 1) * m * (m.saturating_sub(1)) / 2
}

/// `2^{mk} · 2^{(k-1)m(m-1)/2}`, or `None` if it does not fit in a `u128`.
pub fn group_order(m: usize, k: u32) -> Option<u128> {
    let e = group_order_log2(m, k);
    if e >= 128 {
        None
    } else {
        Some(1u128 << e)
    }
}
