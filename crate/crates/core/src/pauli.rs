//! Hermitian Pauli labels `E(a, b) = i^{abᵀ mod 4} D(a, b)` over integer
//! vectors, their product rule and the symplectic inner product.
//!
//! Labels keep the full integer vectors. Only the binary layers `a₀, b₀`
//! select the Pauli matrix, but the next layer enters the sign through
//! `i^{abᵀ}`, and the conjugation formulas read it. Reduction to binary form
//! is always an explicit call to [`PauliLabel::normalize`].

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{reduce, BitVector, IntVector};

/// The root of unity `exp(2πi · num / 2^log2_den)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    #[serde(rename = "phase_num")]
    num: u64,
    #[serde(rename = "phase_log2_den")]
    log2_den: u32,
}

impl RootOfUnity {
    pub fn new(num: i64, log2_den: u32) -> Self {
        Self {
            num: reduce(num, log2_den),
            log2_den,
        }
    }

    pub fn one() -> Self {
        Self::new(0, 0)
    }

    /// `i^e`.
    pub fn i_pow(e: i64) -> Self {
        Self::new(e, 2)
    }

    /// `(-1)^e`.
    pub fn sign(e: i64) -> Self {
        Self::new(e, 1)
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn log2_den(self) -> u32 {
        self.log2_den
    }

    /// Same phase expressed over denominator `2^d`, `d ≥ log2_den`.
    pub fn with_den(self, d: u32) -> Self {
        assert!(d >= self.log2_den);
        Self::new((self.num as i64) << (d - self.log2_den), d)
    }

    /// Smallest denominator expressing this phase.
    pub fn reduced(self) -> Self {
        let mut r = self;
        while r.log2_den > 0 && r.num % 2 == 0 {
            r = Self::new((r.num / 2) as i64, r.log2_den - 1);
        }
        r
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    pub fn to_complex(self) -> Complex64 {
        let theta = 2.0 * PI * self.num as f64 / (1u64 << self.log2_den) as f64;
        Complex64::from_polar(1.0, theta)
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.log2_den.max(rhs.log2_den);
        let (x, y) = (self.with_den(d), rhs.with_den(d));
        Self::new(x.num as i64 + y.num as i64, d)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        match (r.num, r.log2_den) {
            (0, _) => write!(f, "1"),
            (1, 1) => write!(f, "-1"),
            (1, 2) => write!(f, "i"),
            (3, 2) => write!(f, "-i"),
            (n, d) => write!(f, "exp(2πi·{n}/{})", 1u64 << d),
        }
    }
}

/// The label `(a, b)` of `E(a, b)` on `m` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLabel")]
pub struct PauliLabel {
    pub a: IntVector,
    pub b: IntVector,
}

#[derive(Deserialize)]
struct RawLabel {
    a: IntVector,
    b: IntVector,
}

impl TryFrom<RawLabel> for PauliLabel {
    type Error = Error;
    fn try_from(raw: RawLabel) -> Result<Self> {
        Self::new(raw.a, raw.b)
    }
}

impl PauliLabel {
    pub fn new(a: IntVector, b: IntVector) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn from_ints(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        Self::new(IntVector::new(a), IntVector::new(b))
    }

    pub fn from_bits(a: &BitVector, b: &BitVector) -> Result<Self> {
        Self::new(a.to_int(), b.to_int())
    }

    pub fn identity(m: usize) -> Self {
        Self {
            a: IntVector::zeros(m),
            b: IntVector::zeros(m),
        }
    }

    /// `E(e_i, 0)`.
    pub fn x(m: usize, i: usize) -> Self {
        Self {
            a: BitVector::unit(m, i).to_int(),
            b: IntVector::zeros(m),
        }
    }

    /// `E(0, e_i)`.
    pub fn z(m: usize, i: usize) -> Self {
        Self {
            a: IntVector::zeros(m),
            b: BitVector::unit(m, i).to_int(),
        }
    }

    /// All `4^m` binary labels, `a` varying slowest.
    pub fn all_binary(m: usize) -> impl Iterator<Item = PauliLabel> {
        BitVector::all(m).flat_map(move |a| {
            BitVector::all(m).map(move |b| PauliLabel::from_bits(&a, &b).unwrap())
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.a.len()
    }

    pub fn a0(&self) -> BitVector {
        self.a.layer(0)
    }

    pub fn b0(&self) -> BitVector {
        self.b.layer(0)
    }

    pub fn is_binary(&self) -> bool {
        self.a.entries().iter().chain(self.b.entries()).all(|&x| x == 0 || x == 1)
    }

    /// `a₀ = 0`, i.e. the label is diagonal in the computational basis.
    pub fn is_z_type(&self) -> bool {
        self.a0().is_zero()
    }

    /// Exponent of `i` in the definition of `E(a, b)`.
    pub fn i_exponent(&self) -> u64 {
        reduce(self.a.dot(&self.b).expect("label lengths agree"), 2)
    }

    /// Rewrite `E(a, b)` as `±E(a₀, b₀)`.
    pub fn normalize(&self) -> PhasedPauli {
        let a0 = self.a0();
        let b0 = self.b0();
        let binary = PauliLabel::from_bits(&a0, &b0).expect("same length");
        let full = self.a.dot(&self.b).expect("label lengths agree");
        let base = a0.to_int().dot(&b0.to_int()).unwrap();
        PhasedPauli {
            phase: RootOfUnity::i_pow(full - base),
            label: binary,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// `E(a,b) E(c,d) = i^{bcᵀ − adᵀ} E(a+c, b+d)`.
    pub fn multiply(&self, other: &Self) -> Result<PhasedPauli> {
        self.check_same(other)?;
        let exp = self.b.dot(&other.a)? - self.a.dot(&other.b)?;
        Ok(PhasedPauli {
            phase: RootOfUnity::i_pow(exp),
            label: PauliLabel {
                a: self.a.add(&other.a)?,
                b: self.b.add(&other.b)?,
            },
        })
    }

    /// `a₀d₀ᵀ + b₀c₀ᵀ mod 2`.
    pub fn symplectic_inner(&self, other: &Self) -> Result<u8> {
        self.check_same(other)?;
        let s = self.a0().to_int().dot(&other.b0().to_int())?
            + self.b0().to_int().dot(&other.a0().to_int())?;
        Ok((s & 1) as u8)
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        Ok(self.symplectic_inner(other)? == 0)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({:?}, {:?})", self.a.entries(), self.b.entries())
    }
}

/// `phase · E(label)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasedPauli {
    #[serde(flatten)]
    pub phase: RootOfUnity,
    #[serde(flatten)]
    pub label: PauliLabel,
}

impl PhasedPauli {
    pub fn new(phase: RootOfUnity, label: PauliLabel) -> Self {
        Self { phase, label }
    }

    /// Product of two phased Paulis; the phase denominator is the larger of
    /// the two and at least 4.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let prod = self.label.multiply(&other.label)?;
        let d = self.phase.log2_den().max(other.phase.log2_den()).max(2);
        let phase = (self.phase * other.phase * prod.phase).with_den(d);
        Ok(Self {
            phase,
            label: prod.label,
        })
    }
}

/// Free-function form of [`PauliLabel::multiply`].
pub fn multiply(p: &PauliLabel, q: &PauliLabel) -> Result<PhasedPauli> {
    p.multiply(q)
}

pub fn symplectic_inner(p: &PauliLabel, q: &PauliLabel) -> Result<u8> {
    p.symplectic_inner(q)
}

pub fn commutes(p: &PauliLabel, q: &PauliLabel) -> Result<bool> {
    p.commutes(q)
}

pub fn normalize_label(p: &PauliLabel) -> PhasedPauli {
    p.normalize()
}
