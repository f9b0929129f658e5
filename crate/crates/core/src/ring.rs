//! Arithmetic in ℤ_{2^k}, binary vectors and binary expansions of integer
//! vectors.
//!
//! Everything else in the crate is expressed through these three types:
//! [`RingScalar`] for residues, [`BitVector`] for computational basis labels
//! and [`IntVector`] for the integer Pauli labels whose higher binary layers
//! feed the conjugation phase.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported level exponent. Exponent arithmetic is done in `i64`,
/// so products of two residues and a handful of small coefficients stay far
/// from overflow.
pub const MAX_LEVEL: u32 = 16;

/// `2^k` as a signed integer.
#[inline]
pub fn modulus(k: u32) -> i64 {
    1i64 << k
}

/// Reduce `x` into `[0, 2^k)`. For `k = 0` every value reduces to 0.
#[inline]
pub fn reduce(x: i64, k: u32) -> u64 {
    x.rem_euclid(modulus(k)) as u64
}

pub(crate) fn check_level(k: u32) -> Result<()> {
    if k > MAX_LEVEL {
        return Err(Error::LevelTooHigh { k, max: MAX_LEVEL });
    }
    Ok(())
}

/// A residue in ℤ_{2^k}, kept in canonical range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingScalar {
    value: u64,
    k: u32,
}

impl RingScalar {
    /// Normalizes negative and out-of-range values into `[0, 2^k)`.
    pub fn new(value: i64, k: u32) -> Self {
        assert!(k <= MAX_LEVEL, "level {k} exceeds {MAX_LEVEL}");
        Self {
            value: reduce(value, k),
            k,
        }
    }

    pub fn zero(k: u32) -> Self {
        Self::new(0, k)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn level(self) -> u32 {
        self.k
    }

    /// Reinterpret the residue at a higher level via multiplication by
    /// `2^{to - k}`, so that `ξ_k^x = ξ_to^{x·2^{to-k}}`.
    pub fn lift(self, to: u32) -> Self {
        assert!(to >= self.k);
        Self::new((self.value as i64) << (to - self.k), to)
    }

    fn check(self, rhs: Self) {
        assert_eq!(self.k, rhs.k, "ring level mismatch");
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.value, self.k)
    }
}

impl Add for RingScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        Self::new(self.value as i64 + rhs.value as i64, self.k)
    }
}

impl Sub for RingScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        Self::new(self.value as i64 - rhs.value as i64, self.k)
    }
}

impl Mul for RingScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        Self::new((self.value as i64) * (rhs.value as i64), self.k)
    }
}

impl Neg for RingScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-(self.value as i64), self.k)
    }
}

/// A binary row vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct BitVector(Vec<u8>);

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidParameter(format!("bit value {bad}")));
        }
        Ok(Self(bits))
    }

    pub fn zeros(m: usize) -> Self {
        Self(vec![0; m])
    }

    /// Unit vector `e_i` of length `m`.
    pub fn unit(m: usize, i: usize) -> Self {
        let mut bits = vec![0; m];
        bits[i] = 1;
        Self(bits)
    }

    /// The basis label whose index is `index`, with the first entry most
    /// significant.
    pub fn from_index(index: usize, m: usize) -> Self {
        Self((0..m).map(|i| ((index >> (m - 1 - i)) & 1) as u8).collect())
    }

    /// `Σ v_i 2^{m-i}` (1-based `i`), i.e. the first entry is the most
    /// significant bit.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// All `2^m` vectors in index order.
    pub fn all(m: usize) -> impl Iterator<Item = BitVector> {
        (0..1usize << m).map(move |i| BitVector::from_index(i, m))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Bitwise complement `1 - w`.
    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|&b| 1 - b).collect())
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }

    pub fn to_int(&self) -> IntVector {
        IntVector(self.0.iter().map(|&b| b as i64).collect())
    }
}

impl TryFrom<Vec<u8>> for BitVector {
    type Error = Error;
    fn try_from(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits)
    }
}

impl From<BitVector> for Vec<u8> {
    fn from(v: BitVector) -> Self {
        v.0
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// An integer row vector `x = x₀ + 2x₁ + 4x₂ + …`.
///
/// Entries are arbitrary integers; binary layers are taken of the two's
/// complement residue, so negative entries expand like their residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zeros(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// The `i`-th binary layer `x_i`.
    pub fn layer(&self, i: u32) -> BitVector {
        BitVector(self.0.iter().map(|&x| ((x >> i) & 1) as u8).collect())
    }

    /// Integer dot product.
    pub fn dot(&self, other: &Self) -> Result<i64> {
        same_len(self.len(), other.len())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn reduce_mod2(&self) -> BitVector {
        self.layer(0)
    }
}

impl From<&BitVector> for IntVector {
    fn from(v: &BitVector) -> Self {
        v.to_int()
    }
}

fn same_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

/// Binary layers `x₀, x₁, …, x_{layers-1}` of `x`.
pub fn binary_expansion(x: &IntVector, layers: u32) -> Result<Vec<BitVector>> {
    if layers == 0 {
        return Err(Error::InvalidParameter("layers must be at least 1".into()));
    }
    Ok((0..layers).map(|i| x.layer(i)).collect())
}

/// `v ⊕ w` computed through the ring identity `v + w − 2(v ∗ w)` in ℤ_{2^k}.
pub fn xor_as_ring(v: &BitVector, w: &BitVector, k: u32) -> Result<IntVector> {
    let prod = elementwise_product(v, w)?;
    Ok(IntVector(
        v.0.iter()
            .zip(&w.0)
            .zip(&prod.0)
            .map(|((&a, &b), &p)| reduce(a as i64 + b as i64 - 2 * p as i64, k) as i64)
            .collect(),
    ))
}

/// `(v ∗ w)_i = v_i w_i`.
pub fn elementwise_product(v: &BitVector, w: &BitVector) -> Result<BitVector> {
    same_len(v.len(), w.len())?;
    Ok(BitVector(v.0.iter().zip(&w.0).map(|(a, b)| a & b).collect()))
}
