//! Conjugation of Paulis by `τ_R^(k)` and the recursion it induces:
//!
//! ```text
//! τ_R E(a,b) τ_R† = ξ^φ · E(a₀, b₀ + a₀R) · τ_R̃^(k-1)
//! ```
//!
//! with
//!
//! ```text
//! φ  = (1 − 2^{k-2}) a₀Ra₀ᵀ + 2^{k-1}(a₀b₁ᵀ + b₀a₁ᵀ)
//! R̃  = (1 + 2^{k-2}) D_{a₀R} − (D_{ā₀} R D_{a₀} + D_{a₀} R D_{ā₀} + 2 D_{a₀RD_{a₀}})
//! ```
//!
//! The per-basis-vector exponent is `q(v) = φ + 2 vR̃vᵀ (mod 2^k)`.

use serde::{Deserialize, Serialize};

use super::form::{DiagonalGate, SymForm};
use crate::error::{Error, Result};
use crate::pauli::PauliLabel;
use crate::ring::{elementwise_product, BitVector, IntVector, RingScalar};

fn check_len(form: &SymForm, len: usize) -> Result<()> {
    if form.num_qubits() != len {
        return Err(Error::DimensionMismatch {
            expected: form.num_qubits(),
            found: len,
        });
    }
    Ok(())
}

/// `η(v; R, w) = [(v + w) − (v ∗ w)] R (v ∗ w)ᵀ mod 2^k`.
pub fn eta(v: &BitVector, form: &SymForm, w: &BitVector) -> Result<RingScalar> {
    check_len(form, v.len())?;
    check_len(form, w.len())?;
    let vw = elementwise_product(v, w)?;
    let or: Vec<i64> = v
        .bits()
        .iter()
        .zip(w.bits())
        .zip(vw.bits())
        .map(|((&x, &y), &p)| x as i64 + y as i64 - p as i64)
        .collect();
    let value = form.bilinear(&or, vw.to_int().entries())?;
    Ok(RingScalar::new(value, form.level()))
}

fn require_level_two(form: &SymForm) -> Result<()> {
    if form.level() < 2 {
        return Err(Error::LevelTooLow {
            k: form.level(),
            min: 2,
        });
    }
    Ok(())
}

/// `q^(k-1)(v; R, a, b)`, the exponent of `ξ` multiplying
/// `E(a₀, b₀ + a₀R) e_v` in `τ_R E(a,b) τ_R† e_v`.
pub fn q_function(v: &BitVector, form: &SymForm, a: &IntVector, b: &IntVector) -> Result<RingScalar> {
    require_level_two(form)?;
    check_len(form, v.len())?;
    check_len(form, a.len())?;
    check_len(form, b.len())?;
    let k = form.level();
    let a0 = a.layer(0).to_int();
    let quad = form.bilinear(a0.entries(), a0.entries())?;
    let cross = a0.dot(&b.layer(1).to_int())? + b.layer(0).to_int().dot(&a.layer(1).to_int())?;
    let linear = form.bilinear(v.to_int().entries(), a0.entries())?;
    let eta = eta(v, form, &a.layer(0))?.value() as i64;
    let half = 1i64 << (k - 1);
    let quarter = 1i64 << (k - 2);
    let value = (1 - quarter) * quad + half * cross + (2 + half) * linear - 4 * eta;
    Ok(RingScalar::new(value, k))
}

/// The global phase exponent `φ(R, a, b, k)`, valid for `k ≥ 2`.
pub fn phi(form: &SymForm, a: &IntVector, b: &IntVector) -> Result<RingScalar> {
    require_level_two(form)?;
    check_len(form, a.len())?;
    check_len(form, b.len())?;
    let k = form.level();
    let a0 = a.layer(0).to_int();
    let quad = form.bilinear(a0.entries(), a0.entries())?;
    let cross = a0.dot(&b.layer(1).to_int())? + b.layer(0).to_int().dot(&a.layer(1).to_int())?;
    let value = (1 - (1i64 << (k - 2))) * quad + (1i64 << (k - 1)) * cross;
    Ok(RingScalar::new(value, k))
}

/// The next-level form `R̃(R, a, k)` over ℤ_{2^{k-1}}, valid for `k ≥ 2`.
pub fn r_tilde(form: &SymForm, a: &IntVector) -> Result<SymForm> {
    require_level_two(form)?;
    check_len(form, a.len())?;
    let k = form.level();
    let a0 = a.layer(0);
    let bits = a0.bits();
    let a0r = form.row_product(&a0.to_int())?;
    let quarter = 1i64 << (k - 2);
    Ok(SymForm::from_fn(form.num_qubits(), k - 1, |i, j| {
        let r = form.entry(i, j) as i64;
        let (ai, aj) = (bits[i] as i64, bits[j] as i64);
        if i == j {
            // D_{ā₀}RD_{a₀} and D_{a₀}RD_{ā₀} vanish on the diagonal
            (1 + quarter) * a0r.entries()[i] - 2 * a0r.entries()[i] * ai
        } else {
            -((1 - ai) * r * aj + ai * r * (1 - aj))
        }
    }))
}

/// One step of the conjugation recursion.
///
/// `label` is the integer label `(a₀, b₀ + a₀R) = [a₀, b₀]Γ_R`, so that
/// `τ_R E(a,b) τ_R† = ξ^phi · E(label) · τ_residual` holds exactly with the
/// generalized (integer) `E`. [`ConjugationResult::binary`] folds the sign
/// hidden in the integer label into the phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationResult {
    pub phi: RingScalar,
    pub label: PauliLabel,
    pub residual: SymForm,
}

impl ConjugationResult {
    /// Level of the gate that was conjugated; `ξ = exp(2πi / 2^level)`.
    pub fn level(&self) -> u32 {
        self.phi.level()
    }

    /// `(φ', (a₀, (b₀ + a₀R) mod 2))` with `ξ^φ E(label) = ξ^φ' E(binary)`.
    pub fn binary(&self) -> (RingScalar, PauliLabel) {
        let n = self.label.normalize();
        let k = self.level();
        // normalization contributes ±1 = ξ^{0 or 2^{k-1}}
        let sign = (n.phase.with_den(2).num() / 2) as i64;
        let shift = if k == 0 { 0 } else { sign << (k - 1) };
        (self.phi + RingScalar::new(shift, k), n.label)
    }
}

/// Conjugate `E(a, b)` by `τ_R^(k)`.
///
/// For `k = 1` the gate is the Pauli `E(0, d_R)`, so the label stays
/// `(a₀, b₀)` and the residual is the identity form at level 0.
pub fn conjugate(gate: &DiagonalGate, p: &PauliLabel) -> Result<ConjugationResult> {
    let form = gate.form();
    check_len(form, p.num_qubits())?;
    let k = form.level();
    let m = form.num_qubits();
    match k {
        0 => Ok(ConjugationResult {
            phi: RingScalar::zero(0),
            label: p.clone(),
            residual: SymForm::empty(m),
        }),
        1 => {
            let a0 = p.a0().to_int();
            let flip = a0.dot(&form.diagonal_bits().to_int())?
                + a0.dot(&p.b.layer(1).to_int())?
                + p.b0().to_int().dot(&p.a.layer(1).to_int())?;
            Ok(ConjugationResult {
                phi: RingScalar::new(flip, 1),
                label: PauliLabel::from_bits(&p.a0(), &p.b0())?,
                residual: SymForm::empty(m),
            })
        }
        _ => {
            let a0 = p.a0().to_int();
            let image_b = p.b0().to_int().add(&form.row_product(&a0)?)?;
            Ok(ConjugationResult {
                phi: phi(form, &p.a, &p.b)?,
                label: PauliLabel::new(a0, image_b)?,
                residual: r_tilde(form, &p.a)?,
            })
        }
    }
}

/// Checks `q(v; R, a, b) ≡ φ + 2·vR̃vᵀ (mod 2^k)`.
pub fn q_from_recursion_consistency(
    v: &BitVector,
    form: &SymForm,
    a: &IntVector,
    b: &IntVector,
) -> Result<bool> {
    let q = q_function(v, form, a, b)?;
    let phi = phi(form, a, b)?;
    let tilde = r_tilde(form, a)?.eval(v)? as i64;
    Ok(q == phi + RingScalar::new(2 * tilde, form.level()))
}

/// One level of a [`RecursionTrace`]: the form conjugated at this level and
/// the resulting step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub form: SymForm,
    pub result: ConjugationResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionTrace {
    pub steps: Vec<TraceStep>,
}

impl RecursionTrace {
    /// The level-1 form met by the recursion, read as the Pauli `E(0, d_R)`.
    /// Conjugation at level 2 always leaves the zero form here, so a
    /// non-identity Pauli only shows up for gates that start at level 1.
    pub fn level_one_pauli(&self) -> Option<PauliLabel> {
        let forms = self
            .steps
            .iter()
            .flat_map(|s| [&s.form, &s.result.residual]);
        forms.into_iter().find(|f| f.level() == 1).map(|f| {
            let m = f.num_qubits();
            PauliLabel::new(IntVector::zeros(m), f.diagonal_bits().to_int()).unwrap()
        })
    }
}

/// Conjugates the same Pauli by `τ_R^(k)`, then by the residual
/// `τ_R̃^(k-1)`, and so on down to level 1. Stops early once a residual is
/// the zero form, since every later level is the identity.
pub fn full_recursion_trace(gate: &DiagonalGate, p: &PauliLabel) -> Result<RecursionTrace> {
    let mut steps = Vec::new();
    let mut form = gate.form().clone();
    loop {
        let result = conjugate(&DiagonalGate::new(form.clone()), p)?;
        let next = result.residual.clone();
        steps.push(TraceStep { form, result });
        if next.level() == 0 || next.is_zero() {
            break;
        }
        form = next;
    }
    Ok(RecursionTrace { steps })
}
