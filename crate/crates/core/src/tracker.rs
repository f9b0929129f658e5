//! Stabilizer generators of `U|0…0⟩` tracked through Clifford and diagonal
//! layers.
//!
//! A generator is `sign · ξ^phase · E(label) · τ_residual`. One diagonal
//! layer after any Cliffords keeps every factor symbolic. Diagonal-basis
//! preserving Cliffords (`T_R`, and `L_Q` when the permuted exponents are
//! still quadratic) keep the residual symbolic; Hadamard-type layers turn it
//! into an explicit dense operator.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagonal::{conjugate, synthesize, DiagonalGate, SymForm, Synthesis};
use crate::error::{Error, Result};
use crate::oracle::{conjugate_dense, dense_diagonal, dense_pauli, DenseOperator, DENSE_GUARD};
use crate::pauli::PauliLabel;
use crate::ring::{BitVector, RingScalar};
use crate::symplectic::{gf2_inverse, BitMatrix, CliffordGenerator, CliffordLayer};

/// Diagonal factor to the right of the Pauli part.
#[derive(Clone, Debug)]
pub enum Residual {
    None,
    Form(SymForm),
    /// Unitary that is no longer tracked symbolically.
    Opaque(DenseOperator),
}

impl Residual {
    fn from_form(form: SymForm) -> Self {
        if form.is_zero() {
            Residual::None
        } else {
            Residual::Form(form)
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, Residual::Opaque(_))
    }

    pub fn dense(&self, m: usize) -> DenseOperator {
        match self {
            Residual::None => DenseOperator::identity(1 << m),
            Residual::Form(f) => dense_diagonal(f),
            Residual::Opaque(d) => d.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructuredGenerator {
    pub sign: i8,
    pub phase: RingScalar,
    /// Always binary.
    pub label: PauliLabel,
    pub residual: Residual,
}

impl StructuredGenerator {
    pub fn num_qubits(&self) -> usize {
        self.label.num_qubits()
    }

    pub fn dense(&self) -> DenseOperator {
        let k = self.phase.level();
        let angle = 2.0 * std::f64::consts::PI * self.phase.value() as f64 / (1u64 << k) as f64;
        let c = num_complex::Complex64::from_polar(f64::from(self.sign), angle);
        let p = dense_pauli(&self.label).scale(c);
        &p * &self.residual.dense(self.num_qubits())
    }
}

/// Generators `Z_j = E(0, e_j)` of the stabilizer of `|0…0⟩`.
pub fn initial_stabilizer(m: usize) -> Vec<StructuredGenerator> {
    (0..m)
        .map(|j| StructuredGenerator {
            sign: 1,
            phase: RingScalar::zero(0),
            label: PauliLabel::z(m, j),
            residual: Residual::None,
        })
        .collect()
}

fn check_qubits(gens: &[StructuredGenerator], m: usize) -> Result<()> {
    match gens.iter().find(|g| g.num_qubits() != m) {
        Some(g) => Err(Error::DimensionMismatch {
            expected: m,
            found: g.num_qubits(),
        }),
        None => Ok(()),
    }
}

/// Residual of `g τ_R g†` for `g: |v⟩ ↦ |vQ⟩`: the entry at `w` is the old
/// entry at `wQ⁻¹`, re-synthesized when still quadratic.
fn permute_residual(form: &SymForm, q: &BitMatrix) -> Result<Residual> {
    let m = form.num_qubits();
    let q_inv = gf2_inverse(q)?;
    let exps: Vec<i64> = BitVector::all(m)
        .map(|w| {
            let pre: Vec<u8> = (0..m)
                .map(|j| (0..m).fold(0, |acc, i| acc ^ (w.bits()[i] & q_inv[i][j])))
                .collect();
            form.eval(&BitVector::new(pre).expect("bits")).expect("same m") as i64
        })
        .collect();
    Ok(match synthesize(&exps, form.level())? {
        Synthesis::Found { form: f, .. } => Residual::from_form(f),
        Synthesis::Infeasible { .. } => Residual::Opaque(dense_permuted(&exps, form.level())),
    })
}

fn dense_permuted(exps: &[i64], k: u32) -> DenseOperator {
    let entries: Vec<_> = exps
        .iter()
        .map(|&e| RingScalar::new(e, k))
        .map(|s| {
            num_complex::Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * s.value() as f64 / (1u64 << k) as f64,
            )
        })
        .collect();
    DenseOperator::from_diagonal(&entries)
}

/// Conjugates every generator by a Clifford layer.
pub fn apply_clifford(gens: &[StructuredGenerator], layer: &CliffordLayer) -> Result<Vec<StructuredGenerator>> {
    check_qubits(gens, layer.num_qubits())?;
    gens.iter()
        .map(|g| {
            let (s, label) = layer.image(&g.label)?;
            let residual = match (&g.residual, &layer.generator) {
                (Residual::None, _) => Residual::None,
                (Residual::Form(f), CliffordGenerator::Phase(_)) => Residual::Form(f.clone()),
                (Residual::Form(f), CliffordGenerator::Linear(q)) => permute_residual(f, q)?,
                (Residual::Form(f), _) => {
                    Residual::Opaque(conjugate_dense(&layer.dense, &dense_diagonal(f))?)
                }
                (Residual::Opaque(d), _) => Residual::Opaque(conjugate_dense(&layer.dense, d)?),
            };
            Ok(StructuredGenerator {
                sign: g.sign * s,
                phase: g.phase,
                label,
                residual,
            })
        })
        .collect()
}

fn add_phases(x: RingScalar, y: RingScalar) -> RingScalar {
    let k = x.level().max(y.level());
    x.lift(k) + y.lift(k)
}

/// Conjugates every generator by `τ_R^(k)`.
pub fn apply_diagonal(gens: &[StructuredGenerator], form: &SymForm) -> Result<Vec<StructuredGenerator>> {
    check_qubits(gens, form.num_qubits())?;
    let gate = DiagonalGate::new(form.clone());
    gens.iter()
        .map(|g| {
            if g.label.is_z_type() && !g.residual.is_opaque() {
                return Ok(g.clone());
            }
            let step = conjugate(&gate, &g.label)?;
            let (phi, label) = step.binary();
            let residual = match &g.residual {
                Residual::None => Residual::from_form(step.residual),
                Residual::Form(f) => Residual::from_form(step.residual.compose(f)?),
                Residual::Opaque(d) => {
                    let tau = dense_diagonal(form);
                    let moved = conjugate_dense(&tau, d)?;
                    Residual::Opaque(&dense_diagonal(&step.residual) * &moved)
                }
            };
            Ok(StructuredGenerator {
                sign: g.sign,
                phase: add_phases(g.phase, phi),
                label,
                residual,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub enum Layer {
    Clifford(CliffordGenerator),
    Diagonal(SymForm),
}

/// An ordered list of layers, the first applied first.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawCircuit", into = "RawCircuit")]
pub struct Circuit {
    m: usize,
    k: u32,
    layers: Vec<Layer>,
}

#[derive(Serialize, Deserialize)]
struct RawCircuit {
    m: usize,
    k: u32,
    layers: Vec<RawLayer>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum RawLayer {
    Clifford(CliffordGenerator),
    Diagonal {
        #[serde(rename = "R")]
        rows: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<u32>,
    },
}

impl TryFrom<RawCircuit> for Circuit {
    type Error = Error;
    fn try_from(raw: RawCircuit) -> Result<Self> {
        let layers = raw
            .layers
            .into_iter()
            .map(|l| match l {
                RawLayer::Clifford(g) => Ok(Layer::Clifford(g)),
                RawLayer::Diagonal { rows, k } => {
                    Ok(Layer::Diagonal(SymForm::from_rows(k.unwrap_or(raw.k), &rows)?))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(raw.m, raw.k, layers)
    }
}

impl From<Circuit> for RawCircuit {
    fn from(c: Circuit) -> Self {
        RawCircuit {
            m: c.m,
            k: c.k,
            layers: c
                .layers
                .into_iter()
                .map(|l| match l {
                    Layer::Clifford(g) => RawLayer::Clifford(g),
                    Layer::Diagonal(f) => RawLayer::Diagonal {
                        rows: f.rows(),
                        k: Some(f.level()),
                    },
                })
                .collect(),
        }
    }
}

impl Circuit {
    pub fn new(m: usize, k: u32, layers: Vec<Layer>) -> Result<Self> {
        for layer in &layers {
            match layer {
                Layer::Clifford(g) => {
                    g.build(m)?;
                }
                Layer::Diagonal(f) if f.num_qubits() != m => {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: f.num_qubits(),
                    })
                }
                Layer::Diagonal(_) => {}
            }
        }
        Ok(Self { m, k, layers })
    }

    pub fn num_qubits(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// `C₁ D₁ C₀` with each Clifford a product of `depth` random generators.
    pub fn random_cdc<R: Rng + ?Sized>(m: usize, k: u32, depth: usize, rng: &mut R) -> Self {
        let mut layers: Vec<Layer> = (0..depth).map(|_| Layer::Clifford(random_generator(m, rng))).collect();
        layers.push(Layer::Diagonal(SymForm::random(m, k, rng)));
        layers.extend((0..depth).map(|_| Layer::Clifford(random_generator(m, rng))));
        Self { m, k, layers }
    }

    /// The full unitary, last layer leftmost.
    pub fn dense(&self) -> Result<DenseOperator> {
        let mut u = DenseOperator::identity(1 << self.m);
        for layer in &self.layers {
            let l = match layer {
                Layer::Clifford(g) => g.build(self.m)?.dense,
                Layer::Diagonal(f) => dense_diagonal(f),
            };
            u = &l * &u;
        }
        Ok(u)
    }

    /// Tracked generators after all layers.
    pub fn track(&self) -> Result<Vec<StructuredGenerator>> {
        let mut gens = initial_stabilizer(self.m);
        for layer in &self.layers {
            gens = match layer {
                Layer::Clifford(g) => apply_clifford(&gens, &g.build(self.m)?)?,
                Layer::Diagonal(f) => apply_diagonal(&gens, f)?,
            };
        }
        Ok(gens)
    }
}

/// A random elementary generator on `m` qubits.
pub fn random_generator<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CliffordGenerator {
    match rng.gen_range(0..4) {
        0 => CliffordGenerator::Hadamard,
        1 => loop {
            let q: BitMatrix = (0..m).map(|_| (0..m).map(|_| rng.gen_range(0..2)).collect()).collect();
            if gf2_inverse(&q).is_ok() {
                break CliffordGenerator::Linear(q);
            }
        },
        2 => {
            let mut r = vec![vec![0u8; m]; m];
            for i in 0..m {
                for j in i..m {
                    let bit = rng.gen_range(0..2);
                    r[i][j] = bit;
                    r[j][i] = bit;
                }
            }
            CliffordGenerator::Phase(r)
        }
        _ => CliffordGenerator::PartialHadamard(rng.gen_range(0..=m)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub index: usize,
    pub label: PauliLabel,
    pub phase: RingScalar,
    pub sign: i8,
    pub residual: &'static str,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrackReport {
    pub generators: Vec<GeneratorReport>,
    pub max_deviation: f64,
    pub commuting: bool,
}

/// Compares every tracked generator with `U Z_j U†` computed densely.
pub fn verify_against_oracle(circuit: &Circuit) -> Result<TrackReport> {
    let m = circuit.num_qubits();
    if m > 3.min(DENSE_GUARD) {
        return Err(Error::GuardExceeded {
            what: "qubits",
            value: m,
            limit: 3,
        });
    }
    let u = circuit.dense()?;
    let tracked = circuit.track()?;
    let dense: Vec<DenseOperator> = tracked.iter().map(StructuredGenerator::dense).collect();
    let mut generators = Vec::with_capacity(m);
    let mut max_deviation = 0.0f64;
    for (j, (g, d)) in tracked.iter().zip(&dense).enumerate() {
        let expected = conjugate_dense(&u, &dense_pauli(&PauliLabel::z(m, j)))?;
        let deviation = d.max_abs_diff(&expected);
        max_deviation = max_deviation.max(deviation);
        generators.push(GeneratorReport {
            index: j,
            label: g.label.clone(),
            phase: g.phase,
            sign: g.sign,
            residual: match g.residual {
                Residual::None => "none",
                Residual::Form(_) => "form",
                Residual::Opaque(_) => "opaque",
            },
            deviation,
        });
    }
    let commuting = dense.iter().enumerate().all(|(i, x)| {
        dense[i + 1..]
            .iter()
            .all(|y| (x * y).approx_eq(&(y * x), crate::oracle::MEMBERSHIP_TOL))
    });
    Ok(TrackReport {
        generators,
        max_deviation,
        commuting,
    })
}
