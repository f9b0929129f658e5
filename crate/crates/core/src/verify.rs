//! Randomized and exhaustive self-checks of the symbolic formulas against
//! each other and against the dense oracle.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagonal::{conjugate, group_order, q_function, DiagonalGate, SymForm};
use crate::error::{Error, Result};
use crate::oracle::{
    conjugate_dense, dense_diagonal, dense_pauli, hierarchy_level, DenseOperator, DENSE_GUARD,
    LEVEL_GUARD, MEMBERSHIP_TOL,
};
use crate::pauli::PauliLabel;
use crate::ring::{elementwise_product, reduce, xor_as_ring, BitVector, IntVector};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub m: usize,
    pub k: u32,
    pub samples: usize,
    pub exhaustive_paulis: bool,
    /// Enumerate every canonical form instead of sampling, when few enough.
    pub exhaustive_forms: bool,
    pub seed: u64,
    /// Negates every `φ` before the dense comparison.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            m: 2,
            k: 3,
            samples: 50,
            exhaustive_paulis: false,
            exhaustive_forms: false,
            seed: 0,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub max_deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: 0,
            max_deviation: 0.0,
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, deviation: f64, witness: impl FnOnce() -> String) {
        self.checks += 1;
        self.max_deviation = self.max_deviation.max(deviation);
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub m: usize,
    pub k: u32,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.suites.iter().map(|s| s.max_deviation).fold(0.0, f64::max)
    }
}

pub fn random_bits<R: Rng + ?Sized>(m: usize, rng: &mut R) -> BitVector {
    BitVector::new((0..m).map(|_| rng.gen_range(0..2)).collect()).expect("bits")
}

/// Integer vector with two binary layers, entries in `0..4`.
pub fn random_two_layer<R: Rng + ?Sized>(m: usize, rng: &mut R) -> IntVector {
    IntVector::new((0..m).map(|_| rng.gen_range(0..4)).collect())
}

pub fn random_label<R: Rng + ?Sized>(m: usize, rng: &mut R) -> PauliLabel {
    PauliLabel::new(random_two_layer(m, rng), random_two_layer(m, rng)).expect("same length")
}

fn xi_pow(x: u64, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x as f64 / (1u64 << k) as f64)
}

/// Largest entrywise gap between `τ E(p) τ†` and `ξ^φ E(label) τ_R̃`, with
/// `φ` negated when `flip` is set.
pub fn conjugation_deviation(form: &SymForm, p: &PauliLabel, flip: bool) -> Result<f64> {
    let tau = dense_diagonal(form);
    let lhs = conjugate_dense(&tau, &dense_pauli(p))?;
    let step = conjugate(&DiagonalGate::new(form.clone()), p)?;
    let phi = if flip { -step.phi } else { step.phi };
    let rhs = &dense_pauli(&step.label).scale(xi_pow(phi.value(), phi.level()))
        * &dense_diagonal(&step.residual);
    Ok(lhs.max_abs_diff(&rhs))
}

/// The expansion of `q(v ⊕ c₀; R, a, b) − q(v; R, a, b)` into twelve
/// families of bilinear terms, reduced mod `2^k`.
pub fn appendix_expansion(v: &BitVector, form: &SymForm, a0: &BitVector, c0: &BitVector) -> Result<u64> {
    let k = form.level();
    let vc = elementwise_product(v, c0)?;
    let va = elementwise_product(v, a0)?;
    let ca = elementwise_product(c0, a0)?;
    let vca = elementwise_product(&vc, a0)?;
    let f = |x: &BitVector, y: &BitVector| -> Result<i64> {
        form.bilinear(x.to_int().entries(), y.to_int().entries())
    };
    let half = 1i64 << (k - 1);
    let terms = [
        (2 + half) * f(c0, a0)?,
        -4 * f(&vc, a0)?,
        -4 * f(v, &ca)?,
        -4 * f(a0, &ca)?,
        4 * f(&va, &ca)?,
        8 * f(v, &vca)?,
        8 * f(a0, &vca)?,
        -8 * f(&va, &vca)?,
        -4 * f(c0, &va)?,
        8 * f(&vc, &va)?,
        4 * f(&ca, &va)?,
        -8 * f(&vca, &va)?,
        -4 * f(c0, &ca)?,
        8 * f(c0, &vca)?,
        8 * f(&vc, &ca)?,
        -16 * f(&vc, &vca)?,
        4 * f(&ca, &ca)?,
        -16 * f(&ca, &vca)?,
        16 * f(&vca, &vca)?,
    ];
    Ok(reduce(terms.iter().sum(), k))
}

/// The three sides of the composition rule for `q`, all mod `2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionSides {
    /// `q(v ⊕ c₀; a, b) + q(v; c, d)`.
    pub left: u64,
    /// `q(v; a, b) + q(v ⊕ a₀; c, d)`.
    pub middle: u64,
    /// `q(v; a + c, b + d) + 2^{k−1}(b₀c₁ + b₁c₀ − a₀d₁ − a₁d₀)`.
    pub printed: u64,
    /// `printed` plus the constant `2^{k−2}(x·y − x'·y')` relating the
    /// integer label `(x, y) = (a₀ + c₀, b₀ + d₀ + (a₀ + c₀)R)` of the product
    /// of the two conjugated Paulis to the label `(x', y')` produced by
    /// conjugating `E(a + c, b + d)`.
    pub corrected: u64,
}

pub fn composition_sides(v: &BitVector, form: &SymForm, [a, b, c, d]: [&IntVector; 4]) -> Result<CompositionSides> {
    let k = form.level();
    let q = |v: &BitVector, x: &IntVector, y: &IntVector| q_function(v, form, x, y).map(|s| s.value() as i64);
    let (a0, b0, c0, d0) = (a.layer(0), b.layer(0), c.layer(0), d.layer(0));
    let (a1, b1, c1, d1) = (a.layer(1), b.layer(1), c.layer(1), d.layer(1));
    let dot = |x: &BitVector, y: &BitVector| x.to_int().dot(&y.to_int());
    let left = q(&v.xor(&c0)?, a, b)? + q(v, c, d)?;
    let middle = q(v, a, b)? + q(&v.xor(&a0)?, c, d)?;
    let cross = dot(&b0, &c1)? + dot(&b1, &c0)? - dot(&a0, &d1)? - dot(&a1, &d0)?;
    let (s, u) = (a.add(c)?, b.add(d)?);
    let printed = q(v, &s, &u)? + (cross << (k - 1));

    let x = a0.to_int().add(&c0.to_int())?;
    let y = b0.to_int().add(&d0.to_int())?.add(&form.row_product(&x)?)?;
    let x2 = s.layer(0).to_int();
    let y2 = u.layer(0).to_int().add(&form.row_product(&x2)?)?;
    let carry = (x.dot(&y)? - x2.dot(&y2)?) << (k - 2);
    Ok(CompositionSides {
        left: reduce(left, k),
        middle: reduce(middle, k),
        printed: reduce(printed, k),
        corrected: reduce(printed + carry, k),
    })
}

fn forms_for(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Vec<SymForm> {
    let small = group_order(opts.m, opts.k).is_some_and(|n| n <= 1 << 12);
    if opts.exhaustive_forms && small {
        SymForm::enumerate(opts.m, opts.k).collect()
    } else {
        (0..opts.samples).map(|_| SymForm::random(opts.m, opts.k, rng)).collect()
    }
}

fn conjugation_suite(opts: &VerifyOptions, forms: &[SymForm], rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("conjugation");
    for form in forms {
        let labels: Vec<PauliLabel> = if opts.exhaustive_paulis {
            PauliLabel::all_binary(opts.m).collect()
        } else {
            (0..4).map(|_| random_label(opts.m, rng)).collect()
        };
        for p in labels {
            let dev = conjugation_deviation(form, &p, opts.inject_fault)?;
            rep.record(dev <= MEMBERSHIP_TOL, dev, || {
                format!("R={} k={} label={p}: deviation {dev:.3e}", form, form.level())
            });
        }
    }
    Ok(rep)
}

/// `(v ⊕ w)R(v ⊕ w)ᵀ ≡ (v + w)R(v + w)ᵀ − 4η(v; R, w)`.
fn lemma1_suite(opts: &VerifyOptions, forms: &[SymForm], rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("binary-sum quadratic");
    for form in forms {
        let (v, w) = (random_bits(opts.m, rng), random_bits(opts.m, rng));
        let lhs = form.eval(&v.xor(&w)?)?;
        let sum = v.to_int().add(&w.to_int())?;
        let eta = crate::diagonal::eta(&v, form, &w)?;
        let rhs = reduce(
            form.bilinear(sum.entries(), sum.entries())? - 4 * eta.value() as i64,
            form.level(),
        );
        rep.record(lhs == rhs, 0.0, || format!("R={form} v={v} w={w}: {lhs} vs {rhs}"));
        let ring = xor_as_ring(&v, &w, form.level())?;
        let direct = reduce(form.bilinear(ring.entries(), ring.entries())?, form.level());
        rep.record(direct == lhs, 0.0, || format!("R={form} v={v} w={w}: ring form {direct}"));
    }
    Ok(rep)
}

/// Both equalities of the q-function composition rule and the expansion of
/// the shifted q-function with its `a₀ ↔ c₀` symmetry.
fn q_rules_suite(opts: &VerifyOptions, forms: &[SymForm], rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("q-function rules");
    if opts.k < 2 {
        return Ok(rep);
    }
    for form in forms {
        let k = form.level();
        let m = opts.m;
        let (a, b, c, d) = (
            random_two_layer(m, rng),
            random_two_layer(m, rng),
            random_two_layer(m, rng),
            random_two_layer(m, rng),
        );
        let v = random_bits(m, rng);
        let (a0, c0) = (a.layer(0), c.layer(0));
        let q = |v: &BitVector, x: &IntVector, y: &IntVector| q_function(v, form, x, y).map(|s| s.value() as i64);
        let sides = composition_sides(&v, form, [&a, &b, &c, &d])?;
        let witness = || format!("R={form} v={v} a={a:?} b={b:?} c={c:?} d={d:?}: {sides:?}");
        rep.record(sides.left == sides.middle, 0.0, witness);
        rep.record(sides.middle == sides.corrected, 0.0, || {
            format!("R={form} v={v}: second equality {} vs {}", sides.middle, sides.corrected)
        });

        let shifted = reduce(q(&v.xor(&c0)?, &a, &b)? - q(&v, &a, &b)?, k);
        let expanded = appendix_expansion(&v, form, &a0, &c0)?;
        let swapped = appendix_expansion(&v, form, &c0, &a0)?;
        rep.record(shifted == expanded && expanded == swapped, 0.0, || {
            format!("R={form} v={v} a0={a0} c0={c0}: {shifted} {expanded} {swapped}")
        });
    }
    Ok(rep)
}

/// Dense forms of the shift rule for `q` and the reordering identity.
fn dense_rules_suite(opts: &VerifyOptions, forms: &[SymForm], rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("dense shift and reordering");
    if opts.k < 2 || opts.m > 2 {
        return Ok(rep);
    }
    let m = opts.m;
    for form in forms {
        let k = form.level();
        let tau = dense_diagonal(form);
        let (a, b) = (random_two_layer(m, rng), random_two_layer(m, rng));
        let (c, d) = (random_two_layer(m, rng), random_two_layer(m, rng));
        let q_diag = |shift: &BitVector| -> Result<DenseOperator> {
            let entries = BitVector::all(m)
                .map(|v| Ok(xi_pow(q_function(&v.xor(shift)?, form, &a, &b)?.value(), k)))
                .collect::<Result<Vec<_>>>()?;
            Ok(DenseOperator::from_diagonal(&entries))
        };
        let e0 = random_bits(m, rng);
        let f = random_two_layer(m, rng);
        let ef = dense_pauli(&PauliLabel::new(e0.to_int(), f.clone())?);
        let lhs = q_diag(&e0)?;
        let rhs = &(&ef * &q_diag(&BitVector::zeros(m))?) * &ef;
        let dev = lhs.max_abs_diff(&rhs);
        rep.record(dev <= MEMBERSHIP_TOL, dev, || format!("R={form} e0={e0}: shift {dev:.3e}"));

        let pa = PauliLabel::new(a.clone(), b.clone())?;
        let pc = PauliLabel::new(c.clone(), d.clone())?;
        let ca = conjugate_dense(&tau, &dense_pauli(&pc))?;
        let aa = conjugate_dense(&tau, &dense_pauli(&pa))?;
        let e = b.layer(0).to_int().add(&form.row_product(&a.layer(0).to_int())?)?;
        let fv = d.layer(0).to_int().add(&form.row_product(&c.layer(0).to_int())?)?;
        let ea = dense_pauli(&PauliLabel::new(a.layer(0).to_int(), e)?);
        let fc = dense_pauli(&PauliLabel::new(c.layer(0).to_int(), fv)?);
        let lhs = &ca * &aa;
        let rhs = &(&(&ea * &ca) * &ea) * &(&(&fc * &aa) * &fc);
        let dev = lhs.max_abs_diff(&rhs);
        rep.record(dev <= MEMBERSHIP_TOL, dev, || format!("R={form} a={a:?} c={c:?}: reorder {dev:.3e}"));
    }
    Ok(rep)
}

fn hierarchy_suite(opts: &VerifyOptions, forms: &[SymForm]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("hierarchy level");
    if opts.m > LEVEL_GUARD {
        return Ok(rep);
    }
    for form in forms {
        let level = hierarchy_level(&dense_diagonal(form), opts.k)?;
        let ok = matches!(level, Some(l) if l <= opts.k);
        rep.record(ok, 0.0, || format!("R={form} k={}: level {level:?}", opts.k));
    }
    Ok(rep)
}

/// Runs all suites that apply at `(m, k)`.
pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.m > DENSE_GUARD {
        return Err(Error::GuardExceeded {
            what: "qubits",
            value: opts.m,
            limit: DENSE_GUARD,
        });
    }
    if opts.m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    crate::ring::check_level(opts.k)?;
    if opts.k == 0 {
        return Err(Error::LevelTooLow { k: 0, min: 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let forms = forms_for(opts, &mut rng);
    let suites = vec![
        conjugation_suite(opts, &forms, &mut rng)?,
        lemma1_suite(opts, &forms, &mut rng)?,
        q_rules_suite(opts, &forms, &mut rng)?,
        dense_rules_suite(opts, &forms, &mut rng)?,
        hierarchy_suite(opts, &forms)?,
    ];
    Ok(VerifyReport {
        m: opts.m,
        k: opts.k,
        seed: opts.seed,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_pass() {
        let r = run(&VerifyOptions::default()).unwrap();
        for s in &r.suites {
            assert!(s.passed(), "{s:?}");
        }
    }

    #[test]
    fn exhaustive_single_qubit() {
        for k in 1..=3 {
            let opts = VerifyOptions {
                m: 1,
                k,
                exhaustive_paulis: true,
                exhaustive_forms: true,
                ..Default::default()
            };
            assert!(run(&opts).unwrap().passed());
        }
    }

    #[test]
    fn fault_is_caught() {
        let opts = VerifyOptions {
            inject_fault: true,
            ..Default::default()
        };
        let r = run(&opts).unwrap();
        assert!(!r.passed());
        assert!(r.suites[0].counterexample.is_some());
    }

    #[test]
    fn guard() {
        let opts = VerifyOptions {
            m: 5,
            ..Default::default()
        };
        assert!(run(&opts).is_err());
    }
}
