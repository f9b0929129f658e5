//! Command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input or failed verification, 2
//! infeasible synthesis.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::diagonal::{
    conjugate, full_recursion_trace, group_order, group_order_log2, lookup, standard_gate_table,
    synthesize, DiagonalGate, SymForm, Synthesis,
};
use crate::error::Error;
use crate::pauli::PauliLabel;
use crate::ring::MAX_LEVEL;
use crate::symplectic::gamma_of;
use crate::tracker::{verify_against_oracle, Circuit};
use crate::verify::{self, VerifyOptions};

/// Highest level tried when converting complex phases to exponents.
pub const PHASE_LEVEL_CAP: u32 = 12;
pub const PHASE_TOL: f64 = 1e-6;
/// Largest group order `count --enumerate` will walk.
pub const ENUMERATE_GUARD: u128 = 1 << 16;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Input(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "symdiag", version, about = "Diagonal gates over ℤ_{2^k} and their action on Pauli operators")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampling subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recover (k, R) from a diagonal given as exponents or complex entries.
    Synth(SynthArgs),
    /// Conjugate a Pauli by a diagonal gate.
    Conjugate(ConjugateArgs),
    /// Print the standard single- and two-qubit gate table.
    Table,
    /// Number of distinct gates with m qubits at level k.
    Count(CountArgs),
    /// Run the self-check suites against the dense oracle.
    Verify(VerifyArgs),
    /// Tensor product of two gates.
    Tensor(PairArgs),
    /// Group product of two gates.
    Add(PairArgs),
    /// Print Γ_R and check the symplectic condition mod 2.
    Gamma(GateArgs),
    /// Track the stabilizer of |0…0⟩ through a circuit and compare densely.
    Track(TrackArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// JSON list of integer exponents or of [re, im] pairs, inline or a file path.
    pub input: String,
    /// Starting level.
    #[arg(long, default_value_t = 1)]
    pub k_hint: u32,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    /// Table name (e.g. T, CZ) or JSON {"k":..,"R":[[..]]}, inline or a file path.
    pub gate: String,
}

#[derive(Debug, Args)]
pub struct ConjugateArgs {
    /// Table name or JSON form.
    pub gate: String,
    /// JSON {"a":[..],"b":[..]}, inline or a file path.
    pub pauli: String,
    /// Follow the recursion down through the residual levels.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: u32,
    /// Cross-check by listing every distinct diagonal.
    #[arg(long)]
    pub enumerate: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Check every binary Pauli instead of random integer labels.
    #[arg(long)]
    pub exhaustive_paulis: bool,
    /// Check every canonical form when there are at most 4096.
    #[arg(long)]
    pub exhaustive_forms: bool,
    /// Negate every phase before comparing (the suite must then fail).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Args)]
pub struct TrackArgs {
    /// Circuit JSON, inline or a file path.
    pub circuit: String,
}

/// Outcome of a subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Failed,
    Infeasible,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Failed => 1,
            Outcome::Infeasible => 2,
        }
    }
}

fn read_payload(arg: &str) -> CliResult<String> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with(['[', '{', '"']) && path.is_file() {
        return Ok(std::fs::read_to_string(path)?);
    }
    Ok(arg.to_string())
}

pub fn parse_gate(arg: &str) -> CliResult<SymForm> {
    if let Some(g) = lookup(arg.trim()) {
        return Ok(g.form);
    }
    let v: Value = serde_json::from_str(&read_payload(arg)?)?;
    let k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Input("gate JSON needs an integer \"k\"".into()))?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(
        v.get("R")
            .cloned()
            .ok_or_else(|| CliError::Input("gate JSON needs \"R\"".into()))?,
    )?;
    if let Some(m) = v.get("m").and_then(Value::as_u64) {
        if m as usize != rows.len() {
            return Err(Error::DimensionMismatch {
                expected: m as usize,
                found: rows.len(),
            }
            .into());
        }
    }
    let k = u32::try_from(k).map_err(|_| Error::LevelTooHigh { k: u32::MAX, max: MAX_LEVEL })?;
    Ok(SymForm::from_rows(k, &rows)?)
}

/// Exponents of `ξ_k` matching unit-modulus complex entries, for the
/// smallest `k ≥ k_hint` up to [`PHASE_LEVEL_CAP`].
pub fn phases_to_exponents(entries: &[Complex64], k_hint: u32) -> CliResult<(Vec<i64>, u32)> {
    for (index, z) in entries.iter().enumerate() {
        if (z.norm() - 1.0).abs() > PHASE_TOL {
            return Err(Error::NonUnitModulus {
                index,
                modulus: z.norm(),
            }
            .into());
        }
    }
    for k in k_hint.max(1)..=PHASE_LEVEL_CAP {
        let n = (1u64 << k) as f64;
        let exps: Option<Vec<i64>> = entries
            .iter()
            .map(|z| {
                let x = z.arg().rem_euclid(2.0 * PI) / (2.0 * PI) * n;
                let r = x.round();
                ((x - r).abs() * 2.0 * PI / n <= PHASE_TOL).then_some(r as i64 % n as i64)
            })
            .collect();
        if let Some(e) = exps {
            return Ok((e, k));
        }
    }
    Err(CliError::Input(format!(
        "phases are not powers of exp(2πi/2^k) for any k ≤ {PHASE_LEVEL_CAP}"
    )))
}

fn parse_synth_input(arg: &str, k_hint: u32) -> CliResult<(Vec<i64>, u32)> {
    let v: Value = serde_json::from_str(&read_payload(arg)?)?;
    let list = v
        .as_array()
        .ok_or_else(|| CliError::Input("expected a JSON list".into()))?;
    if list.iter().all(Value::is_i64) {
        return Ok((list.iter().map(|x| x.as_i64().unwrap()).collect(), k_hint));
    }
    let entries: Vec<[f64; 2]> = serde_json::from_value(v)
        .map_err(|_| CliError::Input("entries must be integers or [re, im] pairs".into()))?;
    let entries: Vec<Complex64> = entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    phases_to_exponents(&entries, k_hint)
}

fn emit(out: &mut dyn Write, as_json: bool, value: &Value, text: impl FnOnce() -> String) -> CliResult<()> {
    if as_json {
        writeln!(out, "{}", serde_json::to_string(value)?)?;
    } else {
        writeln!(out, "{}", text())?;
    }
    Ok(())
}

fn form_json(f: &SymForm) -> Value {
    json!({"m": f.num_qubits(), "k": f.level(), "R": f.rows()})
}

#[derive(Serialize)]
struct StepJson {
    phi: u64,
    label: PauliLabel,
    #[serde(rename = "R_tilde")]
    r_tilde: Vec<Vec<i64>>,
    k_next: u32,
}

fn step_json(form: &SymForm, p: &PauliLabel) -> CliResult<StepJson> {
    let step = conjugate(&DiagonalGate::new(form.clone()), p)?;
    let (phi, label) = step.binary();
    Ok(StepJson {
        phi: phi.value(),
        label,
        r_tilde: step.residual.rows(),
        k_next: step.residual.level(),
    })
}

fn label_text(p: &PauliLabel) -> String {
    const NAMES: [char; 4] = ['I', 'Z', 'X', 'Y'];
    let a = p.a0();
    let b = p.b0();
    a.bits()
        .iter()
        .zip(b.bits())
        .map(|(x, z)| NAMES[(2 * x + z) as usize])
        .collect()
}

/// Runs one parsed command, writing to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<Outcome> {
    let js = cli.json;
    match &cli.command {
        Command::Synth(args) => {
            let (exps, k_hint) = parse_synth_input(&args.input, args.k_hint)?;
            match synthesize(&exps, k_hint)? {
                Synthesis::Found { form, removed_phase } => {
                    let value = json!({
                        "k": form.level(),
                        "R": form.rows(),
                        "removed_phase": {"exponent": removed_phase, "k": k_hint},
                    });
                    emit(out, js, &value, || {
                        format!("k = {}\nR = {}\nremoved global phase: ξ_{}^{}", form.level(), fmt_rows(&form.rows()), k_hint, removed_phase)
                    })?;
                    Ok(Outcome::Ok)
                }
                Synthesis::Infeasible { k, witness, expected, found } => {
                    let value = json!({
                        "status": "infeasible",
                        "k": k,
                        "witness": witness,
                        "expected": expected,
                        "found": found,
                    });
                    emit(out, js, &value, || {
                        format!("infeasible at k = {k}: v = {witness} needs exponent {expected}, quadratic form gives {found}")
                    })?;
                    Ok(Outcome::Infeasible)
                }
            }
        }
        Command::Conjugate(args) => {
            let form = parse_gate(&args.gate)?;
            let p: PauliLabel = serde_json::from_str(&read_payload(&args.pauli)?)?;
            if !args.trace {
                let s = step_json(&form, &p)?;
                let value = serde_json::to_value(&s)?;
                emit(out, js, &value, || {
                    format!("ξ^{} · {} · τ^({}) {}", s.phi, label_text(&s.label), s.k_next, fmt_rows(&s.r_tilde))
                })?;
                return Ok(Outcome::Ok);
            }
            let trace = full_recursion_trace(&DiagonalGate::new(form), &p)?;
            let steps = trace
                .steps
                .iter()
                .map(|st| {
                    let (phi, label) = st.result.binary();
                    StepJson {
                        phi: phi.value(),
                        label,
                        r_tilde: st.result.residual.rows(),
                        k_next: st.result.residual.level(),
                    }
                })
                .collect::<Vec<_>>();
            let value = json!({"steps": steps, "level_one_pauli": trace.level_one_pauli()});
            emit(out, js, &value, || {
                steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        format!("step {i}: ξ^{} · {} · τ^({}) {}", s.phi, label_text(&s.label), s.k_next, fmt_rows(&s.r_tilde))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok(Outcome::Ok)
        }
        Command::Table => {
            let rows: Vec<Value> = standard_gate_table()
                .iter()
                .map(|g| {
                    json!({
                        "name": g.name,
                        "k": g.form.level(),
                        "R": g.form.rows(),
                        "diagonal": g.form.diagonal_entries(),
                    })
                })
                .collect();
            emit(out, js, &Value::Array(rows), || {
                let mut s = format!("{:<6} {:>2}  {:<16} diagonal (powers of ξ = e^(iπ/4))", "gate", "k", "R");
                for g in standard_gate_table() {
                    s.push_str(&format!(
                        "\n{:<6} {:>2}  {:<16} {:?}",
                        g.name,
                        g.form.level(),
                        fmt_rows(&g.form.rows()),
                        g.form.diagonal_entries()
                    ));
                }
                s
            })?;
            Ok(Outcome::Ok)
        }
        Command::Count(args) => {
            if args.m == 0 || args.k == 0 {
                return Err(CliError::Input("m and k must be at least 1".into()));
            }
            crate::ring::check_level(args.k)?;
            let order = group_order(args.m, args.k);
            let mut value = json!({
                "m": args.m,
                "k": args.k,
                "order": order.map(|n| n.to_string()),
                "log2_order": group_order_log2(args.m, args.k),
            });
            let mut ok = true;
            if args.enumerate {
                let n = order.filter(|&n| n <= ENUMERATE_GUARD).ok_or(Error::GuardExceeded {
                    what: "group order for enumeration",
                    value: group_order_log2(args.m, args.k) as usize,
                    limit: ENUMERATE_GUARD.trailing_zeros() as usize,
                })?;
                let distinct: HashSet<Vec<u64>> = SymForm::enumerate(args.m, args.k)
                    .map(|f| f.diagonal_entries())
                    .collect();
                ok = distinct.len() as u128 == n;
                value["enumerated"] = json!(distinct.len());
                value["matches"] = json!(ok);
            }
            emit(out, js, &value, || {
                let mut s = match order {
                    Some(n) => n.to_string(),
                    None => format!("2^{}", group_order_log2(args.m, args.k)),
                };
                if let Some(e) = value.get("enumerated") {
                    s.push_str(&format!("\nenumerated distinct diagonals: {e} ({})", if ok { "match" } else { "MISMATCH" }));
                }
                s
            })?;
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Verify(args) => {
            let report = verify::run(&VerifyOptions {
                m: args.m,
                k: args.k,
                samples: args.samples,
                exhaustive_paulis: args.exhaustive_paulis,
                exhaustive_forms: args.exhaustive_forms,
                seed: cli.seed,
                inject_fault: args.inject_fault,
            })?;
            let mut value = serde_json::to_value(&report)?;
            value["passed"] = json!(report.passed());
            value["max_deviation"] = json!(report.max_deviation());
            emit(out, js, &value, || {
                let mut s = String::new();
                for suite in &report.suites {
                    s.push_str(&format!(
                        "{:<28} {:>6} checks  {}\n",
                        suite.name,
                        suite.checks,
                        if suite.passed() { "pass" } else { "FAIL" }
                    ));
                    if let Some(c) = &suite.counterexample {
                        s.push_str(&format!("  counterexample: {c}\n"));
                    }
                }
                s.push_str(&format!(
                    "max deviation {:.3e}\n{}",
                    report.max_deviation(),
                    if report.passed() { "PASS" } else { "FAIL" }
                ));
                s
            })?;
            Ok(if report.passed() { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Tensor(args) | Command::Add(args) => {
            let (l, r) = (parse_gate(&args.left)?, parse_gate(&args.right)?);
            let f = if matches!(cli.command, Command::Tensor(_)) {
                l.tensor(&r)?
            } else {
                l.group_add(&r)?
            };
            emit(out, js, &form_json(&f), || format!("k = {}\nR = {}", f.level(), fmt_rows(&f.rows())))?;
            Ok(Outcome::Ok)
        }
        Command::Gamma(args) => {
            let g = gamma_of(&parse_gate(&args.gate)?);
            let ok = g.is_symplectic_mod2();
            let value = json!({
                "k": g.level(),
                "gamma": g.matrix(),
                "gamma_omega_gamma_t": g.omega_product(),
                "symplectic_mod2": ok,
            });
            emit(out, js, &value, || {
                format!(
                    "Γ = {}\nΓΩΓᵀ = {}\nΓΩΓᵀ ≡ Ω (mod 2): {}",
                    fmt_rows(&g.matrix()),
                    fmt_rows(&g.omega_product()),
                    ok
                )
            })?;
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Track(args) => {
            let circuit: Circuit = serde_json::from_str(&read_payload(&args.circuit)?)?;
            let report = verify_against_oracle(&circuit)?;
            let ok = report.max_deviation < crate::oracle::MEMBERSHIP_TOL && report.commuting;
            let value = serde_json::to_value(&report)?;
            emit(out, js, &value, || {
                let mut s = String::new();
                for g in &report.generators {
                    let sign = if g.sign < 0 { "-" } else { "+" };
                    s.push_str(&format!(
                        "g{}: {sign}ξ_{}^{} · {} · [{} residual]  deviation {:.3e}\n",
                        g.index,
                        g.phase.level(),
                        g.phase.value(),
                        label_text(&g.label),
                        g.residual,
                        g.deviation
                    ));
                }
                s.push_str(&format!("max deviation {:.3e}, commuting: {}", report.max_deviation, report.commuting));
                s
            })?;
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

fn fmt_rows(rows: &[Vec<i64>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", inner.join("; "))
}
