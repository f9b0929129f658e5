//! Recovering `(k, R)` from a list of diagonal phase exponents.
//!
//! Weight-1 basis vectors fix the diagonal of `R`, weight-2 vectors fix the
//! off-diagonal entries through `2R_ij = e(e_i + e_j) − R_ii − R_jj`. When one
//! of those right-hand sides is odd, all exponents are doubled and the level
//! goes up by one, after which every right-hand side is even. The candidate is
//! then checked against all `2^m` entries; a mismatch cannot be repaired by
//! further doubling, so it is reported as infeasible with the failing vector.

use serde::{Deserialize, Serialize};

use super::form::SymForm;
use crate::error::{Error, Result};
use crate::ring::{check_level, reduce, BitVector, MAX_LEVEL};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Synthesis {
    /// `exponents ≡ vRvᵀ + removed_phase (mod 2^k_hint)` after lifting to `k`.
    Found {
        form: SymForm,
        /// Exponent of the global phase that was subtracted, at `k_hint`.
        removed_phase: u64,
    },
    Infeasible {
        /// Level at which verification failed.
        k: u32,
        witness: BitVector,
        expected: u64,
        found: u64,
    },
}

impl Synthesis {
    pub fn form(&self) -> Option<&SymForm> {
        match self {
            Synthesis::Found { form, .. } => Some(form),
            Synthesis::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Synthesis::Found { .. })
    }
}

/// Number of qubits `m` with `len = 2^m`.
pub fn qubits_for_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

enum Solve {
    Form(SymForm),
    OddPair,
}

fn solve(exps: &[i64], m: usize, k: u32) -> Solve {
    let at = |v: &BitVector| exps[v.index()];
    let diag: Vec<i64> = (0..m).map(|i| at(&BitVector::unit(m, i))).collect();
    let mut off = vec![0i64; m * m];
    for i in 0..m {
        for j in i + 1..m {
            let mut bits = vec![0u8; m];
            bits[i] = 1;
            bits[j] = 1;
            let pair = at(&BitVector::new(bits).unwrap());
            let twice = reduce(pair - diag[i] - diag[j], k) as i64;
            if twice % 2 == 1 {
                return Solve::OddPair;
            }
            off[i * m + j] = twice / 2;
        }
    }
    Solve::Form(SymForm::from_fn(m, k, |i, j| {
        if i == j {
            diag[i]
        } else {
            off[i * m + j]
        }
    }))
}

/// Finds the smallest `k ≥ k_hint` and canonical `R` with
/// `vRvᵀ ≡ exponents[index(v)] − exponents[0]`.
pub fn synthesize(exponents: &[i64], k_hint: u32) -> Result<Synthesis> {
    let m = qubits_for_len(exponents.len())?;
    check_level(k_hint)?;
    if k_hint == 0 {
        return Err(Error::LevelTooLow { k: 0, min: 1 });
    }
    let removed = reduce(exponents[0], k_hint);
    let mut k = k_hint;
    let mut exps: Vec<i64> = exponents
        .iter()
        .map(|&e| reduce(e - removed as i64, k) as i64)
        .collect();

    let form = loop {
        match solve(&exps, m, k) {
            Solve::Form(f) => break f,
            Solve::OddPair => {
                if k >= MAX_LEVEL {
                    return Err(Error::LevelTooHigh {
                        k: k + 1,
                        max: MAX_LEVEL,
                    });
                }
                exps.iter_mut().for_each(|e| *e *= 2);
                k += 1;
            }
        }
    };

    for v in BitVector::all(m) {
        let got = form.eval(&v)?;
        let want = exps[v.index()] as u64;
        if got != want {
            return Ok(Synthesis::Infeasible {
                k,
                witness: v,
                expected: want,
                found: got,
            });
        }
    }
    Ok(Synthesis::Found {
        form,
        removed_phase: removed,
    })
}
