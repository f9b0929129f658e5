//! Acceptance suite: one line per criterion, nonzero exit on an unexpected
//! outcome.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symdiag::diagonal::{
    ccz_companion, conjugate, group_order, lookup, q_function, standard_gate_table, synthesize,
    DiagonalGate, SymForm, Synthesis,
};
use symdiag::oracle::{
    conjugate_dense, dense_diagonal, dense_pauli, equal_up_to_global_phase, hierarchy_level,
    kron_all, pauli_x, pauli_y, pauli_z, DenseOperator,
};
use symdiag::pauli::PauliLabel;
use symdiag::ring::{BitVector, IntVector};
use symdiag::tracker::{apply_diagonal, initial_stabilizer, verify_against_oracle, Circuit, Residual};
use symdiag::verify::{
    appendix_expansion, composition_sides, conjugation_deviation, random_bits, random_two_layer,
};

struct Outcome {
    passed: bool,
    detail: String,
    /// Wall-clock bound from the criterion, if any.
    budget: Option<Duration>,
    /// The criterion cannot hold as written and failed for exactly that reason.
    expected_fail: bool,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn xi(e: i64, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / (1u64 << k) as f64)
}

fn diag(entries: &[Complex64]) -> DenseOperator {
    DenseOperator::from_diagonal(entries)
}

fn criterion_1() -> Outcome {
    let t = lookup("T").unwrap().form;
    let step = conjugate(&DiagonalGate::new(t.clone()), &PauliLabel::x(1, 0)).unwrap();
    let (phi, label) = step.binary();
    let phi_ok = phi.value() == 7 && phi.level() == 3;
    let label_ok = label == PauliLabel::from_ints(vec![1], vec![1]).unwrap();
    let residual_ok = step.residual == SymForm::from_rows(2, &[vec![1]]).unwrap();

    let t_dense = diag(&[c(1.0, 0.0), Complex64::from_polar(1.0, PI / 4.0)]);
    let lhs = conjugate_dense(&t_dense, &pauli_x()).unwrap();
    let rhs = pauli_x().add(&pauli_y()).scale(c(1.0 / 2f64.sqrt(), 0.0));
    let dev = lhs.max_abs_diff(&rhs);
    Outcome {
        passed: phi_ok && label_ok && residual_ok && dev <= 1e-12,
        detail: format!("phi={phi}, label={label}, residual={}, |TXT† − (X+Y)/√2|={dev:.1e}", step.residual),
        budget: Some(Duration::from_secs(1)),
        expected_fail: false,
    }
}

fn criterion_2() -> Outcome {
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let w = Complex64::from_polar(1.0, PI / 4.0);
    let printed: Vec<(&str, Vec<Complex64>)> = vec![
        ("I", vec![one, one]),
        ("P", vec![one, i]),
        ("Z", vec![one, -one]),
        ("P†", vec![one, -i]),
        ("T", vec![one, w]),
        ("TZ", vec![one, -w]),
        ("T†", vec![one, w.conj()]),
        ("T†Z", vec![one, -w.conj()]),
        ("CZ", vec![one, one, one, -one]),
        ("CP", vec![one, one, one, i]),
        ("I⊗P", vec![one, i, one, i]),
        ("I⊗Z", vec![one, -one, one, -one]),
        ("P⊗I", vec![one, one, i, i]),
        ("Z⊗I", vec![one, one, -one, -one]),
    ];
    let table = standard_gate_table();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (name, entries) in &printed {
        let Some(g) = table.iter().find(|g| g.name == *name) else {
            bad.push(format!("{name} missing"));
            continue;
        };
        let dev = dense_diagonal(&g.form).max_abs_diff(&diag(entries));
        worst = worst.max(dev);
        if dev > 1e-12 || g.form.level() != 3 {
            bad.push(name.to_string());
        }
    }
    Outcome {
        passed: bad.is_empty() && table.len() == 14,
        detail: format!("{} entries, max deviation {worst:.1e}{}", table.len(), fmt_bad(&bad)),
        budget: None,
        expected_fail: false,
    }
}

fn fmt_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(", failing: {}", bad.join(", "))
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=12u32 {
        let mut e = vec![0i64; 8];
        e[7] = 1 << (k - 1);
        match synthesize(&e, k).unwrap() {
            Synthesis::Infeasible { witness, .. } if witness.bits() == [1, 1, 1] => {}
            other => bad.push(format!("k={k}: {other:?}")),
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("CCZ infeasible with witness [1,1,1] for k = 1..12{}", fmt_bad(&bad)),
        budget: None,
        expected_fail: false,
    }
}

fn criterion_4() -> Outcome {
    let out = synthesize(&[0, 1, 1, 1], 2).unwrap();
    let Some(form) = out.form() else {
        return Outcome {
            passed: false,
            detail: format!("{out:?}"),
            budget: None,
            expected_fail: false,
        };
    };
    let i = c(0.0, 1.0);
    let dev = dense_diagonal(form).max_abs_diff(&diag(&[c(1.0, 0.0), i, i, i]));
    Outcome {
        passed: form.level() == 3 && form.rows() == vec![vec![2, 3], vec![3, 2]] && dev <= 1e-12,
        detail: format!("k={}, R={:?}, |τ_R − diag(1,i,i,i)|={dev:.1e}", form.level(), form.rows()),
        budget: None,
        expected_fail: false,
    }
}

fn criterion_5() -> Outcome {
    let zzz = kron_all(&[pauli_z(), pauli_z(), pauli_z()]);
    let (cs, sn) = ((PI / 8.0).cos(), (PI / 8.0).sin());
    let u = DenseOperator::identity(8)
        .scale(c(cs, 0.0))
        .add(&zzz.scale(c(0.0, sn)));
    let mut ccz = vec![c(1.0, 0.0); 8];
    ccz[7] = c(-1.0, 0.0);
    let target = &u * &diag(&ccz);
    let tau = dense_diagonal(&ccz_companion());
    let phase_ok = equal_up_to_global_phase(&tau, &target, 1e-10);
    let order = group_order(3, 3);
    let distinct: HashSet<Vec<u64>> = SymForm::enumerate(2, 2).map(|f| f.diagonal_entries()).collect();
    Outcome {
        passed: phase_ok && order == Some(32768) && distinct.len() == 32,
        detail: format!(
            "companion ≅ exp(iπ/8 ZZZ)·CCZ: {phase_ok}, |group(3,3)|={order:?}, distinct diagonals at (2,2)={}",
            distinct.len()
        ),
        budget: None,
        expected_fail: false,
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for m in 1..=3 {
        for k in 2..=5 {
            for _ in 0..100 {
                let form = SymForm::random(m, k, &mut rng);
                for p in PauliLabel::all_binary(m) {
                    worst = worst.max(conjugation_deviation(&form, &p, false).unwrap());
                    count += 1;
                }
            }
        }
    }
    Outcome {
        passed: worst <= 1e-8,
        detail: format!("{count} dense comparisons, max deviation {worst:.1e}"),
        budget: Some(Duration::from_secs(60)),
        expected_fail: false,
    }
}

fn criterion_7() -> Outcome {
    let mut count = 0usize;
    let mut bad = 0usize;
    for m in 1..=3 {
        for form in SymForm::enumerate(m, 2) {
            for p in PauliLabel::all_binary(m) {
                for v in BitVector::all(m) {
                    let q = q_function(&v, &form, &p.a, &p.b).unwrap();
                    count += 1;
                    if q.value() % 4 != 0 {
                        bad += 1;
                    }
                }
            }
        }
    }
    Outcome {
        passed: bad == 0,
        detail: format!("{count} evaluations at k=2, {bad} nonzero"),
        budget: None,
        expected_fail: false,
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let trials = 600;
    let (mut a_bad, mut first_bad, mut printed_bad, mut corrected_bad, mut sym_bad, mut c_bad) =
        (0, 0, 0, 0, 0, 0);
    let mut dense_checks = 0;
    for _ in 0..trials {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(2..=5);
        let form = SymForm::random(m, k, &mut rng);
        let [a, b, c, d]: [IntVector; 4] = std::array::from_fn(|_| random_two_layer(m, &mut rng));
        let v = random_bits(m, &mut rng);

        let sides = composition_sides(&v, &form, [&a, &b, &c, &d]).unwrap();
        first_bad += usize::from(sides.left != sides.middle);
        printed_bad += usize::from(sides.middle != sides.printed);
        corrected_bad += usize::from(sides.middle != sides.corrected);

        let (a0, c0) = (a.layer(0), c.layer(0));
        let shifted = (q_function(&v.xor(&c0).unwrap(), &form, &a, &b).unwrap()
            - q_function(&v, &form, &a, &b).unwrap())
        .value();
        let e1 = appendix_expansion(&v, &form, &a0, &c0).unwrap();
        let e2 = appendix_expansion(&v, &form, &c0, &a0).unwrap();
        sym_bad += usize::from(shifted != e1 || e1 != e2);

        if m <= 2 {
            dense_checks += 1;
            // shift rule: diag(ξ^{q(v ⊕ e₀)}) = E(e₀, f) diag(ξ^{q(v)}) E(e₀, f)
            let e0 = random_bits(m, &mut rng);
            let f = random_two_layer(m, &mut rng);
            let q_diag = |shift: &BitVector| {
                let entries: Vec<Complex64> = BitVector::all(m)
                    .map(|w| xi(q_function(&w.xor(shift).unwrap(), &form, &a, &b).unwrap().value() as i64, k))
                    .collect();
                diag(&entries)
            };
            let ef = dense_pauli(&PauliLabel::new(e0.to_int(), f).unwrap());
            let dev = q_diag(&e0).max_abs_diff(&(&(&ef * &q_diag(&BitVector::zeros(m))) * &ef));
            a_bad += usize::from(dev > 1e-8);

            // reordering with e = b₀ + a₀R, f = d₀ + c₀R
            let tau = dense_diagonal(&form);
            let conj = |x: &IntVector, y: &IntVector| {
                conjugate_dense(&tau, &dense_pauli(&PauliLabel::new(x.clone(), y.clone()).unwrap())).unwrap()
            };
            let (cd, ab) = (conj(&c, &d), conj(&a, &b));
            let e = b.layer(0).to_int().add(&form.row_product(&a0.to_int()).unwrap()).unwrap();
            let fv = d.layer(0).to_int().add(&form.row_product(&c0.to_int()).unwrap()).unwrap();
            let ea = dense_pauli(&PauliLabel::new(a0.to_int(), e).unwrap());
            let fc = dense_pauli(&PauliLabel::new(c0.to_int(), fv).unwrap());
            let lhs = &cd * &ab;
            let rhs = &(&(&ea * &cd) * &ea) * &(&(&fc * &ab) * &fc);
            c_bad += usize::from(lhs.max_abs_diff(&rhs) > 1e-8);
        }
    }
    let all_but_printed = a_bad + first_bad + corrected_bad + sym_bad + c_bad == 0;
    Outcome {
        passed: all_but_printed && printed_bad == 0,
        detail: format!(
            "{trials} instances ({dense_checks} dense): (a) {a_bad} bad, (b) first equality {first_bad} bad, \
             (b) second equality as printed {printed_bad} bad, with label-carry phase {corrected_bad} bad, \
             expansion/symmetry {sym_bad} bad, (c) {c_bad} bad"
        ),
        budget: None,
        expected_fail: all_but_printed && printed_bad > 0,
    }
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for (m, ks) in [(1usize, 1..=3u32), (2, 2..=3)] {
        for k in ks {
            for form in SymForm::enumerate(m, k) {
                count += 1;
                let level = hierarchy_level(&dense_diagonal(&form), k).unwrap();
                if !matches!(level, Some(l) if l <= k) {
                    bad.push(format!("m={m} k={k} R={form}: {level:?}"));
                }
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("{count} canonical forms, all within their level: {}{}", bad.is_empty(), fmt_bad(&bad)),
        budget: Some(Duration::from_secs(300)),
        expected_fail: false,
    }
}

fn criterion_10() -> Outcome {
    let mut distinct_ok = true;
    let mut sizes = Vec::new();
    for (m, k) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
        let forms: Vec<SymForm> = SymForm::enumerate(m, k).collect();
        let lists: HashSet<Vec<u64>> = forms.iter().map(SymForm::diagonal_entries).collect();
        distinct_ok &= lists.len() == forms.len() && Some(forms.len() as u128) == group_order(m, k);
        sizes.push(format!("({m},{k}):{}", forms.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut law_bad = 0;
    for _ in 0..200 {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=5);
        let [x, y, z]: [SymForm; 3] = std::array::from_fn(|_| SymForm::random(m, k, &mut rng));
        let assoc = x.group_add(&y).unwrap().group_add(&z).unwrap() == x.group_add(&y.group_add(&z).unwrap()).unwrap();
        let ident = x.group_add(&SymForm::zero(m, k)).unwrap() == x;
        let inverse = x.group_add(&x.negate()).unwrap().is_zero();
        let hom = x.group_add(&y).unwrap().diagonal_entries()
            == x.diagonal_entries()
                .iter()
                .zip(y.diagonal_entries())
                .map(|(p, q)| (p + q) % (1 << k))
                .collect::<Vec<_>>();
        law_bad += usize::from(!(assoc && ident && inverse && hom));
    }
    Outcome {
        passed: distinct_ok && law_bad == 0,
        detail: format!("distinct diagonals {} [{}], group law failures {law_bad}/200", distinct_ok, sizes.join(" ")),
        budget: None,
        expected_fail: false,
    }
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = rng.gen_range(1..=2);
        let n = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=5);
        let l = rng.gen_range(1..=k);
        let f = SymForm::random(m, k, &mut rng);
        let g = SymForm::random(n, l, &mut rng);
        let t = f.tensor(&g).unwrap();
        worst = worst.max(dense_diagonal(&t).max_abs_diff(&dense_diagonal(&f).kron(&dense_diagonal(&g))));
    }
    let p_i = lookup("P").unwrap().form.tensor(&SymForm::zero(1, 3)).unwrap();
    let table_ok = p_i == lookup("P⊗I").unwrap().form;
    Outcome {
        passed: worst <= 1e-12 && table_ok,
        detail: format!("100 random pairs, max deviation {worst:.1e}; P ⊗ I₂ equals table entry: {table_ok}"),
        budget: None,
        expected_fail: false,
    }
}

fn criterion_12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0f64;
    let mut commuting = true;
    for _ in 0..50 {
        let circuit = Circuit::random_cdc(2, 3, 2, &mut rng);
        let report = verify_against_oracle(&circuit).unwrap();
        worst = worst.max(report.max_deviation);
        commuting &= report.commuting;
    }
    let mut z_fixed = true;
    for m in 1..=3 {
        let gens = initial_stabilizer(m);
        for _ in 0..20 {
            let form = SymForm::random(m, rng.gen_range(1..=4), &mut rng);
            for (before, after) in gens.iter().zip(apply_diagonal(&gens, &form).unwrap()) {
                z_fixed &= before.label == after.label
                    && before.phase == after.phase
                    && before.sign == after.sign
                    && matches!(after.residual, Residual::None);
            }
        }
    }
    Outcome {
        passed: worst <= 1e-8 && commuting && z_fixed,
        detail: format!("50 circuits, max deviation {worst:.1e}, commuting {commuting}, Z-type fixed {z_fixed}"),
        budget: None,
        expected_fail: false,
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("T conjugation of X", criterion_1),
        ("standard gate table", criterion_2),
        ("CCZ infeasible", criterion_3),
        ("escalating synthesis", criterion_4),
        ("CCZ companion and group order", criterion_5),
        ("conjugation exactness", criterion_6),
        ("level-2 q vanishes mod 4", criterion_7),
        ("q-function identities", criterion_8),
        ("hierarchy membership", criterion_9),
        ("isomorphism and group law", criterion_10),
        ("tensor products", criterion_11),
        ("stabilizer tracking", criterion_12),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if let Some(budget) = out.budget {
            if elapsed > budget {
                out.passed = false;
                out.detail.push_str(&format!(", over budget {budget:?}"));
            }
        }
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {n:>2} {name}: {} ({:.2}s)", out.detail, elapsed.as_secs_f64());
        if !out.passed && !out.expected_fail {
            unexpected += 1;
        }
        if out.expected_fail {
            println!("       known: the printed second equality omits a constant label-carry phase");
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria did not match their expected outcome");
        std::process::exit(1);
    }
}
