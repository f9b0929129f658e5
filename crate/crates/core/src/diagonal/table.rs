use serde::Serialize;

use super::form::SymForm;

/// A named standard gate and its form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedGate {
    pub name: &'static str,
    pub form: SymForm,
}

fn named(name: &'static str, rows: &[&[i64]]) -> NamedGate {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    NamedGate {
        name,
        form: SymForm::from_rows(3, &rows).expect("table entries are symmetric"),
    }
}

/// Standard one- and two-qubit diagonal gates at level 3.
pub fn standard_gate_table() -> Vec<NamedGate> {
    vec![
        named("I", &[&[0]]),
        named("P", &[&[2]]),
        named("Z", &[&[4]]),
        named("P†", &[&[6]]),
        named("T", &[&[1]]),
        named("TZ", &[&[5]]),
        named("T†", &[&[7]]),
        named("T†Z", &[&[3]]),
        named("CZ", &[&[0, 2], &[2, 0]]),
        named("CP", &[&[0, 1], &[1, 0]]),
        named("I⊗P", &[&[0, 0], &[0, 2]]),
        named("I⊗Z", &[&[0, 0], &[0, 4]]),
        named("P⊗I", &[&[2, 0], &[0, 0]]),
        named("Z⊗I", &[&[4, 0], &[0, 0]]),
    ]
}

pub fn lookup(name: &str) -> Option<NamedGate> {
    standard_gate_table().into_iter().find(|g| g.name == name)
}

/// The level-3 form equal to `exp(iπ/8 · Z⊗Z⊗Z) · CCZ` up to the global
/// phase `exp(−iπ/8)`: diagonal 7, off-diagonal −3 ≡ 1 (mod 4).
pub fn ccz_companion() -> SymForm {
    SymForm::from_rows(3, &[vec![7, 5, 5], vec![5, 7, 5], vec![5, 5, 7]])
        .expect("symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        let t = standard_gate_table();
        assert_eq!(t.len(), 14);
        assert_eq!(lookup("Z").unwrap().form.diagonal_entries(), vec![0, 4]);
        assert_eq!(lookup("CP").unwrap().form.diagonal_entries(), vec![0, 0, 0, 2]);
        assert!(lookup("H").is_none());
    }

    #[test]
    fn companion_form() {
        let r = ccz_companion();
        assert_eq!(r.rows(), vec![vec![7, 1, 1], vec![1, 7, 1], vec![1, 1, 7]]);
        let e = r.diagonal_entries();
        assert_eq!(e[7], 3);
        assert_eq!(e, vec![0, 7, 7, 0, 7, 0, 0, 3]);
        let variant = SymForm::from_rows(3, &[vec![7, 1, 1], vec![1, 7, 1], vec![1, 1, 7]]).unwrap();
        assert_eq!(variant, r);
    }
}
