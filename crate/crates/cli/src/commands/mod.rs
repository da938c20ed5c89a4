pub mod forms;
pub mod secant;
pub mod tensor;

use apolar_core::scalar::render_rational;
use apolar_core::{Monomial, QMatrix, Rational};

pub fn render_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(render_rational).collect()
}

pub fn render_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| render_vec(m.row(i))).collect()
}

pub fn render_monomial(m: &Monomial, var: char) -> String {
    let s = m.render(var);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Right-aligned columns, one matrix row per line.
pub fn matrix_text(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|e| format!("{e:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
