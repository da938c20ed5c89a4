use std::io::Read;
use std::path::Path;

use apolar_core::scalar::render_rational;
use apolar_core::tensor::{self, DenseTensor, FlatteningSpec};
use num_traits::Zero;
use serde_json::{json, Value};

use super::{join, matrix_text, render_rows};
use crate::config::RunConfig;
use crate::report::Report;
use crate::CliError;

/// Reads tensor JSON from a file, or stdin when no file (or `-`) is given.
/// A report envelope whose result carries a `tensor` is also accepted, so
/// the JSON output of `tensor matmul` can be piped back in.
fn read_tensor(file: Option<&Path>) -> Result<(DenseTensor, Value), CliError> {
    let text = match file {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed tensor JSON: {e}")))?;
    let inner = match value.get("result").and_then(|r| r.get("tensor")) {
        Some(t) => t,
        None => &value,
    };
    let t = tensor::tensor_from_json(inner)?;
    let echo = json!({ "file": file.map(|p| p.display().to_string()), "shape": t.shape() });
    Ok((t, echo))
}

pub fn flatten(file: Option<&Path>, modes: &[usize], cfg: &RunConfig) -> Result<Report, CliError> {
    let (t, mut inputs) = read_tensor(file)?;
    if modes.contains(&0) {
        return Err(apolar_core::Error::InvalidModeSet {
            modes: modes.to_vec(),
            order: t.order(),
        }
        .into());
    }
    let spec = FlatteningSpec::new(modes.iter().map(|m| m - 1).collect(), t.order())?;
    let m = tensor::flatten(&t, &spec)?;
    let rank = m.rank_with(cfg.arithmetic);
    let rows = render_rows(&m);
    inputs["modes"] = json!(modes);
    let text = format!(
        "{} x {} flattening, rank {rank}\n{}",
        m.rows(),
        m.cols(),
        matrix_text(&rows)
    );
    Ok(Report::new(
        "tensor flatten",
        inputs,
        json!({ "rows": m.rows(), "cols": m.cols(), "matrix": rows, "rank": rank }),
        cfg.provenance(cfg.is_exact()),
        text,
    ))
}

pub fn mlrank(file: Option<&Path>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (t, inputs) = read_tensor(file)?;
    if t.order() < 2 {
        return Err(CliError::Input(
            "multilinear rank needs a tensor of order at least 2".into(),
        ));
    }
    let ranks = tensor::multilinear_rank_with(&t, cfg.arithmetic)?;
    Ok(Report::new(
        "tensor mlrank",
        inputs,
        json!({ "multilinear_rank": ranks }),
        cfg.provenance(cfg.is_exact()),
        format!("[{}]", join(&ranks)),
    ))
}

pub fn strassen(file: Option<&Path>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (t, inputs) = read_tensor(file)?;
    let phi = tensor::strassen_matrix(&t)?.matrix;
    let rank = phi.rank_with(cfg.arithmetic);
    let det = phi.det()?;
    let rows = render_rows(&phi);
    // rank(phi_T) <= 2 * rank(T)
    let lower_bound = rank.div_ceil(2);
    let text = format!(
        "{}\nrank {rank}\ndet {}\ntensor rank >= {lower_bound}{}",
        matrix_text(&rows),
        render_rational(&det),
        if det.is_zero() {
            ""
        } else {
            "\nnot in sigma_4: det is nonzero"
        }
    );
    Ok(Report::new(
        "tensor strassen",
        inputs,
        json!({
            "matrix": rows,
            "rank": rank,
            "det": render_rational(&det),
            "rank_lower_bound": lower_bound,
            "outside_sigma4": !det.is_zero(),
        }),
        cfg.provenance(cfg.is_exact()),
        text,
    ))
}

pub fn strassen_expand(show: bool, cfg: &RunConfig) -> Result<Report, CliError> {
    let det = tensor::strassen_det_symbolic();
    let mut result = json!({ "terms": det.len(), "degree": det.degree() });
    let mut text = format!("terms {}\ndegree {}", det.len(), det.degree());
    if show {
        let rendered = det.to_string();
        text.push('\n');
        text.push_str(&rendered);
        result["polynomial"] = json!(rendered);
    }
    Ok(Report::new(
        "tensor strassen-expand",
        json!({ "show": show, "variables": "T[a][b][c] = x(9a+3b+c)" }),
        result,
        cfg.provenance(true),
        text,
    ))
}

pub fn matmul(n: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    let t = tensor::matmul_tensor(n)?;
    let json_tensor = tensor::tensor_to_json(&t);
    let nonzero = t.entries().iter().filter(|e| !e.is_zero()).count();
    let text = serde_json::to_string(&json_tensor).expect("tensor serializes");
    Ok(Report::new(
        "tensor matmul",
        json!({ "n": n }),
        json!({ "shape": t.shape(), "nonzero": nonzero, "tensor": json_tensor }),
        cfg.provenance(true),
        text,
    ))
}

pub fn minors(file: Option<&Path>, r: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    if r == 0 {
        return Err(CliError::Input("--r must be at least 1".into()));
    }
    let (t, mut inputs) = read_tensor(file)?;
    if t.order() < 2 {
        return Err(CliError::Input(
            "flattenings need a tensor of order at least 2".into(),
        ));
    }
    let ranks = tensor::multilinear_rank_with(&t, cfg.arithmetic)?;
    let vanish = ranks.iter().all(|&k| k <= r);
    inputs["r"] = json!(r);
    let text = format!(
        "multilinear rank [{}]\n({}x{}) minors {}",
        join(&ranks),
        r + 1,
        r + 1,
        if vanish {
            "all vanish"
        } else {
            "do not all vanish: border rank > r"
        }
    );
    Ok(Report::new(
        "tensor minors",
        inputs,
        json!({ "r": r, "multilinear_rank": ranks, "minors_vanish": vanish }),
        cfg.provenance(cfg.is_exact()),
        text,
    ))
}
