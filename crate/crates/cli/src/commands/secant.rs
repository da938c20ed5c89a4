use apolar_core::secant::{self, DimReport, VarietySpec};
use serde_json::json;

use crate::config::RunConfig;
use crate::report::Report;
use crate::CliError;

fn dim_text(r: &DimReport) -> String {
    format!(
        "dim {} (expected {}, ambient {}, defect {}){}",
        r.computed_dim,
        r.expected_dim,
        r.ambient_dim,
        r.defect,
        if r.certified {
            ""
        } else {
            "\nunexpected defect: not in the known-defective table"
        }
    )
}

fn dim_report(
    command: &str,
    spec: VarietySpec,
    s: usize,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let report = secant::defect_report(&spec, s, &cfg.trial_config())?;
    let certified = report.certified && cfg.is_exact();
    Ok(Report::new(
        command,
        json!({ "spec": spec, "s": s }),
        serde_json::to_value(&report).expect("report serializes"),
        cfg.provenance(certified),
        dim_text(&report),
    ))
}

pub fn veronese(n: usize, d: u32, s: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    dim_report("secant-dim veronese", VarietySpec::veronese(n, d)?, s, cfg)
}

pub fn segre(dims: &[usize], s: usize, cfg: &RunConfig) -> Result<Report, CliError> {
    dim_report(
        "secant-dim segre",
        VarietySpec::segre(dims.to_vec())?,
        s,
        cfg,
    )
}

pub fn ah_g(n: usize, d: u32, verify: bool, cfg: &RunConfig) -> Result<Report, CliError> {
    let g = secant::big_waring_g(n, d)?;
    let mut result = json!({ "g": g });
    let mut text = format!("g({n},{d}) = {g}");
    let mut certified = true;
    if verify {
        let filling = secant::filling_rank(&VarietySpec::veronese(n, d)?, &cfg.trial_config())?;
        certified = filling == g && cfg.is_exact();
        result["filling_rank"] = json!(filling);
        result["agrees"] = json!(filling == g);
        text.push_str(&format!("\nfilling rank by dimension count {filling}"));
    }
    Ok(Report::new(
        "ah-g",
        json!({ "n": n, "d": d, "verify": verify }),
        result,
        cfg.provenance(certified),
        text,
    ))
}
