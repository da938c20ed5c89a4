use apolar_core::apolarity::{self, RankBranch};
use apolar_core::poly::{parse_poly, parse_poly_infer};
use apolar_core::random::{derive_seed, generic_form, rng};
use apolar_core::scalar::parse_rational;
use apolar_core::{HomogPoly, ProjPoint};
use serde_json::{json, Value};

use super::{join, matrix_text, render_monomial, render_rows, render_vec};
use crate::config::RunConfig;
use crate::report::Report;
use crate::{CliError, FormArgs};

fn parse_form(text: &str, vars: Option<usize>) -> Result<HomogPoly, CliError> {
    Ok(match vars {
        Some(n) => parse_poly(text, n)?,
        None => parse_poly_infer(text)?,
    })
}

/// Parsed or generated form plus its echo for the `inputs` field.
pub fn load_form(args: &FormArgs, cfg: &RunConfig) -> Result<(HomogPoly, Value), CliError> {
    if let Some(degree) = args.generic {
        let vars = args.vars.expect("clap requires --vars with --generic");
        if vars == 0 || vars > apolar_core::poly::MAX_VARS {
            return Err(apolar_core::Error::TooManyVariables(vars).into());
        }
        if degree > apolar_core::poly::MAX_DEGREE {
            return Err(apolar_core::Error::DegreeTooLarge(degree).into());
        }
        let form = generic_form(&mut rng(derive_seed(cfg.seed, 0)), vars, degree);
        let echo =
            json!({ "generic": { "vars": vars, "degree": degree }, "form": form.to_string() });
        return Ok((form, echo));
    }
    let text = args
        .form
        .as_deref()
        .expect("clap requires --form or --generic");
    let form = parse_form(text, args.vars)?;
    Ok((
        form.clone(),
        json!({ "form": form.to_string(), "vars": form.num_vars() }),
    ))
}

fn branch_name(b: RankBranch) -> &'static str {
    match b {
        RankBranch::SquareFreeAtD1 => "square_free_at_d1",
        RankBranch::FellThroughToD2 => "fell_through_to_d2",
        RankBranch::Formula => "formula",
        RankBranch::MatrixRank => "matrix_rank",
    }
}

pub fn rank_binary(form: &str, cfg: &RunConfig) -> Result<Report, CliError> {
    let f = parse_poly(form, 2)?;
    let cert = apolarity::sylvester_rank(&f)?;
    let witness = cert.witness.as_ref().map(|w| w.render('y'));
    let branch = branch_name(cert.branch);
    let text = format!(
        "rank {}\nwitness {} ({branch})",
        cert.rank,
        witness.as_deref().unwrap_or("-")
    );
    Ok(Report::new(
        "rank binary",
        json!({ "form": f.to_string() }),
        json!({ "rank": cert.rank, "branch": branch, "witness": witness }),
        cfg.provenance(true),
        text,
    ))
}

pub fn rank_monomial(exponents: &[u32], cfg: &RunConfig) -> Result<Report, CliError> {
    let rank = apolarity::monomial_rank(exponents)?;
    let value = match u64::try_from(rank) {
        Ok(r) => json!(r),
        Err(_) => json!(rank.to_string()),
    };
    Ok(Report::new(
        "rank monomial",
        json!({ "exponents": exponents }),
        json!({ "rank": value, "branch": branch_name(RankBranch::Formula) }),
        cfg.provenance(true),
        format!("rank {rank}"),
    ))
}

pub fn rank_quadratic(
    form: &str,
    vars: Option<usize>,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let f = parse_form(form, vars)?;
    let rank = apolarity::quadratic_rank_with(&f, cfg.arithmetic)?;
    Ok(Report::new(
        "rank quadratic",
        json!({ "form": f.to_string(), "vars": f.num_vars() }),
        json!({ "rank": rank, "branch": branch_name(RankBranch::MatrixRank) }),
        cfg.provenance(cfg.is_exact()),
        format!("rank {rank}"),
    ))
}

pub fn perp(args: &FormArgs, degree: Option<u32>, cfg: &RunConfig) -> Result<Report, CliError> {
    let (f, inputs) = load_form(args, cfg)?;
    if f.is_zero() {
        return Err(apolar_core::Error::ZeroPolynomial.into());
    }
    let degrees: Vec<u32> = match degree {
        Some(t) => vec![t],
        None => (0..=f.degree() + 1).collect(),
    };
    let mut pieces = Vec::new();
    let mut text = Vec::new();
    for t in degrees {
        let basis: Vec<String> = apolarity::perp_piece(&f, t)
            .iter()
            .map(|g| g.render('y'))
            .collect();
        text.push(format!(
            "degree {t} (dim {}): {}",
            basis.len(),
            if basis.is_empty() {
                "-".to_string()
            } else {
                basis.join(", ")
            }
        ));
        pieces.push(json!({ "degree": t, "dim": basis.len(), "basis": basis }));
    }
    let mut inputs = inputs;
    inputs["degree"] = json!(degree);
    Ok(Report::new(
        "perp",
        inputs,
        json!({ "pieces": pieces }),
        cfg.provenance(true),
        text.join("\n"),
    ))
}

pub fn hilbert(args: &FormArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let (f, inputs) = load_form(args, cfg)?;
    let profile = apolarity::hilbert_function_with(&f, cfg.arithmetic)?;
    let text = format!(
        "form {}\nhf   ({})\nperp ({})",
        f,
        join(&profile.hf),
        join(&profile.perp_dims)
    );
    Ok(Report::new(
        "hilbert",
        inputs,
        json!({
            "degree": profile.degree,
            "hf": profile.hf,
            "perp_dims": profile.perp_dims,
            "symmetric": profile.is_symmetric(),
        }),
        cfg.provenance(cfg.is_exact()),
        text,
    ))
}

pub fn catalecticant(args: &FormArgs, t: u32, cfg: &RunConfig) -> Result<Report, CliError> {
    let (f, mut inputs) = load_form(args, cfg)?;
    let cat = apolarity::catalecticant(&f, t)?;
    let rows = render_rows(&cat.matrix);
    let rank = cat.matrix.rank_with(cfg.arithmetic);
    let row_basis: Vec<String> = cat
        .row_basis()
        .iter()
        .map(|m| render_monomial(m, 'x'))
        .collect();
    let col_basis: Vec<String> = cat
        .col_basis()
        .iter()
        .map(|m| render_monomial(m, 'y'))
        .collect();
    let text = format!(
        "rows {}\ncols {}\n{}\nrank {rank}",
        row_basis.join(" "),
        col_basis.join(" "),
        matrix_text(&rows)
    );
    inputs["t"] = json!(t);
    Ok(Report::new(
        "catalecticant",
        inputs,
        json!({ "matrix": rows, "row_basis": row_basis, "col_basis": col_basis, "rank": rank }),
        cfg.provenance(cfg.is_exact()),
        text,
    ))
}

/// `"1:1,-1:1"` to points.
pub fn parse_points(text: &str) -> Result<Vec<ProjPoint>, CliError> {
    text.split(',')
        .map(|p| {
            let coords = p
                .split(':')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ProjPoint::new(coords)?)
        })
        .collect()
}

pub fn decompose_check(
    form: &str,
    vars: Option<usize>,
    points: &str,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let points = parse_points(points)?;
    let vars = vars.or_else(|| points.first().map(|p| p.coordinates().len()));
    let f = parse_form(form, vars)?;
    let solution = apolarity::decompose_check(&f, &points)?;
    let coefficients = solution.as_deref().map(render_vec);
    let text = match &coefficients {
        Some(c) => format!("feasible\ncoefficients {}", c.join(", ")),
        None => "infeasible".to_string(),
    };
    let rendered: Vec<Vec<String>> = points.iter().map(|p| render_vec(p.coordinates())).collect();
    Ok(Report::new(
        "decompose-check",
        json!({ "form": f.to_string(), "points": rendered }),
        json!({ "feasible": coefficients.is_some(), "coefficients": coefficients }),
        cfg.provenance(true),
        text,
    ))
}
