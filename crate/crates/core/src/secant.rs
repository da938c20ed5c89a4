//! Dimensions of secant varieties via Terracini's lemma.
//!
//! The affine tangent space to `sigma_s(X)` at a general point is the span
//! of the tangent spaces at `s` general points of `X`. Sampling random
//! rational points and taking the rank of the stacked tangent vectors gives
//! a lower bound for the dimension of the affine cone that equals it away
//! from a proper closed set of bad samples; repeated trials keep the max.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{binomial, monomials};
use crate::random::{derive_seed, generic_point, rng};
use crate::scalar::{Arithmetic, ArithmeticMode, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VarietySpec {
    /// `nu_d(P^n)`.
    Veronese { n: usize, d: u32 },
    /// `P^n1 x ... x P^nt`.
    Segre { dims: Vec<usize> },
}

impl VarietySpec {
    pub fn veronese(n: usize, d: u32) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Invalid(format!(
                "Veronese needs n >= 1 and d >= 1, got n={n}, d={d}"
            )));
        }
        Ok(Self::Veronese { n, d })
    }

    pub fn segre(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Invalid(format!(
                "Segre factors must all be >= 1, got {dims:?}"
            )));
        }
        Ok(Self::Segre { dims })
    }

    /// Dimension of the variety itself.
    pub fn dim(&self) -> usize {
        match self {
            Self::Veronese { n, .. } => *n,
            Self::Segre { dims } => dims.iter().sum(),
        }
    }

    /// `N` for the ambient `P^N`.
    pub fn ambient_dim(&self) -> usize {
        match self {
            Self::Veronese { n, d } => binomial((*n as u64) + (*d as u64), *d as u64) as usize - 1,
            Self::Segre { dims } => dims.iter().map(|n| n + 1).product::<usize>() - 1,
        }
    }
}

/// `min(s * dim X + s - 1, N)`.
pub fn expected_dim(spec: &VarietySpec, s: usize) -> usize {
    (s * spec.dim() + s)
        .saturating_sub(1)
        .min(spec.ambient_dim())
}

/// Trial parameters shared by the Terracini engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub arithmetic: Arithmetic,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 3,
            arithmetic: Arithmetic::Exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub spec: VarietySpec,
    pub s: usize,
    pub computed_dim: usize,
    pub expected_dim: usize,
    pub ambient_dim: usize,
    pub defect: i64,
    pub trials: usize,
    pub seed: u64,
    pub arithmetic_mode: ArithmeticMode,
    /// The computed value equals the expected dimension, or matches a known
    /// defective case.
    pub certified: bool,
}

impl DimReport {
    fn new(spec: VarietySpec, s: usize, computed_dim: usize, cfg: &TrialConfig) -> Self {
        let expected = expected_dim(&spec, s);
        let defect = expected as i64 - computed_dim as i64;
        let certified = defect == 0 || known_defect(&spec, s) == Some(defect as usize);
        Self {
            ambient_dim: spec.ambient_dim(),
            spec,
            s,
            computed_dim,
            expected_dim: expected,
            defect,
            trials: cfg.trials,
            seed: cfg.seed,
            arithmetic_mode: cfg.arithmetic.mode(),
            certified,
        }
    }
}

/// Known defects: quadrics (symmetric matrices of bounded rank), the four
/// sporadic Alexander-Hirschowitz cases, two-factor Segre products (matrices
/// of bounded rank), `(P^1)^4` with three points and `(P^2)^3` with four.
pub fn known_defect(spec: &VarietySpec, s: usize) -> Option<usize> {
    let expected = expected_dim(spec, s);
    let actual = match spec {
        VarietySpec::Veronese { n, d: 2 } => {
            let n = *n as u64;
            let full = binomial(n + 2, 2);
            let drop = binomial((n + 2).saturating_sub(s as u64), 2);
            (full - drop) as usize - 1
        }
        VarietySpec::Veronese { n, d } => match (*n, *d, s) {
            (2, 4, 5) | (3, 4, 9) | (4, 4, 14) | (4, 3, 7) => expected - 1,
            _ => return None,
        },
        VarietySpec::Segre { dims } if dims.len() == 2 => {
            let (a, b) = (dims[0], dims[1]);
            let r = s.min(a.min(b) + 1);
            (r * (a + b + 2 - r) - 1).min(spec.ambient_dim())
        }
        VarietySpec::Segre { dims } => match (dims.as_slice(), s) {
            ([1, 1, 1, 1], 3) | ([2, 2, 2], 4) => expected - 1,
            _ => return None,
        },
    };
    (expected > actual).then(|| expected - actual)
}

/// Stacked gradients of the degree `d` monomials at the given points: one
/// row per point and variable. Its kernel is the space of degree `d` forms
/// singular at every point.
pub fn veronese_terracini_matrix(n: usize, d: u32, points: &[Vec<Rational>]) -> QMatrix {
    let basis = monomials(n + 1, d);
    let mut entries = Vec::with_capacity(points.len() * (n + 1) * basis.len());
    for p in points {
        assert_eq!(p.len(), n + 1, "point length");
        let powers: Vec<Vec<Rational>> = p
            .iter()
            .map(|x| {
                let mut v = vec![Rational::one()];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        for i in 0..=n {
            for m in &basis {
                let e = m.exponents();
                if e[i] == 0 {
                    entries.push(Rational::from_integer(BigInt::from(0)));
                    continue;
                }
                let mut v = Rational::from_integer(BigInt::from(e[i]));
                for (j, &ej) in e.iter().enumerate() {
                    let ej = if j == i { ej - 1 } else { ej } as usize;
                    if ej > 0 {
                        v *= &powers[j][ej];
                    }
                }
                entries.push(v);
            }
        }
    }
    QMatrix::new(points.len() * (n + 1), basis.len(), entries).expect("sized")
}

/// Tangent vectors to the Segre variety at each rank-one tensor
/// `v1 (x) ... (x) vt`: every factor in turn replaced by each standard basis
/// vector. Entries are listed with the last index fastest.
pub fn segre_terracini_matrix(dims: &[usize], points: &[Vec<Vec<Rational>>]) -> QMatrix {
    let sizes: Vec<usize> = dims.iter().map(|n| n + 1).collect();
    let len: usize = sizes.iter().product();
    let per_point: usize = sizes.iter().sum();
    let mut entries = Vec::with_capacity(points.len() * per_point * len);
    for factors in points {
        assert_eq!(factors.len(), dims.len(), "factor count");
        for (i, &size) in sizes.iter().enumerate() {
            for k in 0..size {
                let mut idx = vec![0usize; sizes.len()];
                for _ in 0..len {
                    let mut v = Rational::one();
                    for (m, &j) in idx.iter().enumerate() {
                        if m == i {
                            if j != k {
                                v = Rational::from_integer(BigInt::from(0));
                                break;
                            }
                        } else {
                            v *= &factors[m][j];
                        }
                    }
                    entries.push(v);
                    increment(&mut idx, &sizes);
                }
            }
        }
    }
    QMatrix::new(points.len() * per_point, len, entries).expect("sized")
}

/// Advances a multi-index with the last position fastest.
pub(crate) fn increment(idx: &mut [usize], sizes: &[usize]) {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < sizes[pos] {
            return;
        }
        idx[pos] = 0;
    }
}

fn max_over_trials<F>(cfg: &TrialConfig, rank_for_seed: F) -> usize
where
    F: Fn(u64) -> usize + Sync,
{
    (0..cfg.trials.max(1) as u64)
        .into_par_iter()
        .map(|k| rank_for_seed(derive_seed(cfg.seed, k)))
        .max()
        .unwrap_or(0)
}

/// Dimension of `sigma_s(nu_d(P^n))` from the rank of the gradient matrix at
/// `s` random points.
pub fn terracini_dim_veronese(n: usize, d: u32, s: usize, cfg: &TrialConfig) -> Result<DimReport> {
    let spec = VarietySpec::veronese(n, d)?;
    if s == 0 {
        return Err(Error::Invalid("s must be at least 1".into()));
    }
    let rank = max_over_trials(cfg, |seed| {
        let mut r = rng(seed);
        let points: Vec<Vec<Rational>> = (0..s).map(|_| generic_point(&mut r, n + 1)).collect();
        veronese_terracini_matrix(n, d, &points).rank_with(cfg.arithmetic)
    });
    Ok(DimReport::new(spec, s, rank.saturating_sub(1), cfg))
}

/// Dimension of `sigma_s(P^n1 x ... x P^nt)` from the rank of the stacked
/// tangent vectors at `s` random rank-one tensors.
pub fn terracini_dim_segre(dims: &[usize], s: usize, cfg: &TrialConfig) -> Result<DimReport> {
    let spec = VarietySpec::segre(dims.to_vec())?;
    if s == 0 {
        return Err(Error::Invalid("s must be at least 1".into()));
    }
    let rank = max_over_trials(cfg, |seed| {
        let mut r = rng(seed);
        let points: Vec<Vec<Vec<Rational>>> = (0..s)
            .map(|_| dims.iter().map(|&n| generic_point(&mut r, n + 1)).collect())
            .collect();
        segre_terracini_matrix(dims, &points).rank_with(cfg.arithmetic)
    });
    Ok(DimReport::new(spec, s, rank.saturating_sub(1), cfg))
}

/// Expected versus computed dimension for either kind of variety.
pub fn defect_report(spec: &VarietySpec, s: usize, cfg: &TrialConfig) -> Result<DimReport> {
    match spec {
        VarietySpec::Veronese { n, d } => terracini_dim_veronese(*n, *d, s, cfg),
        VarietySpec::Segre { dims } => terracini_dim_segre(dims, s, cfg),
    }
}

/// Waring rank of a general form of degree `d` in `n + 1` variables, by the
/// Alexander-Hirschowitz theorem.
pub fn big_waring_g(n: usize, d: u32) -> Result<usize> {
    if n == 0 || d == 0 {
        return Err(Error::Invalid(format!(
            "need n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    Ok(match (n, d) {
        (_, 2) => n + 1,
        (2, 4) => 6,
        (3, 4) => 10,
        (4, 3) => 8,
        (4, 4) => 15,
        _ => {
            let forms = binomial(n as u64 + d as u64, n as u64) as usize;
            forms.div_ceil(n + 1)
        }
    })
}

/// Smallest `s` with `sigma_s` filling the ambient space, by the engine.
pub fn filling_rank(spec: &VarietySpec, cfg: &TrialConfig) -> Result<usize> {
    let n = spec.ambient_dim();
    for s in 1..=n + 1 {
        if defect_report(spec, s, cfg)?.computed_dim == n {
            return Ok(s);
        }
    }
    unreachable!("N + 1 general points span P^N")
}
