//! JSON exchange format for tensors.
//!
//! Either `{"shape": [..], "entries": [..]}` with entries as integers or
//! `"p/q"` strings, or `{"rank_one_sum": [{"factors": [[..], ..], "coeff": "p/q"}]}`.

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::DenseTensor;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, render_rational, Rational};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Int(v) => Ok(crate::scalar::int(*v)),
            Scalar::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct RankOneTerm {
    factors: Vec<Vec<Scalar>>,
    #[serde(default)]
    coeff: Option<Scalar>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum TensorJson {
    Dense {
        shape: Vec<usize>,
        entries: Vec<Scalar>,
    },
    RankOneSum {
        rank_one_sum: Vec<RankOneTerm>,
    },
}

fn rationals(xs: &[Scalar]) -> Result<Vec<Rational>> {
    xs.iter().map(Scalar::to_rational).collect()
}

impl TensorJson {
    pub fn into_tensor(self) -> Result<DenseTensor> {
        match self {
            TensorJson::Dense { shape, entries } => DenseTensor::new(shape, rationals(&entries)?),
            TensorJson::RankOneSum { rank_one_sum } => {
                let mut acc: Option<DenseTensor> = None;
                for term in rank_one_sum {
                    let factors = term
                        .factors
                        .iter()
                        .map(|f| rationals(f))
                        .collect::<Result<Vec<_>>>()?;
                    let coeff = match &term.coeff {
                        Some(c) => c.to_rational()?,
                        None => Rational::one(),
                    };
                    let t = DenseTensor::rank_one(&factors)?.scale(&coeff);
                    acc = Some(match acc {
                        Some(a) => a.add(&t)?,
                        None => t,
                    });
                }
                acc.ok_or_else(|| Error::Invalid("empty rank_one_sum".into()))
            }
        }
    }
}

pub fn tensor_from_json(value: &Value) -> Result<DenseTensor> {
    let parsed: TensorJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::Invalid(format!("not a tensor: {e}")))?;
    parsed.into_tensor()
}

pub fn tensor_from_str(text: &str) -> Result<DenseTensor> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: e.to_string(),
    })?;
    tensor_from_json(&value)
}

/// Dense form with every entry rendered as a string.
pub fn tensor_to_json(t: &DenseTensor) -> Value {
    json!({
        "shape": t.shape(),
        "entries": t.entries().iter().map(render_rational).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn round_trip() {
        let t = DenseTensor::new(vec![2, 2], vec![int(1), frac(-1, 3), int(0), int(7)]).unwrap();
        let v = tensor_to_json(&t);
        assert_eq!(v["entries"][1], "-1/3");
        assert_eq!(tensor_from_json(&v).unwrap(), t);
    }

    #[test]
    fn mixed_entries_and_rank_one_sums() {
        let t = tensor_from_str(r#"{"shape":[2],"entries":[3,"1/2"]}"#).unwrap();
        assert_eq!(t.entries(), &[int(3), frac(1, 2)]);
        let s = tensor_from_str(
            r#"{"rank_one_sum":[{"factors":[[1,0],[1,1]]},{"factors":[[0,1],[1,-1]],"coeff":"2"}]}"#,
        )
        .unwrap();
        assert_eq!(s.shape(), &[2, 2]);
        assert_eq!(s.entries(), &[int(1), int(1), int(2), int(-2)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(tensor_from_str(r#"{"shape":[2,2],"entries":[1,2,3]}"#).is_err());
        assert!(tensor_from_str(r#"{"rank_one_sum":[]}"#).is_err());
        assert!(tensor_from_str("[1,2]").is_err());
        assert!(tensor_from_str(r#"{"shape":[1],"entries":["1/0"]}"#).is_err());
    }
}
