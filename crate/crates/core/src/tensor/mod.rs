//! Dense tensors over Q: flattenings, multilinear rank, the matrix
//! multiplication tensor and Strassen's equation for 3x3x3 tensors.
//!
//! Tensor rank itself is never computed; flattenings give lower bounds on
//! border rank and the Strassen matrix certifies non-membership in
//! `sigma_4(P^2 x P^2 x P^2)`.

mod json;
mod strassen;

pub use json::{tensor_from_json, tensor_from_str, tensor_to_json, TensorJson};
pub use strassen::{
    strassen_det_symbolic, strassen_matrix, strassen_matrix_symbolic, symbolic_det, StrassenMatrix,
};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::{Arithmetic, Rational};
use crate::secant::increment;

/// Element of `V1 (x) ... (x) Vt`, entries listed with the last index
/// fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    entries: Vec<Rational>,
}

impl DenseTensor {
    pub fn new(shape: Vec<usize>, entries: Vec<Rational>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if shape.is_empty() || len == 0 {
            return Err(Error::Invalid(format!(
                "tensor shape {shape:?} has no entries"
            )));
        }
        if entries.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: entries.len(),
            });
        }
        Ok(Self { shape, entries })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        Self {
            shape,
            entries: vec![Rational::zero(); len],
        }
    }

    /// `v1 (x) v2 (x) ... (x) vt`.
    pub fn rank_one(factors: &[Vec<Rational>]) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(Vec::is_empty) {
            return Err(Error::Invalid(
                "rank-one tensor needs nonempty factors".into(),
            ));
        }
        let shape: Vec<usize> = factors.iter().map(Vec::len).collect();
        let len: usize = shape.iter().product();
        let mut entries = Vec::with_capacity(len);
        let mut idx = vec![0; shape.len()];
        for _ in 0..len {
            let v = idx
                .iter()
                .zip(factors)
                .fold(Rational::one(), |acc, (&i, f)| acc * &f[i]);
            entries.push(v);
            increment(&mut idx, &shape);
        }
        Ok(Self { shape, entries })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index order");
        idx.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| {
            assert!(i < n, "index out of range");
            acc * n + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.entries[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Rational) {
        let o = self.offset(idx);
        self.entries[o] = v;
    }

    pub fn add(&self, other: &DenseTensor) -> Result<DenseTensor> {
        if self.shape != other.shape {
            return Err(Error::WrongShape {
                expected: self.shape.clone(),
                got: other.shape.clone(),
            });
        }
        Ok(DenseTensor {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> DenseTensor {
        DenseTensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// For an order-3 tensor, the vector `sum T[a][b][c] u_a v_b` indexed by
    /// `c`: the bilinear map the tensor represents.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        if self.order() != 3 || u.len() != self.shape[0] || v.len() != self.shape[1] {
            return Err(Error::WrongShape {
                expected: vec![u.len(), v.len(), self.shape.get(2).copied().unwrap_or(0)],
                got: self.shape.clone(),
            });
        }
        let mut out = vec![Rational::zero(); self.shape[2]];
        for (a, ua) in u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, vb) in v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let w = ua * vb;
                for (c, o) in out.iter_mut().enumerate() {
                    let t = self.get(&[a, b, c]);
                    if !t.is_zero() {
                        *o += &w * t;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Modes placed on the row side of a flattening (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatteningSpec {
    left_modes: Vec<usize>,
}

impl FlatteningSpec {
    /// Validates a nonempty proper subset of `0..order`.
    pub fn new(mut modes: Vec<usize>, order: usize) -> Result<Self> {
        let original = modes.clone();
        modes.sort_unstable();
        modes.dedup();
        if modes.is_empty()
            || modes.len() != original.len()
            || modes.len() >= order
            || modes.iter().any(|&m| m >= order)
        {
            return Err(Error::InvalidModeSet {
                modes: original,
                order,
            });
        }
        Ok(Self { left_modes: modes })
    }

    /// The flattening `V_mode^* -> (tensor of the others)`.
    pub fn single(mode: usize, order: usize) -> Result<Self> {
        Self::new(vec![mode], order)
    }

    pub fn left_modes(&self) -> &[usize] {
        &self.left_modes
    }

    pub fn complement(&self, order: usize) -> Vec<usize> {
        (0..order)
            .filter(|m| !self.left_modes.contains(m))
            .collect()
    }
}

/// Matrix with rows indexed by the left modes and columns by the others,
/// each side merged lexicographically in ascending mode order.
pub fn flatten(t: &DenseTensor, spec: &FlatteningSpec) -> Result<QMatrix> {
    let order = t.order();
    if spec.left_modes.iter().any(|&m| m >= order) || spec.left_modes.len() >= order {
        return Err(Error::InvalidModeSet {
            modes: spec.left_modes.clone(),
            order,
        });
    }
    let right = spec.complement(order);
    let rows: usize = spec.left_modes.iter().map(|&m| t.shape[m]).product();
    let cols: usize = right.iter().map(|&m| t.shape[m]).product();
    let mut out = QMatrix::zeros(rows, cols);
    let mut idx = vec![0; order];
    for v in &t.entries {
        if !v.is_zero() {
            let merge = |modes: &[usize]| modes.iter().fold(0, |acc, &m| acc * t.shape[m] + idx[m]);
            out.set(merge(&spec.left_modes), merge(&right), v.clone());
        }
        increment(&mut idx, &t.shape);
    }
    Ok(out)
}

/// Ranks of the mode-`i` flattenings, `i = 1..t`.
pub fn multilinear_rank(t: &DenseTensor) -> Result<Vec<usize>> {
    multilinear_rank_with(t, Arithmetic::Exact)
}

pub fn multilinear_rank_with(t: &DenseTensor, arithmetic: Arithmetic) -> Result<Vec<usize>> {
    (0..t.order())
        .map(|m| Ok(flatten(t, &FlatteningSpec::single(m, t.order())?)?.rank_with(arithmetic)))
        .collect()
}

/// Whether every `(r+1) x (r+1)` minor of every 1-flattening vanishes, i.e.
/// `T` lies in the subspace variety `Sub_(r,...,r)`. Necessary for border
/// rank at most `r`.
pub fn gss_minor_test(t: &DenseTensor, r: usize) -> Result<bool> {
    Ok(multilinear_rank(t)?.iter().all(|&k| k <= r))
}

/// Structure tensor of `n x n` matrix multiplication, shape `(n^2, n^2, n^2)`:
/// entry `[(i,j), (k,l), (p,q)]` is 1 iff `j = k`, `i = p` and `l = q`.
pub fn matmul_tensor(n: usize) -> Result<DenseTensor> {
    if n == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    let m = n * n;
    let mut t = DenseTensor::zeros(vec![m, m, m]);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                t.set(&[i * n + j, j * n + l, i * n + l], Rational::one());
            }
        }
    }
    Ok(t)
}
