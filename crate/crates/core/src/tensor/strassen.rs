//! The 9x9 matrix attached to a 3x3x3 tensor whose determinant is
//! Strassen's degree 9 equation for `sigma_4(P^2 x P^2 x P^2)`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::DenseTensor;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::HomogPoly;
use crate::scalar::Rational;

/// Sign and slice of each 3x3 block: `[[0, T1, -T2], [-T1, 0, T3],
/// [T2, -T3, 0]]`, slices taken along the first mode.
const BLOCKS: [[Option<(bool, usize)>; 3]; 3] = [
    [None, Some((false, 0)), Some((true, 1))],
    [Some((true, 0)), None, Some((false, 2))],
    [Some((false, 1)), Some((true, 2)), None],
];

fn assemble<E: Clone>(
    slice: impl Fn(usize, usize, usize) -> E,
    neg: impl Fn(&E) -> E,
    zero: E,
) -> Vec<Vec<E>> {
    let mut out = vec![vec![zero; 9]; 9];
    for (bi, block_row) in BLOCKS.iter().enumerate() {
        for (bj, block) in block_row.iter().enumerate() {
            let Some((negate, s)) = *block else { continue };
            for j in 0..3 {
                for k in 0..3 {
                    let e = slice(s, j, k);
                    out[3 * bi + j][3 * bj + k] = if negate { neg(&e) } else { e };
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrassenMatrix {
    pub tensor: DenseTensor,
    pub matrix: QMatrix,
}

pub fn strassen_matrix(t: &DenseTensor) -> Result<StrassenMatrix> {
    if t.shape() != [3, 3, 3] {
        return Err(Error::WrongShape {
            expected: vec![3, 3, 3],
            got: t.shape().to_vec(),
        });
    }
    let rows = assemble(
        |s, j, k| t.get(&[s, j, k]).clone(),
        |e| -e.clone(),
        Rational::zero(),
    );
    let matrix = QMatrix::from_rows(rows).expect("9x9");
    Ok(StrassenMatrix {
        tensor: t.clone(),
        matrix,
    })
}

/// The Strassen matrix of the generic tensor, whose entry `T[a][b][c]` is
/// the variable `x_(9a + 3b + c)`.
pub fn strassen_matrix_symbolic() -> Vec<Vec<HomogPoly>> {
    assemble(
        |s, j, k| HomogPoly::var(27, 9 * s + 3 * j + k),
        HomogPoly::neg,
        HomogPoly::zero(27, 1),
    )
}

/// Determinant of a square matrix of forms by Laplace expansion with the
/// minors on the remaining rows shared across column subsets. Rows with
/// the most zero entries are expanded first.
pub fn symbolic_det(m: &[Vec<HomogPoly>]) -> HomogPoly {
    let n = m.len();
    assert!(
        n > 0 && n < 32 && m.iter().all(|r| r.len() == n),
        "square matrix of size < 32"
    );
    let num_vars = m[0][0].num_vars();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&r| std::cmp::Reverse(m[r].iter().filter(|e| e.is_zero()).count()));
    let odd = permutation_is_odd(&order);

    // minors[mask] = det of rows order[n-|mask|..] against columns in mask
    let mut minors: HashMap<u32, HomogPoly> = HashMap::new();
    minors.insert(0, HomogPoly::constant(num_vars, Rational::one()));
    for depth in (0..n).rev() {
        let size = (n - depth) as u32;
        let row = &m[order[depth]];
        let mut next = HashMap::new();
        for mask in (0u32..1 << n).filter(|x| x.count_ones() == size) {
            let mut acc: Option<HomogPoly> = None;
            for (pos, c) in (0..n).filter(|&c| mask & (1 << c) != 0).enumerate() {
                let e = &row[c];
                if e.is_zero() {
                    continue;
                }
                let Some(minor) = minors.get(&(mask & !(1 << c))) else {
                    continue;
                };
                if minor.is_zero() {
                    continue;
                }
                let mut term = e.mul(minor);
                if pos % 2 == 1 {
                    term = term.neg();
                }
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            if let Some(a) = acc {
                if !a.is_zero() {
                    next.insert(mask, a);
                }
            }
        }
        minors = next;
    }
    let det = minors
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| HomogPoly::zero(num_vars, n as u32));
    if odd {
        det.neg()
    } else {
        det
    }
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

/// `det(phi_T)` for the generic 3x3x3 tensor, a form of degree 9 in the 27
/// entries.
pub fn strassen_det_symbolic() -> HomogPoly {
    symbolic_det(&strassen_matrix_symbolic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn block_layout() {
        let t = DenseTensor::new(vec![3, 3, 3], (1..=27).map(int).collect()).unwrap();
        let phi = strassen_matrix(&t).unwrap().matrix;
        // top-middle block is the first slice
        assert_eq!(phi.get(0, 3), &int(1));
        assert_eq!(phi.get(2, 5), &int(9));
        // top-right is minus the second slice
        assert_eq!(phi.get(0, 6), &int(-10));
        // bottom-left is the second slice
        assert_eq!(phi.get(6, 0), &int(10));
        assert_eq!(phi.get(4, 4), &int(0));
        assert_eq!(phi.get(7, 4), &int(-(18 + 3 + 1 + 1)));
    }

    #[test]
    fn rank_one_gives_rank_two() {
        let t = DenseTensor::rank_one(&[v(&[1, -2, 3]), v(&[4, 1, 0]), v(&[2, 2, -5])]).unwrap();
        assert_eq!(strassen_matrix(&t).unwrap().matrix.rank(), 2);
    }

    #[test]
    fn wrong_shape() {
        assert!(matches!(
            strassen_matrix(&DenseTensor::zeros(vec![3, 3, 2])),
            Err(Error::WrongShape { .. })
        ));
    }

    #[test]
    fn symbolic_det_of_small_matrices() {
        let x = |i| HomogPoly::var(4, i);
        let m = vec![vec![x(0), x(1)], vec![x(2), x(3)]];
        assert_eq!(symbolic_det(&m).to_string(), "x0*x3 - x1*x2");
        // sparsest row second forces a reordering
        let z = HomogPoly::zero(4, 1);
        let m = vec![vec![x(0), x(1)], vec![z.clone(), x(3)]];
        assert_eq!(symbolic_det(&m).to_string(), "x0*x3");
        let m = vec![vec![x(0), x(1)], vec![x(3), z]];
        assert_eq!(symbolic_det(&m).to_string(), "-x1*x3");
    }

    #[test]
    fn parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
    }
}
