//! Catalecticants, apolar ideals and Waring ranks.
//!
//! For a form `F` of degree `d`, the catalecticant in degree `t` is the
//! matrix of `T_t -> S_(d-t)`, `D -> D(F)`. Its kernel is the degree `t`
//! piece of the annihilator `F^perp` and its rank is the Hilbert function of
//! the apolar algebra `T/F^perp` in degree `t`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::{
    monomial_count, monomial_index, monomials, power_linear, HomogPoly, Monomial, ProjPoint,
};
use crate::scalar::{Arithmetic, Rational};

/// Matrix of `T_t -> S_(d-t)` in the monomial bases. Rows are indexed by
/// degree `d - t` monomials, columns by degree `t` operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalecticantMatrix {
    pub form: HomogPoly,
    pub t: u32,
    pub matrix: QMatrix,
}

impl CatalecticantMatrix {
    pub fn row_basis(&self) -> Vec<Monomial> {
        monomials(self.form.num_vars(), self.form.degree() - self.t)
    }

    pub fn col_basis(&self) -> Vec<Monomial> {
        monomials(self.form.num_vars(), self.t)
    }
}

pub fn catalecticant(f: &HomogPoly, t: u32) -> Result<CatalecticantMatrix> {
    let d = f.degree();
    if t > d {
        return Err(Error::DegreeOutOfRange { t, d });
    }
    let n = f.num_vars();
    let rows = monomial_index(n, d - t);
    let cols = monomials(n, t);
    let mut m = QMatrix::zeros(rows.len(), cols.len());
    for (j, op) in cols.iter().enumerate() {
        for (a, c) in f.terms() {
            let Some(q) = a.checked_div(op) else { continue };
            let k = a
                .exponents()
                .iter()
                .zip(op.exponents())
                .fold(BigInt::one(), |acc, (&ai, &bi)| {
                    (0..bi).fold(acc, |acc, s| acc * BigInt::from(ai - s))
                });
            m.set(rows[&q], j, c * Rational::from_integer(k));
        }
    }
    Ok(CatalecticantMatrix {
        form: f.clone(),
        t,
        matrix: m,
    })
}

/// Basis of `(F^perp)_t` as operators in the dual variables.
pub fn perp_piece(f: &HomogPoly, t: u32) -> Vec<HomogPoly> {
    let n = f.num_vars();
    if t > f.degree() {
        return monomials(n, t)
            .into_iter()
            .map(|m| HomogPoly::term(m, Rational::one()))
            .collect();
    }
    let cat = catalecticant(f, t).expect("t within range");
    cat.matrix
        .kernel()
        .into_iter()
        .map(|v| HomogPoly::from_coefficients(n, t, &v).expect("kernel length"))
        .collect()
}

/// Hilbert function of `T/F^perp` for `t = 0..=d+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApolarProfile {
    pub degree: u32,
    pub hf: Vec<usize>,
    pub perp_dims: Vec<usize>,
}

impl ApolarProfile {
    pub fn is_symmetric(&self) -> bool {
        let d = self.degree as usize;
        (0..=d).all(|t| self.hf[t] == self.hf[d - t])
    }
}

pub fn hilbert_function(f: &HomogPoly) -> Result<ApolarProfile> {
    hilbert_function_with(f, Arithmetic::Exact)
}

pub fn hilbert_function_with(f: &HomogPoly, arithmetic: Arithmetic) -> Result<ApolarProfile> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    let n = f.num_vars();
    let mut hf = Vec::with_capacity(d as usize + 2);
    let mut perp_dims = Vec::with_capacity(d as usize + 2);
    for t in 0..=d + 1 {
        let total = monomial_count(n, t);
        let h = if t > d {
            0
        } else {
            catalecticant(f, t)?.matrix.rank_with(arithmetic)
        };
        hf.push(h);
        perp_dims.push(total - h);
    }
    Ok(ApolarProfile {
        degree: d,
        hf,
        perp_dims,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankBranch {
    /// The minimal-degree generator of `F^perp` is square-free.
    SquareFreeAtD1,
    /// It is not, so the rank is the degree of the second generator.
    FellThroughToD2,
    /// Closed formula for monomials.
    Formula,
    /// Rank of the symmetric matrix of a quadric.
    MatrixRank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    /// Apolar operator that decided the branch (binary forms only).
    pub witness: Option<HomogPoly>,
    pub branch: RankBranch,
}

/// Waring rank of a nonzero binary form by Sylvester's algorithm.
pub fn sylvester_rank(f: &HomogPoly) -> Result<RankCertificate> {
    if f.num_vars() != 2 {
        return Err(Error::WrongVariableCount {
            expected: 2,
            got: f.num_vars(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    let (d1, kernel) = (1..=d + 1)
        .map(|t| (t, perp_piece(f, t)))
        .find(|(_, k)| !k.is_empty())
        .expect("(F^perp)_(d+1) is all of T_(d+1)");
    // The kernel is one-dimensional unless both generators share degree
    // (d+2)/2, where either branch returns the same value; a fixed
    // combination of the basis stands in for a general element.
    let witness = kernel
        .iter()
        .enumerate()
        .fold(HomogPoly::zero(2, d1), |acc, (k, g)| {
            acc.add(&g.scale(&Rational::from_integer(BigInt::from(k as u64 + 1))))
        });
    let (rank, branch) = if is_square_free_binary(&witness) {
        (d1 as usize, RankBranch::SquareFreeAtD1)
    } else {
        ((d + 2 - d1) as usize, RankBranch::FellThroughToD2)
    };
    Ok(RankCertificate {
        rank,
        witness: Some(witness),
        branch,
    })
}

/// Whether a nonzero binary form has no repeated linear factor.
///
/// Dehomogenizes `g(t, 1)`; the form is square-free iff the univariate
/// polynomial is coprime to its derivative and loses at most one degree
/// (at most a simple root at infinity).
pub fn is_square_free_binary(g: &HomogPoly) -> bool {
    assert_eq!(g.num_vars(), 2);
    let k = g.degree() as usize;
    let mut u = vec![Rational::zero(); k + 1];
    for (m, c) in g.terms() {
        u[m.exponents()[0] as usize] = c.clone();
    }
    trim(&mut u);
    if u.is_empty() {
        return false;
    }
    if u.len() < k {
        return false;
    }
    let du = derivative(&u);
    univariate_gcd(u, du).len() <= 1
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    let mut d: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

fn univariate_rem(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let lead = b.last().expect("nonzero divisor");
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let q = a.last().expect("nonempty") / lead;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &q * c;
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Euclid over Q; coefficient vectors are lowest degree first.
fn univariate_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = univariate_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

/// Waring rank of `x0^a0 * ... * xn^an`: with zero exponents dropped and
/// `a0` the smallest remaining one, `prod (ai + 1) / (a0 + 1)`.
pub fn monomial_rank(exponents: &[u32]) -> Result<u128> {
    let mut a: Vec<u32> = exponents.iter().copied().filter(|&e| e > 0).collect();
    if a.is_empty() {
        return Err(Error::AllZero);
    }
    a.sort_unstable();
    a[1..]
        .iter()
        .try_fold(1u128, |acc, &e| acc.checked_mul(e as u128 + 1))
        .ok_or(Error::Overflow("monomial rank"))
}

/// Symmetric matrix `M_F` with `F(x) = x^T M_F x`.
pub fn quadric_matrix(f: &HomogPoly) -> Result<QMatrix> {
    if f.degree() != 2 && !f.is_zero() {
        return Err(Error::WrongDegree {
            expected: 2,
            got: f.degree(),
        });
    }
    let n = f.num_vars();
    let mut m = QMatrix::zeros(n, n);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for (mono, c) in f.terms() {
        let idx: Vec<usize> = mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            m.set(i, j, c * &half);
            m.set(j, i, c * &half);
        }
    }
    Ok(m)
}

/// Waring rank of a quadric, the rank of its symmetric matrix.
pub fn quadratic_rank(f: &HomogPoly) -> Result<usize> {
    quadratic_rank_with(f, Arithmetic::Exact)
}

pub fn quadratic_rank_with(f: &HomogPoly, arithmetic: Arithmetic) -> Result<usize> {
    Ok(quadric_matrix(f)?.rank_with(arithmetic))
}

/// Solves `sum c_i L_i^d = F` where `L_i` has the coordinates of the `i`-th
/// point as coefficients. Returns `None` when no such combination exists.
pub fn decompose_check(f: &HomogPoly, points: &[ProjPoint]) -> Result<Option<Vec<Rational>>> {
    let n = f.num_vars();
    for p in points {
        if p.coordinates().len() != n {
            return Err(Error::WrongVariableCount {
                expected: n,
                got: p.coordinates().len(),
            });
        }
    }
    let canon: Vec<ProjPoint> = points.iter().map(ProjPoint::canonical).collect();
    let mut seen: HashMap<&ProjPoint, usize> = HashMap::new();
    for (j, p) in canon.iter().enumerate() {
        if let Some(&i) = seen.get(p) {
            return Err(Error::DuplicatePoints(i, j));
        }
        seen.insert(p, j);
    }
    let d = f.degree();
    let columns: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| power_linear(&p.linear_form(), d).coefficients())
        .collect();
    let rows = monomial_count(n, d);
    let mut m = QMatrix::zeros(rows, points.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m.solve(&f.coefficients())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, LinearForm};
    use crate::scalar::{frac, int};

    fn p(s: &str, n: usize) -> HomogPoly {
        parse_poly(s, n).unwrap()
    }

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::new(c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn pure_power_catalecticant_has_one_column() {
        let d = 5;
        let f = p("x0^5", 3);
        for t in 0..=d {
            let c = catalecticant(&f, t).unwrap();
            let nonzero: Vec<(usize, usize)> = (0..c.matrix.rows())
                .flat_map(|i| (0..c.matrix.cols()).map(move |j| (i, j)))
                .filter(|&(i, j)| !c.matrix.get(i, j).is_zero())
                .collect();
            assert_eq!(nonzero, vec![(0, 0)]);
            let expected: i64 = (0..t as i64).map(|s| d as i64 - s).product();
            assert_eq!(c.matrix.get(0, 0), &int(expected));
        }
        assert_eq!(
            catalecticant(&f, 6),
            Err(Error::DegreeOutOfRange { t: 6, d: 5 })
        );
    }

    #[test]
    fn catalecticant_of_x0_x1_sq() {
        let c = catalecticant(&p("x0*x1^2", 2), 1).unwrap();
        assert_eq!((c.matrix.rows(), c.matrix.cols()), (3, 2));
        assert_eq!(c.matrix.rank(), 2);
        let c2 = catalecticant(&p("x0*x1^2", 2), 2).unwrap();
        assert_eq!(c2.matrix.kernel().len(), 1);
    }

    #[test]
    fn perp_examples() {
        assert_eq!(perp_piece(&p("x0*x1^2", 2), 2), vec![p("x0^2", 2)]);
        assert_eq!(perp_piece(&p("x0*x1^5", 2), 2), vec![p("x0^2", 2)]);
        let ys: Vec<HomogPoly> = (1..4).map(|i| HomogPoly::var(4, i)).collect();
        let mut got = perp_piece(&p("x0^4", 4), 1);
        got.sort_by_key(|g| g.to_string());
        assert_eq!(got, ys);
        let got = perp_piece(&p("x0^3 + x1^3 + x2^3", 5), 1);
        let ys: Vec<HomogPoly> = (3..5).map(|i| HomogPoly::var(5, i)).collect();
        assert_eq!(got.len(), 2);
        for g in &got {
            assert!(ys.contains(g), "{g}");
        }
        assert_eq!(perp_piece(&p("x0*x1", 2), 3).len(), 4);
    }

    #[test]
    fn hilbert_of_power_and_cubic() {
        let l3 = power_linear(&LinearForm::new(vec![int(2), int(-3)]).unwrap(), 3);
        assert_eq!(hilbert_function(&l3).unwrap().hf, vec![1, 1, 1, 1, 0]);
        let h = hilbert_function(&p("x0*x1^2", 2)).unwrap();
        assert_eq!(h.hf, vec![1, 2, 2, 1, 0]);
        assert_eq!(h.perp_dims, vec![0, 0, 1, 3, 5]);
        assert_eq!(
            hilbert_function(&HomogPoly::zero(2, 3)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn sylvester_examples() {
        let c = sylvester_rank(&p("x0*x1^2", 2)).unwrap();
        assert_eq!(c.rank, 3);
        assert_eq!(c.branch, RankBranch::FellThroughToD2);
        assert_eq!(c.witness, Some(p("x0^2", 2)));
        assert_eq!(sylvester_rank(&p("x0*x1^5", 2)).unwrap().rank, 6);
        let cube = power_linear(&LinearForm::new(vec![int(2), int(3)]).unwrap(), 3);
        let c = sylvester_rank(&cube).unwrap();
        assert_eq!((c.rank, c.branch), (1, RankBranch::SquareFreeAtD1));
        assert!(sylvester_rank(&p("x0*x1*x2", 3)).is_err());
    }

    #[test]
    fn witness_is_apolar() {
        let f = p("3*x0^4 - x0^2*x1^2 + 7*x1^4 + 2*x0*x1^3", 2);
        let c = sylvester_rank(&f).unwrap();
        let w = c.witness.unwrap();
        assert!(crate::poly::apolar_apply(&w, &f).is_zero());
    }

    #[test]
    fn square_free_test() {
        assert!(is_square_free_binary(&p("x0*x1", 2)));
        assert!(is_square_free_binary(&p("x1", 2)));
        assert!(is_square_free_binary(&p("x0^2 - x1^2", 2)));
        assert!(!is_square_free_binary(&p("x1^2", 2)));
        assert!(!is_square_free_binary(&p("x0^2", 2)));
        assert!(!is_square_free_binary(&p("x0^2 + 2*x0*x1 + x1^2", 2)));
        assert!(!is_square_free_binary(
            &p("x0^2*x1 + x0*x1^2", 2).mul(&p("x0 + x1", 2))
        ));
        // x0^2 + x1^2 is irreducible over Q but square-free
        assert!(is_square_free_binary(&p("x0^2 + x1^2", 2)));
    }

    #[test]
    fn monomial_formula() {
        assert_eq!(monomial_rank(&[1, 2]), Ok(3));
        assert_eq!(monomial_rank(&[7, 0]), Ok(1));
        assert_eq!(monomial_rank(&[1, 1, 1]), Ok(4));
        assert_eq!(monomial_rank(&[2, 0, 1, 0]), Ok(3));
        assert_eq!(monomial_rank(&[0, 0]), Err(Error::AllZero));
    }

    #[test]
    fn quadric_ranks() {
        assert_eq!(quadratic_rank(&p("x0^2 + x1^2", 2)), Ok(2));
        assert_eq!(quadratic_rank(&p("x0*x1", 2)), Ok(2));
        assert_eq!(
            quadric_matrix(&p("x0*x1", 2)).unwrap().get(0, 1),
            &frac(1, 2)
        );
        assert_eq!(quadratic_rank(&p("x0^2 + 2*x0*x1 + x1^2", 3)), Ok(1));
        let q = p("x0^2 + x1^2 + x2^2 + x3^2 + x4^2", 5);
        assert_eq!(quadratic_rank(&q), Ok(5));
        assert_eq!(
            quadratic_rank(&p("x0^3", 1)),
            Err(Error::WrongDegree {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn decomposition_of_x0sq_x1() {
        let f = p("x0^2*x1", 2);
        let c = decompose_check(&f, &[pt(&[1, 1]), pt(&[-1, 1]), pt(&[0, 1])]).unwrap();
        assert_eq!(c, Some(vec![frac(1, 6), frac(1, 6), frac(-1, 3)]));
    }

    #[test]
    fn power_decomposes_trivially() {
        let l = LinearForm::new(vec![int(2), int(-1), int(5)]).unwrap();
        let f = power_linear(&l, 4);
        let c = decompose_check(&f, &[pt(&[2, -1, 5])]).unwrap();
        assert_eq!(c, Some(vec![int(1)]));
    }

    #[test]
    fn duplicate_points_rejected() {
        let f = p("x0^3", 2);
        assert_eq!(
            decompose_check(&f, &[pt(&[1, 2]), pt(&[3, 1]), pt(&[-2, -4])]),
            Err(Error::DuplicatePoints(0, 2))
        );
    }
}
