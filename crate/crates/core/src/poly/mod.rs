//! Homogeneous polynomials over Q and the differentiation (apolarity)
//! action of the dual ring on them.
//!
//! A form in `n + 1` variables is stored as a sparse map from exponent
//! vectors to nonzero coefficients. Differential operators in the dual
//! variables `y_i = d/dx_i` use the same representation.

mod parse;

pub use parse::{parse_poly, parse_poly_infer};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{render_rational, Rational};

/// Largest number of variables accepted by the parser.
pub const MAX_VARS: usize = 16;
/// Largest degree accepted by the parser.
pub const MAX_DEGREE: u32 = 64;

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically with `x0 > x1 > ...`: within one degree
/// `x0^2 < x0*x1 < x0*x2 < x1^2 < ...` in the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Self(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, x)| num_traits::pow(x.clone(), e as usize))
            .fold(Rational::one(), |acc, v| acc * v)
    }

    /// Renders as `x0^2*x1`; the constant monomial renders as an empty string.
    pub fn render(&self, var: char) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("{var}{i}")
                } else {
                    format!("{var}{i}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `degree` in `num_vars` variables, in enumeration
/// order (`x0^d` first, `x_n^d` last).
pub fn monomials(num_vars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, degree: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(degree);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(prefix, left - 1, degree - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(
        &mut Vec::with_capacity(num_vars),
        num_vars,
        degree,
        &mut out,
    );
    out
}

/// Map from monomial to its position in [`monomials`].
pub fn monomial_index(num_vars: usize, degree: u32) -> HashMap<Monomial, usize> {
    monomials(num_vars, degree)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// `C(num_vars - 1 + degree, degree)`, the dimension of the degree piece.
pub fn monomial_count(num_vars: usize, degree: u32) -> usize {
    if num_vars == 0 {
        return usize::from(degree == 0);
    }
    binomial(num_vars as u64 - 1 + degree as u64, degree as u64) as usize
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn falling_factorial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Homogeneous polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomogPoly {
    pub fn zero(num_vars: usize, degree: u32) -> Self {
        Self {
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(num_vars), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.num_vars(), m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::term(Monomial::var(num_vars, i), Rational::one())
    }

    /// Builds a form from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut degree = None;
        let mut p = Self::zero(num_vars, 0);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::WrongVariableCount {
                    expected: num_vars,
                    got: exps.len(),
                });
            }
            let m = Monomial(exps);
            let d = m.degree();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::NotHomogeneous(d0, d)),
                _ => {}
            }
            p.add_term(m, c);
        }
        p.degree = degree.unwrap_or(0);
        Ok(p)
    }

    /// Dense coefficients listed in [`monomials`] order.
    pub fn from_coefficients(num_vars: usize, degree: u32, coeffs: &[Rational]) -> Result<Self> {
        let basis = monomials(num_vars, degree);
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        let mut p = Self::zero(num_vars, degree);
        for (m, c) in basis.into_iter().zip(coeffs) {
            p.add_term(m, c.clone());
        }
        Ok(p)
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        monomials(self.num_vars, self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_compatible(&self, other: &HomogPoly) {
        assert_eq!(
            self.num_vars, other.num_vars,
            "forms live in different rings"
        );
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "adding forms of degrees {} and {}",
            self.degree,
            other.degree
        );
    }

    /// Sum of two forms of the same degree (a zero form adapts its degree).
    pub fn add(&self, other: &HomogPoly) -> HomogPoly {
        self.check_compatible(other);
        if self.is_zero() {
            return other.clone();
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HomogPoly) -> HomogPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomogPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> HomogPoly {
        let mut out = Self::zero(self.num_vars, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        out
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        assert_eq!(
            self.num_vars, other.num_vars,
            "forms live in different rings"
        );
        let mut out = Self::zero(self.num_vars, self.degree + other.degree);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.mul(mb), a * b);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars);
        self.terms.iter().map(|(m, c)| c * m.eval(point)).sum()
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> HomogPoly {
        let mut out = Self::zero(self.num_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Renders with the given variable letter, e.g. `x` for forms and `y`
    /// for differential operators.
    pub fn render(&self, var: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(var);
            if mono.is_empty() {
                out.push_str(&render_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&render_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('x'))
    }
}

/// A nonzero linear form `c0*x0 + ... + cn*xn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(Vec<Rational>);

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self(coeffs))
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn to_poly(&self) -> HomogPoly {
        let mut p = HomogPoly::zero(self.0.len(), 1);
        for (i, c) in self.0.iter().enumerate() {
            p.add_term(Monomial::var(self.0.len(), i), c.clone());
        }
        p
    }
}

/// A point of projective space, defined up to a nonzero scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint(Vec<Rational>);

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self(coords))
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.0
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn canonical(&self) -> ProjPoint {
        let lead = self
            .0
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero point")
            .clone();
        ProjPoint(self.0.iter().map(|c| c / &lead).collect())
    }

    pub fn same_point(&self, other: &ProjPoint) -> bool {
        self.0.len() == other.0.len() && self.canonical() == other.canonical()
    }

    /// The linear form whose coefficients are these coordinates.
    pub fn linear_form(&self) -> LinearForm {
        LinearForm(self.0.clone())
    }
}

/// Multinomial expansion of `L^d`.
pub fn power_linear(l: &LinearForm, d: u32) -> HomogPoly {
    let n = l.num_vars();
    let mut p = HomogPoly::zero(n, d);
    let d_fact = falling_factorial(d, d);
    for m in monomials(n, d) {
        let mut c = Rational::from_integer(d_fact.clone());
        for (e, a) in m.0.iter().zip(&l.0) {
            if *e > 0 {
                c = c * num_traits::pow(a.clone(), *e as usize)
                    / Rational::from_integer(falling_factorial(*e, *e));
            }
        }
        p.add_term(m, c);
    }
    p
}

/// Applies the differential operator `op` (a form in the dual variables)
/// to `f` by honest partial differentiation: `y^b` maps `x^a` to
/// `prod a_i!/(a_i-b_i)! x^(a-b)` when `b <= a`.
pub fn apolar_apply(op: &HomogPoly, f: &HomogPoly) -> HomogPoly {
    assert_eq!(
        op.num_vars, f.num_vars,
        "operator and form live in different rings"
    );
    if op.degree > f.degree {
        return HomogPoly::zero(f.num_vars, 0);
    }
    let mut out = HomogPoly::zero(f.num_vars, f.degree - op.degree);
    for (b, c) in &op.terms {
        for (a, fc) in &f.terms {
            if let Some(q) = a.checked_div(b) {
                let k = a.0.iter().zip(&b.0).fold(BigInt::one(), |acc, (&ai, &bi)| {
                    acc * falling_factorial(ai, bi)
                });
                out.add_term(q, c * fc * Rational::from_integer(k));
            }
        }
    }
    out
}

/// Spanning set `L^(d-1) * x_i` of the affine tangent space to the Veronese
/// variety at `[L^d]`.
pub fn veronese_tangent_basis(l: &LinearForm, d: u32) -> Vec<HomogPoly> {
    assert!(d >= 1, "degree must be positive");
    let base = power_linear(l, d - 1);
    (0..l.num_vars())
        .map(|i| base.mul(&HomogPoly::var(l.num_vars(), i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::QMatrix;
    use crate::scalar::int;

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::new(c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn enumeration_matches_ternary_quadric_basis() {
        let names: Vec<String> = monomials(3, 2).iter().map(|m| m.render('x')).collect();
        assert_eq!(names, ["x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"]);
        assert_eq!(monomial_count(3, 4), 15);
        assert_eq!(monomials(5, 3).len(), monomial_count(5, 3));
        let ms = monomials(4, 3);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn binomial_cube() {
        let p = power_linear(&lf(&[1, 1]), 3);
        assert_eq!(p.to_string(), "x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3");
        assert_eq!(power_linear(&lf(&[0, 1]), 5).to_string(), "x1^5");
    }

    #[test]
    fn quadratic_veronese_coordinates() {
        // (a x + b y + c z)^2 has coefficients a^2, 2ab, 2ac, b^2, 2bc, c^2
        let (a, b, c) = (3i64, -5, 7);
        let p = power_linear(&lf(&[a, b, c]), 2);
        let expected = [a * a, 2 * a * b, 2 * a * c, b * b, 2 * b * c, c * c];
        assert_eq!(
            p.coefficients(),
            expected.iter().map(|&v| int(v)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn apolar_pairing_examples() {
        let f = HomogPoly::from_terms(2, [(vec![1, 2], int(1))]).unwrap();
        let y0sq = HomogPoly::from_terms(2, [(vec![2, 0], int(1))]).unwrap();
        assert!(apolar_apply(&y0sq, &f).is_zero());
        let y0y1sq = HomogPoly::from_terms(2, [(vec![1, 2], int(1))]).unwrap();
        assert_eq!(apolar_apply(&y0y1sq, &f), HomogPoly::constant(2, int(2)));
        let a = vec![3, 1, 2];
        let m = HomogPoly::from_terms(3, [(a, int(1))]).unwrap();
        assert_eq!(apolar_apply(&m, &m), HomogPoly::constant(3, int(6 * 2)));
    }

    #[test]
    fn high_degree_operator_gives_zero() {
        let f = power_linear(&lf(&[1, 2]), 2);
        let op = power_linear(&lf(&[1, 1]), 3);
        assert!(apolar_apply(&op, &f).is_zero());
    }

    #[test]
    fn tangent_basis_examples() {
        let t = veronese_tangent_basis(&lf(&[1, 0, 0]), 2);
        let names: Vec<String> = t.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["x0^2", "x0*x1", "x0*x2"]);
        let t = veronese_tangent_basis(&lf(&[1, 0, 0, 0]), 1);
        let names: Vec<String> = t.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["x0", "x1", "x2", "x3"]);
    }

    #[test]
    fn tangent_span_has_full_dimension() {
        let t = veronese_tangent_basis(&lf(&[3, -7, 2, 11]), 4);
        let m = QMatrix::from_rows(t.iter().map(HomogPoly::coefficients).collect()).unwrap();
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn projective_points() {
        let p = ProjPoint::new(vec![int(0), int(-2), int(4)]).unwrap();
        assert_eq!(p.canonical().coordinates(), &[int(0), int(1), int(-2)]);
        let q = ProjPoint::new(vec![int(0), int(3), int(-6)]).unwrap();
        assert!(p.same_point(&q));
        assert_eq!(ProjPoint::new(vec![int(0), int(0)]), Err(Error::ZeroVector));
        assert!(LinearForm::new(vec![int(0)]).is_err());
    }

    #[test]
    fn mixed_degrees_rejected() {
        let r = HomogPoly::from_terms(2, [(vec![1, 0], int(1)), (vec![0, 2], int(1))]);
        assert_eq!(r, Err(Error::NotHomogeneous(1, 2)));
    }
}
