//! Exact scalars: arbitrary-precision rationals and an optional prime field
//! used for fast probabilistic rank computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Mersenne prime 2^31 - 1, the default modulus for modular rank.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {text:?}"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Renders as `p` or `p/q`.
pub fn render_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Least common multiple of the denominators of `row`.
pub(crate) fn denominator_lcm<'a>(row: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    row.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Arithmetic in Z/pZ for a prime p < 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    modulus: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self {
            modulus: DEFAULT_MODULUS,
        }
    }
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus >= 1 << 63 || !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    /// Reduces a rational whose denominator is invertible mod p.
    pub fn reduce_rational(&self, q: &Rational) -> Option<u64> {
        let den = self.reduce(q.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.reduce(q.numer()), self.inv(den)))
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.modulus));
        self.pow(a, self.modulus - 2)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Which arithmetic a rank computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Arithmetic {
    #[default]
    Exact,
    /// Rank over Z/pZ after clearing denominators. Never exceeds the
    /// rational rank, so results are probabilistic lower bounds.
    Modular(PrimeField),
}

/// Serializable tag for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArithmeticMode {
    ExactRational,
    ModularProbabilistic,
}

impl Arithmetic {
    pub fn mode(&self) -> ArithmeticMode {
        match self {
            Arithmetic::Exact => ArithmeticMode::ExactRational,
            Arithmetic::Modular(_) => ArithmeticMode::ModularProbabilistic,
        }
    }
}
