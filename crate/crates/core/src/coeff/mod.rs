//! Exact coefficient field: big rationals, sparse polynomials in the formal
//! parameters `k, p, q, h, p0, l`, and fractions of those polynomials.
//!
//! Every coefficient in the crate lives in `Q(k, p, q, h, p0, l)`. Fractions
//! are kept reduced by a multivariate gcd, but equality is always decided by
//! cross-multiplication so correctness never hinges on the reduction.

mod frac;
mod gcd;
pub(crate) mod parse;
mod poly;

use std::fmt;
use std::str::FromStr;

pub use frac::{frac_equal, Bindings, CoeffFrac};
pub use parse::parse_rational;
pub use gcd::poly_gcd;
pub use poly::ParamPoly;

use crate::error::Error;

/// Arbitrary-precision rational; numerator and denominator are kept coprime
/// with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Number of formal parameters.
pub const NPARAMS: usize = 6;

/// The closed set of formal parameters, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    K,
    P,
    Q,
    H,
    P0,
    L,
}

impl Param {
    pub const ALL: [Param; NPARAMS] = [Param::K, Param::P, Param::Q, Param::H, Param::P0, Param::L];

    pub fn name(self) -> &'static str {
        match self {
            Param::K => "k",
            Param::P => "p",
            Param::Q => "q",
            Param::H => "h",
            Param::P0 => "p0",
            Param::L => "l",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Param {
        Param::ALL[i]
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown parameter `{s}`")))
    }
}

/// Exponent vector over the parameters. Ordered graded-lexicographically:
/// total degree first, then `k > p > q > h > p0 > l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u16; NPARAMS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NPARAMS]);

    pub fn var(p: Param) -> Mono {
        let mut e = [0; NPARAMS];
        e[p.index()] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Mono(e)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Mono(e))
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = (*a).min(b);
        }
        Mono(e)
    }

    pub fn exp(&self, p: Param) -> u16 {
        self.0[p.index()]
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in Param::ALL {
            let e = self.exp(p);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Commutative ring operations shared by the coefficient types, so that
/// finite-variable polynomials can be generic over their coefficients.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A ring with (partial) inverses; `inv` returns `None` only for zero.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!Ring::is_zero(self)).then(|| num_traits::Inv::inv(self))
    }
}

/// `a/b` as a big rational.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Integer as a big rational.
pub fn int(a: i64) -> Rational {
    Rational::from_integer(a.into())
}
