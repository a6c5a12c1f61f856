use std::fmt;
use std::str::FromStr;


use super::poly::poly_ops;
use super::{poly_gcd, Field, Param, ParamPoly, Rational, Ring, NPARAMS};
use crate::error::{Error, Result};

/// Element of the fraction field `Q(k, p, q, h, p0, l)`.
///
/// Constructors reduce by the gcd and make the denominator's leading
/// coefficient one. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct CoeffFrac {
    num: ParamPoly,
    den: ParamPoly,
}

impl CoeffFrac {
    /// `num / den`; fails with a pole error when `den` is zero.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::pole("0"));
        }
        Ok(Self::reduced(num, den))
    }

    /// Unreduced fraction, for callers that want to exercise the
    /// cross-multiplication equality directly.
    pub fn raw(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::pole("0"));
        }
        Ok(CoeffFrac { num, den })
    }

    fn reduced(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return CoeffFrac {
                num: if c.is_one() { num } else { num.scale(&c.recip()) },
                den: ParamPoly::one(),
            };
        }
        let (num, den) = if num.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            CoeffFrac { num, den }
        } else {
            let inv = lc.recip();
            CoeffFrac {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        CoeffFrac {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(ParamPoly::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(ParamPoly::constant(r))
    }

    /// `a/b` for machine integers; panics if `b == 0`.
    pub fn ratio(a: i64, b: i64) -> Self {
        Self::from_rational(super::rat(a, b))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        CoeffFrac {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn param(p: Param) -> Self {
        Self::from_poly(ParamPoly::var(p))
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value, if this fraction does not depend on any parameter.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn depends_on(&self, p: Param) -> bool {
        self.num.contains(p) || self.den.contains(p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CoeffFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::pole(self));
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(Ring::mul(self, &other.inv()?))
    }

    /// Integer power; negative exponents fail on zero.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(CoeffFrac {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        })
    }

    /// Exact square root when both parts are perfect squares up to a
    /// rational square factor.
    pub fn sqrt_exact(&self) -> Option<Self> {
        // sqrt(n/d) = sqrt(n*d)/d
        let prod = self.num.mul_poly(&self.den);
        let root = prod.sqrt_exact()?;
        Self::new(root, self.den.clone()).ok()
    }

    /// Simultaneous substitution of the bound parameters.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.num, bindings);
        let den = substitute_poly(&self.den, bindings);
        if den.is_zero() {
            return Err(Error::pole(&self.den).with_context(format!("{self} at {bindings}")));
        }
        den.inv()
            .map(|inv| Ring::mul(&num, &inv))
            .map_err(|_| Error::pole(&self.den))
    }

    /// Specialization `param -> value` after cancelling every common factor
    /// `(param - value)` between numerator and denominator.
    pub fn limit_along_parameter(&self, param: Param, value: &Rational) -> Result<Self> {
        let lin = ParamPoly::var(param).sub_poly(&ParamPoly::constant(value.clone()));
        let at = Bindings::new().with(param, CoeffFrac::from_rational(value.clone()));
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        loop {
            let den_vanishes = substitute_poly(&den, &at).is_zero();
            let num_vanishes = substitute_poly(&num, &at).is_zero();
            if !(den_vanishes && num_vanishes) || num.is_zero() {
                break;
            }
            num = num.exact_div(&lin).expect("vanishing at a point implies a linear factor");
            den = den.exact_div(&lin).expect("vanishing at a point implies a linear factor");
        }
        Self::raw(num, den)?.substitute(&at).map_err(|_| {
            Error::pole(&self.den).with_context(format!("{self} as {param} -> {value}"))
        })
    }

    /// Evaluation at a full rational point.
    pub fn eval(&self, point: &[Rational; NPARAMS]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::pole(&self.den));
        }
        Ok(self.num.eval(point) / d)
    }
}

/// Equality by cross-multiplication: `a/b = c/d` iff `a*d = c*b`.
pub fn frac_equal(a: &CoeffFrac, b: &CoeffFrac) -> bool {
    if a.den.is_one() && b.den.is_one() {
        return a.num == b.num;
    }
    a.num.mul_poly(&b.den) == b.num.mul_poly(&a.den)
}

impl PartialEq for CoeffFrac {
    fn eq(&self, other: &Self) -> bool {
        frac_equal(self, other)
    }
}

impl Ring for CoeffFrac {
    fn zero() -> Self {
        CoeffFrac::zero()
    }
    fn one() -> Self {
        CoeffFrac::one()
    }
    fn from_i64(n: i64) -> Self {
        CoeffFrac::from_int(n)
    }
    fn from_rational(r: &Rational) -> Self {
        CoeffFrac::from_rational(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add_poly(&other.num));
        }
        if self.den == other.den {
            return Self::reduced(self.num.add_poly(&other.num), self.den.clone());
        }
        if other.den.is_one() {
            return Self::reduced(
                self.num.add_poly(&other.num.mul_poly(&self.den)),
                self.den.clone(),
            );
        }
        if self.den.is_one() {
            return Self::reduced(
                other.num.add_poly(&self.num.mul_poly(&other.den)),
                other.den.clone(),
            );
        }
        let g = poly_gcd(&self.den, &other.den);
        let (b1, d1) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.exact_div(&g).expect("gcd divides"),
                other.den.exact_div(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul_poly(&d1).add_poly(&other.num.mul_poly(&b1));
        Self::reduced(num, self.den.mul_poly(&d1))
    }

    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul_poly(&other.num));
        }
        if let Some(c) = self.as_rational() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_rational() {
            return self.scale(&c);
        }
        // Cross-cancel; inputs are reduced so the product is too.
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let div = |p: &ParamPoly, g: &ParamPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul_poly(&div(&other.num, &g2));
        let den = div(&self.den, &g2).mul_poly(&div(&other.den, &g1));
        Self::reduced(num, den)
    }

    fn neg(&self) -> Self {
        CoeffFrac {
            num: self.num.neg_poly(),
            den: self.den.clone(),
        }
    }
}

impl Field for CoeffFrac {
    fn inv(&self) -> Option<Self> {
        CoeffFrac::inv(self).ok()
    }
}

poly_ops!(CoeffFrac);

impl From<ParamPoly> for CoeffFrac {
    fn from(p: ParamPoly) -> Self {
        CoeffFrac::from_poly(p)
    }
}

impl From<Param> for CoeffFrac {
    fn from(p: Param) -> Self {
        CoeffFrac::param(p)
    }
}

impl From<i64> for CoeffFrac {
    fn from(n: i64) -> Self {
        CoeffFrac::from_int(n)
    }
}

impl From<Rational> for CoeffFrac {
    fn from(r: Rational) -> Self {
        CoeffFrac::from_rational(r)
    }
}

fn substitute_poly(p: &ParamPoly, bindings: &Bindings) -> CoeffFrac {
    if bindings.all_polynomial() {
        let values = bindings.values.clone().map(|v| v.map(|f| f.num));
        return CoeffFrac::from_poly(p.substitute_poly(&values));
    }
    // Bring each term over the common denominator prod(den_i^maxdeg_i).
    let mut maxdeg = [0u16; NPARAMS];
    for (m, _) in p.iter() {
        for (i, &e) in m.0.iter().enumerate() {
            maxdeg[i] = maxdeg[i].max(e);
        }
    }
    let mut common = ParamPoly::one();
    let mut num_pow: Vec<Vec<ParamPoly>> = vec![Vec::new(); NPARAMS];
    let mut den_pow: Vec<Vec<ParamPoly>> = vec![Vec::new(); NPARAMS];
    for i in 0..NPARAMS {
        if let Some(v) = &bindings.values[i] {
            let d = maxdeg[i] as usize;
            num_pow[i] = powers(&v.num, d);
            den_pow[i] = powers(&v.den, d);
            common = common.mul_poly(&den_pow[i][d]);
        }
    }
    let mut total = ParamPoly::zero();
    for (m, c) in p.iter() {
        let mut keep = super::Mono::ONE;
        let mut t = ParamPoly::one();
        for (i, &e) in m.0.iter().enumerate() {
            match &bindings.values[i] {
                None => keep.0[i] = e,
                Some(_) => {
                    let e = e as usize;
                    let d = maxdeg[i] as usize;
                    t = t.mul_poly(&num_pow[i][e]).mul_poly(&den_pow[i][d - e]);
                }
            }
        }
        total = total.add_poly(&t.mul_mono(&keep, c));
    }
    CoeffFrac::reduced(total, common)
}

fn powers(p: &ParamPoly, n: usize) -> Vec<ParamPoly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(ParamPoly::one());
    for i in 0..n {
        let next = out[i].mul_poly(p);
        out.push(next);
    }
    out
}

impl fmt::Debug for CoeffFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoeffFrac({self})")
    }
}

impl fmt::Display for CoeffFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for CoeffFrac {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_coeff(s)
    }
}

/// Values assigned to a subset of the parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings {
    values: [Option<CoeffFrac>; NPARAMS],
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, value: impl Into<CoeffFrac>) -> Self {
        self.set(p, value);
        self
    }

    pub fn set(&mut self, p: Param, value: impl Into<CoeffFrac>) {
        self.values[p.index()] = Some(value.into());
    }

    pub fn get(&self, p: Param) -> Option<&CoeffFrac> {
        self.values[p.index()].as_ref()
    }

    pub fn remove(&mut self, p: Param) -> Option<CoeffFrac> {
        self.values[p.index()].take()
    }

    pub fn is_empty(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Param, &CoeffFrac)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|v| (Param::from_index(i), v)))
    }

    fn all_polynomial(&self) -> bool {
        self.values.iter().flatten().all(CoeffFrac::is_polynomial)
    }

    /// Value of `p` under these bindings, or the free symbol.
    pub fn value_or_symbol(&self, p: Param) -> CoeffFrac {
        self.get(p).cloned().unwrap_or_else(|| CoeffFrac::param(p))
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, v)| format!("{p}={v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};

    fn k() -> CoeffFrac {
        CoeffFrac::param(Param::K)
    }

    fn one() -> CoeffFrac {
        CoeffFrac::one()
    }

    #[test]
    fn cross_multiplication_equality() {
        let kk = ParamPoly::var(Param::K);
        let a = CoeffFrac::raw(ParamPoly::one(), kk.clone()).unwrap();
        let b = CoeffFrac::raw(kk.clone(), kk.pow(2)).unwrap();
        assert!(frac_equal(&a, &b));

        let c = CoeffFrac::raw(
            kk.pow(2).sub_poly(&ParamPoly::one()),
            kk.sub_poly(&ParamPoly::one()),
        )
        .unwrap();
        assert!(frac_equal(&c, &(&k() + &one())));

        let d = CoeffFrac::new(ParamPoly::one(), kk.add_poly(&ParamPoly::one())).unwrap();
        assert!(!frac_equal(&a, &d));
    }

    #[test]
    fn substitution_and_poles() {
        let f = k().scale(&int(2)).div(&(&k() - &one())).unwrap();
        let at2 = Bindings::new().with(Param::K, 2);
        assert_eq!(f.substitute(&at2).unwrap(), CoeffFrac::from_int(4));
        let at1 = Bindings::new().with(Param::K, 1);
        assert!(matches!(f.substitute(&at1), Err(Error::Pole { .. })));
    }

    #[test]
    fn theorem_h_binding() {
        // h <- -k - 1 - p/2 - q applied to 2h - 1
        let p = CoeffFrac::param(Param::P);
        let q = CoeffFrac::param(Param::Q);
        let h_val = &(&(&k().neg() - &one()) - &p.scale(&rat(1, 2))) - &q;
        let expr = &CoeffFrac::param(Param::H).scale(&int(2)) - &one();
        let got = expr
            .substitute(&Bindings::new().with(Param::H, h_val))
            .unwrap();
        let want = &(&(&k().scale(&int(-2)) - &CoeffFrac::from_int(2)) - &p) - &(&q.scale(&int(2)) + &one());
        assert_eq!(got, want);
    }

    #[test]
    fn limits() {
        let num = ParamPoly::var(Param::K).pow(2).sub_poly(&ParamPoly::one());
        let den = ParamPoly::var(Param::K).add_poly(&ParamPoly::one());
        let f = CoeffFrac::raw(num, den.clone()).unwrap();
        assert_eq!(
            f.limit_along_parameter(Param::K, &int(-1)).unwrap(),
            CoeffFrac::from_int(-2)
        );
        let g = CoeffFrac::raw(den.clone(), den.clone()).unwrap();
        assert_eq!(g.limit_along_parameter(Param::K, &int(-1)).unwrap(), one());
        let h = CoeffFrac::new(ParamPoly::one(), den).unwrap();
        assert!(h.limit_along_parameter(Param::K, &int(-1)).is_err());
    }

    #[test]
    fn display() {
        let f = k().scale(&int(2)).div(&(&k() - &one())).unwrap();
        assert_eq!(f.to_string(), "(2*k)/(k - 1)");
    }
}
