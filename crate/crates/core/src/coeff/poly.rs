use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::{Mono, Param, Rational, Ring, NPARAMS};

/// Sparse polynomial in the formal parameters with rational coefficients.
///
/// Terms are stored in ascending graded-lex order with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: Vec<(Mono, Rational)>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(super::int(n))
    }

    pub fn var(p: Param) -> Self {
        Self::monomial(Mono::var(p), Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ParamPoly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_sorted_map(acc)
    }

    fn from_sorted_map(acc: BTreeMap<Mono, Rational>) -> Self {
        ParamPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Terms in descending (canonical display) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn coeff_of(&self, m: &Mono) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, p: Param) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(p)).max().unwrap_or(0)
    }

    /// Bit mask of the parameters that occur.
    pub fn vars(&self) -> u8 {
        let mut mask = 0u8;
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn contains(&self, p: Param) -> bool {
        self.vars() & (1 << p.index()) != 0
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a monomial preserves the term order.
        ParamPoly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Leading coefficient normalized to one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (m, c) = &b[j];
                    out.push((*m, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ParamPoly { terms: out }
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg_poly(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_mono(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_mono(m, c);
        }
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert_with(Rational::zero);
                *e += ca * cb;
            }
        }
        Self::from_sorted_map(acc)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ld_m, ld_c) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let mut rem: BTreeMap<Mono, Rational> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.last_key_value() {
            let tm = m.div(&ld_m)?;
            let tc = c / &ld_c;
            for (dm, dc) in &d.terms {
                let key = dm.mul(&tm);
                let e = rem.entry(key).or_insert_with(Rational::zero);
                *e -= &tc * dc;
                if e.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((tm, tc));
        }
        quot.reverse();
        Some(ParamPoly { terms: quot })
    }

    /// Coefficients with respect to `p`: entry `i` multiplies `p^i`.
    pub fn to_univariate(&self, p: Param) -> Vec<ParamPoly> {
        let deg = self.degree_in(p) as usize;
        let mut parts: Vec<BTreeMap<Mono, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.0[p.index()] as usize;
            rest.0[p.index()] = 0;
            parts[e].insert(rest, c.clone());
        }
        parts.into_iter().map(Self::from_sorted_map).collect()
    }

    pub fn from_univariate(coeffs: &[ParamPoly], p: Param) -> Self {
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (e, c) in coeffs.iter().enumerate() {
            let mut shift = Mono::ONE;
            shift.0[p.index()] = e as u16;
            for (m, a) in &c.terms {
                acc.insert(m.mul(&shift), a.clone());
            }
        }
        Self::from_sorted_map(acc)
    }

    /// Evaluates at a full rational point.
    pub fn eval(&self, point: &[Rational; NPARAMS]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes polynomial values for some parameters.
    pub fn substitute_poly(&self, values: &[Option<ParamPoly>; NPARAMS]) -> ParamPoly {
        let mut powers: Vec<Vec<ParamPoly>> = vec![Vec::new(); NPARAMS];
        let mut acc = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = Mono::ONE;
            let mut t = ParamPoly::one();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &values[i] {
                    None => keep.0[i] = e,
                    Some(v) => {
                        let pw = &mut powers[i];
                        if pw.is_empty() {
                            pw.push(ParamPoly::one());
                        }
                        while pw.len() <= e as usize {
                            let next = pw.last().unwrap().mul_poly(v);
                            pw.push(next);
                        }
                        t = t.mul_poly(&pw[e as usize]);
                    }
                }
            }
            acc = acc.add_poly(&t.mul_mono(&keep, c));
        }
        acc
    }

    /// Exact square root, if this polynomial is a perfect square over Q.
    pub fn sqrt_exact(&self) -> Option<ParamPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lm, lc) = self.leading()?;
        let root_m = {
            let mut e = [0u16; NPARAMS];
            for (i, &x) in lm.0.iter().enumerate() {
                if x % 2 != 0 {
                    return None;
                }
                e[i] = x / 2;
            }
            Mono(e)
        };
        let root_c = rational_sqrt(lc)?;
        let lead = ParamPoly::monomial(root_m, root_c.clone());
        let mut root = lead.clone();
        let two_lead_c = &root_c * super::int(2);
        // Each step fixes the next-largest term of the root.
        for _ in 0..=self.len() * 2 + 4 {
            let rem = self.sub_poly(&root.mul_poly(&root));
            let Some((rm, rc)) = rem.leading() else {
                return Some(root);
            };
            let tm = rm.div(&root_m)?;
            if tm >= root_m {
                return None;
            }
            root = root.add_poly(&ParamPoly::monomial(tm, rc / &two_lead_c));
        }
        None
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn from_i64(n: i64) -> Self {
        ParamPoly::from_int(n)
    }
    fn from_rational(r: &Rational) -> Self {
        ParamPoly::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_poly(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_poly(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn is_one(&self) -> bool {
        ParamPoly::is_one(self)
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_ops {
    ($ty:ty) => {
        impl std::ops::Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: Self) -> $ty {
                Ring::add(self, rhs)
            }
        }
        impl std::ops::Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: Self) -> $ty {
                Ring::sub(self, rhs)
            }
        }
        impl std::ops::Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: Self) -> $ty {
                Ring::mul(self, rhs)
            }
        }
        impl std::ops::Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                Ring::neg(self)
            }
        }
        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(self, rhs: Self) -> $ty {
                Ring::add(&self, &rhs)
            }
        }
        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: Self) -> $ty {
                Ring::sub(&self, &rhs)
            }
        }
        impl std::ops::Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: Self) -> $ty {
                Ring::mul(&self, &rhs)
            }
        }
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                Ring::neg(&self)
            }
        }
    };
}
pub(crate) use poly_ops;

poly_ops!(ParamPoly);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    fn k() -> ParamPoly {
        ParamPoly::var(Param::K)
    }

    #[test]
    fn basic_arithmetic() {
        let one = ParamPoly::one();
        assert_eq!(&(&k() + &one) + &(&k() - &one), k().scale(&int(2)));
        assert_eq!(
            &(&k() + &one) * &(&k() - &one),
            &k().pow(2) - &one
        );
        let p0k = &ParamPoly::var(Param::P0) * &k();
        assert!((&p0k - &p0k).is_zero());
    }

    #[test]
    fn exact_division() {
        let one = ParamPoly::one();
        let f = &k().pow(2) - &one;
        let q = f.exact_div(&(&k() - &one)).unwrap();
        assert_eq!(q, &k() + &one);
        assert!(f.exact_div(&(&k() + &int_poly(2))).is_none());
    }

    fn int_poly(n: i64) -> ParamPoly {
        ParamPoly::from_int(n)
    }

    #[test]
    fn square_roots() {
        let p = ParamPoly::var(Param::P);
        let s = &(&k() - &p.scale(&int(3))) + &int_poly(2);
        assert_eq!((&s * &s).sqrt_exact().unwrap().monic(), s.monic());
        assert!((&s * &k()).sqrt_exact().is_none());
    }

    #[test]
    fn display_is_descending_grlex() {
        let f = &(&k().scale(&int(2)) - &int_poly(1)) + &(&k() * &ParamPoly::var(Param::P0));
        assert_eq!(f.to_string(), "k*p0 + 2*k - 1");
    }
}
