//! Symmetric functions: partitions, the algebra Λ in the power-sum basis,
//! and conversion to and from the monomial basis.
//!
//! `p0` is not a generator here; it lives in the coefficient field.

mod partition;
mod transition;

use std::collections::BTreeMap;
use std::fmt;

pub use partition::{dominance_compare, partitions_of, partitions_up_to, Dominance, Partition};
pub use transition::{m_basis, m_to_p, p_to_m, pm_coefficient, MBasisExpansion};

pub use crate::finite::phi_n;

use crate::coeff::{Bindings, CoeffFrac, Rational};
use crate::error::{Error, Result};

/// Element of Λ written as `Σ c_λ p_λ`, with `p_λ = p_{λ1} p_{λ2} ⋯`.
#[derive(Clone, Default, PartialEq)]
pub struct SymFun {
    terms: BTreeMap<Partition, CoeffFrac>,
}

impl SymFun {
    pub fn zero() -> Self {
        SymFun::default()
    }

    pub fn one() -> Self {
        SymFun::constant(CoeffFrac::one())
    }

    pub fn constant(c: CoeffFrac) -> Self {
        SymFun::term(Partition::empty(), c)
    }

    /// `p_λ`.
    pub fn p(lambda: Partition) -> Self {
        SymFun::term(lambda, CoeffFrac::one())
    }

    /// The single power sum `p_a`, `a >= 1`.
    pub fn p_single(a: u32) -> Self {
        assert!(a >= 1, "power sums start at p_1");
        SymFun::p(Partition::single(a))
    }

    pub fn term(lambda: Partition, c: CoeffFrac) -> Self {
        let mut f = SymFun::zero();
        f.add_term(lambda, c);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, CoeffFrac)>) -> Self {
        let mut f = SymFun::zero();
        for (lambda, c) in terms {
            f.add_term(lambda, c);
        }
        f
    }

    /// Adds `c · p_λ` in place.
    pub fn add_term(&mut self, lambda: Partition, c: CoeffFrac) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &CoeffFrac)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> CoeffFrac {
        self.terms.get(lambda).cloned().unwrap_or_else(CoeffFrac::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal weight of a term; 0 for constants and for zero.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut weights = self.terms.keys().map(Partition::weight);
        match weights.next() {
            None => true,
            Some(w) => weights.all(|x| x == w),
        }
    }

    /// Graded component of degree `d`.
    pub fn homogeneous(&self, d: u32) -> SymFun {
        self.filter(|l| l.weight() == d)
    }

    /// Filtered truncation: terms with `|λ| <= d`.
    pub fn truncate(&self, d: u32) -> SymFun {
        self.filter(|l| l.weight() <= d)
    }

    fn filter(&self, keep: impl Fn(&Partition) -> bool) -> SymFun {
        SymFun {
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| keep(l))
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &SymFun) -> SymFun {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymFun) -> SymFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymFun {
        self.map(|c| -c)
    }

    pub fn scale(&self, c: &CoeffFrac) -> SymFun {
        if c.is_zero() {
            return SymFun::zero();
        }
        self.map(|x| x * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> SymFun {
        self.scale(&CoeffFrac::from_rational(c.clone()))
    }

    pub fn mul(&self, other: &SymFun) -> SymFun {
        let mut out = SymFun::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.union(b), ca * cb);
            }
        }
        out
    }

    fn map(&self, f: impl Fn(&CoeffFrac) -> CoeffFrac) -> SymFun {
        SymFun::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    /// Applies a fallible map to every coefficient, dropping zeros.
    pub fn try_map(&self, f: impl Fn(&CoeffFrac) -> Result<CoeffFrac>) -> Result<SymFun> {
        let mut out = SymFun::zero();
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c).map_err(|e| e.with_context(format!("p({l})")))?);
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<SymFun> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        self.try_map(|c| c.substitute(bindings))
    }

    /// `∂/∂p_a` (the plain partial derivative, without the factor `a`).
    pub fn partial(&self, a: u32) -> SymFun {
        let mut out = SymFun::zero();
        for (l, c) in &self.terms {
            if let Some((mult, rest)) = l.remove_one(a) {
                out.add_term(rest, c.scale(&crate::coeff::int(mult as i64)));
            }
        }
        out
    }

    /// `∂_a = a ∂/∂p_a`.
    pub fn d(&self, a: u32) -> SymFun {
        self.partial(a).scale_rational(&crate::coeff::int(a as i64))
    }

    /// Multiplies by `p_a`; `a = 0` multiplies by the parameter `p0`.
    pub fn mul_p(&self, a: u32) -> SymFun {
        if a == 0 {
            return self.scale(&CoeffFrac::param(crate::coeff::Param::P0));
        }
        SymFun::from_terms(self.terms.iter().map(|(l, c)| (l.insert(a), c.clone())))
    }

    /// Terms sorted by decreasing (weight, lex) order.
    pub fn sorted_terms(&self) -> Vec<(&Partition, &CoeffFrac)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.total_cmp(a.0));
        v
    }

    /// Parses the display format, e.g. `(2*k)*p(2,1) + (-1)*p(-)`.
    pub fn parse(s: &str) -> Result<SymFun> {
        let s = s.trim();
        if s == "0" {
            return Ok(SymFun::zero());
        }
        let mut out = SymFun::zero();
        for chunk in split_top_level(s, " + ") {
            let (coeff, part) = chunk
                .rsplit_once("*p(")
                .ok_or_else(|| Error::Parse(format!("malformed term `{chunk}`")))?;
            let part = part
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("malformed term `{chunk}`")))?;
            out.add_term(part.parse()?, coeff.parse()?);
        }
        Ok(out)
    }
}

/// Splits on `sep` only outside parentheses.
pub(crate) fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            out.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(l, c)| format!("({c})*p({l})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Partition> for SymFun {
    fn from(lambda: Partition) -> Self {
        SymFun::p(lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Param;

    fn p(s: &str) -> SymFun {
        SymFun::p(s.parse().unwrap())
    }

    #[test]
    fn algebra_and_derivatives() {
        let f = p("1").mul(&p("1")).add(&p("2"));
        assert_eq!(f, p("1,1").add(&p("2")));
        assert_eq!(f.degree(), 2);
        assert!(f.is_homogeneous());
        // ∂_1 (p_1^2) = 2 p_1
        assert_eq!(p("1,1").d(1), p("1").scale_rational(&crate::coeff::int(2)));
        // ∂_2 p_2 = 2
        assert_eq!(p("2").d(2), SymFun::constant(CoeffFrac::from_int(2)));
        assert!(f.sub(&f).is_zero());
        assert_eq!(SymFun::one().mul_p(0), SymFun::constant(CoeffFrac::param(Param::P0)));
    }

    #[test]
    fn display_round_trip() {
        let f = SymFun::from_terms([
            ("2,1".parse().unwrap(), "2*k/(k-1)".parse().unwrap()),
            (Partition::empty(), CoeffFrac::from_int(-1)),
            ("3".parse().unwrap(), "p0 + 1".parse().unwrap()),
        ]);
        let s = f.to_string();
        assert_eq!(SymFun::parse(&s).unwrap(), f);
        assert_eq!(SymFun::parse("0").unwrap(), SymFun::zero());
    }
}
