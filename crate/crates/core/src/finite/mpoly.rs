use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{CoeffFrac, Ring};
use crate::error::{Error, Result};
use crate::symfun::split_top_level;

/// Variable layout of an [`MPoly`]: `z1..zN`, or `u1..um` followed by `v1..vn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vars {
    Z(usize),
    UV(usize, usize),
}

impl Vars {
    pub fn len(&self) -> usize {
        match *self {
            Vars::Z(n) => n,
            Vars::UV(m, n) => m + n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self, i: usize) -> String {
        match *self {
            Vars::Z(_) => format!("z{}", i + 1),
            Vars::UV(m, _) if i < m => format!("u{}", i + 1),
            Vars::UV(m, _) => format!("v{}", i - m + 1),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.name(i) == name)
    }

    /// Index ranges inside which polynomials are required to be symmetric.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        match *self {
            Vars::Z(n) => vec![0..n],
            Vars::UV(m, n) => vec![0..m, m..m + n],
        }
    }
}

pub type Exps = Vec<u16>;

/// Sparse polynomial in finitely many variables.
#[derive(Clone, PartialEq)]
pub struct MPoly<C = CoeffFrac> {
    vars: Vars,
    terms: BTreeMap<Exps, C>,
}

impl<C: Ring> MPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        let mut p = MPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: Vars) -> Self {
        MPoly::constant(vars, C::one())
    }

    /// The variable with index `i`.
    pub fn var(vars: Vars, i: usize) -> Self {
        MPoly::monomial(vars, unit(vars.len(), i, 1), C::one())
    }

    pub fn monomial(vars: Vars, exps: Exps, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = MPoly::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Exps, C)>) -> Self {
        let mut p = MPoly::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn add_term(&mut self, exps: Exps, c: C) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Leading term in lexicographic order of exponent vectors.
    pub fn leading(&self) -> Option<(&Exps, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return MPoly::zero(self.vars);
        }
        if s.is_one() {
            return self.clone();
        }
        self.map(|c| c.mul(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Exps, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.mul(cb);
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get().add(&c);
                        *o.get_mut() = s;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly {
            vars: self.vars,
            terms: acc,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::one(self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `x_i^e`.
    pub fn mul_var(&self, i: usize, e: u16) -> Self {
        MPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(ex, c)| {
                    let mut ex = ex.clone();
                    ex[i] += e;
                    (ex, c.clone())
                })
                .collect(),
        }
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = MPoly::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.add_term(ne, c.mul(&C::from_i64(e[i] as i64)));
            }
        }
        out
    }

    /// Euler operator `x_i ∂/∂x_i`.
    pub fn euler(&self, i: usize) -> Self {
        let mut out = MPoly::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                out.add_term(e.clone(), c.mul(&C::from_i64(e[i] as i64)));
            }
        }
        out
    }

    /// Substitutes `x_i := x_j`.
    pub fn identify(&self, i: usize, j: usize) -> Self {
        let mut out = MPoly::zero(self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[j] += ne[i];
            ne[i] = 0;
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Exchanges the variables `x_i` and `x_j`.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        MPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    ne.swap(i, j);
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Invariance under permutations inside each variable block.
    pub fn is_block_symmetric(&self) -> bool {
        self.vars.blocks().into_iter().all(|b| {
            b.clone()
                .zip(b.skip(1))
                .all(|(i, j)| self.swap(i, j) == *self)
        })
    }

    /// Exact quotient by `x_i - x_j`, by synthetic division along `x_i`.
    pub fn div_difference(&self, i: usize, j: usize) -> Result<Self> {
        let Some(top) = self.terms.keys().map(|e| e[i]).max() else {
            return Ok(self.clone());
        };
        // buckets[d]: terms with x_i-degree d, keyed by the exponent vector.
        let mut buckets: Vec<BTreeMap<Exps, C>> = vec![BTreeMap::new(); top as usize + 1];
        for (e, c) in &self.terms {
            buckets[e[i] as usize].insert(e.clone(), c.clone());
        }
        let mut quotient = MPoly::zero(self.vars);
        for d in (1..=top as usize).rev() {
            let bucket = std::mem::take(&mut buckets[d]);
            for (e, c) in bucket {
                if c.is_zero() {
                    continue;
                }
                let mut q = e.clone();
                q[i] -= 1;
                let mut carry = q.clone();
                carry[j] += 1;
                quotient.add_term(q, c.clone());
                let slot = buckets[d - 1].entry(carry).or_insert_with(C::zero);
                *slot = slot.add(&c);
            }
        }
        if buckets[0].values().any(|c| !c.is_zero()) {
            return Err(Error::DivisionFailure(format!(
                "{} - {} does not divide the polynomial",
                self.vars.name(i),
                self.vars.name(j)
            )));
        }
        Ok(quotient)
    }

    /// Exact division by an arbitrary nonzero polynomial (lex leading terms),
    /// for divisors whose leading coefficient is invertible via `inv`.
    pub fn exact_div_by(&self, d: &Self, inv: impl Fn(&C, &C) -> Option<C>) -> Option<Self> {
        let (dl_e, dl_c) = d.leading()?;
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.vars);
        while let Some((re, rc)) = rem.leading() {
            let shift: Option<Exps> = re
                .iter()
                .zip(dl_e)
                .map(|(a, b)| a.checked_sub(*b))
                .collect();
            let shift = shift?;
            let c = inv(rc, dl_c)?;
            let t = MPoly::monomial(self.vars, shift, c);
            rem = rem.sub(&d.mul(&t));
            q = q.add(&t);
        }
        Some(q)
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        MPoly::from_terms(self.vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn try_map<D: Ring>(&self, f: impl Fn(&C) -> Result<D>) -> Result<MPoly<D>> {
        let mut out = MPoly::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Sum over the variables in `range` of `x^a`.
    pub fn power_sum(vars: Vars, range: std::ops::Range<usize>, a: u16) -> Self {
        MPoly::from_terms(
            vars,
            range.map(|i| (unit(vars.len(), i, a), C::one())),
        )
    }

    fn monomial_string(&self, e: &[u16]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| {
                if x == 1 {
                    self.vars.name(i)
                } else {
                    format!("{}^{x}", self.vars.name(i))
                }
            })
            .collect();
        parts.join("*")
    }
}

impl MPoly<CoeffFrac> {
    pub fn substitute(&self, bindings: &crate::coeff::Bindings) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut out = MPoly::zero(self.vars);
        for (e, c) in &self.terms {
            let v = c
                .substitute(bindings)
                .map_err(|err| err.with_context(self.monomial_string(e)))?;
            out.add_term(e.clone(), v);
        }
        Ok(out)
    }

    /// Parses the display format, e.g. `2 * u1^2*v1 + (k - 1) * v1 + 3`.
    pub fn parse(vars: Vars, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = MPoly::zero(vars);
        if s == "0" {
            return Ok(out);
        }
        for chunk in split_top_level(s, " + ") {
            let (coeff, mono) = match chunk.rsplit_once(" * ") {
                Some((c, m)) if !m.contains('(') => (c, Some(m)),
                _ => (chunk, None),
            };
            let c: CoeffFrac = coeff.parse()?;
            let mut e = vec![0u16; vars.len()];
            if let Some(mono) = mono {
                for factor in mono.split('*') {
                    let (name, pow) = match factor.split_once('^') {
                        Some((n, p)) => (
                            n,
                            p.parse::<u16>()
                                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                        ),
                        None => (factor, 1),
                    };
                    let i = vars
                        .index_of(name.trim())
                        .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                    e[i] += pow;
                }
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// Whether a coefficient string has a top-level `+` or `-` between terms.
fn is_sum(s: &str) -> bool {
    split_top_level(s, " + ").len() > 1 || split_top_level(s, " - ").len() > 1
}

fn unit(n: usize, i: usize, a: u16) -> Exps {
    let mut e = vec![0; n];
    e[i] = a;
    e
}

impl<C: Ring> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if is_sum(&cs) { format!("({cs})") } else { cs };
            if e.iter().all(|&x| x == 0) {
                f.write_str(&cs)?;
            } else {
                write!(f, "{cs} * {}", self.monomial_string(e))?;
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, s: &str) -> MPoly {
        MPoly::parse(Vars::Z(n), s).unwrap()
    }

    #[test]
    fn division_by_differences() {
        let f = z(2, "1 * z1^3 + -1 * z2^3");
        let q = f.div_difference(0, 1).unwrap();
        assert_eq!(q, z(2, "1 * z1^2 + 1 * z1*z2 + 1 * z2^2"));
        let back = q.mul(&z(2, "1 * z1 + -1 * z2"));
        assert_eq!(back, f);
        assert!(z(2, "1 * z1").div_difference(0, 1).is_err());
    }

    #[test]
    fn display_and_parse() {
        let vars = Vars::UV(1, 1);
        let f = MPoly::parse(vars, "(2*k)/(k - 1) * u1^2*v1 + (k - 1) * v1 + 3").unwrap();
        let s = f.to_string();
        assert_eq!(s, "(2*k)/(k - 1) * u1^2*v1 + (k - 1) * v1 + 3");
        assert_eq!(MPoly::parse(vars, &s).unwrap(), f);
        assert_eq!(MPoly::<CoeffFrac>::one(vars).to_string(), "1");
    }

    #[test]
    fn symmetry_and_identification() {
        let f = z(3, "1 * z1*z2 + 1 * z1*z3 + 1 * z2*z3");
        assert!(f.is_block_symmetric());
        assert!(!z(2, "1 * z1").is_block_symmetric());
        assert_eq!(z(2, "1 * z1 + -1 * z2").identify(0, 1), MPoly::zero(Vars::Z(2)));
    }
}
