//! Infinite-dimensional CMS operators acting on Λ in the power-sum basis.
//!
//! Notation: `∂_a = a ∂/∂p_a`; a factor `p_0` is the parameter `p0`, and any
//! negative subscript contributes zero.

mod duality;
mod symbol;

use std::fmt;
use std::str::FromStr;

pub use duality::{
    scaling_conjugate, scaling_conjugate_bc, sigma, sigma_inv, BcCandidate, BcDualityReport,
    DualityReport,
};
pub use symbol::{fourier_swap_check, normal_symbol, FourierReport, NormalSymbol};

use crate::coeff::{Bindings, CoeffFrac, Param};
use crate::error::{Error, Result};
use crate::symfun::{partitions_up_to, SymFun};

/// The four operator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    #[serde(rename = "trigA")]
    TrigA,
    #[serde(rename = "ratA")]
    RatA,
    #[serde(rename = "ratB")]
    RatB,
    #[serde(rename = "trigBC")]
    TrigBC,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::TrigA, Family::RatA, Family::RatB, Family::TrigBC];

    pub fn name(self) -> &'static str {
        match self {
            Family::TrigA => "trigA",
            Family::RatA => "ratA",
            Family::RatB => "ratB",
            Family::TrigBC => "trigBC",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown operator family `{s}`")))
    }
}

/// An operator family with its parameters. Parameters a family does not use
/// are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct InfOperator {
    pub family: Family,
    pub k: CoeffFrac,
    pub p0: CoeffFrac,
    pub l: CoeffFrac,
    pub p: CoeffFrac,
    pub q: CoeffFrac,
    pub h: CoeffFrac,
}

impl InfOperator {
    /// All parameters symbolic.
    pub fn new(family: Family) -> Self {
        InfOperator {
            family,
            k: CoeffFrac::param(Param::K),
            p0: CoeffFrac::param(Param::P0),
            l: CoeffFrac::param(Param::L),
            p: CoeffFrac::param(Param::P),
            q: CoeffFrac::param(Param::Q),
            h: CoeffFrac::param(Param::H),
        }
    }

    pub fn trig_a(k: CoeffFrac, p0: CoeffFrac) -> Self {
        InfOperator {
            k,
            p0,
            ..InfOperator::new(Family::TrigA)
        }
    }

    pub fn rat_a(k: CoeffFrac, p0: CoeffFrac) -> Self {
        InfOperator {
            k,
            p0,
            ..InfOperator::new(Family::RatA)
        }
    }

    pub fn rat_b(k: CoeffFrac, l: CoeffFrac, p0: CoeffFrac) -> Self {
        InfOperator {
            k,
            l,
            p0,
            ..InfOperator::new(Family::RatB)
        }
    }

    pub fn trig_bc(k: CoeffFrac, p: CoeffFrac, q: CoeffFrac, h: CoeffFrac, p0: CoeffFrac) -> Self {
        InfOperator {
            family: Family::TrigBC,
            k,
            p0,
            p,
            q,
            h,
            ..InfOperator::new(Family::TrigBC)
        }
    }

    /// BC operator with `p0` eliminated through `h = -(k p0 + p/2 + q)`.
    pub fn trig_bc_linked(k: CoeffFrac, p: CoeffFrac, q: CoeffFrac, h: CoeffFrac) -> Result<Self> {
        let num = &(&h + &p.scale(&crate::coeff::rat(1, 2))) + &q;
        let p0 = (-&num).div(&k)?;
        Ok(InfOperator::trig_bc(k, p, q, h, p0))
    }

    /// Substitutes `bindings` into every parameter.
    pub fn bind(&self, bindings: &Bindings) -> Result<Self> {
        let s = |c: &CoeffFrac| c.substitute(bindings);
        Ok(InfOperator {
            family: self.family,
            k: s(&self.k)?,
            p0: s(&self.p0)?,
            l: s(&self.l)?,
            p: s(&self.p)?,
            q: s(&self.q)?,
            h: s(&self.h)?,
        })
    }

    /// Image of `f`, whose terms must all have weight `<= d`.
    pub fn apply(&self, f: &SymFun, d: u32) -> Result<SymFun> {
        apply_inf(self, f, d)
    }

    /// `(p-indices, ∂-indices, coefficient)` for every displayed term with
    /// `|∂| <= dd` and `Σ p-indices <= dp`; `p_0` is kept as index 0.
    pub(crate) fn raw_terms(&self, dp: u32, dd: u32) -> Vec<(Vec<u32>, Vec<u32>, CoeffFrac)> {
        let mut out = Vec::new();
        let k = &self.k;
        let one = CoeffFrac::one();
        let int = |n: i64| CoeffFrac::from_int(n);
        let mut push = |ps: Vec<u32>, ds: Vec<u32>, c: CoeffFrac| {
            if ps.iter().sum::<u32>() <= dp && ds.iter().sum::<u32>() <= dd && !c.is_zero() {
                out.push((ps, ds, c));
            }
        };
        match self.family {
            Family::TrigA => {
                for a in 1..=dd {
                    for b in 1..=dd {
                        push(vec![a + b], vec![a, b], one.clone());
                        push(vec![a, b], vec![a + b], -k);
                    }
                    let coeff = &(&(&one + k) * &int(a as i64)) - &(k * &self.p0);
                    push(vec![a], vec![a], coeff);
                }
            }
            Family::RatA => {
                for a in 1..=dd {
                    for b in 1..=dd {
                        push(vec![a + b - 2], vec![a, b], one.clone());
                    }
                }
                for a in 0..=dd {
                    for b in 0..=dd {
                        push(vec![a, b], vec![a + b + 2], -k);
                    }
                }
                for a in 2..=dd {
                    push(vec![a - 2], vec![a], &(&one + k) * &int(a as i64 - 1));
                }
            }
            Family::RatB => {
                for a in 1..=dd {
                    for b in 1..=dd {
                        push(vec![a + b - 1], vec![a, b], one.clone());
                        push(vec![a, b], vec![a + b + 1], -k);
                    }
                }
                let shift = &(&(k * &self.p0).scale(&crate::coeff::int(2)) + &self.l)
                    + &CoeffFrac::ratio(1, 2);
                for a in 1..=dd {
                    let c = &(&(&one + k) * &int(a as i64)) - &shift;
                    push(vec![a - 1], vec![a], c);
                }
                push(vec![], vec![1], &(k * &self.p0) * &self.p0);
            }
            Family::TrigBC => {
                let two_h = self.h.scale(&crate::coeff::int(2));
                for a in 1..=dd {
                    for b in 1..=dd {
                        push(vec![a + b], vec![a, b], one.clone());
                        push(vec![a + b - 1], vec![a, b], int(2));
                    }
                }
                for a in 2..=dd {
                    for b in 0..=a - 2 {
                        push(vec![a - b - 1, b], vec![a], k.scale(&crate::coeff::int(-2)));
                        push(vec![a - b - 1, b + 1], vec![a], -k);
                    }
                }
                for a in 1..=dd {
                    let ai = int(a as i64);
                    let c1 = &(&ai + &(k * &int(a as i64 + 1))) + &two_h;
                    let c2 = &(&(&int(2 * a as i64 - 1) + &(k * &int(2 * a as i64))) + &two_h) - &self.p;
                    push(vec![a], vec![a], c1);
                    push(vec![a - 1], vec![a], c2);
                }
            }
        }
        out
    }
}

/// `f · p_{i1} p_{i2} ⋯` with `p_0 = p0`.
fn times_ps(f: &SymFun, idx: &[u32], p0: &CoeffFrac) -> SymFun {
    let mut out = f.clone();
    for &a in idx {
        out = if a == 0 { out.scale(p0) } else { out.mul_p(a) };
    }
    out
}

/// Applies `op` to `f`, term group by term group as displayed.
pub fn apply_inf(op: &InfOperator, f: &SymFun, d: u32) -> Result<SymFun> {
    if f.degree() > d {
        return Err(Error::Precondition(format!(
            "input has degree {} above the cap {d}",
            f.degree()
        )));
    }
    let k = &op.k;
    let p0 = &op.p0;
    let one = CoeffFrac::one();
    let int = |n: i64| CoeffFrac::from_int(n);
    let d_u = d as usize;
    // da[a] = ∂_a f, dab[a][b] = ∂_b ∂_a f
    let da: Vec<SymFun> = (0..=d).map(|a| if a == 0 { SymFun::zero() } else { f.d(a) }).collect();
    let dab = |a: usize, b: usize| -> SymFun {
        if a == 0 || b == 0 || a > d_u || b > d_u || da[a].is_zero() {
            SymFun::zero()
        } else {
            da[a].d(b as u32)
        }
    };
    let dget = |a: u32| -> &SymFun { &da[a as usize] };
    let zero = SymFun::zero();
    let dsafe = |a: u32| -> &SymFun { if a <= d { dget(a) } else { &zero } };
    let mut out = SymFun::zero();

    match op.family {
        Family::TrigA => {
            // Σ_{a,b>0} p_{a+b} ∂_a ∂_b
            for a in 1..=d {
                for b in 1..=d {
                    let t = dab(a as usize, b as usize);
                    if !t.is_zero() {
                        out = out.add(&times_ps(&t, &[a + b], p0));
                    }
                }
            }
            // -k Σ_{a,b>0} p_a p_b ∂_{a+b}
            for a in 1..=d {
                for b in 1..=d {
                    let t = dsafe(a + b);
                    if !t.is_zero() {
                        out = out.add(&times_ps(t, &[a, b], p0).scale(&-k));
                    }
                }
            }
            // -k p0 Σ p_a ∂_a + (1+k) Σ a p_a ∂_a
            for a in 1..=d {
                let t = dget(a);
                if t.is_zero() {
                    continue;
                }
                let c = &(&(&one + k) * &int(a as i64)) - &(k * p0);
                out = out.add(&times_ps(t, &[a], p0).scale(&c));
            }
        }
        Family::RatA => {
            // Σ_{a,b>=1} p_{a+b-2} ∂_a ∂_b
            for a in 1..=d {
                for b in 1..=d {
                    let t = dab(a as usize, b as usize);
                    if !t.is_zero() {
                        out = out.add(&times_ps(&t, &[a + b - 2], p0));
                    }
                }
            }
            // -k Σ_{a,b>=0} p_a p_b ∂_{a+b+2}
            for a in 0..=d {
                for b in 0..=d {
                    let t = dsafe(a + b + 2);
                    if !t.is_zero() {
                        out = out.add(&times_ps(t, &[a, b], p0).scale(&-k));
                    }
                }
            }
            // (1+k) Σ_{a>=2} (a-1) p_{a-2} ∂_a
            for a in 2..=d {
                let t = dget(a);
                if !t.is_zero() {
                    let c = &(&one + k) * &int(a as i64 - 1);
                    out = out.add(&times_ps(t, &[a - 2], p0).scale(&c));
                }
            }
        }
        Family::RatB => {
            // Σ_{a,b>=1} p_{a+b-1} ∂_a ∂_b
            for a in 1..=d {
                for b in 1..=d {
                    let t = dab(a as usize, b as usize);
                    if !t.is_zero() {
                        out = out.add(&times_ps(&t, &[a + b - 1], p0));
                    }
                }
            }
            // -k Σ_{a,b>=1} p_a p_b ∂_{a+b+1}
            for a in 1..=d {
                for b in 1..=d {
                    let t = dsafe(a + b + 1);
                    if !t.is_zero() {
                        out = out.add(&times_ps(t, &[a, b], p0).scale(&-k));
                    }
                }
            }
            // (1+k) Σ_{a>=1} a p_{a-1} ∂_a
            for a in 1..=d {
                let t = dget(a);
                if !t.is_zero() {
                    let c = &(&one + k) * &int(a as i64);
                    out = out.add(&times_ps(t, &[a - 1], p0).scale(&c));
                }
            }
            // -(2k p0 + l + 1/2) Σ_{a>=1} p_{a-1} ∂_a
            let shift = &(&(k * p0).scale(&crate::coeff::int(2)) + &op.l) + &CoeffFrac::ratio(1, 2);
            for a in 1..=d {
                let t = dget(a);
                if !t.is_zero() {
                    out = out.add(&times_ps(t, &[a - 1], p0).scale(&-&shift));
                }
            }
            // k p0^2 ∂_1
            if d >= 1 {
                out = out.add(&dget(1).scale(&(&(k * p0) * p0)));
            }
        }
        Family::TrigBC => {
            // Σ_{a,b>0} (p_{a+b} + 2 p_{a+b-1}) ∂_a ∂_b
            for a in 1..=d {
                for b in 1..=d {
                    let t = dab(a as usize, b as usize);
                    if !t.is_zero() {
                        out = out.add(&times_ps(&t, &[a + b], p0));
                        out = out.add(&times_ps(&t, &[a + b - 1], p0).scale(&int(2)));
                    }
                }
            }
            // -k Σ_{a>=2} [Σ_{b=0}^{a-2} p_{a-b-1} (2 p_b + p_{b+1})] ∂_a
            for a in 2..=d {
                let t = dget(a);
                if t.is_zero() {
                    continue;
                }
                let mut inner = SymFun::zero();
                for b in 0..=a - 2 {
                    inner = inner.add(&times_ps(t, &[a - b - 1, b], p0).scale(&int(2)));
                    inner = inner.add(&times_ps(t, &[a - b - 1, b + 1], p0));
                }
                out = out.add(&inner.scale(&-k));
            }
            // Σ_{a>=1} [(a + k(a+1) + 2h) p_a + (2a - 1 + 2ka + 2h - p) p_{a-1}] ∂_a
            let two_h = op.h.scale(&crate::coeff::int(2));
            for a in 1..=d {
                let t = dget(a);
                if t.is_zero() {
                    continue;
                }
                let c1 = &(&int(a as i64) + &(k * &int(a as i64 + 1))) + &two_h;
                let c2 = &(&(&int(2 * a as i64 - 1) + &(k * &int(2 * a as i64))) + &two_h) - &op.p;
                out = out.add(&times_ps(t, &[a], p0).scale(&c1));
                out = out.add(&times_ps(t, &[a - 1], p0).scale(&c2));
            }
        }
    }
    Ok(out)
}

/// `P = Σ p_a ∂_a`, the grading operator.
pub fn momentum(f: &SymFun) -> SymFun {
    SymFun::from_terms(
        f.iter()
            .map(|(l, c)| (l.clone(), c.scale(&crate::coeff::int(l.weight() as i64)))),
    )
}

/// Whether `[op, P]` annihilates every `p_λ` with `|λ| <= d`. Only defined for
/// the degree-preserving trigonometric A family.
pub fn commutator_vanishes(op: &InfOperator, d: u32) -> Result<bool> {
    if op.family != Family::TrigA {
        return Err(Error::Precondition(format!(
            "commutator with P is only checked for trigA, not {}",
            op.family
        )));
    }
    for lambda in partitions_up_to(d) {
        let f = SymFun::p(lambda);
        let lp = op.apply(&momentum(&f), d)?;
        let pl = momentum(&op.apply(&f, d)?);
        if !lp.sub(&pl).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SymFun {
        SymFun::p(s.parse().unwrap())
    }

    fn c(s: &str) -> CoeffFrac {
        s.parse().unwrap()
    }

    #[test]
    fn hand_computed_images() {
        let a = InfOperator::new(Family::TrigA);
        assert_eq!(a.apply(&p("1"), 1).unwrap(), p("1").scale(&c("1 + k - k*p0")));
        let want = p("2").scale(&c("4 + 4*k - 2*k*p0")).add(&p("1,1").scale(&c("-2*k")));
        assert_eq!(a.apply(&p("2"), 2).unwrap(), want);

        let b = InfOperator::new(Family::RatB);
        assert_eq!(
            b.apply(&p("1"), 1).unwrap(),
            SymFun::constant(c("(k + 1/2 - l)*p0 - k*p0^2"))
        );

        let bc = InfOperator::new(Family::TrigBC);
        let want = p("1")
            .scale(&c("1 + 2*k + 2*h"))
            .add(&SymFun::constant(c("(1 + 2*k + 2*h - p)*p0")));
        assert_eq!(bc.apply(&p("1"), 1).unwrap(), want);

        for fam in Family::ALL {
            assert!(InfOperator::new(fam).apply(&SymFun::one(), 0).unwrap().is_zero());
        }
    }

    #[test]
    fn momentum_and_commutator() {
        assert_eq!(momentum(&p("2,1")), p("2,1").scale(&c("3")));
        assert!(momentum(&SymFun::one()).is_zero());
        assert!(commutator_vanishes(&InfOperator::new(Family::TrigA), 4).unwrap());
        assert!(commutator_vanishes(&InfOperator::new(Family::RatA), 3).is_err());
    }

    #[test]
    fn degree_contracts() {
        let f = p("2,1").add(&p("3"));
        let ra = InfOperator::new(Family::RatA).apply(&f, 3).unwrap();
        assert!(ra.iter().all(|(l, _)| l.weight() == 1));
        let rb = InfOperator::new(Family::RatB).apply(&f, 3).unwrap();
        assert!(rb.iter().all(|(l, _)| l.weight() == 2));
        assert!(InfOperator::new(Family::TrigA).apply(&f, 2).is_err());
    }
}
