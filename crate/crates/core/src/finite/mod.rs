//! Polynomials in finitely many variables, the finite gauged CMS operators,
//! the restriction homomorphisms from Λ, and the deformed algebra `Λ_{m,n,k}`.

pub mod gauge;
mod mpoly;
mod operators;

use std::collections::HashMap;

pub use mpoly::{Exps, MPoly, Vars};
pub use operators::{
    apply_cms_trig_a, apply_gauged_bc_trig, apply_gauged_deformed_bc, apply_gauged_rational_a,
    apply_gauged_rational_b,
};

use crate::coeff::{Bindings, CoeffFrac, Param};
use crate::error::{Error, Result};
use crate::linalg;
use crate::symfun::{partitions_of, Partition, SymFun};

/// How `h` is treated when restricting along `φ_{m,n}`.
#[derive(Clone, Debug, PartialEq)]
pub enum HChoice {
    /// `h = -km - n - p/2 - q`.
    Restriction,
    /// `h` stays a free symbol.
    Free,
    Value(CoeffFrac),
}

/// Sizes and parameters of a deformed BC(m,n) system.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedContext {
    pub m: usize,
    pub n: usize,
    pub k: CoeffFrac,
    pub p: CoeffFrac,
    pub q: CoeffFrac,
    pub h: HChoice,
}

impl DeformedContext {
    /// Fully symbolic `k, p, q`.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Self::with_bindings(m, n, &Bindings::new())
    }

    /// Takes `k, p, q` (and optionally `h`) from `bindings`; unbound ones
    /// stay symbolic.
    pub fn with_bindings(m: usize, n: usize, bindings: &Bindings) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::Precondition("m + n must be at least 1".into()));
        }
        Ok(DeformedContext {
            m,
            n,
            k: bindings.value_or_symbol(Param::K),
            p: bindings.value_or_symbol(Param::P),
            q: bindings.value_or_symbol(Param::Q),
            h: match bindings.get(Param::H) {
                Some(v) => HChoice::Value(v.clone()),
                None => HChoice::Restriction,
            },
        })
    }

    pub fn with_h(mut self, h: HChoice) -> Self {
        self.h = h;
        self
    }

    pub fn vars(&self) -> Vars {
        Vars::UV(self.m, self.n)
    }

    /// `-km - n - p/2 - q`.
    pub fn restriction_h(&self) -> CoeffFrac {
        let m = CoeffFrac::from_int(self.m as i64);
        let n = CoeffFrac::from_int(self.n as i64);
        let half_p = self.p.scale(&crate::coeff::rat(1, 2));
        &(&(&-&(&self.k * &m) - &n) - &half_p) - &self.q
    }

    /// Value of `h` used by this context, or `None` if it is left free.
    pub fn h_value(&self) -> Option<CoeffFrac> {
        match &self.h {
            HChoice::Restriction => Some(self.restriction_h()),
            HChoice::Free => None,
            HChoice::Value(v) => Some(v.clone()),
        }
    }

    /// `p0 = m + n/k`.
    pub fn p0(&self) -> Result<CoeffFrac> {
        let n_over_k = CoeffFrac::from_int(self.n as i64)
            .div(&self.k)
            .map_err(|e| e.with_context("p0 = m + n/k"))?;
        Ok(&CoeffFrac::from_int(self.m as i64) + &n_over_k)
    }

    /// Substitutions applied to coefficients under `φ_{m,n}`: `p0`, `h`, and
    /// every parameter the context binds to something other than itself.
    pub fn bindings(&self) -> Result<Bindings> {
        let mut b = Bindings::new();
        for (param, value) in [(Param::K, &self.k), (Param::P, &self.p), (Param::Q, &self.q)] {
            if *value != CoeffFrac::param(param) {
                b.set(param, value.clone());
            }
        }
        b.set(Param::P0, self.p0()?);
        if let Some(h) = self.h_value() {
            b.set(Param::H, h);
        }
        Ok(b)
    }
}

/// A restriction homomorphism out of Λ.
#[derive(Clone, Debug, PartialEq)]
pub enum Restriction {
    /// `φ_N`: `p_a ↦ Σ z_i^a`, `p0 ↦ N`.
    Dim(usize),
    /// `φ_{m,n}`: `p_a ↦ Σ u_i^a + k^{-1} Σ v_α^a`, `p0 ↦ m + n/k`.
    Deformed(DeformedContext),
}

impl Restriction {
    pub fn vars(&self) -> Vars {
        match self {
            Restriction::Dim(n) => Vars::Z(*n),
            Restriction::Deformed(ctx) => ctx.vars(),
        }
    }

    pub fn coefficient_bindings(&self) -> Result<Bindings> {
        match self {
            Restriction::Dim(n) => Ok(Bindings::new().with(Param::P0, CoeffFrac::from_int(*n as i64))),
            Restriction::Deformed(ctx) => ctx.bindings(),
        }
    }

    /// Image of the single power sum `p_a`, `a >= 1`.
    pub fn power_sum(&self, a: u32) -> Result<MPoly> {
        let vars = self.vars();
        let a = a as u16;
        match self {
            Restriction::Dim(n) => Ok(MPoly::power_sum(vars, 0..*n, a)),
            Restriction::Deformed(ctx) => {
                let inv_k = ctx.k.inv().map_err(|e| e.with_context("k^-1 in a deformed power sum"))?;
                let u = MPoly::power_sum(vars, 0..ctx.m, a);
                let v = MPoly::power_sum(vars, ctx.m..ctx.m + ctx.n, a).scale(&inv_k);
                Ok(u.add(&v))
            }
        }
    }

    pub fn apply(&self, f: &SymFun) -> Result<MPoly> {
        let bindings = self.coefficient_bindings()?;
        let vars = self.vars();
        let mut powers: HashMap<u32, MPoly> = HashMap::new();
        let mut products: HashMap<Partition, MPoly> = HashMap::new();
        products.insert(Partition::empty(), MPoly::one(vars));
        let mut out = MPoly::zero(vars);
        for (lambda, c) in f.iter() {
            let c = c
                .substitute(&bindings)
                .map_err(|e| e.with_context(format!("p({lambda})")))?;
            if c.is_zero() {
                continue;
            }
            let image = self.product(lambda, &mut powers, &mut products)?;
            out = out.add(&image.scale(&c));
        }
        Ok(out)
    }

    fn product(
        &self,
        lambda: &Partition,
        powers: &mut HashMap<u32, MPoly>,
        products: &mut HashMap<Partition, MPoly>,
    ) -> Result<MPoly> {
        if let Some(hit) = products.get(lambda) {
            return Ok(hit.clone());
        }
        let last = *lambda.parts().last().expect("nonempty partition");
        let (_, rest) = lambda.remove_one(last).expect("part present");
        let rest_image = self.product(&rest, powers, products)?;
        if !powers.contains_key(&last) {
            powers.insert(last, self.power_sum(last)?);
        }
        let image = rest_image.mul(&powers[&last]);
        products.insert(lambda.clone(), image.clone());
        Ok(image)
    }
}

/// `φ_N`.
pub fn phi_n(f: &SymFun, n: usize) -> Result<MPoly> {
    if n == 0 {
        return Err(Error::Precondition("N must be at least 1".into()));
    }
    Restriction::Dim(n).apply(f)
}

/// `φ_{m,n}`.
pub fn phi_mn(f: &SymFun, ctx: &DeformedContext) -> Result<MPoly> {
    Restriction::Deformed(ctx.clone()).apply(f)
}

/// Membership in `Λ_{m,n,k}`: separate symmetry plus
/// `u_i ∂f/∂u_i - k v_α ∂f/∂v_α = 0` on every hyperplane `u_i = v_α`.
pub fn is_in_deformed_algebra(f: &MPoly, ctx: &DeformedContext) -> bool {
    if f.vars() != ctx.vars() || !f.is_block_symmetric() {
        return false;
    }
    let m = ctx.m;
    (0..m).all(|i| {
        (m..m + ctx.n).all(|a| {
            let cond = f.euler(i).sub(&f.euler(a).scale(&ctx.k));
            cond.identify(i, a).is_zero()
        })
    })
}

/// Basis of the kernel of `hom` on homogeneous components of degree `1..=d`.
///
/// Vectors are returned degree by degree; within a degree each basis vector
/// is normalized to have coefficient 1 at one free partition.
pub fn kernel_basis(hom: &Restriction, d: u32) -> Result<Vec<SymFun>> {
    let mut out = Vec::new();
    for e in 1..=d {
        let parts = partitions_of(e);
        let images = parts
            .iter()
            .map(|l| hom.apply(&SymFun::p(l.clone())))
            .collect::<Result<Vec<_>>>()?;
        let (rows, _) = coordinate_rows(&images);
        for v in linalg::nullspace(&rows, parts.len()) {
            out.push(SymFun::from_terms(parts.iter().cloned().zip(v)));
        }
    }
    Ok(out)
}

/// Matrix whose columns are the coordinate vectors of `polys`, rows indexed by
/// the union of their monomials in canonical order.
pub(crate) fn coordinate_rows(polys: &[MPoly]) -> (Vec<Vec<CoeffFrac>>, Vec<Exps>) {
    let mut monos: Vec<Exps> = polys
        .iter()
        .flat_map(|p| p.iter().map(|(e, _)| e.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    monos.reverse();
    let rows = monos
        .iter()
        .map(|e| polys.iter().map(|p| p.coeff(e)).collect())
        .collect();
    (rows, monos)
}

/// Whether `g` lies in the span of `basis` (all in Λ), by exact elimination
/// on p-basis coordinates.
pub fn in_span(basis: &[SymFun], g: &SymFun) -> bool {
    let mut labels: Vec<Partition> = basis
        .iter()
        .chain(std::iter::once(g))
        .flat_map(|f| f.iter().map(|(l, _)| l.clone()))
        .collect();
    labels.sort();
    labels.dedup();
    let vectors: Vec<Vec<CoeffFrac>> = basis
        .iter()
        .map(|f| labels.iter().map(|l| f.coeff(l)).collect())
        .collect();
    let target: Vec<CoeffFrac> = labels.iter().map(|l| g.coeff(l)).collect();
    linalg::solve_in_span(&vectors, &target).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv(s: &str) -> MPoly {
        MPoly::parse(Vars::UV(1, 1), s).unwrap()
    }

    #[test]
    fn phi_examples() {
        let p1 = SymFun::p_single(1);
        assert_eq!(phi_n(&p1, 2).unwrap(), MPoly::parse(Vars::Z(2), "1 * z1 + 1 * z2").unwrap());
        let f = SymFun::p_single(2).sub(&SymFun::p("1,1".parse().unwrap()));
        assert!(phi_n(&f, 1).unwrap().is_zero());
        let g = p1.scale(&CoeffFrac::param(Param::P0));
        assert_eq!(
            phi_n(&g, 3).unwrap(),
            MPoly::parse(Vars::Z(3), "3 * z1 + 3 * z2 + 3 * z3").unwrap()
        );
        let ctx = DeformedContext::new(1, 1).unwrap();
        assert_eq!(phi_mn(&p1, &ctx).unwrap(), uv("1 * u1 + 1/k * v1"));
        assert_eq!(
            phi_mn(&SymFun::p_single(2), &ctx).unwrap(),
            uv("1 * u1^2 + 1/k * v1^2")
        );
        let ctx21 = DeformedContext::new(2, 1).unwrap();
        let c = phi_mn(&SymFun::constant(CoeffFrac::param(Param::P0)), &ctx21).unwrap();
        assert_eq!(c, MPoly::parse(Vars::UV(2, 1), "2 + 1/k").unwrap());
        let ctx0 = DeformedContext::with_bindings(1, 1, &Bindings::new().with(Param::K, 0i64)).unwrap();
        assert!(matches!(phi_mn(&p1, &ctx0), Err(Error::Pole { .. })));
    }

    #[test]
    fn membership_examples() {
        let ctx = DeformedContext::new(1, 1).unwrap();
        assert!(is_in_deformed_algebra(&uv("1 * u1 + 1/k * v1"), &ctx));
        assert!(!is_in_deformed_algebra(&uv("1 * u1"), &ctx));
        assert!(!is_in_deformed_algebra(&uv("1 * u1*v1"), &ctx));
    }

    #[test]
    fn kernel_of_one_variable() {
        let ker = kernel_basis(&Restriction::Dim(1), 2).unwrap();
        assert_eq!(ker.len(), 1);
        assert!(in_span(&ker, &SymFun::p_single(2).sub(&SymFun::p("1,1".parse().unwrap()))));
        assert!(kernel_basis(&Restriction::Dim(3), 3).unwrap().is_empty());
    }
}
