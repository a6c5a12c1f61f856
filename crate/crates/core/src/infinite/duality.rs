//! Scaling dualities `σ⁻¹ L σ = c · L̂` with `σ: p_a -> k p_a`.
//!
//! The conjugated operator is expanded on a low-degree basis, matched against
//! the basic operators making up the family, and the resulting parameter map
//! is then checked on every `p_λ` up to the requested degree.

use serde::Serialize;

use super::{Family, InfOperator, NormalSymbol};
use crate::coeff::{Bindings, CoeffFrac, Param};
use crate::error::{Error, Result};
use crate::linalg;
use crate::symfun::{partitions_up_to, Partition, SymFun};

/// `σ f`: multiplies the coefficient of `p_λ` by `k^{ℓ(λ)}`.
pub fn sigma(f: &SymFun, k: &CoeffFrac) -> Result<SymFun> {
    scale_by_length(f, k, 1)
}

/// `σ⁻¹ f`.
pub fn sigma_inv(f: &SymFun, k: &CoeffFrac) -> Result<SymFun> {
    scale_by_length(f, k, -1)
}

fn scale_by_length(f: &SymFun, k: &CoeffFrac, sign: i32) -> Result<SymFun> {
    let mut out = SymFun::zero();
    for (l, c) in f.iter() {
        out.add_term(l.clone(), c * &k.pow(sign * l.len() as i32)?);
    }
    Ok(out)
}

fn conjugated(op: &InfOperator, f: &SymFun, d: u32) -> Result<SymFun> {
    sigma_inv(&op.apply(&sigma(f, &op.k)?, d)?, &op.k)
}

/// Builds a symbol from `(p-indices, ∂-indices)` pairs with unit coefficient,
/// keeping only terms whose derivative weight is at most `dd`.
fn basic(terms: impl IntoIterator<Item = (Vec<u32>, Vec<u32>)>, dd: u32) -> NormalSymbol {
    let mut out = NormalSymbol::new();
    for (ps, ds) in terms {
        if ds.iter().sum::<u32>() <= dd && ps.iter().all(|&a| a > 0) {
            out.add_term(Partition::from_unsorted(ps), Partition::from_unsorted(ds), CoeffFrac::one());
        }
    }
    out
}

fn pairs(dd: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=dd).flat_map(move |a| (1..=dd).map(move |b| (a, b)))
}

/// `Σ p_{a+b} ∂_a ∂_b`
fn d2(dd: u32) -> NormalSymbol {
    basic(pairs(dd).map(|(a, b)| (vec![a + b], vec![a, b])), dd)
}

/// `Σ p_a p_b ∂_{a+b}`
fn q_ab(dd: u32) -> NormalSymbol {
    basic(pairs(dd).map(|(a, b)| (vec![a, b], vec![a + b])), dd)
}

/// `Σ p_a ∂_a`
fn euler_p(dd: u32) -> NormalSymbol {
    basic((1..=dd).map(|a| (vec![a], vec![a])), dd)
}

/// `Σ a p_a ∂_a`
fn euler_e(dd: u32) -> NormalSymbol {
    let mut out = NormalSymbol::new();
    for a in 1..=dd {
        out.add_term(Partition::single(a), Partition::single(a), CoeffFrac::from_int(a as i64));
    }
    out
}

/// Matches `target` images against those of `ops` on `basis`; the solution
/// must exist and be unique.
fn fit(ops: &[NormalSymbol], targets: &[SymFun], basis: &[SymFun]) -> Result<Vec<CoeffFrac>> {
    let mut coords: Vec<Partition> = Vec::new();
    let images: Vec<Vec<SymFun>> = ops
        .iter()
        .map(|op| basis.iter().map(|f| op.apply(f)).collect())
        .collect();
    for img in images.iter().flatten().chain(targets) {
        for (l, _) in img.iter() {
            if !coords.contains(l) {
                coords.push(l.clone());
            }
        }
    }
    let flatten = |imgs: &[SymFun]| -> Vec<CoeffFrac> {
        imgs.iter()
            .flat_map(|g| coords.iter().map(move |l| g.coeff(l)))
            .collect()
    };
    let vectors: Vec<Vec<CoeffFrac>> = images.iter().map(|v| flatten(v)).collect();
    let target = flatten(targets);
    if linalg::rank(&vectors, target.len()) < ops.len() {
        return Err(Error::DualityFailure(
            "basic operators are dependent on the fitting basis".into(),
        ));
    }
    linalg::solve_in_span(&vectors, &target).ok_or_else(|| {
        Error::DualityFailure("conjugated operator is not a combination of the basic operators".into())
    })
}

fn fitting_basis(d: u32) -> Vec<SymFun> {
    partitions_up_to(d)
        .into_iter()
        .filter(|l| !l.is_empty())
        .map(SymFun::p)
        .collect()
}

/// Checks `σ⁻¹ op σ = c · fitted` on every `p_λ`, `1 <= |λ| <= d`.
fn verify(op: &InfOperator, fitted: &InfOperator, c: &CoeffFrac, d: u32) -> Result<bool> {
    for f in fitting_basis(d) {
        let lhs = conjugated(op, &f, d)?;
        let rhs = fitted.apply(&f, d)?.scale(c);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_symbol(c: &CoeffFrac, p: Param) -> bool {
    *c == CoeffFrac::param(p)
}

/// Parameter map of the trigonometric A duality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub c: String,
    pub k_hat: String,
    pub p0_hat: String,
    /// Verified on every `p_λ` up to the requested degree.
    pub verified: bool,
    /// `None` unless `k` and `p0` are the bare symbols.
    pub involutive: Option<bool>,
    /// The alternative map `(1/k, p0/k)`, checked the same way.
    pub reference_p0_hat: String,
    pub reference_verified: bool,
    pub reference_involutive: Option<bool>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.verified && self.involutive != Some(false)
    }
}

fn involutive(map: &[(Param, CoeffFrac)]) -> Result<bool> {
    let mut b = Bindings::new();
    for (p, v) in map {
        b.set(*p, v.clone());
    }
    for (p, v) in map {
        if v.substitute(&b)? != CoeffFrac::param(*p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fits `(c, k̂, p̂0)` from degrees 1 and 2 and verifies through degree `d`.
pub fn scaling_conjugate(op: &InfOperator, d: u32) -> Result<DualityReport> {
    if op.family != Family::TrigA {
        return Err(Error::Precondition(format!("expected trigA, got {}", op.family)));
    }
    let fd = 2;
    let basis = fitting_basis(fd);
    let targets: Vec<SymFun> = basis
        .iter()
        .map(|f| conjugated(op, f, fd))
        .collect::<Result<_>>()?;
    let w = fit(&[d2(fd), q_ab(fd), euler_p(fd), euler_e(fd)], &targets, &basis)?;
    let c = w[0].clone();
    if c.is_zero() {
        return Err(Error::DualityFailure("overall scalar vanishes".into()));
    }
    let k_hat = (-&w[1]).div(&c)?;
    let p0_hat = (-&w[2]).div(&(&c * &k_hat))?;
    if w[3] != &c * &(&CoeffFrac::one() + &k_hat) {
        return Err(Error::DualityFailure(
            "Euler coefficient inconsistent with fitted k".into(),
        ));
    }
    let fitted = InfOperator::trig_a(k_hat.clone(), p0_hat.clone());
    let verified = verify(op, &fitted, &c, d)?;

    let reference_p0_hat = op.p0.div(&op.k)?;
    let reference = InfOperator::trig_a(k_hat.clone(), reference_p0_hat.clone());
    let reference_verified = verify(op, &reference, &c, d)?;

    let symbolic = is_symbol(&op.k, Param::K) && is_symbol(&op.p0, Param::P0);
    let (involutive_fit, involutive_ref) = if symbolic {
        (
            Some(involutive(&[(Param::K, k_hat.clone()), (Param::P0, p0_hat.clone())])?),
            Some(involutive(&[(Param::K, k_hat.clone()), (Param::P0, reference_p0_hat.clone())])?),
        )
    } else {
        (None, None)
    };
    Ok(DualityReport {
        c: c.to_string(),
        k_hat: k_hat.to_string(),
        p0_hat: p0_hat.to_string(),
        verified,
        involutive: involutive_fit,
        reference_p0_hat: reference_p0_hat.to_string(),
        reference_verified,
        reference_involutive: involutive_ref,
    })
}

/// One root of the fitted quadratic for `p̂0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BcCandidate {
    pub p0_hat: String,
    pub p_hat: String,
    pub q_hat: String,
    pub verified: bool,
    /// `p̂ = p/k`, `2q̂+1 = (2q+1)/k`, `2ĥ-1 = (2h-1)/k`.
    pub satisfies_relations: bool,
    pub involutive: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BcDualityReport {
    pub c: String,
    pub k_hat: String,
    pub h_hat: String,
    pub candidates: Vec<BcCandidate>,
}

impl BcDualityReport {
    /// Some candidate verifies, reproduces the relations, and is not
    /// known to fail involutivity.
    pub fn passed(&self) -> bool {
        self.candidates
            .iter()
            .any(|c| c.verified && c.satisfies_relations && c.involutive != Some(false))
    }
}

/// Basic operators of the BC family, in the order
/// `D2a, D2b, Q1, Q2, R, E, P, E', T`.
fn bc_basics(dd: u32) -> Vec<NormalSymbol> {
    let d2b = basic(pairs(dd).map(|(a, b)| (vec![a + b - 1], vec![a, b])), dd);
    let q1 = basic(
        (2..=dd).flat_map(|a| (1..a.saturating_sub(1)).map(move |b| (vec![a - 1 - b, b], vec![a]))),
        dd,
    );
    let r = basic((2..=dd).map(|a| (vec![a - 1], vec![a])), dd);
    let mut e_shift = NormalSymbol::new();
    for a in 2..=dd {
        e_shift.add_term(Partition::single(a - 1), Partition::single(a), CoeffFrac::from_int(a as i64));
    }
    let t = basic([(vec![], vec![1])], dd);
    vec![d2(dd), d2b, q1, q_ab(dd), r, euler_e(dd), euler_p(dd), e_shift, t]
}

/// Fits the BC duality from degrees up to 3 and verifies through degree `d`.
///
/// `op` should carry `p0 = -(h + p/2 + q)/k`. The `p̂0` equation is quadratic,
/// so both roots are reported.
pub fn scaling_conjugate_bc(op: &InfOperator, d: u32) -> Result<BcDualityReport> {
    if op.family != Family::TrigBC {
        return Err(Error::Precondition(format!("expected trigBC, got {}", op.family)));
    }
    let fd = 3;
    let basis = fitting_basis(fd);
    let targets: Vec<SymFun> = basis
        .iter()
        .map(|f| conjugated(op, f, fd))
        .collect::<Result<_>>()?;
    let w = fit(&bc_basics(fd), &targets, &basis)?;
    let one = CoeffFrac::one();
    let two = CoeffFrac::from_int(2);
    let c = w[0].clone();
    if c.is_zero() {
        return Err(Error::DualityFailure("overall scalar vanishes".into()));
    }
    let wc = |i: usize| w[i].div(&c);
    let k_hat = -&wc(3)?;
    let consistent = wc(1)? == two
        && wc(2)? == k_hat.scale(&crate::coeff::int(-2))
        && wc(5)? == &one + &k_hat
        && wc(7)? == &two + &k_hat.scale(&crate::coeff::int(2));
    if !consistent {
        return Err(Error::DualityFailure("coefficients inconsistent with a single k̂".into()));
    }
    let h_hat = (&wc(6)? - &k_hat).scale(&crate::coeff::rat(1, 2));
    // R: w4/c = -2k̂x + 2ĥ - 1 - p̂;  T: w8/c = (1 + 2k̂ + 2ĥ - p̂) x
    let (w4, w8) = (wc(4)?, wc(8)?);
    let a2 = k_hat.scale(&crate::coeff::int(2));
    let b1 = &(&two + &a2) + &w4;
    let disc = &(&b1 * &b1) + &(&(&a2 * &w8).scale(&crate::coeff::int(4)));
    let root = disc
        .sqrt_exact()
        .ok_or_else(|| Error::DualityFailure(format!("discriminant {disc} is not a square")))?;
    let denom = a2.scale(&crate::coeff::int(2));
    let mut xs = vec![(&-&b1 + &root).div(&denom)?, (&-&b1 - &root).div(&denom)?];
    xs.dedup();

    let symbolic = [(Param::K, &op.k), (Param::P, &op.p), (Param::Q, &op.q), (Param::H, &op.h)]
        .iter()
        .all(|(p, v)| is_symbol(v, *p));
    let half = crate::coeff::rat(1, 2);
    let mut candidates = Vec::new();
    for x in xs {
        let p_hat = &(&(&-&(&a2 * &x) + &h_hat.scale(&crate::coeff::int(2))) - &one) - &w4;
        let q_hat = &(&-&h_hat - &(&k_hat * &x)) - &p_hat.scale(&half);
        let fitted = InfOperator::trig_bc(k_hat.clone(), p_hat.clone(), q_hat.clone(), h_hat.clone(), x.clone());
        let verified = verify(op, &fitted, &c, d)?;
        let relations = p_hat == op.p.div(&op.k)?
            && &q_hat.scale(&crate::coeff::int(2)) + &one == (&op.q.scale(&crate::coeff::int(2)) + &one).div(&op.k)?
            && &h_hat.scale(&crate::coeff::int(2)) - &one == (&op.h.scale(&crate::coeff::int(2)) - &one).div(&op.k)?;
        let involutive = if symbolic {
            Some(involutive(&[
                (Param::K, k_hat.clone()),
                (Param::P, p_hat.clone()),
                (Param::Q, q_hat.clone()),
                (Param::H, h_hat.clone()),
            ])?)
        } else {
            None
        };
        candidates.push(BcCandidate {
            p0_hat: x.to_string(),
            p_hat: p_hat.to_string(),
            q_hat: q_hat.to_string(),
            verified,
            satisfies_relations: relations,
            involutive,
        });
    }
    candidates.sort_by(|a, b| b.satisfies_relations.cmp(&a.satisfies_relations).then(a.p_hat.cmp(&b.p_hat)));
    Ok(BcDualityReport {
        c: c.to_string(),
        k_hat: k_hat.to_string(),
        h_hat: h_hat.to_string(),
        candidates,
    })
}
