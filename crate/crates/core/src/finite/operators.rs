//! Gauged finite CMS operators acting on symmetric polynomials.
//!
//! Every operator is a sum of one-particle terms `a(x_i) ∂_i² + b(x_i) ∂_i`
//! and pair terms `w · (A(x_i) ∂_i f - c A(x_j) ∂_j f) / (x_i - x_j)`; the
//! pair numerators are divided exactly.

use super::{DeformedContext, MPoly, Vars};
use crate::coeff::CoeffFrac;
use crate::error::{Error, Result};

/// Univariate polynomial `Σ c_d x^d` given by its coefficients.
type Uni = Vec<CoeffFrac>;

fn c(n: i64) -> CoeffFrac {
    CoeffFrac::from_int(n)
}

/// `g(x_i) · f`.
fn times_uni(f: &MPoly, i: usize, g: &Uni) -> MPoly {
    let mut out = MPoly::zero(f.vars());
    for (d, coeff) in g.iter().enumerate() {
        if !coeff.is_zero() {
            out = out.add(&f.mul_var(i, d as u16).scale(coeff));
        }
    }
    out
}

/// `Σ_{i in range} a(x_i) ∂_i² f + b(x_i) ∂_i f`.
fn one_body(f: &MPoly, range: std::ops::Range<usize>, a: &Uni, b: &Uni) -> MPoly {
    let mut out = MPoly::zero(f.vars());
    for i in range {
        let d1 = f.partial(i);
        let d2 = d1.partial(i);
        out = out.add(&times_uni(&d2, i, a)).add(&times_uni(&d1, i, b));
    }
    out
}

/// `w(x_i, x_j) · (A(x_i) ∂_i f - c A(x_j) ∂_j f) / (x_i - x_j)`.
fn pair(f: &MPoly, i: usize, j: usize, big_a: &Uni, cj: &CoeffFrac, w: &MPoly) -> Result<MPoly> {
    let num = times_uni(&f.partial(i), i, big_a).sub(&times_uni(&f.partial(j), j, big_a).scale(cj));
    Ok(num.div_difference(i, j)?.mul(w))
}

fn require_symmetric(f: &MPoly) -> Result<()> {
    if f.is_block_symmetric() {
        Ok(())
    } else {
        Err(Error::NotSymmetric)
    }
}

fn require_z(f: &MPoly) -> Result<usize> {
    match f.vars() {
        Vars::Z(n) => Ok(n),
        Vars::UV(m, 0) => Ok(m),
        other => Err(Error::Precondition(format!(
            "expected a single block of variables, got {other:?}"
        ))),
    }
}

/// Trigonometric A_N operator in exponential coordinates `z_i = e^{2x_i}`:
/// `Σ (z_i∂_i)² - k Σ_{i<j} (z_i+z_j)/(z_i-z_j) (z_i∂_i - z_j∂_j)`.
pub fn apply_cms_trig_a(f: &MPoly, k: &CoeffFrac) -> Result<MPoly> {
    require_symmetric(f)?;
    let n = require_z(f)?;
    let vars = f.vars();
    let mut out = one_body(f, 0..n, &vec![c(0), c(0), c(1)], &vec![c(0), c(1)]);
    let one = CoeffFrac::one();
    for i in 0..n {
        for j in i + 1..n {
            let w = MPoly::var(vars, i).add(&MPoly::var(vars, j)).scale(&-k);
            out = out.add(&pair(f, i, j, &vec![c(0), c(1)], &one, &w)?);
        }
    }
    Ok(out)
}

/// Gauged rational A_N operator: `Δ - 2k Σ_{i<j} (∂_i - ∂_j)/(x_i - x_j)`.
pub fn apply_gauged_rational_a(f: &MPoly, k: &CoeffFrac) -> Result<MPoly> {
    require_symmetric(f)?;
    let n = require_z(f)?;
    let vars = f.vars();
    let mut out = one_body(f, 0..n, &vec![c(1)], &vec![]);
    let w = MPoly::constant(vars, k.scale(&crate::coeff::int(-2)));
    for i in 0..n {
        for j in i + 1..n {
            out = out.add(&pair(f, i, j, &vec![c(1)], &CoeffFrac::one(), &w)?);
        }
    }
    Ok(out)
}

/// Gauged rational B_N operator in `z_i = x_i²`, divided by 4:
/// `Σ z_i∂_i² + (1/2 - l)∂_i - 2k Σ_{i<j} (z_i∂_i - z_j∂_j)/(z_i - z_j)`.
pub fn apply_gauged_rational_b(f: &MPoly, k: &CoeffFrac, l: &CoeffFrac) -> Result<MPoly> {
    require_symmetric(f)?;
    let n = require_z(f)?;
    let vars = f.vars();
    let b0 = &CoeffFrac::ratio(1, 2) - l;
    let mut out = one_body(f, 0..n, &vec![c(0), c(1)], &vec![b0]);
    let w = MPoly::constant(vars, k.scale(&crate::coeff::int(-2)));
    for i in 0..n {
        for j in i + 1..n {
            out = out.add(&pair(f, i, j, &vec![c(0), c(1)], &CoeffFrac::one(), &w)?);
        }
    }
    Ok(out)
}

/// `u(u+2)` as a univariate polynomial.
fn u_u2() -> Uni {
    vec![c(0), c(2), c(1)]
}

/// First-order one-body coefficient `(1-p-2q)u + (1-2p-2q)` of the BC operator.
fn bc_drift(p: &CoeffFrac, q: &CoeffFrac) -> Uni {
    let one = CoeffFrac::one();
    let two_q = q.scale(&crate::coeff::int(2));
    vec![
        &(&one - &p.scale(&crate::coeff::int(2))) - &two_q,
        &(&one - p) - &two_q,
    ]
}

/// Gauged trigonometric BC_N operator in `u_i = 2 sinh² x_i`, divided by 4:
/// `Σ u(u+2)∂² + ((1-p-2q)u + 1-2p-2q)∂ - 2k Σ_{i<j} (u_i(u_i+2)∂_i - u_j(u_j+2)∂_j)/(u_i-u_j)`.
pub fn apply_gauged_bc_trig(f: &MPoly, k: &CoeffFrac, p: &CoeffFrac, q: &CoeffFrac) -> Result<MPoly> {
    require_symmetric(f)?;
    let n = require_z(f)?;
    let vars = f.vars();
    let mut out = one_body(f, 0..n, &u_u2(), &bc_drift(p, q));
    let w = MPoly::constant(vars, k.scale(&crate::coeff::int(-2)));
    for i in 0..n {
        for j in i + 1..n {
            out = out.add(&pair(f, i, j, &u_u2(), &CoeffFrac::one(), &w)?);
        }
    }
    Ok(out)
}

/// Gauged deformed BC(m,n) operator in `u_i = 2sinh² x_i`, `v_α = 2sinh² y_α`,
/// divided by 4. The `v`-block carries `k` times the BC operator with
/// parameters `(1/k, r, s)`, `r = p/k`, `2s+1 = (2q+1)/k`; the cross term is
/// `-2 Σ (u_i(u_i+2)∂_{u_i} - k v_α(v_α+2)∂_{v_α})/(u_i - v_α)`.
pub fn apply_gauged_deformed_bc(f: &MPoly, ctx: &DeformedContext) -> Result<MPoly> {
    if f.vars() != ctx.vars() {
        return Err(Error::Precondition(format!(
            "polynomial has variables {:?}, context expects {:?}",
            f.vars(),
            ctx.vars()
        )));
    }
    if !super::is_in_deformed_algebra(f, ctx) {
        return Err(Error::NotInDeformedAlgebra);
    }
    let (m, n) = (ctx.m, ctx.n);
    let vars = f.vars();
    let (k, p, q) = (&ctx.k, &ctx.p, &ctx.q);
    let mut out = one_body(f, 0..m, &u_u2(), &bc_drift(p, q));

    // k·[v(v+2)∂² + ((1-r-2s)v + 1-2r-2s)∂] with r, s eliminated:
    // k(1-r-2s) = 2k - p - 2q - 1, k(1-2r-2s) = 2k - 2p - 2q - 1.
    let two_k = k.scale(&crate::coeff::int(2));
    let one = CoeffFrac::one();
    let two_q = q.scale(&crate::coeff::int(2));
    let v_drift = vec![
        &(&(&two_k - &p.scale(&crate::coeff::int(2))) - &two_q) - &one,
        &(&(&two_k - p) - &two_q) - &one,
    ];
    let v_a: Uni = u_u2().iter().map(|x| x * k).collect();
    out = out.add(&one_body(f, m..m + n, &v_a, &v_drift));

    let w_uu = MPoly::constant(vars, k.scale(&crate::coeff::int(-2)));
    let w_minus2 = MPoly::constant(vars, c(-2));
    for i in 0..m {
        for j in i + 1..m {
            out = out.add(&pair(f, i, j, &u_u2(), &one, &w_uu)?);
        }
    }
    for a in m..m + n {
        for b in a + 1..m + n {
            out = out.add(&pair(f, a, b, &u_u2(), &one, &w_minus2)?);
        }
    }
    for i in 0..m {
        for a in m..m + n {
            out = out.add(&pair(f, i, a, &u_u2(), k, &w_minus2)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Param;

    fn sym(p: Param) -> CoeffFrac {
        CoeffFrac::param(p)
    }

    fn z(n: usize, s: &str) -> MPoly {
        MPoly::parse(Vars::Z(n), s).unwrap()
    }

    #[test]
    fn trig_a_examples() {
        let k = sym(Param::K);
        assert!(apply_cms_trig_a(&z(2, "1"), &k).unwrap().is_zero());
        let out = apply_cms_trig_a(&z(2, "1 * z1 + 1 * z2"), &k).unwrap();
        assert_eq!(out, z(2, "(1 - k) * z1 + (1 - k) * z2"));
        let out = apply_cms_trig_a(&z(2, "1 * z1^2 + 1 * z2^2"), &k).unwrap();
        let want = z(2, "(4 - 2*k) * z1^2 + (4 - 2*k) * z2^2 + (-4*k) * z1*z2");
        assert_eq!(out, want);
        assert!(matches!(
            apply_cms_trig_a(&z(2, "1 * z1"), &k),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn rational_examples() {
        let k = sym(Param::K);
        let l = sym(Param::L);
        assert!(apply_gauged_rational_a(&z(2, "1 * z1 + 1 * z2"), &k).unwrap().is_zero());
        assert_eq!(
            apply_gauged_rational_a(&z(2, "1 * z1^2 + 1 * z2^2"), &k).unwrap(),
            z(2, "4 - 4*k")
        );
        for n in 1..=4usize {
            let p1 = MPoly::power_sum(Vars::Z(n), 0..n, 1);
            let out = apply_gauged_rational_b(&p1, &k, &l).unwrap();
            let nn = n as i64;
            let want: CoeffFrac = format!("(k + 1/2 - l)*{nn} - k*{}", nn * nn).parse().unwrap();
            assert_eq!(out, MPoly::constant(Vars::Z(n), want));
        }
    }
}
