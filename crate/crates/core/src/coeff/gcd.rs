//! Multivariate gcd over `Q[k, p, q, h, p0, l]`.
//!
//! Recursive scheme: split off the content with respect to the lowest
//! occurring parameter, recurse on the contents, and run a primitive
//! pseudo-remainder sequence on the primitive parts.

use num_traits::Zero;

use super::{Mono, Param, ParamPoly, Rational, NPARAMS};

/// Monic gcd of two parameter polynomials; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one();
    }
    if a.len() == 1 || b.len() == 1 {
        return monomial_gcd(a, b);
    }
    if a.monic() == b.monic() {
        return a.monic();
    }
    let mask = a.vars() | b.vars();
    if coprime_by_evaluation(a, b, mask) {
        return ParamPoly::one();
    }
    let x = Param::from_index(mask.trailing_zeros() as usize);

    let (ca, pa) = split_content(a, x);
    let (cb, pb) = split_content(b, x);
    let c = poly_gcd(&ca, &cb);
    let g = if pa.degree_in(x) == 0 || pb.degree_in(x) == 0 {
        ParamPoly::one()
    } else {
        primitive_prs(pa, pb, x)
    };
    c.mul_poly(&g).monic()
}

/// Evaluation points tried for the coprimality test, one row per attempt.
const POINTS: [[(i64, i64); NPARAMS]; 3] = [
    [(3, 7), (11, 5), (-13, 3), (17, 11), (5, 19), (-7, 2)],
    [(-5, 3), (7, 13), (19, 7), (-2, 9), (23, 4), (13, 17)],
    [(29, 6), (-17, 8), (9, 23), (31, 10), (-11, 7), (3, 29)],
];

/// `true` only when `gcd(a, b)` is certainly constant: for every parameter
/// `x` there is a specialization of the others that keeps both leading
/// coefficients in `x` and leaves coprime univariate images.
fn coprime_by_evaluation(a: &ParamPoly, b: &ParamPoly, mask: u8) -> bool {
    (0..NPARAMS)
        .filter(|i| mask & (1 << i) != 0)
        .all(|i| univariate_image_degree(a, b, Param::from_index(i)) == Some(0))
}

fn univariate_image_degree(a: &ParamPoly, b: &ParamPoly, x: Param) -> Option<usize> {
    for row in &POINTS {
        let point: [Rational; NPARAMS] =
            std::array::from_fn(|i| Rational::new(row[i].0.into(), row[i].1.into()));
        let ua: Vec<Rational> = a.to_univariate(x).iter().map(|c| c.eval(&point)).collect();
        let ub: Vec<Rational> = b.to_univariate(x).iter().map(|c| c.eval(&point)).collect();
        if ua.last().is_none_or(|c| c.is_zero()) || ub.last().is_none_or(|c| c.is_zero()) {
            continue;
        }
        return Some(univariate_gcd_degree(ua, ub));
    }
    None
}

/// Degree of the gcd of two dense univariate polynomials over Q (low
/// degree first, nonzero leading coefficients).
fn univariate_gcd_degree(mut f: Vec<Rational>, mut g: Vec<Rational>) -> usize {
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.len() == 1 {
            return 0;
        }
        let lg = g.last().expect("nonempty").clone();
        while f.len() >= g.len() {
            let factor = f.last().expect("nonempty").clone() / &lg;
            let shift = f.len() - g.len();
            for (i, c) in g.iter().enumerate() {
                let t = &factor * c;
                f[i + shift] -= t;
            }
            f.pop();
            while f.last().is_some_and(|c| c.is_zero()) {
                f.pop();
            }
            if f.is_empty() {
                return g.len() - 1;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
}

fn monomial_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    let mut g = Mono([u16::MAX; NPARAMS]);
    for (m, _) in a.iter().chain(b.iter()) {
        g = g.gcd(m);
    }
    ParamPoly::monomial(g, num_traits::One::one())
}

/// Content with respect to `x` (a polynomial free of `x`) and the primitive part.
fn split_content(p: &ParamPoly, x: Param) -> (ParamPoly, ParamPoly) {
    let coeffs = p.to_univariate(x);
    let mut content = ParamPoly::zero();
    for c in coeffs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        content = poly_gcd(&content, c);
        if content.is_one() {
            break;
        }
    }
    let pp = p
        .exact_div(&content)
        .expect("content divides its polynomial");
    (content, pp)
}

fn primitive_prs(a: ParamPoly, b: ParamPoly, x: Param) -> ParamPoly {
    let (mut f, mut g) = if a.degree_in(x) >= b.degree_in(x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_rem(&f, &g, x);
        if r.is_zero() {
            return split_content(&g, x).1.monic();
        }
        if r.degree_in(x) == 0 {
            return ParamPoly::one();
        }
        f = g;
        g = split_content(&r, x).1;
    }
}

fn pseudo_rem(f: &ParamPoly, g: &ParamPoly, x: Param) -> ParamPoly {
    let gv = g.to_univariate(x);
    let dg = gv.len() - 1;
    let lc = gv[dg].clone();
    let mut r = f.to_univariate(x);
    while r.len() > dg && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul_poly(&lc);
        }
        for (i, gc) in gv.iter().enumerate() {
            r[i + shift] = r[i + shift].sub_poly(&lr.mul_poly(gc));
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    ParamPoly::from_univariate(&r, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    fn v(p: Param) -> ParamPoly {
        ParamPoly::var(p)
    }

    #[test]
    fn gcd_of_products() {
        let k = v(Param::K);
        let p = v(Param::P);
        let q = v(Param::Q);
        let one = ParamPoly::one();
        let f1 = &(&k + &p) - &one;
        let f2 = &(&k * &q) + &p.scale(&int(3));
        let f3 = &p - &q;
        let a = &(&f1 * &f2) * &f3;
        let b = &(&f1 * &f3) * &(&k + &q);
        let g = poly_gcd(&a, &b);
        assert_eq!(g, (&f1 * &f3).monic());
        assert!(poly_gcd(&f2, &(&k + &q)).is_one());
    }

    #[test]
    fn univariate_degrees() {
        let r = |n: i64| Rational::from_integer(n.into());
        // (x - 1)(x - 2) and (x - 1)(x + 3)
        let f = vec![r(2), r(-3), r(1)];
        let g = vec![r(-3), r(2), r(1)];
        assert_eq!(univariate_gcd_degree(f, g), 1);
        assert_eq!(univariate_gcd_degree(vec![r(1), r(1)], vec![r(-1), r(1)]), 0);
    }

    #[test]
    fn gcd_with_monomials_and_constants() {
        let k = v(Param::K);
        let h = v(Param::H);
        let a = &(&k * &k) * &h;
        let b = &(&k * &h) + &k;
        assert_eq!(poly_gcd(&a, &b), k);
        assert!(poly_gcd(&a, &ParamPoly::from_int(4)).is_one());
    }
}
