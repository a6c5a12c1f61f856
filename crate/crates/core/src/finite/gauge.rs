//! Constant-remainder validation of ground-state gauges.
//!
//! For `L = Σ g_i ∂_i² - V` and `Ψ0 = Π_f F(L_f)^{e_f}` with linear forms
//! `L_f = Σ c_{f,i} x_i` and `F = sinh` or `F = id`,
//!
//! `Ψ0^{-1} L Ψ0 = Σ g_i (∂_i² + 2 (∂_i log Ψ0) ∂_i) + W`,
//! `W = Σ_i g_i [(Σ_f e_f c_{f,i} G_f)² - Σ_f e_f c_{f,i}² S_f] - V`,
//!
//! where `G = coth, S = 1/sinh²` (or `G = 1/L, S = 1/L²`). The gauge is valid
//! iff `W` is a constant. With `Y_i = e^{2x_i}` every `G_f`, `S_f` is a ratio
//! of polynomials, and the check becomes the polynomial identity
//! `W·D = c·D` for `D = Π_f den_f²`.

use super::{MPoly, Vars};
use crate::coeff::{poly_gcd, CoeffFrac, Param, ParamPoly};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    /// Factors `(L_f)^{e_f}`.
    Rational,
    /// Factors `sinh(L_f)^{e_f}`.
    Hyperbolic,
}

/// A Schrödinger operator together with a candidate ground-state factor.
#[derive(Clone, Debug)]
pub struct GaugeProblem {
    pub geometry: Geometry,
    /// Kinetic weights `g_i`.
    pub kinetic: Vec<CoeffFrac>,
    /// `(c_f, e_f)`: the linear form and its exponent in `Ψ0`.
    pub factors: Vec<(Vec<i64>, CoeffFrac)>,
    /// `(c_f, v_f)`: the potential is `V = Σ v_f S_f`.
    pub potential: Vec<(Vec<i64>, CoeffFrac)>,
}

fn sym(p: Param) -> CoeffFrac {
    CoeffFrac::param(p)
}

fn form(n: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut c = vec![0; n];
    for &(i, x) in entries {
        c[i] += x;
    }
    c
}

/// Pairs `x_i - x_j`, `x_i + x_j` (the latter only if `plus`) over `range`.
fn pair_forms(n: usize, range: std::ops::Range<usize>, plus: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in range.clone() {
        for j in i + 1..range.end {
            out.push(form(n, &[(i, 1), (j, -1)]));
            if plus {
                out.push(form(n, &[(i, 1), (j, 1)]));
            }
        }
    }
    out
}

impl GaugeProblem {
    /// `Σ ∂² - Σ 2k(k+1)/sinh²(x_i - x_j)` with `Ψ0 = Π sinh^{-k}(x_i - x_j)`.
    pub fn trig_a(n: usize) -> Self {
        let k = sym(Param::K);
        let coupling = &(&k * &(&k + &CoeffFrac::one())).scale(&crate::coeff::int(2));
        let pairs = pair_forms(n, 0..n, false);
        GaugeProblem {
            geometry: Geometry::Hyperbolic,
            kinetic: vec![CoeffFrac::one(); n],
            factors: pairs.iter().map(|f| (f.clone(), -&k)).collect(),
            potential: pairs.iter().map(|f| (f.clone(), coupling.clone())).collect(),
        }
    }

    /// Rational A_N with `Ψ0 = Π (x_i - x_j)^{-k}`.
    pub fn rational_a(n: usize) -> Self {
        let mut g = GaugeProblem::trig_a(n);
        g.geometry = Geometry::Rational;
        g
    }

    /// Rational B_N with `Ψ0 = Π (x_i² - x_j²)^{-k} Π x_i^{-l}`.
    pub fn rational_b(n: usize) -> Self {
        let k = sym(Param::K);
        let l = sym(Param::L);
        let coupling = (&k * &(&k + &CoeffFrac::one())).scale(&crate::coeff::int(2));
        let mut factors = Vec::new();
        let mut potential = Vec::new();
        for f in pair_forms(n, 0..n, true) {
            factors.push((f.clone(), -&k));
            potential.push((f, coupling.clone()));
        }
        for i in 0..n {
            let f = form(n, &[(i, 1)]);
            factors.push((f.clone(), -&l));
            potential.push((f, &l * &(&l + &CoeffFrac::one())));
        }
        GaugeProblem {
            geometry: Geometry::Rational,
            kinetic: vec![CoeffFrac::one(); n],
            factors,
            potential,
        }
    }

    /// Trigonometric BC_N: exponents `-k` on `sinh(x_i ± x_j)`, `-p` on
    /// `sinh x_i`, `-q` on `sinh 2x_i`.
    pub fn trig_bc(n: usize) -> Self {
        Self::deformed_bc(n, 0, false)
    }

    /// Deformed BC(m,n) with `x` in the first `m` slots and `y` in the last
    /// `n`. With `flip_one_body` the one-body `p`, `q` terms enter the
    /// potential with the opposite sign.
    pub fn deformed_bc(m: usize, n: usize, flip_one_body: bool) -> Self {
        let total = m + n;
        let one = CoeffFrac::one();
        let two = CoeffFrac::from_int(2);
        let four = CoeffFrac::from_int(4);
        let k = sym(Param::K);
        let p = sym(Param::P);
        let q = sym(Param::Q);
        let inv_k = k.inv().expect("symbolic k");
        let r = &p * &inv_k;
        // 2s + 1 = (2q + 1)/k
        let s = (&(&(&(&two * &q) + &one) * &inv_k) - &one).scale(&crate::coeff::rat(1, 2));

        let mut kinetic = vec![one.clone(); m];
        kinetic.extend(std::iter::repeat(k.clone()).take(n));
        let mut factors = Vec::new();
        let mut potential = Vec::new();
        let mut add = |f: Vec<i64>, e: CoeffFrac, v: CoeffFrac| {
            factors.push((f.clone(), e));
            potential.push((f, v));
        };

        let xx = &two * &(&k * &(&k + &one));
        for f in pair_forms(total, 0..m, true) {
            add(f, -&k, xx.clone());
        }
        let yy = &two * &(&inv_k + &one);
        for f in pair_forms(total, m..total, true) {
            add(f, -&inv_k, yy.clone());
        }
        let xy = &two * &(&k + &one);
        for i in 0..m {
            for a in m..total {
                add(form(total, &[(i, 1), (a, -1)]), -&one, xy.clone());
                add(form(total, &[(i, 1), (a, 1)]), -&one, xy.clone());
            }
        }
        let sign = if flip_one_body { -&one } else { one.clone() };
        let px = &(&p * &(&(&p + &(&two * &q)) + &one)) * &sign;
        let qx = &(&four * &(&q * &(&q + &one))) * &sign;
        for i in 0..m {
            add(form(total, &[(i, 1)]), -&p, px.clone());
            add(form(total, &[(i, 2)]), -&q, qx.clone());
        }
        let ry = &k * &(&r * &(&(&r + &(&two * &s)) + &one));
        let sy = &(&four * &k) * &(&s * &(&s + &one));
        for a in m..total {
            add(form(total, &[(a, 1)]), -&r, ry.clone());
            add(form(total, &[(a, 2)]), -&s, sy.clone());
        }
        GaugeProblem {
            geometry: Geometry::Hyperbolic,
            kinetic,
            factors,
            potential,
        }
    }

    fn nvars(&self) -> usize {
        self.kinetic.len()
    }

    /// Returns `Some(W)` if the remainder `W` is a constant, `None` otherwise.
    pub fn constant_remainder(&self) -> Result<Option<CoeffFrac>> {
        let n = self.nvars();
        let vars = Vars::Z(n);
        let nf = self.factors.len();

        // Scalar weights α_{ff'} (f <= f') and β_f.
        let mut alpha: Vec<Vec<CoeffFrac>> = vec![vec![CoeffFrac::zero(); nf]; nf];
        let mut beta: Vec<CoeffFrac> = vec![CoeffFrac::zero(); nf];
        for (i, g) in self.kinetic.iter().enumerate() {
            for f in 0..nf {
                let (cf, ef) = &self.factors[f];
                if cf[i] == 0 {
                    continue;
                }
                let wf = &(g * ef) * &CoeffFrac::from_int(cf[i]);
                beta[f] = &beta[f] - &(&wf * &CoeffFrac::from_int(cf[i]));
                for f2 in f..nf {
                    let (cf2, ef2) = &self.factors[f2];
                    if cf2[i] == 0 {
                        continue;
                    }
                    let mult = if f == f2 { 1 } else { 2 };
                    let t = &(&wf * ef2) * &CoeffFrac::from_int(cf2[i] * mult);
                    alpha[f][f2] = &alpha[f][f2] + &t;
                }
            }
        }
        // Potential terms whose form is not a factor get their own slot.
        let mut forms: Vec<Vec<i64>> = self.factors.iter().map(|(c, _)| c.clone()).collect();
        for (c, v) in &self.potential {
            let slot = match forms.iter().position(|f| f == c) {
                Some(s) => s,
                None => {
                    forms.push(c.clone());
                    beta.push(CoeffFrac::zero());
                    forms.len() - 1
                }
            };
            beta[slot] = &beta[slot] - v;
        }

        // Clear parameter denominators.
        let mut lcm = ParamPoly::one();
        for x in alpha.iter().flatten().chain(beta.iter()) {
            let d = x.denom();
            if !d.is_one() {
                let g = poly_gcd(&lcm, d);
                lcm = (&lcm * d).exact_div(&g).expect("gcd divides");
            }
        }
        let scaled = |x: &CoeffFrac| -> ParamPoly {
            (x.numer() * &lcm).exact_div(x.denom()).expect("lcm clears denominator")
        };

        let pieces: Vec<Pieces> = forms.iter().map(|c| self.pieces(vars, c)).collect();
        let mut d_all = MPoly::one(vars);
        for pc in &pieces {
            d_all = d_all.mul(&pc.den).mul(&pc.den);
        }
        let div = |a: &MPoly<ParamPoly>, b: &MPoly<ParamPoly>| {
            a.exact_div_by(b, |x, y| x.exact_div(y))
                .expect("denominator factor divides the common denominator")
        };
        let d_over: Vec<MPoly<ParamPoly>> = pieces.iter().map(|pc| div(&d_all, &pc.den)).collect();

        let mut total = MPoly::zero(vars);
        for f in 0..nf {
            for f2 in f..nf {
                if alpha[f][f2].is_zero() {
                    continue;
                }
                let a = scaled(&alpha[f][f2]);
                let term = pieces[f]
                    .num_g
                    .mul(&pieces[f2].num_g)
                    .mul(&div(&d_over[f], &pieces[f2].den));
                total = total.add(&term.scale(&a));
            }
        }
        for (f, b) in beta.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let term = pieces[f].num_s.mul(&div(&d_over[f], &pieces[f].den));
            total = total.add(&term.scale(&scaled(b)));
        }

        let Some((_, lead_d)) = d_all.leading() else {
            unreachable!("common denominator is nonzero")
        };
        let c = match total.leading() {
            None => ParamPoly::zero(),
            Some((_, lead_t)) => match lead_t.exact_div(lead_d) {
                Some(c) => c,
                None => return Ok(None),
            },
        };
        if !total.sub(&d_all.scale(&c)).is_zero() {
            return Ok(None);
        }
        Ok(Some(CoeffFrac::new(c, lcm)?))
    }

    fn pieces(&self, vars: Vars, c: &[i64]) -> Pieces {
        match self.geometry {
            Geometry::Rational => {
                let mut lin = MPoly::zero(vars);
                for (i, &x) in c.iter().enumerate() {
                    lin = lin.add(&MPoly::var(vars, i).scale(&ParamPoly::from_int(x)));
                }
                Pieces {
                    num_g: MPoly::one(vars),
                    num_s: MPoly::one(vars),
                    den: lin,
                }
            }
            Geometry::Hyperbolic => {
                let pos: Vec<u16> = c.iter().map(|&x| x.max(0) as u16).collect();
                let neg: Vec<u16> = c.iter().map(|&x| (-x).max(0) as u16).collect();
                let p = MPoly::monomial(vars, pos, ParamPoly::one());
                let q = MPoly::monomial(vars, neg, ParamPoly::one());
                Pieces {
                    num_g: p.add(&q),
                    num_s: p.mul(&q).scale(&ParamPoly::from_int(4)),
                    den: p.sub(&q),
                }
            }
        }
    }
}

/// `G_f = num_g/den`, `S_f = num_s/den²`.
struct Pieces {
    num_g: MPoly<ParamPoly>,
    num_s: MPoly<ParamPoly>,
    den: MPoly<ParamPoly>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_a_remainder_is_the_rho_constant() {
        for n in 1..=3i64 {
            let w = GaugeProblem::trig_a(n as usize).constant_remainder().unwrap();
            let want: CoeffFrac = format!("k^2*{}/3", n * (n * n - 1)).parse().unwrap();
            assert_eq!(w, Some(want), "N={n}");
        }
    }

    #[test]
    fn rational_remainders_vanish() {
        for n in 1..=3 {
            assert_eq!(
                GaugeProblem::rational_a(n).constant_remainder().unwrap(),
                Some(CoeffFrac::zero())
            );
            assert_eq!(
                GaugeProblem::rational_b(n).constant_remainder().unwrap(),
                Some(CoeffFrac::zero())
            );
        }
    }

    #[test]
    fn wrong_exponent_is_rejected() {
        let mut g = GaugeProblem::trig_a(2);
        g.factors[0].1 = CoeffFrac::param(Param::P);
        assert_eq!(g.constant_remainder().unwrap(), None);
    }

    #[test]
    fn bc_and_deformed_gauges_leave_constants() {
        for n in 1..=2 {
            assert!(GaugeProblem::trig_bc(n).constant_remainder().unwrap().is_some(), "BC_{n}");
        }
        for (m, n) in [(1, 1), (0, 2)] {
            let w = GaugeProblem::deformed_bc(m, n, false).constant_remainder().unwrap();
            assert!(w.is_some(), "BC({m},{n})");
        }
    }

    #[test]
    fn flipped_one_body_signs_are_rejected() {
        assert_eq!(GaugeProblem::deformed_bc(1, 1, true).constant_remainder().unwrap(), None);
    }
}
