//! Normal-ordered symbols `Σ c_{λμ} p_λ ∂_μ` and the Fourier-type swap.

use std::collections::BTreeMap;
use std::fmt;

use super::{Family, InfOperator};
use crate::coeff::CoeffFrac;
use crate::error::{Error, Result};
use crate::symfun::{Partition, SymFun};

/// Finite window of a normal-ordered operator: keys are `(λ, μ)` for the
/// term `p_λ ∂_μ`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NormalSymbol {
    terms: BTreeMap<(Partition, Partition), CoeffFrac>,
}

impl NormalSymbol {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, lambda: Partition, mu: Partition, c: CoeffFrac) {
        if c.is_zero() {
            return;
        }
        let key = (lambda, mu);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn coeff(&self, lambda: &Partition, mu: &Partition) -> CoeffFrac {
        self.terms
            .get(&(lambda.clone(), mu.clone()))
            .cloned()
            .unwrap_or_else(CoeffFrac::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Partition, &CoeffFrac)> {
        self.terms.iter().map(|((l, m), c)| (l, m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&Partition, &Partition) -> bool) -> NormalSymbol {
        NormalSymbol {
            terms: self
                .terms
                .iter()
                .filter(|((l, m), _)| pred(l, m))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &NormalSymbol) -> NormalSymbol {
        let mut out = self.clone();
        for (l, m, c) in other.iter() {
            out.add_term(l.clone(), m.clone(), -c);
        }
        out
    }

    /// Acts on `f` with the window's terms.
    pub fn apply(&self, f: &SymFun) -> SymFun {
        let mut out = SymFun::zero();
        for ((lambda, mu), c) in &self.terms {
            let mut g = f.clone();
            for &b in mu.parts() {
                g = g.d(b);
                if g.is_zero() {
                    break;
                }
            }
            if g.is_zero() {
                continue;
            }
            for &a in lambda.parts() {
                g = g.mul_p(a);
            }
            out = out.add(&g.scale(c));
        }
        out
    }

    /// Image under `p_a -> -∂_a/k`, `∂_a -> -k p_a`, brought back to normal
    /// order with `[∂_a, p_b] = a δ_{ab}`.
    pub fn fourier_swap(&self, k: &CoeffFrac) -> Result<NormalSymbol> {
        let minus_inv_k = (-k).inv()?;
        let minus_k = -k;
        let mut out = NormalSymbol::new();
        for ((lambda, mu), c) in &self.terms {
            let mut coeff = c.clone();
            for _ in 0..lambda.len() {
                coeff = &coeff * &minus_inv_k;
            }
            for _ in 0..mu.len() {
                coeff = &coeff * &minus_k;
            }
            // ∂_λ p_μ in normal order: the new p's come from μ, the new ∂'s from λ.
            for (p_part, d_part, w) in reorder(lambda, mu) {
                out.add_term(p_part, d_part, coeff.scale(&crate::coeff::int(w as i64)));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for NormalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((l, m), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*p({l})*d({m})")?;
        }
        Ok(())
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Normal ordering of `∂_λ p_μ`: a sum over partial matchings of equal parts,
/// each matched pair of value `a` contributing a factor `a`. Returns
/// `(remaining μ, remaining λ, weight)`.
fn reorder(lambda: &Partition, mu: &Partition) -> Vec<(Partition, Partition, u64)> {
    let mut out = vec![(mu.clone(), lambda.clone(), 1u64)];
    for a in lambda.distinct_parts() {
        let s = lambda.multiplicity(a) as u64;
        let t = mu.multiplicity(a) as u64;
        let mut next = Vec::new();
        for (pm, dm, w) in &out {
            for j in 0..=s.min(t) {
                let ways = binom(s, j) * binom(t, j) * (1..=j).product::<u64>() * (a as u64).pow(j as u32);
                let mut pm2 = pm.clone();
                let mut dm2 = dm.clone();
                for _ in 0..j {
                    pm2 = pm2.remove_one(a).expect("part present").1;
                    dm2 = dm2.remove_one(a).expect("part present").1;
                }
                next.push((pm2, dm2, w * ways));
            }
        }
        out = next;
    }
    out
}

/// The window `|λ| <= dp`, `|μ| <= dd` of the normal-ordered symbol of `op`.
pub fn normal_symbol(op: &InfOperator, dp: u32, dd: u32) -> NormalSymbol {
    let mut out = NormalSymbol::new();
    for (ps, ds, c) in op.raw_terms(dp, dd) {
        let mut coeff = c;
        let mut parts = Vec::new();
        for a in ps {
            if a == 0 {
                coeff = &coeff * &op.p0;
            } else {
                parts.push(a);
            }
        }
        out.add_term(Partition::from_unsorted(parts), Partition::from_unsorted(ds), coeff);
    }
    out
}

/// Outcome of the Fourier-type swap on the trigonometric A symbol.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FourierReport {
    /// `p_{a+b}∂_a∂_b` block maps onto `-k p_a p_b ∂_{a+b}`.
    pub quadratic_to_cubic: bool,
    /// And back.
    pub cubic_to_quadratic: bool,
    /// The diagonal block is preserved up to constants.
    pub diagonal_preserved: bool,
    /// Constant produced by the diagonal term of index `a`.
    pub constants: Vec<(u32, String)>,
}

impl FourierReport {
    pub fn passed(&self) -> bool {
        self.quadratic_to_cubic && self.cubic_to_quadratic && self.diagonal_preserved
    }
}

/// Applies the swap to the trigonometric A symbol in the window
/// `(cutoff, cutoff)` and compares block by block.
pub fn fourier_swap_check(op: &InfOperator, cutoff: u32) -> Result<FourierReport> {
    if op.family != Family::TrigA {
        return Err(Error::Precondition(format!(
            "the swap check is defined for trigA, not {}",
            op.family
        )));
    }
    let sym = normal_symbol(op, cutoff, cutoff);
    let block_a = sym.filter(|l, m| l.len() == 1 && m.len() == 2);
    let block_b = sym.filter(|l, m| l.len() == 2 && m.len() == 1);
    let diag = sym.filter(|l, m| l.len() == 1 && m.len() == 1);

    let quadratic_to_cubic = block_a.fourier_swap(&op.k)?.sub(&block_b).is_empty();
    let cubic_to_quadratic = block_b.fourier_swap(&op.k)?.sub(&block_a).is_empty();

    let empty = Partition::empty();
    let mut constants = Vec::new();
    let mut diagonal_preserved = true;
    for (l, m, c) in diag.iter() {
        let mut single = NormalSymbol::new();
        single.add_term(l.clone(), m.clone(), c.clone());
        let image = single.fourier_swap(&op.k)?;
        let constant = image.coeff(&empty, &empty);
        let rest = image.filter(|a, b| !(a.is_empty() && b.is_empty()));
        diagonal_preserved &= rest == single;
        constants.push((l.parts()[0], constant.to_string()));
    }
    Ok(FourierReport {
        quadratic_to_cubic,
        cubic_to_quadratic,
        diagonal_preserved,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::partitions_up_to;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn c(s: &str) -> CoeffFrac {
        s.parse().unwrap()
    }

    #[test]
    fn trig_a_symbol_entries() {
        let sym = normal_symbol(&InfOperator::new(Family::TrigA), 4, 4);
        assert_eq!(sym.coeff(&part("2"), &part("1,1")), c("1"));
        assert_eq!(sym.coeff(&part("1,1"), &part("2")), c("-k"));
        assert_eq!(sym.coeff(&part("1"), &part("1")), c("1 + k - k*p0"));
        assert_eq!(sym.coeff(&part("3"), &part("2,1")), c("2"));
    }

    #[test]
    fn symbols_reproduce_the_action() {
        for fam in Family::ALL {
            let op = InfOperator::new(fam);
            let sym = normal_symbol(&op, 4, 4);
            for lambda in partitions_up_to(4) {
                let f = SymFun::p(lambda.clone());
                assert_eq!(sym.apply(&f), op.apply(&f, 4).unwrap(), "{fam} on p({lambda})");
            }
        }
    }

    #[test]
    fn reorder_counts_matchings() {
        // ∂_1 ∂_1 p_1 p_1 = p_1² ∂_1² + 4 p_1 ∂_1 + 2
        let terms = reorder(&part("1,1"), &part("1,1"));
        let weights: Vec<u64> = terms.iter().map(|t| t.2).collect();
        assert_eq!(weights, vec![1, 4, 2]);
    }

    #[test]
    fn swap_exchanges_blocks() {
        let report = fourier_swap_check(&InfOperator::new(Family::TrigA), 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.constants.len(), 4);
        assert_eq!(report.constants[1], (2, c("4 + 4*k - 2*k*p0").to_string()));
    }
}
