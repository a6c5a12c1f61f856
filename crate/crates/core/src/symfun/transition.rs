//! Change of basis between power sums and monomial symmetric functions.
//!
//! `p_λ = Σ_μ R(λ, μ) m_μ`, where `R(λ, μ)` counts the ways of distributing
//! the parts of `λ` into blocks whose sums are the parts of `μ`. The matrix is
//! unitriangular up to the diagonal scalars `Π m_i(λ)!` and is inverted per
//! degree by forward substitution.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{partitions_of, Partition, SymFun};
use crate::coeff::{CoeffFrac, Rational, Ring};
use crate::error::{Error, Result};

/// Element of Λ written in the monomial basis `Σ c_μ m_μ`.
#[derive(Clone, Default, PartialEq)]
pub struct MBasisExpansion {
    terms: BTreeMap<Partition, CoeffFrac>,
}

impl MBasisExpansion {
    pub fn zero() -> Self {
        MBasisExpansion::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, CoeffFrac)>) -> Self {
        let mut e = MBasisExpansion::zero();
        for (mu, c) in terms {
            e.add_term(mu, c);
        }
        e
    }

    pub fn add_term(&mut self, mu: Partition, c: CoeffFrac) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mu).or_insert_with(CoeffFrac::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coeff(&self, mu: &Partition) -> CoeffFrac {
        self.terms.get(mu).cloned().unwrap_or_else(CoeffFrac::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &CoeffFrac)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common weight bound of the terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }

    /// Terms in decreasing (weight, lex) order.
    pub fn sorted_terms(&self) -> Vec<(&Partition, &CoeffFrac)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.total_cmp(a.0));
        v
    }

    pub fn scale(&self, c: &CoeffFrac) -> Self {
        MBasisExpansion::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn try_map(&self, f: impl Fn(&CoeffFrac) -> Result<CoeffFrac>) -> Result<Self> {
        let mut out = MBasisExpansion::zero();
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), f(c).map_err(|e| e.with_context(format!("m({mu})")))?);
        }
        Ok(out)
    }

    pub fn to_symfun(&self) -> SymFun {
        m_to_p(self)
    }
}

impl fmt::Display for MBasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(l, c)| format!("({c})*m({l})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for MBasisExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    partition: Partition,
    coefficient: String,
}

impl Serialize for MBasisExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.sorted_terms().into_iter().map(|(l, c)| TermRepr {
            partition: l.clone(),
            coefficient: c.to_string(),
        }))
    }
}

impl<'de> Deserialize<'de> for MBasisExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut out = MBasisExpansion::zero();
        for t in terms {
            let c: CoeffFrac = t.coefficient.parse().map_err(serde::de::Error::custom)?;
            out.add_term(t.partition, c);
        }
        Ok(out)
    }
}

/// Number of ways to group the parts of `lambda` into blocks summing to the
/// parts of `mu` (blocks indexed by position in `mu`).
pub fn pm_coefficient(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.weight() != mu.weight() {
        return 0;
    }
    fn rec(parts: &[u32], room: &mut [u32]) -> u64 {
        let Some((&first, rest)) = parts.split_first() else {
            return room.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for j in 0..room.len() {
            if room[j] >= first {
                room[j] -= first;
                total += rec(rest, room);
                room[j] += first;
            }
        }
        total
    }
    let mut room = mu.parts().to_vec();
    rec(lambda.parts(), &mut room)
}

/// Transition data for one degree: partitions in decreasing lex order and the
/// inverse matrix expressing each `m_μ` in power sums.
struct Degree {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `m_inv[μ][λ]`: coefficient of `p_λ` in `m_μ`.
    m_inv: Vec<Vec<Rational>>,
}

fn degree_data(d: u32) -> Arc<Degree> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Degree>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&d) {
        return hit.clone();
    }
    let built = Arc::new(build_degree(d));
    cache
        .lock()
        .expect("cache lock")
        .entry(d)
        .or_insert(built)
        .clone()
}

fn build_degree(d: u32) -> Degree {
    let parts = partitions_of(d);
    let n = parts.len();
    let index = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // r[λ][μ] nonzero only for μ ⊵ λ, i.e. μ at an index <= λ's index.
    let r: Vec<Vec<Rational>> = parts
        .iter()
        .map(|l| {
            parts
                .iter()
                .map(|m| Rational::from_i64(pm_coefficient(l, m) as i64))
                .collect()
        })
        .collect();
    // Solve X·R = I for X lower triangular: row μ of X gives m_μ in p's.
    let mut m_inv = vec![vec![Rational::zero(); n]; n];
    for mu in 0..n {
        // Σ_λ X[μ][λ] R[λ][ν] = δ(μ,ν), unknowns X[μ][λ] for λ ≤ μ (index).
        for nu in (0..=mu).rev() {
            let mut rhs = if nu == mu { Rational::one() } else { Rational::zero() };
            for lam in (nu + 1)..=mu {
                rhs = rhs.sub(&m_inv[mu][lam].mul(&r[lam][nu]));
            }
            m_inv[mu][nu] = rhs / &r[nu][nu];
        }
    }
    Degree { parts, index, m_inv }
}

/// Expresses `f` (with all terms of weight `<= d`) in the monomial basis.
pub fn p_to_m(f: &SymFun, d: u32) -> Result<MBasisExpansion> {
    if f.degree() > d {
        return Err(Error::Precondition(format!(
            "input has degree {} above the truncation degree {d}",
            f.degree()
        )));
    }
    let mut out = MBasisExpansion::zero();
    for (lambda, c) in f.iter() {
        let data = degree_data(lambda.weight());
        for mu in &data.parts {
            let r = pm_coefficient(lambda, mu);
            if r != 0 {
                out.add_term(mu.clone(), c.scale(&Rational::from_i64(r as i64)));
            }
        }
    }
    Ok(out)
}

/// `m_μ` written in power sums.
pub fn m_basis(mu: &Partition) -> SymFun {
    let data = degree_data(mu.weight());
    let row = &data.m_inv[data.index[mu]];
    SymFun::from_terms(
        data.parts
            .iter()
            .zip(row)
            .filter(|(_, c)| !Ring::is_zero(*c))
            .map(|(l, c)| (l.clone(), CoeffFrac::from_rational(c.clone()))),
    )
}

/// Converts a monomial-basis expansion back to power sums.
pub fn m_to_p(e: &MBasisExpansion) -> SymFun {
    let mut out = SymFun::zero();
    for (mu, c) in e.iter() {
        let data = degree_data(mu.weight());
        let row = &data.m_inv[data.index[mu]];
        for (lambda, x) in data.parts.iter().zip(row) {
            if !Ring::is_zero(x) {
                out.add_term(lambda.clone(), c.scale(x));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_transitions() {
        let e = p_to_m(&SymFun::p(part("2")), 2).unwrap();
        assert_eq!(e, MBasisExpansion::from_terms([(part("2"), CoeffFrac::one())]));
        let e = p_to_m(&SymFun::p(part("1,1")), 2).unwrap();
        assert_eq!(
            e,
            MBasisExpansion::from_terms([
                (part("2"), CoeffFrac::one()),
                (part("1,1"), CoeffFrac::from_int(2))
            ])
        );
        let m11 = m_basis(&part("1,1"));
        let want = SymFun::from_terms([
            (part("1,1"), CoeffFrac::from_rational(rat(1, 2))),
            (part("2"), CoeffFrac::from_rational(rat(-1, 2))),
        ]);
        assert_eq!(m11, want);
    }

    #[test]
    fn round_trip_through_degree_six() {
        for d in 0..=6 {
            for lambda in partitions_of(d) {
                let f = SymFun::p(lambda.clone());
                let back = m_to_p(&p_to_m(&f, d).unwrap());
                assert_eq!(back, f, "p({lambda})");
            }
        }
    }

    #[test]
    fn rejects_untruncated_input() {
        assert!(p_to_m(&SymFun::p(part("3")), 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let e = MBasisExpansion::from_terms([
            (part("2"), CoeffFrac::one()),
            (part("1,1"), "(2*k)/(k - 1)".parse().unwrap()),
        ]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"[{"partition":"2","coefficient":"1"},{"partition":"1,1","coefficient":"(2*k)/(k - 1)"}]"#
        );
        let back: MBasisExpansion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
