//! Triangular eigen-solver: Jack and Jacobi symmetric functions, super Jacobi
//! polynomials and their Euler specializations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::coeff::{Bindings, CoeffFrac, Param, Rational};
use crate::error::{Error, Result};
use crate::finite::{is_in_deformed_algebra, phi_mn, DeformedContext, MPoly};
use crate::infinite::{Family, InfOperator};
use crate::symfun::{m_basis, m_to_p, p_to_m, partitions_of, partitions_up_to, MBasisExpansion, Partition};

/// An operator in the monomial basis. `rows[i][j]` is the coefficient of
/// `m_{basis[j]}` in the image of `m_{basis[i]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub basis: Vec<Partition>,
    pub rows: Vec<Vec<CoeffFrac>>,
}

impl OperatorMatrix {
    pub fn diagonal(&self) -> Vec<CoeffFrac> {
        (0..self.basis.len()).map(|i| self.rows[i][i].clone()).collect()
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<OperatorMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.substitute(bindings)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(OperatorMatrix {
            basis: self.basis.clone(),
            rows,
        })
    }

    /// Nonzero entries `(input, output)` that break triangularity with respect
    /// to `below(output, input)`.
    pub fn violations(&self, below: impl Fn(&Partition, &Partition) -> bool) -> Vec<(Partition, Partition)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i != j && !c.is_zero() && !below(&self.basis[j], &self.basis[i]) {
                    out.push((self.basis[i].clone(), self.basis[j].clone()));
                }
            }
        }
        out
    }
}

/// Basis of the matrix: weight exactly `d` for trigA, weight `<= d` for the
/// other families, largest first in (degree, lex) order.
fn matrix_basis(family: Family, d: u32) -> Vec<Partition> {
    let mut basis = match family {
        Family::TrigA => partitions_of(d),
        _ => partitions_up_to(d),
    };
    basis.sort_by(|a, b| b.total_cmp(a));
    basis
}

/// Matrix of `op` in the monomial basis of degree `d`.
pub fn operator_matrix(op: &InfOperator, d: u32) -> Result<OperatorMatrix> {
    let basis = matrix_basis(op.family, d);
    let index: HashMap<&Partition, usize> = basis.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut rows = Vec::with_capacity(basis.len());
    for lambda in &basis {
        let image = op.apply(&m_basis(lambda), d)?;
        let mut row = vec![CoeffFrac::zero(); basis.len()];
        for (mu, c) in p_to_m(&image, d)?.iter() {
            match index.get(mu) {
                Some(&j) => row[j] = c.clone(),
                None => {
                    return Err(Error::Precondition(format!(
                        "image of m({lambda}) leaves the basis at m({mu})"
                    )))
                }
            }
        }
        rows.push(row);
    }
    Ok(OperatorMatrix { basis, rows })
}

type MatrixCache = Mutex<HashMap<(Family, u32), Arc<OperatorMatrix>>>;

/// Matrix of the fully symbolic operator, computed once per (family, degree).
fn symbolic_matrix(family: Family, d: u32) -> Result<Arc<OperatorMatrix>> {
    static CACHE: OnceLock<MatrixCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&(family, d)) {
        return Ok(hit.clone());
    }
    let m = Arc::new(operator_matrix(&InfOperator::new(family), d)?);
    cache.lock().expect("cache lock").insert((family, d), m.clone());
    Ok(m)
}

/// An eigenfunction normalized to be monic in `m_label`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenResult {
    pub label: Partition,
    pub family: Family,
    #[serde(serialize_with = "as_string")]
    pub eigenvalue: CoeffFrac,
    pub expansion: MBasisExpansion,
}

fn as_string<S: serde::Serializer>(c: &CoeffFrac, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

/// Unitriangular back-substitution below `label`, using the bound matrix
/// and reporting resonances with the symbolic denominator.
fn solve_triangular(
    family: Family,
    label: &Partition,
    symbolic: &OperatorMatrix,
    bindings: &Bindings,
) -> Result<EigenResult> {
    let bound = symbolic.substitute(bindings)?;
    let start = bound
        .basis
        .iter()
        .position(|l| l == label)
        .expect("label is in its own basis");
    let e = bound.rows[start][start].clone();
    let mut coeffs: Vec<CoeffFrac> = vec![CoeffFrac::zero(); bound.basis.len()];
    coeffs[start] = CoeffFrac::one();
    for j in start + 1..bound.basis.len() {
        let mut num = CoeffFrac::zero();
        for i in start..j {
            if !coeffs[i].is_zero() && !bound.rows[i][j].is_zero() {
                num = &num + &(&coeffs[i] * &bound.rows[i][j]);
            }
        }
        if num.is_zero() {
            continue;
        }
        let den = &e - &bound.rows[j][j];
        if den.is_zero() {
            let symbolic_den = &symbolic.rows[start][start] - &symbolic.rows[j][j];
            return Err(Error::Resonance {
                label: label.to_string(),
                below: bound.basis[j].to_string(),
                denominator: symbolic_den.to_string(),
            });
        }
        coeffs[j] = num.div(&den)?;
    }
    let expansion = MBasisExpansion::from_terms(bound.basis.iter().cloned().zip(coeffs));
    Ok(EigenResult {
        label: label.clone(),
        family,
        eigenvalue: e,
        expansion,
    })
}

/// Jack symmetric function: eigenfunction of the trigonometric A operator.
/// `bindings` may fix `k` and `p0`.
pub fn jack(label: &Partition, bindings: &Bindings) -> Result<EigenResult> {
    let symbolic = symbolic_matrix(Family::TrigA, label.weight())?;
    solve_triangular(Family::TrigA, label, &symbolic, bindings)
}

/// Jacobi symmetric function: eigenfunction of the BC operator, with `h` and
/// `p0` independent unless bound.
pub fn jacobi(label: &Partition, bindings: &Bindings) -> Result<EigenResult> {
    let symbolic = symbolic_matrix(Family::TrigBC, label.weight())?;
    solve_triangular(Family::TrigBC, label, &symbolic, bindings)
}

/// Checks `op(f) = e f` exactly.
pub fn verify_eigen(op: &InfOperator, r: &EigenResult, degree_cap: u32) -> Result<bool> {
    let f = m_to_p(&r.expansion);
    Ok(op.apply(&f, degree_cap)? == f.scale(&r.eigenvalue))
}

/// Restriction of a Jacobi function to a deformed BC(m,n) system.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperJacobi {
    pub label: Partition,
    pub context: DeformedContext,
    pub value: MPoly,
}

impl SuperJacobi {
    pub fn in_deformed_algebra(&self) -> bool {
        is_in_deformed_algebra(&self.value, &self.context)
    }
}

impl Serialize for SuperJacobi {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let ctx = &self.context;
        let params: std::collections::BTreeMap<&str, String> = [
            ("k", ctx.k.to_string()),
            ("p", ctx.p.to_string()),
            ("q", ctx.q.to_string()),
            ("h", ctx.h_value().map(|h| h.to_string()).unwrap_or_else(|| "h".into())),
        ]
        .into_iter()
        .collect();
        let mut st = s.serialize_struct("SuperJacobi", 5)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("m", &ctx.m)?;
        st.serialize_field("n", &ctx.n)?;
        st.serialize_field("parameters", &params)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.end()
    }
}

/// `φ_{m,n}` of the Jacobi function with `h = -km - n - p/2 - q` and
/// `p0 = m + n/k` bound before solving.
pub fn super_jacobi(label: &Partition, ctx: &DeformedContext) -> Result<SuperJacobi> {
    let bindings = ctx.bindings()?;
    let j = jacobi(label, &bindings)?;
    let value = phi_mn(&m_to_p(&j.expansion), ctx)?;
    Ok(SuperJacobi {
        label: label.clone(),
        context: ctx.clone(),
        value,
    })
}

/// Which Euler supercharacter specialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerVariant {
    /// `(k, p, q) = (-1, -1, 0)`.
    Odd,
    /// `(k, p, q) = (-1, 0, 0)`.
    Even,
}

impl std::str::FromStr for EulerVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(EulerVariant::Odd),
            "even" => Ok(EulerVariant::Even),
            _ => Err(Error::Parse(format!("unknown Euler variant `{s}`"))),
        }
    }
}

impl EulerVariant {
    pub fn point(self) -> [(Param, Rational); 3] {
        let p = match self {
            EulerVariant::Odd => -1,
            EulerVariant::Even => 0,
        };
        [
            (Param::K, crate::coeff::int(-1)),
            (Param::P, crate::coeff::int(p)),
            (Param::Q, crate::coeff::int(0)),
        ]
    }
}

/// Symbolic super Jacobi polynomial together with its specialization, taking
/// limits in `k`, then `p`, then `q`.
pub fn specialize_euler(
    label: &Partition,
    m: usize,
    n: usize,
    variant: EulerVariant,
) -> Result<(SuperJacobi, MPoly)> {
    let ctx = DeformedContext::new(m, n)?;
    let sj = super_jacobi(label, &ctx)?;
    let point = variant.point();
    let value = sj.value.try_map(|c| {
        let mut c = c.clone();
        for (param, v) in &point {
            c = c.limit_along_parameter(*param, v)?;
        }
        Ok(c)
    });
    let value = value.map_err(|e| e.with_context(format!("super Jacobi {label} on ({m},{n})")))?;
    Ok((sj, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{apply_cms_trig_a, phi_n};

    fn c(s: &str) -> CoeffFrac {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_matrices() {
        let a = InfOperator::new(Family::TrigA);
        let m1 = operator_matrix(&a, 1).unwrap();
        assert_eq!(m1.rows, vec![vec![c("1 + k - k*p0")]]);
        let m2 = operator_matrix(&a, 2).unwrap();
        assert_eq!(m2.basis, vec![part("2"), part("1,1")]);
        assert_eq!(m2.diagonal(), vec![c("4 + 2*k - 2*k*p0"), c("2 + 4*k - 2*k*p0")]);
        assert!(m2.rows[1][0].is_zero());
        let bc = operator_matrix(&InfOperator::new(Family::TrigBC), 0).unwrap();
        assert_eq!(bc.rows, vec![vec![CoeffFrac::zero()]]);
    }

    #[test]
    fn jack_examples() {
        let b = Bindings::new();
        let j1 = jack(&part("1"), &b).unwrap();
        assert_eq!(j1.eigenvalue, c("1 + k - k*p0"));
        let j2 = jack(&part("2"), &b).unwrap();
        assert_eq!(j2.expansion.coeff(&part("1,1")), c("2*k/(k - 1)"));
        assert_eq!(j2.eigenvalue, c("4 + 2*k - 2*k*p0"));
        let j11 = jack(&part("1,1"), &b).unwrap();
        assert_eq!(j11.expansion.len(), 1);
        let j0 = jack(&Partition::empty(), &b).unwrap();
        assert!(j0.eigenvalue.is_zero());
        let resonant = jack(&part("2"), &Bindings::new().with(Param::K, 1i64));
        match resonant {
            Err(Error::Resonance { denominator, .. }) => assert_eq!(denominator, c("2 - 2*k").to_string()),
            other => panic!("expected resonance, got {other:?}"),
        }
    }

    #[test]
    fn jacobi_examples() {
        let b = Bindings::new();
        let j0 = jacobi(&Partition::empty(), &b).unwrap();
        assert!(j0.eigenvalue.is_zero());
        let j1 = jacobi(&part("1"), &b).unwrap();
        assert_eq!(j1.eigenvalue, c("1 + 2*k + 2*h"));
        assert_eq!(
            j1.expansion.coeff(&Partition::empty()),
            c("(1 + 2*k + 2*h - p)*p0/(1 + 2*k + 2*h)")
        );
        let at = Bindings::new().with(Param::P, c("1 + 2*k + 2*h"));
        assert_eq!(jacobi(&part("1"), &at).unwrap().expansion.len(), 1);
        let op = InfOperator::new(Family::TrigBC);
        assert!(verify_eigen(&op, &j1, 1).unwrap());
    }

    #[test]
    fn perturbed_expansion_fails() {
        let mut j = jack(&part("2"), &Bindings::new()).unwrap();
        let op = InfOperator::new(Family::TrigA);
        assert!(verify_eigen(&op, &j, 2).unwrap());
        j.expansion.add_term(part("1,1"), CoeffFrac::one());
        assert!(!verify_eigen(&op, &j, 2).unwrap());
    }

    #[test]
    fn jack_restricts_to_finite_eigenvector() {
        let k = CoeffFrac::param(Param::K);
        for lambda in partitions_up_to(3).into_iter().filter(|l| !l.is_empty()) {
            let j = jack(&lambda, &Bindings::new()).unwrap();
            let n = lambda.weight() as usize;
            let f = phi_n(&m_to_p(&j.expansion), n).unwrap();
            assert!(!f.is_zero());
            let e = j
                .eigenvalue
                .substitute(&Bindings::new().with(Param::P0, n as i64))
                .unwrap();
            assert_eq!(apply_cms_trig_a(&f, &k).unwrap(), f.scale(&e), "{lambda}");
        }
    }

    #[test]
    fn super_jacobi_small() {
        let ctx = DeformedContext::new(1, 1).unwrap();
        let one = super_jacobi(&Partition::empty(), &ctx).unwrap();
        assert_eq!(one.value.to_string(), "1");
        let s1 = super_jacobi(&part("1"), &ctx).unwrap();
        assert!(s1.in_deformed_algebra());
        let k0 = DeformedContext::with_bindings(1, 1, &Bindings::new().with(Param::K, 0i64)).unwrap();
        assert!(matches!(super_jacobi(&part("1"), &k0), Err(Error::Pole { .. })));
        let (_, odd) = specialize_euler(&part("1"), 1, 1, EulerVariant::Odd).unwrap();
        assert!(!odd.is_zero());
    }
}
