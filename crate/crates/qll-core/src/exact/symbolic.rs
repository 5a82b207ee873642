//! Polynomials in the Hecke indeterminates over `AlgebraicReal` coefficients.
//!
//! Indeterminates are the Hecke eigenvalue symbols `λ_p`, the Atkin-Lehner
//! sign `ε` (with the relation `ε² = 1` applied eagerly), and free seed
//! symbols `c_m` standing for Fourier coefficients c(-m) that no recursion
//! determines. This is deliberately not a general CAS.

use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::algebraic::{AlgebraicReal, Rational};
use crate::error::ExactError;

/// An indeterminate of the symbolic layer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// Hecke eigenvalue λ_p.
    Lambda(u32),
    /// Atkin-Lehner eigenvalue ε, subject to ε² = 1.
    Epsilon,
    /// Free Fourier-coefficient seed c_m, standing for c(-m).
    Seed(u64),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Lambda(p) => write!(f, "λ{p}"),
            Var::Epsilon => write!(f, "ε"),
            Var::Seed(m) => write!(f, "c{m}"),
        }
    }
}

/// Monomial: product of indeterminate powers; the ε exponent is kept in {0, 1}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, 1);
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&Var, &u32)> {
        self.0.iter()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            *m.entry(*v).or_insert(0) += e;
        }
        // reduce via ε² = 1
        if let Some(e) = m.get_mut(&Var::Epsilon) {
            *e %= 2;
            if *e == 0 {
                m.remove(&Var::Epsilon);
            }
        }
        Monomial(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact polynomial value in the Hecke indeterminates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolicValue {
    terms: BTreeMap<Monomial, AlgebraicReal>,
}

impl SymbolicValue {
    pub fn zero() -> Self {
        SymbolicValue::default()
    }

    pub fn one() -> Self {
        SymbolicValue::constant(AlgebraicReal::one())
    }

    pub fn constant(c: AlgebraicReal) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        SymbolicValue { terms }
    }

    pub fn from_rational(q: Rational) -> Self {
        SymbolicValue::constant(AlgebraicReal::from_rational(q))
    }

    pub fn from_int(n: i64) -> Self {
        SymbolicValue::constant(AlgebraicReal::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), AlgebraicReal::one());
        SymbolicValue { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &AlgebraicReal)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<AlgebraicReal> {
        if self.terms.is_empty() {
            return Some(AlgebraicReal::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, AlgebraicReal>, m: Monomial, c: AlgebraicReal) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &AlgebraicReal) -> Self {
        if c.is_zero() {
            return SymbolicValue::zero();
        }
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            SymbolicValue::insert_term(&mut terms, m.clone(), a.clone() * c.clone());
        }
        SymbolicValue { terms }
    }

    pub fn scale_rat(&self, q: &Rational) -> Self {
        self.scale(&AlgebraicReal::from_rational(q.clone()))
    }

    /// Exact evaluation. Every indeterminate occurring must be bound; ε must
    /// be bound to ±1.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<Var, AlgebraicReal>,
    ) -> Result<AlgebraicReal, ExactError> {
        if let Some(eps) = bindings.get(&Var::Epsilon) {
            let ok = eps
                .as_rational()
                .map(|q| q.clone() * q == BigRational::one())
                .unwrap_or(false);
            if !ok {
                return Err(ExactError::BadBinding("ε must be bound to +1 or -1".into()));
            }
        }
        let mut total = AlgebraicReal::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.vars() {
                let val = bindings
                    .get(v)
                    .ok_or_else(|| ExactError::UnboundVariable(v.to_string()))?;
                for _ in 0..*e {
                    term = term * val.clone();
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Serialization as a list of [monomial-string, AlgebraicReal-json].
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| serde_json::json!([m.to_string(), c.to_json()]))
            .collect();
        serde_json::Value::Array(items)
    }
}

impl From<AlgebraicReal> for SymbolicValue {
    fn from(c: AlgebraicReal) -> Self {
        SymbolicValue::constant(c)
    }
}

impl Add for SymbolicValue {
    type Output = SymbolicValue;
    fn add(self, rhs: SymbolicValue) -> SymbolicValue {
        let mut terms = self.terms;
        for (m, c) in rhs.terms {
            SymbolicValue::insert_term(&mut terms, m, c);
        }
        SymbolicValue { terms }
    }
}

impl Sub for SymbolicValue {
    type Output = SymbolicValue;
    fn sub(self, rhs: SymbolicValue) -> SymbolicValue {
        self + (-rhs)
    }
}

impl Neg for SymbolicValue {
    type Output = SymbolicValue;
    fn neg(self) -> SymbolicValue {
        SymbolicValue {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for SymbolicValue {
    type Output = SymbolicValue;
    fn mul(self, rhs: SymbolicValue) -> SymbolicValue {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                SymbolicValue::insert_term(&mut terms, m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        SymbolicValue { terms }
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})·{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::algebraic::rat;

    fn bind(pairs: &[(Var, i64)]) -> BTreeMap<Var, AlgebraicReal> {
        pairs
            .iter()
            .map(|(v, n)| (*v, AlgebraicReal::from_int(*n)))
            .collect()
    }

    #[test]
    fn epsilon_squares_to_one() {
        let eps = SymbolicValue::var(Var::Epsilon);
        assert_eq!(eps.clone() * eps, SymbolicValue::one());
    }

    #[test]
    fn epsilon_double_twist_is_identity() {
        let expr = SymbolicValue::var(Var::Lambda(3)).scale(&AlgebraicReal::from_int(5))
            + SymbolicValue::var(Var::Seed(7));
        let eps = SymbolicValue::var(Var::Epsilon);
        let twisted = (expr.clone() * eps.clone()) * eps;
        assert_eq!(twisted, expr);
    }

    #[test]
    fn substitute_hecke_eigenvalue_shapes() {
        // p(p+1)λ_p at p = 3, λ_3 = 1
        let p = SymbolicValue::from_int(3);
        let expr = p.clone() * (p.clone() + SymbolicValue::one()) * SymbolicValue::var(Var::Lambda(3));
        let v = expr.substitute(&bind(&[(Var::Lambda(3), 1)])).unwrap();
        assert_eq!(v, AlgebraicReal::from_int(12));

        // p²λ_p² + p³ + p at p = 3, λ_3 = 2
        let l = SymbolicValue::var(Var::Lambda(3));
        let expr = SymbolicValue::from_int(9) * l.clone() * l
            + SymbolicValue::from_int(27)
            + SymbolicValue::from_int(3);
        let v = expr.substitute(&bind(&[(Var::Lambda(3), 2)])).unwrap();
        assert_eq!(v, AlgebraicReal::from_int(66));
    }

    #[test]
    fn substitute_requires_bindings() {
        let expr = SymbolicValue::var(Var::Lambda(5));
        let err = expr.substitute(&BTreeMap::new()).unwrap_err();
        assert!(err.to_string().contains("λ5"), "{err}");
    }

    #[test]
    fn substitute_rejects_non_sign_epsilon() {
        let expr = SymbolicValue::var(Var::Epsilon);
        let err = expr
            .substitute(&bind(&[(Var::Epsilon, 2)]))
            .unwrap_err();
        assert!(err.to_string().contains("ε"), "{err}");
    }

    #[test]
    fn scale_by_rational() {
        let x = SymbolicValue::var(Var::Epsilon).scale_rat(&rat(-1, 2));
        let v = x.substitute(&bind(&[(Var::Epsilon, -1)])).unwrap();
        assert_eq!(v, AlgebraicReal::from_rational(rat(1, 2)));
    }
}
