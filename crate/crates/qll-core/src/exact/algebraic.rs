//! Exact elements of real multi-quadratic towers Q(sqrt(r_1), ..., sqrt(r_k)).
//!
//! Values are finite sums `sum_r q_r * sqrt(r)` over squarefree positive
//! radicands `r`, with rational coefficients. The radicand 1 holds the
//! rational part. The representation is unique, so structural equality is
//! numerical equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ExactError;

/// Arbitrary-precision rational, always kept reduced with positive denominator.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "a/b" or "a" into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ExactError::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ExactError::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(ExactError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Split n = s^2 * r with r squarefree; returns (s, r). Trial division is
/// plenty at the scales this library works with.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    assert!(n >= 1, "squarefree_decompose requires n >= 1");
    let mut s = 1u64;
    let mut r = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                r *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    r *= m; // whatever is left is prime
    (s, r)
}

/// Exact element of a real multi-quadratic tower.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicReal {
    // squarefree radicand -> nonzero rational coefficient; radicand 1 is the
    // rational part
    terms: BTreeMap<u64, Rational>,
}

impl AlgebraicReal {
    pub fn zero() -> Self {
        AlgebraicReal {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        AlgebraicReal::from_rational(BigRational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        AlgebraicReal { terms }
    }

    pub fn from_int(n: i64) -> Self {
        AlgebraicReal::from_rational(BigRational::from(BigInt::from(n)))
    }

    /// sqrt(n) for a positive integer n, normalized to s*sqrt(r) with r squarefree.
    pub fn sqrt_of(n: u64) -> Self {
        assert!(n >= 1, "sqrt_of requires n >= 1");
        let (s, r) = squarefree_decompose(n);
        let mut terms = BTreeMap::new();
        terms.insert(r, BigRational::from(BigInt::from(s)));
        AlgebraicReal { terms }
    }

    /// q * sqrt(r) for a single radicand (r need not be squarefree).
    pub fn radical_term(q: Rational, r: u64) -> Self {
        AlgebraicReal::sqrt_of(r).scale(&q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&1))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_rational() {
            return self.terms.get(&1).cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Rational)> {
        self.terms.iter()
    }

    fn insert_term(terms: &mut BTreeMap<u64, Rational>, r: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        match terms.entry(r) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + q;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return AlgebraicReal::zero();
        }
        AlgebraicReal {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (*r, c.clone() * q.clone()))
                .collect(),
        }
    }

    /// Multiplicative inverse, computed by iterated conjugation over the
    /// primes appearing in the radicands present.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(AlgebraicReal::from_rational(q.recip()));
        }
        // pick any prime dividing a radicand and split x = a + sqrt(p) * b
        let p = {
            let r = *self.terms.keys().find(|r| **r > 1).expect("non-rational");
            smallest_prime_factor(r)
        };
        let mut a = AlgebraicReal::zero();
        let mut b = AlgebraicReal::zero();
        for (r, c) in &self.terms {
            if r % p == 0 {
                AlgebraicReal::insert_term(&mut b.terms, r / p, c.clone());
            } else {
                AlgebraicReal::insert_term(&mut a.terms, *r, c.clone());
            }
        }
        // conj flips the sign of sqrt(p); x * conj(x) = a^2 - p b^2 lives in a
        // tower with one fewer prime
        let conj = a.clone() - AlgebraicReal::sqrt_of(p) * b.clone();
        let norm = a.clone() * a - (b.clone() * b).scale(&BigRational::from(BigInt::from(p)));
        debug_assert!(norm.terms.keys().all(|r| r % p != 0));
        Ok(conj * norm.inv()?)
    }

    /// Float embedding; accurate enough for the desk-scale magnitudes the
    /// library deals in.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, q)| q.to_f64().unwrap_or(f64::NAN) * (*r as f64).sqrt())
            .sum()
    }

    /// JSON form {"terms": [[r, "num/den"], ...]}.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(r, q)| serde_json::json!([r, format!("{q}")]))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ExactError> {
        let arr = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| ExactError::Parse("expected {\"terms\": [...]}".into()))?;
        let mut out = AlgebraicReal::zero();
        for pair in arr {
            let r = pair
                .get(0)
                .and_then(|x| x.as_u64())
                .ok_or_else(|| ExactError::Parse("bad radicand".into()))?;
            let q = parse_rational(
                pair.get(1)
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| ExactError::Parse("bad coefficient".into()))?,
            )?;
            out = out + AlgebraicReal::radical_term(q, r);
        }
        Ok(out)
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n > 1);
    if n % 2 == 0 {
        return 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 2;
    }
    n
}

impl Add for AlgebraicReal {
    type Output = AlgebraicReal;
    fn add(self, rhs: AlgebraicReal) -> AlgebraicReal {
        let mut terms = self.terms;
        for (r, q) in rhs.terms {
            AlgebraicReal::insert_term(&mut terms, r, q);
        }
        AlgebraicReal { terms }
    }
}

impl Sub for AlgebraicReal {
    type Output = AlgebraicReal;
    fn sub(self, rhs: AlgebraicReal) -> AlgebraicReal {
        self + (-rhs)
    }
}

impl Neg for AlgebraicReal {
    type Output = AlgebraicReal;
    fn neg(self) -> AlgebraicReal {
        AlgebraicReal {
            terms: self.terms.into_iter().map(|(r, q)| (r, -q)).collect(),
        }
    }
}

impl Mul for AlgebraicReal {
    type Output = AlgebraicReal;
    fn mul(self, rhs: AlgebraicReal) -> AlgebraicReal {
        let mut terms = BTreeMap::new();
        for (r, a) in &self.terms {
            for (s, b) in &rhs.terms {
                // sqrt(r) * sqrt(s) = g * sqrt(r s / g^2), g = gcd(r, s)
                let g = r.gcd(s);
                let rad = (r / g) * (s / g);
                let coeff = a.clone() * b.clone() * BigRational::from(BigInt::from(g));
                AlgebraicReal::insert_term(&mut terms, rad, coeff);
            }
        }
        AlgebraicReal { terms }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, q) in &self.terms {
            let sign = if q.is_negative() { "-" } else { "+" };
            let mag = q.abs();
            if first {
                if q.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if *r == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "√{r}")?;
            } else {
                write!(f, "{mag}√{r}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
