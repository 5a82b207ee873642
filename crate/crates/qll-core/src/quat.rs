//! Exact arithmetic in the definite quaternion algebra B = Q + Qi + Qj + Qk
//! (i² = j² = k² = -1, ij = -ji = k) and its Hurwitz order
//! O = Z + Zi + Zj + Z(1+i+j+k)/2, plus the generator decomposition of
//! GL₂(O) via Euclidean division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::QuatError;
use crate::exact::Rational;

/// Quaternion with exact half-integer coordinates, stored as doubled
/// coordinates: the value is (t0 + t1·i + t2·j + t3·k)/2.
///
/// Membership in the Hurwitz order O is the parity condition
/// t0 ≡ t1 ≡ t2 ≡ t3 (mod 2); operations that require it check it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quat {
    pub t: [i128; 4],
}

/// Hamilton product on raw coordinate 4-vectors.
fn hamilton(a: &[i128; 4], b: &[i128; 4]) -> [i128; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

impl Quat {
    pub const fn from_doubled(t: [i128; 4]) -> Self {
        Quat { t }
    }

    /// Quaternion with integer coordinates (a, b, c, d) = a + bi + cj + dk.
    pub const fn from_ints(a: i128, b: i128, c: i128, d: i128) -> Self {
        Quat {
            t: [2 * a, 2 * b, 2 * c, 2 * d],
        }
    }

    pub const fn zero() -> Self {
        Quat { t: [0; 4] }
    }

    pub const fn one() -> Self {
        Quat::from_ints(1, 0, 0, 0)
    }

    pub const fn i() -> Self {
        Quat::from_ints(0, 1, 0, 0)
    }

    pub const fn j() -> Self {
        Quat::from_ints(0, 0, 1, 0)
    }

    pub const fn k() -> Self {
        Quat::from_ints(0, 0, 0, 1)
    }

    /// The uniformizer ϖ₂ = 1 + i of the 2-adic completion.
    pub const fn w2() -> Self {
        Quat::from_ints(1, 1, 0, 0)
    }

    /// ω = (1 + i + j + k)/2.
    pub const fn omega() -> Self {
        Quat::from_doubled([1, 1, 1, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.t == [0; 4]
    }

    /// Hurwitz order membership: all doubled coordinates share one parity.
    pub fn in_order(&self) -> bool {
        let p = self.t[0].rem_euclid(2);
        self.t.iter().all(|x| x.rem_euclid(2) == p)
    }

    /// 4ν(x) = sum of squared doubled coordinates; defined for any element.
    pub fn norm4(&self) -> i128 {
        self.t.iter().map(|x| x * x).sum()
    }

    /// Reduced norm ν(x) = x·conj(x); integral exactly on the order (and on
    /// any integer-coordinate element). Panics off the quarter-integer cases.
    pub fn norm(&self) -> i128 {
        let n4 = self.norm4();
        assert!(n4 % 4 == 0, "norm is not an integer for {self}");
        n4 / 4
    }

    /// Reduced norm as an exact rational, defined everywhere.
    pub fn norm_rat(&self) -> Rational {
        BigRational::new(BigInt::from(self.norm4()), BigInt::from(4))
    }

    /// (ν(x), tr(x)) as exact rationals; both are integers on the order.
    pub fn norm_trace(&self) -> (Rational, Rational) {
        (
            self.norm_rat(),
            BigRational::from(BigInt::from(self.trace())),
        )
    }

    /// Reduced trace x + conj(x); always an integer on half-integer coordinates.
    pub fn trace(&self) -> i128 {
        self.t[0]
    }

    /// Doubled real part 2·Re(x) = tr(x).
    pub fn re2(&self) -> i128 {
        self.t[0]
    }

    pub fn conj(&self) -> Quat {
        Quat {
            t: [self.t[0], -self.t[1], -self.t[2], -self.t[3]],
        }
    }

    pub fn scale(&self, n: i128) -> Quat {
        Quat {
            t: [self.t[0] * n, self.t[1] * n, self.t[2] * n, self.t[3] * n],
        }
    }

    /// Exact division by an integer scalar, if representable in half-integer
    /// coordinates.
    pub fn div_exact(&self, n: i128) -> Option<Quat> {
        assert!(n != 0);
        if self.t.iter().all(|x| x % n == 0) {
            Some(Quat {
                t: [self.t[0] / n, self.t[1] / n, self.t[2] / n, self.t[3] / n],
            })
        } else {
            None
        }
    }

    /// Exact left division by ϖ₂: returns ϖ₂⁻¹·x = (1-i)x/2 when it stays in
    /// half-integer coordinates.
    pub fn w2_inv_left(&self) -> Option<Quat> {
        let prod = hamilton(&[2, -2, 0, 0], &self.t);
        // value = prod/8; doubled coordinates = prod/4
        if prod.iter().all(|x| x % 4 == 0) {
            Some(Quat {
                t: [prod[0] / 4, prod[1] / 4, prod[2] / 4, prod[3] / 4],
            })
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [
            self.t[0] as f64 / 2.0,
            self.t[1] as f64 / 2.0,
            self.t[2] as f64 / 2.0,
            self.t[3] as f64 / 2.0,
        ]
    }

    /// JSON array form of doubled coordinates.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!([
            self.t[0] as i64,
            self.t[1] as i64,
            self.t[2] as i64,
            self.t[3] as i64
        ])
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Quat, QuatError> {
        let arr = v
            .as_array()
            .ok_or_else(|| QuatError::Parse("expected array [t0,t1,t2,t3]".into()))?;
        if arr.len() != 4 {
            return Err(QuatError::Parse("expected 4 doubled coordinates".into()));
        }
        let mut t = [0i128; 4];
        for (i, x) in arr.iter().enumerate() {
            t[i] = x
                .as_i64()
                .ok_or_else(|| QuatError::Parse("non-integer coordinate".into()))?
                as i128;
        }
        Ok(Quat { t })
    }

    /// Parse the text form "a+bi+cj+dk" with rational components (halves
    /// allowed), e.g. "1+i", "-3j", "1/2+1/2i+1/2j+1/2k".
    pub fn parse(s: &str) -> Result<Quat, QuatError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(QuatError::Parse("empty quaternion".into()));
        }
        let mut t = [0i128; 4];
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i128;
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            let digits = &s[start..pos];
            let unit = if pos < bytes.len() && matches!(bytes[pos], b'i' | b'j' | b'k') {
                let u = bytes[pos];
                pos += 1;
                Some(u)
            } else {
                None
            };
            if digits.is_empty() && unit.is_none() {
                return Err(QuatError::Parse(format!("cannot parse {s:?}")));
            }
            // doubled value of the coefficient
            let doubled: i128 = if digits.is_empty() {
                2
            } else if let Some((n, d)) = digits.split_once('/') {
                let n: i128 = n
                    .parse()
                    .map_err(|_| QuatError::Parse(format!("bad number in {s:?}")))?;
                let d: i128 = d
                    .parse()
                    .map_err(|_| QuatError::Parse(format!("bad number in {s:?}")))?;
                if d == 0 || (2 * n) % d != 0 {
                    return Err(QuatError::Parse(format!(
                        "coordinate {digits} is not a half-integer"
                    )));
                }
                2 * n / d
            } else {
                2 * digits
                    .parse::<i128>()
                    .map_err(|_| QuatError::Parse(format!("bad number in {s:?}")))?
            };
            let idx = match unit {
                None => 0,
                Some(b'i') => 1,
                Some(b'j') => 2,
                Some(b'k') => 3,
                _ => unreachable!(),
            };
            t[idx] += sign * doubled;
        }
        Ok(Quat { t })
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, rhs: Quat) -> Quat {
        Quat {
            t: [
                self.t[0] + rhs.t[0],
                self.t[1] + rhs.t[1],
                self.t[2] + rhs.t[2],
                self.t[3] + rhs.t[3],
            ],
        }
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, rhs: Quat) -> Quat {
        self + (-rhs)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat {
            t: [-self.t[0], -self.t[1], -self.t[2], -self.t[3]],
        }
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, rhs: Quat) -> Quat {
        let prod = hamilton(&self.t, &rhs.t);
        // the doubled coordinates of the product are prod/2; products of
        // order or lattice elements always land back in half-integers
        assert!(
            prod.iter().all(|x| x % 2 == 0),
            "product {self} * {rhs} leaves half-integer coordinates"
        );
        Quat {
            t: [prod[0] / 2, prod[1] / 2, prod[2] / 2, prod[3] / 2],
        }
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let units = ["", "i", "j", "k"];
        let mut first = true;
        for idx in 0..4 {
            let c = self.t[idx];
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{sign}")?;
            }
            let mag = c.abs();
            if mag == 2 && idx > 0 {
                write!(f, "{}", units[idx])?;
            } else if mag % 2 == 0 {
                write!(f, "{}{}", mag / 2, units[idx])?;
            } else {
                write!(f, "{}/2{}", mag, units[idx])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The 24 units of the Hurwitz order, found by brute force over doubled
/// coordinates |t_i| ≤ 2, in canonical (lexicographic) order.
pub fn units() -> Vec<Quat> {
    let mut out = Vec::with_capacity(24);
    for t0 in -2i128..=2 {
        for t1 in -2i128..=2 {
            for t2 in -2i128..=2 {
                for t3 in -2i128..=2 {
                    let q = Quat { t: [t0, t1, t2, t3] };
                    if q.in_order() && q.norm4() == 4 {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

pub fn is_unit(q: &Quat) -> bool {
    q.in_order() && q.norm4() == 4
}

/// Inverse of a unit: conj(u) since ν(u) = 1.
pub fn unit_inv(u: &Quat) -> Quat {
    debug_assert!(is_unit(u));
    u.conj()
}

/// Quaternion with exact rational coordinates, for computations that leave
/// the half-integer lattice (mainly a·b⁻¹ in the Euclidean division).
#[derive(Clone, PartialEq, Eq)]
pub struct QuatRat {
    pub c: [Rational; 4],
}

impl QuatRat {
    pub fn from_quat(q: &Quat) -> Self {
        QuatRat {
            c: std::array::from_fn(|i| BigRational::new(BigInt::from(q.t[i]), BigInt::from(2))),
        }
    }

    pub fn norm(&self) -> Rational {
        self.c.iter().map(|x| x.clone() * x.clone()).sum()
    }

    pub fn conj(&self) -> QuatRat {
        QuatRat {
            c: [
                self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
                -self.c[3].clone(),
            ],
        }
    }

    pub fn mul(&self, rhs: &QuatRat) -> QuatRat {
        let a = &self.c;
        let b = &rhs.c;
        QuatRat {
            c: [
                a[0].clone() * b[0].clone()
                    - a[1].clone() * b[1].clone()
                    - a[2].clone() * b[2].clone()
                    - a[3].clone() * b[3].clone(),
                a[0].clone() * b[1].clone() + a[1].clone() * b[0].clone()
                    + a[2].clone() * b[3].clone()
                    - a[3].clone() * b[2].clone(),
                a[0].clone() * b[2].clone() - a[1].clone() * b[3].clone()
                    + a[2].clone() * b[0].clone()
                    + a[3].clone() * b[1].clone(),
                a[0].clone() * b[3].clone() + a[1].clone() * b[2].clone()
                    - a[2].clone() * b[1].clone()
                    + a[3].clone() * b[0].clone(),
            ],
        }
    }

    pub fn inv(&self) -> Result<QuatRat, QuatError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(QuatError::DivisionByZero);
        }
        let conj = self.conj();
        Ok(QuatRat {
            c: std::array::from_fn(|i| conj.c[i].clone() / n.clone()),
        })
    }

    /// Back to half-integer coordinates when exact.
    pub fn to_quat(&self) -> Option<Quat> {
        let mut t = [0i128; 4];
        for i in 0..4 {
            let doubled = self.c[i].clone() * BigRational::from(BigInt::from(2));
            if !doubled.is_integer() {
                return None;
            }
            t[i] = doubled.to_integer().to_i128()?;
        }
        Some(Quat { t })
    }
}

/// Euclidean division in the Hurwitz order: a = q·b + r with ν(r) < ν(b)
/// (right-division convention). The quotient is chosen deterministically:
/// among the integer and half-integer roundings of a·b⁻¹, take the one
/// minimizing ν(a - q·b), ties broken by coordinate order.
pub fn euclid_div(a: &Quat, b: &Quat) -> Result<(Quat, Quat), QuatError> {
    if b.is_zero() {
        return Err(QuatError::DivisionByZero);
    }
    for (name, q) in [("a", a), ("b", b)] {
        if !q.in_order() {
            return Err(QuatError::NotInOrder(format!("{name} = {q}")));
        }
    }
    let q0 = QuatRat::from_quat(a).mul(&QuatRat::from_quat(b).inv()?);

    // doubled-coordinate candidates per axis: the two nearest even values
    // (integer points) and the two nearest odd values (half-integer points)
    let mut axis: [[i128; 4]; 4] = [[0; 4]; 4];
    for i in 0..4 {
        let doubled = q0.c[i].clone() * BigRational::from(BigInt::from(2));
        let fl = doubled.floor().to_integer().to_i128().expect("desk scale");
        let even_lo = if fl.rem_euclid(2) == 0 { fl } else { fl - 1 };
        let odd_lo = if fl.rem_euclid(2) == 0 { fl - 1 } else { fl };
        axis[i] = [even_lo, even_lo + 2, odd_lo, odd_lo + 2];
    }

    let mut best: Option<(i128, Quat, Quat)> = None;
    // integer roundings use the even pair, half-integer roundings the odd pair
    for parity in 0..2 {
        let lo = 2 * parity;
        for m in 0..16u32 {
            let t = std::array::from_fn(|i| axis[i][lo + ((m >> i) & 1) as usize]);
            let q = Quat { t };
            let r = *a - q * *b;
            let n = r.norm();
            let better = match &best {
                None => true,
                Some((bn, bq, _)) => n < *bn || (n == *bn && q < *bq),
            };
            if better {
                best = Some((n, q, r));
            }
        }
    }
    let (n, q, r) = best.expect("candidate set is nonempty");
    debug_assert!(n < b.norm(), "division failed: ν(r) = {n} >= ν(b)");
    Ok((q, r))
}

/// 2×2 matrix over the quaternions, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Matrix2 {
    pub a: Quat,
    pub b: Quat,
    pub c: Quat,
    pub d: Quat,
}

impl Matrix2 {
    pub fn new(a: Quat, b: Quat, c: Quat, d: Quat) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Matrix2::new(Quat::one(), Quat::zero(), Quat::zero(), Quat::one())
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn entries_in_order(&self) -> bool {
        self.a.in_order() && self.b.in_order() && self.c.in_order() && self.d.in_order()
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Generators of GL₂(O): S = [[0,1],[-1,0]], D_u = [[u,0],[0,1]] for a unit u,
/// T_v = [[1,v],[0,1]] for v in O.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    S,
    D(Quat),
    T(Quat),
}

impl Generator {
    pub fn matrix(&self) -> Matrix2 {
        match self {
            Generator::S => Matrix2::new(Quat::zero(), Quat::one(), -Quat::one(), Quat::zero()),
            Generator::D(u) => Matrix2::new(*u, Quat::zero(), Quat::zero(), Quat::one()),
            Generator::T(v) => Matrix2::new(Quat::one(), *v, Quat::zero(), Quat::one()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S => write!(f, "S"),
            Generator::D(u) => write!(f, "D({u})"),
            Generator::T(v) => write!(f, "T({v})"),
        }
    }
}

/// Ordered product of a generator word (empty word = identity).
pub fn recompose(word: &[Generator]) -> Matrix2 {
    word.iter()
        .fold(Matrix2::identity(), |m, g| m.mul(&g.matrix()))
}

/// Outcome of a GL₂(O) decomposition attempt. Non-invertibility is a verdict,
/// not an error, so this doubles as a membership test.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecomposeOutcome {
    Word(Vec<Generator>),
    NotInvertible,
}

/// Decompose M into a word over the generators, by Euclidean elimination of
/// the lower-left entry followed by the explicit triangular factorization.
pub fn generator_decompose(m: &Matrix2) -> Result<DecomposeOutcome, QuatError> {
    if !m.entries_in_order() {
        return Err(QuatError::NotInOrder(format!("{m}")));
    }
    // prefix records E_1, E_2, ... applied on the left: work = E_k···E_1·M
    let mut prefix: Vec<Generator> = Vec::new();
    let mut work = *m;
    let s = Generator::S.matrix();
    while !work.c.is_zero() {
        let (q, _r) = euclid_div(&work.a, &work.c)?;
        if !q.is_zero() {
            let t = Generator::T(-q);
            work = t.matrix().mul(&work);
            prefix.push(t);
        }
        // swap rows; the new lower-left is -(a - q·c) with strictly smaller norm
        work = s.mul(&work);
        prefix.push(Generator::S);
    }
    let (alpha, beta, delta) = (work.a, work.b, work.d);
    if !is_unit(&alpha) || !is_unit(&delta) {
        return Ok(DecomposeOutcome::NotInvertible);
    }
    // triangular case: [[α,β],[0,δ]] = D_α · (S·D_δ·S³) · T_{α⁻¹β}
    let mut word: Vec<Generator> = Vec::new();
    for g in &prefix {
        match g {
            Generator::S => word.extend([Generator::S, Generator::S, Generator::S]),
            Generator::T(v) => word.push(Generator::T(-*v)),
            Generator::D(_) => unreachable!("elimination never pushes D"),
        }
    }
    if alpha != Quat::one() {
        word.push(Generator::D(alpha));
    }
    if delta != Quat::one() {
        word.extend([
            Generator::S,
            Generator::D(delta),
            Generator::S,
            Generator::S,
            Generator::S,
        ]);
    }
    let v = unit_inv(&alpha) * beta;
    if !v.is_zero() {
        word.push(Generator::T(v));
    }
    debug_assert_eq!(recompose(&word), *m);
    Ok(DecomposeOutcome::Word(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_relations() {
        assert_eq!(Quat::i() * Quat::j(), Quat::k());
        assert_eq!(Quat::j() * Quat::i(), -Quat::k());
        assert_eq!(Quat::j() * Quat::k(), Quat::i());
        assert_eq!(Quat::k() * Quat::i(), Quat::j());
        assert_eq!(Quat::i() * Quat::i(), -Quat::one());
        // ϖ₂² = 2i
        assert_eq!(Quat::w2() * Quat::w2(), Quat::i().scale(2));
    }

    #[test]
    fn norm_and_trace() {
        assert_eq!(Quat::one().norm(), 1);
        assert_eq!(Quat::one().trace(), 2);
        assert_eq!(Quat::w2().norm(), 2);
        assert_eq!(Quat::w2().trace(), 2);
        let omega = Quat::omega();
        assert_eq!(omega.norm(), 1);
        assert_eq!(omega.trace(), 1);
        // conj(ω)·ω = ν(ω) = 1
        assert_eq!(omega.conj() * omega, Quat::one());
        let (n, t) = Quat::w2().norm_trace();
        assert_eq!((n, t), (rational(2), rational(2)));
    }

    fn rational(n: i64) -> Rational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn unit_group() {
        let us = units();
        assert_eq!(us.len(), 24);
        for q in [Quat::one(), Quat::i(), Quat::j(), Quat::k(), Quat::omega()] {
            assert!(us.contains(&q));
            assert!(us.contains(&-q));
        }
        // all 16 half-integer sign patterns are units
        let halves = us.iter().filter(|u| u.t[0].abs() == 1).count();
        assert_eq!(halves, 16);
        // closed under multiplication and inversion
        for u in &us {
            assert!(us.contains(&unit_inv(u)));
            for v in &us {
                assert!(us.contains(&(*u * *v)));
            }
        }
    }

    #[test]
    fn euclid_division_basics() {
        let b = Quat::w2();
        let (q, r) = euclid_div(&b, &b).unwrap();
        assert_eq!((q, r), (Quat::one(), Quat::zero()));

        // ν(a) < ν(b) gives (0, a)
        let a = Quat::one();
        let big = Quat::from_ints(1, 1, 1, 1);
        let (q, r) = euclid_div(&a, &big).unwrap();
        assert_eq!((q, r), (Quat::zero(), a));

        let a = Quat::from_ints(1, 1, 1, 0);
        let b = Quat::w2();
        let (q, r) = euclid_div(&a, &b).unwrap();
        assert_eq!(a, q * b + r);
        assert!(r.norm() < b.norm());

        assert!(euclid_div(&a, &Quat::zero()).is_err());
    }

    #[test]
    fn euclid_division_norm_always_drops() {
        // a light deterministic sweep over order elements
        let mut samples = Vec::new();
        for t0 in -3i128..=3 {
            for t1 in -3i128..=3 {
                for t2 in 0i128..=2 {
                    for t3 in 0i128..=2 {
                        let q = Quat { t: [t0, t1, t2, t3] };
                        if q.in_order() && !q.is_zero() {
                            samples.push(q);
                        }
                    }
                }
            }
        }
        for a in &samples {
            for b in samples.iter().take(20) {
                let (q, r) = euclid_div(a, b).unwrap();
                assert_eq!(*a, q * *b + r);
                assert!(r.norm() < b.norm(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn decompose_identity_and_single_generators() {
        match generator_decompose(&Matrix2::identity()).unwrap() {
            DecomposeOutcome::Word(w) => assert!(w.is_empty()),
            _ => panic!("identity must decompose"),
        }
        let t = Generator::T(Quat::omega());
        match generator_decompose(&t.matrix()).unwrap() {
            DecomposeOutcome::Word(w) => assert_eq!(w, vec![t]),
            _ => panic!("T_v must decompose"),
        }
    }

    #[test]
    fn decompose_rejects_non_invertible() {
        let m = Matrix2::new(Quat::w2(), Quat::zero(), Quat::zero(), Quat::one());
        assert_eq!(
            generator_decompose(&m).unwrap(),
            DecomposeOutcome::NotInvertible
        );
        let m = Matrix2::new(Quat::one(), Quat::zero(), Quat::i(), Quat::zero());
        assert_eq!(
            generator_decompose(&m).unwrap(),
            DecomposeOutcome::NotInvertible
        );
    }

    #[test]
    fn decompose_round_trip_small() {
        let word = [
            Generator::T(Quat::from_ints(1, 0, 1, 0)),
            Generator::S,
            Generator::D(Quat::omega()),
            Generator::T(Quat::from_ints(0, -1, 0, 1)),
            Generator::S,
            Generator::D(-Quat::k()),
        ];
        let m = recompose(&word);
        match generator_decompose(&m).unwrap() {
            DecomposeOutcome::Word(w) => assert_eq!(recompose(&w), m),
            _ => panic!("invertible product must decompose"),
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["1+i", "-j", "1/2+1/2i+1/2j+1/2k", "2k", "0", "3-2i+j"] {
            let q = Quat::parse(s).unwrap();
            let q2 = Quat::parse(&q.to_string()).unwrap();
            assert_eq!(q, q2, "{s}");
        }
        assert_eq!(Quat::parse("1+i").unwrap(), Quat::w2());
        assert_eq!(Quat::parse("1/2+1/2i+1/2j+1/2k").unwrap(), Quat::omega());
    }
}
