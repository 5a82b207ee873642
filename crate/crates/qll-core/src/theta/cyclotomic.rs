//! Exact arithmetic in the 8th cyclotomic field Q(ζ₈), on the basis
//! {1, ζ, ζ², ζ³} with ζ⁴ = -1. Hosts the theta eigenvalues ε_{l,ν} and the
//! embedding √2 = ζ + ζ⁻¹ = ζ - ζ³.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ExactError;
use crate::exact::{AlgebraicReal, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic {
    /// Coefficients on 1, ζ, ζ², ζ³.
    pub c: [Rational; 4],
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic::default()
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(BigRational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut c: [Rational; 4] = Default::default();
        c[0] = q;
        Cyclotomic { c }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(BigRational::from(BigInt::from(n)))
    }

    /// ζ₈ᵏ for any k.
    pub fn zeta_pow(k: i64) -> Self {
        let e = k.rem_euclid(8) as usize;
        let mut c: [Rational; 4] = Default::default();
        if e < 4 {
            c[e] = BigRational::one();
        } else {
            c[e - 4] = -BigRational::one();
        }
        Cyclotomic { c }
    }

    /// √2 = ζ - ζ³.
    pub fn sqrt2() -> Self {
        Cyclotomic::zeta_pow(1) - Cyclotomic::zeta_pow(3)
    }

    /// Embed an AlgebraicReal whose radicands are contained in {1, 2}.
    pub fn from_algebraic(x: &AlgebraicReal) -> Result<Self, ExactError> {
        let mut out = Cyclotomic::zero();
        for (r, q) in x.terms() {
            match r {
                1 => out = out + Cyclotomic::from_rational(q.clone()),
                2 => out = out + Cyclotomic::sqrt2().scale(q),
                _ => {
                    return Err(ExactError::BadBinding(format!(
                        "radicand {r} does not embed in Q(ζ₈)"
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|q| q.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// True when the value equals ±i = ±ζ².
    pub fn is_plus_minus_i(&self) -> bool {
        self.c[0].is_zero()
            && self.c[1].is_zero()
            && self.c[3].is_zero()
            && (self.c[2].clone().abs()).is_one()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            c: std::array::from_fn(|i| self.c[i].clone() * q.clone()),
        }
    }

    /// Galois action ζ ↦ ζᵏ, k odd.
    pub fn galois(&self, k: i64) -> Self {
        let mut out = Cyclotomic::zero();
        for (i, q) in self.c.iter().enumerate() {
            if !q.is_zero() {
                out = out + Cyclotomic::zeta_pow(k * i as i64).scale(q);
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let conj_prod = self.galois(3) * self.galois(5) * self.galois(7);
        let norm = self.clone() * conj_prod.clone();
        let n = norm
            .as_rational()
            .expect("field norm of a Q(ζ₈) element is rational");
        Ok(conj_prod.scale(&n.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Numeric embedding with ζ ↦ e^{iπ/4}.
    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let zeta = [
            Complex64::new(1.0, 0.0),
            Complex64::new(h, h),
            Complex64::new(0.0, 1.0),
            Complex64::new(-h, h),
        ];
        self.c
            .iter()
            .zip(zeta.iter())
            .map(|(q, z)| z * q.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            c: std::array::from_fn(|i| self.c[i].clone() + rhs.c[i].clone()),
        }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            c: std::array::from_fn(|i| self.c[i].clone() - rhs.c[i].clone()),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            c: std::array::from_fn(|i| -self.c[i].clone()),
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        let mut c: [Rational; 4] = Default::default();
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                let prod = self.c[i].clone() * rhs.c[j].clone();
                let e = i + j;
                if e < 4 {
                    c[e] += prod;
                } else {
                    c[e - 4] -= prod;
                }
            }
        }
        Cyclotomic { c }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "ζ", "ζ²", "ζ³"];
        let mut first = true;
        for (i, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if first {
                if q.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if q.is_negative() { "-" } else { "+" })?;
            }
            let mag = q.abs();
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}", names[i])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
