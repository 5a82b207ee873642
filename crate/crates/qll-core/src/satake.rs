//! Local Satake parameters of the lifted representation: the four odd-p
//! values p^{±1/2}(λ_p ± √(λ_p²-4))/2, the two values at p = 2, exact
//! consistency with the classical Hecke eigenvalues through elementary
//! symmetric functions (where the radicals cancel), temperedness
//! classification, and the CAP comparison with the induced-representation
//! parameters.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::exact::{AlgebraicReal, SymbolicValue, Var};
use crate::hecke::is_odd_prime;
use crate::report::{Status, VerificationReport};

const MODULUS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Temperedness {
    Tempered,
    NonTempered,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Place {
    Finite(u64),
    Infinity,
}

/// Multiset of local Satake parameter values with temperedness metadata.
#[derive(Clone, Debug)]
pub struct SatakeParams {
    pub place: Place,
    /// Numeric values (4 for odd p, 2 for p = 2, empty at ∞).
    pub values: Vec<Complex64>,
    /// Exact values where the radicals collapse (λ = ±2, or p = 2).
    pub exact: Option<Vec<AlgebraicReal>>,
    pub tempered: Temperedness,
}

impl SatakeParams {
    pub fn moduli(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm()).collect()
    }

    /// Product over the multiset; trivial central character forces 1.
    pub fn product(&self) -> Complex64 {
        self.values
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "place": match &self.place {
                Place::Finite(p) => serde_json::json!(p),
                Place::Infinity => serde_json::json!("infinity"),
            },
            "values": self.values.iter().map(|z| serde_json::json!([z.re, z.im])).collect::<Vec<_>>(),
            "moduli": self.moduli(),
            "tempered": serde_json::to_value(self.tempered).unwrap(),
        })
    }
}

/// The four Satake values at an odd prime for real λ.
pub fn satake_odd(p: u64, lambda: f64) -> SatakeParams {
    assert!(is_odd_prime(p), "satake_odd requires an odd prime");
    let sp = (p as f64).sqrt();
    let disc = lambda * lambda - 4.0;
    let half = if disc < 0.0 {
        Complex64::new(lambda / 2.0, (-disc).sqrt() / 2.0)
    } else {
        Complex64::new((lambda + disc.sqrt()) / 2.0, 0.0)
    };
    let half_conj = Complex64::new(lambda, 0.0) - half;
    let values = vec![sp * half, sp * half_conj, half / sp, half_conj / sp];
    let exact = exact_odd_values(p, lambda);
    let mut params = SatakeParams {
        place: Place::Finite(p),
        values,
        exact,
        tempered: Temperedness::Undetermined,
    };
    params.tempered = classify_temperedness(&params);
    params
}

fn exact_odd_values(p: u64, lambda: f64) -> Option<Vec<AlgebraicReal>> {
    // radicals collapse only at λ = ±2
    if lambda == 2.0 || lambda == -2.0 {
        let sign = if lambda > 0.0 { 1 } else { -1 };
        let sp = AlgebraicReal::sqrt_of(p);
        let sp_inv = sp.clone().inv().expect("√p ≠ 0");
        let s = AlgebraicReal::from_int(sign);
        Some(vec![
            sp.clone() * s.clone(),
            sp * s.clone(),
            sp_inv.clone() * s.clone(),
            sp_inv * s,
        ])
    } else {
        None
    }
}

/// The two Satake values at p = 2: χ₁(ϖ₂) = -√2·ε, χ₂(ϖ₂) = -ε/√2. The
/// stated consistency relations are asserted exactly.
pub fn satake_two(epsilon: i8) -> SatakeParams {
    assert!(epsilon == 1 || epsilon == -1);
    let e = AlgebraicReal::from_int(epsilon as i64);
    let sqrt2 = AlgebraicReal::sqrt_of(2);
    let a1 = -(sqrt2.clone() * e.clone());
    let a2 = -(sqrt2.clone().inv().expect("√2 ≠ 0") * e);
    // α₁α₂ = 1 and 2(α₁+α₂) = -3√2·ε
    assert_eq!(a1.clone() * a2.clone(), AlgebraicReal::one());
    let mu2 = (a1.clone() + a2.clone()).scale(&BigRational::from(BigInt::from(2)));
    assert_eq!(
        mu2,
        sqrt2.scale(&BigRational::from(BigInt::from(-3 * epsilon as i64)))
    );
    let values = vec![
        Complex64::new(a1.to_f64(), 0.0),
        Complex64::new(a2.to_f64(), 0.0),
    ];
    let mut params = SatakeParams {
        place: Place::Finite(2),
        values,
        exact: Some(vec![a1, a2]),
        tempered: Temperedness::Undetermined,
    };
    params.tempered = classify_temperedness(&params);
    params
}

/// The archimedean place: unitary spherical principal series with purely
/// imaginary parameter; recorded as tempered with no computation beyond the
/// spectral parameter.
pub fn satake_infinity(_r: f64) -> SatakeParams {
    SatakeParams {
        place: Place::Infinity,
        values: Vec::new(),
        exact: None,
        tempered: Temperedness::Tempered,
    }
}

/// Tempered iff every value has modulus 1 (within 1e-9); symbolic-only
/// parameter sets stay undetermined.
pub fn classify_temperedness(params: &SatakeParams) -> Temperedness {
    if params.place == Place::Infinity {
        return Temperedness::Tempered;
    }
    if params.values.is_empty() {
        return Temperedness::Undetermined;
    }
    if params
        .values
        .iter()
        .all(|z| (z.norm() - 1.0).abs() <= MODULUS_TOL)
    {
        Temperedness::Tempered
    } else {
        Temperedness::NonTempered
    }
}

/// Exact consistency of the Satake values with the classical Hecke
/// eigenvalues, as polynomial identities in a formal λ. Everything is routed
/// through the elementary symmetric functions e₁..e₄, where √(λ²-4) cancels:
///   e₁ = e₃ = (p^{1/2}+p^{-1/2})·λ,  e₂ = p + p^{-1} + λ²,  e₄ = 1,
/// and then p^{3/2}e₁ = p^{3/2}e₃ = p(p+1)λ, p²e₂ = p²λ² + p³ + p.
pub fn verify_hecke_satake_odd(p: u64) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new("satake-hecke-consistency");
    report.param("p", p.to_string());
    if !is_odd_prime(p) {
        report.status = Status::ConfigError;
        report.witness(format!("{p} is not an odd prime"));
        report.finish(started);
        return report;
    }

    // α = s·(λ/2) + s·(w/2) with s ∈ {√p, 1/√p} and w² = λ² - 4, in the ring
    // SymbolicValue[w]
    let lambda = SymbolicValue::var(Var::Lambda(p as u32));
    let w2 = lambda.clone() * lambda.clone() - SymbolicValue::from_int(4);
    let sp = AlgebraicReal::sqrt_of(p);
    let sp_inv = sp.clone().inv().expect("√p ≠ 0");
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let alphas: Vec<QuadExt> = [
        (sp.clone(), 1i64),
        (sp.clone(), -1),
        (sp_inv.clone(), 1),
        (sp_inv.clone(), -1),
    ]
    .into_iter()
    .map(|(s, sign)| QuadExt {
        a: lambda.clone().scale(&s).scale_rat(&half),
        b: SymbolicValue::constant(s)
            .scale_rat(&half)
            .scale_rat(&BigRational::from(BigInt::from(sign))),
    })
    .collect();

    // elementary symmetric functions via ∏(X + α_i) coefficients
    let mut esym = vec![QuadExt::zero(); 5];
    esym[0] = QuadExt::one();
    for alpha in &alphas {
        let mut next = vec![QuadExt::zero(); 5];
        for k in 0..5 {
            next[k] = next[k].clone().add(esym[k].clone());
            if k + 1 < 5 {
                next[k + 1] = next[k + 1].clone().add(esym[k].clone().mul(alpha, &w2));
            }
        }
        esym = next;
    }

    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, value: &QuadExt, expected: SymbolicValue| {
        if !value.b.is_zero() {
            failures.push(format!("{name}: radical part did not cancel"));
            return;
        }
        if value.a != expected {
            failures.push(format!("{name}: got {}, expected {expected}", value.a));
        }
    };

    let p_rat = AlgebraicReal::from_int(p as i64);
    let p32 = p_rat.clone() * sp.clone(); // p^{3/2}
    let target_24 = lambda
        .clone()
        .scale(&AlgebraicReal::from_int((p * (p + 1)) as i64));
    let target_3 = lambda.clone() * lambda.clone().scale(&AlgebraicReal::from_int((p * p) as i64))
        + SymbolicValue::from_int((p * p * p + p) as i64);

    check("e4 = 1", &esym[4], SymbolicValue::one());
    check(
        "p^{3/2}·e1 = p(p+1)λ",
        &esym[1].scale(&p32),
        target_24.clone(),
    );
    check("p^{3/2}·e3 = p(p+1)λ", &esym[3].scale(&p32), target_24);
    check(
        "p²·e2 = p²λ²+p³+p",
        &esym[2].scale(&(p_rat.clone() * p_rat)),
        target_3,
    );

    for f in failures {
        report.fail(f);
    }
    report.finish(started);
    report
}

/// a + b·w with w² = λ²-4, over the symbolic polynomial ring.
#[derive(Clone, Debug)]
struct QuadExt {
    a: SymbolicValue,
    b: SymbolicValue,
}

impl QuadExt {
    fn zero() -> Self {
        QuadExt {
            a: SymbolicValue::zero(),
            b: SymbolicValue::zero(),
        }
    }

    fn one() -> Self {
        QuadExt {
            a: SymbolicValue::one(),
            b: SymbolicValue::zero(),
        }
    }

    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }

    fn mul(&self, rhs: &QuadExt, w2: &SymbolicValue) -> QuadExt {
        QuadExt {
            a: self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.b.clone() * w2.clone(),
            b: self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.a.clone(),
        }
    }

    fn scale(&self, c: &AlgebraicReal) -> QuadExt {
        QuadExt {
            a: self.a.scale(c),
            b: self.b.scale(c),
        }
    }
}

/// Compare the lift's Satake parameters with the induced-representation
/// parameters {p^{1/2}η₀^{±1}, p^{-1/2}η₀^{±1}} where η₀(p)+η₀(p)⁻¹ = λ, as
/// multisets.
pub fn cap_match(p: u64, lambda: f64) -> bool {
    assert!(is_odd_prime(p));
    let satake = satake_odd(p, lambda);
    let sp = (p as f64).sqrt();
    // λ = ±2 collapses the quadratic: η₀ = ±1 exactly
    let eta = if lambda == 2.0 {
        Complex64::new(1.0, 0.0)
    } else if lambda == -2.0 {
        Complex64::new(-1.0, 0.0)
    } else {
        (Complex64::new(lambda, 0.0) + Complex64::new(lambda * lambda - 4.0, 0.0).sqrt()) / 2.0
    };
    let eta_inv = 1.0 / eta;
    let induced = vec![sp * eta, sp * eta_inv, eta / sp, eta_inv / sp];
    multisets_match(&satake.values, &induced, MODULUS_TOL)
}

pub fn multisets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let mut found = false;
        for (i, y) in b.iter().enumerate() {
            if !used[i] && (x - y).norm() <= tol {
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

/// Eigenvalue of the n-th power ϖ₂-operator on the spherical vector:
/// (-ε)ⁿ·(2^{3n/2} + 2^{n/2}), exact in Q(√2).
pub fn two_power_eigenvalue(n: u32, epsilon: i8) -> AlgebraicReal {
    assert!(epsilon == 1 || epsilon == -1);
    let value = AlgebraicReal::sqrt_of(1u64 << (3 * n)) + AlgebraicReal::sqrt_of(1u64 << n);
    let sign = if n % 2 == 1 && epsilon == 1 { -1 } else { 1 };
    value.scale(&BigRational::from(BigInt::from(sign)))
}
