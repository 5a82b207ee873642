//! Theta coefficients b(2m) = Σ_{β∈S, ν(β)=2m} P(β), the exact O-vs-S
//! coefficient identity, and numeric evaluation / transformation checks of
//! Θ_{l,ν}(z) = Σ_m b(2m) e^{2πimz}.

use num_complex::Complex64;
use std::collections::BTreeMap;

use super::cyclotomic::Cyclotomic;
use super::harmonic::HarmonicPolynomial;
use crate::lattice::{for_each_o_up_to, for_each_s_up_to};
use crate::report::{Status, VerificationReport};

/// Exact coefficients b(2m) for 0 ≤ m ≤ max_m.
pub fn theta_coeffs(p: &HarmonicPolynomial, max_m: u64) -> Vec<Cyclotomic> {
    let ev = p.scaled_evaluator();
    let mut acc: Vec<[i128; 4]> = vec![[0; 4]; max_m as usize + 1];
    for_each_s_up_to(2 * max_m, |q, nu| {
        debug_assert!(nu % 2 == 0);
        ev.accumulate(q, &mut acc[(nu / 2) as usize]);
    });
    let mut out: Vec<Cyclotomic> = acc.iter().map(|a| ev.finish(a)).collect();
    // β = 0 contributes P(0)
    out[0] = if p.degree == 0 {
        Cyclotomic::one()
    } else {
        Cyclotomic::zero()
    };
    out
}

/// Exact check Σ_{β∈O, ν(β)=m} P(β) = ε_{l,ν}⁻¹·2^{-l/2}·b(2m) for
/// 0 ≤ m ≤ max_m.
pub fn verify_o_s_identity(p: &HarmonicPolynomial, max_m: u64) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new("theta-o-s-identity");
    report.param("l", p.degree.to_string());
    report.param("eigenvalue", p.eigenvalue.to_string());
    report.param("max_m", max_m.to_string());

    let b = theta_coeffs(p, max_m);
    let ev = p.scaled_evaluator();
    let mut o_acc: Vec<[i128; 4]> = vec![[0; 4]; max_m as usize + 1];
    for_each_o_up_to(max_m, |q, nu| {
        ev.accumulate(q, &mut o_acc[nu as usize]);
    });
    let factor = p.eigenvalue.inv().expect("eigenvalue is a root of unity")
        * half_power(p.degree);
    for m in 0..=max_m as usize {
        let lhs = if m == 0 {
            if p.degree == 0 {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        } else {
            ev.finish(&o_acc[m])
        };
        let rhs = factor.clone() * b[m].clone();
        if lhs != rhs {
            report.fail(format!("m = {m}: O-sum {lhs} ≠ ε⁻¹2^(-l/2)·b = {rhs}"));
        }
    }
    report.finish(started);
    report
}

/// 2^{-l/2} as an exact rational in Q(ζ₈) (l even).
fn half_power(l: u32) -> Cyclotomic {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    Cyclotomic::from_rational(BigRational::new(
        BigInt::from(1),
        BigInt::from(1i64 << (l / 2)),
    ))
}

/// Θ evaluated by truncation: value and a rigorous tail bound.
#[derive(Clone, Copy, Debug)]
pub struct ThetaValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub truncation: u64,
}

/// Number of lattice points of S with norm 2m is 24·σ_odd(m) ≤ 24·m·(1+ln m);
/// with max |P| ≤ L1·(2m)^{l/2} on that sphere this gives a computable tail
/// majorant decaying geometrically in |q| = e^{-2π Im z}.
fn tail_bound(p_l1: f64, l: u32, im_z: f64, from_m: u64) -> f64 {
    let t = (-2.0 * std::f64::consts::PI * im_z).exp();
    let g = |m: f64| 24.0 * m * (1.0 + m.ln()) * p_l1 * (2.0 * m).powi(l as i32 / 2);
    let m0 = from_m as f64;
    // ratio of consecutive majorant terms is below rho for m ≥ m0
    let rho = t * (g(m0 + 1.0) / g(m0)).max(1.0);
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    g(m0) * t.powf(m0) / (1.0 - rho)
}

/// Truncated numeric evaluation of Θ_{l,ν} at z (Im z > 0), with a reported
/// tail bound. The exact coefficients may be precomputed and shared.
pub fn theta_eval_with(
    p: &HarmonicPolynomial,
    coeffs: &[Cyclotomic],
    z: Complex64,
    max_m: u64,
) -> ThetaValue {
    assert!(z.im > 0.0, "theta evaluation requires Im z > 0");
    assert!((coeffs.len() as u64) > max_m);
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
    let mut value = Complex64::new(0.0, 0.0);
    let mut qm = Complex64::new(1.0, 0.0);
    for coeff in coeffs.iter().take(max_m as usize + 1) {
        value += coeff.to_complex() * qm;
        qm *= q;
    }
    let l1 = p.scaled_evaluator().coeff_l1_bound();
    ThetaValue {
        value,
        tail_bound: tail_bound(l1, p.degree, z.im, max_m + 1),
        truncation: max_m,
    }
}

pub fn theta_eval(p: &HarmonicPolynomial, z: Complex64, max_m: u64) -> ThetaValue {
    let coeffs = theta_coeffs(p, max_m);
    theta_eval_with(p, &coeffs, z, max_m)
}

/// Numeric check of the transformation formula
///   Θ(-1/(2z)) = -ε⁻¹·2^{l/2+1}·z^{l+2}·Θ(z),
/// plus weight-(l+2) modularity spot checks at z ↦ z+1 and at
/// [[1,0],[2,1]] ∈ Γ₀(2). `corrupt_sign` flips the expected sign, as a
/// detection control.
pub fn verify_transformation(
    p: &HarmonicPolynomial,
    z: Complex64,
    max_m: u64,
    tol: f64,
    corrupt_sign: bool,
) -> VerificationReport {
    let started = std::time::Instant::now();
    let mut report = VerificationReport::new("theta-transformation");
    report.param("l", p.degree.to_string());
    report.param("z", format!("{}+{}i", z.re, z.im));
    report.param("tol", format!("{tol:e}"));
    report.param("max_m", max_m.to_string());
    assert!(z.im > 0.0);

    let coeffs = theta_coeffs(p, max_m);
    let l = p.degree;

    // points where Θ gets evaluated, with the prefactor applied to the right
    let inv_pt = -1.0 / (2.0 * z);
    let shift_pt = z + 1.0;
    let gamma_pt = z / (2.0 * z + 1.0);

    let eps_inv = p.eigenvalue.inv().expect("root of unity").to_complex();
    let sign = if corrupt_sign { 1.0 } else { -1.0 };
    let pref_inv = sign * eps_inv * 2f64.powf(l as f64 / 2.0 + 1.0) * z.powu(l + 2);
    let pref_gamma = (2.0 * z + 1.0).powu(l + 2);

    let mut worst_tail = 0f64;
    let mut check = |name: &str, lhs_pt: Complex64, prefactor: Complex64| {
        let lhs = theta_eval_with(p, &coeffs, lhs_pt, max_m);
        let rhs = theta_eval_with(p, &coeffs, z, max_m);
        let tails = lhs.tail_bound + prefactor.norm() * rhs.tail_bound;
        worst_tail = worst_tail.max(tails);
        let diff = (lhs.value - prefactor * rhs.value).norm();
        (name.to_string(), diff, tails)
    };

    let results = [
        check("inversion", inv_pt, pref_inv),
        check("translation", shift_pt, Complex64::new(1.0, 0.0)),
        check("gamma0_2", gamma_pt, pref_gamma),
    ];

    if worst_tail >= tol {
        report.status = Status::Inconclusive;
        report.witness(format!(
            "tail bound {worst_tail:e} exceeds tolerance {tol:e}; raise max_m"
        ));
        report.finish(started);
        return report;
    }
    report.param("tail_bound", format!("{worst_tail:e}"));
    for (name, diff, _) in results {
        report.param(&format!("residual_{name}"), format!("{diff:e}"));
        if diff > tol {
            report.fail(format!("{name}: |LHS - RHS| = {diff:e} > {tol:e}"));
        }
    }
    report.finish(started);
    report
}

/// Exact vanishing of b for polynomials whose eigenvalue is not real: the
/// theta series is then identically zero (iS = S forces it).
pub fn theta_vanishes(p: &HarmonicPolynomial, max_m: u64) -> bool {
    theta_coeffs(p, max_m).iter().all(|c| c.is_zero())
}

/// Grouped exact A·P sums per even norm, shared by several checks.
pub fn sphere_sums(p: &HarmonicPolynomial, max_norm: u64) -> BTreeMap<u64, Cyclotomic> {
    let ev = p.scaled_evaluator();
    let mut acc: BTreeMap<u64, [i128; 4]> = BTreeMap::new();
    for_each_s_up_to(max_norm, |q, nu| {
        ev.accumulate(q, acc.entry(nu).or_insert([0; 4]));
    });
    acc.into_iter().map(|(k, a)| (k, ev.finish(&a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::harmonic::harmonic_basis;

    #[test]
    fn degree_zero_coefficients() {
        let p = &harmonic_basis(0).unwrap()[0];
        let b = theta_coeffs(p, 5);
        assert_eq!(b[0], Cyclotomic::one());
        assert_eq!(b[1], Cyclotomic::from_int(24));
        // b(2m) = 24·σ_odd(m)
        assert_eq!(b[2], Cyclotomic::from_int(24));
        assert_eq!(b[3], Cyclotomic::from_int(96)); // σ_odd(3) = 4
        assert_eq!(b[4], Cyclotomic::from_int(24));
        assert_eq!(b[5], Cyclotomic::from_int(144)); // σ_odd(5) = 6
    }

    #[test]
    fn degree_two_b0_vanishes() {
        for p in harmonic_basis(2).unwrap().iter() {
            let b = theta_coeffs(p, 2);
            assert!(b[0].is_zero());
        }
    }

    #[test]
    fn o_s_identity_degree_zero() {
        let p = &harmonic_basis(0).unwrap()[0];
        let rep = verify_o_s_identity(p, 12);
        assert_eq!(rep.status, Status::Pass, "{:?}", rep.witnesses);
    }

    #[test]
    fn o_s_identity_degree_two() {
        for p in harmonic_basis(2).unwrap().iter() {
            let rep = verify_o_s_identity(p, 8);
            assert_eq!(rep.status, Status::Pass, "{:?}", rep.witnesses);
        }
    }

    #[test]
    fn transformation_degree_zero() {
        let p = &harmonic_basis(0).unwrap()[0];
        let z = Complex64::new(0.3, 0.8);
        let rep = verify_transformation(p, z, 120, 1e-8, false);
        assert_eq!(rep.status, Status::Pass, "{:?}", rep.witnesses);
        // corrupted sign must fail
        let rep = verify_transformation(p, z, 120, 1e-8, true);
        assert_eq!(rep.status, Status::Fail);
    }

    #[test]
    fn eval_positivity_and_periodicity() {
        let p = &harmonic_basis(0).unwrap()[0];
        let z = Complex64::new(0.0, 1.0);
        let v = theta_eval(p, z, 60);
        assert!(v.value.re > 0.0);
        assert!(v.value.im.abs() < 1e-12);
        let v1 = theta_eval(p, z + 1.0, 60);
        assert!((v.value - v1.value).norm() < 1e-12 + v.tail_bound + v1.tail_bound);
        // tail bound decreases with the truncation point
        let t1 = theta_eval(p, z, 40).tail_bound;
        let t2 = theta_eval(p, z, 80).tail_bound;
        assert!(t2 < t1);
    }

    #[test]
    fn imaginary_eigenvalue_thetas_vanish() {
        let basis = harmonic_basis(2).unwrap();
        let mut saw_imaginary = false;
        for p in &basis {
            if p.eigenvalue.is_plus_minus_i() {
                saw_imaginary = true;
                assert!(theta_vanishes(p, 20));
            }
        }
        assert!(saw_imaginary, "degree 2 has ±i eigenvectors");
    }

    #[test]
    fn degree_six_cusp_forms() {
        // the first degree with nonzero cuspidal theta series; the nonzero
        // ones must carry a real eigenvalue and satisfy both identities
        let basis = harmonic_basis(6).unwrap();
        let nonzero: Vec<_> = basis
            .iter()
            .filter(|p| !theta_vanishes(p, 16))
            .collect();
        assert!(!nonzero.is_empty(), "weight-8 cusp forms exist at level 2");
        for p in &nonzero {
            assert!(p.eigenvalue.as_rational().is_some(), "nonzero theta needs real eigenvalue");
            let rep = verify_o_s_identity(p, 12);
            assert_eq!(rep.status, Status::Pass, "{:?}", rep.witnesses);
            let rep = verify_transformation(p, Complex64::new(0.3, 0.8), 100, 1e-6, false);
            assert_eq!(rep.status, Status::Pass, "{:?}", rep.witnesses);
            // and a corrupted sign is caught on the genuinely cuspidal series
            let rep = verify_transformation(p, Complex64::new(0.3, 0.8), 100, 1e-6, true);
            assert_eq!(rep.status, Status::Fail);
        }
    }
}
