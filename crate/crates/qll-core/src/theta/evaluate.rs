//! Numeric evaluation of the lifted form
//!   F(n(x)a_y) = Σ_{β∈S\0} A(β)·y²·K_{ir}(2π|β|y)·e^{2πi·Re(βx)}
//! from a file-backed coefficient source, truncated by norm with a reported
//! tail estimate.

use num_complex::Complex64;
use std::collections::HashMap;

use super::bessel::bessel_k_imag;
use crate::error::SourceError;
use crate::lattice::{for_each_s_up_to, primitive_decompose};
use crate::lift::{lift_inner_numeric, FileBackedSource};
use crate::quat::Quat;

#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    /// Real part of the truncated sum (the imaginary part cancels in exact
    /// arithmetic; its residue is reported for diagnostics).
    pub value: f64,
    pub imag_residue: f64,
    pub tail_estimate: f64,
    pub terms: u64,
}

/// Re(β·x) for numeric x.
#[inline]
fn re_product(beta: &Quat, x: &[f64; 4]) -> f64 {
    let b = beta.to_f64();
    b[0] * x[0] - b[1] * x[1] - b[2] * x[2] - b[3] * x[3]
}

/// Evaluate F at the point (x, y), summing over ν(β) ≤ norm_bound.
pub fn eval_lift(
    src: &FileBackedSource,
    x: &[f64; 4],
    y: f64,
    norm_bound: u64,
) -> Result<EvalResult, SourceError> {
    if y <= 0.0 {
        return Err(SourceError::Config("y must be positive".into()));
    }
    if !src.r.is_finite() {
        return Err(SourceError::MissingSpectralParameter);
    }
    let r = src.r;
    let two_pi = 2.0 * std::f64::consts::PI;

    let mut inner_cache: HashMap<(u64, u32, u64), f64> = HashMap::new();
    let mut bessel_cache: HashMap<u64, f64> = HashMap::new();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut terms = 0u64;

    for_each_s_up_to(norm_bound, |beta, nu| {
        let dec = primitive_decompose(beta).expect("β ∈ S");
        let inner = *inner_cache
            .entry((nu, dec.u, dec.d))
            .or_insert_with(|| lift_inner_numeric(src, nu, dec.u, dec.d));
        if inner == 0.0 {
            return;
        }
        let k = *bessel_cache
            .entry(nu)
            .or_insert_with(|| bessel_k_imag(r, two_pi * (nu as f64).sqrt() * y));
        let a = (nu as f64).sqrt() * inner;
        let phase = Complex64::from_polar(1.0, two_pi * re_product(beta, x));
        sum += a * y * y * k * phase;
        terms += 1;
    });

    // crude but honest tail majorant: walk 200 further shells with the count
    // bound 24·m·(1+ln m) and the largest coefficient magnitude
    let max_c = src
        .values
        .values()
        .map(|v| v.to_f64().abs())
        .fold(0.0f64, f64::max);
    let mut tail = 0.0;
    let mut nu = norm_bound + 2 - (norm_bound % 2);
    for _ in 0..200 {
        let m = (nu / 2) as f64;
        let count = 24.0 * m * (1.0 + m.ln());
        let inner_bound = max_c * (nu as f64).log2() * 4.0;
        tail += count
            * (nu as f64).sqrt()
            * inner_bound
            * y
            * y
            * bessel_k_imag(r, two_pi * (nu as f64).sqrt() * y);
        nu += 2;
    }

    Ok(EvalResult {
        value: sum.re,
        imag_residue: sum.im,
        tail_estimate: tail,
        terms,
    })
}
