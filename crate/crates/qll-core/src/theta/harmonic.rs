//! Harmonic polynomial eigenbases on the quaternions.
//!
//! Degree-l homogeneous polynomials in the four coordinates, annihilated by
//! the 4-variable Laplacian, decomposed into eigenvectors of the substitution
//! x ↦ (1+i)/√2 · x (left multiplication, an order-8 action). For even l the
//! substitution operator is rational and its eigenvalues are 4th roots of
//! unity; the kernels of (T - ζ₈ᵏ) are extracted over Q(ζ₈) for k = 0..7.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::cyclotomic::Cyclotomic;
use crate::error::ExactError;
use crate::exact::Rational;
use crate::quat::Quat;

pub type Expo = [u8; 4];

/// All degree-l exponent vectors in 4 variables, lexicographic.
pub fn monomials(l: u32) -> Vec<Expo> {
    let mut out = Vec::new();
    for a in 0..=l {
        for b in 0..=(l - a) {
            for c in 0..=(l - a - b) {
                let d = l - a - b - c;
                out.push([a as u8, b as u8, c as u8, d as u8]);
            }
        }
    }
    out
}

/// Dense rational polynomial on a fixed monomial list.
type DenseVec = Vec<Rational>;

/// Matrix of the Laplacian from degree l to degree l-2 monomials.
fn laplacian_matrix(l: u32) -> (Vec<Expo>, Vec<Expo>, Vec<Vec<Rational>>) {
    let src = monomials(l);
    let dst = monomials(l - 2);
    let dst_index: BTreeMap<Expo, usize> = dst.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut rows = vec![vec![BigRational::zero(); src.len()]; dst.len()];
    for (col, e) in src.iter().enumerate() {
        for axis in 0..4 {
            if e[axis] >= 2 {
                let mut out = *e;
                out[axis] -= 2;
                let coeff = BigRational::from(BigInt::from((e[axis] as i64) * (e[axis] as i64 - 1)));
                let row = dst_index[&out];
                rows[row][col] += coeff;
            }
        }
    }
    (src, dst, rows)
}

/// Kernel basis of a rational matrix, echelon-style: one vector per free
/// column, with a 1 in that column.
fn rational_kernel(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<DenseVec> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone().recip();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for cc in 0..ncols {
                    let sub = rows[r][cc].clone() * f.clone();
                    rows[i][cc] = rows[i][cc].clone() - sub;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for c in 0..ncols {
        if pivot_of_col[c].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[c] = BigRational::one();
        for cc in 0..ncols {
            if let Some(pr) = pivot_of_col[cc] {
                v[cc] = -rows[pr][c].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Kernel basis of a Q(ζ₈) matrix (square), same echelon convention.
fn cyclotomic_kernel(mut rows: Vec<Vec<Cyclotomic>>) -> Vec<Vec<Cyclotomic>> {
    let n = rows.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("pivot nonzero");
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for cc in 0..n {
                    let sub = rows[r][cc].clone() * f.clone();
                    rows[i][cc] = rows[i][cc].clone() - sub;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
    }
    let mut basis = Vec::new();
    for c in 0..n {
        if pivot_of_col[c].is_some() {
            continue;
        }
        let mut v = vec![Cyclotomic::zero(); n];
        v[c] = Cyclotomic::one();
        for cc in 0..n {
            if let Some(pr) = pivot_of_col[cc] {
                v[cc] = -rows[pr][c].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Coordinates of the image of x under left multiplication by (1+i):
/// (x₁-x₂, x₁+x₂, x₃-x₄, x₃+x₄).
const LEFT_MUL_1PI: [[i64; 4]; 4] = [
    [1, -1, 0, 0],
    [1, 1, 0, 0],
    [0, 0, 1, -1],
    [0, 0, 1, 1],
];

/// Expand P(Lx) for a single monomial x^e as a polynomial map.
fn substitute_monomial(e: &Expo) -> BTreeMap<Expo, Rational> {
    let mut acc: BTreeMap<Expo, Rational> = BTreeMap::new();
    acc.insert([0, 0, 0, 0], BigRational::one());
    for axis in 0..4 {
        for _ in 0..e[axis] {
            let mut next: BTreeMap<Expo, Rational> = BTreeMap::new();
            for (expo, coeff) in &acc {
                for (var, &lc) in LEFT_MUL_1PI[axis].iter().enumerate() {
                    if lc == 0 {
                        continue;
                    }
                    let mut ne = *expo;
                    ne[var] += 1;
                    let add = coeff.clone() * BigRational::from(BigInt::from(lc));
                    *next.entry(ne).or_insert_with(BigRational::zero) += add;
                }
            }
            acc = next;
        }
    }
    acc
}

/// Matrix of P ↦ 2^{-l/2}·P(Lx) on the degree-l monomial space (even l).
fn substitution_matrix(l: u32, monos: &[Expo]) -> Vec<Vec<Rational>> {
    let index: BTreeMap<Expo, usize> = monos.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let scale = BigRational::new(BigInt::from(1), BigInt::from(1i64 << (l / 2)));
    let mut cols = vec![vec![BigRational::zero(); monos.len()]; monos.len()];
    for (c, e) in monos.iter().enumerate() {
        for (expo, coeff) in substitute_monomial(e) {
            cols[c][index[&expo]] = coeff * scale.clone();
        }
    }
    // return row-major
    let n = monos.len();
    (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect()
}

/// Homogeneous degree-l harmonic polynomial with Q(ζ₈) coefficients and its
/// substitution eigenvalue.
#[derive(Clone, Debug)]
pub struct HarmonicPolynomial {
    pub degree: u32,
    pub coeffs: BTreeMap<Expo, Cyclotomic>,
    pub eigenvalue: Cyclotomic,
}

impl HarmonicPolynomial {
    /// Exact value P(q), for q in half-integer coordinates.
    pub fn eval(&self, q: &Quat) -> Cyclotomic {
        let mut total = Cyclotomic::zero();
        for (e, coeff) in &self.coeffs {
            let mut m = 1i128;
            for axis in 0..4 {
                for _ in 0..e[axis] {
                    m *= q.t[axis];
                }
            }
            total = total + coeff.scale(&BigRational::from(BigInt::from(m)));
        }
        // doubled coordinates contribute 2^l
        total.scale(&BigRational::new(
            BigInt::from(1),
            BigInt::from(1i128 << self.degree),
        ))
    }

    /// Laplacian of P (degree l-2 polynomial), exact.
    pub fn laplacian(&self) -> BTreeMap<Expo, Cyclotomic> {
        let mut out: BTreeMap<Expo, Cyclotomic> = BTreeMap::new();
        for (e, coeff) in &self.coeffs {
            for axis in 0..4 {
                if e[axis] >= 2 {
                    let mut ne = *e;
                    ne[axis] -= 2;
                    let f = BigRational::from(BigInt::from(
                        (e[axis] as i64) * (e[axis] as i64 - 1),
                    ));
                    let add = coeff.scale(&f);
                    let entry = out.entry(ne).or_insert_with(Cyclotomic::zero);
                    *entry = entry.clone() + add;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// The substituted polynomial 2^{-l/2}·P(Lx); equals eigenvalue·P for
    /// basis members.
    pub fn substituted(&self) -> BTreeMap<Expo, Cyclotomic> {
        let mut out: BTreeMap<Expo, Cyclotomic> = BTreeMap::new();
        let scale = BigRational::new(BigInt::from(1), BigInt::from(1i64 << (self.degree / 2)));
        for (e, coeff) in &self.coeffs {
            for (expo, c) in substitute_monomial(e) {
                let add = coeff.scale(&(c * scale.clone()));
                let entry = out.entry(expo).or_insert_with(Cyclotomic::zero);
                *entry = entry.clone() + add;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Integer-scaled evaluator for hot loops: numerators per monomial and
    /// the common denominator (including the 2^l from doubled coordinates).
    pub fn scaled_evaluator(&self) -> ScaledEvaluator {
        let mut denom_lcm = BigInt::from(1);
        for c in self.coeffs.values() {
            for q in &c.c {
                denom_lcm = num_integer::lcm(denom_lcm.clone(), q.denom().clone());
            }
        }
        let terms = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let nums: [i128; 4] = std::array::from_fn(|i| {
                    let scaled = c.c[i].clone() * BigRational::from(denom_lcm.clone());
                    assert!(scaled.is_integer());
                    scaled.to_integer().to_i128().expect("small coefficients")
                });
                (*e, nums)
            })
            .collect();
        ScaledEvaluator {
            degree: self.degree,
            terms,
            denom: denom_lcm,
        }
    }
}

/// Evaluates Σ 4·i128 accumulators; exact division happens once at the end.
pub struct ScaledEvaluator {
    degree: u32,
    terms: Vec<(Expo, [i128; 4])>,
    denom: BigInt,
}

impl ScaledEvaluator {
    /// Accumulate P(q)·denominator into `acc` (4 cyclotomic components).
    #[inline]
    pub fn accumulate(&self, q: &Quat, acc: &mut [i128; 4]) {
        for (e, nums) in &self.terms {
            let mut m = 1i128;
            for axis in 0..4 {
                for _ in 0..e[axis] {
                    m *= q.t[axis];
                }
            }
            for i in 0..4 {
                acc[i] += nums[i] * m;
            }
        }
    }

    /// Turn an accumulator into the exact cyclotomic value.
    pub fn finish(&self, acc: &[i128; 4]) -> Cyclotomic {
        let denom = self.denom.clone() * BigInt::from(1i128 << self.degree);
        Cyclotomic {
            c: std::array::from_fn(|i| BigRational::new(BigInt::from(acc[i]), denom.clone())),
        }
    }

    pub fn eval(&self, q: &Quat) -> Cyclotomic {
        let mut acc = [0i128; 4];
        self.accumulate(q, &mut acc);
        self.finish(&acc)
    }

    /// Σ over the coefficient magnitudes, an L¹ bound used in truncation
    /// estimates: |P(β)| ≤ bound · max_i |β_i|^l ≤ bound·(2√ν)^l / 2^l.
    pub fn coeff_l1_bound(&self) -> f64 {
        let d = self.denom.to_f64().unwrap_or(f64::INFINITY);
        self.terms
            .iter()
            .map(|(_, nums)| nums.iter().map(|n| (*n as f64).abs()).sum::<f64>())
            .sum::<f64>()
            / d
    }
}

/// A basis of the degree-l harmonic space consisting of eigenvectors of the
/// order-8 substitution, eigenvalues 8th roots of unity. Errors on odd l
/// (the associated theta function would vanish identically).
pub fn harmonic_basis(l: u32) -> Result<Vec<HarmonicPolynomial>, ExactError> {
    if l % 2 != 0 {
        return Err(ExactError::BadBinding(format!(
            "harmonic_basis requires even degree, got {l}"
        )));
    }
    let monos = monomials(l);
    if l == 0 {
        return Ok(vec![HarmonicPolynomial {
            degree: 0,
            coeffs: BTreeMap::from([([0, 0, 0, 0], Cyclotomic::one())]),
            eigenvalue: Cyclotomic::one(),
        }]);
    }
    let (_, _, lap) = laplacian_matrix(l);
    let kernel = rational_kernel(lap, monos.len());
    let h = kernel.len();
    assert_eq!(h as u32, (l + 1) * (l + 1), "harmonic dimension is (l+1)²");

    // pivot positions for reading off coordinates in the kernel basis: each
    // kernel vector has a 1 at its own free column and 0 at other free cols
    let free_cols: Vec<usize> = kernel
        .iter()
        .map(|v| {
            (0..monos.len())
                .find(|&c| {
                    v[c].is_one()
                        && kernel
                            .iter()
                            .filter(|w| !std::ptr::eq(*w, v))
                            .all(|w| w[c].is_zero())
                })
                .expect("echelon kernel basis")
        })
        .collect();

    let u = substitution_matrix(l, &monos);
    // T restricted to the harmonic space, h×h rational
    let mut t = vec![vec![BigRational::zero(); h]; h];
    for (bi, vec_b) in kernel.iter().enumerate() {
        // w = U·v
        let mut w = vec![BigRational::zero(); monos.len()];
        for (r, w_r) in w.iter_mut().enumerate() {
            for c in 0..monos.len() {
                if !u[r][c].is_zero() && !vec_b[c].is_zero() {
                    *w_r += u[r][c].clone() * vec_b[c].clone();
                }
            }
        }
        // coordinates = values at the free columns; then verify exactness
        let coords: Vec<Rational> = free_cols.iter().map(|&c| w[c].clone()).collect();
        let mut recon = vec![BigRational::zero(); monos.len()];
        for (j, coord) in coords.iter().enumerate() {
            for c in 0..monos.len() {
                recon[c] += coord.clone() * kernel[j][c].clone();
            }
        }
        assert_eq!(recon, w, "substitution preserves the harmonic space");
        for (r, coord) in coords.into_iter().enumerate() {
            t[r][bi] = coord;
        }
    }

    let mut out = Vec::with_capacity(h);
    for k in 0..8i64 {
        let zeta_k = Cyclotomic::zeta_pow(k);
        let mat: Vec<Vec<Cyclotomic>> = (0..h)
            .map(|r| {
                (0..h)
                    .map(|c| {
                        let mut x = Cyclotomic::from_rational(t[r][c].clone());
                        if r == c {
                            x = x - zeta_k.clone();
                        }
                        x
                    })
                    .collect()
            })
            .collect();
        for v in cyclotomic_kernel(mat) {
            // polynomial = Σ v_j · kernel_j, normalized by the first nonzero
            // monomial coefficient
            let mut coeffs: BTreeMap<Expo, Cyclotomic> = BTreeMap::new();
            for (j, coord) in v.iter().enumerate() {
                if coord.is_zero() {
                    continue;
                }
                for (c, mono) in monos.iter().enumerate() {
                    if !kernel[j][c].is_zero() {
                        let add = coord.scale(&kernel[j][c]);
                        let entry = coeffs.entry(*mono).or_insert_with(Cyclotomic::zero);
                        *entry = entry.clone() + add;
                    }
                }
            }
            coeffs.retain(|_, c| !c.is_zero());
            let lead = coeffs
                .values()
                .next()
                .expect("eigenvector is nonzero")
                .clone();
            let lead_inv = lead.inv().expect("nonzero");
            for c in coeffs.values_mut() {
                *c = c.clone() * lead_inv.clone();
            }
            out.push(HarmonicPolynomial {
                degree: l,
                coeffs,
                eigenvalue: zeta_k.clone(),
            });
        }
    }
    assert_eq!(out.len(), h, "eigenvectors span the harmonic space");
    Ok(out)
}

impl fmt::Display for HarmonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (axis, &p) in e.iter().enumerate() {
                if p > 0 {
                    write!(f, "·x{}", axis + 1)?;
                    if p > 1 {
                        write!(f, "^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero() {
        let basis = harmonic_basis(0).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].eigenvalue, Cyclotomic::one());
        assert_eq!(basis[0].eval(&Quat::w2()), Cyclotomic::one());
    }

    #[test]
    fn rejects_odd_degree() {
        assert!(harmonic_basis(1).is_err());
        assert!(harmonic_basis(3).is_err());
    }

    #[test]
    fn degree_two_dimension_and_exactness() {
        let basis = harmonic_basis(2).unwrap();
        assert_eq!(basis.len(), 9);
        for p in &basis {
            assert!(p.laplacian().is_empty(), "not harmonic: {p}");
            // eigen relation as exact polynomial identity
            let sub = p.substituted();
            let mut expected: BTreeMap<Expo, Cyclotomic> = BTreeMap::new();
            for (e, c) in &p.coeffs {
                expected.insert(*e, c.clone() * p.eigenvalue.clone());
            }
            expected.retain(|_, v| !v.is_zero());
            assert_eq!(sub, expected, "eigen relation fails for {p}");
            // eighth power of the eigenvalue is 1
            assert_eq!(p.eigenvalue.pow(8), Cyclotomic::one());
        }
    }

    #[test]
    fn x1sq_minus_x2sq_is_harmonic() {
        // in the span: its Laplacian is 2 - 2 = 0
        let p = HarmonicPolynomial {
            degree: 2,
            coeffs: BTreeMap::from([
                ([2, 0, 0, 0], Cyclotomic::one()),
                ([0, 2, 0, 0], -Cyclotomic::one()),
            ]),
            eigenvalue: Cyclotomic::one(),
        };
        assert!(p.laplacian().is_empty());
    }

    #[test]
    fn degree_four_dimension() {
        let basis = harmonic_basis(4).unwrap();
        assert_eq!(basis.len(), 25);
        for p in basis.iter().step_by(5) {
            assert!(p.laplacian().is_empty());
        }
    }

    #[test]
    fn degree_six_dimension() {
        let basis = harmonic_basis(6).unwrap();
        assert_eq!(basis.len(), 49);
        assert!(basis[0].laplacian().is_empty());
    }

    #[test]
    fn scaled_evaluator_agrees() {
        for l in [2u32, 4] {
            for p in harmonic_basis(l).unwrap().iter().step_by(3) {
                let ev = p.scaled_evaluator();
                for q in [
                    Quat::w2(),
                    Quat::omega(),
                    Quat::from_ints(1, -2, 0, 3),
                    Quat::from_doubled([1, 1, -3, 5]),
                ] {
                    assert_eq!(ev.eval(&q), p.eval(&q), "l={l} q={q}");
                }
            }
        }
    }
}
