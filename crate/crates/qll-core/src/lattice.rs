//! The lattice S = Z(1-ij) + Z(-i-ij) + Z(-j-ij) + Z·2ij, the dual of the
//! Hurwitz order O under Re = tr/2, together with membership, norm-sphere
//! enumeration and the primitive decomposition β = ϖ₂ᵘ·d·β₀.

use crate::error::QuatError;
use crate::quat::Quat;

/// Default basis of S in doubled coordinates.
pub const S_BASIS: [Quat; 4] = [
    Quat::from_doubled([2, 0, 0, -2]),  // 1 - ij
    Quat::from_doubled([0, -2, 0, -2]), // -i - ij
    Quat::from_doubled([0, 0, -2, -2]), // -j - ij
    Quat::from_doubled([0, 0, 0, 4]),   // 2ij
];

/// Basis of the Hurwitz order O in doubled coordinates.
pub const O_BASIS: [Quat; 4] = [
    Quat::from_doubled([2, 0, 0, 0]),
    Quat::from_doubled([0, 2, 0, 0]),
    Quat::from_doubled([0, 0, 2, 0]),
    Quat::from_doubled([1, 1, 1, 1]), // (1+i+j+k)/2
];

/// A rank-4 sublattice of the half-integer quaternions, given by generators.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    pub generators: [Quat; 4],
}

impl LatticeBasis {
    pub fn s_default() -> Self {
        LatticeBasis {
            generators: S_BASIS,
        }
    }

    pub fn o_default() -> Self {
        LatticeBasis {
            generators: O_BASIS,
        }
    }

    pub fn gram_det(&self) -> i128 {
        let cols: [[i128; 4]; 4] = std::array::from_fn(|i| self.generators[i].t);
        det4(&cols)
    }

    pub fn is_full_rank(&self) -> bool {
        self.gram_det() != 0
    }
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det4(cols: &[[i128; 4]; 4]) -> i128 {
    let mut det = 0i128;
    for r in 0..4 {
        let mut minor = [[0i128; 3]; 3];
        let mut mr = 0;
        for rr in 0..4 {
            if rr == r {
                continue;
            }
            for cc in 1..4 {
                minor[mr][cc - 1] = cols[cc][rr];
            }
            mr += 1;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        det += sign * cols[0][r] * det3(&minor);
    }
    det
}

/// Solve the integer system (columns of `basis`)·x = v exactly; returns the
/// integer coordinate vector when one exists.
fn solve_int4(basis: &[[i128; 4]; 4], v: &[i128; 4]) -> Option<[i128; 4]> {
    let det = det4(basis);
    assert!(det != 0, "basis must be full rank");
    let mut x = [0i128; 4];
    for col in 0..4 {
        // Cramer: replace column `col` by v
        let mut m = *basis;
        m[col] = *v;
        let d = det4(&m);
        if d % det != 0 {
            return None;
        }
        x[col] = d / det;
    }
    Some(x)
}

/// Row-style Hermite normal form of a list of generators (rows); canonical,
/// so two generating sets span the same lattice iff their HNFs are equal.
pub fn hnf(rows: &[[i128; 4]]) -> Vec<[i128; 4]> {
    let mut rows: Vec<[i128; 4]> = rows.to_vec();
    let mut pivot = 0usize;
    for col in 0..4 {
        loop {
            let mut best: Option<usize> = None;
            for r in pivot..rows.len() {
                if rows[r][col] != 0 {
                    best = match best {
                        Some(b) if rows[b][col].abs() <= rows[r][col].abs() => Some(b),
                        _ => Some(r),
                    };
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot, b);
            let mut reduced = true;
            for r in pivot + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[pivot][col]);
                    for c in 0..4 {
                        rows[r][c] -= q * rows[pivot][c];
                    }
                    if rows[r][col] != 0 {
                        reduced = false;
                    }
                }
            }
            if reduced {
                break;
            }
        }
        if pivot < rows.len() && rows[pivot][col] != 0 {
            if rows[pivot][col] < 0 {
                for c in 0..4 {
                    rows[pivot][c] = -rows[pivot][c];
                }
            }
            for r in 0..pivot {
                let q = rows[r][col].div_euclid(rows[pivot][col]);
                for c in 0..4 {
                    rows[r][c] -= q * rows[pivot][c];
                }
            }
            pivot += 1;
        }
    }
    rows.truncate(pivot);
    rows
}

/// Membership in S by solving the 4×4 integer system over the S basis.
pub fn s_membership(beta: &Quat) -> bool {
    let basis: [[i128; 4]; 4] = std::array::from_fn(|i| S_BASIS[i].t);
    solve_int4(&basis, &beta.t).is_some()
}

/// Fast equivalent membership test: S consists of the integer-coordinate
/// quaternions with even coordinate sum. Cross-checked against
/// `s_membership` in tests.
#[inline]
pub fn in_s(beta: &Quat) -> bool {
    beta.t.iter().all(|x| x % 2 == 0) && (beta.t.iter().sum::<i128>()) % 4 == 0
}

/// Membership in the Hurwitz order.
#[inline]
pub fn in_o(beta: &Quat) -> bool {
    beta.in_order()
}

/// Lemma check S = ϖ₂O, via Hermite normal forms of both generating sets.
pub fn verify_s_equals_w2o() -> bool {
    let s_rows: Vec<[i128; 4]> = S_BASIS.iter().map(|q| q.t).collect();
    let w2o_rows: Vec<[i128; 4]> = O_BASIS.iter().map(|q| (Quat::w2() * *q).t).collect();
    hnf(&s_rows) == hnf(&w2o_rows)
}

/// ϖ₂O = Oϖ₂ as lattices (two-sided ideal).
pub fn verify_w2o_two_sided() -> bool {
    let left: Vec<[i128; 4]> = O_BASIS.iter().map(|q| (Quat::w2() * *q).t).collect();
    let right: Vec<[i128; 4]> = O_BASIS.iter().map(|q| (*q * Quat::w2()).t).collect();
    hnf(&left) == hnf(&right)
}

/// All β ∈ S with ν(β) = n, in canonical (lexicographic doubled-coordinate)
/// order. Odd n yields the empty list since every S element has even norm.
pub fn enumerate_by_norm(n: u64) -> Vec<Quat> {
    let mut out = Vec::new();
    if n == 0 || n % 2 == 1 {
        return out;
    }
    // S has integer coordinates c with Σc² = n, so |c_i| ≤ √n
    let bound = (n as f64).sqrt() as i128 + 1;
    for c0 in -bound..=bound {
        let r0 = n as i128 - c0 * c0;
        if r0 < 0 {
            continue;
        }
        for c1 in -bound..=bound {
            let r1 = r0 - c1 * c1;
            if r1 < 0 {
                continue;
            }
            for c2 in -bound..=bound {
                let r2 = r1 - c2 * c2;
                if r2 < 0 {
                    continue;
                }
                let c3 = isqrt_i128(r2);
                if c3 * c3 != r2 {
                    continue;
                }
                let roots = if c3 == 0 { vec![0] } else { vec![-c3, c3] };
                for c3 in roots {
                    let q = Quat::from_ints(c0, c1, c2, c3);
                    if in_s(&q) {
                        out.push(q);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Visit every β ∈ S with 0 < ν(β) ≤ max_norm in one box pass.
pub fn for_each_s_up_to<F: FnMut(&Quat, u64)>(max_norm: u64, mut f: F) {
    let bound = (max_norm as f64).sqrt() as i128 + 1;
    for c0 in -bound..=bound {
        let n0 = c0 * c0;
        if n0 > max_norm as i128 {
            continue;
        }
        for c1 in -bound..=bound {
            let n1 = n0 + c1 * c1;
            if n1 > max_norm as i128 {
                continue;
            }
            for c2 in -bound..=bound {
                let n2 = n1 + c2 * c2;
                if n2 > max_norm as i128 {
                    continue;
                }
                for c3 in -bound..=bound {
                    let n3 = n2 + c3 * c3;
                    if n3 > max_norm as i128 || n3 == 0 {
                        continue;
                    }
                    if (c0 + c1 + c2 + c3) % 2 == 0 {
                        f(&Quat::from_ints(c0, c1, c2, c3), n3 as u64);
                    }
                }
            }
        }
    }
}

fn isqrt_i128(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Visit every γ ∈ O with 0 < ν(γ) ≤ max_norm (half-integer coordinates
/// included).
pub fn for_each_o_up_to<F: FnMut(&Quat, u64)>(max_norm: u64, mut f: F) {
    // doubled coordinates: Σt² = 4ν ≤ 4·max, all t of one parity
    let cap = 4 * max_norm as i128;
    let bound = isqrt_i128(cap);
    for parity in 0..2i128 {
        let start = if (-bound).rem_euclid(2) == parity {
            -bound
        } else {
            -bound + 1
        };
        let mut t0 = start;
        while t0 <= bound {
            let n0 = t0 * t0;
            let mut t1 = start;
            while t1 <= bound {
                let n1 = n0 + t1 * t1;
                if n1 <= cap {
                    let mut t2 = start;
                    while t2 <= bound {
                        let n2 = n1 + t2 * t2;
                        if n2 <= cap {
                            let mut t3 = start;
                            while t3 <= bound {
                                let n3 = n2 + t3 * t3;
                                if n3 <= cap && n3 > 0 {
                                    debug_assert!(n3 % 4 == 0);
                                    f(&Quat::from_doubled([t0, t1, t2, t3]), (n3 / 4) as u64);
                                }
                                t3 += 2;
                            }
                        }
                        t2 += 2;
                    }
                }
                t1 += 2;
            }
            t0 += 2;
        }
    }
}

/// All γ ∈ O with ν(γ) = n, canonical order.
pub fn enumerate_o_by_norm(n: u64) -> Vec<Quat> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for_each_o_up_to(n, |q, nn| {
        if nn == n {
            out.push(*q);
        }
    });
    out.sort();
    out
}

/// The decomposition β = ϖ₂ᵘ·d·β₀ with d ≥ 1 odd and β₀ primitive.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimitiveDecomposition {
    pub u: u32,
    pub d: u64,
    pub beta0: Quat,
}

impl PrimitiveDecomposition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "u": self.u, "d": self.d, "beta0": self.beta0.to_json() })
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// β ∈ S^prim: ϖ₂ | β, ϖ₂² ∤ β, and no odd integer > 1 divides β within S.
pub fn is_primitive(beta: &Quat) -> bool {
    if beta.is_zero() || !in_s(beta) {
        return false;
    }
    match primitive_decompose(beta) {
        Ok(p) => p.u == 0 && p.d == 1,
        Err(_) => false,
    }
}

/// Strip the odd content first, then the surplus ϖ₂-power. The ϖ₂-valuation
/// of γ ∈ O equals v₂(ν(γ)) since ϖ₂ generates the unique two-sided prime
/// above 2.
pub fn primitive_decompose(beta: &Quat) -> Result<PrimitiveDecomposition, QuatError> {
    if beta.is_zero() {
        return Err(QuatError::NotInLattice("0".into()));
    }
    if !in_s(beta) {
        return Err(QuatError::NotInLattice(format!("{beta}")));
    }
    // largest odd d with β/d ∈ S = odd part of the gcd of the coordinates
    let mut g = beta.t.iter().fold(0u64, |g, x| gcd_u(g, x.unsigned_abs() as u64));
    g /= 2; // work with integer coordinates of S
    let mut d = g;
    while d % 2 == 0 {
        d /= 2;
    }
    let stripped = beta.div_exact(d as i128).expect("d divides all coordinates");
    let nu = stripped.norm() as u64;
    let u = nu.trailing_zeros() - 1;
    let mut beta0 = stripped;
    for _ in 0..u {
        beta0 = beta0
            .w2_inv_left()
            .expect("ϖ₂-valuation bounds the strip count");
    }
    debug_assert!(in_s(&beta0));
    debug_assert_eq!(beta0.norm() as u64 % 4, 2, "β₀ must be exactly ϖ₂-divisible");
    // reconstruction ϖ₂ᵘ d β₀ = β, exactly
    debug_assert_eq!(
        {
            let mut r = beta0;
            for _ in 0..u {
                r = Quat::w2() * r;
            }
            r.scale(d as i128)
        },
        *beta
    );
    Ok(PrimitiveDecomposition { u, d, beta0 })
}

/// Re(β·x) without forming the quaternion product (the product of two
/// arbitrary half-integer quaternions can leave half-integer coordinates).
/// Returns 4·Re(βx).
fn re4_of_product(beta: &Quat, x: &Quat) -> i128 {
    beta.t[0] * x.t[0] - beta.t[1] * x.t[1] - beta.t[2] * x.t[2] - beta.t[3] * x.t[3]
}

/// Duality check: Re(β·x) ∈ Z for all S-basis β and O-basis x, and every
/// half-integer point outside S within the sample bound has a witness x ∈ O
/// with Re(βx) ∉ Z.
pub fn dual_pairing_check(sample_bound: i128) -> bool {
    for beta in &S_BASIS {
        for x in &O_BASIS {
            if re4_of_product(beta, x) % 4 != 0 {
                return false;
            }
        }
    }
    // sample of half-integer lattice points outside S
    for t0 in -sample_bound..=sample_bound {
        for t1 in -sample_bound..=sample_bound {
            for t2 in -sample_bound..=sample_bound {
                for t3 in -sample_bound..=sample_bound {
                    let q = Quat::from_doubled([t0, t1, t2, t3]);
                    if in_s(&q) {
                        continue;
                    }
                    let detected = O_BASIS.iter().any(|x| re4_of_product(&q, x) % 4 != 0);
                    if !detected {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert!(s_membership(&Quat::w2()));
        assert!(!s_membership(&Quat::one()));
        assert!(s_membership(&Quat::k().scale(2))); // 2ij
        assert!(!s_membership(&Quat::i()));
        assert!(!s_membership(&Quat::omega()));
    }

    #[test]
    fn fast_membership_agrees_with_solver() {
        for t0 in -4i128..=4 {
            for t1 in -4i128..=4 {
                for t2 in -4i128..=4 {
                    for t3 in -4i128..=4 {
                        let q = Quat::from_doubled([t0, t1, t2, t3]);
                        assert_eq!(in_s(&q), s_membership(&q), "{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn s_equals_w2o() {
        assert!(verify_s_equals_w2o());
        assert!(verify_w2o_two_sided());
        // unscaled O basis spans a different lattice
        let s_rows: Vec<[i128; 4]> = S_BASIS.iter().map(|q| q.t).collect();
        let o_rows: Vec<[i128; 4]> = O_BASIS.iter().map(|q| q.t).collect();
        assert_ne!(hnf(&s_rows), hnf(&o_rows));
    }

    #[test]
    fn norm_spheres() {
        assert_eq!(enumerate_by_norm(2).len(), 24);
        assert_eq!(enumerate_by_norm(1).len(), 0);
        assert_eq!(enumerate_by_norm(4).len(), 24);
        // every norm-2 element is ϖ₂·unit
        let units = crate::quat::units();
        let mut w2u: Vec<Quat> = units.iter().map(|u| Quat::w2() * *u).collect();
        w2u.sort();
        assert_eq!(enumerate_by_norm(2), w2u);
    }

    #[test]
    fn every_s_norm_is_even() {
        for_each_s_up_to(400, |q, n| {
            assert_eq!(n % 2, 0, "{q}");
            assert_eq!(q.norm() as u64, n);
        });
    }

    #[test]
    fn enumeration_matches_w2o_description() {
        // the same spheres, described via ϖ₂·O
        for n in [2u64, 4, 6, 8, 10, 18, 50] {
            let direct = enumerate_by_norm(n);
            let mut via_o: Vec<Quat> = enumerate_o_by_norm(n / 2)
                .iter()
                .map(|g| Quat::w2() * *g)
                .collect();
            via_o.sort();
            assert_eq!(direct, via_o, "norm {n}");
        }
    }

    #[test]
    fn decompose_examples() {
        let w2 = Quat::w2();
        let p = primitive_decompose(&w2).unwrap();
        assert_eq!((p.u, p.d, p.beta0), (0, 1, w2));

        let p = primitive_decompose(&w2.scale(3)).unwrap();
        assert_eq!((p.u, p.d, p.beta0), (0, 3, w2));

        // 2ϖ₂ = ϖ₂³·(-i), so u = 2, d = 1, β₀ = ϖ₂·(-i)·(unit side) = 1-i
        let p = primitive_decompose(&w2.scale(2)).unwrap();
        assert_eq!((p.u, p.d), (2, 1));
        assert_eq!(p.beta0, Quat::from_ints(1, -1, 0, 0));

        assert!(primitive_decompose(&Quat::zero()).is_err());
        assert!(primitive_decompose(&Quat::one()).is_err());
    }

    #[test]
    fn decompose_round_trip_up_to_400() {
        for_each_s_up_to(400, |q, _| {
            let p = primitive_decompose(q).unwrap();
            let mut r = p.beta0;
            for _ in 0..p.u {
                r = Quat::w2() * r;
            }
            assert_eq!(r.scale(p.d as i128), *q);
            // β₀ primitivity per the defining conditions
            assert_eq!(p.beta0.norm() % 4, 2);
            let nu0 = p.beta0.norm() as u64;
            let mut dd = 3u64;
            while dd * dd <= nu0 {
                assert!(
                    p.beta0.div_exact(dd as i128).map(|x| !in_s(&x)).unwrap_or(true),
                    "odd divisor {dd} divides β₀ = {}",
                    p.beta0
                );
                dd += 2;
            }
        });
    }

    #[test]
    fn duality() {
        // Re(2ij · ij) = -2
        let two_ij = Quat::k().scale(2);
        assert_eq!(re4_of_product(&two_ij, &Quat::k()), -8);
        assert!(dual_pairing_check(3));
        // β = i is outside S: Re(i·ω) = -1/2 is not integral
        assert_eq!(re4_of_product(&Quat::i(), &Quat::omega()), -2);
    }

    #[test]
    fn basis_is_full_rank() {
        assert!(LatticeBasis::s_default().is_full_rank());
        assert!(LatticeBasis::o_default().is_full_rank());
    }
}
