//! Resultants of bivariate polynomials with respect to X.
//!
//! Two independent backends cross-check each other:
//!
//! * the default evaluation/interpolation backend specializes Y at
//!   consecutive integer points, computes exact integer resultants, and
//!   interpolates the coefficients of the resultant polynomial in Y;
//! * the oracle backend runs fraction-free (Bareiss) elimination on the
//!   symbolic Sylvester matrix whose entries are polynomials in Y.
//!
//! Sylvester convention: for A, B with X-degrees dA, dB the matrix has size
//! dA + dB; the first dB rows carry A's X-coefficients (highest first), the
//! remaining dA rows carry B's. The resultant is the determinant of that
//! matrix. Degree-0 edge cases follow the same determinant: Res(A, c) = c^dA
//! and Res(c, B) = c^dB.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bigpoly::{BiPolyZ, UniPolyZ, Var};
use crate::ring::{ModP, Ring};

#[derive(Debug, Error)]
pub enum ResultantError {
    #[error("resultant of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("polynomial vanishes identically at Y = {y0}")]
    SpecializationVanished { y0: BigInt },
    #[error("leading X-coefficient vanishes mod {p} at Y = {y0}; exact fallback required")]
    LeadingCoeffVanishesModP { y0: i64, p: u64 },
}

/// Result of specializing a resultant at a Y-point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedResultant {
    pub value: BigInt,
    /// True when a specialized polynomial lost X-degree at this point; the
    /// value is then the resultant of the specializations, which need not
    /// equal the full resultant polynomial evaluated there.
    pub degree_dropped: bool,
}

/// Entry arithmetic required by fraction-free elimination.
pub(crate) trait BareissEntry: Clone {
    fn b_zero() -> Self;
    fn b_one() -> Self;
    fn b_is_zero(&self) -> bool;
    fn b_mul(&self, other: &Self) -> Self;
    fn b_sub(&self, other: &Self) -> Self;
    fn b_div_exact(&self, other: &Self) -> Self;
}

impl BareissEntry for BigInt {
    fn b_zero() -> Self {
        BigInt::zero()
    }
    fn b_one() -> Self {
        BigInt::one()
    }
    fn b_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn b_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn b_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn b_div_exact(&self, other: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, other);
        debug_assert!(r.is_zero(), "inexact Bareiss division");
        q
    }
}

impl BareissEntry for UniPolyZ {
    fn b_zero() -> Self {
        UniPolyZ::zero()
    }
    fn b_one() -> Self {
        UniPolyZ::one()
    }
    fn b_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn b_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn b_sub(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn b_div_exact(&self, other: &Self) -> Self {
        self.div_exact(other)
    }
}

/// Fraction-free determinant with row pivoting. All interior divisions are
/// exact by the Bareiss minor identity, also under row swaps.
fn bareiss_det<E: BareissEntry>(mut m: Vec<Vec<E>>) -> E {
    let n = m.len();
    if n == 0 {
        return E::b_one();
    }
    let mut negate = false;
    let mut prev = E::b_one();
    for k in 0..n - 1 {
        if m[k][k].b_is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].b_is_zero()) else {
                return E::b_zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].b_mul(&m[i][j]).b_sub(&m[i][k].b_mul(&m[k][j]));
                m[i][j] = t.b_div_exact(&prev);
            }
            m[i][k] = E::b_zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        E::b_zero().b_sub(&det)
    } else {
        det
    }
}

/// The Sylvester matrix of two polynomials in X whose coefficients live in
/// an arbitrary entry domain (integers when Y is specialized, polynomials
/// in Y for the symbolic backend).
pub(crate) struct SylvesterMatrix<E> {
    entries: Vec<Vec<E>>,
}

impl<E: BareissEntry> SylvesterMatrix<E> {
    /// `a`, `b` are X-coefficient sequences, lowest degree first, leading
    /// entry nonzero; degrees must both be >= 1.
    fn build(a: &[E], b: &[E]) -> Self {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let n = da + db;
        let mut entries = vec![vec![E::b_zero(); n]; n];
        for r in 0..db {
            for (k, c) in a.iter().rev().enumerate() {
                entries[r][r + k] = c.clone();
            }
        }
        for r in 0..da {
            for (k, c) in b.iter().rev().enumerate() {
                entries[db + r][r + k] = c.clone();
            }
        }
        SylvesterMatrix { entries }
    }

    #[allow(dead_code)]
    pub(crate) fn dim(&self) -> usize {
        self.entries.len()
    }

    fn determinant(self) -> E {
        bareiss_det(self.entries)
    }
}

/// Sylvester dimension deg_X A + deg_X B of a criterion pair.
pub fn sylvester_dim(a: &BiPolyZ, b: &BiPolyZ) -> usize {
    (a.deg_x() + b.deg_x()) as usize
}

/// Exact resultant of two nonzero univariate integer polynomials, as the
/// Bareiss determinant of their Sylvester matrix.
pub fn resultant_uni(a: &UniPolyZ, b: &UniPolyZ) -> BigInt {
    assert!(!a.is_zero() && !b.is_zero());
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if da == 0 && db == 0 {
        return BigInt::one();
    }
    if db == 0 {
        return num_traits::Pow::pow(b.coeff(0), da as u32);
    }
    if da == 0 {
        return num_traits::Pow::pow(a.coeff(0), db as u32);
    }
    SylvesterMatrix::build(a.coeffs(), b.coeffs()).determinant()
}

/// A polynomial with deg_X = 0 viewed as a univariate polynomial in Y.
fn y_only(p: &BiPolyZ) -> UniPolyZ {
    debug_assert_eq!(p.deg_x(), 0);
    let coeffs = (0..=p.deg_y()).map(|j| p.coeff(0, j)).collect();
    UniPolyZ::from_coeffs(coeffs)
}

fn pow_poly(base: &UniPolyZ, e: usize) -> UniPolyZ {
    let mut acc = UniPolyZ::one();
    for _ in 0..e {
        acc = acc.mul(base);
    }
    acc
}

/// Y-coefficient polynomial of each X-power: entry k is the coefficient of
/// X^k as a polynomial in Y.
fn x_coeffs_in_y(p: &BiPolyZ) -> Vec<UniPolyZ> {
    p.as_poly_in(Var::X)
}

/// Resultant with respect to X as an exact polynomial in Y, by the default
/// evaluation/interpolation backend.
///
/// Y is specialized at consecutive integers starting from 0; points where
/// either polynomial drops X-degree are skipped. The integer values are
/// interpolated with exact rational arithmetic and the result is asserted
/// integral.
pub fn resultant_in_x(a: &BiPolyZ, b: &BiPolyZ) -> Result<UniPolyZ, ResultantError> {
    if a.is_zero() || b.is_zero() {
        return Err(ResultantError::ZeroPolynomial);
    }
    let da = a.deg_x() as usize;
    let db = b.deg_x() as usize;
    if da == 0 {
        return Ok(pow_poly(&y_only(a), db));
    }
    if db == 0 {
        return Ok(pow_poly(&y_only(b), da));
    }

    // deg_Y Res <= dA * degY(B) + dB * degY(A)
    let bound = da * b.deg_y() as usize + db * a.deg_y() as usize;
    let need = bound + 1;

    let lead_a = x_coeffs_in_y(a).pop().expect("nonzero");
    let lead_b = x_coeffs_in_y(b).pop().expect("nonzero");

    let mut points: Vec<BigInt> = Vec::with_capacity(need);
    let mut values: Vec<BigInt> = Vec::with_capacity(need);
    let mut y = BigInt::zero();
    let int = crate::ring::IntegerRing;
    while points.len() < need {
        let drop = lead_a.eval(&int, &y).is_zero() || lead_b.eval(&int, &y).is_zero();
        if !drop {
            let av = a.specialize_y(&y);
            let bv = b.specialize_y(&y);
            values.push(resultant_uni(&av, &bv));
            points.push(y.clone());
        }
        y += 1;
    }
    Ok(interpolate_integer(&points, &values))
}

/// Newton interpolation through exact rational arithmetic, with a final
/// integrality assertion: the true resultant lies in Z[Y], so a non-integer
/// coefficient is a hard bug.
fn interpolate_integer(points: &[BigInt], values: &[BigInt]) -> UniPolyZ {
    let n = points.len();
    let xs: Vec<BigRational> = points
        .iter()
        .map(|p| BigRational::from_integer(p.clone()))
        .collect();
    // Divided differences.
    let mut dd: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    // Expand the Newton form c0 + (Y - x0)(c1 + (Y - x1)(c2 + ...)).
    let mut coeffs: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            let shifted = c * &xs[i];
            next[k] -= shifted;
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    let coeffs: Vec<BigInt> = coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated resultant not integral");
            c.to_integer()
        })
        .collect();
    UniPolyZ::from_coeffs(coeffs)
}

/// Cross-check backend: fraction-free elimination on the symbolic Sylvester
/// matrix with entries in Z[Y].
pub fn resultant_in_x_bareiss(a: &BiPolyZ, b: &BiPolyZ) -> Result<UniPolyZ, ResultantError> {
    if a.is_zero() || b.is_zero() {
        return Err(ResultantError::ZeroPolynomial);
    }
    let da = a.deg_x() as usize;
    let db = b.deg_x() as usize;
    if da == 0 || db == 0 {
        // Same power rule either way; reuse the interpolation path which
        // handles it in closed form.
        return resultant_in_x(a, b);
    }
    let ac = x_coeffs_in_y(a);
    let bc = x_coeffs_in_y(b);
    Ok(SylvesterMatrix::build(&ac, &bc).determinant())
}

/// Exact integer resultant of the specializations at Y = y0.
///
/// Equals `resultant_in_x(a, b)` evaluated at y0 whenever neither
/// polynomial drops X-degree at y0; on degree drop the specialized
/// resultant is computed directly and flagged.
pub fn resultant_at(
    a: &BiPolyZ,
    b: &BiPolyZ,
    y0: &BigInt,
) -> Result<SpecializedResultant, ResultantError> {
    if a.is_zero() || b.is_zero() {
        return Err(ResultantError::ZeroPolynomial);
    }
    let av = a.specialize_y(y0);
    let bv = b.specialize_y(y0);
    if av.is_zero() || bv.is_zero() {
        return Err(ResultantError::SpecializationVanished { y0: y0.clone() });
    }
    let degree_dropped = av.degree().unwrap() < a.deg_x() as usize
        || bv.degree().unwrap() < b.deg_x() as usize;
    Ok(SpecializedResultant {
        value: resultant_uni(&av, &bv),
        degree_dropped,
    })
}

/// Resultant of the specializations over the field of p elements, via the
/// Euclidean polynomial remainder sequence. Fast pre-filter only; exact
/// certificates go through [`resultant_at`].
pub fn resultant_mod_p(
    a: &BiPolyZ,
    b: &BiPolyZ,
    y0: i64,
    p: u64,
) -> Result<u64, ResultantError> {
    if a.is_zero() || b.is_zero() {
        return Err(ResultantError::ZeroPolynomial);
    }
    let f = ModP::new(p);
    let y = f.reduce_i64(y0);
    let reduce = |poly: &BiPolyZ| -> Vec<u64> {
        let mut coeffs: Vec<u64> = poly
            .as_poly_in(Var::X)
            .iter()
            .map(|q| q.eval(&f, &y))
            .collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        coeffs
    };
    let av = reduce(a);
    let bv = reduce(b);
    // Leading X-coefficients must survive the reduction, otherwise the PRS
    // computes the resultant of the wrong (lower-degree) pair.
    if av.len() != a.deg_x() as usize + 1 || bv.len() != b.deg_x() as usize + 1 {
        return Err(ResultantError::LeadingCoeffVanishesModP { y0, p });
    }
    Ok(resultant_prs_mod_p(av, bv, &f))
}

fn resultant_prs_mod_p(mut a: Vec<u64>, mut b: Vec<u64>, f: &ModP) -> u64 {
    let mut acc = 1u64;
    loop {
        if b.is_empty() {
            return 0;
        }
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return f.mul(&acc, &f.pow(b[0], da as u64));
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = f.neg(&acc);
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // r = a mod b over F_p
        let lead_inv = f.inv(*b.last().unwrap());
        let mut r = a.clone();
        for k in (db..=da).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            let q = f.mul(&c, &lead_inv);
            for (i, bc) in b.iter().enumerate() {
                let t = f.mul(&q, bc);
                r[k - db + i] = f.sub(&r[k - db + i], &t);
            }
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        let dr = r.len().saturating_sub(1);
        // Res(A, B) = (-1)^{dA dB} lc(B)^{dA - dR} Res(B, R)
        if (da * db) % 2 == 1 {
            acc = f.neg(&acc);
        }
        let lc_pow = f.pow(*b.last().unwrap(), (da - if r.is_empty() { 0 } else { dr }) as u64);
        acc = f.mul(&acc, &lc_pow);
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::BiPolyZ;

    fn bi(terms: &[(u32, u32, i64)]) -> BiPolyZ {
        BiPolyZ::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))))
    }

    fn x_minus_1() -> BiPolyZ {
        bi(&[(1, 0, 1), (0, 0, -1)])
    }

    fn x2_minus_y() -> BiPolyZ {
        bi(&[(2, 0, 1), (0, 1, -1)])
    }

    #[test]
    fn res_linear_quadratic() {
        // Res_X(X - 1, X^2 - Y) = 1 - Y
        let expect = UniPolyZ::from_coeffs(vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(resultant_in_x(&x_minus_1(), &x2_minus_y()).unwrap(), expect);
        assert_eq!(
            resultant_in_x_bareiss(&x_minus_1(), &x2_minus_y()).unwrap(),
            expect
        );
    }

    #[test]
    fn res_common_factor_is_zero() {
        let r = resultant_in_x(&x2_minus_y(), &x2_minus_y()).unwrap();
        assert!(r.is_zero());
        let r = resultant_in_x_bareiss(&x2_minus_y(), &x2_minus_y()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn res_zero_polynomial_error() {
        assert!(matches!(
            resultant_in_x(&BiPolyZ::zero(), &x_minus_1()),
            Err(ResultantError::ZeroPolynomial)
        ));
    }

    #[test]
    fn resultant_at_examples() {
        let r = resultant_at(&x_minus_1(), &x2_minus_y(), &BigInt::from(5)).unwrap();
        assert_eq!(r.value, BigInt::from(-4)); // 1 - Y at Y = 5
        assert!(!r.degree_dropped);
    }

    #[test]
    fn resultant_at_specialization_vanished() {
        // Y * X vanishes identically in X at Y = 0.
        let a = bi(&[(1, 1, 1)]);
        assert!(matches!(
            resultant_at(&a, &x_minus_1(), &BigInt::zero()),
            Err(ResultantError::SpecializationVanished { .. })
        ));
    }

    #[test]
    fn resultant_at_degree_drop_flag() {
        // A = Y*X^2 + X - 1 drops X-degree at Y = 0.
        let a = bi(&[(2, 1, 1), (1, 0, 1), (0, 0, -1)]);
        let r = resultant_at(&a, &x2_minus_y(), &BigInt::zero()).unwrap();
        assert!(r.degree_dropped);
        // Res(X - 1, X^2) = 1
        assert_eq!(r.value, BigInt::one());
    }

    #[test]
    fn resultant_mod_p_examples() {
        assert_eq!(resultant_mod_p(&x_minus_1(), &x2_minus_y(), 1, 7).unwrap(), 0);
        assert_eq!(resultant_mod_p(&x_minus_1(), &x2_minus_y(), 5, 3).unwrap(), 2);
    }

    #[test]
    fn resultant_mod_p_leading_drop() {
        let a = bi(&[(2, 1, 7), (1, 0, 1), (0, 0, -1)]); // lc 7Y vanishes mod 7
        assert!(matches!(
            resultant_mod_p(&a, &x2_minus_y(), 1, 7),
            Err(ResultantError::LeadingCoeffVanishesModP { .. })
        ));
    }

    #[test]
    fn mod_p_agrees_with_exact() {
        let a = bi(&[(3, 1, 2), (2, 0, -1), (1, 2, 1), (0, 0, 5)]);
        let b = bi(&[(2, 1, 1), (1, 1, 3), (0, 2, -2), (0, 0, 1)]);
        for y0 in [1i64, 2, 3, -1] {
            let exact = resultant_at(&a, &b, &BigInt::from(y0)).unwrap().value;
            for p in [3u64, 5, 7, 11, 13] {
                match resultant_mod_p(&a, &b, y0, p) {
                    Ok(r) => {
                        let m = num_integer::Integer::mod_floor(&exact, &BigInt::from(p));
                        assert_eq!(BigInt::from(r), m, "y0={y0} p={p}");
                    }
                    Err(ResultantError::LeadingCoeffVanishesModP { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn power_rule_degree_zero() {
        // Res(c(Y), B) = c^degX B under the convention.
        let c = bi(&[(0, 1, 1), (0, 0, -3)]); // Y - 3
        let r = resultant_in_x(&c, &x2_minus_y()).unwrap();
        let y_minus_3 = UniPolyZ::from_coeffs(vec![BigInt::from(-3), BigInt::from(1)]);
        assert_eq!(r, y_minus_3.mul(&y_minus_3));
    }

    #[test]
    fn swap_rule_and_multiplicativity() {
        let a = bi(&[(2, 0, 1), (1, 1, 2), (0, 0, -1)]);
        let b = bi(&[(3, 0, 1), (0, 1, -1), (0, 0, 2)]);
        let c = bi(&[(1, 1, 1), (0, 0, 3)]);
        let rab = resultant_in_x(&a, &b).unwrap();
        let rba = resultant_in_x(&b, &a).unwrap();
        // (-1)^(2*3) = +1
        assert_eq!(rab, rba);
        let rac = resultant_in_x(&a, &c).unwrap();
        let rbc = resultant_in_x(&b, &c).unwrap();
        let rabc = resultant_in_x(&a.mul(&b), &c).unwrap();
        assert_eq!(rabc, rac.mul(&rbc));
    }
}
