//! Criterion polynomial pairs and residue certificates of non-vanishing.
//!
//! For each supported (target, n) a pair (A, B) of integer bivariate
//! polynomials is built whose resultant in X must not vanish identically.
//! Small pairs get the full resultant polynomial; large ones get a residue
//! certificate: a point y0 and prime p with Res_X(A, B)|_{Y=y0} != 0 mod p.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bigpoly::{BiPolyZ, UniPolyZ, Var};
use crate::resultant::{self, ResultantError};
use crate::tables::{self, Family, TableError};

/// Which theta-constant family the independence statement targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    #[serde(rename = "theta2")]
    Theta2,
    #[serde(rename = "theta3")]
    Theta3,
    #[serde(rename = "theta4")]
    Theta4,
}

impl Target {
    pub fn as_str(&self) -> &'static str {
        match self {
            Target::Theta2 => "theta2",
            Target::Theta3 => "theta3",
            Target::Theta4 => "theta4",
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Target {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "theta2" | "t2" | "2" => Ok(Target::Theta2),
            "theta3" | "t3" | "3" => Ok(Target::Theta3),
            "theta4" | "t4" | "4" => Ok(Target::Theta4),
            _ => Err(()),
        }
    }
}

/// Which criterion shape a pair was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lemma {
    /// theta3, n = 2^m: (P_n, dP_n/dY).
    Pow2,
    /// theta2, n = 2m: B = X*P_X + 2(Y-16)*P_Y.
    L31,
    /// theta3, n = 2m: substituted pair at (X^2, Y^2).
    L4,
    /// theta4, n = 2m: B = X^2*P_X^2 - Y(Y-16)*P_Y^2.
    L32,
    /// theta3, n = 4m: substituted pair at (X^4, Y^4).
    L5,
}

/// A criterion pair (A, B) with its provenance.
#[derive(Clone, Debug)]
pub struct CriterionSpec {
    pub target: Target,
    pub n: u32,
    /// Odd base m with n = 2m or n = 4m; equals n for the pow2 family.
    pub base_m: u32,
    pub lemma: Lemma,
    pub a: BiPolyZ,
    pub b: BiPolyZ,
}

impl CriterionSpec {
    pub fn sylvester_dim(&self) -> usize {
        resultant::sylvester_dim(&self.a, &self.b)
    }
}

/// A verified witness that the criterion resultant is not identically zero.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueCertificate {
    pub target: Target,
    pub n: u32,
    pub lemma: Lemma,
    pub y0: i64,
    pub p: u64,
    /// Residue of the exact resultant at y0, reduced mod p; in [1, p-1].
    pub residue: u64,
    pub degree_dropped: bool,
    pub backend: &'static str,
}

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("no criterion maps target {target} to n = {n}", target = .target.as_str())]
    UnsupportedPair { target: Target, n: u32 },
    #[error(transparent)]
    MissingTable(#[from] TableError),
    #[error("Sylvester dimension {dim} exceeds the configured limit {limit}")]
    SizeLimitExceeded { dim: usize, limit: usize },
    #[error("no certificate found; y-candidates with exactly zero resultant: {zero_ys:?}")]
    NoCertificateFound { zero_ys: Vec<i64> },
    #[error(transparent)]
    Resultant(#[from] ResultantError),
}

/// Default Sylvester dimension limit for full resultant computation.
pub const DEFAULT_SIZE_LIMIT: usize = 40;

/// Default certificate scan candidates.
pub const DEFAULT_Y_CANDIDATES: [i64; 4] = [1, 2, 3, 5];
pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn mul_xpow(p: &BiPolyZ, k: u32) -> BiPolyZ {
    p.mul(&BiPolyZ::monomial(k, 0, BigInt::from(1)))
}

/// Builds the criterion pair for (target, n).
///
/// The partials in the substituted shapes are the partial derivatives of
/// P_m evaluated at the substituted point, not derivatives of the composed
/// polynomial.
pub fn build_criterion(target: Target, n: u32) -> Result<CriterionSpec, CriteriaError> {
    let unsupported = CriteriaError::UnsupportedPair { target, n };
    if n.is_power_of_two() {
        // theta3 pow2 family, m = 3, 4.
        if target != Target::Theta3 || !(n == 8 || n == 16) {
            return Err(unsupported);
        }
        let p = &tables::get_poly(Family::Pow2, n)?.poly;
        return Ok(CriterionSpec {
            target,
            n,
            base_m: n,
            lemma: Lemma::Pow2,
            a: p.clone(),
            b: p.partial_derivative(Var::Y),
        });
    }
    let (lemma, m) = if n % 2 == 0 && (n / 2) % 2 == 1 && n / 2 > 1 {
        let m = n / 2;
        match target {
            Target::Theta2 => (Lemma::L31, m),
            Target::Theta3 => (Lemma::L4, m),
            Target::Theta4 => (Lemma::L32, m),
        }
    } else if n % 4 == 0 && (n / 4) % 2 == 1 && n / 4 > 1 {
        if target != Target::Theta3 {
            return Err(unsupported);
        }
        (Lemma::L5, n / 4)
    } else {
        return Err(unsupported);
    };
    let p = &tables::get_poly(Family::Odd, m)?.poly;
    let px = p.partial_derivative(Var::X);
    let py = p.partial_derivative(Var::Y);
    let bi = |c: i64| BiPolyZ::constant(BigInt::from(c));
    let y = BiPolyZ::monomial(0, 1, BigInt::from(1));
    let (a, b) = match lemma {
        Lemma::L31 => {
            // B = X*P_X + 2(Y - 16)*P_Y
            let b = mul_xpow(&px, 1).add(&bi(2).mul(&y.sub(&bi(16))).mul(&py));
            (p.clone(), b)
        }
        Lemma::L4 => {
            // A = P(X^2, Y^2), B = X^2*P_X(X^2,Y^2) + (Y^2 + 4Y)*P_Y(X^2,Y^2)
            let sub = |q: &BiPolyZ| q.substitute_power(2, 2);
            let yfac = y.mul(&y).add(&bi(4).mul(&y));
            let b = mul_xpow(&sub(&px), 2).add(&yfac.mul(&sub(&py)));
            (sub(p), b)
        }
        Lemma::L32 => {
            // B = X^2*P_X^2 - Y(Y - 16)*P_Y^2
            let b = mul_xpow(&px.mul(&px), 2).sub(&y.mul(&y.sub(&bi(16))).mul(&py.mul(&py)));
            (p.clone(), b)
        }
        Lemma::L5 => {
            // A = P(X^4, Y^4), B = X^4*P_X(X^4,Y^4) + (Y^4 + 2Y^3)*P_Y(X^4,Y^4)
            let sub = |q: &BiPolyZ| q.substitute_power(4, 4);
            let y3 = BiPolyZ::monomial(0, 3, BigInt::from(2));
            let yfac = y.mul(&y).mul(&y).mul(&y).add(&y3);
            let b = mul_xpow(&sub(&px), 4).add(&yfac.mul(&sub(&py)));
            (sub(p), b)
        }
        Lemma::Pow2 => unreachable!(),
    };
    Ok(CriterionSpec {
        target,
        n,
        base_m: m,
        lemma,
        a,
        b,
    })
}

/// Full criterion resultant R(Y) = Res_X(A, B), interpolation backend.
pub fn criterion_resultant(spec: &CriterionSpec) -> Result<UniPolyZ, CriteriaError> {
    criterion_resultant_with_limit(spec, DEFAULT_SIZE_LIMIT)
}

pub fn criterion_resultant_with_limit(
    spec: &CriterionSpec,
    limit: usize,
) -> Result<UniPolyZ, CriteriaError> {
    let dim = spec.sylvester_dim();
    if dim > limit {
        return Err(CriteriaError::SizeLimitExceeded { dim, limit });
    }
    Ok(resultant::resultant_in_x(&spec.a, &spec.b)?)
}

/// Scans (y0, p) candidates in lexicographic order (y outer, primes inner)
/// and returns the first residue certificate. The exact integer resultant
/// at y0 is computed first and then reduced; the mod-p path is never
/// trusted on its own.
pub fn certify_nonvanishing(
    spec: &CriterionSpec,
    y_candidates: &[i64],
    primes: &[u64],
) -> Result<ResidueCertificate, CriteriaError> {
    if y_candidates.is_empty() || primes.is_empty() {
        return Err(CriteriaError::NoCertificateFound { zero_ys: vec![] });
    }
    let mut zero_ys = Vec::new();
    for &y0 in y_candidates {
        // Pre-filter: if every candidate prime gives 0 mod p via the fast
        // path, the exact computation cannot produce a certificate at y0
        // unless some mod-p run was inconclusive.
        let prefilter_all_zero = primes.iter().all(|&p| {
            matches!(resultant::resultant_mod_p(&spec.a, &spec.b, y0, p), Ok(0))
        });
        if prefilter_all_zero {
            continue;
        }
        let exact = match resultant::resultant_at(&spec.a, &spec.b, &BigInt::from(y0)) {
            Ok(r) => r,
            Err(ResultantError::SpecializationVanished { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        if exact.value.is_zero() {
            zero_ys.push(y0);
            continue;
        }
        for &p in primes {
            let residue = num_integer::Integer::mod_floor(&exact.value, &BigInt::from(p));
            if !residue.is_zero() {
                let (_, digits) = residue.to_u64_digits();
                return Ok(ResidueCertificate {
                    target: spec.target,
                    n: spec.n,
                    lemma: spec.lemma,
                    y0,
                    p,
                    residue: digits[0],
                    degree_dropped: exact.degree_dropped,
                    backend: "bareiss-int",
                });
            }
        }
    }
    Err(CriteriaError::NoCertificateFound { zero_ys })
}

/// Re-verifies a certificate from scratch: recomputes the exact resultant
/// at y0 and checks the stored residue.
pub fn verify_certificate(cert: &ResidueCertificate) -> Result<bool, CriteriaError> {
    let spec = build_criterion(cert.target, cert.n)?;
    let exact = resultant::resultant_at(&spec.a, &spec.b, &BigInt::from(cert.y0))?;
    let residue = num_integer::Integer::mod_floor(&exact.value, &BigInt::from(cert.p));
    Ok(residue == BigInt::from(cert.residue) && cert.residue != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping_table() {
        assert_eq!(build_criterion(Target::Theta2, 6).unwrap().lemma, Lemma::L31);
        assert_eq!(build_criterion(Target::Theta3, 14).unwrap().lemma, Lemma::L4);
        assert_eq!(build_criterion(Target::Theta4, 10).unwrap().lemma, Lemma::L32);
        assert_eq!(build_criterion(Target::Theta3, 20).unwrap().lemma, Lemma::L5);
        assert_eq!(build_criterion(Target::Theta3, 12).unwrap().lemma, Lemma::L5);
        assert_eq!(build_criterion(Target::Theta3, 8).unwrap().lemma, Lemma::Pow2);
        assert_eq!(build_criterion(Target::Theta3, 16).unwrap().lemma, Lemma::Pow2);
        assert!(matches!(
            build_criterion(Target::Theta2, 20),
            Err(CriteriaError::UnsupportedPair { .. })
        ));
        assert!(matches!(
            build_criterion(Target::Theta4, 8),
            Err(CriteriaError::UnsupportedPair { .. })
        ));
        assert!(matches!(
            build_criterion(Target::Theta3, 7),
            Err(CriteriaError::UnsupportedPair { .. })
        ));
        // n = 26 = 2*13: the mapping applies but P_13 is not embedded.
        assert!(matches!(
            build_criterion(Target::Theta3, 26),
            Err(CriteriaError::MissingTable(_))
        ));
    }

    #[test]
    fn theta2_6_pair_shape() {
        // A = P_3, B = X*dX P_3 + 2(Y-16)*dY P_3
        let spec = build_criterion(Target::Theta2, 6).unwrap();
        let p3 = &tables::get_poly(Family::Odd, 3).unwrap().poly;
        assert_eq!(&spec.a, p3);
        let expect = {
            let px = p3.partial_derivative(Var::X);
            let py = p3.partial_derivative(Var::Y);
            let y = BiPolyZ::monomial(0, 1, BigInt::from(1));
            mul_xpow(&px, 1).add(
                &BiPolyZ::constant(BigInt::from(2))
                    .mul(&y.sub(&BiPolyZ::constant(BigInt::from(16))))
                    .mul(&py),
            )
        };
        assert_eq!(spec.b, expect);
    }

    #[test]
    fn l4_substituted_degrees() {
        let spec = build_criterion(Target::Theta3, 14).unwrap();
        // deg_X P_7(X^2, Y^2) = 16
        assert_eq!(spec.a.deg_x(), 16);
        assert_eq!(spec.b.deg_x(), 16);
        assert_eq!(spec.sylvester_dim(), 32);
    }

    #[test]
    fn l4_noncomposed_derivative_convention() {
        // B(x, y) = x^2*P_X(x^2, y^2) + (y^2 + 4y)*P_Y(x^2, y^2) at numeric
        // points, with the partials evaluated independently.
        let spec = build_criterion(Target::Theta3, 6).unwrap();
        let p3 = &tables::get_poly(Family::Odd, 3).unwrap().poly;
        let px = p3.partial_derivative(Var::X);
        let py = p3.partial_derivative(Var::Y);
        let z = crate::ring::IntegerRing;
        for (x, y) in [(2i64, 3i64), (-1, 4), (5, -2)] {
            let (xb, yb) = (BigInt::from(x), BigInt::from(y));
            let x2 = &xb * &xb;
            let y2 = &yb * &yb;
            let lhs = spec.b.eval(&z, &xb, &yb);
            let rhs = &x2 * px.eval(&z, &x2, &y2)
                + (&y2 + BigInt::from(4) * &yb) * py.eval(&z, &x2, &y2);
            assert_eq!(lhs, rhs, "x={x} y={y}");
        }
    }

    #[test]
    fn pow2_structural_check() {
        // A(X, 0) has the 2^{m-2}-fold root X1 = 1/2^m while B(X1, 0) =
        // -2^{2^{m-1}-1} != 0.
        use num_rational::BigRational;
        use num_traits::{One, Pow};
        let q = crate::ring::RationalRing;
        for (n, m) in [(8u32, 3u32), (16, 4)] {
            let spec = build_criterion(Target::Theta3, n).unwrap();
            let x1 = BigRational::new(BigInt::one(), BigInt::from(n));
            let zero = BigRational::zero();
            let a_val = spec.a.eval(&q, &x1, &zero);
            assert!(a_val.is_zero(), "n={n}");
            let b_val = spec.b.eval(&q, &x1, &zero);
            let expect =
                BigRational::from_integer(-BigInt::from(2).pow((1u32 << (m - 1)) - 1));
            assert_eq!(b_val, expect, "n={n}");
        }
    }

    #[test]
    fn certify_small_cases() {
        // (theta2, 6): resultant at Y=1 is -2465046675, divisible by 5 but
        // odd, so p=5 is passed over and p=2 certifies.
        let spec = build_criterion(Target::Theta2, 6).unwrap();
        let cert = certify_nonvanishing(&spec, &[1], &[5, 2]).unwrap();
        assert_eq!((cert.y0, cert.p, cert.residue), (1, 2, 1));
        assert!(verify_certificate(&cert).unwrap());
    }

    #[test]
    fn certificate_scan_order_is_lexicographic() {
        let spec = build_criterion(Target::Theta2, 6).unwrap();
        // R(1) = -2465046675 = -(3^5)(5^2)(7^4)(13^2): divisible by 7 but
        // not by 11, so (y0=1, p=11) wins before any y0=2 candidate.
        let cert = certify_nonvanishing(&spec, &[1, 2], &[7, 11]).unwrap();
        assert_eq!((cert.y0, cert.p), (1, 11));
        assert_eq!(
            BigInt::from(cert.residue),
            num_integer::Integer::mod_floor(&BigInt::from(-2465046675i64), &BigInt::from(11))
        );
    }

    #[test]
    fn no_certificate_when_lists_exhausted() {
        let spec = build_criterion(Target::Theta2, 6).unwrap();
        // -2465046675 is divisible by 3 and 5.
        let err = certify_nonvanishing(&spec, &[1], &[3, 5]).unwrap_err();
        assert!(matches!(err, CriteriaError::NoCertificateFound { .. }));
    }

    #[test]
    fn size_limit() {
        let spec = build_criterion(Target::Theta3, 18).unwrap();
        assert_eq!(spec.sylvester_dim(), 48);
        assert!(matches!(
            criterion_resultant(&spec),
            Err(CriteriaError::SizeLimitExceeded { dim: 48, limit: 40 })
        ));
    }
}
