//! High-precision evaluation of the theta-constants and numeric
//! verification of the identities behind the criteria: Jacobi's identity,
//! the duplication formulas, modular-polynomial vanishing, and the product
//! form over (u,v,w) triples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::ball::{
    exp_ball, exp_i_ball, pi_ball, BallComplex, BallError, BallReal, ComplexBallRing, Float,
};
use crate::bigpoly::BiPolyZ;
use crate::criteria::Target;
use crate::tables::{get_poly, psi, Family, TableError};

/// Extra working bits on top of the requested precision.
pub const GUARD_BITS: u64 = 32;
/// Hard cap on series terms before giving up.
pub const TERM_CAP: usize = 1_000_000;
/// Retries (with doubled precision) when a denominator ball straddles zero.
const DIV_RETRY_CAP: u32 = 3;

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error(transparent)]
    Ball(#[from] BallError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("no vanishing relation for target {target} with n = {n}")]
    UnsupportedPoint { target: Target, n: u64 },
}

/// A point in the upper half-plane.
#[derive(Clone, Debug)]
pub struct TauPoint {
    pub re: BallReal,
    pub im: BallReal,
}

impl TauPoint {
    /// Builds a tau point, rejecting anything whose imaginary part is not
    /// provably positive.
    pub fn new(re: BallReal, im: BallReal) -> Result<Self, ThetaError> {
        if !im.is_strictly_positive() {
            return Err(BallError::DomainError.into());
        }
        Ok(TauPoint { re, im })
    }

    pub fn from_decimal(re: &str, im: &str, prec: u64) -> Result<Self, String> {
        let re = BallReal::from_decimal_str(re, prec + GUARD_BITS)?;
        let im = BallReal::from_decimal_str(im, prec + GUARD_BITS)?;
        TauPoint::new(re, im).map_err(|e| e.to_string())
    }

    /// k*tau for a positive integer k.
    pub fn scale(&self, k: u64) -> TauPoint {
        TauPoint {
            re: self.re.mul_i64(k as i64),
            im: self.im.mul_i64(k as i64),
        }
    }

    /// (u*tau + 2v) / w for positive u, w.
    pub fn moebius_uvw(&self, u: u64, v: u64, w: u64, prec: u64) -> TauPoint {
        let re = self
            .re
            .mul_i64(u as i64)
            .add(&BallReal::from_i64(2 * v as i64), prec)
            .div_u64(w, prec);
        let im = self.im.mul_i64(u as i64).div_u64(w, prec);
        TauPoint { re, im }
    }
}

/// The three theta-constants at one tau point.
#[derive(Clone, Debug)]
pub struct ThetaTriple {
    pub theta2: BallComplex,
    pub theta3: BallComplex,
    pub theta4: BallComplex,
}

/// Evaluates theta2, theta3, theta4 at tau with rigorously bounded tails.
///
/// All series are summed in powers of w = exp(i*pi*tau/4), so the exponents
/// are the integers (2v+1)^2 (theta2) and 4v^2 (theta3, theta4) and no
/// fractional power of q is ever taken. Truncation at N uses the geometric
/// tail bound |q|^{(N+1)^2}/(1-|q|) < 2^{-(prec+8)}.
pub fn theta_constants(tau: &TauPoint, prec: u64) -> Result<ThetaTriple, ThetaError> {
    if !tau.im.is_strictly_positive() {
        return Err(BallError::DomainError.into());
    }
    let wp = prec + GUARD_BITS;
    let pi = pi_ball(wp);
    // w = exp(i pi tau / 4) = exp(-pi Im/4) * exp(i pi Re / 4)
    let mag = exp_ball(&pi.mul(&tau.im, wp).neg().div_u64(4, wp), wp);
    let phase = exp_i_ball(&pi.mul(&tau.re, wp).div_u64(4, wp), wp);
    let w = phase.mul_real(&mag, wp);

    // rho = upper bound of |w|; rho4 bounds |q| = |w|^4
    let rho = w.abs_upper();
    let one = Float::from_i64(1);
    let rho4 = pow_up(&rho, 4);
    let one_minus_q = one.sub(&rho4);
    if !one_minus_q.is_zero() && one_minus_q.is_negative() || one_minus_q.is_zero() {
        return Err(BallError::PrecisionError { cap: TERM_CAP }.into());
    }
    // smallest N with |q|^{(N+1)^2} / (1-|q|) < 2^{-(prec+8)}
    let threshold = Float::pow2(-(prec as i64 + 8));
    let mut n_terms = 0u64;
    loop {
        let k = (n_terms + 1) * (n_terms + 1);
        let bound = div_up(&pow_up(&rho4, k), &one_minus_q);
        if bound.cmp_val(&threshold) == std::cmp::Ordering::Less {
            break;
        }
        n_terms += 1;
        if n_terms as usize > TERM_CAP {
            return Err(BallError::PrecisionError { cap: TERM_CAP }.into());
        }
    }
    let tail = div_up(&pow_up(&rho4, (n_terms + 1) * (n_terms + 1)), &one_minus_q).scale2(1);

    // theta3 = 1 + 2 sum w^{4 v^2};  theta4 same with alternating signs;
    // theta2 = 2 sum w^{(2v+1)^2}.  Powers are built incrementally.
    let w4 = w.pow_u64(4, wp);
    let w8 = w4.mul(&w4, wp);
    let mut t3 = BallComplex::one();
    let mut t4 = BallComplex::one();
    let mut t2 = BallComplex::zero();
    let mut p34 = BallComplex::one(); // w^{4 v^2}
    let mut r34 = w4.clone(); // ratio w^{8v+4}
    let mut p2 = w.clone(); // w^{(2v+1)^2}
    let mut r2 = w8.clone(); // ratio w^{8v+8}
    for v in 0..=n_terms {
        if v > 0 {
            p34 = p34.mul(&r34, wp);
            r34 = r34.mul(&w8, wp);
            let term = p34.mul_i64(2);
            t3 = t3.add(&term, wp);
            if v % 2 == 0 {
                t4 = t4.add(&term, wp);
            } else {
                t4 = t4.sub(&term, wp);
            }
        }
        t2 = t2.add(&p2.mul_i64(2), wp);
        p2 = p2.mul(&r2, wp);
        r2 = r2.mul(&w8, wp);
    }
    Ok(ThetaTriple {
        theta2: t2.widen(&tail),
        theta3: t3.widen(&tail),
        theta4: t4.widen(&tail),
    })
}

/// rho^k rounded up (rho nonnegative).
fn pow_up(rho: &Float, mut k: u64) -> Float {
    let mut acc = Float::from_i64(1);
    let mut base = rho.round_up(48);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&base).round_up(48);
        }
        k >>= 1;
        if k > 0 {
            base = base.mul(&base).round_up(48);
        }
    }
    acc
}

/// Upper bound of a/b for nonnegative a, positive b.
fn div_up(a: &Float, b: &Float) -> Float {
    if a.is_zero() {
        return Float::zero();
    }
    let q = a.div_trunc(b, 48);
    // truncation undershoots; one ulp restores the upper bound
    q.add(&Float::pow2(q.mag().unwrap_or(0) - 48)).round_up(48)
}

/// Outcome of one residual check: an enclosure that should contain zero
/// with radius below the tolerance.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: BallComplex,
    pub tolerance: Float,
    pub contains_zero: bool,
    pub radius_ok: bool,
}

impl IdentityCheck {
    fn from_residual(name: impl Into<String>, residual: BallComplex, tol_exp: i64) -> Self {
        let tolerance = Float::pow2(tol_exp);
        let contains_zero = residual.contains_zero();
        let radius_ok =
            residual.radius_upper().cmp_val(&tolerance) == std::cmp::Ordering::Less;
        IdentityCheck {
            name: name.into(),
            residual,
            tolerance,
            contains_zero,
            radius_ok,
        }
    }

    pub fn pass(&self) -> bool {
        self.contains_zero && self.radius_ok
    }
}

fn single_tol(prec: u64) -> i64 {
    -((prec / 2) as i64)
}

fn product_tol(prec: u64) -> i64 {
    -((prec / 4) as i64)
}

/// theta3^4 - theta2^4 - theta4^4 encloses zero.
pub fn verify_jacobi(tau: &TauPoint, prec: u64) -> Result<IdentityCheck, ThetaError> {
    let wp = prec + GUARD_BITS;
    let t = theta_constants(tau, prec)?;
    let residual = t
        .theta3
        .pow_u64(4, wp)
        .sub(&t.theta2.pow_u64(4, wp), wp)
        .sub(&t.theta4.pow_u64(4, wp), wp);
    Ok(IdentityCheck::from_residual(
        "jacobi",
        residual,
        single_tol(prec),
    ))
}

/// The seven duplication identities relating theta values at tau, 2tau,
/// 4tau, and 8tau.
pub fn verify_duplication(tau: &TauPoint, prec: u64) -> Result<Vec<IdentityCheck>, ThetaError> {
    let wp = prec + GUARD_BITS;
    let t1 = theta_constants(tau, prec)?;
    let t2 = theta_constants(&tau.scale(2), prec)?;
    let t4 = theta_constants(&tau.scale(4), prec)?;
    let t8 = theta_constants(&tau.scale(8), prec)?;
    let tol = single_tol(prec);

    let th3 = &t1.theta3;
    let th4 = &t1.theta4;
    let th3_sq = th3.pow_u64(2, wp);
    let th4_sq = th4.pow_u64(2, wp);
    let th34 = th3.mul(th4, wp);
    let sum_sq = th3_sq.add(&th4_sq, wp);

    let mut checks = Vec::with_capacity(7);
    checks.push(IdentityCheck::from_residual(
        "dup_2tau_theta2_sq",
        t2.theta2
            .pow_u64(2, wp)
            .mul_i64(2)
            .sub(&th3_sq.sub(&th4_sq, wp), wp),
        tol,
    ));
    checks.push(IdentityCheck::from_residual(
        "dup_2tau_theta3_sq",
        t2.theta3.pow_u64(2, wp).mul_i64(2).sub(&sum_sq, wp),
        tol,
    ));
    checks.push(IdentityCheck::from_residual(
        "dup_2tau_theta4_sq",
        t2.theta4.pow_u64(2, wp).sub(&th34, wp),
        tol,
    ));
    checks.push(IdentityCheck::from_residual(
        "dup_4tau_theta2",
        t4.theta2.mul_i64(2).sub(&th3.sub(th4, wp), wp),
        tol,
    ));
    checks.push(IdentityCheck::from_residual(
        "dup_4tau_theta3",
        t4.theta3.mul_i64(2).sub(&th3.add(th4, wp), wp),
        tol,
    ));
    checks.push(IdentityCheck::from_residual(
        "dup_4tau_theta4_4",
        t4.theta4
            .pow_u64(4, wp)
            .mul_i64(2)
            .sub(&sum_sq.mul(&th34, wp), wp),
        tol,
    ));
    checks.push(IdentityCheck::from_residual(
        "dup_8tau_theta4_8",
        t8.theta4.pow_u64(8, wp).mul_i64(32).sub(
            &th3.add(th4, wp)
                .pow_u64(4, wp)
                .mul(&sum_sq, wp)
                .mul(&th34, wp),
            wp,
        ),
        tol,
    ));
    Ok(checks)
}

fn theta_of(t: &ThetaTriple, target: Target) -> &BallComplex {
    match target {
        Target::Theta2 => &t.theta2,
        Target::Theta3 => &t.theta3,
        Target::Theta4 => &t.theta4,
    }
}

/// 16*lambda shaped per target: theta2 -> 16(l-1)/l, theta3 -> 16l,
/// theta4 -> 16l/(l-1), with lambda = theta2^4/theta3^4 at the given triple.
fn y_point(t: &ThetaTriple, target: Target, wp: u64) -> Result<BallComplex, BallError> {
    let lam = t
        .theta2
        .pow_u64(4, wp)
        .div(&t.theta3.pow_u64(4, wp), wp)?;
    let one = BallComplex::one();
    let v = match target {
        Target::Theta2 => lam.sub(&one, wp).div(&lam, wp)?,
        Target::Theta3 => lam,
        Target::Theta4 => lam.div(&lam.sub(&one, wp), wp)?,
    };
    Ok(v.mul_i64(16))
}

/// Evaluates the relevant modular polynomial at the substitution point for
/// (target, n) and checks that the enclosure of the value contains zero.
///
/// Odd n: P_n(h_target(tau), Y(tau)). Even n = 2m with odd m > 1: the same
/// relation with tau replaced by 2tau and P_m. Powers of two: the pow2-family
/// relation P_n(theta3^2(n tau)/theta3^2(tau), theta4(tau)/theta3(tau)) = 0
/// (the target argument is not used there). Division-by-zero enclosures are
/// retried at doubled precision a few times before giving up.
pub fn verify_modular_vanishing(
    target: Target,
    n: u64,
    tau: &TauPoint,
    prec: u64,
) -> Result<IdentityCheck, ThetaError> {
    let mut attempt_prec = prec;
    for attempt in 0..=DIV_RETRY_CAP {
        match modular_vanishing_once(target, n, tau, prec, attempt_prec) {
            Err(ThetaError::Ball(BallError::DivisionByZeroBall)) if attempt < DIV_RETRY_CAP => {
                attempt_prec *= 2;
            }
            other => return other,
        }
    }
    unreachable!()
}

fn modular_vanishing_once(
    target: Target,
    n: u64,
    tau: &TauPoint,
    prec: u64,
    work_prec: u64,
) -> Result<IdentityCheck, ThetaError> {
    let wp = work_prec + GUARD_BITS;
    let (poly, x0, y0): (&BiPolyZ, BallComplex, BallComplex) = if n.is_power_of_two() && n >= 2 {
        let entry = get_poly(Family::Pow2, n as u32)?;
        let t1 = theta_constants(tau, work_prec)?;
        let tn = theta_constants(&tau.scale(n), work_prec)?;
        let x0 = tn
            .theta3
            .pow_u64(2, wp)
            .div(&t1.theta3.pow_u64(2, wp), wp)?;
        let y0 = t1.theta4.div(&t1.theta3, wp)?;
        (&entry.poly, x0, y0)
    } else if n % 2 == 1 && n >= 3 {
        let entry = get_poly(Family::Odd, n as u32)?;
        let t1 = theta_constants(tau, work_prec)?;
        let tn = theta_constants(&tau.scale(n), work_prec)?;
        let x0 = theta_of(&tn, target)
            .pow_u64(4, wp)
            .div(&theta_of(&t1, target).pow_u64(4, wp), wp)?
            .mul_i64((n * n) as i64);
        let y0 = y_point(&t1, target, wp)?;
        (&entry.poly, x0, y0)
    } else if n % 2 == 0 && (n / 2) % 2 == 1 && n / 2 >= 3 {
        let m = n / 2;
        let entry = get_poly(Family::Odd, m as u32)?;
        let t2 = theta_constants(&tau.scale(2), work_prec)?;
        let tn = theta_constants(&tau.scale(n), work_prec)?;
        let x0 = theta_of(&tn, target)
            .pow_u64(4, wp)
            .div(&theta_of(&t2, target).pow_u64(4, wp), wp)?
            .mul_i64((m * m) as i64);
        let y0 = y_point(&t2, target, wp)?;
        (&entry.poly, x0, y0)
    } else {
        return Err(ThetaError::UnsupportedPoint { target, n });
    };
    let ring = ComplexBallRing { prec: wp };
    let value = poly.eval(&ring, &x0, &y0);
    Ok(IdentityCheck::from_residual(
        format!("modular_vanishing_{target}_{n}"),
        value,
        single_tol(prec),
    ))
}

/// A conjugacy triple: gcd(u,v,w) = 1, u*w = n, 0 <= v < w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleUVW {
    pub u: u64,
    pub v: u64,
    pub w: u64,
}

/// All (u,v,w) triples for odd n >= 3, sorted by (u, v); there are exactly
/// psi(n) of them.
pub fn enumerate_triples(n: u64) -> Result<Vec<TripleUVW>, ThetaError> {
    if n < 3 || n % 2 == 0 {
        return Err(BallError::DomainError.into());
    }
    let mut out = Vec::new();
    for u in 1..=n {
        if n % u != 0 {
            continue;
        }
        let w = n / u;
        for v in 0..w {
            if u.gcd(&v.gcd(&w)) == 1 {
                out.push(TripleUVW { u, v, w });
            }
        }
    }
    debug_assert_eq!(out.len() as u64, psi(n));
    Ok(out)
}

/// Checks the product form: for each sample X,
/// prod_over_triples (X - x_uvw(tau)) = P_n(X, 16 lambda(tau)), where
/// x_uvw = u^2 theta3^4((u tau + 2v)/w) / theta3^4(tau).
pub fn verify_product_form(
    n: u64,
    tau: &TauPoint,
    x_samples: &[BigRational],
    prec: u64,
) -> Result<Vec<IdentityCheck>, ThetaError> {
    let entry = get_poly(Family::Odd, n as u32)?;
    let triples = enumerate_triples(n)?;
    let wp = prec + GUARD_BITS;
    let t1 = theta_constants(tau, prec)?;
    let th3_4 = t1.theta3.pow_u64(4, wp);
    let y0 = y_point(&t1, Target::Theta3, wp)?;

    let mut roots = Vec::with_capacity(triples.len());
    for t in &triples {
        let conj = theta_constants(&tau.moebius_uvw(t.u, t.v, t.w, wp), prec)?;
        let x = conj
            .theta3
            .pow_u64(4, wp)
            .div(&th3_4, wp)?
            .mul_i64((t.u * t.u) as i64);
        roots.push(x);
    }

    let ring = ComplexBallRing { prec: wp };
    let tol = product_tol(prec);
    let mut checks = Vec::with_capacity(x_samples.len());
    for sample in x_samples {
        let xb = rational_ball(sample, wp)?;
        let mut lhs = BallComplex::one();
        for r in &roots {
            lhs = lhs.mul(&xb.sub(r, wp), wp);
        }
        let rhs = entry.poly.eval(&ring, &xb, &y0);
        checks.push(IdentityCheck::from_residual(
            format!("product_form_{n}_X={sample}"),
            lhs.sub(&rhs, wp),
            tol,
        ));
    }
    Ok(checks)
}

fn rational_ball(q: &BigRational, prec: u64) -> Result<BallComplex, BallError> {
    let num = BallReal::from_bigint(q.numer());
    if q.denom() == &BigInt::from(1) {
        return Ok(BallComplex::from_real(num));
    }
    let den = BallReal::from_bigint(q.denom());
    Ok(BallComplex::from_real(num.div(&den, prec)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn tau_i() -> TauPoint {
        TauPoint::new(BallReal::zero(), BallReal::one()).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(TauPoint::new(BallReal::zero(), BallReal::from_i64(-1)).is_err());
        assert!(TauPoint::new(BallReal::zero(), BallReal::zero()).is_err());
    }

    #[test]
    fn theta_at_large_imaginary_tau_degenerates() {
        let tau = TauPoint::new(BallReal::zero(), BallReal::from_i64(40)).unwrap();
        let t = theta_constants(&tau, 256).unwrap();
        let tiny = Float::from_i64(1).div_trunc(&Float::from_bigint(&BigInt::from(10u8).pow(50)), 64);
        // theta2(40i) = 2 q^{1/4}(1 + ...) = 2 e^{-10 pi} ~ 5e-14
        assert!(t.theta2.abs_upper().cmp_val(&Float::pow2(-43)) == std::cmp::Ordering::Less);
        assert!(!t.theta2.contains_zero());
        let one = BallComplex::one();
        assert!(
            t.theta3.sub(&one, 256).abs_upper().cmp_val(&tiny) == std::cmp::Ordering::Less
        );
        assert!(
            t.theta4.sub(&one, 256).abs_upper().cmp_val(&tiny) == std::cmp::Ordering::Less
        );
    }

    #[test]
    fn theta3_at_i_matches_reference() {
        let t = theta_constants(&tau_i(), 128).unwrap();
        // theta3(i) = pi^{1/4} / Gamma(3/4)
        let reference = "1.08643481121330801457531612151022345707";
        let refv = BallReal::from_decimal_str(reference, 160).unwrap();
        let diff = t.theta3.re.sub(&refv, 160);
        assert!(diff.mid.abs().cmp_val(&Float::pow2(-100)) == std::cmp::Ordering::Less);
        assert!(t.theta3.re.rad.cmp_val(&Float::pow2(-64)) == std::cmp::Ordering::Less);
        assert!(t.theta3.im.contains_zero());
        // theta2(i) = theta4(i)
        let sym = t.theta2.sub(&t.theta4, 160);
        assert!(sym.contains_zero());
        assert!(sym.abs_upper().cmp_val(&Float::pow2(-100)) == std::cmp::Ordering::Less);
    }

    #[test]
    fn jacobi_at_sample_points() {
        let c = verify_jacobi(&tau_i(), 128).unwrap();
        assert!(c.pass(), "residual radius {}", c.residual.radius_upper());
        let tau = TauPoint::from_decimal("0.3", "1.2", 192).unwrap();
        let c = verify_jacobi(&tau, 192).unwrap();
        assert!(c.pass());
    }

    #[test]
    fn duplication_identities() {
        let checks = verify_duplication(&tau_i(), 128).unwrap();
        assert_eq!(checks.len(), 7);
        for c in &checks {
            assert!(c.pass(), "{} residual {:?}", c.name, c.residual.radius_upper().to_decimal(5));
        }
        let tau = TauPoint::from_decimal("0.1", "0.9", 256).unwrap();
        for c in verify_duplication(&tau, 256).unwrap() {
            assert!(c.pass(), "{}", c.name);
        }
    }

    #[test]
    fn modular_vanishing_spec_examples() {
        let tau2i = TauPoint::new(BallReal::zero(), BallReal::from_i64(2)).unwrap();
        let c = verify_modular_vanishing(Target::Theta3, 5, &tau2i, 192).unwrap();
        assert!(c.pass(), "theta3 n=5: rad {}", c.residual.radius_upper());

        let c = verify_modular_vanishing(Target::Theta3, 8, &tau_i(), 128).unwrap();
        assert!(c.pass(), "pow2 n=8");

        let tau = TauPoint::from_decimal("0.25", "1.5", 192).unwrap();
        let c = verify_modular_vanishing(Target::Theta4, 3, &tau, 192).unwrap();
        assert!(c.pass(), "theta4 n=3");
    }

    #[test]
    fn modular_vanishing_even_family() {
        let tau = TauPoint::from_decimal("0.2", "1.1", 192).unwrap();
        for n in [6u64, 10] {
            for target in [Target::Theta2, Target::Theta3, Target::Theta4] {
                let c = verify_modular_vanishing(target, n, &tau, 192).unwrap();
                assert!(c.pass(), "{target} n={n}");
            }
        }
    }

    #[test]
    fn unsupported_point() {
        assert!(matches!(
            verify_modular_vanishing(Target::Theta3, 12, &tau_i(), 64),
            Err(ThetaError::UnsupportedPoint { .. })
        ));
    }

    #[test]
    fn triples_match_examples() {
        let t3 = enumerate_triples(3).unwrap();
        assert_eq!(
            t3,
            vec![
                TripleUVW { u: 1, v: 0, w: 3 },
                TripleUVW { u: 1, v: 1, w: 3 },
                TripleUVW { u: 1, v: 2, w: 3 },
                TripleUVW { u: 3, v: 0, w: 1 },
            ]
        );
        let t9 = enumerate_triples(9).unwrap();
        assert_eq!(t9.len(), 12);
        assert!(!t9.contains(&TripleUVW { u: 3, v: 0, w: 3 }));
        assert_eq!(enumerate_triples(5).unwrap().len(), 6);
        assert!(enumerate_triples(4).is_err());
        assert!(enumerate_triples(1).is_err());
    }

    #[test]
    fn product_form_small_cases() {
        let tau2i = TauPoint::new(BallReal::zero(), BallReal::from_i64(2)).unwrap();
        let xs: Vec<BigRational> = (0..3)
            .map(|k| BigRational::from_integer(BigInt::from(k)))
            .collect();
        for c in verify_product_form(3, &tau2i, &xs, 256).unwrap() {
            assert!(c.pass(), "{}", c.name);
        }
        let tau = TauPoint::from_decimal("0.2", "1.0", 256).unwrap();
        let one = vec![BigRational::one()];
        for c in verify_product_form(5, &tau, &one, 256).unwrap() {
            assert!(c.pass(), "{}", c.name);
        }
        assert!(verify_product_form(3, &tau2i, &[], 256)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tail_bound_sound_at_i() {
        // summing extra terms moves theta3 by less than the claimed radius
        let t = theta_constants(&tau_i(), 96).unwrap();
        let hi = theta_constants(&tau_i(), 192).unwrap();
        let shift = t.theta3.re.mid.sub(&hi.theta3.re.mid).abs();
        assert!(shift.cmp_val(&t.theta3.re.rad) == std::cmp::Ordering::Less);
    }

    #[test]
    fn enclosure_monotone_in_prec() {
        let tau = TauPoint::from_decimal("0.5", "1.0", 512).unwrap();
        let lo = verify_jacobi(&tau, 96).unwrap();
        let hi = verify_jacobi(&tau, 192).unwrap();
        assert!(
            hi.residual.radius_upper().cmp_val(&lo.residual.radius_upper())
                != std::cmp::Ordering::Greater
        );
    }
}
