//! Exact univariate and bivariate polynomials over arbitrary-precision
//! integers.
//!
//! [`BiPolyZ`] is the master representation for every modular polynomial and
//! criterion polynomial: a sparse canonical term map (X-exponent, Y-exponent)
//! -> coefficient, with no stored zero coefficients and cached degrees.
//! [`UniPolyZ`] holds dense univariate data (resultants in Y, specialized
//! polynomials in X), lowest degree first.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::Ring;

/// Which variable of a bivariate polynomial an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "X"),
            Var::Y => write!(f, "Y"),
        }
    }
}

/// Univariate polynomial over the integers, coefficients lowest degree
/// first. The leading coefficient is nonzero unless the polynomial is zero
/// (empty coefficient list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPolyZ {
    coeffs: Vec<BigInt>,
}

impl UniPolyZ {
    pub fn zero() -> Self {
        UniPolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPolyZ::from_coeffs(vec![BigInt::one()])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        UniPolyZ { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        UniPolyZ::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> Self {
        UniPolyZ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        UniPolyZ::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPolyZ::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return UniPolyZ::zero();
        }
        UniPolyZ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact quotient `self / divisor` in Z[t]; panics if the division is
    /// not exact. Bareiss elimination only ever requests exact divisions.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return UniPolyZ::zero();
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree().expect("nonzero");
        assert!(nd >= dd, "inexact polynomial division (degree)");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        let lead = divisor.leading().unwrap();
        for k in (0..quot.len()).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, lead);
            assert!(r.is_zero(), "inexact polynomial division (leading coeff)");
            for (i, dc) in divisor.coeffs.iter().enumerate().take(dd) {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        for c in &rem[..dd] {
            assert!(c.is_zero(), "inexact polynomial division (remainder)");
        }
        UniPolyZ::from_coeffs(quot)
    }

    pub fn eval<R: Ring>(&self, ring: &R, t: &R::Elem) -> R::Elem {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, t), &ring.from_bigint(c));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        UniPolyZ::from_coeffs(coeffs)
    }
}

impl UniPolyZ {
    /// Renders the polynomial with the given variable name.
    pub fn display_as(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                out.push_str(if c.sign() == num_bigint::Sign::Minus { " - " } else { " + " });
            } else if c.sign() == num_bigint::Sign::Minus {
                out.push('-');
            }
            first = false;
            let mag = c.magnitude();
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&format!("{mag}*"));
                    }
                    if k == 1 {
                        out.push(var);
                    } else {
                        out.push_str(&format!("{var}^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_as('Y'))
    }
}

/// Bivariate polynomial in X, Y over the integers: sparse canonical term
/// map keyed by (X-exponent, Y-exponent) in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPolyZ {
    terms: BTreeMap<(u32, u32), BigInt>,
    deg_x: u32,
    deg_y: u32,
    total_degree: u32,
}

impl BiPolyZ {
    pub fn zero() -> Self {
        BiPolyZ {
            terms: BTreeMap::new(),
            deg_x: 0,
            deg_y: 0,
            total_degree: 0,
        }
    }

    pub fn one() -> Self {
        BiPolyZ::from_terms([(0u32, 0u32, BigInt::one())])
    }

    pub fn constant(c: BigInt) -> Self {
        BiPolyZ::from_terms([(0u32, 0u32, c)])
    }

    /// Monomial c * X^i * Y^j.
    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        BiPolyZ::from_terms([(i, j, c)])
    }

    /// Builds from (i, j, coefficient) triples, summing duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigInt)>,
    {
        let mut map: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (i, j, c) in terms {
            if c.is_zero() {
                continue;
            }
            let slot = map.entry((i, j)).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                map.remove(&(i, j));
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: BTreeMap<(u32, u32), BigInt>) -> Self {
        let mut deg_x = 0;
        let mut deg_y = 0;
        let mut total = 0;
        for &(i, j) in map.keys() {
            deg_x = deg_x.max(i);
            deg_y = deg_y.max(j);
            total = total.max(i + j);
        }
        BiPolyZ {
            terms: map,
            deg_x,
            deg_y,
            total_degree: total,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// X-degree (0 for the zero polynomial).
    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    /// Y-degree (0 for the zero polynomial).
    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    /// Total degree M (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }

    /// Terms in lexicographic (i, j) order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        let map = self.terms.iter().map(|(&k, c)| (k, -c)).collect();
        Self::from_map(map)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map = self.terms.clone();
        for (&key, c) in &other.terms {
            let slot = map.entry(key).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                map.remove(&key);
            }
        }
        Self::from_map(map)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let key = (i1 + i2, j1 + j2);
                let slot = map.entry(key).or_insert_with(BigInt::zero);
                *slot += c1 * c2;
                if slot.is_zero() {
                    map.remove(&key);
                }
            }
        }
        Self::from_map(map)
    }

    /// Horner evaluation at (x, y) over an arbitrary commutative ring:
    /// exact in exact rings, enclosure-correct in ball rings.
    pub fn eval<R: Ring>(&self, ring: &R, x: &R::Elem, y: &R::Elem) -> R::Elem {
        // Outer Horner in X, inner Horner in Y on each X-coefficient.
        let by_x = self.as_poly_in(Var::X);
        let mut acc = ring.zero();
        for q in by_x.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), &q.eval(ring, y));
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: Var) -> Self {
        let terms = self.terms.iter().filter_map(|(&(i, j), c)| match var {
            Var::X if i > 0 => Some((i - 1, j, c * BigInt::from(i))),
            Var::Y if j > 0 => Some((i, j - 1, c * BigInt::from(j))),
            _ => None,
        });
        BiPolyZ::from_terms(terms)
    }

    /// Maps every exponent pair (i, j) to (kx*i, ky*j): p(X^kx, Y^ky).
    pub fn substitute_power(&self, kx: u32, ky: u32) -> Self {
        assert!(kx >= 1 && ky >= 1, "power substitution requires kx, ky >= 1");
        let map = self
            .terms
            .iter()
            .map(|(&(i, j), c)| ((i * kx, j * ky), c.clone()))
            .collect();
        Self::from_map(map)
    }

    /// Coefficient polynomials with respect to `var`, ascending by exponent;
    /// entry k of the result is the coefficient of var^k as a polynomial in
    /// the other variable. Empty for the zero polynomial.
    pub fn as_poly_in(&self, var: Var) -> Vec<UniPolyZ> {
        if self.is_zero() {
            return Vec::new();
        }
        let deg = match var {
            Var::X => self.deg_x,
            Var::Y => self.deg_y,
        } as usize;
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); deg + 1];
        for (&(i, j), c) in &self.terms {
            let (outer, inner) = match var {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            let row = &mut rows[outer];
            if row.len() <= inner {
                row.resize(inner + 1, BigInt::zero());
            }
            row[inner] = c.clone();
        }
        rows.into_iter().map(UniPolyZ::from_coeffs).collect()
    }

    /// Inverse of [`as_poly_in`]: rebuilds the bivariate polynomial from
    /// coefficient polynomials in `var`.
    pub fn reassemble(var: Var, coeffs: &[UniPolyZ]) -> Self {
        let mut terms = Vec::new();
        for (outer, q) in coeffs.iter().enumerate() {
            for (inner, c) in q.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = match var {
                    Var::X => (outer as u32, inner as u32),
                    Var::Y => (inner as u32, outer as u32),
                };
                terms.push((i, j, c.clone()));
            }
        }
        BiPolyZ::from_terms(terms)
    }

    /// Specializes Y = y0, returning a univariate polynomial in X.
    pub fn specialize_y(&self, y0: &BigInt) -> UniPolyZ {
        let coeffs = self
            .as_poly_in(Var::X)
            .iter()
            .map(|q| q.eval(&crate::ring::IntegerRing, y0))
            .collect();
        UniPolyZ::from_coeffs(coeffs)
    }

    /// Promotes a univariate polynomial to a bivariate one in `var`.
    pub fn from_uni(var: Var, p: &UniPolyZ) -> Self {
        let terms = p.coeffs().iter().enumerate().map(|(k, c)| match var {
            Var::X => (k as u32, 0, c.clone()),
            Var::Y => (0, k as u32, c.clone()),
        });
        BiPolyZ::from_terms(terms)
    }
}

impl fmt::Display for BiPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " {} ", if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" })?;
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.magnitude();
            let has_vars = *i > 0 || *j > 0;
            if !mag.is_one() || !has_vars {
                write!(f, "{mag}")?;
                if has_vars {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
            if *i > 0 && *j > 0 {
                write!(f, "*")?;
            }
            match j {
                0 => {}
                1 => write!(f, "Y")?,
                _ => write!(f, "Y^{j}")?,
            }
        }
        Ok(())
    }
}
