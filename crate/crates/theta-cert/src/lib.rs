//! theta-cert: exact resultant criteria and high-precision numerical
//! verification for theta-constant modular equations.
//!
//! The crate has two halves. The exact half ([`bigpoly`], [`resultant`],
//! [`tables`], [`criteria`]) computes bivariate resultants of modular
//! polynomials over the integers and produces residue certificates that the
//! criterion resultants do not vanish identically. The numeric half
//! ([`ball`], [`theta`]) evaluates the theta-constants theta2, theta3,
//! theta4 with rigorous complex-ball enclosures and verifies the identities
//! the criteria rest on: Jacobi's identity, the duplication formulas, the
//! modular-polynomial vanishing relations, and the conjugate-product form.

pub mod ball;
pub mod bigpoly;
pub mod criteria;
pub mod report;
pub mod resultant;
pub mod ring;
pub mod tables;
pub mod theta;

pub use bigpoly::{BiPolyZ, UniPolyZ, Var};
pub use criteria::{build_criterion, certify_nonvanishing, criterion_resultant, CriterionSpec,
    Lemma, ResidueCertificate, Target};
pub use resultant::{resultant_at, resultant_in_x, resultant_in_x_bareiss, resultant_mod_p};
pub use tables::{get_poly, load_external, psi, validate_tables, Family, ModularPolyEntry};
