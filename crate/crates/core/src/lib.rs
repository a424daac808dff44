//! Privileged coalitions of Shamir-style threshold schemes and a multi-secret
//! sharing scheme built on them.
//!
//! A polynomial `f(x) = a_0 + a_1 x + ... + a_{t-1} x^{t-1}` over `F_p` carries
//! secrets `s_j = a_j` for `j = 0..=t-2`; the top coefficient blinds. Fewer than
//! `t` shares can determine `a_j` exactly when the participants' identities form
//! a privileged coalition, which is characterized by vanishing elementary
//! symmetric polynomials.

pub mod audit;
pub mod coalition;
pub mod error;
pub mod field;
pub mod linalg;
pub mod scheme;
pub mod symfun;

pub use audit::{Conditioning, Domain, Histogram, Verdict};
pub use coalition::{CoalitionQuery, CoalitionReport};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeModulus};
pub use scheme::{SchemeConfig, SecretVector, Share, ShareTable};
pub use symfun::{CoeffVector, Track};
