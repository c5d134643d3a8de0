//! Certification kernel for left-orderability of the fundamental groups of
//! cyclic branched covers of two-bridge knots.
//!
//! The pipeline: a two-bridge pair `(p, q)` determines a relator word in the
//! knot group, whose parabolic `SL(2)` images produce a two-variable
//! polynomial `phi(m, s)` (the Riley polynomial).  Real roots of the slice
//! `phi(e^{i*pi/n}, s)` that avoid the interval `[0, 4 sin^2(pi/n)]` give
//! `SL(2, R)` representations of the n-fold branched cover group, which
//! certify left-orderability.  A homological route (positive first Betti
//! number of the cover) certifies independently, and exact Smith normal form
//! plus a resultant formula cross-check the torsion of every cover.
//!
//! All symbolic computation is exact over arbitrary-precision integers; the
//! only floating point lives in the final numeric certificates, which carry
//! explicit residuals.

pub mod analytic;
pub mod covers;
pub mod exactpoly;
pub mod knots;
pub mod riley;

mod error;

pub use error::{Error, Result};
