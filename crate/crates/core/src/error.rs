use thiserror::Error;

/// Errors surfaced by the certification kernel.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The pair does not describe a two-bridge knot in normal form.
    #[error("invalid two-bridge pair ({p}, {q}): {reason}")]
    InvalidPair { p: i64, q: i64, reason: &'static str },

    /// A Laurent coefficient is not invariant under `m -> 1/m`, so it has no
    /// expression in `u = m + 1/m`.
    #[error("coefficient of s^{s_power} is not symmetric under m -> 1/m")]
    NotSymmetric { s_power: usize },

    /// One of the structural properties of the representation polynomial
    /// failed; this indicates a bug, not bad input.
    #[error("representation polynomial property violated for ({p}, {q}): {what}")]
    PropertyViolation { p: i64, q: i64, what: &'static str },

    /// The leading coefficient of a real slice is numerically zero, so its
    /// degree (and root count) is not trustworthy.
    #[error("slice leading coefficient {0:e} is below tolerance")]
    DegenerateLeading(f64),

    /// The conjugation parameter `t = 1/(4 sin^2 theta) - 1/s` must be
    /// positive for the change of basis to a real representation.
    #[error("conjugation parameter t = {0} is not positive")]
    NonPositiveT(f64),

    /// The exponent-sum map of the presentation does not define a
    /// homomorphism onto Z/n.
    #[error("exponent-sum map is not a homomorphism onto Z/{n}: relator {relator} has exponent sum {sum}")]
    NotOntoZn { n: u32, relator: usize, sum: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
