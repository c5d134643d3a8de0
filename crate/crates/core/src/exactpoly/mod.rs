//! Exact polynomial arithmetic: integer Laurent polynomials in `m`,
//! polynomials in `s` over them, their rewrite in `u = m + 1/m`, and the
//! subresultant machinery (gcd, resultant, discriminant) everything above is
//! checked with.

mod bivar;
mod cos;
mod laurent;
mod unipoly;

pub use bivar::BivarPoly;
pub use cos::{power_sum_basis, squarefree_in_s, to_cos_form, CosPoly};
pub use laurent::IntLaurent;
pub use unipoly::IntPoly;
