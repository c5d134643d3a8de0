//! The two-variable representation polynomial of a two-bridge knot.
//!
//! The generators of the knot group go to the parabolic matrices
//! `x -> [[m, 1], [0, 1/m]]` and `y -> [[m, 0], [s, 1/m]]`.  Feeding the
//! relator word through this assignment and reading off the top row of the
//! product gives `phi(m, s) = w11 + (1/m - m) * w12`, whose roots in `s` at
//! fixed `m` are exactly the irreducible `SL(2)` representations of this
//! parabolic shape.

use num::{BigInt, One, Zero};
use serde::Serialize;

use crate::exactpoly::{squarefree_in_s, to_cos_form, BivarPoly, CosPoly, IntLaurent, IntPoly};
use crate::knots::{Gen, KnotWord, TwoBridgeKnot};
use crate::{Error, Result};

/// 2x2 matrix of bivariate polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMat2 {
    entries: [[BivarPoly; 2]; 2],
}

impl SymMat2 {
    pub fn new(entries: [[BivarPoly; 2]; 2]) -> Self {
        SymMat2 { entries }
    }

    pub fn identity() -> Self {
        SymMat2::new([
            [BivarPoly::one(), BivarPoly::zero()],
            [BivarPoly::zero(), BivarPoly::one()],
        ])
    }

    pub fn entry(&self, i: usize, j: usize) -> &BivarPoly {
        &self.entries[i][j]
    }

    pub fn mul(&self, rhs: &SymMat2) -> SymMat2 {
        let mut out = [
            [BivarPoly::zero(), BivarPoly::zero()],
            [BivarPoly::zero(), BivarPoly::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let a = &self.entries[i][0] * &rhs.entries[0][j];
                let b = &self.entries[i][1] * &rhs.entries[1][j];
                *cell = &a + &b;
            }
        }
        SymMat2::new(out)
    }

    pub fn det(&self) -> BivarPoly {
        &(&self.entries[0][0] * &self.entries[1][1])
            - &(&self.entries[0][1] * &self.entries[1][0])
    }
}

/// Images of the two generators: upper and lower triangular parabolics with
/// eigenvalues `m, 1/m` and off-diagonal entries `1` and `s`.
pub fn generator_images() -> (SymMat2, SymMat2) {
    let rho_x = SymMat2::new([
        [BivarPoly::term(1, 1, 0), BivarPoly::term(1, 0, 0)],
        [BivarPoly::zero(), BivarPoly::term(1, -1, 0)],
    ]);
    let rho_y = SymMat2::new([
        [BivarPoly::term(1, 1, 0), BivarPoly::zero()],
        [BivarPoly::term(1, 0, 1), BivarPoly::term(1, -1, 0)],
    ]);
    (rho_x, rho_y)
}

fn generator_image(gen: Gen, exp: i8) -> SymMat2 {
    // inverses are adjugates since both images have determinant 1
    match (gen, exp) {
        (Gen::X, 1) => generator_images().0,
        (Gen::Y, 1) => generator_images().1,
        (Gen::X, -1) => SymMat2::new([
            [BivarPoly::term(1, -1, 0), BivarPoly::term(-1, 0, 0)],
            [BivarPoly::zero(), BivarPoly::term(1, 1, 0)],
        ]),
        (Gen::Y, -1) => SymMat2::new([
            [BivarPoly::term(1, -1, 0), BivarPoly::zero()],
            [BivarPoly::term(-1, 0, 1), BivarPoly::term(1, 1, 0)],
        ]),
        _ => unreachable!("letter exponents are +1 or -1"),
    }
}

/// Full symbolic image of a word, multiplied strictly left to right.
pub fn holonomy_word(word: &KnotWord) -> SymMat2 {
    let mut acc = SymMat2::identity();
    for &(gen, exp) in word.letters() {
        acc = acc.mul(&generator_image(gen, exp));
    }
    acc
}

/// Top row of the holonomy image, tracked as a row vector so only a quarter
/// of the symbolic products are formed.  Each factor matrix has monomial
/// entries with one structural zero, which keeps every step a pair of
/// shift-scale-merge operations.
fn holonomy_top_row(word: &KnotWord) -> (BivarPoly, BivarPoly) {
    let one = BigInt::one();
    let neg = -&one;
    let mut r0 = BivarPoly::one();
    let mut r1 = BivarPoly::zero();
    for &(gen, exp) in word.letters() {
        match (gen, exp) {
            (Gen::X, 1) => {
                // F = [[m, 1], [0, 1/m]]
                let n1 = &r0.mul_term(&one, 0, 0) + &r1.mul_term(&one, -1, 0);
                r0 = r0.mul_term(&one, 1, 0);
                r1 = n1;
            }
            (Gen::X, -1) => {
                // F = [[1/m, -1], [0, m]]
                let n1 = &r0.mul_term(&neg, 0, 0) + &r1.mul_term(&one, 1, 0);
                r0 = r0.mul_term(&one, -1, 0);
                r1 = n1;
            }
            (Gen::Y, 1) => {
                // F = [[m, 0], [s, 1/m]]
                let n0 = &r0.mul_term(&one, 1, 0) + &r1.mul_term(&one, 0, 1);
                r1 = r1.mul_term(&one, -1, 0);
                r0 = n0;
            }
            (Gen::Y, -1) => {
                // F = [[1/m, 0], [-s, m]]
                let n0 = &r0.mul_term(&one, -1, 0) + &r1.mul_term(&neg, 0, 1);
                r1 = r1.mul_term(&one, 1, 0);
                r0 = n0;
            }
            _ => unreachable!("letter exponents are +1 or -1"),
        }
    }
    (r0, r1)
}

/// Which structural properties of the polynomial were verified.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PropertyReport {
    /// `s`-degree is `(p-1)/2` and the leading coefficient is a unit.
    pub degree_ok: bool,
    /// `phi(1, 0) != 0`.
    pub nonvanishing_ok: bool,
    /// No repeated factor involving `s`.
    pub squarefree_ok: bool,
    /// `phi(m, s) = phi(1/m, s)` exactly.
    pub symmetric_ok: bool,
}

impl PropertyReport {
    pub fn all_ok(&self) -> bool {
        self.degree_ok && self.nonvanishing_ok && self.squarefree_ok && self.symmetric_ok
    }
}

/// The representation polynomial of a knot together with its rewrite in
/// `u = m + 1/m` and the verified property report.
#[derive(Debug, Clone)]
pub struct RileyPolynomial {
    knot: TwoBridgeKnot,
    phi: BivarPoly,
    cos_form: CosPoly,
    report: PropertyReport,
}

impl RileyPolynomial {
    pub fn knot(&self) -> TwoBridgeKnot {
        self.knot
    }

    pub fn phi(&self) -> &BivarPoly {
        &self.phi
    }

    pub fn cos_form(&self) -> &CosPoly {
        &self.cos_form
    }

    pub fn report(&self) -> PropertyReport {
        self.report
    }

    /// Slice at `m = i` (equivalently `u = 0`).  The coefficients are
    /// Gaussian integers a priori but the `m -> 1/m` symmetry forces the
    /// imaginary parts to vanish, which is asserted.
    pub fn metabelian_slice(&self) -> IntPoly {
        IntPoly::new(
            self.phi
                .coeffs()
                .iter()
                .map(|c| {
                    let (re, im) = c.eval_gauss_i();
                    assert!(im.is_zero(), "symmetric coefficient must be real at m = i");
                    re
                })
                .collect(),
        )
    }
}

/// Computes the representation polynomial of `k`, sign-normalized so the
/// leading `s`-coefficient is `+1`, and verifies its structural properties.
/// A failed property is a bug (the properties are theorems), surfaced as
/// `PropertyViolation` rather than a silently wrong certificate.
pub fn riley_polynomial(k: &TwoBridgeKnot) -> Result<RileyPolynomial> {
    let word = k.relator_word();
    let (w11, w12) = holonomy_top_row(&word);
    let phi_raw = &(&w11 + &w12.mul_term(&BigInt::one(), -1, 0))
        - &w12.mul_term(&BigInt::one(), 1, 0);

    let violation = |what: &'static str| Error::PropertyViolation {
        p: k.p(),
        q: k.q(),
        what,
    };

    let lead = phi_raw.leading();
    let lead_unit = lead == IntLaurent::constant(1) || lead == IntLaurent::constant(-1);
    let phi = if lead == IntLaurent::constant(-1) {
        -&phi_raw
    } else {
        phi_raw
    };

    let degree_ok = lead_unit && phi.s_degree() == Some(k.half_degree());
    if !degree_ok {
        return Err(violation("s-degree or leading coefficient"));
    }
    let nonvanishing_ok = !phi.eval_m1_s0().is_zero();
    if !nonvanishing_ok {
        return Err(violation("phi(1, 0) = 0"));
    }
    let symmetric_ok = phi.invert_m() == phi;
    if !symmetric_ok {
        return Err(violation("phi(m, s) != phi(1/m, s)"));
    }
    let cos_form = to_cos_form(&phi)?;
    let squarefree_ok = squarefree_in_s(&cos_form);
    if !squarefree_ok {
        return Err(violation("repeated factor in s"));
    }

    Ok(RileyPolynomial {
        knot: *k,
        phi,
        cos_form,
        report: PropertyReport {
            degree_ok,
            nonvanishing_ok,
            squarefree_ok,
            symmetric_ok,
        },
    })
}
