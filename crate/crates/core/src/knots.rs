//! Two-bridge knot combinatorics: the normalized `(p, q)` pair, the sign
//! sequence driving the standard two-generator presentation, the relator
//! word, and the Alexander polynomial with the first-Betti-number test for
//! cyclic covers.

use std::fmt;

use num::{BigInt, Integer, Signed, Zero};

use crate::exactpoly::{IntLaurent, IntPoly};
use crate::{Error, Result};

/// A two-bridge knot in normal form: `p` odd and at least 3, `0 < q < p`,
/// `gcd(p, q) = 1`, and `q` odd (an even `q` is replaced by `p - q`, which
/// gives the mirror image; mirroring does not affect any certificate
/// produced here).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBridgeKnot {
    p: i64,
    q: i64,
}

impl TwoBridgeKnot {
    /// Validates and normalizes a fraction `p/q`.
    pub fn normalized(p: i64, q: i64) -> Result<Self> {
        let fail = |reason| Error::InvalidPair { p, q, reason };
        if p < 3 {
            return Err(fail("p must be at least 3"));
        }
        if p % 2 == 0 {
            return Err(fail("p must be odd"));
        }
        if q <= 0 || q >= p {
            return Err(fail("q must satisfy 0 < q < p"));
        }
        if p.gcd(&q) != 1 {
            return Err(fail("p and q must be coprime"));
        }
        let q = if q % 2 == 0 { p - q } else { q };
        Ok(TwoBridgeKnot { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `(p - 1) / 2`, the `s`-degree of the representation polynomial.
    pub fn half_degree(&self) -> usize {
        ((self.p - 1) / 2) as usize
    }

    /// Signs `eps_i = (-1)^floor(i*q/p)` for `i = 1, ..., p-1`.
    pub fn sign_sequence(&self) -> SignSequence {
        let signs = (1..self.p)
            .map(|i| {
                let f = (i as i128 * self.q as i128).div_euclid(self.p as i128);
                if f % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        SignSequence(signs)
    }

    /// The word `w = x^eps_1 y^eps_2 x^eps_3 ... y^eps_(p-1)`.
    pub fn relator_word(&self) -> KnotWord {
        let letters = self
            .sign_sequence()
            .signs()
            .iter()
            .enumerate()
            .map(|(idx, &e)| {
                let gen = if idx % 2 == 0 { Gen::X } else { Gen::Y };
                (gen, e)
            })
            .collect();
        KnotWord { letters }
    }

    /// Alexander polynomial, from the free derivative of the group relator
    /// `w x w^-1 y^-1` with both generators sent to `t`, normalized to an
    /// honest polynomial with positive leading coefficient.
    pub fn alexander(&self) -> AlexPoly {
        let w = self.relator_word();
        let mut relator = w.letters.clone();
        relator.push((Gen::X, 1));
        relator.extend(w.inverse().letters);
        relator.push((Gen::Y, -1));

        let mut deriv = IntLaurent::zero();
        let mut exp_sum = 0i64;
        for (gen, e) in relator {
            if e == 1 {
                if gen == Gen::X {
                    deriv = &deriv + &IntLaurent::term(1, exp_sum);
                }
                exp_sum += 1;
            } else {
                exp_sum -= 1;
                if gen == Gen::X {
                    deriv = &deriv - &IntLaurent::term(1, exp_sum);
                }
            }
        }

        let low = deriv.min_exp().expect("free derivative cannot vanish");
        let mut coeffs = vec![BigInt::zero(); (deriv.max_exp().unwrap() - low + 1) as usize];
        for (e, c) in deriv.terms() {
            coeffs[(e - low) as usize] = c.clone();
        }
        let mut poly = IntPoly::new(coeffs);
        if poly.lc().is_negative() {
            poly = &IntPoly::zero() - &poly;
        }
        AlexPoly(poly)
    }

    /// True when the `n`-fold cyclic branched cover has positive first Betti
    /// number: the gcd over the rationals of the Alexander polynomial and
    /// `t^n - 1` is non-constant.
    pub fn betti_positive(&self, n: u32) -> bool {
        self.alexander().shares_root_with_unity(n)
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// The signs of the relator word; always palindromic for valid pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence(Vec<i8>);

impl SignSequence {
    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

/// Generators of the two-bridge knot group presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    X,
    Y,
}

/// Word in the free group on `x, y`; letters carry exponent `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotWord {
    letters: Vec<(Gen, i8)>,
}

impl KnotWord {
    pub fn letters(&self) -> &[(Gen, i8)] {
        &self.letters
    }

    pub fn inverse(&self) -> KnotWord {
        KnotWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Alexander polynomial: an integer polynomial in `t` with nonzero constant
/// term, positive leading coefficient, `|Delta(1)| = 1`, and palindromic
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexPoly(IntPoly);

impl AlexPoly {
    pub fn poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn is_palindromic(&self) -> bool {
        let c = self.0.coeffs();
        c.iter().eq(c.iter().rev())
    }

    /// Exact value at an integer point.
    pub fn eval(&self, t: i64) -> BigInt {
        self.0.eval_big(&BigInt::from(t))
    }

    /// True when some root is an `n`-th root of unity, i.e.
    /// `gcd(Delta, t^n - 1)` is non-constant over the rationals.  `t^n` is
    /// reduced modulo `Delta` fraction-freely first so the cost does not
    /// grow with `n`.
    pub fn shares_root_with_unity(&self, n: u32) -> bool {
        if n == 0 {
            return false;
        }
        let (r, den) = self.0.pow_x_mod(n as u64);
        let h = &r - &IntPoly::constant(den);
        self.0.gcd_poly(&h).degree().map_or(false, |d| d >= 1)
    }

    pub fn text(&self) -> String {
        self.0.text("t")
    }
}
