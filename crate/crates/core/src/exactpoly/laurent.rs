use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

/// Laurent polynomial in one variable `m` with arbitrary-precision integer
/// coefficients.  Terms are kept sorted by exponent with no zero
/// coefficients stored, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntLaurent {
    terms: Vec<(i64, BigInt)>,
}

impl IntLaurent {
    pub fn zero() -> Self {
        IntLaurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), 0)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c.into(), 0)
    }

    /// Single term `c * m^exp`.
    pub fn term<T: Into<BigInt>>(c: T, exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            IntLaurent {
                terms: vec![(exp, c)],
            }
        }
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_terms<I, T>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut terms: Vec<(i64, BigInt)> = iter.into_iter().map(|(e, c)| (e, c.into())).collect();
        terms.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        IntLaurent { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// `self * c * m^shift` in one pass.
    pub fn scaled_shifted(&self, c: &BigInt, shift: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e + shift, a * c))
                .collect(),
        }
    }

    /// Substitutes `m -> 1/m`.
    pub fn invert_m(&self) -> Self {
        IntLaurent {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, c.clone()))
                .collect(),
        }
    }

    /// True when invariant under `m -> 1/m`.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| *e == 0 || self.coeff(-e) == *c)
    }

    /// Value at `m = 1` (every power of a unit collapses).
    pub fn eval_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Exact value at `m = i` as a Gaussian integer `(re, im)`; powers of `i`
    /// cycle with period four and `i^-1 = -i`.
    pub fn eval_gauss_i(&self) -> (BigInt, BigInt) {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in &self.terms {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        (re, im)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(e, c)| (*e, if negate_other { -c } else { c.clone() })),
        );
        IntLaurent { terms: out }
    }

    /// Renders with exponents ordered by decreasing magnitude, a positive
    /// power directly before its mirror, and the constant last, e.g.
    /// `2*m^2 + 2*m^-2 - 3`.
    pub fn text(&self, var: &str) -> String {
        let tokens = self.sign_tokens(var);
        join_sign_tokens(&tokens)
    }

    /// (sign, magnitude-text) pairs in canonical display order; shared with
    /// the bivariate renderer so constants splice into larger sums.
    pub(crate) fn sign_tokens(&self, var: &str) -> Vec<(bool, String)> {
        let mut ordered: Vec<&(i64, BigInt)> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (std::cmp::Reverse(e.abs()), *e < 0));
        ordered
            .into_iter()
            .map(|(e, c)| {
                let mag = c.abs();
                let body = match (*e, mag.is_one()) {
                    (0, _) => mag.to_string(),
                    (1, true) => var.to_string(),
                    (1, false) => format!("{mag}*{var}"),
                    (_, true) => format!("{var}^{e}"),
                    (_, false) => format!("{mag}*{var}^{e}"),
                };
                (c.is_negative(), body)
            })
            .collect()
    }
}

pub(crate) fn join_sign_tokens(tokens: &[(bool, String)]) -> String {
    if tokens.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in tokens.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text("m"))
    }
}

impl Add for &IntLaurent {
    type Output = IntLaurent;
    fn add(self, rhs: &IntLaurent) -> IntLaurent {
        self.merge(rhs, false)
    }
}

impl Sub for &IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: &IntLaurent) -> IntLaurent {
        self.merge(rhs, true)
    }
}

impl Neg for &IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        IntLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: &IntLaurent) -> IntLaurent {
        if self.is_zero() || rhs.is_zero() {
            return IntLaurent::zero();
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc = IntLaurent::zero();
        for (e, c) in &small.terms {
            acc = acc.merge(&large.scaled_shifted(c, *e), false);
        }
        acc
    }
}
