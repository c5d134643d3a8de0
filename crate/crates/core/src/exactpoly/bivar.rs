use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::laurent::{join_sign_tokens, IntLaurent};

/// Polynomial in `s` whose coefficients are Laurent polynomials in `m`.
/// Stored by ascending power of `s` with no trailing zero coefficients, so
/// the zero polynomial is the empty vector and `s_degree` returns `None`
/// for it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    coeffs: Vec<IntLaurent>,
}

impl BivarPoly {
    pub fn new(mut coeffs: Vec<IntLaurent>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BivarPoly { coeffs }
    }

    pub fn zero() -> Self {
        BivarPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_laurent(IntLaurent::one())
    }

    /// Embeds a Laurent polynomial as the `s^0` coefficient.
    pub fn from_laurent(c: IntLaurent) -> Self {
        Self::new(vec![c])
    }

    /// Single mixed term `c * m^m_exp * s^s_exp`.
    pub fn term<T: Into<BigInt>>(c: T, m_exp: i64, s_exp: usize) -> Self {
        let mut coeffs = vec![IntLaurent::zero(); s_exp + 1];
        coeffs[s_exp] = IntLaurent::term(c, m_exp);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `s`, or `None` for the zero polynomial.
    pub fn s_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, s_power: usize) -> IntLaurent {
        self.coeffs.get(s_power).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[IntLaurent] {
        &self.coeffs
    }

    /// Leading coefficient in `s`; zero Laurent polynomial if `self` is zero.
    pub fn leading(&self) -> IntLaurent {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// `self * c * m^m_exp * s^s_exp` in one pass.
    pub fn mul_term(&self, c: &BigInt, m_exp: i64, s_exp: usize) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![IntLaurent::zero(); s_exp];
        coeffs.extend(self.coeffs.iter().map(|a| a.scaled_shifted(c, m_exp)));
        BivarPoly { coeffs }
    }

    /// Substitutes `m -> 1/m` in every coefficient.
    pub fn invert_m(&self) -> Self {
        BivarPoly {
            coeffs: self.coeffs.iter().map(|c| c.invert_m()).collect(),
        }
    }

    /// Exact value at `m = 1, s = 0`.
    pub fn eval_m1_s0(&self) -> BigInt {
        self.coeff(0).eval_one()
    }

    /// Canonical text: terms by descending `s` power, coefficients by
    /// descending `m` power; multi-term coefficients of positive `s` powers
    /// are parenthesized and the `s^0` coefficient is spliced into the sum.
    pub fn text(&self) -> String {
        let mut tokens: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s_part = match k {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{k}"),
            };
            if k == 0 {
                tokens.extend(c.sign_tokens("m"));
            } else if c.num_terms() == 1 {
                let (e, a) = c.terms().next().map(|(e, a)| (e, a.clone())).unwrap();
                let mag = a.abs();
                let mut body = String::new();
                if !mag.is_one() {
                    body.push_str(&format!("{mag}*"));
                }
                match e {
                    0 => {}
                    1 => body.push_str("m*"),
                    _ => body.push_str(&format!("m^{e}*")),
                }
                body.push_str(&s_part);
                tokens.push((a.is_negative(), body));
            } else {
                tokens.push((false, format!("({})*{}", c.text("m"), s_part)));
            }
        }
        join_sign_tokens(&tokens)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        BivarPoly::new(coeffs)
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero();
        }
        let mut coeffs = vec![IntLaurent::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BivarPoly::new(coeffs)
    }
}
