use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use super::laurent::join_sign_tokens;

/// Dense univariate polynomial over the integers, coefficients in ascending
/// order with no trailing zeros (so the zero polynomial is the empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
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

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scaled_shifted(&self, c: &BigInt, shift: usize) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|a| a * c));
        IntPoly { coeffs }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        self.scaled_shifted(c, 0)
    }

    /// Exact division by a scalar; panics if any coefficient fails to divide.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        assert!(!c.is_zero(), "division by zero scalar");
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    debug_assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        }
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + big_to_f64(c);
        }
        acc
    }

    /// Exact sign of the value at the rational point `num/den` (`den > 0`),
    /// computed homogeneously so no fractions appear.
    pub fn sign_at_rational(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.is_positive());
        match self.degree() {
            None => Ordering::Equal,
            Some(d) => {
                let mut acc = self.coeffs[d].clone();
                let mut den_pow = BigInt::one();
                for i in (0..d).rev() {
                    den_pow *= den;
                    acc = acc * num + &self.coeffs[i] * &den_pow;
                }
                acc.cmp(&BigInt::zero())
            }
        }
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, preserving the sign of the leading
    /// coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_exact_scalar(&c)
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg(self) - deg(d) + 1) * self  mod  d`.
    /// Requires `deg(self) >= deg(d)` and `d` nonzero.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by zero");
        let mut r = self.clone();
        let sd = self.degree().expect("pseudo-division of zero");
        assert!(sd >= dd);
        let lc = d.lc();
        let mut scale_left = sd - dd + 1;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.lc();
            r = &r.mul_scalar(&lc) - &d.scaled_shifted(&top, rd - dd);
            scale_left -= 1;
        }
        if scale_left > 0 {
            r = r.mul_scalar(&lc.pow(scale_left as u32));
        }
        r
    }

    /// Exact quotient `self / d`; panics when `d` does not divide `self`.
    /// When the division is exact every step of integer long division is
    /// exact too, since each intermediate remainder is still a multiple of
    /// `d`, so no fractions are needed.
    pub fn div_exact(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let nd = self.degree().unwrap();
        assert!(nd >= dd, "inexact polynomial division");
        let dl = d.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&dl);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, dc) in d.coeffs.iter().take(dd).enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        assert!(
            rem.iter().all(Zero::is_zero),
            "inexact polynomial division"
        );
        IntPoly::new(quot)
    }

    /// Greatest common divisor over the integers (primitive remainder
    /// sequence), returned with positive leading coefficient.
    pub fn gcd_poly(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs_normalized();
        }
        if other.is_zero() {
            return self.abs_normalized();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return IntPoly::constant(c);
            }
            let r = a.prem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.abs_normalized().mul_scalar(&c)
    }

    fn abs_normalized(&self) -> Self {
        if self.lc().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Resultant of `self` and `other`, computed with the subresultant
    /// polynomial remainder sequence so every division is exact.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (da, db) = match (self.degree(), other.degree()) {
            (Some(da), Some(db)) => (da, db),
            // Res(0, g) = 0 unless g is a nonzero constant (empty Sylvester).
            (None, Some(db)) => return if db == 0 { BigInt::one() } else { BigInt::zero() },
            (Some(da), None) => return if da == 0 { BigInt::one() } else { BigInt::zero() },
            (None, None) => return BigInt::zero(),
        };
        let mut sign = BigInt::one();
        let (mut a, mut b) = (self.clone(), other.clone());
        if da < db {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                sign = -sign;
            }
        }
        let ca = a.content();
        let cb = b.content();
        a = a.div_exact_scalar(&ca);
        b = b.div_exact_scalar(&cb);
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let mut t = ca.pow(db as u32) * cb.pow(da as u32) * sign;
        if db == 0 {
            return t * b.lc().pow(da as u32);
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                t = -t;
            }
            let r = a.prem(&b);
            a = b;
            let divisor = &g * h.pow(delta);
            b = r.div_exact_scalar(&divisor);
            g = a.lc();
            // h <- g^delta * h^(1 - delta), all divisions exact
            h = match delta {
                0 => h,
                _ => pow_quotient(&g, delta, &h, delta - 1),
            };
            match b.degree() {
                None => return BigInt::zero(),
                Some(0) => break,
                Some(_) => {}
            }
        }
        let da = a.degree().unwrap() as u32;
        let h_final = pow_quotient(&b.lc(), da, &h, da.saturating_sub(1));
        t * h_final
    }

    /// Discriminant `(-1)^(n(n-1)/2) * Res(f, f') / lc(f)`; panics on the
    /// zero polynomial, returns 1 for degrees 0 and 1.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree().expect("discriminant of zero polynomial");
        if n <= 1 {
            return BigInt::one();
        }
        let res = self.resultant(&self.derivative());
        let (q, r) = res.div_rem(&self.lc());
        debug_assert!(r.is_zero(), "lc must divide Res(f, f')");
        if (n * (n - 1) / 2) % 2 == 1 {
            -q
        } else {
            q
        }
    }

    /// True when the polynomial has no repeated complex roots (degree <= 1
    /// counts as squarefree).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) | Some(1) => !self.is_zero(),
            Some(_) => self.gcd_poly(&self.derivative()).degree() == Some(0),
        }
    }

    /// Fraction-free `x^n mod self`: returns `(r, den)` with
    /// `x^n = r / den  (mod self)` over the rationals, `den` a product of
    /// powers of the leading coefficient.  Requires degree >= 1.
    pub fn pow_x_mod(&self, n: u64) -> (IntPoly, BigInt) {
        let d = self.degree().expect("modulus must be nonzero");
        assert!(d >= 1, "modulus must have positive degree");
        if n < d as u64 {
            return (IntPoly::monomial(BigInt::one(), n as usize), BigInt::one());
        }
        let mut base = self.reduce_tracked(IntPoly::monomial(BigInt::one(), 1), BigInt::one());
        let mut acc = (IntPoly::one(), BigInt::one());
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce_tracked(&acc.0 * &base.0, &acc.1 * &base.1);
            }
            e >>= 1;
            if e > 0 {
                base = self.reduce_tracked(&base.0 * &base.0, &base.1 * &base.1);
            }
        }
        acc
    }

    /// Reduces `p / den` modulo `self` fraction-freely and strips common
    /// integer factors.
    fn reduce_tracked(&self, p: IntPoly, den: BigInt) -> (IntPoly, BigInt) {
        let d = self.degree().unwrap();
        let (mut r, mut den) = (p, den);
        if r.degree().is_some_and(|rd| rd >= d) {
            let delta = r.degree().unwrap() - d + 1;
            den *= self.lc().pow(delta as u32);
            r = r.prem(self);
        }
        let g = r.content().gcd(&den);
        if !g.is_zero() && !g.is_one() {
            r = r.div_exact_scalar(&g);
            let (q, rem) = den.div_rem(&g);
            debug_assert!(rem.is_zero());
            den = q;
        }
        (r, den)
    }

    pub fn text(&self, var: &str) -> String {
        let tokens: Vec<(bool, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mag = c.abs();
                let body = match (k, mag.is_one()) {
                    (0, _) => mag.to_string(),
                    (1, true) => var.to_string(),
                    (1, false) => format!("{mag}*{var}"),
                    (_, true) => format!("{var}^{k}"),
                    (_, false) => format!("{mag}*{var}^{k}"),
                };
                (c.is_negative(), body)
            })
            .collect();
        join_sign_tokens(&tokens)
    }
}

/// `b^eb / h^eh` as an exact integer (the subresultant bookkeeping
/// guarantees divisibility).
fn pow_quotient(b: &BigInt, eb: u32, h: &BigInt, eh: u32) -> BigInt {
    let num = b.pow(eb);
    if eh == 0 {
        return num;
    }
    let den = h.pow(eh);
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "inexact subresultant division");
    q
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    num::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text("x"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(b) = rhs.coeffs.get(i) {
                c += b;
            }
            coeffs.push(c);
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_known_values() {
        // Res(x - 1, x - 2) = det [[1, -1], [1, -2]] = -1.
        let a = IntPoly::from_i64(&[-1, 1]);
        let b = IntPoly::from_i64(&[-2, 1]);
        assert_eq!(a.resultant(&b), BigInt::from(-1));
        assert_eq!(b.resultant(&a), BigInt::from(1));
        // Res(x^2 - 1, x^2 - 4) = 9.
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[-4, 0, 1]);
        assert_eq!(a.resultant(&b), BigInt::from(9));
        // Swapping even-degree operands changes nothing.
        assert_eq!(b.resultant(&a), BigInt::from(9));
        // Res against a constant is the constant to the other degree.
        assert_eq!(a.resultant(&IntPoly::constant(3)), BigInt::from(9));
    }

    #[test]
    fn discriminant_of_quadratic_is_b2_minus_4ac() {
        for (a, b, c) in [(1i64, 3, 2), (2, -7, 3), (1, 0, -5), (3, 1, 1)] {
            let f = IntPoly::from_i64(&[c, b, a]);
            assert_eq!(f.discriminant(), BigInt::from(b * b - 4 * a * c));
        }
    }

    #[test]
    fn discriminant_detects_repeated_roots() {
        // (x - 2)^2
        let f = IntPoly::from_i64(&[4, -4, 1]);
        assert_eq!(f.discriminant(), BigInt::zero());
        assert!(!f.is_squarefree());
        // x^3 - 7x^2 + 14x - 7 has discriminant 49.
        let f = IntPoly::from_i64(&[-7, 14, -7, 1]);
        assert_eq!(f.discriminant(), BigInt::from(49));
        assert!(f.is_squarefree());
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = IntPoly::from_i64(&[-1, 0, 0, 1]); // x^3 - 1
        assert_eq!(a.gcd_poly(&b), IntPoly::from_i64(&[-1, 1]));
        // contents participate: gcd(2x + 2, 4x + 4) = 2x + 2
        let a = IntPoly::from_i64(&[2, 2]);
        let b = IntPoly::from_i64(&[4, 4]);
        assert_eq!(a.gcd_poly(&b), IntPoly::from_i64(&[2, 2]));
        // gcd with negated leading coefficient is normalized positive
        let a = IntPoly::from_i64(&[1, -1]);
        let b = IntPoly::from_i64(&[-1, 0, 0, 1]);
        assert_eq!(a.gcd_poly(&b).lc(), BigInt::one());
    }

    #[test]
    fn exact_division_recovers_factors() {
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[2, 3]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), a);
        assert_eq!(prod.div_exact(&a), b);
        // non-primitive divisor of a non-primitive multiple
        let c = IntPoly::from_i64(&[4, 6]);
        assert_eq!((&a * &c).div_exact(&c), a);
        assert_eq!(IntPoly::zero().div_exact(&b), IntPoly::zero());
    }

    #[test]
    fn pow_x_mod_matches_plain_remainder() {
        // modulus 2t^2 - 3t + 2, non-monic on purpose
        let m = IntPoly::from_i64(&[2, -3, 2]);
        for n in 0..40u64 {
            let (r, den) = m.pow_x_mod(n);
            // check 2^k * x^n - r == multiple of m by resultant-free route:
            // evaluate both sides at a few integers via exact arithmetic.
            for x in [-3i64, -1, 0, 1, 2, 5] {
                let x = BigInt::from(x);
                let lhs = x.pow(n as u32) * &den - r.eval_big(&x);
                let mv = m.eval_big(&x);
                if mv.is_zero() {
                    continue;
                }
                assert!(
                    (&lhs % &mv).is_zero(),
                    "x^{n} mod m mismatch at x = {x}: lhs {lhs} not divisible by {mv}"
                );
            }
        }
    }

    #[test]
    fn sign_at_rational_is_exact() {
        let f = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        assert_eq!(
            f.sign_at_rational(&BigInt::from(1), &BigInt::from(2)),
            Ordering::Less
        );
        assert_eq!(
            f.sign_at_rational(&BigInt::from(3), &BigInt::from(2)),
            Ordering::Greater
        );
        assert_eq!(
            f.sign_at_rational(&BigInt::from(-2), &BigInt::from(2)),
            Ordering::Equal
        );
    }

    #[test]
    fn text_rendering() {
        assert_eq!(IntPoly::from_i64(&[2, -3, 2]).text("t"), "2*t^2 - 3*t + 2");
        assert_eq!(IntPoly::from_i64(&[-7, 14, -7, 1]).text("s"), "s^3 - 7*s^2 + 14*s - 7");
        assert_eq!(IntPoly::zero().text("t"), "0");
    }
}
