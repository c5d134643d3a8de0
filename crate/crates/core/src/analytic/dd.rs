//! Double-double arithmetic for residual evaluation.
//!
//! The conjugated matrices grow like `n^4` with the cover degree, so plain
//! double-precision products drown the certificate residuals in rounding
//! noise long before `n = 200`.  Carrying an error term alongside every
//! value keeps products of the stored `f64` entries accurate to roughly
//! 1e-30 relative, which makes the residuals measure the construction
//! rather than the arithmetic.

use num::complex::Complex64;
use num::{BigInt, FromPrimitive, ToPrimitive};

use super::matrices::{Mat2c, Mat2r};

/// Pi to double-double precision.
pub(crate) const PI: Dd = Dd {
    hi: 3.141592653589793,
    lo: 1.2246467991473532e-16,
};

/// Unevaluated sum `hi + lo` with `|lo|` below half an ulp of `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub(crate) const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub(crate) fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    pub(crate) fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub(crate) fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub(crate) fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi);
        Dd { hi, lo }
    }

    pub(crate) fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let (hi, lo) = quick_two_sum(p, e + self.lo * x);
        Dd { hi, lo }
    }

    pub(crate) fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r1 = self.sub(o.mul_f64(q1));
        let q2 = r1.hi / o.hi;
        let r2 = r1.sub(o.mul_f64(q2));
        let q3 = r2.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

    pub(crate) fn sqrt(self) -> Dd {
        let y = Dd::from_f64(self.hi.sqrt());
        y.add(self.div(y)).mul_f64(0.5)
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn abs_f64(self) -> f64 {
        self.to_f64().abs()
    }
}

/// Lifts an exact integer; both components together carry 106 bits.
pub(crate) fn from_bigint(x: &BigInt) -> Dd {
    let hi = x.to_f64().expect("coefficient magnitude fits an f64");
    let rest = x - BigInt::from_f64(hi).expect("finite leading part");
    let (hi, lo) = quick_two_sum(hi, rest.to_f64().expect("finite tail"));
    Dd { hi, lo }
}

/// Taylor series for `sin` and `cos`, valid on `(0, pi)`.
pub(crate) fn sin_cos(theta: Dd) -> (Dd, Dd) {
    debug_assert!(theta.hi > 0.0 && theta.hi < 3.15);
    let sq = theta.mul(theta);
    let mut sin = Dd::ONE;
    let mut cos = Dd::ONE;
    let mut term_s = Dd::ONE;
    let mut term_c = Dd::ONE;
    for k in 1u32..40 {
        term_c = term_c.mul(sq).div(Dd::from_f64(((2 * k - 1) * (2 * k)) as f64)).neg();
        term_s = term_s.mul(sq).div(Dd::from_f64(((2 * k) * (2 * k + 1)) as f64)).neg();
        cos = cos.add(term_c);
        sin = sin.add(term_s);
        if term_c.abs_f64() < 1e-35 && term_s.abs_f64() < 1e-35 {
            return (sin.mul(theta), cos);
        }
    }
    unreachable!("series terminates within 40 terms on (0, pi/2]")
}

/// Horner evaluation; coefficients in ascending degree.
pub(crate) fn eval_poly(coeffs: &[Dd], x: Dd) -> Dd {
    coeffs
        .iter()
        .rev()
        .fold(Dd::ZERO, |acc, &c| acc.mul(x).add(c))
}

/// Horner evaluation of the derivative.
pub(crate) fn eval_deriv(coeffs: &[Dd], x: Dd) -> Dd {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Dd::ZERO, |acc, (k, &c)| {
            acc.mul(x).add(c.mul_f64(k as f64))
        })
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cdd {
    pub(crate) re: Dd,
    pub(crate) im: Dd,
}

impl Cdd {
    pub(crate) const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub(crate) const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub(crate) fn from_c64(z: Complex64) -> Cdd {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub(crate) fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub(crate) fn sub(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    pub(crate) fn neg(self) -> Cdd {
        Cdd {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub(crate) fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub(crate) fn div_real(self, d: Dd) -> Cdd {
        Cdd {
            re: self.re.div(d),
            im: self.im.div(d),
        }
    }

    pub(crate) fn div(self, o: Cdd) -> Cdd {
        let denom = o.re.mul(o.re).add(o.im.mul(o.im));
        Cdd {
            re: self.re.mul(o.re).add(self.im.mul(o.im)).div(denom),
            im: self.im.mul(o.re).sub(self.re.mul(o.im)).div(denom),
        }
    }

    pub(crate) fn norm_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

/// 2x2 complex matrix with double-double entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Mat2dd {
    e: [[Cdd; 2]; 2],
}

impl Mat2dd {
    pub(crate) fn new(e: [[Cdd; 2]; 2]) -> Self {
        Mat2dd { e }
    }

    pub(crate) fn from_c(m: &Mat2c) -> Self {
        let lift = |i, j| Cdd::from_c64(m.entry(i, j));
        Mat2dd::new([[lift(0, 0), lift(0, 1)], [lift(1, 0), lift(1, 1)]])
    }

    pub(crate) fn identity() -> Self {
        Mat2dd::new([[Cdd::ONE, Cdd::ZERO], [Cdd::ZERO, Cdd::ONE]])
    }

    pub(crate) fn mul(&self, rhs: &Mat2dd) -> Mat2dd {
        let mut out = [[Cdd::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[i][0]
                    .mul(rhs.e[0][j])
                    .add(self.e[i][1].mul(rhs.e[1][j]));
            }
        }
        Mat2dd::new(out)
    }

    pub(crate) fn add(&self, rhs: &Mat2dd) -> Mat2dd {
        let mut out = self.e;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = cell.add(rhs.e[i][j]);
            }
        }
        Mat2dd::new(out)
    }

    pub(crate) fn sub(&self, rhs: &Mat2dd) -> Mat2dd {
        let mut out = self.e;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = cell.sub(rhs.e[i][j]);
            }
        }
        Mat2dd::new(out)
    }

    pub(crate) fn det(&self) -> Cdd {
        self.e[0][0]
            .mul(self.e[1][1])
            .sub(self.e[0][1].mul(self.e[1][0]))
    }

    /// Adjugate: entry moves and negations only, so it is exact.
    pub(crate) fn adjugate(&self) -> Mat2dd {
        Mat2dd::new([
            [self.e[1][1], self.e[0][1].neg()],
            [self.e[1][0].neg(), self.e[0][0]],
        ])
    }

    pub(crate) fn div_real(&self, d: Dd) -> Mat2dd {
        let mut out = self.e;
        for row in out.iter_mut() {
            for cell in row.iter_mut() {
                *cell = cell.div_real(d);
            }
        }
        Mat2dd::new(out)
    }

    pub(crate) fn inverse(&self) -> Mat2dd {
        let det = self.det();
        let adj = self.adjugate();
        let mut out = adj.e;
        for row in out.iter_mut() {
            for cell in row.iter_mut() {
                *cell = cell.div(det);
            }
        }
        Mat2dd::new(out)
    }

    pub(crate) fn pow(&self, mut n: u32) -> Mat2dd {
        let mut base = *self;
        let mut acc = Mat2dd::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub(crate) fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|c| c.norm_f64())
            .fold(0.0, f64::max)
    }

    pub(crate) fn max_imag(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|c| c.im.abs_f64())
            .fold(0.0, f64::max)
    }

    pub(crate) fn re(&self) -> Mat2r {
        Mat2r::new([
            [self.e[0][0].re.to_f64(), self.e[0][1].re.to_f64()],
            [self.e[1][0].re.to_f64(), self.e[1][1].re.to_f64()],
        ])
    }

    pub(crate) fn to_c(&self) -> Mat2c {
        let round = |i: usize, j: usize| {
            Complex64::new(self.e[i][j].re.to_f64(), self.e[i][j].im.to_f64())
        };
        Mat2c::new([[round(0, 0), round(0, 1)], [round(1, 0), round(1, 1)]])
    }
}
