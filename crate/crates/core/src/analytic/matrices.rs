use num::complex::Complex64;

/// 2x2 complex matrix in double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2c {
    e: [[Complex64; 2]; 2],
}

impl Mat2c {
    pub fn new(e: [[Complex64; 2]; 2]) -> Self {
        Mat2c { e }
    }

    pub fn from_real(m: &Mat2r) -> Self {
        let lift = |x: f64| Complex64::new(x, 0.0);
        Mat2c::new([
            [lift(m.e[0][0]), lift(m.e[0][1])],
            [lift(m.e[1][0]), lift(m.e[1][1])],
        ])
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2c::new([[one, zero], [zero, one]])
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.e[i][j]
    }

    pub fn mul(&self, rhs: &Mat2c) -> Mat2c {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[i][0] * rhs.e[0][j] + self.e[i][1] * rhs.e[1][j];
            }
        }
        Mat2c::new(out)
    }

    pub fn add(&self, rhs: &Mat2c) -> Mat2c {
        let mut out = self.e;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += rhs.e[i][j];
            }
        }
        Mat2c::new(out)
    }

    pub fn sub(&self, rhs: &Mat2c) -> Mat2c {
        let mut out = self.e;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell -= rhs.e[i][j];
            }
        }
        Mat2c::new(out)
    }

    pub fn det(&self) -> Complex64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    /// Adjugate, which is the inverse for determinant-one matrices.
    pub fn inverse_unimodular(&self) -> Mat2c {
        Mat2c::new([
            [self.e[1][1], -self.e[0][1]],
            [-self.e[1][0], self.e[0][0]],
        ])
    }

    pub fn pow(&self, n: u32) -> Mat2c {
        let mut acc = Mat2c::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part in magnitude.
    pub fn max_imag(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|c| c.im.abs())
            .fold(0.0, f64::max)
    }

    /// Real parts, discarding whatever imaginary residue is left.
    pub fn re(&self) -> Mat2r {
        Mat2r::new([
            [self.e[0][0].re, self.e[0][1].re],
            [self.e[1][0].re, self.e[1][1].re],
        ])
    }
}

/// 2x2 real matrix in double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2r {
    e: [[f64; 2]; 2],
}

impl Mat2r {
    pub fn new(e: [[f64; 2]; 2]) -> Self {
        Mat2r { e }
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.e[i][j]
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        self.e
    }

    pub fn det(&self) -> f64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.e[0][0] + self.e[1][1]
    }
}
