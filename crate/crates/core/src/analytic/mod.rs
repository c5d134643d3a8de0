//! Numeric certification of left-orderability for cyclic branched covers.
//!
//! For a cover degree `n >= 2` the certificate construction runs in four
//! steps:
//!
//! 1. restrict the trace-form representation polynomial to the unit circle
//!    at `theta = pi/n`, which gives a real polynomial slice in `s`;
//! 2. isolate the real roots of the slice with exact Sturm sequences;
//! 3. classify each root against the open conditions `s < 0` and
//!    `s > 4 sin^2(theta)`, the exact criterion for the representation to be
//!    conjugate into `SL(2, R)`;
//! 4. rebuild the representation numerically at a passing root, conjugate it
//!    to real form, and measure every defect: the group relation, the
//!    central power `rho(x)^n = -I`, the imaginary residue left after
//!    conjugation, and the determinants.
//!
//! A [`Verdict`] is `CertifiedLeftOrderable` only when all residuals meet
//! the configured tolerance; a rebuild that misses tolerance is reported as
//! inconclusive, never trusted.  A positive first Betti number of the cover
//! certifies independently of any representation and is checked first.

mod dd;
mod matrices;
mod sturm;

pub use matrices::{Mat2c, Mat2r};
pub use sturm::{isolate_real_roots, RealRoot};

use dd::{Cdd, Dd, Mat2dd};

use std::f64::consts::PI;

use num::complex::Complex64;

use crate::exactpoly::CosPoly;
use crate::knots::{AlexPoly, Gen, KnotWord, TwoBridgeKnot};
use crate::riley::{riley_polynomial, RileyPolynomial};
use crate::{Error, Result};

/// A real polynomial in `s`, the restriction of a trace-form polynomial to
/// `u = 2 cos(theta)`.  Coefficients are stored in ascending degree.
#[derive(Debug, Clone)]
pub struct RealSlice {
    theta: f64,
    coeffs: Vec<f64>,
}

impl RealSlice {
    pub fn new(theta: f64, coeffs: Vec<f64>) -> Self {
        assert!(theta > 0.0 && theta < PI, "theta must lie in (0, pi)");
        assert!(!coeffs.is_empty(), "a slice needs at least one coefficient");
        RealSlice { theta, coeffs }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }
}

/// Restricts a trace-form polynomial to the circle point `m = e^{i theta}`.
///
/// Coefficients are evaluated through the cosine expansion
/// `a_0 + sum 2 a_k cos(k theta)` of each symmetric coefficient rather than
/// through powers of `u = 2 cos(theta)`: the monomial basis cancels
/// catastrophically near `u = 2` once the degree grows.
pub fn real_slice(f: &CosPoly, theta: f64) -> RealSlice {
    assert!(theta > 0.0 && theta < PI, "theta must lie in (0, pi)");
    let rows = cosine_rows(f);
    let coeffs = eval_cosine_rows(&rows, Dd::from_f64(theta))
        .into_iter()
        .map(Dd::to_f64)
        .collect();
    RealSlice::new(theta, coeffs)
}

/// Cosine expansion of every trace-form coefficient: row `j` lists
/// `(k, a_k)` with `coefficient_j = a_0 + sum_k 2 a_k cos(k theta)`.
fn cosine_rows(f: &CosPoly) -> Vec<Vec<(u32, Dd)>> {
    f.to_bivar()
        .coeffs()
        .iter()
        .map(|c| {
            c.terms()
                .filter(|&(e, _)| e >= 0)
                .map(|(e, a)| (e as u32, dd::from_bigint(a)))
                .collect()
        })
        .collect()
}

/// Evaluates cosine rows with a Chebyshev ladder for `cos(k theta)`.
fn eval_cosine_rows(rows: &[Vec<(u32, Dd)>], theta: Dd) -> Vec<Dd> {
    let k_max = rows.iter().flatten().map(|&(k, _)| k).max().unwrap_or(0) as usize;
    let (_, cos_t) = dd::sin_cos(theta);
    let mut cosk = Vec::with_capacity(k_max + 1);
    cosk.push(Dd::ONE);
    if k_max >= 1 {
        cosk.push(cos_t);
    }
    for k in 2..=k_max {
        cosk.push(cos_t.mul_f64(2.0).mul(cosk[k - 1]).sub(cosk[k - 2]));
    }
    rows.iter()
        .map(|row| {
            row.iter().fold(Dd::ZERO, |acc, &(k, a)| {
                if k == 0 {
                    acc.add(a)
                } else {
                    acc.add(a.mul(cosk[k as usize].mul_f64(2.0)))
                }
            })
        })
        .collect()
}

/// Where a root sits relative to the interval `[0, 4 sin^2(theta)]`.
///
/// Roots outside the closed interval give representations conjugate into
/// `SL(2, R)`; roots inside do not; roots within `tol` of either endpoint
/// are `Boundary` and never certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlBranch {
    Negative,
    AboveFourSinSq,
    Fails,
    Boundary,
}

impl SlBranch {
    pub fn label(&self) -> &'static str {
        match self {
            SlBranch::Negative => "negative",
            SlBranch::AboveFourSinSq => "above_four_sin_sq",
            SlBranch::Fails => "fails",
            SlBranch::Boundary => "boundary",
        }
    }
}

/// Classifies `s` against the thresholds `0` and `4 sin^2(theta)`.
pub fn sl2r_condition(s: f64, theta: f64, tol: f64) -> SlBranch {
    let threshold = 4.0 * theta.sin().powi(2);
    if s.abs() <= tol || (s - threshold).abs() <= tol {
        SlBranch::Boundary
    } else if s < 0.0 {
        SlBranch::Negative
    } else if s > threshold {
        SlBranch::AboveFourSinSq
    } else {
        SlBranch::Fails
    }
}

/// The diagonalized representation pair at `theta = pi/n`:
///
/// ```text
/// rho(x) = [ e^{i theta}        0       ]
///          [ 0             e^{-i theta} ]
///
/// rho(y) = [ e^{i theta} - (s / 2 sin theta) i    -1 + s / (4 sin^2 theta) ]
///          [ s                                e^{-i theta} + (s / 2 sin theta) i ]
/// ```
///
/// Both matrices have determinant one and trace `2 cos(theta)`.
pub fn build_representation(n: u32, s: f64) -> (Mat2c, Mat2c) {
    assert!(n >= 2, "cover degree must be at least 2");
    let theta = dd::PI.div(Dd::from_f64(n as f64));
    let (sin_t, cos_t) = dd::sin_cos(theta);
    let rep = representation_dd(sin_t, cos_t, Dd::from_f64(s));
    (rep.rho_x.to_c(), rep.rho_y.to_c())
}

struct DdRep {
    rho_x: Mat2dd,
    rho_y: Mat2dd,
}

fn representation_dd(sin_t: Dd, cos_t: Dd, s: Dd) -> DdRep {
    let alpha = s.div(sin_t.mul_f64(2.0));
    let beta = s.div(sin_t.mul(sin_t).mul_f64(4.0)).sub(Dd::ONE);
    let real = |x: Dd| Cdd { re: x, im: Dd::ZERO };
    let rho_x = Mat2dd::new([
        [
            Cdd {
                re: cos_t,
                im: sin_t,
            },
            Cdd::ZERO,
        ],
        [
            Cdd::ZERO,
            Cdd {
                re: cos_t,
                im: sin_t.neg(),
            },
        ],
    ]);
    let rho_y = Mat2dd::new([
        [
            Cdd {
                re: cos_t,
                im: sin_t.sub(alpha),
            },
            real(beta),
        ],
        [
            real(s),
            Cdd {
                re: cos_t,
                im: alpha.sub(sin_t),
            },
        ],
    ]);
    DdRep { rho_x, rho_y }
}

/// Evaluates a word in `x, y` on a concrete matrix pair.  Inverses use the
/// adjugate, so both matrices must be unimodular.
pub fn evaluate_word(word: &KnotWord, rho_x: &Mat2c, rho_y: &Mat2c) -> Mat2c {
    let inv_x = rho_x.inverse_unimodular();
    let inv_y = rho_y.inverse_unimodular();
    let mut acc = Mat2c::identity();
    for &(gen, exp) in word.letters() {
        let factor = match (gen, exp) {
            (Gen::X, 1) => rho_x,
            (Gen::X, -1) => &inv_x,
            (Gen::Y, 1) => rho_y,
            (Gen::Y, -1) => &inv_y,
            _ => unreachable!("word letters carry exponent +1 or -1"),
        };
        acc = acc.mul(factor);
    }
    acc
}

/// Newton refinement of an isolated simple root; the start value is already
/// within the isolating interval, so a handful of steps reaches the
/// double-double floor.  Falls back to the start on a flat derivative or an
/// implausible jump.
fn polish_root(coeffs: &[Dd], start: f64) -> Dd {
    let mut s = Dd::from_f64(start);
    for _ in 0..4 {
        let fp = dd::eval_deriv(coeffs, s);
        if fp.to_f64() == 0.0 {
            return Dd::from_f64(start);
        }
        s = s.sub(dd::eval_poly(coeffs, s).div(fp));
    }
    if (s.to_f64() - start).abs() > 1e-6 * start.abs().max(1.0) {
        return Dd::from_f64(start);
    }
    s
}

fn evaluate_word_dd(word: &KnotWord, rho_x: &Mat2dd, rho_y: &Mat2dd) -> Mat2dd {
    let inv_x = rho_x.inverse();
    let inv_y = rho_y.inverse();
    let mut acc = Mat2dd::identity();
    for &(gen, exp) in word.letters() {
        let factor = match (gen, exp) {
            (Gen::X, 1) => rho_x,
            (Gen::X, -1) => &inv_x,
            (Gen::Y, 1) => rho_y,
            (Gen::Y, -1) => &inv_y,
            _ => unreachable!("word letters carry exponent +1 or -1"),
        };
        acc = acc.mul(factor);
    }
    acc
}

/// Conjugates the pair into real matrices; returns them together with the
/// largest imaginary residue left behind and the largest determinant defect.
///
/// The change of basis is `rho -> K^-1 (C rho C^-1) K`: the real matrix `C`
/// moves the pair into `SU(1, 1)` and the fixed Cayley matrix
/// `K = [[1, -i], [1, i]]` carries `SU(1, 1)` onto `SL(2, R)`.  The inner
/// conjugation requires `t = 1/(4 sin^2 theta) - 1/s` to be positive, which
/// is exactly the condition `s < 0` or `s > 4 sin^2(theta)`.  The entries of
/// the conjugated matrices grow like `t^2`, so the products run in
/// double-double arithmetic; `C^-1` is the adjugate divided by the exact
/// determinant, keeping both reported defects at the level of the input
/// entries rather than the intermediate magnitudes.
pub fn conjugate_to_real(
    rho_x: &Mat2c,
    rho_y: &Mat2c,
    theta: f64,
    s: f64,
) -> Result<(Mat2r, Mat2r, f64, f64)> {
    let (sin_t, _) = dd::sin_cos(Dd::from_f64(theta));
    let (rx, ry, residual, det_defect) = conjugate_to_real_dd(
        &Mat2dd::from_c(rho_x),
        &Mat2dd::from_c(rho_y),
        sin_t,
        Dd::from_f64(s),
    )?;
    Ok((rx.re(), ry.re(), residual, det_defect))
}

fn conjugate_to_real_dd(
    rho_x: &Mat2dd,
    rho_y: &Mat2dd,
    sin_t: Dd,
    s: Dd,
) -> Result<(Mat2dd, Mat2dd, f64, f64)> {
    let t = Dd::ONE
        .div(sin_t.mul(sin_t).mul_f64(4.0))
        .sub(Dd::ONE.div(s));
    let t_f = t.to_f64();
    if !(t_f > 0.0) || !t_f.is_finite() {
        return Err(Error::NonPositiveT(t_f));
    }
    let rt = t.sqrt();
    let real = |x: Dd| Cdd { re: x, im: Dd::ZERO };
    let c = Mat2dd::new([
        [real(Dd::ONE.div(rt).add(t).sqrt()), real(t)],
        [real(rt), real(rt.add(t.mul(t)).sqrt())],
    ]);
    let det_c = c.det();
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let k = Mat2dd::from_c(&Mat2c::new([[one, -i], [one, i]]));
    let k_inv = Mat2dd::from_c(&Mat2c::new([[half, half], [i * half, -i * half]]));
    let real_of = |rho: &Mat2dd| {
        let inner = c.mul(rho).mul(&c.adjugate()).div_real(det_c.re);
        k_inv.mul(&inner).mul(&k)
    };
    let rx = real_of(rho_x);
    let ry = real_of(rho_y);
    let residual = rx.max_imag().max(ry.max_imag());
    let det_defect_of = |m: &Mat2dd| {
        let d = m.det();
        d.re.sub(Dd::ONE).to_f64().hypot(d.im.to_f64())
    };
    let det_defect = det_defect_of(&rx).max(det_defect_of(&ry));
    Ok((rx, ry, residual, det_defect))
}

/// A fully validated numeric witness: the representation pair, its real
/// conjugate, and every measured defect.
#[derive(Debug, Clone)]
pub struct RepCertificate {
    pub n: u32,
    pub theta: f64,
    pub s_star: RealRoot,
    pub branch: SlBranch,
    pub margin: f64,
    pub rho_x: Mat2c,
    pub rho_y: Mat2c,
    pub real_x: Mat2r,
    pub real_y: Mat2r,
    pub residual_relation: f64,
    pub residual_central: f64,
    pub residual_real: f64,
    /// Relation defect measured again on the conjugated real pair.
    pub residual_relation_real: f64,
}

/// Why a level could not be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InconclusiveReason {
    /// The slice has no real root at all.
    NoRealRoot,
    /// Every root lands inside `(0, 4 sin^2 theta)`, or a rebuilt
    /// certificate missed the residual tolerance.
    AllRootsFail,
    /// No root passes strictly and at least one sits within tolerance of a
    /// threshold, so the strict conditions cannot be decided numerically.
    BoundaryRoot,
}

impl InconclusiveReason {
    pub fn label(&self) -> &'static str {
        match self {
            InconclusiveReason::NoRealRoot => "no_real_root",
            InconclusiveReason::AllRootsFail => "all_roots_fail",
            InconclusiveReason::BoundaryRoot => "boundary_root",
        }
    }
}

/// Outcome of certifying one cover degree.
#[derive(Debug, Clone)]
pub enum Verdict {
    /// A representation certificate passed every residual check.
    CertifiedLeftOrderable(RepCertificate),
    /// The cover has positive first Betti number.
    CertifiedViaBetti,
    /// No certificate; the reason records what blocked it.
    Inconclusive(InconclusiveReason),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Verdict::Inconclusive(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CertifyConfig {
    /// Tolerance for the strict threshold conditions and for every residual
    /// a certificate must satisfy.
    pub tol: f64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { tol: 1e-9 }
    }
}

/// Certifies cover degrees of a fixed knot, computing the representation
/// polynomial and the Alexander polynomial once.
pub struct Certifier {
    knot: TwoBridgeKnot,
    riley: RileyPolynomial,
    alex: AlexPoly,
    config: CertifyConfig,
    rows: Vec<Vec<(u32, Dd)>>,
}

impl Certifier {
    pub fn new(knot: TwoBridgeKnot) -> Result<Self> {
        Self::with_config(knot, CertifyConfig::default())
    }

    pub fn with_config(knot: TwoBridgeKnot, config: CertifyConfig) -> Result<Self> {
        let riley = riley_polynomial(&knot)?;
        let alex = knot.alexander();
        let rows = cosine_rows(riley.cos_form());
        Ok(Certifier {
            knot,
            riley,
            alex,
            config,
            rows,
        })
    }

    pub fn knot(&self) -> TwoBridgeKnot {
        self.knot
    }

    pub fn riley(&self) -> &RileyPolynomial {
        &self.riley
    }

    /// Certifies a single cover degree `n >= 2`.
    ///
    /// The Betti route is checked first.  Otherwise the roots passing the
    /// threshold conditions are tried in order of decreasing margin (the
    /// distance to the nearest threshold), and the first rebuilt
    /// representation meeting every residual check is returned.
    pub fn certify(&self, n: u32) -> Verdict {
        assert!(n >= 2, "cover degree must be at least 2");
        if self.alex.shares_root_with_unity(n) {
            return Verdict::CertifiedViaBetti;
        }
        let theta = PI / n as f64;
        let theta_dd = dd::PI.div(Dd::from_f64(n as f64));
        let coeffs_dd = eval_cosine_rows(&self.rows, theta_dd);
        let slice = RealSlice::new(theta, coeffs_dd.iter().map(|c| c.to_f64()).collect());
        let roots = isolate_real_roots(&slice)
            .expect("trace-form slices have unit leading coefficient");
        if roots.is_empty() {
            return Verdict::Inconclusive(InconclusiveReason::NoRealRoot);
        }
        let threshold = 4.0 * theta.sin().powi(2);
        let mut candidates = Vec::new();
        let mut saw_boundary = false;
        for root in &roots {
            match sl2r_condition(root.value, theta, self.config.tol) {
                SlBranch::Negative => candidates.push((-root.value, root, SlBranch::Negative)),
                SlBranch::AboveFourSinSq => {
                    candidates.push((root.value - threshold, root, SlBranch::AboveFourSinSq))
                }
                SlBranch::Boundary => saw_boundary = true,
                SlBranch::Fails => {}
            }
        }
        if candidates.is_empty() {
            let reason = if saw_boundary {
                InconclusiveReason::BoundaryRoot
            } else {
                InconclusiveReason::AllRootsFail
            };
            return Verdict::Inconclusive(reason);
        }
        candidates.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .unwrap()
                .then(a.1.value.partial_cmp(&b.1.value).unwrap())
        });
        for (margin, root, branch) in candidates {
            if let Some(cert) = self.try_certificate(n, theta, &coeffs_dd, root, branch, margin) {
                return Verdict::CertifiedLeftOrderable(cert);
            }
        }
        Verdict::Inconclusive(InconclusiveReason::AllRootsFail)
    }

    fn try_certificate(
        &self,
        n: u32,
        theta: f64,
        coeffs: &[Dd],
        root: &RealRoot,
        branch: SlBranch,
        margin: f64,
    ) -> Option<RepCertificate> {
        let theta_dd = dd::PI.div(Dd::from_f64(n as f64));
        let (sin_t, cos_t) = dd::sin_cos(theta_dd);
        let s = polish_root(coeffs, root.value);
        let rep = representation_dd(sin_t, cos_t, s);
        let word = self.knot.relator_word();
        let w = evaluate_word_dd(&word, &rep.rho_x, &rep.rho_y);
        let residual_relation = w.mul(&rep.rho_x).sub(&rep.rho_y.mul(&w)).max_abs();
        let residual_central = rep.rho_x.pow(n).add(&Mat2dd::identity()).max_abs();
        let (real_x, real_y, residual_real, det_defect) =
            conjugate_to_real_dd(&rep.rho_x, &rep.rho_y, sin_t, s).ok()?;
        let wr = evaluate_word_dd(&word, &real_x, &real_y);
        let residual_relation_real = wr.mul(&real_x).sub(&real_y.mul(&wr)).max_abs();
        let tol = self.config.tol;
        let valid = residual_relation <= tol
            && residual_central <= tol
            && residual_real <= tol
            && residual_relation_real <= tol
            && det_defect <= tol;
        if !valid {
            return None;
        }
        Some(RepCertificate {
            n,
            theta,
            s_star: root.clone(),
            branch,
            margin,
            rho_x: rep.rho_x.to_c(),
            rho_y: rep.rho_y.to_c(),
            real_x: real_x.re(),
            real_y: real_y.re(),
            residual_relation,
            residual_central,
            residual_real,
            residual_relation_real,
        })
    }

    /// Certifies every degree in `2..=n_max` and locates the onset of the
    /// certified tail.
    pub fn scan(&self, n_max: u32) -> OrderabilityReport {
        assert!(n_max >= 2, "scan needs n_max at least 2");
        let verdicts: Vec<(u32, Verdict)> =
            (2..=n_max).map(|n| (n, self.certify(n))).collect();
        let mut n0 = None;
        for (n, verdict) in verdicts.iter().rev() {
            if verdict.is_certified() {
                n0 = Some(*n);
            } else {
                break;
            }
        }
        OrderabilityReport {
            knot: self.knot,
            n_max,
            verdicts,
            n0,
        }
    }
}

/// Scan summary: every verdict plus `n0`, the smallest degree from which
/// all levels up to `n_max` are certified (`None` if `n_max` itself is not).
#[derive(Debug, Clone)]
pub struct OrderabilityReport {
    pub knot: TwoBridgeKnot,
    pub n_max: u32,
    pub verdicts: Vec<(u32, Verdict)>,
    pub n0: Option<u32>,
}

/// One-shot certification of a single cover degree.
pub fn certify(knot: &TwoBridgeKnot, n: u32) -> Result<Verdict> {
    Ok(Certifier::new(*knot)?.certify(n))
}

/// One-shot scan over `2..=n_max`.
pub fn scan(knot: &TwoBridgeKnot, n_max: u32) -> Result<OrderabilityReport> {
    Ok(Certifier::new(*knot)?.scan(n_max))
}
