//! Exact real-root isolation for real slices.
//!
//! The slice's double-precision coefficients are dyadic rationals, so the
//! slice is converted losslessly to an integer polynomial.  Sturm sequences
//! over exact arithmetic isolate every distinct real root; a fast
//! double-precision guess is then certified by exact sign checks, falling
//! back to exact bisection when the guess cannot be verified.

use std::cmp::Ordering;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::exactpoly::IntPoly;
use crate::{Error, Result};

use super::RealSlice;

/// One isolated real root: a double-precision value plus the exact interval
/// certifying it.  The polynomial changes sign across the interval, except
/// for roots hit exactly, where the interval collapses to a point.
#[derive(Debug, Clone)]
pub struct RealRoot {
    pub value: f64,
    pub lo: BigRational,
    pub hi: BigRational,
    pub width: f64,
}

/// All distinct real roots of the slice, each within a certified isolating
/// interval of width at most `1e-12 * max(1, |root|)`, sorted ascending.
/// The Sturm count over the full root bound equals the list length, so the
/// list is complete.
pub fn isolate_real_roots(slice: &RealSlice) -> Result<Vec<RealRoot>> {
    let coeffs = slice.coeffs();
    let lead = coeffs.last().copied().unwrap_or(0.0);
    if lead.abs() < 1e-12 {
        return Err(Error::DegenerateLeading(lead));
    }

    // lossless integer model: double-precision coefficients are dyadic
    let rats: Vec<BigRational> = coeffs
        .iter()
        .map(|&c| BigRational::from_float(c).expect("slice coefficients are finite"))
        .collect();
    let mut den = BigInt::one();
    for r in &rats {
        den = den.lcm(r.denom());
    }
    let poly = IntPoly::new(
        rats.iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect(),
    );

    // distinct roots only: divide out the repeated part
    let g = poly.gcd_poly(&poly.derivative());
    let sf = if g.degree() == Some(0) {
        poly.primitive_part()
    } else {
        poly.div_exact(&g).primitive_part()
    };
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }

    let chain = sturm_chain(&sf);
    let bound = cauchy_bound(&sf);
    let lo = -&bound;
    let vlo = variations_at(&chain, &lo);
    let vhi = variations_at(&chain, &bound);

    let mut roots = Vec::new();
    isolate_rec(&sf, &chain, slice, lo, vlo, bound, vhi, &mut roots);
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    debug_assert_eq!(roots.len(), vlo - vhi);
    Ok(roots)
}

/// Sign chain of a squarefree polynomial: `f, f'`, then negated pseudo
/// remainders, each normalized to primitive form with the sign matching the
/// rational remainder's.
pub(crate) fn sturm_chain(sf: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let prev = &chain[chain.len() - 2];
        let cur = &chain[chain.len() - 1];
        let Some(dc) = cur.degree() else {
            chain.pop();
            break;
        };
        if dc == 0 {
            break;
        }
        let dp = prev.degree().expect("chain entries are nonzero");
        let r = prev.prem(cur);
        if r.is_zero() {
            break;
        }
        // prem scales by lc(cur)^(dp - dc + 1); keep the result a positive
        // multiple of -(prev mod cur)
        let negative_scale = cur.lc().is_negative() && (dp - dc + 1) % 2 == 1;
        let next = if negative_scale { r } else { -&r }.primitive_part();
        chain.push(next);
    }
    chain
}

/// Sign variations of the chain at a rational point, zeros skipped.
pub(crate) fn variations_at(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<Ordering> = None;
    for p in chain {
        match p.sign_at_rational(x.numer(), x.denom()) {
            Ordering::Equal => {}
            s => {
                if last.is_some_and(|prev| prev != s) {
                    count += 1;
                }
                last = Some(s);
            }
        }
    }
    count
}

/// Strict bound on root magnitude: `1 + max |a_i| / |lc|`.
fn cauchy_bound(sf: &IntPoly) -> BigRational {
    let d = sf.degree().expect("bound of the zero polynomial");
    let max = sf.coeffs()[..d]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    BigRational::one() + BigRational::new(max, sf.lc().abs())
}

#[allow(clippy::too_many_arguments)]
fn isolate_rec(
    sf: &IntPoly,
    chain: &[IntPoly],
    slice: &RealSlice,
    lo: BigRational,
    vlo: usize,
    hi: BigRational,
    vhi: usize,
    out: &mut Vec<RealRoot>,
) {
    let count = vlo - vhi;
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(refine(sf, slice, lo, hi));
        return;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut mid = (&lo + &hi) * &half;
    // move the split point off any root
    while sf.sign_at_rational(mid.numer(), mid.denom()) == Ordering::Equal {
        mid = (&mid + &hi) * &half;
    }
    let vmid = variations_at(chain, &mid);
    isolate_rec(sf, chain, slice, lo, vlo, mid.clone(), vmid, out);
    isolate_rec(sf, chain, slice, mid, vmid, hi, vhi, out);
}

/// Shrinks an interval known to contain exactly one simple root.
fn refine(sf: &IntPoly, slice: &RealSlice, mut lo: BigRational, mut hi: BigRational) -> RealRoot {
    let sign_at = |x: &BigRational| sf.sign_at_rational(x.numer(), x.denom());
    let slo = sign_at(&lo);
    debug_assert_ne!(slo, Ordering::Equal);
    debug_assert_ne!(sign_at(&hi), Ordering::Equal);
    debug_assert_ne!(slo, sign_at(&hi));
    let sign_f = |v: f64| v.partial_cmp(&0.0).expect("finite evaluation");

    // double-precision bisection guess; usable only when the slice's own
    // signs agree with the exact ones (they may not near a repeated root of
    // the unreduced slice)
    let mut guess = None;
    let mut a = lo.to_f64().expect("interval endpoints are finite");
    let mut b = hi.to_f64().expect("interval endpoints are finite");
    if sign_f(slice.eval(a)) == slo && sign_f(slice.eval(b)) == slo.reverse() {
        for _ in 0..90 {
            let m = 0.5 * (a + b);
            if m <= a.min(b) || m >= a.max(b) {
                break;
            }
            match sign_f(slice.eval(m)) {
                s if s == slo => a = m,
                Ordering::Equal => {
                    a = m;
                    b = m;
                    break;
                }
                _ => b = m,
            }
        }
        guess = Some(0.5 * (a + b));
    }

    // certified shortcut: a hair-width interval around the guess whose exact
    // signs still straddle the root
    if let Some(r) = guess {
        let w = 1e-13 * r.abs().max(1.0);
        let cl = BigRational::from_float(r - w).expect("finite guess");
        let ch = BigRational::from_float(r + w).expect("finite guess");
        if cl > lo && ch < hi {
            match (sign_at(&cl), sign_at(&ch)) {
                (Ordering::Equal, _) => return exact_root(cl),
                (_, Ordering::Equal) => return exact_root(ch),
                (scl, sch) if scl == slo && sch == slo.reverse() => {
                    return RealRoot {
                        value: r,
                        lo: cl,
                        hi: ch,
                        width: 2.0 * w,
                    };
                }
                _ => {}
            }
        }
    }

    // exact bisection fallback
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    loop {
        let value = ((&lo + &hi) * &half).to_f64().expect("finite midpoint");
        let width = (&hi - &lo).to_f64().expect("finite width");
        if width <= 1e-12 * value.abs().max(1.0) {
            return RealRoot {
                value,
                lo,
                hi,
                width,
            };
        }
        let mid = (&lo + &hi) * &half;
        match sign_at(&mid) {
            Ordering::Equal => return exact_root(mid),
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
}

fn exact_root(x: BigRational) -> RealRoot {
    RealRoot {
        value: x.to_f64().expect("finite root"),
        lo: x.clone(),
        hi: x,
        width: 0.0,
    }
}
