use num::{BigInt, One, Signed, Zero};

use super::bivar::BivarPoly;
use super::laurent::IntLaurent;
use super::unipoly::IntPoly;
use crate::{Error, Result};

/// Polynomial in `s` whose coefficients live in `Z[u]`, where `u` stands for
/// `m + 1/m`.  On the unit circle `m = e^(i*theta)` this substitutes to
/// `u = 2 cos(theta)`, so every coefficient is real by construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CosPoly {
    coeffs: Vec<IntPoly>,
}

impl CosPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CosPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn s_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, s_power: usize) -> IntPoly {
        self.coeffs.get(s_power).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> IntPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn max_u_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    /// Specializes `u` to an exact integer, leaving a polynomial in `s`.
    pub fn eval_u_int(&self, u: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.eval_big(u)).collect())
    }

    /// Substitutes `u = m + 1/m` back, recovering the symmetric bivariate
    /// polynomial this came from.
    pub fn to_bivar(&self) -> BivarPoly {
        let u = IntLaurent::from_terms([(1i64, 1i64), (-1, 1)]);
        let max_deg = self.max_u_degree();
        let mut u_pows = Vec::with_capacity(max_deg + 1);
        u_pows.push(IntLaurent::one());
        for k in 1..=max_deg {
            u_pows.push(&u_pows[k - 1] * &u);
        }
        BivarPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let mut acc = IntLaurent::zero();
                    for (k, a) in c.coeffs().iter().enumerate() {
                        acc = &acc + &u_pows[k].scaled_shifted(a, 0);
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn text(&self) -> String {
        // reuse the bivariate grammar with u in place of m
        let tokens: Vec<(bool, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .flat_map(|(k, c)| render_coeff(c, k))
            .collect();
        super::laurent::join_sign_tokens(&tokens)
    }
}

fn render_coeff(c: &IntPoly, k: usize) -> Vec<(bool, String)> {
    let s_part = match k {
        0 => String::new(),
        1 => "s".to_string(),
        _ => format!("s^{k}"),
    };
    let monomials: Vec<(usize, &BigInt)> = c
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, a)| !a.is_zero())
        .collect();
    let render_mono = |(e, a): (usize, &BigInt)| {
        let mag = a.abs();
        let body = match (e, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "u".to_string(),
            (1, false) => format!("{mag}*u"),
            (_, true) => format!("u^{e}"),
            (_, false) => format!("{mag}*u^{e}"),
        };
        (a.is_negative(), body)
    };
    if k == 0 {
        monomials.into_iter().map(render_mono).collect()
    } else if monomials.len() == 1 {
        let (e, a) = monomials[0];
        let mag = a.abs();
        let mut body = String::new();
        if !mag.is_one() {
            body.push_str(&format!("{mag}*"));
        }
        match e {
            0 => {}
            1 => body.push_str("u*"),
            _ => body.push_str(&format!("u^{e}*")),
        }
        body.push_str(&s_part);
        vec![(a.is_negative(), body)]
    } else {
        vec![(false, format!("({})*{}", c.text("u"), s_part))]
    }
}

/// `P_k(u)` with `P_k(m + 1/m) = m^k + m^(-k)`: `P_0 = 2`, `P_1 = u`,
/// `P_(k+1) = u*P_k - P_(k-1)`.
pub fn power_sum_basis(k_max: usize) -> Vec<IntPoly> {
    let mut basis = Vec::with_capacity(k_max + 1);
    basis.push(IntPoly::constant(2));
    if k_max >= 1 {
        basis.push(IntPoly::monomial(BigInt::one(), 1));
    }
    for k in 2..=k_max {
        let shifted = basis[k - 1].scaled_shifted(&BigInt::one(), 1);
        basis.push(&shifted - &basis[k - 2]);
    }
    basis
}

/// Rewrites a bivariate polynomial whose coefficients are symmetric under
/// `m -> 1/m` in the basis `u = m + 1/m`.
pub fn to_cos_form(p: &BivarPoly) -> Result<CosPoly> {
    let max_exp = p
        .coeffs()
        .iter()
        .filter_map(|c| c.max_exp())
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let basis = power_sum_basis(max_exp);
    let mut out = Vec::with_capacity(p.coeffs().len());
    for (s_power, c) in p.coeffs().iter().enumerate() {
        if !c.is_symmetric() {
            return Err(Error::NotSymmetric { s_power });
        }
        let mut f = IntPoly::constant(c.coeff(0));
        for (e, a) in c.terms() {
            if e > 0 {
                f = &f + &basis[e as usize].mul_scalar(a);
            }
        }
        out.push(f);
    }
    Ok(CosPoly::new(out))
}

/// True when the discriminant of `f` with respect to `s` is not the zero
/// polynomial of `Z[u]`, i.e. `f` has no repeated factor involving `s`.
///
/// The discriminant is a polynomial in `u` of degree at most
/// `(2n - 1) * d` (`n` the `s`-degree, `d` the largest coefficient degree):
/// it is a determinant of order `2n - 1` with entries of degree at most `d`.
/// Specializing `u` to an integer where the leading coefficient does not
/// vanish commutes with taking the discriminant, so the discriminant is zero
/// identically iff it vanishes at `bound + 1` such points.  Points are tried
/// in the fixed order `0, 1, -1, 2, -2, ...` and the first nonzero value
/// short-circuits, which keeps the check exact and deterministic without
/// ever expanding a dense bivariate remainder sequence.
pub fn squarefree_in_s(f: &CosPoly) -> bool {
    let n = match f.s_degree() {
        None => return false,
        Some(0) | Some(1) => return true,
        Some(n) => n,
    };
    let d = f.max_u_degree();
    let bound = (2 * n - 1) * d;
    let lead = f.leading();
    let mut zeros_seen = 0usize;
    for t in eval_points() {
        if lead.eval_big(&t).is_zero() {
            continue;
        }
        if f.eval_u_int(&t).is_squarefree() {
            return true;
        }
        zeros_seen += 1;
        if zeros_seen > bound {
            return false;
        }
    }
    unreachable!("evaluation points are unbounded")
}

fn eval_points() -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero()).chain((1i64..).flat_map(|k| {
        [BigInt::from(k), BigInt::from(-k)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(pairs: &[(i64, i64)]) -> IntLaurent {
        IntLaurent::from_terms(pairs.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn power_sums_rewrite_to_u() {
        // m^2 + m^-2 = u^2 - 2, m^4 + m^-4 = u^4 - 4u^2 + 2
        let basis = power_sum_basis(4);
        assert_eq!(basis[2], IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(basis[4], IntPoly::from_i64(&[2, 0, -4, 0, 1]));
        let p = BivarPoly::from_laurent(sym(&[(2, 1), (-2, 1)]));
        let cos = to_cos_form(&p).unwrap();
        assert_eq!(cos.coeff(0), IntPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn trefoil_shape_from_symmetric_input() {
        // s + m^2 + m^-2 - 1  ->  s + u^2 - 3
        let p = &BivarPoly::term(1, 0, 1) + &BivarPoly::from_laurent(sym(&[(2, 1), (-2, 1), (0, -1)]));
        let cos = to_cos_form(&p).unwrap();
        assert_eq!(cos.s_degree(), Some(1));
        assert_eq!(cos.coeff(0), IntPoly::from_i64(&[-3, 0, 1]));
        assert_eq!(cos.coeff(1), IntPoly::one());
        assert_eq!(cos.text(), "s + u^2 - 3");
        assert_eq!(cos.to_bivar(), p);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let p = &BivarPoly::term(1, 0, 1) + &BivarPoly::term(1, 1, 0);
        match to_cos_form(&p) {
            Err(Error::NotSymmetric { s_power: 0 }) => {}
            other => panic!("expected NotSymmetric, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_through_bivariate() {
        let p = BivarPoly::new(vec![
            sym(&[(4, 2), (-4, 2), (0, 5)]),
            sym(&[(1, -3), (-1, -3)]),
            sym(&[(0, 7)]),
        ]);
        let cos = to_cos_form(&p).unwrap();
        assert_eq!(cos.to_bivar(), p);
    }

    #[test]
    fn squarefree_checks() {
        // (s - u)^2 = s^2 - 2us + u^2: repeated factor
        let sq = CosPoly::new(vec![
            IntPoly::from_i64(&[0, 0, 1]),
            IntPoly::from_i64(&[0, -2]),
            IntPoly::one(),
        ]);
        assert!(!squarefree_in_s(&sq));
        // (s - u)(s - u - 1) = s^2 - (2u+1)s + u^2 + u: squarefree
        let sf = CosPoly::new(vec![
            IntPoly::from_i64(&[0, 1, 1]),
            IntPoly::from_i64(&[-1, -2]),
            IntPoly::one(),
        ]);
        assert!(squarefree_in_s(&sf));
        // s^2 - u: discriminant 4u vanishes at u = 0 but not identically,
        // so the scan must get past the first evaluation point.
        let edge = CosPoly::new(vec![
            IntPoly::from_i64(&[0, -1]),
            IntPoly::zero(),
            IntPoly::one(),
        ]);
        assert!(squarefree_in_s(&edge));
        // degree 1 in s is always squarefree
        let lin = CosPoly::new(vec![IntPoly::from_i64(&[-3, 0, 1]), IntPoly::one()]);
        assert!(squarefree_in_s(&lin));
    }
}
