//! Cyclic cover groups of knot complements and their homology.
//!
//! The n-fold cyclic cover of a knot complement has fundamental group
//! `Ker(pi_1 -> Z_n)`, presented here by Reidemeister-Schreier rewriting over
//! the transversal `{x^k}` of meridian powers.  Killing the generator `x^n`
//! gives the branched cover group.  Abelianizations are read off the relator
//! exponent matrix via integer Smith normal form, and cross-checked against
//! the resultant formula for the branched cover's homology order.

use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::exactpoly::IntPoly;
use crate::knots::{AlexPoly, Gen, TwoBridgeKnot};
use crate::{Error, Result};

/// Freely reduced word in numbered generators, exponents `+1`/`-1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = (usize, i8)>>(iter: I) -> Self {
        let mut w = Word::new();
        for (g, e) in iter {
            w.push(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Appends one letter, cancelling against the tail so the word stays
    /// freely reduced.
    pub fn push(&mut self, gen: usize, exp: i8) {
        debug_assert!(exp == 1 || exp == -1);
        match self.letters.last() {
            Some(&(g, e)) if g == gen && e == -exp => {
                self.letters.pop();
            }
            _ => self.letters.push((gen, exp)),
        }
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Net exponent of one generator.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|(g, _)| *g == gen)
            .map(|(_, e)| *e as i64)
            .sum()
    }

    /// Net exponent over all letters.
    pub fn total_exponent(&self) -> i64 {
        self.letters.iter().map(|(_, e)| *e as i64).sum()
    }

    /// Deletes every letter of one generator, then renumbers the generators
    /// above it down by one, re-reducing as letters become adjacent.
    fn delete_generator(&self, gen: usize) -> Word {
        let mut out = Word::new();
        for &(g, e) in &self.letters {
            if g == gen {
                continue;
            }
            out.push(if g > gen { g - 1 } else { g }, e);
        }
        out
    }

    /// Space-separated tokens like `g0 g1^-1`; the empty word prints as `1`.
    pub fn text(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^-1", names[g])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Finite presentation with a distinguished meridian generator (absent once
/// the meridian power has been killed in a branched quotient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
    meridian: Option<usize>,
}

impl GroupPresentation {
    pub fn new(
        generator_names: Vec<String>,
        relators: Vec<Word>,
        meridian: Option<usize>,
    ) -> Self {
        if let Some(m) = meridian {
            assert!(m < generator_names.len(), "meridian index out of range");
        }
        for r in &relators {
            for &(g, _) in r.letters() {
                assert!(g < generator_names.len(), "generator index out of range");
            }
        }
        GroupPresentation {
            generator_names,
            relators,
            meridian,
        }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn meridian(&self) -> Option<usize> {
        self.meridian
    }

    /// Generators minus relators.
    pub fn deficiency(&self) -> i64 {
        self.generator_names.len() as i64 - self.relators.len() as i64
    }

    /// Relator exponent matrix, one row per relator.
    pub fn relator_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| {
                (0..self.generator_names.len())
                    .map(|g| BigInt::from(r.exponent_sum(g)))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generator_names.join(" "))?;
        for (i, r) in self.relators.iter().enumerate() {
            writeln!(f, "relator {}: {}", i, r.text(&self.generator_names))?;
        }
        Ok(())
    }
}

/// The two-generator one-relator presentation `<x, y | w x w^-1 y^-1>`.
pub fn knot_group(k: &TwoBridgeKnot) -> GroupPresentation {
    let index = |gen: Gen| match gen {
        Gen::X => 0,
        Gen::Y => 1,
    };
    let w = k.relator_word();
    let mut relator = Word::new();
    for &(gen, exp) in w.letters() {
        relator.push(index(gen), exp);
    }
    relator.push(0, 1);
    for &(gen, exp) in w.inverse().letters() {
        relator.push(index(gen), exp);
    }
    relator.push(1, -1);
    GroupPresentation::new(
        vec!["x".to_string(), "y".to_string()],
        vec![relator],
        Some(0),
    )
}

/// Presents `Ker(P -> Z_n)` under the homomorphism sending every generator
/// to `1`, with Schreier transversal the meridian powers `x^0..x^(n-1)`.
///
/// Generators are the nontrivial Schreier elements: for each non-meridian
/// generator `g` of `P` one generator per coset (`x^k g x^-(k+1)` up to
/// representative choice), plus the single meridian power `x^n`, which is
/// placed last and becomes the new distinguished generator.
pub fn cyclic_cover_presentation(p: &GroupPresentation, n: u32) -> Result<GroupPresentation> {
    assert!(n >= 1, "cover degree must be at least 1");
    let meridian = p
        .meridian()
        .expect("cover construction needs a distinguished meridian");
    for (i, r) in p.relators().iter().enumerate() {
        let sum = r.total_exponent();
        if sum.rem_euclid(n as i64) != 0 {
            return Err(Error::NotOntoZn {
                n,
                relator: i,
                sum,
            });
        }
    }

    let n = n as usize;
    let k = p.num_generators();
    let others: Vec<usize> = (0..k).filter(|&g| g != meridian).collect();
    // index of the Schreier generator for (generator g, coset c)
    let schreier_index = |c: usize, g: usize| -> Option<usize> {
        if g == meridian {
            if c == n - 1 {
                Some(others.len() * n)
            } else {
                None
            }
        } else {
            let pos = others.iter().position(|&o| o == g).unwrap();
            Some(pos * n + c)
        }
    };

    let mut names: Vec<String> = Vec::with_capacity(others.len() * n + 1);
    for _ in 0..others.len() {
        for _ in 0..n {
            names.push(String::new());
        }
    }
    names.push(String::new());
    for (i, name) in names.iter_mut().enumerate() {
        *name = format!("g{i}");
    }

    let mut relators = Vec::with_capacity(n * p.relators().len());
    for k_coset in 0..n {
        for r in p.relators() {
            let mut out = Word::new();
            let mut c = k_coset;
            for &(g, e) in r.letters() {
                if e == 1 {
                    if let Some(idx) = schreier_index(c, g) {
                        out.push(idx, 1);
                    }
                    c = (c + 1) % n;
                } else {
                    c = (c + n - 1) % n;
                    if let Some(idx) = schreier_index(c, g) {
                        out.push(idx, -1);
                    }
                }
            }
            debug_assert_eq!(c, k_coset, "relator must return to its coset");
            relators.push(out);
        }
    }

    Ok(GroupPresentation::new(
        names.clone(),
        relators,
        Some(names.len() - 1),
    ))
}

/// Quotient by the normal closure of the meridian power: since that element
/// is itself a presentation generator, killing it is generator deletion plus
/// free reduction.  Relators that collapse to the empty word are kept so the
/// relator count (and hence the deficiency) stays honest.
pub fn branched_quotient(cover: &GroupPresentation) -> GroupPresentation {
    let killed = cover
        .meridian()
        .expect("branched quotient needs the meridian power generator");
    let names: Vec<String> = cover
        .generator_names()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != killed)
        .map(|(_, s)| s.clone())
        .collect();
    let relators = cover
        .relators()
        .iter()
        .map(|r| r.delete_generator(killed))
        .collect();
    GroupPresentation::new(names, relators, None)
}

/// Order of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// Abelianization data: invariant-factor diagonal padded with one zero per
/// free summand, so it always has one entry per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub betti: usize,
    pub order: Order,
}

/// Smith normal form diagonal of an integer matrix: nonnegative, with each
/// entry dividing the next and zeros last.  Plain exhaustive pivoting; the
/// matrices here are small.
pub fn smith_diagonal(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let size = rows.min(cols);
    let mut t = 0;

    while t < size {
        // smallest-magnitude nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = div_round(&a[i][t], &a[t][t]);
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = div_round(&a[t][j], &a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }

        // make the pivot divide the rest of the block
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    for jj in t..cols {
                        let add = a[i][jj].clone();
                        a[t][jj] += add;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }

    (0..size)
        .map(|i| if i < t { a[i][i].abs() } else { BigInt::zero() })
        .collect()
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient rounded to nearest so the remainder magnitude shrinks fast
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Smith normal form of the relator exponent matrix, read as the
/// abelianization `Z^gens / rowspace`.
pub fn abelianization(p: &GroupPresentation) -> SnfResult {
    let gens = p.num_generators();
    let diag = smith_diagonal(&p.relator_matrix());
    let mut diagonal: Vec<BigInt> = diag.into_iter().take(gens).collect();
    while diagonal.len() < gens {
        diagonal.push(BigInt::zero());
    }
    let betti = diagonal.iter().filter(|d| d.is_zero()).count();
    let order = if betti > 0 {
        Order::Infinite
    } else {
        Order::Finite(diagonal.iter().product())
    };
    SnfResult {
        diagonal,
        betti,
        order,
    }
}

/// Order of the first homology of the n-fold branched cover as the resultant
/// `|Res(delta(t), 1 + t + ... + t^(n-1))|`, which multiplies the Alexander
/// polynomial over the nontrivial n-th roots of unity; `0` means a positive
/// Betti number, reported as infinite order.
pub fn fox_formula_order(delta: &AlexPoly, n: u32) -> Order {
    let mut cyclo_sum = vec![BigInt::one(); n as usize];
    if cyclo_sum.is_empty() {
        cyclo_sum.push(BigInt::one());
    }
    let f = IntPoly::new(cyclo_sum);
    let res = delta.poly().resultant(&f);
    if res.is_zero() {
        Order::Infinite
    } else {
        Order::Finite(res.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::TwoBridgeKnot;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn knot(p: i64, q: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::normalized(p, q).unwrap()
    }

    fn branched(p: i64, q: i64, n: u32) -> GroupPresentation {
        let g = knot_group(&knot(p, q));
        branched_quotient(&cyclic_cover_presentation(&g, n).unwrap())
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn trefoil_group_relator() {
        let g = knot_group(&knot(3, 1));
        assert_eq!(g.num_generators(), 2);
        assert_eq!(g.meridian(), Some(0));
        assert_eq!(g.relators().len(), 1);
        let r = &g.relators()[0];
        assert_eq!(
            r.letters(),
            &[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]
        );
        assert_eq!(r.text(g.generator_names()), "x y x y^-1 x^-1 y^-1");
    }

    #[test]
    fn free_reduction() {
        let mut w = Word::new();
        w.push(0, 1);
        w.push(1, 1);
        w.push(1, -1);
        w.push(0, -1);
        assert!(w.is_empty());
        let reduced = Word::from_letters([(0, 1), (1, -1), (0, 1)]);
        assert_eq!(Word::from_letters(reduced.letters().to_vec()), reduced);
        assert!(Word::from_letters([(2, 1), (2, -1)]).is_empty());
    }

    #[test]
    fn inverse_concatenation_cancels() {
        let w = Word::from_letters([(0, 1), (1, 1), (0, -1)]);
        let mut prod = w.clone();
        for &(g, e) in w.inverse().letters() {
            prod.push(g, e);
        }
        assert!(prod.is_empty());
    }

    #[test]
    fn trefoil_double_cover_presentation() {
        let g = knot_group(&knot(3, 1));
        let cover = cyclic_cover_presentation(&g, 2).unwrap();
        assert_eq!(cover.num_generators(), 3);
        assert_eq!(cover.relators().len(), 2);
        assert_eq!(cover.deficiency(), 1);
        assert_eq!(cover.meridian(), Some(2));
        // transversal {1, x}: generators y0, y1, a = x^2
        assert_eq!(
            cover.relators()[0].letters(),
            &[(1, 1), (0, -1), (2, -1), (0, -1)]
        );
        assert_eq!(
            cover.relators()[1].letters(),
            &[(2, 1), (0, 1), (2, 1), (1, -1), (1, -1)]
        );

        let b = branched_quotient(&cover);
        assert_eq!(b.num_generators(), 2);
        assert_eq!(b.relators().len(), 2);
        assert_eq!(b.deficiency(), 0);
        assert_eq!(b.meridian(), None);
        let snf = abelianization(&b);
        assert_eq!(snf.diagonal, big(&[1, 3]));
        assert_eq!(snf.betti, 0);
        assert_eq!(snf.order, Order::Finite(BigInt::from(3)));
    }

    #[test]
    fn degree_one_cover_is_the_group_itself() {
        let g = knot_group(&knot(7, 3));
        let cover = cyclic_cover_presentation(&g, 1).unwrap();
        assert_eq!(cover.num_generators(), 2);
        assert_eq!(cover.relators().len(), 1);
        let b = branched_quotient(&cover);
        let snf = abelianization(&b);
        assert_eq!(snf.betti, 0);
        assert_eq!(snf.order, Order::Finite(BigInt::one()));
    }

    #[test]
    fn knot_group_abelianization_is_infinite_cyclic() {
        for (p, q) in [(3i64, 1i64), (5, 3), (7, 3), (9, 5), (13, 7)] {
            let snf = abelianization(&knot_group(&knot(p, q)));
            assert_eq!(snf.betti, 1, "({p}, {q})");
            assert_eq!(snf.diagonal, big(&[1, 0]), "({p}, {q})");
            assert_eq!(snf.order, Order::Infinite);
        }
    }

    #[test]
    fn cover_counts_and_deficiency() {
        let g = knot_group(&knot(7, 3));
        for n in 1..=6u32 {
            let cover = cyclic_cover_presentation(&g, n).unwrap();
            assert_eq!(cover.num_generators() as u32, n + 1);
            assert_eq!(cover.relators().len() as u32, n);
            assert_eq!(cover.deficiency(), 1);
            let b = branched_quotient(&cover);
            assert_eq!(b.deficiency(), 0);
        }
    }

    #[test]
    fn rejects_cover_when_relator_sum_is_not_divisible() {
        let p = GroupPresentation::new(
            vec!["x".to_string(), "y".to_string()],
            vec![Word::from_letters([(0, 1), (1, 1), (1, 1)])],
            Some(0),
        );
        match cyclic_cover_presentation(&p, 2) {
            Err(Error::NotOntoZn { n: 2, relator: 0, sum: 3 }) => {}
            other => panic!("expected NotOntoZn, got {other:?}"),
        }
    }

    #[test]
    fn snf_of_two_by_two_diagonal() {
        let m = vec![big(&[2, 0]), big(&[0, 3])];
        assert_eq!(smith_diagonal(&m), big(&[1, 6]));
    }

    #[test]
    fn snf_handles_zero_and_rectangular_matrices() {
        assert_eq!(smith_diagonal(&[big(&[0, 0])]), big(&[0]));
        assert_eq!(smith_diagonal(&[big(&[1, -1])]), big(&[1]));
        assert_eq!(
            smith_diagonal(&[big(&[-2, 1]), big(&[1, -2])]),
            big(&[1, 3])
        );
        assert_eq!(smith_diagonal(&[big(&[4]), big(&[6])]), big(&[2]));
        assert_eq!(smith_diagonal(&[]), Vec::<BigInt>::new());
    }

    #[test]
    fn snf_divisibility_chain_and_scramble_invariance() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect())
                .collect();
            let d = smith_diagonal(&m);
            for w in d.windows(2) {
                if w[0].is_zero() {
                    assert!(w[1].is_zero());
                } else {
                    assert!((&w[1] % &w[0]).is_zero(), "{d:?}");
                }
            }

            // apply random elementary row/column operations; SNF must not move
            let mut s = m.clone();
            for _ in 0..8 {
                if rng.gen_bool(0.5) && rows > 1 {
                    let i = rng.gen_range(0..rows);
                    let mut j = rng.gen_range(0..rows);
                    if i == j {
                        j = (j + 1) % rows;
                    }
                    let c = BigInt::from(rng.gen_range(-2i64..=2));
                    for col in 0..cols {
                        let delta = &c * &s[j][col];
                        s[i][col] += delta;
                    }
                } else if cols > 1 {
                    let i = rng.gen_range(0..cols);
                    let mut j = rng.gen_range(0..cols);
                    if i == j {
                        j = (j + 1) % cols;
                    }
                    let c = BigInt::from(rng.gen_range(-2i64..=2));
                    for row in s.iter_mut() {
                        let delta = &c * &row[j];
                        row[i] += delta;
                    }
                }
            }
            assert_eq!(smith_diagonal(&s), d);
        }
    }

    #[test]
    fn fox_formula_spot_values() {
        let trefoil = knot(3, 1).alexander();
        assert_eq!(fox_formula_order(&trefoil, 1), Order::Finite(BigInt::one()));
        assert_eq!(fox_formula_order(&trefoil, 2), Order::Finite(BigInt::from(3)));
        assert_eq!(fox_formula_order(&trefoil, 6), Order::Infinite);
        let five_two = knot(7, 4).alexander();
        assert_eq!(fox_formula_order(&five_two, 2), Order::Finite(BigInt::from(7)));
        assert_eq!(fox_formula_order(&five_two, 3), Order::Finite(BigInt::from(25)));
    }

    #[test]
    fn branched_homology_spot_values() {
        assert_eq!(
            abelianization(&branched(7, 4, 2)).order,
            Order::Finite(BigInt::from(7))
        );
        assert_eq!(
            abelianization(&branched(7, 4, 3)).order,
            Order::Finite(BigInt::from(25))
        );
    }

    #[test]
    fn snf_order_matches_resultant_formula() {
        for p in (3..=21i64).step_by(2) {
            for q in (1..p).step_by(2) {
                if num::integer::gcd(p, q) != 1 {
                    continue;
                }
                let k = knot(p, q);
                let delta = k.alexander();
                let g = knot_group(&k);
                for n in 1..=6u32 {
                    let cover = cyclic_cover_presentation(&g, n).unwrap();
                    let snf = abelianization(&branched_quotient(&cover));
                    let fox = fox_formula_order(&delta, n);
                    assert_eq!(snf.order, fox, "({p}, {q}) n={n}");
                    assert_eq!(snf.betti > 0, k.betti_positive(n), "({p}, {q}) n={n}");
                }
            }
        }
    }
}
