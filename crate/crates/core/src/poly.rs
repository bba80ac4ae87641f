//! Monomials and classical polynomials over a [`Scalar`] field.
//!
//! The term order is graded, with ties broken lexicographically from the
//! last variable: `x2^2 > x1*x2 > x1^2`. Variables are numbered by ray index,
//! so later rays are heavier.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// All monomials in `vars` variables of total degree `d`.
    pub fn all_of_degree(vars: usize, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if vars == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; vars], &mut out);
        out.sort();
        out
    }

    /// Renders with the given variable names; the unit monomial renders as `1`.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with field coefficients; no zero coefficients are stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    vars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(vars: usize) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: S) -> Self {
        Self::term(Monomial::one(vars), c)
    }

    pub fn term(m: Monomial, c: S) -> Self {
        let vars = m.0.len();
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        Self::term(Monomial::var(vars, i), S::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &S) -> Poly<S> {
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, k: &S) -> Poly<S> {
        let mut out = Self::zero(self.vars);
        for (n, c) in &self.terms {
            out.add_term(n.mul(m), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly<S>) -> Poly<S> {
        let mut out = Self::zero(self.vars);
        for (m, c) in &other.terms {
            out = out.add(&self.mul_term(m, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly<S> {
        let mut out = Self::constant(self.vars, S::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Remainder on division by `basis`; every remaining term is standard.
    pub fn reduce(&self, basis: &[Poly<S>]) -> Poly<S> {
        let mut p = self.clone();
        let mut rem = Self::zero(self.vars);
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match basis.iter().find(|g| g.leading().is_some_and(|(l, _)| l.divides(&m))) {
                Some(g) => {
                    let (l, lc) = g.leading().expect("nonzero");
                    let factor = l.quotient_of(&m);
                    p = p.add(&g.mul_term(&factor, &(-(c / lc.clone()))));
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        rem
    }

    fn monic(&self) -> Poly<S> {
        match self.leading() {
            Some((_, c)) => self.scale(&(S::one() / c.clone())),
            None => self.clone(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.terms.iter().rev().map(|(m, c)| (c.to_string(), m.render(names))))
    }
}

/// Joins `(coefficient, monomial)` strings into `a - b*x + ...` form.
pub fn render_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        let body = match (mag.as_str(), m.as_str()) {
            (_, "1") => mag.clone(),
            ("1", _) => m.clone(),
            _ => format!("{mag}*{m}"),
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<S: Scalar>(gens: &[Poly<S>]) -> Vec<Poly<S>> {
    let mut basis: Vec<Poly<S>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, _) = basis[i].leading().expect("nonzero");
        let (lj, _) = basis[j].leading().expect("nonzero");
        let lcm = li.lcm(lj);
        if lcm == li.mul(lj) {
            continue; // coprime leading monomials
        }
        let s = basis[i]
            .mul_term(&li.quotient_of(&lcm), &S::one())
            .add(&basis[j].mul_term(&lj.quotient_of(&lcm), &-S::one()));
        let r = s.reduce(&basis);
        if !r.is_zero() {
            basis.push(r.monic());
            let k = basis.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }

    // Minimalize, then inter-reduce.
    let mut minimal: Vec<Poly<S>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading().expect("nonzero").0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading().expect("nonzero").0;
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly<S>> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (lead, _) = minimal[i].leading().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let others: Vec<Poly<S>> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let mut tail = minimal[i].clone();
        tail.terms.remove(&lead);
        let mut g = tail.reduce(&others);
        g.add_term(lead, S::one());
        reduced.push(g);
    }
    reduced.sort_by(|a, b| a.leading().expect("nonzero").0.cmp(b.leading().expect("nonzero").0));
    reduced
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.0.len()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn order_prefers_later_variables() {
        let x1x2 = Monomial(vec![1, 1]);
        let x2sq = Monomial(vec![0, 2]);
        let x1sq = Monomial(vec![2, 0]);
        assert!(x2sq > x1x2 && x1x2 > x1sq);
        assert!(Monomial(vec![0, 1]) < x1sq);
    }

    #[test]
    fn f2_classical_basis() {
        let x1 = P::var(2, 0);
        let x2 = P::var(2, 1);
        let g1 = x1.mul(&x1);
        let g2 = x2.mul(&x2).add(&x1.mul(&x2).scale(&q(2)));
        let gb = groebner_basis(&[g1.clone(), g2.clone()]);
        assert_eq!(gb, vec![g1, g2]);
    }

    #[test]
    fn reduction_is_ideal_membership() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        // <x^2 - y, x y - 1>
        let gb = groebner_basis(&[x.mul(&x).add(&y.scale(&q(-1))), x.mul(&y).add(&P::constant(2, q(-1)))]);
        let member = x.mul(&x).mul(&y).add(&y.mul(&y).scale(&q(-1)));
        assert!(member.reduce(&gb).is_zero());
        assert!(!x.reduce(&gb).is_zero());
    }

    #[test]
    fn rendering() {
        let names = vec!["x1".to_string(), "x2".to_string()];
        let p = P::var(2, 0).mul(&P::var(2, 1)).scale(&q(-2)).add(&P::constant(2, q(1)));
        assert_eq!(p.render(&names), "-2*x1*x2 + 1");
    }
}
