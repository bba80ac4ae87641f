//! Truncated Novikov rings.
//!
//! Series are indexed by effective curve classes `β` and truncated at
//! `ℓ(β) > cutoff` for a fixed positive functional `ℓ`. The maximal ideal
//! (everything with `β ≠ 0`) is nilpotent after truncation, so units invert by
//! a finite Neumann series.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cohomring::{CohClass, CohomRing};
use crate::moricone::{CurveClass, MoriData};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("series were truncated differently")]
    CutoffMismatch,
    #[error("constant term is not invertible")]
    NotAUnit,
    #[error("class has a nonzero degree-zero part and is not nilpotent")]
    NotNilpotent,
}

/// Where series are cut: keep `β` with `ℓ(β) <= cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub functional: Vec<i64>,
    pub cutoff: i64,
}

impl Truncation {
    pub fn new(md: &MoriData, cutoff: i64) -> Arc<Truncation> {
        Arc::new(Truncation { functional: md.functional.clone(), cutoff })
    }

    pub fn degree(&self, c: &CurveClass) -> i64 {
        c.dot(&self.functional)
    }

    pub fn keeps(&self, c: &CurveClass) -> bool {
        self.degree(c) <= self.cutoff
    }

    pub fn num_rays(&self) -> usize {
        self.functional.len()
    }
}

/// An element of the truncated Novikov ring with coefficients in `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovScalar<S> {
    trunc: Arc<Truncation>,
    terms: BTreeMap<CurveClass, S>,
}

impl<S: Scalar> NovikovScalar<S> {
    pub fn zero(trunc: &Arc<Truncation>) -> Self {
        NovikovScalar { trunc: trunc.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(trunc: &Arc<Truncation>, c: S) -> Self {
        Self::monomial(trunc, CurveClass::zero(trunc.num_rays()), c)
    }

    pub fn one(trunc: &Arc<Truncation>) -> Self {
        Self::constant(trunc, S::one())
    }

    /// `c q^β`, or zero when `β` is cut off.
    pub fn monomial(trunc: &Arc<Truncation>, class: CurveClass, c: S) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(class, c);
        s
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn add_term(&mut self, class: CurveClass, c: S) {
        if c.is_zero() || !self.trunc.keeps(&class) {
            return;
        }
        match self.terms.get_mut(&class) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&class);
                }
            }
            None => {
                self.terms.insert(class, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurveClass, &S)> {
        self.terms.iter()
    }

    /// Terms sorted by `ℓ`-degree, then class.
    pub fn sorted_terms(&self) -> Vec<(&CurveClass, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(c, _)| (self.trunc.degree(c), (*c).clone()));
        v
    }

    pub fn coefficient(&self, class: &CurveClass) -> S {
        self.terms.get(class).cloned().unwrap_or_else(S::zero)
    }

    /// The `q^0` coefficient.
    pub fn constant_term(&self) -> S {
        self.coefficient(&CurveClass::zero(self.trunc.num_rays()))
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (c, v) in &self.terms {
            out.add_term(c.clone(), v.clone() * k.clone());
        }
        out
    }

    /// Multiplies by `q^β`.
    pub fn shift(&self, class: &CurveClass) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (c, v) in &self.terms {
            out.add_term(c.add(class), v.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.trunc);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn invert_unit(&self) -> Result<Self, NovikovError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(NovikovError::NotAUnit);
        }
        let c_inv = S::one() / c;
        // self = c (1 + n) with n in the maximal ideal.
        let n = self.scale(&c_inv).sub(&Self::one(&self.trunc));
        let minus_n = n.neg();
        let mut sum = Self::one(&self.trunc);
        let mut power = Self::one(&self.trunc);
        loop {
            power = power.mul(&minus_n);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum.scale(&c_inv))
    }

    /// Sets `q = 0`.
    pub fn at_q_zero(&self) -> S {
        self.constant_term()
    }
}

/// A Laurent polynomial in `ħ` with cohomology-valued coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HLaurent<S> {
    rank: usize,
    terms: BTreeMap<i32, CohClass<S>>,
}

impl<S: Scalar> HLaurent<S> {
    pub fn zero(rank: usize) -> Self {
        HLaurent { rank, terms: BTreeMap::new() }
    }

    pub fn one(ring: &CohomRing<S>) -> Self {
        Self::from_class(ring.one(), 0)
    }

    /// `c ħ^power`.
    pub fn from_class(c: CohClass<S>, power: i32) -> Self {
        let mut h = Self::zero(c.coeffs.len());
        h.add_term(power, c);
        h
    }

    /// `D + m ħ`.
    pub fn linear(ring: &CohomRing<S>, d: &CohClass<S>, m: i64) -> Self {
        Self::from_class(d.clone(), 0).add(&Self::from_class(ring.constant(S::from_i64(m)), 1))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, power: i32, c: CohClass<S>) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&power) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(power, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i32, &CohClass<S>)> {
        self.terms.iter()
    }

    /// Coefficient of `ħ^power`.
    pub fn coefficient(&self, power: i32) -> CohClass<S> {
        self.terms.get(&power).cloned().unwrap_or_else(|| CohClass::zero(self.rank))
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(self.rank);
        for (p, c) in &self.terms {
            out.add_term(*p, c.scale(k));
        }
        out
    }

    pub fn mul(&self, other: &Self, ring: &CohomRing<S>) -> Self {
        let mut out = Self::zero(self.rank);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                out.add_term(p + r, ring.mul(a, b));
            }
        }
        out
    }

    /// Multiplies every coefficient by the class `c`.
    pub fn mul_class(&self, c: &CohClass<S>, ring: &CohomRing<S>) -> Self {
        let mut out = Self::zero(self.rank);
        for (p, a) in &self.terms {
            out.add_term(*p, ring.mul(a, c));
        }
        out
    }

    /// Whether every coefficient is nilpotent, i.e. has no degree-zero part.
    fn is_nilpotent(&self, ring: &CohomRing<S>) -> bool {
        self.terms.values().all(|c| ring.is_nilpotent(c))
    }
}

/// `(D + m ħ)^{-1} = Σ_l (-1)^l D^l / (m^{l+1} ħ^{l+1})`, finite since `D` is nilpotent.
pub fn nilpotent_geometric<S: Scalar>(ring: &CohomRing<S>, d: &CohClass<S>, m: i64) -> Result<HLaurent<S>, NovikovError> {
    assert!(m != 0, "nilpotent_geometric needs a nonzero shift");
    if !ring.is_nilpotent(d) {
        return Err(NovikovError::NotNilpotent);
    }
    let m = S::from_i64(m);
    let mut out = HLaurent::zero(ring.rank());
    let mut power = ring.one();
    let mut denom = m.clone();
    let mut l: i32 = 0;
    while !power.is_zero() {
        let sign = if l % 2 == 0 { S::one() } else { -S::one() };
        out.add_term(-(l + 1), power.scale(&(sign / denom.clone())));
        power = ring.mul(&power, d);
        denom = denom * m.clone();
        l += 1;
    }
    Ok(out)
}

/// A truncated Novikov series with `ħ`-Laurent, cohomology-valued coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovSeries<S> {
    trunc: Arc<Truncation>,
    rank: usize,
    terms: BTreeMap<CurveClass, HLaurent<S>>,
}

impl<S: Scalar> NovikovSeries<S> {
    pub fn zero(trunc: &Arc<Truncation>, rank: usize) -> Self {
        NovikovSeries { trunc: trunc.clone(), rank, terms: BTreeMap::new() }
    }

    pub fn one(trunc: &Arc<Truncation>, ring: &CohomRing<S>) -> Self {
        Self::monomial(trunc, CurveClass::zero(trunc.num_rays()), HLaurent::one(ring))
    }

    pub fn monomial(trunc: &Arc<Truncation>, class: CurveClass, coeff: HLaurent<S>) -> Self {
        let mut s = Self::zero(trunc, coeff.rank());
        s.add_term(class, coeff);
        s
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, class: CurveClass, coeff: HLaurent<S>) {
        if coeff.is_zero() || !self.trunc.keeps(&class) {
            return;
        }
        let merged = match self.terms.remove(&class) {
            Some(prev) => prev.add(&coeff),
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(class, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, class: &CurveClass) -> HLaurent<S> {
        self.terms.get(class).cloned().unwrap_or_else(|| HLaurent::zero(self.rank))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurveClass, &HLaurent<S>)> {
        self.terms.iter()
    }

    /// Terms sorted by `ℓ`-degree, then class.
    pub fn sorted_terms(&self) -> Vec<(&CurveClass, &HLaurent<S>)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(c, _)| (self.trunc.degree(c), (*c).clone()));
        v
    }

    fn check(&self, other: &Self) -> Result<(), NovikovError> {
        if self.trunc == other.trunc {
            Ok(())
        } else {
            Err(NovikovError::CutoffMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NovikovError> {
        self.check(other)?;
        let mut out = self.clone();
        for (c, h) in &other.terms {
            out.add_term(c.clone(), h.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NovikovError> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(&self.trunc, self.rank);
        for (c, h) in &self.terms {
            out.add_term(c.clone(), h.scale(k));
        }
        out
    }

    /// Cauchy product over the semigroup, dropping classes past the cutoff.
    pub fn mul(&self, other: &Self, ring: &CohomRing<S>) -> Result<Self, NovikovError> {
        self.check(other)?;
        let mut out = Self::zero(&self.trunc, self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let c = a.add(b);
                if self.trunc.keeps(&c) {
                    out.add_term(c, x.mul(y, ring));
                }
            }
        }
        Ok(out)
    }

    /// Inverse of a series whose `q^0` coefficient is a nonzero constant plus
    /// a nilpotent class-valued Laurent polynomial.
    pub fn invert_unit(&self, ring: &CohomRing<S>) -> Result<Self, NovikovError> {
        let zero = CurveClass::zero(self.trunc.num_rays());
        let u = self.coefficient(&zero);
        let c = u.coefficient(0).coeffs[0].clone();
        if c.is_zero() {
            return Err(NovikovError::NotAUnit);
        }
        let c_inv = S::one() / c.clone();
        let nil = u.sub(&HLaurent::from_class(ring.constant(c), 0));
        if !nil.is_nilpotent(ring) {
            return Err(NovikovError::NotAUnit);
        }
        // u^{-1} = c^{-1} Σ (-nil/c)^k
        let step = nil.scale(&-c_inv.clone());
        let mut u_inv = HLaurent::one(ring);
        let mut power = HLaurent::one(ring);
        loop {
            power = power.mul(&step, ring);
            if power.is_zero() {
                break;
            }
            u_inv = u_inv.add(&power);
        }
        let u_inv = Self::monomial(&self.trunc, zero, u_inv.scale(&c_inv));

        // self = u (1 + n), n in the maximal ideal.
        let one = Self::one(&self.trunc, ring);
        let n = u_inv.mul(self, ring)?.sub(&one)?;
        let minus_n = n.scale(&-S::one());
        let mut sum = one.clone();
        let mut power = one;
        loop {
            power = power.mul(&minus_n, ring)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        sum.mul(&u_inv, ring)
    }
}
