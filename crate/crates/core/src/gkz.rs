//! The GKZ I-function of a toric variety, its leading terms, two-point
//! invariants read off from it, and the box operators annihilating it.
//!
//! The prefactor `e^{(t₀+δ)/ħ}` is never written out. A divisor derivative
//! `ħ∇_ρ` acts on the `q^β` coefficient as multiplication by `D_ρ + ħ·∫_β D_ρ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cohomring::{CohClass, CohomError, CohomRing};
use crate::moricone::{CurveClass, MoriData};
use crate::novikov::{nilpotent_geometric, HLaurent, NovikovSeries, Truncation};
use crate::poly::Monomial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkzError {
    #[error("operator for {beta} has degree {degree}, beyond cutoff {cutoff}")]
    InsufficientCutoff { beta: CurveClass, degree: i64, cutoff: i64 },
    #[error("coefficient of q^{beta} has a term at ħ^{power}; extraction needs only negative powers")]
    PositiveHbarPower { beta: CurveClass, power: i32 },
    #[error("invariant at {beta}, basis element {basis}, ψ^{psi} fails degree matching")]
    DegreeMismatch { beta: CurveClass, basis: usize, psi: u32 },
    #[error("operator for {beta} leaves a term at q^{target}, ħ^{power}")]
    AnnihilationFailure { beta: CurveClass, target: CurveClass, power: i32 },
    #[error(transparent)]
    Cohom(#[from] CohomError),
}

/// The box operator `□_β`: `Π_{d_ρ>0} Π_{m<d_ρ} (ħ∇_ρ − mħ) − q^β Π_{d_ρ<0} Π_{m<−d_ρ} (ħ∇_ρ − mħ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GKZOperator {
    pub beta: CurveClass,
    /// `(ρ, d_ρ)` with `d_ρ > 0`.
    pub positive: Vec<(usize, u32)>,
    /// `(ρ, −d_ρ)` with `d_ρ < 0`.
    pub negative: Vec<(usize, u32)>,
}

impl GKZOperator {
    pub fn new(beta: CurveClass) -> Self {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (r, &d) in beta.0.iter().enumerate() {
            if d > 0 {
                positive.push((r, d as u32));
            } else if d < 0 {
                negative.push((r, (-d) as u32));
            }
        }
        GKZOperator { beta, positive, negative }
    }
}

/// The `q^β` coefficient of the I-function, `Π_ρ Π_{m≤0}(D_ρ+mħ) / Π_{m≤d_ρ}(D_ρ+mħ)`.
pub fn gkz_coefficient<S: Scalar>(ring: &CohomRing<S>, beta: &CurveClass) -> HLaurent<S> {
    let mut out = HLaurent::one(ring);
    let mut top = 0i32;
    let mut bottom = -(ring.dim() as i32);
    for (r, &d) in beta.0.iter().enumerate() {
        let dr = ring.divisor_class(r);
        if d > 0 {
            for m in 1..=d {
                let inv = nilpotent_geometric(ring, &dr, m).expect("divisor classes are nilpotent");
                out = out.mul(&inv, ring);
            }
            top -= d as i32;
            bottom -= d as i32;
        } else if d < 0 {
            out = out.mul_class(&dr, ring);
            for m in (d + 1)..=-1 {
                out = out.mul(&HLaurent::linear(ring, &dr, m), ring);
            }
            top += (-d - 1) as i32;
        }
    }
    if let (Some(lo), Some(hi)) = (out.min_power(), out.max_power()) {
        assert!(lo >= bottom && hi <= top, "ħ-exponents of {beta} outside [{bottom}, {top}]");
    }
    out
}

/// `Σ_{ℓ(β) ≤ cutoff} q^β · gkz_coefficient(β)`, prefactor stripped.
pub fn i_function<S: Scalar>(ring: &CohomRing<S>, md: &MoriData, cutoff: i64) -> NovikovSeries<S> {
    let trunc = Truncation::new(md, cutoff);
    i_function_with(ring, md, &trunc)
}

pub fn i_function_with<S: Scalar>(ring: &CohomRing<S>, md: &MoriData, trunc: &Arc<Truncation>) -> NovikovSeries<S> {
    let mut out = NovikovSeries::zero(trunc, ring.rank());
    for beta in md.enumerate_effective(trunc.cutoff) {
        let c = gkz_coefficient(ring, &beta);
        out.add_term(beta, c);
    }
    out
}

/// The `ħ⁰` and `ħ⁻¹` parts of the I-function, as class-valued series.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingTerms<S> {
    pub i0: BTreeMap<CurveClass, CohClass<S>>,
    pub i1: BTreeMap<CurveClass, CohClass<S>>,
    pub i0_is_one: bool,
}

pub fn leading_terms<S: Scalar>(ring: &CohomRing<S>, i: &NovikovSeries<S>) -> LeadingTerms<S> {
    let mut i0 = BTreeMap::new();
    let mut i1 = BTreeMap::new();
    for (beta, h) in i.terms() {
        let c0 = h.coefficient(0);
        if !c0.is_zero() {
            i0.insert(beta.clone(), c0);
        }
        let c1 = h.coefficient(-1);
        if !c1.is_zero() {
            i1.insert(beta.clone(), c1);
        }
    }
    let zero = CurveClass::zero(i.truncation().num_rays());
    let i0_is_one = i0.len() == 1 && i0.get(&zero) == Some(&ring.one());
    LeadingTerms { i0, i1, i0_is_one }
}

/// `⟨T_a ψ^k, 1⟩_{0,2,β}` indexed by `(β, a, k)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TwoPointTable<S> {
    pub entries: BTreeMap<(CurveClass, usize, u32), S>,
}

impl<S: Scalar> TwoPointTable<S> {
    pub fn get(&self, basis: usize, psi: u32, beta: &CurveClass) -> S {
        self.entries.get(&(beta.clone(), basis, psi)).cloned().unwrap_or_else(S::zero)
    }

    /// `Σ_a Σ_k ħ^{−k−1} ⟨T_a ψ^k, 1⟩_β T^a`.
    pub fn reconstruct(&self, ring: &CohomRing<S>, duals: &[CohClass<S>], beta: &CurveClass) -> HLaurent<S> {
        let mut out = HLaurent::zero(ring.rank());
        for ((b, a, k), v) in &self.entries {
            if b == beta {
                out.add_term(-(*k as i32) - 1, duals[*a].scale(v));
            }
        }
        out
    }
}

/// Decomposes each `β ≠ 0` coefficient over the dual basis and reads off the
/// descendant invariants from its `ħ` expansion.
pub fn extract_two_point_invariants<S: Scalar>(ring: &CohomRing<S>, i: &NovikovSeries<S>) -> Result<TwoPointTable<S>, GkzError> {
    let mut table = TwoPointTable { entries: BTreeMap::new() };
    let dim = ring.dim() as i64;
    for (beta, h) in i.terms() {
        if beta.is_zero() {
            continue;
        }
        if let Some(p) = h.max_power() {
            if p >= 0 {
                return Err(GkzError::PositiveHbarPower { beta: beta.clone(), power: p });
            }
        }
        for (&p, class) in h.terms() {
            let k = (-p - 1) as u32;
            for a in 0..ring.rank() {
                let t_a = CohClass::basis_element(ring.rank(), a);
                let v = ring.integrate(&ring.mul(&t_a, class));
                if v.is_zero() {
                    continue;
                }
                if ring.basis_degree(a) as i64 + k as i64 != dim + beta.anticanonical_degree() - 1 {
                    return Err(GkzError::DegreeMismatch { beta: beta.clone(), basis: a, psi: k });
                }
                table.entries.insert((beta.clone(), a, k), v);
            }
        }
    }
    Ok(table)
}

/// `Π_{(ρ,e)} Π_{m<e} (D_ρ + (γ_ρ − m)ħ)`, the action on the `q^γ` coefficient.
fn factor_product<S: Scalar>(ring: &CohomRing<S>, factors: &[(usize, u32)], gamma: &CurveClass) -> HLaurent<S> {
    let mut out = HLaurent::one(ring);
    for &(r, e) in factors {
        let dr = ring.divisor_class(r);
        for m in 0..e as i64 {
            out = out.mul(&HLaurent::linear(ring, &dr, gamma.0[r] - m), ring);
        }
    }
    out
}

/// `□_β I`. Every returned coefficient with `ℓ ≤ cutoff` is exact, so the
/// identity is certified for source classes with `ℓ ≤ cutoff − ℓ(β)`.
pub fn apply_gkz_operator<S: Scalar>(ring: &CohomRing<S>, op: &GKZOperator, i: &NovikovSeries<S>) -> Result<NovikovSeries<S>, GkzError> {
    let trunc = i.truncation().clone();
    let degree = trunc.degree(&op.beta);
    if degree > trunc.cutoff {
        return Err(GkzError::InsufficientCutoff { beta: op.beta.clone(), degree, cutoff: trunc.cutoff });
    }
    let mut out = NovikovSeries::zero(&trunc, ring.rank());
    for (gamma, c) in i.terms() {
        let first = factor_product(ring, &op.positive, gamma).mul(c, ring);
        out.add_term(gamma.clone(), first);
        let target = gamma.add(&op.beta);
        if trunc.keeps(&target) {
            let second = factor_product(ring, &op.negative, gamma).mul(c, ring);
            out.add_term(target, second.scale(&-S::one()));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilationEntry {
    pub beta: CurveClass,
    pub degree: i64,
    /// Largest `ℓ` of source classes on which `□_β I = 0` was verified;
    /// `None` when `ℓ(β)` exceeds the cutoff.
    pub certified_up_to: Option<i64>,
    pub targets_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub cutoff: i64,
    pub entries: Vec<AnnihilationEntry>,
}

impl AnnihilationReport {
    /// Every generator was checked at a cutoff large enough to say something.
    pub fn complete(&self) -> bool {
        self.entries.iter().all(|e| e.certified_up_to.is_some())
    }
}

/// Checks `□_β I = 0` for every Mori generator.
pub fn annihilation_certificate<S: Scalar>(ring: &CohomRing<S>, md: &MoriData, cutoff: i64) -> Result<AnnihilationReport, GkzError> {
    let i = i_function(ring, md, cutoff);
    annihilation_certificate_for(ring, md, &i)
}

pub fn annihilation_certificate_for<S: Scalar>(ring: &CohomRing<S>, md: &MoriData, i: &NovikovSeries<S>) -> Result<AnnihilationReport, GkzError> {
    let cutoff = i.truncation().cutoff;
    let mut entries = Vec::new();
    for beta in md.distinct_generators() {
        let degree = md.degree(&beta);
        let op = GKZOperator::new(beta.clone());
        match apply_gkz_operator(ring, &op, i) {
            Err(GkzError::InsufficientCutoff { .. }) => {
                entries.push(AnnihilationEntry { beta, degree, certified_up_to: None, targets_checked: 0 });
            }
            Err(e) => return Err(e),
            Ok(result) => {
                if let Some((target, h)) = result.sorted_terms().first() {
                    let power = h.max_power().expect("stored terms are nonzero");
                    return Err(GkzError::AnnihilationFailure { beta, target: (*target).clone(), power });
                }
                let targets_checked = md.enumerate_effective(cutoff).len();
                entries.push(AnnihilationEntry { beta, degree, certified_up_to: Some(cutoff - degree), targets_checked });
            }
        }
    }
    Ok(AnnihilationReport { cutoff, entries })
}

/// `Π_{d_ρ>0} x_ρ^{d_ρ} − q^β Π_{d_ρ<0} x_ρ^{−d_ρ}` in the divisor variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub beta: CurveClass,
    pub lhs: Monomial,
    pub rhs: Monomial,
}

impl Relation {
    /// Renders with `x1, x2, ...` and the given label for `q^β`.
    pub fn render(&self, q_label: &str) -> String {
        let names: Vec<String> = (1..=self.lhs.0.len()).map(|i| format!("x{i}")).collect();
        let rhs = if self.rhs.is_one() { q_label.to_string() } else { format!("{q_label}*{}", self.rhs.render(&names)) };
        format!("{} - {rhs}", self.lhs.render(&names))
    }
}

pub fn extract_relation(op: &GKZOperator) -> Relation {
    let n = op.beta.0.len();
    let mut lhs = vec![0u32; n];
    let mut rhs = vec![0u32; n];
    for &(r, e) in &op.positive {
        lhs[r] = e;
    }
    for &(r, e) in &op.negative {
        rhs[r] = e;
    }
    Relation { beta: op.beta.clone(), lhs: Monomial(lhs), rhs: Monomial(rhs) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::moricone::mori_data;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn setup(name: &str) -> (CohomRing<Q>, MoriData) {
        let fan = catalog::by_name(name).unwrap();
        (CohomRing::build(&fan).unwrap(), mori_data(&fan).unwrap())
    }

    fn h_poly(ring: &CohomRing<Q>, terms: &[(i32, CohClass<Q>)]) -> HLaurent<Q> {
        let mut h = HLaurent::zero(ring.rank());
        for (p, c) in terms {
            h.add_term(*p, c.clone());
        }
        h
    }

    #[test]
    fn coefficient_examples() {
        let (ring, _) = setup("P2");
        let h = ring.divisor_class(0);
        let h2 = ring.mul(&h, &h);
        let c = gkz_coefficient(&ring, &CurveClass(vec![1, 1, 1]));
        assert_eq!(c, h_poly(&ring, &[(-3, ring.one()), (-4, h.scale(&q(-3))), (-5, h2.scale(&q(6)))]));
        assert_eq!(gkz_coefficient(&ring, &CurveClass::zero(3)), HLaurent::one(&ring));

        let (ring, _) = setup("F2");
        let c = gkz_coefficient(&ring, &CurveClass(vec![1, -2, 1, 0]));
        assert_eq!(c.coefficient(-1), ring.divisor_class(1).neg());
        assert!(c.coefficient(0).is_zero());
        // Against the defining product: (D₁+ħ)(D₃+ħ)·c = D₂(D₂−ħ).
        let d = |r: usize| ring.divisor_class(r);
        let lhs = c.mul(&HLaurent::linear(&ring, &d(0), 1), &ring).mul(&HLaurent::linear(&ring, &d(2), 1), &ring);
        let rhs = HLaurent::from_class(d(1), 0).mul(&HLaurent::linear(&ring, &d(1), -1), &ring);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn i_function_examples() {
        let (ring, md) = setup("P1");
        let i = i_function(&ring, &md, 1);
        let h = ring.divisor_class(0);
        let want = h_poly(&ring, &[(-2, ring.one()), (-3, h.scale(&q(-2)))]);
        assert_eq!(i.coefficient(&CurveClass(vec![1, 1])), want);
        assert_eq!(i.terms().count(), 2);

        for (name, fan) in catalog::all() {
            let md = mori_data(&fan).unwrap();
            if !md.semipositive {
                continue;
            }
            let ring: CohomRing<Q> = CohomRing::build(&fan).unwrap();
            let i = i_function(&ring, &md, 0);
            assert_eq!(i, NovikovSeries::one(i.truncation(), &ring), "{name}");
        }
    }

    #[test]
    fn leading_term_examples() {
        let (ring, md) = setup("F2");
        let lt = leading_terms(&ring, &i_function(&ring, &md, 2));
        assert!(lt.i0_is_one);
        assert_eq!(lt.i1[&CurveClass(vec![1, -2, 1, 0])], ring.divisor_class(1).neg());

        let (ring, md) = setup("F3");
        let lt = leading_terms(&ring, &i_function(&ring, &md, 2));
        assert!(!lt.i0_is_one);
        assert!(!lt.i0[&CurveClass(vec![1, -3, 1, 0])].is_zero());

        let (ring, md) = setup("P1");
        let lt = leading_terms(&ring, &i_function(&ring, &md, 3));
        assert!(lt.i0_is_one);
        assert!(lt.i1.is_empty());
    }

    #[test]
    fn two_point_examples() {
        let (ring, md) = setup("P2");
        let i = i_function(&ring, &md, 2);
        let table = extract_two_point_invariants(&ring, &i).unwrap();
        let one = CurveClass(vec![1, 1, 1]);
        let hh = ring.basis_index(&Monomial(vec![2])).unwrap();
        let h = ring.basis_index(&Monomial(vec![1])).unwrap();
        assert_eq!(table.get(hh, 2, &one), q(1));
        assert_eq!(table.get(h, 3, &one), q(-3));
        assert_eq!(table.get(0, 4, &one), q(6));
        assert_eq!(table.entries.keys().filter(|(b, _, _)| *b == one).count(), 3);
        assert!(table.entries.keys().all(|(b, _, _)| !b.is_zero()));
        let duals = ring.poincare_dual_basis().unwrap();
        for (beta, c) in i.terms() {
            if !beta.is_zero() {
                assert_eq!(&table.reconstruct(&ring, &duals, beta), c);
            }
        }

        let (ring, md) = setup("P1");
        let table = extract_two_point_invariants(&ring, &i_function(&ring, &md, 1)).unwrap();
        let one = CurveClass(vec![1, 1]);
        assert_eq!(table.get(1, 1, &one), q(1));
        assert_eq!(table.get(0, 2, &one), q(-2));

        let (ring, md) = setup("F3");
        let err = extract_two_point_invariants(&ring, &i_function(&ring, &md, 2)).unwrap_err();
        assert!(matches!(err, GkzError::PositiveHbarPower { power: 0, .. }));
    }

    #[test]
    fn operator_examples() {
        let (ring, md) = setup("P1");
        let i = i_function(&ring, &md, 3);
        let op = GKZOperator::new(CurveClass(vec![1, 1]));
        assert!(apply_gkz_operator(&ring, &op, &i).unwrap().is_zero());
        let zero = NovikovSeries::zero(i.truncation(), ring.rank());
        assert!(apply_gkz_operator(&ring, &op, &zero).unwrap().is_zero());

        let (ring, md) = setup("F2");
        let i = i_function(&ring, &md, 3);
        let op = GKZOperator::new(CurveClass(vec![0, 1, 0, 1]));
        assert_eq!(op.positive, vec![(1, 1), (3, 1)]);
        assert!(op.negative.is_empty());
        assert!(apply_gkz_operator(&ring, &op, &i).unwrap().is_zero());

        let i0 = i_function(&ring, &md, 0);
        assert!(matches!(apply_gkz_operator(&ring, &op, &i0), Err(GkzError::InsufficientCutoff { .. })));

        // A wrong operator is caught.
        let bad = GKZOperator::new(CurveClass(vec![0, 1, 0, 2]));
        assert!(!apply_gkz_operator(&ring, &bad, &i).unwrap().is_zero());
    }

    #[test]
    fn certificate_examples() {
        let (ring, md) = setup("P2");
        let report = annihilation_certificate(&ring, &md, 3).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].certified_up_to, Some(2));
        for name in ["F2", "F3"] {
            let (ring, md) = setup(name);
            let report = annihilation_certificate(&ring, &md, 3).unwrap();
            assert_eq!(report.entries.len(), 2);
            assert!(report.complete());
        }
    }

    #[test]
    fn relation_examples() {
        let rel = |b: Vec<i64>| extract_relation(&GKZOperator::new(CurveClass(b)));
        assert_eq!(rel(vec![1, -2, 1, 0]).render("q1"), "x1*x3 - q1*x2^2");
        assert_eq!(rel(vec![0, 1, 0, 1]).render("q2"), "x2*x4 - q2");
        assert_eq!(rel(vec![1, 1, 1]).render("q"), "x1*x2*x3 - q");
    }
}
