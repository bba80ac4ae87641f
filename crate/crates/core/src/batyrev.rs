//! The Batyrev ring with Novikov coefficients and its module structure.
//!
//! The linear relations are used to eliminate the same divisor variables as
//! in the classical ring. The deformed Stanley–Reisner generators
//! `Π_{ρ∈P} x_ρ − q^{β_P} Π_{ρ∈γ} x_ρ^{c_ρ}` are then completed to a rewriting
//! system over the truncated Novikov ring. Terms are ordered by `ℓ`-level
//! first (lower is larger) and monomial second, so every rule has a leading
//! monomial with unit coefficient and reduction terminates below the cutoff.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::cohomring::{CohomError, CohomRing};
use crate::fan::Fan;
use crate::gkz::{extract_relation, AnnihilationReport, GKZOperator, Relation};
use crate::moricone::{CurveClass, MoriData};
use crate::novikov::{NovikovError, NovikovScalar, Truncation};
use crate::poly::{render_terms, Monomial, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BatyrevError {
    #[error("completion produced {remainder}, whose coefficients are all non-units")]
    NonUnitLeadingCoefficient { remainder: String },
    #[error("standard monomials of the deformed ideal differ from the classical basis")]
    BasisMismatch,
    #[error("relation {relation} does not reduce to zero")]
    RelationNonzero { relation: String },
    #[error("theorem not applicable: not semipositive")]
    HypothesisUnmet,
    #[error(transparent)]
    Cohom(#[from] CohomError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
}

/// A polynomial in the free divisor variables with Novikov coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NPoly<S> {
    vars: usize,
    trunc: Arc<Truncation>,
    terms: BTreeMap<Monomial, NovikovScalar<S>>,
}

impl<S: Scalar> NPoly<S> {
    pub fn zero(vars: usize, trunc: &Arc<Truncation>) -> Self {
        NPoly { vars, trunc: trunc.clone(), terms: BTreeMap::new() }
    }

    pub fn term(m: Monomial, c: NovikovScalar<S>) -> Self {
        let mut p = Self::zero(m.0.len(), c.truncation());
        p.add_term(m, c);
        p
    }

    /// Lifts a classical polynomial.
    pub fn from_poly(p: &Poly<S>, trunc: &Arc<Truncation>) -> Self {
        let mut out = Self::zero(p.vars(), trunc);
        for (m, c) in p.terms() {
            out.add_term(m.clone(), NovikovScalar::constant(trunc, c.clone()));
        }
        out
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, m: Monomial, c: NovikovScalar<S>) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&m) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &NovikovScalar<S>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> NovikovScalar<S> {
        self.terms.get(m).cloned().unwrap_or_else(|| NovikovScalar::zero(&self.trunc))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&NovikovScalar::constant(&self.trunc, -S::one())))
    }

    pub fn scale(&self, k: &NovikovScalar<S>) -> Self {
        let mut out = Self::zero(self.vars, &self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(k));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(self.vars, &self.trunc);
        for (n, c) in &self.terms {
            out.add_term(n.mul(m), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars, &self.trunc);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a.mul(b));
            }
        }
        out
    }

    /// Sets `q = 0`.
    pub fn at_q_zero(&self) -> Poly<S> {
        let mut out = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.constant_term());
        }
        out
    }

    /// Largest monomial whose coefficient has a nonzero `q⁰` part.
    pub fn unit_leading(&self) -> Option<(&Monomial, &NovikovScalar<S>)> {
        self.terms.iter().rev().find(|(_, c)| c.is_unit())
    }

    /// Whether `deg x^m + (−K·β)` is the same for every term `q^β x^m`.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self
            .terms
            .iter()
            .flat_map(|(m, c)| c.terms().map(move |(b, _)| m.degree() as i64 + b.anticanonical_degree()));
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    /// Flattened rendering, monomials ascending, Novikov parts by `ℓ`.
    pub fn render(&self, names: &[String], q_label: &dyn Fn(&CurveClass) -> String) -> String {
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mono = m.render(names);
            for (class, v) in c.sorted_terms() {
                let q = if class.is_zero() { "1".to_string() } else { q_label(class) };
                let label = match (q.as_str(), mono.as_str()) {
                    ("1", _) => mono.clone(),
                    (_, "1") => q,
                    _ => format!("{q}*{mono}"),
                };
                parts.push((v.to_string(), label));
            }
        }
        render_terms(parts.into_iter())
    }
}

/// Renders a Novikov scalar as a sum of labelled monomials.
pub fn render_scalar<S: Scalar>(s: &NovikovScalar<S>, q_label: &dyn Fn(&CurveClass) -> String) -> String {
    render_terms(s.sorted_terms().into_iter().map(|(class, v)| {
        let q = if class.is_zero() { "1".to_string() } else { q_label(class) };
        (v.to_string(), q)
    }))
}

/// `lead → tail`, i.e. `lead − tail` lies in the ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<S> {
    pub lead: Monomial,
    pub tail: NPoly<S>,
    /// Whether the rule came from an S-pair rather than an input generator.
    pub from_completion: bool,
}

/// One deformed Stanley–Reisner generator.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedGenerator<S> {
    pub relation: Relation,
    /// After the linear substitution.
    pub poly: NPoly<S>,
}

#[derive(Debug, Clone)]
pub struct DeformedIdeal<S> {
    trunc: Arc<Truncation>,
    vars: usize,
    names: Vec<String>,
    substitution: Vec<Poly<S>>,
    generators: Vec<DeformedGenerator<S>>,
    rules: Vec<Rule<S>>,
    basis: Vec<Monomial>,
}

/// Builds the deformed ideal and completes it to a rewriting system.
pub fn build_deformed_ideal<S: Scalar>(fan: &Fan, md: &MoriData, ring: &CohomRing<S>, cutoff: i64) -> Result<DeformedIdeal<S>, BatyrevError> {
    let trunc = Truncation::new(md, cutoff);
    let vars = ring.free_rays().len();
    let substitution: Vec<Poly<S>> = (0..fan.num_rays()).map(|r| ring.substitution(r).clone()).collect();
    let mut ideal = DeformedIdeal {
        trunc,
        vars,
        names: ring.variable_names().to_vec(),
        substitution,
        generators: Vec::new(),
        rules: Vec::new(),
        basis: ring.basis().to_vec(),
    };
    for g in &md.generators {
        let relation = extract_relation(&GKZOperator::new(g.class.clone()));
        let poly = ideal.relation_poly(&relation);
        ideal.generators.push(DeformedGenerator { relation, poly });
    }
    ideal.complete()?;

    let leads: Vec<&Monomial> = ideal.rules.iter().map(|r| &r.lead).collect();
    for d in 0..=ring.dim() as u32 + 1 {
        for m in Monomial::all_of_degree(vars, d) {
            let standard = !leads.iter().any(|l| l.divides(&m));
            if standard != ideal.basis.contains(&m) {
                return Err(BatyrevError::BasisMismatch);
            }
        }
    }
    Ok(ideal)
}

impl<S: Scalar> DeformedIdeal<S> {
    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn cutoff(&self) -> i64 {
        self.trunc.cutoff
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[DeformedGenerator<S>] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    /// Number of rules the completion added beyond the input generators.
    pub fn added_by_completion(&self) -> usize {
        self.rules.iter().filter(|r| r.from_completion).count()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// The image of a monomial in the ray variables.
    pub fn substitute(&self, rays: &Monomial) -> NPoly<S> {
        let mut p = Poly::constant(self.vars, S::one());
        for (r, &e) in rays.0.iter().enumerate() {
            p = p.mul(&self.substitution[r].pow(e));
        }
        NPoly::from_poly(&p, &self.trunc)
    }

    /// The image of `x_ρ`.
    pub fn divisor(&self, ray: usize) -> NPoly<S> {
        NPoly::from_poly(&self.substitution[ray], &self.trunc)
    }

    /// `Π x^{lhs} − q^β Π x^{rhs}` after substitution.
    pub fn relation_poly(&self, rel: &Relation) -> NPoly<S> {
        let q = NovikovScalar::monomial(&self.trunc, rel.beta.clone(), S::one());
        self.substitute(&rel.lhs).sub(&self.substitute(&rel.rhs).scale(&q))
    }

    /// Reduces modulo the rules; terms are rewritten lowest level first and,
    /// within a level, largest monomial first.
    pub fn reduce(&self, p: &NPoly<S>) -> NPoly<S> {
        reduce_with(&self.rules, p)
    }

    /// The basis expansion of `p` in the quotient.
    pub fn normal_form(&self, p: &NPoly<S>) -> Vec<NovikovScalar<S>> {
        let r = self.reduce(p);
        let mut out = vec![NovikovScalar::zero(&self.trunc); self.basis.len()];
        for (m, c) in r.terms() {
            let i = self.basis.iter().position(|b| b == m).expect("remainder is standard");
            out[i] = c.clone();
        }
        out
    }

    /// `Σ_b v_b T_b`.
    pub fn from_basis(&self, v: &[NovikovScalar<S>]) -> NPoly<S> {
        let mut out = NPoly::zero(self.vars, &self.trunc);
        for (m, c) in self.basis.iter().zip(v) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn complete(&mut self) -> Result<(), BatyrevError> {
        let mut queue: VecDeque<(NPoly<S>, bool)> = self.generators.iter().map(|g| (g.poly.clone(), false)).collect();
        let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
        let mut pending: Vec<NPoly<S>> = Vec::new();
        loop {
            let (p, from_completion) = if let Some(item) = queue.pop_front() {
                item
            } else if let Some((i, j)) = pairs.pop_front() {
                (self.s_poly(i, j), true)
            } else {
                break;
            };
            let r = self.reduce(&p);
            if r.is_zero() {
                continue;
            }
            match make_rule(&r, from_completion) {
                Some(rule) => {
                    let k = self.rules.len();
                    pairs.extend((0..k).map(|i| (i, k)));
                    self.rules.push(rule);
                    queue.extend(pending.drain(..).map(|p| (p, true)));
                }
                None => pending.push(r),
            }
        }
        for p in pending {
            let r = self.reduce(&p);
            if !r.is_zero() {
                let remainder = r.render(&self.names, &|c| format!("q^{c}"));
                return Err(BatyrevError::NonUnitLeadingCoefficient { remainder });
            }
        }
        self.rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        Ok(())
    }

    fn s_poly(&self, i: usize, j: usize) -> NPoly<S> {
        let (a, b) = (&self.rules[i], &self.rules[j]);
        let l = a.lead.lcm(&b.lead);
        b.tail.mul_monomial(&b.lead.quotient_of(&l)).sub(&a.tail.mul_monomial(&a.lead.quotient_of(&l)))
    }
}

fn make_rule<S: Scalar>(r: &NPoly<S>, from_completion: bool) -> Option<Rule<S>> {
    let (lead, u) = r.unit_leading()?;
    let lead = lead.clone();
    let inv = u.invert_unit().expect("unit coefficient");
    let monic = r.scale(&inv);
    let mut tail = NPoly::zero(r.vars(), &r.trunc);
    for (m, c) in monic.terms() {
        if *m != lead {
            tail.add_term(m.clone(), c.neg());
        }
    }
    // The lead coefficient is exactly 1 after scaling.
    debug_assert!(monic.coefficient(&lead).sub(&NovikovScalar::one(&r.trunc)).is_zero());
    Some(Rule { lead, tail, from_completion })
}

fn reduce_with<S: Scalar>(rules: &[Rule<S>], p: &NPoly<S>) -> NPoly<S> {
    let trunc = p.trunc.clone();
    // (level, class) → monomial → coefficient
    let mut layers: BTreeMap<(i64, CurveClass), BTreeMap<Monomial, S>> = BTreeMap::new();
    let insert = |layers: &mut BTreeMap<(i64, CurveClass), BTreeMap<Monomial, S>>, class: CurveClass, m: Monomial, v: S| {
        if v.is_zero() || !trunc.keeps(&class) {
            return;
        }
        let layer = layers.entry((trunc.degree(&class), class)).or_default();
        let merged = match layer.remove(&m) {
            Some(prev) => prev + v,
            None => v,
        };
        if !merged.is_zero() {
            layer.insert(m, merged);
        }
    };
    for (m, c) in p.terms() {
        for (class, v) in c.terms() {
            insert(&mut layers, class.clone(), m.clone(), v.clone());
        }
    }
    loop {
        let mut hit = None;
        'search: for (key, layer) in &layers {
            for m in layer.keys().rev() {
                if let Some(rule) = rules.iter().find(|r| r.lead.divides(m)) {
                    hit = Some((key.clone(), m.clone(), rule));
                    break 'search;
                }
            }
        }
        let Some((key, m, rule)) = hit else { break };
        let layer = layers.get_mut(&key).expect("layer exists");
        let v = layer.remove(&m).expect("term exists");
        if layer.is_empty() {
            layers.remove(&key);
        }
        let shift = rule.lead.quotient_of(&m);
        for (t, s) in rule.tail.terms() {
            for (class, w) in s.terms() {
                insert(&mut layers, key.1.add(class), shift.mul(t), v.clone() * w.clone());
            }
        }
    }
    let mut out = NPoly::zero(p.vars, &trunc);
    for ((_, class), layer) in layers {
        for (m, v) in layer {
            out.add_term(m, NovikovScalar::monomial(&trunc, class.clone(), v));
        }
    }
    out
}

/// A square matrix over the truncated Novikov ring, indexed `[row][column]`.
pub type NMatrix<S> = Vec<Vec<NovikovScalar<S>>>;

pub fn matrix_mul<S: Scalar>(a: &NMatrix<S>, b: &NMatrix<S>) -> NMatrix<S> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let trunc = a[0][0].truncation().clone();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(NovikovScalar::zero(&trunc), |s, k| s.add(&a[i][k].mul(&b[k][j]))))
                .collect()
        })
        .collect()
}

fn matrix_apply<S: Scalar>(a: &NMatrix<S>, v: &[NovikovScalar<S>]) -> Vec<NovikovScalar<S>> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(NovikovScalar::zero(v[0].truncation()), |s, (x, y)| s.add(&x.mul(y))))
        .collect()
}

pub fn matrix_at_q_zero<S: Scalar>(a: &NMatrix<S>) -> Vec<Vec<S>> {
    a.iter().map(|row| row.iter().map(|x| x.at_q_zero()).collect()).collect()
}

/// Determinant over the truncated local ring: eliminate on unit pivots and
/// expand along the column when none is available.
pub fn determinant<S: Scalar>(m: &NMatrix<S>, trunc: &Arc<Truncation>) -> NovikovScalar<S> {
    let n = m.len();
    if n == 0 {
        return NovikovScalar::one(trunc);
    }
    if let Some(p) = (0..n).find(|&i| m[i][0].is_unit()) {
        let inv = m[p][0].invert_unit().expect("unit pivot");
        let mut minor = Vec::with_capacity(n - 1);
        for i in (0..n).filter(|&i| i != p) {
            let f = m[i][0].mul(&inv);
            minor.push((1..n).map(|j| m[i][j].sub(&f.mul(&m[p][j]))).collect());
        }
        let sign = if p % 2 == 0 { S::one() } else { -S::one() };
        return m[p][0].mul(&determinant(&minor, trunc)).scale(&sign);
    }
    let mut total = NovikovScalar::zero(trunc);
    for i in 0..n {
        if m[i][0].is_zero() {
            continue;
        }
        let minor: NMatrix<S> = (0..n).filter(|&k| k != i).map(|k| m[k][1..].to_vec()).collect();
        let term = m[i][0].mul(&determinant(&minor, trunc));
        total = if i % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// Multiplication by each divisor variable on the classical basis.
#[derive(Debug, Clone)]
pub struct BatyrevModule<S> {
    pub basis: Vec<Monomial>,
    /// `matrices[ρ][b][a]` is the coefficient of `T_b` in `x_ρ · T_a`.
    pub matrices: Vec<NMatrix<S>>,
}

pub fn module_matrices<S: Scalar>(ideal: &DeformedIdeal<S>) -> BatyrevModule<S> {
    let n = ideal.basis.len();
    let rays = ideal.substitution.len();
    let matrices = (0..rays)
        .map(|r| {
            let x = ideal.divisor(r);
            let cols: Vec<Vec<NovikovScalar<S>>> = ideal
                .basis
                .iter()
                .map(|a| ideal.normal_form(&x.mul_monomial(a)))
                .collect();
            (0..n).map(|b| (0..n).map(|a| cols[a][b].clone()).collect()).collect()
        })
        .collect();
    BatyrevModule { basis: ideal.basis.clone(), matrices }
}

impl<S: Scalar> BatyrevModule<S> {
    /// Pairs `(ρ, σ)` with `M_ρ M_σ ≠ M_σ M_ρ`.
    pub fn noncommuting_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.matrices.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if matrix_mul(&self.matrices[i], &self.matrices[j]) != matrix_mul(&self.matrices[j], &self.matrices[i]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Rays whose matrix at `q = 0` differs from classical cup product.
    pub fn classical_mismatches(&self, ring: &CohomRing<S>) -> Vec<usize> {
        (0..self.matrices.len())
            .filter(|&r| matrix_at_q_zero(&self.matrices[r]) != ring.cup_matrix(&ring.divisor_class(r)))
            .collect()
    }

    /// Whether every entry `q^β` in `M_ρ[b][a]` has `deg T_b + (−K·β) = deg T_a + 1`.
    pub fn is_graded(&self) -> bool {
        self.matrices.iter().all(|m| {
            m.iter().enumerate().all(|(b, row)| {
                row.iter().enumerate().all(|(a, entry)| {
                    entry.terms().all(|(class, _)| {
                        self.basis[b].degree() as i64 + class.anticanonical_degree() == self.basis[a].degree() as i64 + 1
                    })
                })
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationOutcome {
    pub relation: Relation,
    pub vanishes: bool,
}

/// Normal-forms each relation; all must vanish.
pub fn relation_check<S: Scalar>(ideal: &DeformedIdeal<S>, relations: &[Relation]) -> Result<Vec<RelationOutcome>, BatyrevError> {
    let mut out = Vec::new();
    for rel in relations {
        let r = ideal.reduce(&ideal.relation_poly(rel));
        if !r.is_zero() {
            return Err(BatyrevError::RelationNonzero { relation: rel.render(&format!("q^{}", rel.beta)) });
        }
        out.push(RelationOutcome { relation: rel.clone(), vanishes: true });
    }
    Ok(out)
}

/// Whether every linear form `Σ_ρ ⟨m, u_ρ⟩ x_ρ` normal-forms to zero.
pub fn linear_forms_vanish<S: Scalar>(fan: &Fan, ideal: &DeformedIdeal<S>) -> bool {
    (0..fan.dim()).all(|i| {
        let mut p = NPoly::zero(ideal.vars, &ideal.trunc);
        for r in 0..fan.num_rays() {
            let c = NovikovScalar::constant(&ideal.trunc, S::from_i64(fan.ray(r)[i]));
            p = p.add(&ideal.divisor(r).scale(&c));
        }
        ideal.normal_form(&p).iter().all(|c| c.is_zero())
    })
}

#[derive(Debug, Clone)]
pub struct IsoCertificate<S> {
    /// Column `a` is the action of the basis monomial `T_a` on `1`.
    pub phi: NMatrix<S>,
    pub determinant: NovikovScalar<S>,
    /// `det φ = 1 + (terms with ℓ > 0)`.
    pub determinant_ok: bool,
    pub relations: Vec<RelationOutcome>,
    pub annihilation_complete: bool,
    pub certified: bool,
}

/// Checks that the quantum module and the Batyrev module agree: the map
/// sending a monomial in the free variables to its action on `1` has unit
/// determinant, the box-operator relations vanish in the Batyrev ring, and
/// the I-function is annihilated.
pub fn certify_isomorphism<S: Scalar>(
    ideal: &DeformedIdeal<S>,
    module: &BatyrevModule<S>,
    md: &MoriData,
    annihilation: &AnnihilationReport,
) -> Result<IsoCertificate<S>, BatyrevError> {
    if !md.semipositive {
        return Err(BatyrevError::HypothesisUnmet);
    }
    let relations: Vec<Relation> = md.distinct_generators().into_iter().map(|b| extract_relation(&GKZOperator::new(b))).collect();
    let relations = relation_check(ideal, &relations)?;

    let trunc = ideal.truncation();
    let n = module.basis.len();
    let free = free_ray_indices(ideal);
    let mut e0 = vec![NovikovScalar::zero(trunc); n];
    e0[0] = NovikovScalar::one(trunc);
    let cols: Vec<Vec<NovikovScalar<S>>> = module
        .basis
        .iter()
        .map(|m| {
            let mut v = e0.clone();
            for (k, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = matrix_apply(&module.matrices[free[k]], &v);
                }
            }
            v
        })
        .collect();
    let phi: NMatrix<S> = (0..n).map(|b| (0..n).map(|a| cols[a][b].clone()).collect()).collect();
    let det = determinant(&phi, trunc);
    let determinant_ok = det.constant_term() == S::one();
    let annihilation_complete = annihilation.complete();
    let certified = determinant_ok && relations.iter().all(|r| r.vanishes) && annihilation_complete;
    Ok(IsoCertificate { phi, determinant: det, determinant_ok, relations, annihilation_complete, certified })
}

/// Ray index of each free variable: the ray whose substitution is that variable.
fn free_ray_indices<S: Scalar>(ideal: &DeformedIdeal<S>) -> Vec<usize> {
    (0..ideal.vars)
        .map(|k| {
            let v = Poly::var(ideal.vars, k);
            ideal.substitution.iter().position(|p| *p == v).expect("free variable is a ray")
        })
        .collect()
}
