//! Command surface for toriq: fan ingestion, report assembly and rendering.
//!
//! Each `run_*` function returns a [`Report`] together with the process
//! exit status it implies. Reports serialize to JSON with a fixed field
//! order, or render to plain text via [`text::render`].

pub mod ingest;
pub mod text;

use serde::Serialize;
use toriq::batyrev::{self, BatyrevError};
use toriq::gkz::{self, AnnihilationReport};
use toriq::moricone::{self, SectionKind};
use toriq::poly::{render_terms, Monomial};
use toriq::{CohClass, CohomRing, CurveClass, Fan, MoriData, Rational};

pub use ingest::{ingest, IngestError, Input};

pub const SCHEMA: &str = "toriq/1";

/// Exit statuses shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    CertificateFailure = 1,
    InputError = 2,
    HypothesisUnmet = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn worst(self, other: Status) -> Status {
        // Hypothesis failures outrank certificate failures: they explain them.
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::CertificateFailure => 1,
            Status::HypothesisUnmet => 2,
            Status::InputError => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

/// A sub-result that either succeeded, failed, or was skipped for a reason.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Outcome<T> {
    Ok(T),
    Failed(String),
    NotApplicable(String),
}

impl<T> Outcome<T> {
    pub fn ok(&self) -> Option<&T> {
        match self {
            Outcome::Ok(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub fan: FanSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<Analysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ifunction: Option<IFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FanSummary {
    pub name: String,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    /// 1-based ray indices.
    pub max_cones: Vec<Vec<usize>>,
    pub smooth: bool,
    pub complete: bool,
}

/// A Novikov monomial `q^β` with its labels.
#[derive(Debug, Clone, Serialize)]
pub struct QLabel {
    pub beta: Vec<i64>,
    pub vector: String,
    /// `q1^a*q2^b` when the Mori cone is simplicial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub primitive_collections: Outcome<Vec<CollectionReport>>,
    pub mori: Outcome<MoriReport>,
    pub cohomology: Outcome<CohomologyReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollectionReport {
    pub rays: Vec<usize>,
    pub gamma: Vec<usize>,
    /// `c_ρ` for the rays of `gamma`.
    pub coefficients: Vec<i64>,
    pub relation: String,
    pub class: Vec<i64>,
    pub anticanonical_degree: i64,
    pub witness: Outcome<WitnessReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub degrees: Vec<i64>,
    pub sections: Vec<&'static str>,
    pub ambient_cone: Vec<usize>,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MoriReport {
    pub picard_rank: usize,
    pub generators: Vec<GeneratorReport>,
    pub simplicial: bool,
    pub functional: Vec<i64>,
    pub semipositive: bool,
    pub fano: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorReport {
    pub q: QLabel,
    pub degree: i64,
    pub anticanonical_degree: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub rank: usize,
    pub graded_dimensions: Vec<usize>,
    pub variables: Vec<String>,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IFunction {
    pub cutoff: i64,
    pub functional: Vec<i64>,
    pub semipositive: bool,
    pub terms: Vec<ITerm>,
    pub i0_is_one: bool,
    pub i0: Vec<ClassEntry>,
    pub i1: Vec<ClassEntry>,
    pub two_point: Outcome<Vec<TwoPointEntry>>,
    pub annihilation: Outcome<AnnihilationSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ITerm {
    pub q: QLabel,
    pub degree: i64,
    /// `(power of ħ, class)`, highest power first.
    pub coefficients: Vec<(i32, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub q: QLabel,
    pub class: String,
}

/// `⟨T ψ^k, 1⟩_{0,2,β}`.
#[derive(Debug, Clone, Serialize)]
pub struct TwoPointEntry {
    pub q: QLabel,
    pub insertion: String,
    pub psi: u32,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilationSummary {
    pub cutoff: i64,
    pub complete: bool,
    pub entries: Vec<AnnihilationLine>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilationLine {
    pub q: QLabel,
    pub degree: i64,
    pub certified_up_to: Option<i64>,
    pub targets_checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certification {
    pub cutoff: i64,
    pub semipositive: bool,
    pub presentation: Outcome<Presentation>,
    pub module: Outcome<ModuleReport>,
    pub certificate: Outcome<CertificateReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Presentation {
    pub variables: Vec<String>,
    pub generators: Vec<GeneratorPoly>,
    pub rules: Vec<String>,
    pub added_by_completion: usize,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorPoly {
    pub relation: String,
    pub substituted: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleReport {
    pub products: Vec<Product>,
    /// `matrices[ρ][b][a]`: coefficient of the `b`-th basis element in `x_ρ ⋆ T_a`.
    pub matrices: Vec<Vec<Vec<String>>>,
    pub commutative: bool,
    pub classical_limit: bool,
    pub graded: bool,
    pub linear_forms_vanish: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Product {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub certified: bool,
    pub determinant: String,
    pub determinant_ok: bool,
    pub relations: Vec<RelationLine>,
    pub annihilation_complete: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationLine {
    pub relation: String,
    pub vanishes: bool,
}

/// Labels Novikov monomials, in generator coordinates when possible.
pub struct Labeller<'a> {
    md: &'a MoriData,
    simplicial: bool,
}

impl<'a> Labeller<'a> {
    pub fn new(md: &'a MoriData) -> Self {
        Labeller { md, simplicial: md.is_simplicial() }
    }

    pub fn vector(&self, c: &CurveClass) -> String {
        let parts: Vec<String> = c.0.iter().map(|x| x.to_string()).collect();
        format!("q^({})", parts.join(","))
    }

    pub fn generators(&self, c: &CurveClass) -> Option<String> {
        if !self.simplicial {
            return None;
        }
        let coords = self.md.generator_coordinates(c)?;
        let rank = coords.len();
        let mut parts = Vec::new();
        for (i, x) in coords.iter().enumerate() {
            if !x.is_integer() || *x < Rational::from_integer(0.into()) {
                return None;
            }
            let e = x.to_integer();
            let name = if rank == 1 { "q".to_string() } else { format!("q{}", i + 1) };
            if e == 1.into() {
                parts.push(name);
            } else if e != 0.into() {
                parts.push(format!("{name}^{e}"));
            }
        }
        Some(if parts.is_empty() { "1".to_string() } else { parts.join("*") })
    }

    /// The preferred single label.
    pub fn short(&self, c: &CurveClass) -> String {
        self.generators(c).unwrap_or_else(|| self.vector(c))
    }

    pub fn label(&self, c: &CurveClass) -> QLabel {
        QLabel { beta: c.0.clone(), vector: self.vector(c), generators: self.generators(c) }
    }
}

fn one_based(rays: &[usize]) -> Vec<usize> {
    rays.iter().map(|r| r + 1).collect()
}

/// Free-variable names; a lone generator is written `H`.
fn display_names(ring: &CohomRing) -> Vec<String> {
    if ring.variable_names().len() == 1 {
        vec!["H".to_string()]
    } else {
        ring.variable_names().to_vec()
    }
}

fn render_class(ring: &CohomRing, names: &[String], c: &CohClass) -> String {
    render_terms(
        c.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, v)| !is_zero(v))
            .map(|(i, v)| (v.to_string(), ring.basis()[i].render(names))),
    )
}

fn is_zero(v: &Rational) -> bool {
    *v.numer() == 0.into()
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    m.render(names)
}

fn fan_summary(input: &Input) -> FanSummary {
    let fan = &input.fan;
    FanSummary {
        name: input.name.clone(),
        dim: fan.dim(),
        rays: fan.rays().to_vec(),
        max_cones: fan.max_cones().iter().map(|c| one_based(c.rays())).collect(),
        smooth: fan.validate_smooth().is_ok(),
        complete: fan.validate_complete().is_ok(),
    }
}

fn relation_text(pc: &moricone::PrimitiveCollection) -> String {
    let lhs: Vec<String> = pc.rays.iter().map(|r| format!("u{}", r + 1)).collect();
    let rhs = render_terms(pc.gamma.rays().iter().zip(&pc.coefficients).map(|(r, c)| (c.to_string(), format!("u{}", r + 1))));
    format!("{} = {rhs}", lhs.join(" + "))
}

fn section_name(s: SectionKind) -> &'static str {
    match s {
        SectionKind::Linear => "linear",
        SectionKind::Zero => "zero",
        SectionKind::Constant => "constant",
    }
}

fn collections_report(fan: &Fan) -> Outcome<Vec<CollectionReport>> {
    let pcs = match moricone::primitive_collections(fan) {
        Ok(p) => p,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let mut out = Vec::new();
    for pc in &pcs {
        let class = match moricone::primitive_class(fan, pc) {
            Ok(c) => c.class,
            Err(e) => return Outcome::Failed(e.to_string()),
        };
        let witness = match moricone::effectivity_witness(fan, pc) {
            Ok(w) => Outcome::Ok(WitnessReport {
                degrees: w.degrees,
                sections: w.sections.into_iter().map(section_name).collect(),
                ambient_cone: one_based(w.ambient_cone.rays()),
                nondegenerate: w.nondegenerate,
            }),
            Err(e) => Outcome::Failed(e.to_string()),
        };
        out.push(CollectionReport {
            rays: one_based(&pc.rays),
            gamma: one_based(pc.gamma.rays()),
            coefficients: pc.coefficients.clone(),
            relation: relation_text(pc),
            anticanonical_degree: class.anticanonical_degree(),
            class: class.0,
            witness,
        });
    }
    Outcome::Ok(out)
}

fn mori_report(md: &MoriData) -> MoriReport {
    let labels = Labeller::new(md);
    MoriReport {
        picard_rank: md.picard_rank(),
        generators: md
            .distinct_generators()
            .iter()
            .map(|g| GeneratorReport { q: labels.label(g), degree: md.degree(g), anticanonical_degree: g.anticanonical_degree() })
            .collect(),
        simplicial: md.is_simplicial(),
        functional: md.functional.clone(),
        semipositive: md.semipositive,
        fano: md.fano,
    }
}

fn cohomology_report(ring: &CohomRing) -> CohomologyReport {
    let names = display_names(ring);
    CohomologyReport {
        rank: ring.rank(),
        graded_dimensions: ring.graded_dimensions(),
        basis: ring.basis().iter().map(|m| render_monomial(m, &names)).collect(),
        variables: names,
    }
}

fn base_report(command: &'static str, input: &Input) -> Report {
    Report { schema: SCHEMA, command, fan: fan_summary(input), analysis: None, ifunction: None, certification: None }
}

/// Combinatorics, Mori cone and cohomology of a fan.
pub fn run_analyze(input: &Input) -> (Report, Status) {
    let fan = &input.fan;
    let primitive_collections = collections_report(fan);
    let mori = match moricone::mori_data(fan) {
        Ok(md) => Outcome::Ok(mori_report(&md)),
        Err(e) => Outcome::Failed(e.to_string()),
    };
    let cohomology = match CohomRing::build(fan) {
        Ok(ring) => Outcome::Ok(cohomology_report(&ring)),
        Err(e) => Outcome::Failed(e.to_string()),
    };
    let failed = primitive_collections.ok().is_none() || mori.ok().is_none() || cohomology.ok().is_none();
    let mut report = base_report("analyze", input);
    report.analysis = Some(Analysis { primitive_collections, mori, cohomology });
    (report, if failed { Status::CertificateFailure } else { Status::Ok })
}

fn setup(fan: &Fan) -> Result<(MoriData, CohomRing), String> {
    let md = moricone::mori_data(fan).map_err(|e| e.to_string())?;
    let ring = CohomRing::build(fan).map_err(|e| e.to_string())?;
    Ok((md, ring))
}

fn annihilation_summary(report: &AnnihilationReport, labels: &Labeller) -> AnnihilationSummary {
    AnnihilationSummary {
        cutoff: report.cutoff,
        complete: report.complete(),
        entries: report
            .entries
            .iter()
            .map(|e| AnnihilationLine {
                q: labels.label(&e.beta),
                degree: e.degree,
                certified_up_to: e.certified_up_to,
                targets_checked: e.targets_checked,
            })
            .collect(),
    }
}

fn insertion_text(basis: &Monomial, names: &[String], psi: u32) -> String {
    let t = render_monomial(basis, names);
    match (t.as_str(), psi) {
        ("1", 0) => "1".to_string(),
        ("1", k) => format!("ψ^{k}"),
        (_, 0) => t,
        (_, k) => format!("{t}·ψ^{k}"),
    }
}

/// The I-function, its leading terms, two-point invariants and the
/// annihilation check.
pub fn run_ifunction(input: &Input, cutoff: i64) -> (Report, Status) {
    let mut report = base_report("ifunction", input);
    let (md, ring) = match setup(&input.fan) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{e}");
            return (report, Status::CertificateFailure);
        }
    };
    let labels = Labeller::new(&md);
    let names = display_names(&ring);
    let i = gkz::i_function(&ring, &md, cutoff);

    let terms = i
        .sorted_terms()
        .into_iter()
        .map(|(beta, h)| ITerm {
            q: labels.label(beta),
            degree: md.degree(beta),
            coefficients: h.terms().rev().map(|(p, c)| (*p, render_class(&ring, &names, c))).collect(),
        })
        .collect();

    let lead = gkz::leading_terms(&ring, &i);
    let entries = |m: &std::collections::BTreeMap<CurveClass, CohClass>| -> Vec<ClassEntry> {
        let mut v: Vec<(&CurveClass, &CohClass)> = m.iter().collect();
        v.sort_by_key(|(b, _)| (md.degree(b), (*b).clone()));
        v.into_iter().map(|(b, c)| ClassEntry { q: labels.label(b), class: render_class(&ring, &names, c) }).collect()
    };
    let i0 = entries(&lead.i0);
    let i1 = entries(&lead.i1);

    let two_point = if !md.semipositive {
        Outcome::NotApplicable("not semipositive".to_string())
    } else {
        match gkz::extract_two_point_invariants(&ring, &i) {
            Ok(table) => {
                let mut rows: Vec<_> = table.entries.iter().collect();
                rows.sort_by_key(|((b, a, k), _)| (md.degree(b), b.clone(), *a, *k));
                Outcome::Ok(
                    rows.into_iter()
                        .map(|((b, a, k), v)| TwoPointEntry {
                            q: labels.label(b),
                            insertion: insertion_text(&ring.basis()[*a], &names, *k),
                            psi: *k,
                            value: v.to_string(),
                        })
                        .collect(),
                )
            }
            Err(e) => Outcome::Failed(e.to_string()),
        }
    };

    let annihilation = match gkz::annihilation_certificate_for(&ring, &md, &i) {
        Ok(r) => Outcome::Ok(annihilation_summary(&r, &labels)),
        Err(e) => Outcome::Failed(e.to_string()),
    };

    let mut status = Status::Ok;
    if annihilation.ok().is_none_or(|a| !a.complete) || matches!(two_point, Outcome::Failed(_)) {
        status = status.worst(Status::CertificateFailure);
    }
    if !md.semipositive {
        status = status.worst(Status::HypothesisUnmet);
    }
    report.ifunction = Some(IFunction {
        cutoff,
        functional: md.functional.clone(),
        semipositive: md.semipositive,
        terms,
        i0_is_one: lead.i0_is_one,
        i0,
        i1,
        two_point,
        annihilation,
    });
    (report, status)
}

/// The deformed presentation, its module structure and the isomorphism
/// certificate.
pub fn run_certify(input: &Input, cutoff: i64) -> (Report, Status) {
    let mut report = base_report("certify", input);
    let fan = &input.fan;
    let (md, ring) = match setup(fan) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{e}");
            return (report, Status::CertificateFailure);
        }
    };
    let labels = Labeller::new(&md);
    let names = display_names(&ring);
    let q = |c: &CurveClass| labels.short(c);

    let ideal = batyrev::build_deformed_ideal(fan, &md, &ring, cutoff);
    let presentation = match &ideal {
        Ok(ideal) => Outcome::Ok(Presentation {
            variables: names.clone(),
            generators: ideal
                .generators()
                .iter()
                .map(|g| GeneratorPoly { relation: g.relation.render(&q(&g.relation.beta)), substituted: g.poly.render(&names, &q) })
                .collect(),
            rules: ideal.rules().iter().map(|r| format!("{} -> {}", r.lead.render(&names), r.tail.render(&names, &q))).collect(),
            added_by_completion: ideal.added_by_completion(),
            basis: ideal.basis().iter().map(|m| m.render(&names)).collect(),
        }),
        Err(e) => Outcome::Failed(e.to_string()),
    };

    let module = ideal.as_ref().ok().map(batyrev::module_matrices);
    let module_report = match (&ideal, &module) {
        (Ok(ideal), Some(module)) => {
            let mut products = Vec::new();
            for (k, &f) in ring.free_rays().iter().enumerate() {
                let m = &module.matrices[f];
                for (a, t) in module.basis.iter().enumerate() {
                    let col: Vec<_> = m.iter().map(|row| row[a].clone()).collect();
                    products.push(Product {
                        lhs: format!("{}⋆{}", names[k], t.render(&names)),
                        rhs: ideal.from_basis(&col).render(&names, &q),
                    });
                }
            }
            let matrices = module
                .matrices
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(|e| batyrev::render_scalar(e, &q)).collect()).collect())
                .collect();
            Outcome::Ok(ModuleReport {
                products,
                matrices,
                commutative: module.noncommuting_pairs().is_empty(),
                classical_limit: module.classical_mismatches(&ring).is_empty(),
                graded: module.is_graded(),
                linear_forms_vanish: batyrev::linear_forms_vanish(fan, ideal),
            })
        }
        (Err(e), _) => Outcome::Failed(e.to_string()),
        _ => Outcome::Failed("module unavailable".to_string()),
    };

    let certificate = match (&ideal, &module) {
        _ if !md.semipositive => Outcome::NotApplicable(BatyrevError::HypothesisUnmet.to_string()),
        (Ok(ideal), Some(module)) => match gkz::annihilation_certificate(&ring, &md, cutoff) {
            Err(e) => Outcome::Failed(e.to_string()),
            Ok(ann) => match batyrev::certify_isomorphism(ideal, module, &md, &ann) {
                Ok(c) => Outcome::Ok(CertificateReport {
                    certified: c.certified,
                    determinant: batyrev::render_scalar(&c.determinant, &q),
                    determinant_ok: c.determinant_ok,
                    relations: c
                        .relations
                        .iter()
                        .map(|r| RelationLine { relation: r.relation.render(&q(&r.relation.beta)), vanishes: r.vanishes })
                        .collect(),
                    annihilation_complete: c.annihilation_complete,
                }),
                Err(BatyrevError::HypothesisUnmet) => Outcome::NotApplicable(BatyrevError::HypothesisUnmet.to_string()),
                Err(e) => Outcome::Failed(e.to_string()),
            },
        },
        (Err(e), _) => Outcome::Failed(e.to_string()),
        _ => Outcome::Failed("module unavailable".to_string()),
    };

    let module_ok = module_report
        .ok()
        .is_some_and(|m| m.commutative && m.classical_limit && m.graded && m.linear_forms_vanish);
    let status = match &certificate {
        Outcome::NotApplicable(_) => Status::HypothesisUnmet,
        Outcome::Ok(c) if c.certified && module_ok => Status::Ok,
        _ => Status::CertificateFailure,
    };
    report.certification = Some(Certification {
        cutoff,
        semipositive: md.semipositive,
        presentation,
        module: module_report,
        certificate,
    });
    (report, status)
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
