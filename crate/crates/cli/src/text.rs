//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::{Analysis, Certification, IFunction, Outcome, QLabel, Report};

fn q_text(q: &QLabel) -> String {
    match &q.generators {
        Some(g) => format!("{g} = {}", q.vector),
        None => q.vector.clone(),
    }
}

fn q_short(q: &QLabel) -> &str {
    q.generators.as_deref().unwrap_or(&q.vector)
}

fn cones(cs: &[Vec<usize>]) -> String {
    let parts: Vec<String> = cs.iter().map(|c| format!("{{{}}}", join(c, ","))).collect();
    parts.join(" ")
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn vector(xs: &[i64]) -> String {
    format!("({})", join(xs, ","))
}

/// Writes the body of an outcome, or a one-line status when there is none.
fn outcome<T>(out: &mut String, title: &str, o: &Outcome<T>, body: impl FnOnce(&mut String, &T)) {
    match o {
        Outcome::Ok(t) => {
            let _ = writeln!(out, "{title}:");
            body(out, t);
        }
        Outcome::Failed(e) => {
            let _ = writeln!(out, "{title}: FAILED: {e}");
        }
        Outcome::NotApplicable(r) => {
            let _ = writeln!(out, "{title}: {r}");
        }
    }
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    let f = &report.fan;
    let _ = writeln!(out, "fan {} (dim {}, {} rays, {} maximal cones)", f.name, f.dim, f.rays.len(), f.max_cones.len());
    let rays: Vec<String> = f.rays.iter().map(|r| vector(r)).collect();
    let _ = writeln!(out, "  rays: {}", rays.join(" "));
    let _ = writeln!(out, "  cones: {}", cones(&f.max_cones));
    let _ = writeln!(out, "  smooth: {}, complete: {}", f.smooth, f.complete);
    if let Some(a) = &report.analysis {
        analysis(&mut out, a);
    }
    if let Some(i) = &report.ifunction {
        ifunction(&mut out, i);
    }
    if let Some(c) = &report.certification {
        certification(&mut out, c);
    }
    out
}

fn analysis(out: &mut String, a: &Analysis) {
    outcome(out, "primitive collections", &a.primitive_collections, |out, pcs| {
        for pc in pcs {
            let _ = writeln!(
                out,
                "  {{{}}}: {}  class {}  -K.b = {}",
                join(&pc.rays, ","),
                pc.relation,
                vector(&pc.class),
                pc.anticanonical_degree
            );
            match &pc.witness {
                Outcome::Ok(w) => {
                    let _ = writeln!(
                        out,
                        "    witness: degrees {} sections [{}] in cone {{{}}} nondegenerate {}",
                        vector(&w.degrees),
                        w.sections.join(","),
                        join(&w.ambient_cone, ","),
                        w.nondegenerate
                    );
                }
                Outcome::Failed(e) | Outcome::NotApplicable(e) => {
                    let _ = writeln!(out, "    witness: {e}");
                }
            }
        }
    });
    outcome(out, "Mori cone", &a.mori, |out, m| {
        let _ = writeln!(out, "  picard rank {}, simplicial {}", m.picard_rank, m.simplicial);
        for g in &m.generators {
            let _ = writeln!(out, "  generator {}  l = {}  -K.b = {}", q_text(&g.q), g.degree, g.anticanonical_degree);
        }
        let _ = writeln!(out, "  functional l = {}", vector(&m.functional));
        let _ = writeln!(out, "  semipositive: {}", m.semipositive);
        let _ = writeln!(out, "  fano: {}", m.fano);
    });
    outcome(out, "cohomology", &a.cohomology, |out, c| {
        let _ = writeln!(out, "  rank {}, graded dimensions {}", c.rank, join(&c.graded_dimensions, " "));
        let _ = writeln!(out, "  basis: {}", c.basis.join(", "));
    });
}

fn ifunction(out: &mut String, i: &IFunction) {
    let _ = writeln!(out, "I-function up to l = {} (l = {}):", i.cutoff, vector(&i.functional));
    for t in &i.terms {
        let _ = writeln!(out, "  {} (l = {}):", q_text(&t.q), t.degree);
        for (p, c) in &t.coefficients {
            let _ = writeln!(out, "    ħ^{p}: {c}");
        }
    }
    let _ = writeln!(out, "I0 = 1: {}", i.i0_is_one);
    for e in &i.i0 {
        let _ = writeln!(out, "  I0 [{}] {}", q_short(&e.q), e.class);
    }
    for e in &i.i1 {
        let _ = writeln!(out, "  I1 [{}] {}", q_short(&e.q), e.class);
    }
    outcome(out, "two-point invariants", &i.two_point, |out, rows| {
        for r in rows {
            let _ = writeln!(out, "  ⟨{}, 1⟩_{{{}}} = {}", r.insertion, q_short(&r.q), r.value);
        }
    });
    outcome(out, "annihilation", &i.annihilation, |out, a| {
        for e in &a.entries {
            match e.certified_up_to {
                Some(u) => {
                    let _ = writeln!(out, "  box[{}] I = 0 for l <= {u} ({} classes)", q_short(&e.q), e.targets_checked);
                }
                None => {
                    let _ = writeln!(out, "  box[{}] unchecked: l = {} exceeds cutoff", q_short(&e.q), e.degree);
                }
            }
        }
        let _ = writeln!(out, "  complete: {}", a.complete);
    });
}

fn certification(out: &mut String, c: &Certification) {
    let _ = writeln!(out, "cutoff {}, semipositive {}", c.cutoff, c.semipositive);
    outcome(out, "presentation", &c.presentation, |out, p| {
        for g in &p.generators {
            let _ = writeln!(out, "  {}  ~>  {}", g.relation, g.substituted);
        }
        let _ = writeln!(out, "  rewriting rules ({} from completion):", p.added_by_completion);
        for r in &p.rules {
            let _ = writeln!(out, "    {r}");
        }
        let _ = writeln!(out, "  basis: {}", p.basis.join(", "));
    });
    outcome(out, "module", &c.module, |out, m| {
        for p in &m.products {
            let _ = writeln!(out, "  {} = {}", p.lhs, p.rhs);
        }
        let _ = writeln!(out, "  commutative: {}", m.commutative);
        let _ = writeln!(out, "  classical limit: {}", m.classical_limit);
        let _ = writeln!(out, "  graded: {}", m.graded);
        let _ = writeln!(out, "  linear forms vanish: {}", m.linear_forms_vanish);
    });
    outcome(out, "certificate", &c.certificate, |out, k| {
        let _ = writeln!(out, "  det phi = {} (unit constant term: {})", k.determinant, k.determinant_ok);
        for r in &k.relations {
            let _ = writeln!(out, "  {} vanishes: {}", r.relation, r.vanishes);
        }
        let _ = writeln!(out, "  annihilation complete: {}", k.annihilation_complete);
        let _ = writeln!(out, "  certified: {}", k.certified);
    });
}
