//! End-to-end acceptance checks over the built-in catalog. Each check prints
//! one PASS/FAIL line; the process exits nonzero if any check fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toriq::batyrev::{build_deformed_ideal, certify_isomorphism, module_matrices, BatyrevError, NPoly};
use toriq::cohomring::{CohClass, CohomRing};
use toriq::fan::Fan;
use toriq::gkz::{annihilation_certificate, extract_two_point_invariants, i_function, leading_terms};
use toriq::lattice::{self, to_big, IntMatrix};
use toriq::moricone::{mori_data, primitive_collection_sets, primitive_collections, CurveClass, MoriData};
use toriq::novikov::{nilpotent_geometric, HLaurent, NovikovScalar};
use toriq::poly::{Monomial, Poly};
use toriq::{catalog, Scalar};

type Q = BigRational;
type Check = Result<(), String>;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn setup(fan: &Fan) -> (MoriData, CohomRing<Q>) {
    (mori_data(fan).expect("mori data"), CohomRing::build(fan).expect("cohomology ring"))
}

struct GoldenCollection {
    rays: Vec<usize>,
    gamma: Vec<(usize, i64)>,
    class: Vec<i64>,
}

struct GoldenFan {
    name: String,
    semipositive: bool,
    collections: Vec<GoldenCollection>,
}

fn parse_golden() -> Vec<GoldenFan> {
    let text = include_str!("golden/catalog.txt");
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let mut fields = line.split_whitespace();
        let name = fields.next().expect("name").to_string();
        let semipositive = fields.next().expect("flag") == "yes";
        let collections = fields
            .map(|f| {
                let (rel, class) = f.split_once(':').expect("class");
                let (set, rhs) = rel.split_once("->").expect("relation");
                let rays = set
                    .trim_matches(|c| c == '{' || c == '}')
                    .split(',')
                    .map(|x| x.parse::<usize>().expect("ray") - 1)
                    .collect();
                let gamma = if rhs == "0" {
                    Vec::new()
                } else {
                    rhs.split('+')
                        .map(|t| {
                            let (c, r) = t.split_once('u').expect("term");
                            let c = if c.is_empty() { 1 } else { c.parse().expect("coefficient") };
                            (r.parse::<usize>().expect("ray") - 1, c)
                        })
                        .collect()
                };
                let class = class
                    .trim_matches(|c| c == '(' || c == ')')
                    .split(',')
                    .map(|x| x.parse().expect("entry"))
                    .collect();
                GoldenCollection { rays, gamma, class }
            })
            .collect();
        out.push(GoldenFan { name, semipositive, collections });
    }
    out
}

fn catalog_combinatorics() -> Check {
    let golden = parse_golden();
    ensure(golden.len() == catalog::NAMES.len(), || "golden file does not cover the catalog".into())?;
    for g in golden {
        let fan = catalog::by_name(&g.name).ok_or_else(|| format!("unknown fan {}", g.name))?;
        let pcs = primitive_collections(&fan).map_err(|e| e.to_string())?;
        let md = mori_data(&fan).map_err(|e| e.to_string())?;
        ensure(pcs.len() == g.collections.len(), || format!("{}: {} collections", g.name, pcs.len()))?;
        for (pc, want) in pcs.iter().zip(&g.collections) {
            ensure(pc.rays == want.rays, || format!("{}: collection {:?}", g.name, pc.rays))?;
            let gamma: Vec<(usize, i64)> = pc.gamma.rays().iter().copied().zip(pc.coefficients.iter().copied()).collect();
            ensure(gamma == want.gamma, || format!("{}: relation of {:?} is {:?}", g.name, pc.rays, gamma))?;
        }
        for (pcl, want) in md.generators.iter().zip(&g.collections) {
            ensure(pcl.class.0 == want.class, || format!("{}: class {}", g.name, pcl.class))?;
        }
        ensure(md.semipositive == g.semipositive, || format!("{}: semipositive = {}", g.name, md.semipositive))?;
    }
    Ok(())
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// h-vector of the fan's simplicial complex from its face numbers.
fn h_vector(fan: &Fan) -> Vec<i64> {
    let n = fan.dim() as i64;
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cone in fan.max_cones() {
        let rays = cone.rays();
        for mask in 0..(1u32 << rays.len()) {
            faces.insert((0..rays.len()).filter(|i| mask & (1 << i) != 0).map(|i| rays[i]).collect());
        }
    }
    // f[i] counts faces with i rays, so f[0] = 1 is the empty face.
    let mut f = vec![0i64; n as usize + 1];
    for face in &faces {
        f[face.len()] += 1;
    }
    (0..=n)
        .map(|k| (0..=k).map(|i| (if (k - i) % 2 == 0 { 1 } else { -1 }) * binomial(n - i, k - i) * f[i as usize]).sum())
        .collect()
}

fn cohomology_sanity() -> Check {
    for (name, fan) in catalog::all() {
        let (_, ring) = setup(&fan);
        ensure(ring.rank() == fan.max_cones().len(), || format!("{name}: rank {}", ring.rank()))?;
        let dims: Vec<i64> = ring.graded_dimensions().iter().map(|&d| d as i64).collect();
        let h = h_vector(&fan);
        ensure(dims == h, || format!("{name}: graded dims {dims:?}, h-vector {h:?}"))?;
        let vars = ring.free_rays().len();
        for cone in fan.max_cones() {
            let p = cone.rays().iter().fold(Poly::constant(vars, q(1)), |acc, &r| acc.mul(ring.substitution(r)));
            let v = ring.integrate(&ring.normal_form(&p));
            ensure(v == q(1), || format!("{name}: integral over cone {cone} is {v}"))?;
        }
    }
    Ok(())
}

fn leading_term_theorem() -> Check {
    for (name, fan) in catalog::all() {
        let (md, ring) = setup(&fan);
        let lt = leading_terms(&ring, &i_function(&ring, &md, 4));
        ensure(lt.i0_is_one == md.semipositive, || format!("{name}: I0 = 1 is {}", lt.i0_is_one))?;
    }
    let (md, ring) = setup(&catalog::hirzebruch(3));
    let lt = leading_terms(&ring, &i_function(&ring, &md, 4));
    ensure(lt.i0.get(&CurveClass(vec![1, -3, 1, 0])).is_some_and(|c| !c.is_zero()), || "F3: no degree-zero term at (1,-3,1,0)".into())
}

fn annihilation() -> Check {
    for (name, fan) in catalog::all() {
        let (md, ring) = setup(&fan);
        let report = annihilation_certificate(&ring, &md, 4).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.entries.len() == md.distinct_generators().len(), || format!("{name}: generators missing"))?;
        ensure(report.complete(), || format!("{name}: some generator exceeds the cutoff"))?;
    }
    Ok(())
}

fn two_point_invariants() -> Check {
    let (md, ring) = setup(&catalog::p2());
    let i = i_function(&ring, &md, 1);
    let table = extract_two_point_invariants(&ring, &i).map_err(|e| e.to_string())?;
    let beta = CurveClass(vec![1, 1, 1]);
    let idx = |e: u32| ring.basis_index(&Monomial(vec![e])).expect("basis monomial");
    for (a, k, want) in [(idx(2), 2, 1), (idx(1), 3, -3), (idx(0), 4, 6)] {
        let got = table.get(a, k, &beta);
        ensure(got == q(want), || format!("basis {a}, psi^{k}: {got}"))?;
    }
    ensure(table.entries.len() == 3, || format!("{} entries at degree one", table.entries.len()))?;
    let duals = ring.poincare_dual_basis().map_err(|e| e.to_string())?;
    ensure(table.reconstruct(&ring, &duals, &beta) == i.coefficient(&beta), || "round trip differs".into())
}

fn batyrev_golden_values() -> Check {
    let fan = catalog::hirzebruch(2);
    let (md, ring) = setup(&fan);
    let ideal = build_deformed_ideal(&fan, &md, &ring, 3).map_err(|e| e.to_string())?;
    let module = module_matrices(&ideal);
    let label = |c: &CurveClass| match c.0.as_slice() {
        [1, -2, 1, 0] => "q1".to_string(),
        [0, 1, 0, 1] => "q2".to_string(),
        [1, -1, 1, 1] => "q1*q2".to_string(),
        _ => format!("q^{c}"),
    };
    let names = ideal.variable_names().to_vec();
    let column = |ray: usize, m: &[u32]| -> String {
        let a = ideal.basis().iter().position(|b| b.0 == m).expect("basis monomial");
        let col: Vec<NovikovScalar<Q>> = module.matrices[ray].iter().map(|row| row[a].clone()).collect();
        ideal.from_basis(&col).render(&names, &label)
    };
    let x1x1 = column(0, &[1, 0]);
    ensure(x1x1 == "q1*q2 - 2*q1*x1*x2", || format!("x1*x1 = {x1x1}"))?;
    let x2x2 = column(1, &[0, 1]);
    ensure(x2x2 == "q2 - 2*x1*x2", || format!("x2*x2 = {x2x2}"))?;

    let fan = catalog::p2();
    let (md, ring) = setup(&fan);
    let ideal = build_deformed_ideal(&fan, &md, &ring, 3).map_err(|e| e.to_string())?;
    let module = module_matrices(&ideal);
    let a = ideal.basis().iter().position(|b| b.0 == [2]).expect("H^2");
    let col: Vec<NovikovScalar<Q>> = module.matrices[0].iter().map(|row| row[a].clone()).collect();
    let hh2 = ideal.from_basis(&col).render(ideal.variable_names(), &|_| "q".to_string());
    ensure(hh2 == "q", || format!("H*H^2 = {hh2}"))
}

fn module_axiom() -> Check {
    for (name, fan) in catalog::all() {
        let (md, ring) = setup(&fan);
        let ideal = build_deformed_ideal(&fan, &md, &ring, 4).map_err(|e| format!("{name}: {e}"))?;
        let module = module_matrices(&ideal);
        let bad = module.noncommuting_pairs();
        ensure(bad.is_empty(), || format!("{name}: non-commuting pairs {bad:?}"))?;
    }
    Ok(())
}

fn classical_limit() -> Check {
    for (name, fan) in catalog::all() {
        let (md, ring) = setup(&fan);
        let ideal = build_deformed_ideal(&fan, &md, &ring, 4).map_err(|e| format!("{name}: {e}"))?;
        let bad = module_matrices(&ideal).classical_mismatches(&ring);
        ensure(bad.is_empty(), || format!("{name}: rays {bad:?} differ from cup product"))?;
    }
    Ok(())
}

fn isomorphism_certificate() -> Check {
    for (name, fan) in catalog::all() {
        let (md, ring) = setup(&fan);
        let ideal = build_deformed_ideal(&fan, &md, &ring, 3).map_err(|e| format!("{name}: {e}"))?;
        let module = module_matrices(&ideal);
        let ann = annihilation_certificate(&ring, &md, 3).map_err(|e| format!("{name}: {e}"))?;
        match certify_isomorphism(&ideal, &module, &md, &ann) {
            Ok(cert) => {
                ensure(md.semipositive, || format!("{name}: certified without the hypothesis"))?;
                ensure(cert.certified, || format!("{name}: not certified"))?;
                let det = &cert.determinant;
                let one = NovikovScalar::one(ideal.truncation());
                ensure(det.constant_term() == q(1), || format!("{name}: det has constant term {}", det.constant_term()))?;
                ensure(
                    det.sub(&one).terms().all(|(c, _)| ideal.truncation().degree(c) > 0),
                    || format!("{name}: det - 1 has a degree-zero term"),
                )?;
            }
            Err(BatyrevError::HypothesisUnmet) => ensure(!md.semipositive, || format!("{name}: hypothesis reported unmet"))?,
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(())
}

/// Minimal non-faces by scanning every subset of rays.
fn brute_primitive_collections(fan: &Fan) -> Vec<Vec<usize>> {
    let n = fan.num_rays();
    let is_face = |s: u64| fan.max_cones().iter().any(|c| c.rays().iter().fold(0u64, |m, &r| m | 1 << r) & s == s);
    let mut out = Vec::new();
    for s in 1u64..(1 << n) {
        if !is_face(s) && (0..n).filter(|i| s & (1 << i) != 0).all(|i| is_face(s & !(1 << i))) {
            out.push((0..n).filter(|i| s & (1 << i) != 0).collect());
        }
    }
    out.sort();
    out
}

/// Whether `b` is a nonnegative combination of some linearly independent set of generators.
fn in_cone_by_caratheodory(gens: &[CurveClass], b: &CurveClass) -> bool {
    if b.is_zero() {
        return true;
    }
    let k = gens.len();
    for mask in 1u32..(1 << k) {
        let chosen: Vec<Vec<BigInt>> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| to_big(&gens[i].0)).collect();
        let m = IntMatrix::from_columns(b.0.len(), &chosen).expect("shape");
        if m.rank() != chosen.len() {
            continue;
        }
        if let Some(x) = lattice::solve_rational(&m, &to_big(&b.0)) {
            let recombined: Vec<Q> = (0..b.0.len())
                .map(|r| chosen.iter().zip(&x).map(|(g, xi)| Q::from_integer(g[r].clone()) * xi).fold(Q::zero(), |s, t| s + t))
                .collect();
            let exact = recombined.iter().zip(&b.0).all(|(v, &t)| *v == q(t));
            if exact && x.iter().all(|v| !v.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn brute_effective(fan: &Fan, md: &MoriData, cutoff: i64) -> Vec<CurveClass> {
    let gens = md.distinct_generators();
    let bound = cutoff * gens.iter().flat_map(|g| g.0.iter().map(|x| x.abs())).max().unwrap_or(0);
    let n = fan.num_rays();
    let mut out = Vec::new();
    let mut b = vec![-bound; n];
    loop {
        let class = CurveClass(b.clone());
        if class.lies_in_kernel(fan) && md.degree(&class) <= cutoff && in_cone_by_caratheodory(&gens, &class) {
            out.push(class);
        }
        let mut i = 0;
        while i < n && b[i] == bound {
            b[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
        b[i] += 1;
    }
    out.sort_by_key(|c| (md.degree(c), c.clone()));
    out
}

fn random_npoly(rng: &mut ChaCha8Rng, ideal: &toriq::batyrev::DeformedIdeal<Q>, classes: &[CurveClass], max_degree: u32) -> NPoly<Q> {
    let vars = ideal.variable_names().len();
    let mut p = NPoly::zero(vars, ideal.truncation());
    for _ in 0..rng.gen_range(1..=5) {
        let mut e = vec![0u32; vars];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..vars)] += 1;
        }
        let mut c = NovikovScalar::zero(ideal.truncation());
        for _ in 0..rng.gen_range(1..=3) {
            let class = classes[rng.gen_range(0..classes.len())].clone();
            c.add_term(class, q(rng.gen_range(-5..=5)));
        }
        p.add_term(Monomial(e), c);
    }
    p
}

fn property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7017);
    for (name, fan) in catalog::all() {
        let (md, ring) = setup(&fan);

        let brute = brute_primitive_collections(&fan);
        let mut found = primitive_collection_sets(&fan);
        found.sort();
        ensure(found == brute, || format!("{name}: primitive collections {found:?}, brute force {brute:?}"))?;
        for g in &md.generators {
            ensure(g.class.lies_in_kernel(&fan), || format!("{name}: {} not in kernel", g.class))?;
        }

        for cutoff in 0..=3 {
            let fast = md.enumerate_effective(cutoff);
            let slow = brute_effective(&fan, &md, cutoff);
            ensure(fast == slow, || format!("{name} cutoff {cutoff}: enumeration {fast:?}, oracle {slow:?}"))?;
        }

        let ideal = build_deformed_ideal(&fan, &md, &ring, 3).map_err(|e| format!("{name}: {e}"))?;
        let classes = md.enumerate_effective(3);
        for trial in 0..200 {
            let p = random_npoly(&mut rng, &ideal, &classes, fan.dim() as u32 + 2);
            let once = ideal.normal_form(&p);
            let twice = ideal.normal_form(&ideal.from_basis(&once));
            ensure(once == twice, || format!("{name}: normal form not idempotent on trial {trial}"))?;
        }

        for r in 0..fan.num_rays() {
            let d = ring.divisor_class(r);
            for m in [-4, -2, -1, 1, 3, 7] {
                let g = nilpotent_geometric(&ring, &d, m).map_err(|e| e.to_string())?;
                let prod = g.mul(&HLaurent::linear(&ring, &d, m), &ring);
                ensure(prod == HLaurent::one(&ring), || format!("{name}: (D{} + {m}ħ)⁻¹ is not an inverse", r + 1))?;
            }
        }
        let one: CohClass<Q> = ring.one();
        ensure(nilpotent_geometric(&ring, &one, 1).is_err(), || format!("{name}: unit accepted as nilpotent"))?;
    }
    Ok(())
}

fn main() {
    let checks: [(&str, fn() -> Check); 10] = [
        ("catalog primitive collections, relations, classes and semipositivity", catalog_combinatorics),
        ("cohomology ranks, h-vectors and point-class normalization", cohomology_sanity),
        ("I-function leading terms: I0 = 1 exactly when semipositive (cutoff 4)", leading_term_theorem),
        ("box operators annihilate the I-function (cutoff 4)", annihilation),
        ("two-point invariants of P2 in degree one and round trip", two_point_invariants),
        ("Batyrev module values for F2 and P2", batyrev_golden_values),
        ("divisor multiplication matrices commute (cutoff 4)", module_axiom),
        ("module matrices at q = 0 equal cup product", classical_limit),
        ("isomorphism certificate for semipositive fans (cutoff 3)", isomorphism_certificate),
        ("property suite: oracles, idempotence, nilpotent inverses", property_suite),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, check)) in checks.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(()) => println!("PASS [{:>2}] {title}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance checks passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
