//! Primitive collections, primitive relations and the Mori cone.
//!
//! Curve classes are integer vectors `b` indexed by rays, with `b_ρ` the
//! intersection number with the toric divisor `D_ρ`; they live in the kernel
//! of the ray matrix.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::fan::{Cone, Fan};
use crate::lattice::{self, to_big, to_i64, IntMatrix};
use crate::lp::{self, LpOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoriError {
    #[error("ray set {0:?} is not a primitive collection")]
    NotPrimitive(Vec<usize>),
    #[error("primitive relation of {0:?} has a non-integral or non-positive coefficient")]
    NonIntegralCoefficient(Vec<usize>),
    #[error("primitive relation of {0:?} meets its own minimal cone")]
    Overlap(Vec<usize>),
    #[error("class {0} is not a linear relation among the rays")]
    KernelCheckFailed(CurveClass),
    #[error("no strictly positive functional on the Mori cone; the fan is not projective")]
    NoPositiveFunctional,
}

/// An element of `H_2(X, Z)`, recorded by its intersection numbers with the
/// toric divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass(pub Vec<i64>);

impl CurveClass {
    pub fn zero(rays: usize) -> Self {
        CurveClass(vec![0; rays])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `∫_β D_ρ`.
    pub fn pairing(&self, ray: usize) -> i64 {
        self.0[ray]
    }

    /// `-K_X · β`.
    pub fn anticanonical_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> CurveClass {
        CurveClass(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, functional: &[i64]) -> i64 {
        self.0.iter().zip(functional).map(|(a, b)| a * b).sum()
    }

    pub fn lies_in_kernel(&self, fan: &Fan) -> bool {
        (0..fan.dim()).all(|i| (0..fan.num_rays()).map(|r| self.0[r] * fan.ray(r)[i]).sum::<i64>() == 0)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A primitive collection with its primitive relation
/// `Σ_{ρ∈P} u_ρ = Σ_{ρ∈γ} c_ρ u_ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveCollection {
    pub rays: Vec<usize>,
    pub gamma: Cone,
    /// `c_ρ` for each ray of `gamma`, in the same order.
    pub coefficients: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveClass {
    pub collection: PrimitiveCollection,
    pub class: CurveClass,
}

/// Minimal non-faces of the fan, as sorted ray-index lists in lexicographic order.
pub fn primitive_collection_sets(fan: &Fan) -> Vec<Vec<usize>> {
    let faces = fan.face_masks();
    let n = fan.num_rays();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut memo: HashSet<u64> = HashSet::new();
    // Each minimal non-face S arises as (S minus its largest ray) ∪ {largest ray}.
    for &face in &faces {
        let top = if face == 0 { 0 } else { 64 - face.leading_zeros() as usize };
        for j in top..n {
            let s = face | 1 << j;
            if faces.contains(&s) || !memo.insert(s) {
                continue;
            }
            let minimal = (0..n).filter(|i| s >> i & 1 == 1).all(|i| faces.contains(&(s & !(1 << i))));
            if minimal {
                found.insert((0..n).filter(|i| s >> i & 1 == 1).collect());
            }
        }
    }
    found.into_iter().collect()
}

/// Primitive collections together with their primitive relations.
pub fn primitive_collections(fan: &Fan) -> Result<Vec<PrimitiveCollection>, MoriError> {
    primitive_collection_sets(fan).iter().map(|rays| primitive_relation(fan, rays)).collect()
}

fn is_primitive(fan: &Fan, rays: &[usize]) -> bool {
    !rays.is_empty()
        && !fan.is_face(rays)
        && (0..rays.len()).all(|skip| {
            let sub: Vec<usize> = rays.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect();
            fan.is_face(&sub)
        })
}

pub fn primitive_relation(fan: &Fan, rays: &[usize]) -> Result<PrimitiveCollection, MoriError> {
    let mut rays = rays.to_vec();
    rays.sort_unstable();
    if !is_primitive(fan, &rays) {
        return Err(MoriError::NotPrimitive(rays));
    }
    let mut sum = vec![0i64; fan.dim()];
    for &r in &rays {
        for (s, x) in sum.iter_mut().zip(fan.ray(r)) {
            *s += x;
        }
    }
    let (gamma, coeffs) = fan.minimal_cone_containing(&sum).map_err(|_| MoriError::NonIntegralCoefficient(rays.clone()))?;
    let coefficients: Vec<i64> = coeffs
        .iter()
        .map(|c| c.to_i64().filter(|&c| c >= 1))
        .collect::<Option<_>>()
        .ok_or_else(|| MoriError::NonIntegralCoefficient(rays.clone()))?;
    if gamma.rays().iter().any(|g| rays.contains(g)) {
        return Err(MoriError::Overlap(rays));
    }
    Ok(PrimitiveCollection { rays, gamma, coefficients })
}

/// `b_ρ = 1` on `P`, `-c_ρ` on `γ`, zero elsewhere.
pub fn primitive_class(fan: &Fan, pc: &PrimitiveCollection) -> Result<PrimitiveClass, MoriError> {
    let mut b = vec![0i64; fan.num_rays()];
    for &r in &pc.rays {
        b[r] += 1;
    }
    for (&r, &c) in pc.gamma.rays().iter().zip(&pc.coefficients) {
        b[r] -= c;
    }
    let class = CurveClass(b);
    if class.is_zero() || !class.lies_in_kernel(fan) {
        return Err(MoriError::KernelCheckFailed(class));
    }
    Ok(PrimitiveClass { collection: pc.clone(), class })
}

/// Everything downstream needs about the Mori cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriData {
    pub num_rays: usize,
    /// One primitive class per primitive collection, in collection order.
    pub generators: Vec<PrimitiveClass>,
    /// Integral functional on ray space, at least 1 on every generator.
    pub functional: Vec<i64>,
    pub semipositive: bool,
    pub fano: bool,
    /// Basis of the kernel lattice `H_2(X, Z)`, as ray vectors.
    pub kernel: Vec<Vec<i64>>,
    /// Inward facet normals of the cone, in kernel coordinates.
    pub facets: Vec<Vec<i64>>,
}

pub fn mori_data(fan: &Fan) -> Result<MoriData, MoriError> {
    let mut generators = Vec::new();
    for pc in primitive_collections(fan)? {
        generators.push(primitive_class(fan, &pc)?);
    }
    let semipositive = generators.iter().all(|g| g.class.anticanonical_degree() >= 0);
    let fano = generators.iter().all(|g| g.class.anticanonical_degree() > 0);
    let kernel: Vec<Vec<i64>> = lattice::kernel_basis(&fan.ray_matrix()).iter().map(|v| to_i64(v)).collect();
    let functional = positive_functional(fan, &kernel, &generators)?;
    let mut md = MoriData {
        num_rays: fan.num_rays(),
        generators,
        functional,
        semipositive,
        fano,
        kernel,
        facets: Vec::new(),
    };
    md.facets = facet_normals(&md);
    Ok(md)
}

/// An integral `ℓ` with `ℓ · β_P >= 1`.
///
/// The smallest-L1-norm rational solution is scaled so that its values on the
/// kernel lattice form a primitive integer vector, then replaced by an integral
/// vector with the same values on curve classes and shortened by adding linear
/// forms `⟨m, u_ρ⟩`, which vanish on curve classes.
fn positive_functional(fan: &Fan, kernel: &[Vec<i64>], generators: &[PrimitiveClass]) -> Result<Vec<i64>, MoriError> {
    let rays = fan.num_rays();
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    // Variables: ℓ⁺ (rays), ℓ⁻ (rays), slack per generator.
    let g = generators.len();
    let width = 2 * rays + g;
    let a: Vec<Vec<BigRational>> = generators
        .iter()
        .enumerate()
        .map(|(k, gen)| {
            let mut row = vec![q(0); width];
            for r in 0..rays {
                row[r] = q(gen.class.0[r]);
                row[rays + r] = q(-gen.class.0[r]);
            }
            row[2 * rays + k] = q(-1);
            row
        })
        .collect();
    let b = vec![q(1); g];
    let cost: Vec<BigRational> = (0..width).map(|j| q(i64::from(j < 2 * rays))).collect();
    let x = match lp::minimize(&a, &b, &cost) {
        LpOutcome::Optimal(x) => x,
        _ => return Err(MoriError::NoPositiveFunctional),
    };
    let ell: Vec<BigRational> = (0..rays).map(|r| &x[r] - &x[rays + r]).collect();

    let values: Vec<BigRational> = kernel
        .iter()
        .map(|k| k.iter().zip(&ell).map(|(&ki, l)| l * q(ki)).fold(q(0), |s, t| s + t))
        .collect();
    let denom = values.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = values.iter().map(|v| (v * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let scale = BigRational::new(denom, gcd);
    let ell: Vec<BigRational> = ell.iter().map(|v| v * &scale).collect();

    // For each maximal cone σ, the lift vanishing on σ takes the value
    // ℓ(e_ρ − Σ_τ c_τ e_τ) on a ray with u_ρ = Σ_{τ∈σ} c_τ u_τ, an integer.
    let mut best: Option<Vec<i64>> = None;
    for cone in fan.max_cones() {
        let basis: Vec<Vec<BigInt>> = cone.rays().iter().map(|&t| to_big(fan.ray(t))).collect();
        let mut lift = vec![0i64; rays];
        for r in (0..rays).filter(|r| !cone.rays().contains(r)) {
            let c = lattice::solve_in_basis(&basis, &to_big(fan.ray(r))).expect("smooth cone");
            let mut v = ell[r].clone();
            for (ci, &t) in c.iter().zip(cone.rays()) {
                v -= &ell[t] * BigRational::from_integer(ci.clone());
            }
            debug_assert!(v.is_integer());
            lift[r] = v.to_integer().to_i64().expect("functional fits i64");
        }
        let l1 = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
        if best.as_ref().is_none_or(|b| l1(&lift) < l1(b)) {
            best = Some(lift);
        }
    }
    let mut ell = best.expect("fan has cones");

    let forms: Vec<Vec<i64>> = (0..fan.dim()).map(|i| (0..rays).map(|r| fan.ray(r)[i]).collect()).collect();
    let norm = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
    loop {
        let mut improved = false;
        for w in &forms {
            for sign in [1, -1] {
                let cand: Vec<i64> = ell.iter().zip(w).map(|(a, b)| a + sign * b).collect();
                if norm(&cand) < norm(&ell) {
                    ell = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    debug_assert!(generators.iter().all(|gen| gen.class.dot(&ell) >= 1));
    Ok(ell)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn facet_normals(md: &MoriData) -> Vec<Vec<i64>> {
    let r = md.kernel.len();
    let coords: Vec<Vec<i64>> = md.distinct_generators().iter().map(|g| md.kernel_coordinates(g).expect("generator in kernel")).collect();
    let mut facets: BTreeSet<Vec<i64>> = BTreeSet::new();
    for subset in combinations(coords.len(), r.saturating_sub(1)) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| coords[i].clone()).collect();
        let m = IntMatrix::from_rows(r, &rows).expect("shape");
        let ker = lattice::kernel_basis(&m);
        if ker.len() != 1 {
            continue;
        }
        let normal = to_i64(&ker[0]);
        let signs: Vec<i64> = coords.iter().map(|c| c.iter().zip(&normal).map(|(a, b)| a * b).sum::<i64>().signum()).collect();
        if signs.iter().all(|&s| s >= 0) {
            facets.insert(normal);
        } else if signs.iter().all(|&s| s <= 0) {
            facets.insert(normal.iter().map(|x| -x).collect());
        }
    }
    facets.into_iter().collect()
}

impl MoriData {
    pub fn picard_rank(&self) -> usize {
        self.kernel.len()
    }

    /// `ℓ(β)`.
    pub fn degree(&self, class: &CurveClass) -> i64 {
        class.dot(&self.functional)
    }

    /// Primitive classes with exact duplicates removed, in collection order.
    pub fn distinct_generators(&self) -> Vec<CurveClass> {
        let mut out: Vec<CurveClass> = Vec::new();
        for g in &self.generators {
            if !out.contains(&g.class) {
                out.push(g.class.clone());
            }
        }
        out
    }

    /// Coordinates of a kernel vector in the stored lattice basis.
    pub fn kernel_coordinates(&self, class: &CurveClass) -> Option<Vec<i64>> {
        let cols: Vec<Vec<BigInt>> = self.kernel.iter().map(|k| to_big(k)).collect();
        let m = IntMatrix::from_columns(self.num_rays, &cols).ok()?;
        let x = lattice::solve_rational(&m, &to_big(&class.0))?;
        x.iter().map(|v| v.is_integer().then(|| v.to_integer().to_i64()).flatten()).collect()
    }

    fn class_at_kernel_coordinates(&self, x: &[i64]) -> CurveClass {
        let mut b = vec![0i64; self.num_rays];
        for (k, &xk) in self.kernel.iter().zip(x) {
            for (bi, ki) in b.iter_mut().zip(k) {
                *bi += xk * ki;
            }
        }
        CurveClass(b)
    }

    /// Whether `class` lies in the (closed) Mori cone.
    pub fn contains(&self, class: &CurveClass) -> bool {
        match self.kernel_coordinates(class) {
            Some(x) => self.facets.iter().all(|n| n.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() >= 0),
            None => false,
        }
    }

    /// Generator coordinates of `class`, available when the Mori cone is simplicial.
    pub fn generator_coordinates(&self, class: &CurveClass) -> Option<Vec<BigRational>> {
        let gens = self.distinct_generators();
        if gens.len() != self.picard_rank() {
            return None;
        }
        let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| to_big(&g.0)).collect();
        let m = IntMatrix::from_columns(self.num_rays, &cols).ok()?;
        lattice::solve_rational(&m, &to_big(&class.0))
    }

    pub fn is_simplicial(&self) -> bool {
        self.distinct_generators().len() == self.picard_rank()
    }

    /// All lattice points `β` of the Mori cone with `ℓ(β) <= cutoff`,
    /// sorted by `ℓ` and then lexicographically.
    pub fn enumerate_effective(&self, cutoff: i64) -> Vec<CurveClass> {
        let r = self.picard_rank();
        let zero = CurveClass::zero(self.num_rays);
        if cutoff < 0 {
            return Vec::new();
        }
        // The truncated cone is the convex hull of 0 and cutoff·g/ℓ(g).
        let mut lo = vec![0i64; r];
        let mut hi = vec![0i64; r];
        for g in self.distinct_generators() {
            let x = self.kernel_coordinates(&g).expect("generator in kernel");
            let l = self.degree(&g);
            for j in 0..r {
                let v = BigRational::new(BigInt::from(cutoff * x[j]), BigInt::from(l));
                lo[j] = lo[j].min(v.floor().to_integer().to_i64().expect("bound"));
                hi[j] = hi[j].max(v.ceil().to_integer().to_i64().expect("bound"));
            }
        }
        let mut out = Vec::new();
        let mut x = lo.clone();
        self.scan_box(0, &lo, &hi, &mut x, cutoff, &mut out);
        if !out.contains(&zero) {
            out.push(zero);
        }
        out.sort_by_key(|c| (self.degree(c), c.clone()));
        out.dedup();
        out
    }

    fn scan_box(&self, j: usize, lo: &[i64], hi: &[i64], x: &mut Vec<i64>, cutoff: i64, out: &mut Vec<CurveClass>) {
        if j == x.len() {
            let facets_ok = self.facets.iter().all(|n| n.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<i64>() >= 0);
            if facets_ok {
                let c = self.class_at_kernel_coordinates(x);
                if self.degree(&c) <= cutoff {
                    out.push(c);
                }
            }
            return;
        }
        for v in lo[j]..=hi[j] {
            x[j] = v;
            self.scan_box(j + 1, lo, hi, x, cutoff, out);
        }
    }
}

/// How the section of `L_ρ` is chosen in the effectivity witness of a primitive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionKind {
    /// A degree-one form; rays of the primitive collection.
    Linear,
    /// Identically zero; rays of the minimal cone.
    Zero,
    /// A nonzero constant; every other ray.
    Constant,
}

/// A quasimap from `P^1` of class `β_P`, described by its line-bundle degrees
/// and section pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectivityWitness {
    pub degrees: Vec<i64>,
    pub sections: Vec<SectionKind>,
    /// First maximal cone containing the minimal cone.
    pub ambient_cone: Cone,
    pub candidate_cones: Vec<Cone>,
    /// Section degrees match the bundles and the vanishing sections all lie
    /// in `ambient_cone`, so generic points map into the quotient.
    pub nondegenerate: bool,
}

pub fn effectivity_witness(fan: &Fan, pc: &PrimitiveCollection) -> Result<EffectivityWitness, MoriError> {
    let class = primitive_class(fan, pc)?.class;
    let sections: Vec<SectionKind> = (0..fan.num_rays())
        .map(|r| {
            if pc.rays.contains(&r) {
                SectionKind::Linear
            } else if pc.gamma.rays().contains(&r) {
                SectionKind::Zero
            } else {
                SectionKind::Constant
            }
        })
        .collect();
    let candidate_cones: Vec<Cone> = fan
        .max_cones()
        .iter()
        .filter(|c| pc.gamma.rays().iter().all(|g| c.rays().contains(g)))
        .cloned()
        .collect();
    let ambient_cone = candidate_cones.first().cloned().unwrap_or_default();
    let degrees_match = sections.iter().zip(&class.0).all(|(s, &d)| match s {
        SectionKind::Linear => d == 1,
        SectionKind::Constant => d == 0,
        SectionKind::Zero => true,
    });
    let vanishing_in_cone = sections
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == SectionKind::Zero)
        .all(|(r, _)| ambient_cone.rays().contains(&r));
    Ok(EffectivityWitness {
        degrees: class.0,
        sections,
        ambient_cone,
        candidate_cones: candidate_cones.clone(),
        nondegenerate: degrees_match && vanishing_in_cone && !candidate_cones.is_empty(),
    })
}
