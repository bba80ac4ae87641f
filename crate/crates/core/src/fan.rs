//! Smooth complete fans.
//!
//! Rays and cones are indexed from zero internally; the CLI and reports
//! translate to one-based labels.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::lattice::{self, gcd_all, to_big, IntMatrix};

/// Structural problems found while building a [`Fan`]. Fields are 0-based;
/// messages count from 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("ray {} has {found} coordinates, expected {dim}", .ray + 1)]
    RayLength { ray: usize, dim: usize, found: usize },
    #[error("ray {} is not primitive (gcd {gcd})", .ray + 1)]
    NonPrimitiveRay { ray: usize, gcd: i64 },
    #[error("rays {} and {} coincide", .first + 1, .second + 1)]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {} has {found} rays, expected {dim}", .cone + 1)]
    ConeSize { cone: usize, dim: usize, found: usize },
    #[error("cone {} references ray {}, but only {count} rays exist", .cone + 1, .ray + 1)]
    RayIndex { cone: usize, ray: usize, count: usize },
    #[error("cone {} repeats a ray", .cone + 1)]
    RepeatedRayInCone { cone: usize },
    #[error("cone {} duplicates cone {}", .cone + 1, .other + 1)]
    DuplicateCone { cone: usize, other: usize },
    #[error("ray {} lies in no maximal cone", .ray + 1)]
    UnusedRay { ray: usize },
    #[error("fan supports at most 64 rays")]
    TooManyRays,
}

/// Why a fan failed smoothness or completeness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("cone {} is not unimodular (determinant {det})", Cone(.cone.clone()))]
    NotSmooth { cone: Vec<usize>, det: BigInt },
    #[error("wall {} lies in {count} maximal cones", Cone(.wall.clone()))]
    UnmatchedWall { wall: Vec<usize>, count: usize },
    #[error("maximal cones do not form a connected wall graph")]
    Disconnected,
}

/// A cone given by the sorted indices of its generating rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cone(pub Vec<usize>);

impl Cone {
    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Cone>,
}

impl Fan {
    /// Checks the structural invariants. Cones are stored sorted, in
    /// lexicographic order.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        if dim == 0 {
            return Err(FanError::ZeroDimension);
        }
        if rays.len() > 64 {
            return Err(FanError::TooManyRays);
        }
        let mut seen: BTreeMap<&[i64], usize> = BTreeMap::new();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::RayLength { ray: i, dim, found: r.len() });
            }
            let g = gcd_all(r);
            if g != 1 {
                return Err(FanError::NonPrimitiveRay { ray: i, gcd: g });
            }
            if let Some(&first) = seen.get(r.as_slice()) {
                return Err(FanError::DuplicateRay { first, second: i });
            }
            seen.insert(r, i);
        }

        let mut cones: Vec<Cone> = Vec::with_capacity(max_cones.len());
        let mut cone_ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (c, idx) in max_cones.into_iter().enumerate() {
            if idx.len() != dim {
                return Err(FanError::ConeSize { cone: c, dim, found: idx.len() });
            }
            if let Some(&ray) = idx.iter().find(|&&r| r >= rays.len()) {
                return Err(FanError::RayIndex { cone: c, ray, count: rays.len() });
            }
            let mut sorted = idx;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(FanError::RepeatedRayInCone { cone: c });
            }
            if let Some(&other) = cone_ids.get(&sorted) {
                return Err(FanError::DuplicateCone { cone: c, other });
            }
            cone_ids.insert(sorted.clone(), c);
            cones.push(Cone(sorted));
        }
        let used: BTreeSet<usize> = cones.iter().flat_map(|c| c.0.iter().copied()).collect();
        if let Some(ray) = (0..rays.len()).find(|r| !used.contains(r)) {
            return Err(FanError::UnusedRay { ray });
        }
        cones.sort();
        Ok(Fan { dim, rays, max_cones: cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Rank of the Picard group, `|rays| - dim`.
    pub fn picard_rank(&self) -> usize {
        self.rays.len() - self.dim
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// The `dim x |rays|` matrix with the rays as columns.
    pub fn ray_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.rays.iter().map(|r| to_big(r)).collect();
        IntMatrix::from_columns(self.dim, &cols).expect("ray lengths checked at construction")
    }

    fn cone_basis(&self, cone: &Cone) -> Vec<Vec<BigInt>> {
        cone.0.iter().map(|&r| to_big(&self.rays[r])).collect()
    }

    /// Every maximal cone must be generated by a lattice basis.
    pub fn validate_smooth(&self) -> Result<(), Violation> {
        for cone in &self.max_cones {
            let m = IntMatrix::from_columns(self.dim, &self.cone_basis(cone)).expect("shape");
            let det = m.determinant();
            if det.abs() != BigInt::one() {
                return Err(Violation::NotSmooth { cone: cone.0.clone(), det });
            }
        }
        Ok(())
    }

    /// Closed-wall criterion: each codimension-one face of a maximal cone lies
    /// in exactly two maximal cones, and the wall graph is connected.
    pub fn validate_complete(&self) -> Result<(), Violation> {
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for skip in 0..cone.0.len() {
                let wall: Vec<usize> =
                    cone.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect();
                walls.entry(wall).or_default().push(c);
            }
        }
        for (wall, cones) in &walls {
            if cones.len() != 2 {
                return Err(Violation::UnmatchedWall { wall: wall.clone(), count: cones.len() });
            }
        }

        let n = self.max_cones.len();
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(c) = stack.pop() {
            for cones in walls.values().filter(|cs| cs.contains(&c)) {
                for &d in cones {
                    if !reached[d] {
                        reached[d] = true;
                        stack.push(d);
                    }
                }
            }
        }
        if reached.iter().all(|&r| r) {
            Ok(())
        } else {
            Err(Violation::Disconnected)
        }
    }

    pub fn validate(&self) -> Result<(), Violation> {
        self.validate_smooth()?;
        self.validate_complete()
    }

    /// The cone whose relative interior contains `v`, with the (positive)
    /// coordinates of `v` along its rays. `v = 0` gives the zero cone.
    ///
    /// Assumes the fan is smooth, so coordinates are integers.
    pub fn minimal_cone_containing(&self, v: &[i64]) -> Result<(Cone, Vec<BigInt>), NotInSupport> {
        let target = to_big(v);
        for cone in &self.max_cones {
            let coords = lattice::solve_in_basis(&self.cone_basis(cone), &target)
                .map_err(|_| NotInSupport(v.to_vec()))?;
            if coords.iter().all(|c| !c.is_negative()) {
                let (rays, cs): (Vec<usize>, Vec<BigInt>) = cone
                    .0
                    .iter()
                    .zip(coords)
                    .filter(|(_, c)| c.is_positive())
                    .map(|(&r, c)| (r, c))
                    .unzip();
                return Ok((Cone(rays), cs));
            }
        }
        Err(NotInSupport(v.to_vec()))
    }

    /// Whether the ray set is contained in some maximal cone.
    pub fn is_face(&self, rays: &[usize]) -> bool {
        self.max_cones.iter().any(|c| rays.iter().all(|r| c.0.contains(r)))
    }

    /// All faces of the fan as ray bitmasks, including the empty face.
    pub(crate) fn face_masks(&self) -> HashSet<u64> {
        let mut faces = HashSet::new();
        for cone in &self.max_cones {
            let k = cone.0.len();
            for sub in 0u64..(1 << k) {
                let mask = (0..k).filter(|i| sub >> i & 1 == 1).fold(0u64, |m, i| m | 1 << cone.0[i]);
                faces.insert(mask);
            }
        }
        faces
    }

    /// Sets of rays whose common vanishing locus makes up the irrelevant
    /// subset of the quotient presentation: exactly the primitive collections.
    pub fn irrelevant_collections(&self) -> Vec<Vec<usize>> {
        crate::moricone::primitive_collection_sets(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vector {0:?} is not in the support of the fan")]
pub struct NotInSupport(pub Vec<i64>);

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.0.iter().map(|r| (r + 1).to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}
