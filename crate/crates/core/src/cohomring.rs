//! The classical cohomology ring `H*(X; Q)` as a quotient of a polynomial ring.
//!
//! The `n` divisor variables of one maximal cone are eliminated through the
//! linear relations `Σ_ρ ⟨m, u_ρ⟩ x_ρ = 0`; the remaining `r` variables are the
//! degree-two generators, and the image of the Stanley–Reisner ideal is put in
//! Gröbner form. Standard monomials give the basis.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fan::Fan;
use crate::lattice::{self, to_big};
use crate::moricone::primitive_collection_sets;
use crate::poly::{groebner_basis, render_terms, Monomial, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("quotient has dimension {found}, but the fan has {expected} maximal cones")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point-class normalization is inconsistent across maximal cones")]
    InconsistentNormalization,
    #[error("Poincaré pairing is singular")]
    SingularPairing,
    #[error("eliminated cone is not unimodular")]
    NotSmooth,
}

/// A cohomology class as a coefficient vector over the monomial basis.
#[derive(Clone, PartialEq, Debug)]
pub struct CohClass<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> CohClass<S> {
    pub fn zero(len: usize) -> Self {
        CohClass { coeffs: vec![S::zero(); len] }
    }

    pub fn basis_element(len: usize, i: usize) -> Self {
        let mut c = Self::zero(len);
        c.coeffs[i] = S::one();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        CohClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CohClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, k: &S) -> Self {
        CohClass { coeffs: self.coeffs.iter().map(|a| a.clone() * k.clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        CohClass { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct CohomRing<S> {
    num_rays: usize,
    dim: usize,
    eliminated: Vec<usize>,
    free: Vec<usize>,
    /// Image of each `x_ρ` as a linear form in the free variables.
    substitution: Vec<Poly<S>>,
    groebner: Vec<Poly<S>>,
    basis: Vec<Monomial>,
    /// `table[i][j]` is `basis[i] * basis[j]`.
    table: Vec<Vec<CohClass<S>>>,
    top: usize,
    top_integral: S,
    names: Vec<String>,
}

impl<S: Scalar> CohomRing<S> {
    pub fn build(fan: &Fan) -> Result<Self, CohomError> {
        let n = fan.dim();
        let rays = fan.num_rays();
        // Eliminating the last maximal cone leaves the lowest-numbered rays as generators.
        let eliminated = fan.max_cones().last().expect("fan has cones").rays().to_vec();
        let free: Vec<usize> = (0..rays).filter(|r| !eliminated.contains(r)).collect();
        let r = free.len();

        let cone_basis: Vec<Vec<BigInt>> = eliminated.iter().map(|&e| to_big(fan.ray(e))).collect();
        let mut substitution: Vec<Poly<S>> = vec![Poly::zero(r); rays];
        for (k, &f) in free.iter().enumerate() {
            substitution[f] = Poly::var(r, k);
        }
        // Σ_ρ u_ρ x_ρ = 0  ⇒  x_{σ0} = -U⁻¹ Σ_{free} u_f x_f.
        for (k, &f) in free.iter().enumerate() {
            let c = lattice::solve_in_basis(&cone_basis, &to_big(fan.ray(f))).map_err(|_| CohomError::NotSmooth)?;
            for (i, &e) in eliminated.iter().enumerate() {
                let coeff = -S::from_bigint(&c[i]);
                substitution[e] = substitution[e].add(&Poly::term(Monomial::var(r, k), coeff));
            }
        }

        let sr: Vec<Poly<S>> = primitive_collection_sets(fan)
            .iter()
            .map(|p| p.iter().fold(Poly::constant(r, S::one()), |acc, &ray| acc.mul(&substitution[ray])))
            .collect();
        let groebner = groebner_basis(&sr);

        let leads: Vec<Monomial> = groebner.iter().map(|g| g.leading().expect("nonzero").0.clone()).collect();
        let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
        let mut basis = Vec::new();
        for d in 0..=n as u32 {
            basis.extend(Monomial::all_of_degree(r, d).into_iter().filter(|m| standard(m)));
        }
        let expected = fan.max_cones().len();
        let overflow = Monomial::all_of_degree(r, n as u32 + 1).iter().any(standard);
        if overflow || basis.len() != expected {
            return Err(CohomError::DimensionMismatch { expected, found: basis.len() });
        }

        let names = free.iter().map(|f| format!("x{}", f + 1)).collect();
        let mut ring = CohomRing {
            num_rays: rays,
            dim: n,
            eliminated,
            free,
            substitution,
            groebner,
            basis,
            table: Vec::new(),
            top: 0,
            top_integral: S::zero(),
            names,
        };

        let len = ring.basis.len();
        ring.table = (0..len)
            .map(|i| (0..len).map(|j| ring.normal_form(&Poly::term(ring.basis[i].mul(&ring.basis[j]), S::one()))).collect())
            .collect();

        let tops: Vec<usize> = (0..len).filter(|&i| ring.basis[i].degree() == n as u32).collect();
        if tops.len() != 1 {
            return Err(CohomError::DimensionMismatch { expected: 1, found: tops.len() });
        }
        ring.top = tops[0];
        // ∫ Π_{ρ∈σ} D_ρ = 1 for every maximal cone.
        let mut value: Option<S> = None;
        for cone in fan.max_cones() {
            let p = cone.rays().iter().fold(Poly::constant(r, S::one()), |acc, &ray| acc.mul(&ring.substitution[ray]));
            let c = ring.normal_form(&p).coeffs[ring.top].clone();
            if c.is_zero() {
                return Err(CohomError::InconsistentNormalization);
            }
            let v = S::one() / c;
            match &value {
                Some(prev) if *prev != v => return Err(CohomError::InconsistentNormalization),
                _ => value = Some(v),
            }
        }
        ring.top_integral = value.expect("at least one cone");
        Ok(ring)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rays(&self) -> usize {
        self.num_rays
    }

    /// Number of basis elements, i.e. `dim_Q H*(X)`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Rays whose variables were eliminated by the linear relations.
    pub fn eliminated_rays(&self) -> &[usize] {
        &self.eliminated
    }

    /// Rays whose variables survive as generators, in variable order.
    pub fn free_rays(&self) -> &[usize] {
        &self.free
    }

    pub fn substitution(&self, ray: usize) -> &Poly<S> {
        &self.substitution[ray]
    }

    pub fn groebner_basis(&self) -> &[Poly<S>] {
        &self.groebner
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    /// `dim H^{2k}` for `k = 0..=dim`.
    pub fn graded_dimensions(&self) -> Vec<usize> {
        (0..=self.dim as u32).map(|d| self.basis.iter().filter(|m| m.degree() == d).count()).collect()
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    /// Complex degree of a basis element.
    pub fn basis_degree(&self, i: usize) -> u32 {
        self.basis[i].degree()
    }

    pub fn normal_form(&self, p: &Poly<S>) -> CohClass<S> {
        let rem = p.reduce(&self.groebner);
        let mut out = CohClass::zero(self.basis.len());
        for (m, c) in rem.terms() {
            let i = self.basis_index(m).expect("remainder is standard");
            out.coeffs[i] = c.clone();
        }
        out
    }

    pub fn one(&self) -> CohClass<S> {
        CohClass::basis_element(self.rank(), 0)
    }

    pub fn constant(&self, c: S) -> CohClass<S> {
        self.one().scale(&c)
    }

    pub fn mul(&self, a: &CohClass<S>, b: &CohClass<S>) -> CohClass<S> {
        let mut out = CohClass::zero(self.rank());
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let k = ai.clone() * bj.clone();
                out = out.add(&self.table[i][j].scale(&k));
            }
        }
        out
    }

    pub fn pow(&self, a: &CohClass<S>, e: u32) -> CohClass<S> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// The class of the toric divisor `D_ρ`.
    pub fn divisor_class(&self, ray: usize) -> CohClass<S> {
        self.normal_form(&self.substitution[ray])
    }

    /// `∫_X c`, reading off the top-degree component.
    pub fn integrate(&self, c: &CohClass<S>) -> S {
        c.coeffs[self.top].clone() * self.top_integral.clone()
    }

    /// Whether `c` has no degree-zero component, hence is nilpotent.
    pub fn is_nilpotent(&self, c: &CohClass<S>) -> bool {
        c.coeffs[0].is_zero()
    }

    /// The dual basis `{T^a}` with `∫ T_a T^b = δ_ab`, where `{T_a}` is the monomial basis.
    pub fn poincare_dual_basis(&self) -> Result<Vec<CohClass<S>>, CohomError> {
        let n = self.rank();
        let gram: Vec<Vec<S>> = (0..n)
            .map(|a| (0..n).map(|b| self.integrate(&self.table[a][b])).collect())
            .collect();
        let inv = invert(gram).ok_or(CohomError::SingularPairing)?;
        Ok((0..n).map(|b| CohClass { coeffs: (0..n).map(|c| inv[c][b].clone()).collect() }).collect())
    }

    /// Matrix of cup product by `c`: column `a` holds `c · T_a`.
    pub fn cup_matrix(&self, c: &CohClass<S>) -> Vec<Vec<S>> {
        let n = self.rank();
        let cols: Vec<CohClass<S>> = (0..n).map(|a| self.mul(c, &CohClass::basis_element(n, a))).collect();
        (0..n).map(|b| (0..n).map(|a| cols[a].coeffs[b].clone()).collect()).collect()
    }

    pub fn render(&self, c: &CohClass<S>) -> String {
        render_terms(
            c.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (v.to_string(), self.basis[i].render(&self.names))),
        )
    }
}

/// Gauss–Jordan inverse over a field.
pub(crate) fn invert<S: Scalar>(mut m: Vec<Vec<S>>) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut inv: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let k = S::one() / m[c][c].clone();
        for j in 0..n {
            m[c][j] = m[c][j].clone() * k.clone();
            inv[c][j] = inv[c][j].clone() * k.clone();
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    m[i][j] = m[i][j].clone() - f.clone() * m[c][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[c][j].clone();
                }
            }
        }
    }
    Some(inv)
}

impl<S: Scalar> fmt::Display for CohClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
