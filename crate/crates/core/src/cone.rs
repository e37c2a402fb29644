//! Rational polyhedral cones in `Z^n ⊗ R`, kept in a canonical double description.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::lattice::{saturation, smith_normal_form, IntMatrix, Sublattice};
use crate::linalg::{self, Vector};

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coordinates: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coordinates: Vec<BigRational>) -> Self {
        RationalPoint { coordinates }
    }

    pub fn from_integers(v: &[BigInt]) -> Self {
        RationalPoint {
            coordinates: linalg::to_rational(v),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.coordinates
    }

    /// A positive integer multiple of the point; membership in a cone is unaffected.
    fn scaled_to_integers(&self) -> Vector {
        linalg::clear_denominators(&self.coordinates)
    }
}

/// Which part of a cone a membership query tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The closed cone, boundary included.
    Closed,
    /// The relative interior: strictly positive on every facet inequality.
    RelativeInterior,
}

/// A rational polyhedral cone.
///
/// Both descriptions are canonical: extreme rays are primitive, orthogonal to the lineality
/// space and sorted; facet normals are primitive, orthogonal to the equation space and sorted;
/// the lineality space and the equation space are saturated sublattices in Hermite form.
/// Structural equality is therefore equality of cones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vector>,
    lineality: Sublattice,
    facets: Vec<Vector>,
    equations: Sublattice,
}

struct Description {
    lineality: Vec<Vector>,
    rays: Vec<Vector>,
}

/// Generators of `{x : a·x ≥ 0 for every a in constraints}` by the double description method.
fn double_description(dim: usize, constraints: &[Vector]) -> Description {
    let mut lineality = IntMatrix::identity(dim).row_vectors();
    let mut rays: Vec<Vector> = Vec::new();
    let mut seen: Vec<Vector> = Vec::new();
    for a in constraints {
        if linalg::is_zero(a) {
            continue;
        }
        seen.push(a.clone());
        if let Some(k) = lineality.iter().position(|l| !linalg::dot(a, l).is_zero()) {
            let mut pivot = lineality.remove(k);
            let mut s = linalg::dot(a, &pivot);
            if s.is_negative() {
                pivot = linalg::neg(&pivot);
                s = -s;
            }
            lineality = lineality
                .iter()
                .map(|l| linalg::primitive(&linalg::combine(&s, l, &-linalg::dot(a, l), &pivot)))
                .collect();
            let mut next: Vec<Vector> = rays
                .iter()
                .map(|r| linalg::combine(&s, r, &-linalg::dot(a, r), &pivot))
                .collect();
            next.push(pivot);
            rays = next
                .iter()
                .map(|r| linalg::project_orthogonal(r, &lineality))
                .filter(|r| !linalg::is_zero(r))
                .collect();
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| linalg::dot(a, r)).collect();
            let target = dim - lineality.len() - 1;
            let mut next: Vec<Vector> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in rays.iter().zip(&values) {
                if !vp.is_positive() {
                    continue;
                }
                for (q, vq) in rays.iter().zip(&values) {
                    if !vq.is_negative() {
                        continue;
                    }
                    let c = linalg::primitive(&linalg::combine(&-vq, p, vp, q));
                    let tight: Vec<Vector> = seen
                        .iter()
                        .filter(|b| linalg::dot(b, &c).is_zero())
                        .cloned()
                        .collect();
                    if linalg::rank(&tight, dim) == target {
                        next.push(c);
                    }
                }
            }
            rays = next;
        }
        rays.sort();
        rays.dedup();
    }
    Description { lineality, rays }
}

fn canonical_lattice(dim: usize, gens: &[Vector]) -> Sublattice {
    saturation(&Sublattice::span(dim, gens).expect("generators have ambient length"))
}

fn canonical_directions(vectors: &[Vector], modulo: &Sublattice) -> Vec<Vector> {
    let mut out: Vec<Vector> = vectors
        .iter()
        .map(|v| linalg::project_orthogonal(v, modulo.basis()))
        .filter(|v| !linalg::is_zero(v))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn with_negatives(vectors: &[Vector]) -> Vec<Vector> {
    vectors
        .iter()
        .flat_map(|v| [v.clone(), linalg::neg(v)])
        .collect()
}

impl Cone {
    fn assemble(dim: usize, primal: Description, dual: Description) -> Cone {
        let lineality = canonical_lattice(dim, &primal.lineality);
        let equations = canonical_lattice(dim, &dual.lineality);
        Cone {
            ambient_rank: dim,
            rays: canonical_directions(&primal.rays, &lineality),
            facets: canonical_directions(&dual.rays, &equations),
            lineality,
            equations,
        }
    }

    /// The cone generated by `generators`, in canonical form.
    pub fn from_generators(ambient_rank: usize, generators: &[Vec<BigInt>]) -> Result<Cone> {
        for g in generators {
            check_dim(ambient_rank, g.len())?;
        }
        let dual = double_description(ambient_rank, generators);
        let mut constraints = dual.rays.clone();
        constraints.extend(with_negatives(&dual.lineality));
        let primal = double_description(ambient_rank, &constraints);
        Ok(Self::assemble(ambient_rank, primal, dual))
    }

    /// The cone `{x : a·x ≥ 0 for a in inequalities, e·x = 0 for e in equations}`.
    pub fn from_inequalities(
        ambient_rank: usize,
        inequalities: &[Vec<BigInt>],
        equations: &[Vec<BigInt>],
    ) -> Result<Cone> {
        for g in inequalities.iter().chain(equations) {
            check_dim(ambient_rank, g.len())?;
        }
        let mut constraints = inequalities.to_vec();
        constraints.extend(with_negatives(equations));
        let primal = double_description(ambient_rank, &constraints);
        let mut gens = primal.rays.clone();
        gens.extend(with_negatives(&primal.lineality));
        let dual = double_description(ambient_rank, &gens);
        Ok(Self::assemble(ambient_rank, primal, dual))
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Self::from_generators(ambient_rank, &[]).expect("no generators")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Extreme rays modulo the lineality space.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.lineality
    }

    pub fn lineality_rank(&self) -> usize {
        self.lineality.rank()
    }

    /// Facet normals `a`, one per facet, with `a·x ≥ 0` on the cone.
    pub fn inequalities(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// Linear forms vanishing on the cone.
    pub fn equations(&self) -> &Sublattice {
        &self.equations
    }

    /// A generating set: the rays followed by both signs of each lineality basis vector.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.rays.clone();
        out.extend(with_negatives(self.lineality.basis()));
        out
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.rank()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.rank() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// True when the cone is a linear subspace.
    pub fn is_linear(&self) -> bool {
        self.facets.is_empty()
    }

    fn contains_integer(&self, p: &[BigInt], mode: Membership) -> bool {
        if self
            .equations
            .basis()
            .iter()
            .any(|e| !linalg::dot(e, p).is_zero())
        {
            return false;
        }
        self.facets.iter().all(|f| {
            let v = linalg::dot(f, p);
            match mode {
                Membership::Closed => !v.is_negative(),
                Membership::RelativeInterior => v.is_positive(),
            }
        })
    }

    pub fn contains(&self, p: &RationalPoint, mode: Membership) -> Result<bool> {
        check_dim(self.ambient_rank, p.ambient_rank())?;
        Ok(self.contains_integer(&p.scaled_to_integers(), mode))
    }

    /// Closed membership of a lattice point.
    pub fn contains_point(&self, p: &[BigInt]) -> Result<bool> {
        check_dim(self.ambient_rank, p.len())?;
        Ok(self.contains_integer(p, Membership::Closed))
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        check_dim(self.ambient_rank, other.ambient_rank)?;
        Ok(other
            .generators()
            .iter()
            .all(|g| self.contains_integer(g, Membership::Closed)))
    }

    /// A lattice point in the relative interior: the sum of the rays.
    pub fn interior_point(&self) -> Vec<BigInt> {
        self.rays
            .iter()
            .fold(vec![BigInt::zero(); self.ambient_rank], |acc, r| {
                linalg::add(&acc, r)
            })
    }

    /// The smallest face containing `p`; `p` must lie in the cone.
    pub fn smallest_face_containing(&self, p: &[BigInt]) -> Result<Cone> {
        check_dim(self.ambient_rank, p.len())?;
        if !self.contains_integer(p, Membership::Closed) {
            return Err(Error::NotAFace);
        }
        let tight: Vec<&Vector> = self
            .facets
            .iter()
            .filter(|f| linalg::dot(f, p).is_zero())
            .collect();
        let mut gens: Vec<Vector> = self
            .rays
            .iter()
            .filter(|r| tight.iter().all(|f| linalg::dot(f, r).is_zero()))
            .cloned()
            .collect();
        gens.extend(with_negatives(self.lineality.basis()));
        Cone::from_generators(self.ambient_rank, &gens)
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient_rank != other.ambient_rank || !other.contains_cone(self).unwrap_or(false) {
            return false;
        }
        other
            .smallest_face_containing(&self.interior_point())
            .map(|f| f == *self)
            .unwrap_or(false)
    }

    /// All faces, from the zero cone up to the cone itself, sorted by dimension.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        if !self.is_strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = vec![all.clone()];
        found.insert(all);
        while let Some(set) = queue.pop() {
            for f in &self.facets {
                let sub: BTreeSet<usize> = set
                    .iter()
                    .copied()
                    .filter(|&i| linalg::dot(f, &self.rays[i]).is_zero())
                    .collect();
                if found.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        let mut faces: Vec<Cone> = found
            .iter()
            .map(|set| {
                let gens: Vec<Vector> = set.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_generators(self.ambient_rank, &gens)
            })
            .collect::<Result<_>>()?;
        faces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        faces.dedup();
        Ok(faces)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        check_dim(self.ambient_rank, other.ambient_rank)?;
        let ineqs: Vec<Vector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Vector> = self
            .equations
            .basis()
            .iter()
            .chain(other.equations.basis())
            .cloned()
            .collect();
        Cone::from_inequalities(self.ambient_rank, &ineqs, &eqs)
    }

    /// The image cone under `m`, which may fail to be strongly convex.
    pub fn image(&self, m: &IntMatrix) -> Result<Cone> {
        check_dim(m.cols(), self.ambient_rank)?;
        let gens: Vec<Vector> = self
            .generators()
            .iter()
            .map(|g| m.apply_unchecked(g))
            .collect();
        Cone::from_generators(m.rows(), &gens)
    }

    /// The saturated sublattice generated by the lattice points of the cone.
    pub fn cone_group(&self) -> Sublattice {
        canonical_lattice(self.ambient_rank, &self.generators())
    }

    /// The cone `self × other` in the direct sum of the ambient lattices.
    pub fn product(&self, other: &Cone) -> Cone {
        let n = self.ambient_rank + other.ambient_rank;
        let zeros_right = vec![BigInt::zero(); other.ambient_rank];
        let zeros_left = vec![BigInt::zero(); self.ambient_rank];
        let mut gens: Vec<Vector> = self
            .generators()
            .into_iter()
            .map(|g| g.into_iter().chain(zeros_right.iter().cloned()).collect())
            .collect();
        gens.extend(
            other
                .generators()
                .into_iter()
                .map(|g| zeros_left.iter().cloned().chain(g).collect()),
        );
        Cone::from_generators(n, &gens).expect("embedded generators have the summed rank")
    }

    /// The minimal generating set of the monoid of lattice points in the cone, sorted.
    pub fn hilbert_basis(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        if self.rays.is_empty() {
            return Ok(Vec::new());
        }
        let group = self.cone_group();
        let coords: Vec<Vector> = self
            .rays
            .iter()
            .map(|r| group.coordinates(r).expect("rays lie in the cone group"))
            .collect();
        let mut candidates: BTreeSet<Vector> = self.rays.iter().cloned().collect();
        for simplex in triangulate(self.ambient_rank, &self.rays) {
            let columns: Vec<Vector> = simplex.iter().map(|&i| coords[i].clone()).collect();
            for y in parallelepiped_points(&columns) {
                let point = group
                    .basis()
                    .iter()
                    .zip(&y)
                    .fold(vec![BigInt::zero(); self.ambient_rank], |acc, (b, c)| {
                        linalg::combine(&BigInt::from(1), &acc, c, b)
                    });
                if !linalg::is_zero(&point) {
                    candidates.insert(point);
                }
            }
        }
        let grading: Vector = self
            .facets
            .iter()
            .fold(vec![BigInt::zero(); self.ambient_rank], |acc, f| {
                linalg::add(&acc, f)
            });
        let candidates: Vec<Vector> = candidates.into_iter().collect();
        let degree: Vec<BigInt> = candidates
            .iter()
            .map(|c| linalg::dot(&grading, c))
            .collect();
        let basis: Vec<Vector> = candidates
            .iter()
            .enumerate()
            .filter(|(i, x)| {
                !candidates.iter().enumerate().any(|(j, y)| {
                    j != *i
                        && degree[j] < degree[*i]
                        && self.contains_integer(&linalg::sub(x, y), Membership::Closed)
                })
            })
            .map(|(_, x)| x.clone())
            .collect();
        Ok(basis)
    }
}

/// Splits a pointed cone, given by its extreme rays, into simplicial cones sharing no
/// interior points. Returns index sets into `rays`.
fn triangulate(dim: usize, rays: &[Vector]) -> Vec<Vec<usize>> {
    let d = linalg::rank(rays, dim);
    if rays.len() == d {
        return vec![(0..rays.len()).collect()];
    }
    let cone = Cone::from_generators(dim, rays).expect("rays have ambient length");
    let mut out = Vec::new();
    for f in cone.inequalities() {
        if !linalg::dot(f, &rays[0]).is_zero() {
            let idx: Vec<usize> = (0..rays.len())
                .filter(|&i| linalg::dot(f, &rays[i]).is_zero())
                .collect();
            let sub: Vec<Vector> = idx.iter().map(|&i| rays[i].clone()).collect();
            for s in triangulate(dim, &sub) {
                let mut simplex = vec![0];
                simplex.extend(s.iter().map(|&j| idx[j]));
                out.push(simplex);
            }
        }
    }
    out
}

/// Lattice points `A·λ` with `λ ∈ [0,1)^d` for the nonsingular square matrix whose columns
/// are `columns`.
fn parallelepiped_points(columns: &[Vector]) -> Vec<Vector> {
    let d = columns.len();
    let a = IntMatrix::from_columns(d, columns).expect("square");
    let a_rat: Vec<Vec<BigRational>> = a
        .row_vectors()
        .iter()
        .map(|r| linalg::to_rational(r))
        .collect();
    let snf = smith_normal_form(&a);
    let u_rat: Vec<Vec<BigRational>> = snf
        .u
        .row_vectors()
        .iter()
        .map(|r| linalg::to_rational(r))
        .collect();
    let factors = snf.invariant_factors();
    let mut out = Vec::new();
    let mut t = vec![BigInt::zero(); d];
    loop {
        let x = linalg::solve(&u_rat, &linalg::to_rational(&t)).expect("unimodular");
        let lambda = linalg::solve(&a_rat, &x).expect("nonsingular");
        let frac: Vec<BigRational> = lambda.iter().map(|l| l - l.floor()).collect();
        let y: Vector = a_rat
            .iter()
            .map(|row| {
                let v: BigRational = row.iter().zip(&frac).map(|(p, q)| p * q).sum();
                v.to_integer()
            })
            .collect();
        out.push(y);
        let mut i = 0;
        while i < d {
            t[i] += 1;
            if t[i] < factors[i] {
                break;
            }
            t[i] = BigInt::zero();
            i += 1;
        }
        if i == d {
            break;
        }
    }
    out
}

fn write_vectors(f: &mut fmt::Formatter<'_>, vs: &[Vector]) -> fmt::Result {
    for (k, v) in vs.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", coords.join(","))?;
    }
    Ok(())
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone(")?;
        write_vectors(f, &self.rays)?;
        if self.lineality.rank() > 0 {
            write!(f, "; lineality ")?;
            write_vectors(f, self.lineality.basis())?;
        }
        write!(f, ")")
    }
}
