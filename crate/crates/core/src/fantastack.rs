//! Coloured fantastacks: lifting a coloured fan along a map from a free lattice, the Cox
//! construction, root stacks, smoothness predicates and class groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::check::Check;
use crate::coloured::{Colour, ColouredCone, ColouredFan, ColouredLattice};
use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{cokernel_structure, AbelianGroupStructure, IntMatrix};
use crate::linalg::{self, Vector};
use crate::stacky::StackyColouredFan;

/// A base fan on `N` and a map `Z^n → N` whose first columns are the colour points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FantastackInput {
    base_fan: ColouredFan,
    beta: IntMatrix,
}

impl FantastackInput {
    pub fn new(base_fan: ColouredFan, beta: IntMatrix) -> Result<Self> {
        check_dim(base_fan.rank(), beta.rows())?;
        let colours = base_fan.lattice().colours().len();
        if beta.cols() < colours {
            return Err(Error::CfViolation(format!(
                "{} columns cannot hold the {colours} colour points",
                beta.cols()
            )));
        }
        Ok(FantastackInput { base_fan, beta })
    }

    /// Colour points followed by `extra_columns`.
    pub fn with_extra_columns(
        base_fan: ColouredFan,
        extra_columns: &[Vec<BigInt>],
    ) -> Result<Self> {
        let mut columns: Vec<Vector> = base_fan
            .lattice()
            .colours()
            .iter()
            .map(|c| c.point.clone())
            .collect();
        columns.extend(extra_columns.iter().cloned());
        let beta = IntMatrix::from_columns(base_fan.rank(), &columns)?;
        Self::new(base_fan, beta)
    }

    pub fn base_fan(&self) -> &ColouredFan {
        &self.base_fan
    }

    pub fn beta(&self) -> &IntMatrix {
        &self.beta
    }

    /// Number of colours of the base lattice.
    pub fn colour_count(&self) -> usize {
        self.base_fan.lattice().colours().len()
    }

    pub fn column_count(&self) -> usize {
        self.beta.cols()
    }
}

/// Outcome of the four fantastack conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfReport {
    /// Colour points and support span the lattice.
    pub spanning: Check,
    /// Extra columns lie in the support.
    pub columns_in_support: Check,
    /// Leading columns are the colour points.
    pub colour_columns: Check,
    /// Every non-coloured ray contains a nonzero extra column.
    pub rays_hit: Check,
}

impl CfReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.spanning,
            &self.columns_in_support,
            &self.colour_columns,
            &self.rays_hit,
        ]
        .iter()
        .all(|c| c.passed())
    }

    fn failures(&self) -> Vec<String> {
        [
            ("spanning", &self.spanning),
            ("columns in support", &self.columns_in_support),
            ("colour columns", &self.colour_columns),
            ("rays hit", &self.rays_hit),
        ]
        .iter()
        .filter(|(_, c)| !c.passed())
        .map(|(name, c)| format!("{name}: {}", c.witness.clone().unwrap_or_default()))
        .collect()
    }
}

/// Whether the colour points together with the support span the lattice over the rationals.
pub fn spans_lattice(f: &ColouredFan) -> bool {
    let mut vectors: Vec<Vector> = f
        .lattice()
        .colours()
        .iter()
        .map(|c| c.point.clone())
        .collect();
    for c in f.maximal_cones() {
        vectors.extend(c.cone().rays().iter().cloned());
    }
    linalg::rank(&vectors, f.rank()) == f.rank()
}

fn show(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn positive_multiple_of(v: &[BigInt], ray: &[BigInt]) -> bool {
    !linalg::is_zero(v) && linalg::primitive(v) == ray
}

pub fn check_cf(fi: &FantastackInput) -> CfReport {
    let f = &fi.base_fan;
    let columns = fi.beta.columns();
    let (colour_cols, extra) = columns.split_at(fi.colour_count());
    let spanning = Check::from_failure(
        (!spans_lattice(f)).then(|| "colour points and support span a proper subspace".into()),
    );
    let columns_in_support = Check::from_failure(
        extra
            .iter()
            .find(|c| !f.support_contains(c))
            .map(|c| format!("column {} is outside the support", show(c))),
    );
    let colour_columns = Check::from_failure(
        f.lattice()
            .colours()
            .iter()
            .zip(colour_cols)
            .find(|(c, col)| &c.point != *col)
            .map(|(c, col)| {
                format!(
                    "column {} differs from the point of {:?}",
                    show(col),
                    c.label
                )
            }),
    );
    let rays_hit = Check::from_failure(
        f.non_coloured_rays()
            .into_iter()
            .find(|ray| !extra.iter().any(|c| positive_multiple_of(c, ray)))
            .map(|ray| format!("no column lies on the ray {}", show(&ray))),
    );
    CfReport {
        spanning,
        columns_in_support,
        colour_columns,
        rays_hit,
    }
}

fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// The lifted fan on `Z^n` paired with the map to `N`.
pub fn build_fantastack(fi: &FantastackInput) -> Result<StackyColouredFan> {
    let report = check_cf(fi);
    if !report.all_pass() {
        return Err(Error::CfViolation(report.failures().join("; ")));
    }
    let n = fi.column_count();
    let colours = fi.base_fan.lattice().colours();
    let lifted_lattice = ColouredLattice::new(
        n,
        colours
            .iter()
            .enumerate()
            .map(|(i, c)| Colour::new(c.label.clone(), unit_vector(n, i)))
            .collect(),
    )?;
    let columns = fi.beta.columns();
    let mut cones = Vec::new();
    for sigma in fi.base_fan.maximal_cones() {
        let mut gens: Vec<Vector> = colours
            .iter()
            .enumerate()
            .filter(|(_, c)| sigma.colours().contains(&c.label))
            .map(|(i, _)| unit_vector(n, i))
            .collect();
        gens.extend(
            (colours.len()..n)
                .filter(|&i| sigma.cone().contains_point(&columns[i]).unwrap_or(false))
                .map(|i| unit_vector(n, i)),
        );
        let cone = Cone::from_generators(n, &gens)?;
        cones.push(ColouredCone::new(
            &lifted_lattice,
            cone,
            sigma.colours().clone(),
        )?);
    }
    let fan = ColouredFan::from_cones(lifted_lattice, cones)?;
    StackyColouredFan::new(fan, fi.beta.clone())
}

/// Colour points followed by the primitive generators of the non-coloured rays, in
/// lexicographic order.
pub fn cox_beta(f: &ColouredFan) -> Result<FantastackInput> {
    if !spans_lattice(f) {
        return Err(Error::Cf1Violation);
    }
    FantastackInput::with_extra_columns(f.clone(), &f.non_coloured_rays())
}

/// The Cox map with the column of one non-coloured ray multiplied by `order`.
pub fn root_stack_beta(f: &ColouredFan, ray: &[BigInt], order: &BigInt) -> Result<FantastackInput> {
    check_dim(f.rank(), ray.len())?;
    if !order.is_positive() {
        return Err(Error::ValidationError {
            axiom: "root order".into(),
            detail: format!("order {order} must be at least 1"),
        });
    }
    let target = linalg::primitive(ray);
    let rays = f.non_coloured_rays();
    if linalg::is_zero(ray) || !rays.contains(&target) {
        return Err(Error::NotANonColouredRay(show(ray)));
    }
    if !spans_lattice(f) {
        return Err(Error::Cf1Violation);
    }
    let extra: Vec<Vector> = rays
        .into_iter()
        .map(|r| {
            if r == target {
                r.iter().map(|x| x * order).collect()
            } else {
                r
            }
        })
        .collect();
    FantastackInput::with_extra_columns(f.clone(), &extra)
}

/// Per maximal cone: generators of its non-coloured rays together with its colour points,
/// repetitions kept.
fn cone_multisets(f: &ColouredFan) -> Vec<Vec<Vector>> {
    let rays: BTreeSet<Vector> = f.non_coloured_rays().into_iter().collect();
    f.maximal_cones()
        .iter()
        .map(|sigma| {
            let mut items: Vec<Vector> = sigma
                .cone()
                .rays()
                .iter()
                .filter(|r| rays.contains(*r))
                .cloned()
                .collect();
            items.extend(
                sigma
                    .colours()
                    .iter()
                    .map(|l| f.lattice().point(l).expect("fan colour").to_vec()),
            );
            items
        })
        .collect()
}

pub fn is_simplicial(f: &ColouredFan) -> bool {
    cone_multisets(f)
        .iter()
        .all(|items| linalg::rank(items, f.rank()) == items.len())
}

pub fn is_regular(f: &ColouredFan) -> bool {
    cone_multisets(f).iter().all(|items| {
        let distinct: BTreeSet<&Vector> = items.iter().collect();
        if distinct.len() != items.len() || linalg::rank(items, f.rank()) != items.len() {
            return false;
        }
        let m = IntMatrix::from_columns(f.rank(), items).expect("items have lattice rank");
        cokernel_structure(&m).torsion().is_empty()
    })
}

/// Cokernel of `N^∨ → Z^{n'}`, `m ↦ (⟨m, u⟩)` over colour points and non-coloured rays.
pub fn class_group(f: &ColouredFan) -> Result<AbelianGroupStructure> {
    if !spans_lattice(f) {
        return Err(Error::Cf1Violation);
    }
    let mut rows: Vec<Vector> = f
        .lattice()
        .colours()
        .iter()
        .map(|c| c.point.clone())
        .collect();
    rows.extend(f.non_coloured_rays());
    let m = IntMatrix::from_rows(f.rank(), &rows)?;
    let group = cokernel_structure(&m);
    debug_assert_eq!(group.free_rank(), rows.len() - f.rank());
    Ok(group)
}

/// Cartan–Killing family of a simple factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "A" => Some(Family::A),
            "B" => Some(Family::B),
            "C" => Some(Family::C),
            "D" => Some(Family::D),
            "E" => Some(Family::E),
            "F" => Some(Family::F),
            "G" => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Simple factors of the group and the simple root carried by each colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemDescriptor {
    pub factors: Vec<(Family, usize)>,
    /// Colour label to (factor index, node index counted from 1).
    pub colour_assignment: BTreeMap<String, (usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NonToricVerdict {
    NotToric,
    Inconclusive,
}

/// Refutes toricness when some type-A factor carries two colours, or one colour at an
/// interior node.
pub fn non_toric_test(f: &ColouredFan, rs: &RootSystemDescriptor) -> Result<NonToricVerdict> {
    if !spans_lattice(f) {
        return Err(Error::Cf1Violation);
    }
    let invalid = |detail: String| Error::ValidationError {
        axiom: "root system descriptor".into(),
        detail,
    };
    let labels = f.lattice().labels();
    let mut used = BTreeSet::new();
    for (label, &(factor, node)) in &rs.colour_assignment {
        if !labels.contains(label) {
            return Err(invalid(format!("{label:?} is not a colour of the lattice")));
        }
        let Some(&(_, rank)) = rs.factors.get(factor) else {
            return Err(invalid(format!("factor {factor} does not exist")));
        };
        if node == 0 || node > rank {
            return Err(invalid(format!("node {node} is outside 1..={rank}")));
        }
        if !used.insert((factor, node)) {
            return Err(invalid(format!(
                "node {node} of factor {factor} carries two colours"
            )));
        }
    }
    for (index, &(family, rank)) in rs.factors.iter().enumerate() {
        if family != Family::A {
            continue;
        }
        let nodes: Vec<usize> = rs
            .colour_assignment
            .values()
            .filter(|(fi, _)| *fi == index)
            .map(|(_, n)| *n)
            .collect();
        if nodes.len() >= 2 || (nodes.len() == 1 && rank >= 2 && nodes[0] != 1 && nodes[0] != rank)
        {
            return Ok(NonToricVerdict::NotToric);
        }
    }
    Ok(NonToricVerdict::Inconclusive)
}
