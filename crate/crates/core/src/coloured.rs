//! Coloured lattices, coloured cones and coloured fans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::lattice::IntMatrix;
use crate::linalg::{self, Vector};

/// A labelled colour point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colour {
    pub label: String,
    pub point: Vec<BigInt>,
}

impl Colour {
    pub fn new(label: impl Into<String>, point: Vec<BigInt>) -> Self {
        Colour {
            label: label.into(),
            point,
        }
    }
}

/// A lattice `Z^rank` with finitely many labelled colour points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredLattice {
    rank: usize,
    colours: Vec<Colour>,
}

impl ColouredLattice {
    pub fn new(rank: usize, colours: Vec<Colour>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &colours {
            check_dim(rank, c.point.len())?;
            if !seen.insert(c.label.as_str()) {
                return Err(Error::ValidationError {
                    axiom: "duplicate colour label".into(),
                    detail: format!("label {:?} appears more than once", c.label),
                });
            }
        }
        Ok(ColouredLattice { rank, colours })
    }

    pub fn uncoloured(rank: usize) -> Self {
        ColouredLattice {
            rank,
            colours: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn labels(&self) -> BTreeSet<String> {
        self.colours.iter().map(|c| c.label.clone()).collect()
    }

    pub fn point(&self, label: &str) -> Option<&[BigInt]> {
        self.colours
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.point.as_slice())
    }

    /// The same labels with every point pushed forward along `m`.
    pub fn image(&self, m: &IntMatrix) -> Result<ColouredLattice> {
        check_dim(m.cols(), self.rank)?;
        let colours = self
            .colours
            .iter()
            .map(|c| Colour::new(c.label.clone(), m.apply_unchecked(&c.point)))
            .collect();
        Ok(ColouredLattice {
            rank: m.rows(),
            colours,
        })
    }

    /// Keeps only the colours whose labels satisfy `keep`, pushing points along `m`.
    pub(crate) fn image_restricted(
        &self,
        m: &IntMatrix,
        keep: impl Fn(&str) -> bool,
    ) -> ColouredLattice {
        let colours = self
            .colours
            .iter()
            .filter(|c| keep(&c.label))
            .map(|c| Colour::new(c.label.clone(), m.apply_unchecked(&c.point)))
            .collect();
        ColouredLattice {
            rank: m.rows(),
            colours,
        }
    }

    /// Direct sum; labels of `other` found in `reserved` are renamed by appending primes
    /// until they avoid `avoid`. Returns the renaming applied to the labels of `other`.
    pub(crate) fn direct_sum_with(
        &self,
        other: &ColouredLattice,
        reserved: &BTreeSet<String>,
        avoid: &BTreeSet<String>,
    ) -> (ColouredLattice, BTreeMap<String, String>) {
        let renaming = renaming_for(&other.labels(), reserved, avoid);
        let zeros_right = vec![BigInt::zero(); other.rank];
        let zeros_left = vec![BigInt::zero(); self.rank];
        let mut colours: Vec<Colour> = self
            .colours
            .iter()
            .map(|c| {
                Colour::new(
                    c.label.clone(),
                    c.point.iter().chain(&zeros_right).cloned().collect(),
                )
            })
            .collect();
        colours.extend(other.colours.iter().map(|c| {
            Colour::new(
                renaming[&c.label].clone(),
                zeros_left.iter().chain(&c.point).cloned().collect(),
            )
        }));
        (
            ColouredLattice {
                rank: self.rank + other.rank,
                colours,
            },
            renaming,
        )
    }

    /// Direct sum; clashing labels of `other` receive trailing primes.
    pub fn direct_sum(
        &self,
        other: &ColouredLattice,
    ) -> (ColouredLattice, BTreeMap<String, String>) {
        let reserved = self.labels();
        let avoid: BTreeSet<String> = reserved.union(&other.labels()).cloned().collect();
        self.direct_sum_with(other, &reserved, &avoid)
    }
}

pub(crate) fn renaming_for(
    labels: &BTreeSet<String>,
    reserved: &BTreeSet<String>,
    avoid: &BTreeSet<String>,
) -> BTreeMap<String, String> {
    labels
        .iter()
        .map(|l| {
            if !reserved.contains(l) {
                return (l.clone(), l.clone());
            }
            let mut candidate = format!("{l}'");
            while avoid.contains(&candidate) {
                candidate.push('\'');
            }
            (l.clone(), candidate)
        })
        .collect()
}

/// A strongly convex cone with a set of colours whose points are nonzero and lie in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColouredCone {
    cone: Cone,
    colours: BTreeSet<String>,
}

impl ColouredCone {
    pub fn new(lattice: &ColouredLattice, cone: Cone, colours: BTreeSet<String>) -> Result<Self> {
        match cone_violation(lattice, &cone, &colours) {
            Some((NOT_STRONGLY_CONVEX, _)) => Err(Error::NotStronglyConvex),
            Some((axiom, detail)) => Err(Error::ValidationError {
                axiom: axiom.into(),
                detail,
            }),
            None => Ok(ColouredCone { cone, colours }),
        }
    }

    pub(crate) fn unchecked(cone: Cone, colours: BTreeSet<String>) -> Self {
        ColouredCone { cone, colours }
    }

    /// The trivial coloured cone `(0, ∅)`.
    pub fn trivial(rank: usize) -> Self {
        ColouredCone {
            cone: Cone::zero(rank),
            colours: BTreeSet::new(),
        }
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn colours(&self) -> &BTreeSet<String> {
        &self.colours
    }

    /// The coloured face `(τ, {α ∈ F : u_α ∈ τ})`.
    pub fn coloured_face(&self, lattice: &ColouredLattice, tau: &Cone) -> Result<ColouredCone> {
        check_dim(self.cone.ambient_rank(), tau.ambient_rank())?;
        if !tau.is_face_of(&self.cone) {
            return Err(Error::NotAFace);
        }
        Ok(ColouredCone {
            cone: tau.clone(),
            colours: induced_colours(lattice, &self.colours, tau),
        })
    }

    pub fn faces(&self, lattice: &ColouredLattice) -> Vec<ColouredCone> {
        self.cone
            .faces()
            .expect("coloured cones are strongly convex")
            .into_iter()
            .map(|tau| {
                let colours = induced_colours(lattice, &self.colours, &tau);
                ColouredCone { cone: tau, colours }
            })
            .collect()
    }

    /// Componentwise containment: `σ ⊆ σ'` and `F ⊆ F'`.
    pub fn is_contained_in(&self, other: &ColouredCone) -> bool {
        self.colours.is_subset(&other.colours)
            && other.cone.contains_cone(&self.cone).unwrap_or(false)
    }

    pub fn decolour(&self) -> ColouredCone {
        ColouredCone {
            cone: self.cone.clone(),
            colours: BTreeSet::new(),
        }
    }
}

impl fmt::Display for ColouredCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.colours.iter().map(String::as_str).collect();
        write!(f, "({}, {{{}}})", self.cone, labels.join(", "))
    }
}

fn induced_colours(
    lattice: &ColouredLattice,
    colours: &BTreeSet<String>,
    tau: &Cone,
) -> BTreeSet<String> {
    colours
        .iter()
        .filter(|l| {
            lattice
                .point(l)
                .map(|p| tau.contains_point(p).unwrap_or(false))
                .unwrap_or(false)
        })
        .cloned()
        .collect()
}

const NOT_STRONGLY_CONVEX: &str = "cone not strongly convex";

fn cone_violation(
    lattice: &ColouredLattice,
    cone: &Cone,
    colours: &BTreeSet<String>,
) -> Option<(&'static str, String)> {
    if cone.ambient_rank() != lattice.rank() {
        return Some((
            "dimension mismatch",
            format!(
                "cone lives in rank {}, lattice has rank {}",
                cone.ambient_rank(),
                lattice.rank()
            ),
        ));
    }
    if !cone.is_strongly_convex() {
        return Some((NOT_STRONGLY_CONVEX, format!("{cone} contains a line")));
    }
    for label in colours {
        let Some(point) = lattice.point(label) else {
            return Some((
                "unknown colour label",
                format!("{label:?} is not a colour of the lattice"),
            ));
        };
        if linalg::is_zero(point) {
            return Some((
                "zero colour point in colour set",
                format!("colour {label:?} has point 0"),
            ));
        }
        if !cone.contains_point(point).unwrap_or(false) {
            return Some((
                "colour point outside cone",
                format!("colour {label:?} does not lie in {cone}"),
            ));
        }
    }
    None
}

/// One violated axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

/// Every violated axiom found while checking a structure; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, axiom: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom: axiom.into(),
            detail: detail.into(),
        });
    }

    pub(crate) fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// The first violation as an error, if any.
    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::ValidationError {
                axiom: v.axiom,
                detail: v.detail,
            }),
        }
    }
}

/// A coloured cone as raw input: generators plus colour labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredConeData {
    pub generators: Vec<Vec<BigInt>>,
    pub colours: BTreeSet<String>,
}

/// Checks raw coloured cones against the coloured fan axioms.
pub fn validate_fan(lattice: &ColouredLattice, cones: &[ColouredConeData]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut built = Vec::new();
    for (i, data) in cones.iter().enumerate() {
        let cone = match Cone::from_generators(lattice.rank(), &data.generators) {
            Ok(c) => c,
            Err(e) => {
                report.push("dimension mismatch", format!("cone {i}: {e}"));
                continue;
            }
        };
        match cone_violation(lattice, &cone, &data.colours) {
            Some((axiom, detail)) => report.push(axiom, format!("cone {i}: {detail}")),
            None => built.push((i, ColouredCone::unchecked(cone, data.colours.clone()))),
        }
    }
    report.extend(pair_violations(lattice, &built));
    report
}

fn pair_violations(lattice: &ColouredLattice, cones: &[(usize, ColouredCone)]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (a, (i, ci)) in cones.iter().enumerate() {
        for (j, cj) in cones.iter().skip(a + 1) {
            let tau = ci.cone.intersect(&cj.cone).expect("same ambient rank");
            if !tau.is_face_of(&ci.cone) || !tau.is_face_of(&cj.cone) {
                report.push(
                    "intersection is not a face",
                    format!("cones {i} and {j} meet in {tau}, which is not a face of both"),
                );
                continue;
            }
            let fi = induced_colours(lattice, &ci.colours, &tau);
            let fj = induced_colours(lattice, &cj.colours, &tau);
            if !fi.is_subset(&cj.colours) || !fj.is_subset(&ci.colours) {
                report.push(
                    "intersection colours disagree",
                    format!("cones {i} and {j} induce different colour sets on {tau}"),
                );
            }
        }
    }
    report
}

/// A coloured fan, stored by its maximal coloured cones together with the face closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredFan {
    lattice: ColouredLattice,
    maximal_cones: Vec<ColouredCone>,
    closure: Vec<ColouredCone>,
}

impl ColouredFan {
    /// Validates raw cones and builds the fan; listed cones that are coloured faces of other
    /// listed cones are absorbed. An empty list gives the fan `{0ᶜ}`.
    pub fn new(lattice: ColouredLattice, cones: &[ColouredConeData]) -> Result<ColouredFan> {
        validate_fan(&lattice, cones).into_result()?;
        let built: Vec<ColouredCone> = cones
            .iter()
            .map(|d| {
                let cone = Cone::from_generators(lattice.rank(), &d.generators).expect("validated");
                ColouredCone::unchecked(cone, d.colours.clone())
            })
            .collect();
        Ok(Self::assemble(lattice, built))
    }

    /// Builds a fan from coloured cones, checking the pairwise axioms.
    pub fn from_cones(lattice: ColouredLattice, cones: Vec<ColouredCone>) -> Result<ColouredFan> {
        for c in &cones {
            if let Some((axiom, detail)) = cone_violation(&lattice, &c.cone, &c.colours) {
                return Err(Error::InvalidFan(format!("{axiom}: {detail}")));
            }
        }
        let indexed: Vec<(usize, ColouredCone)> = cones.iter().cloned().enumerate().collect();
        if let Some(v) = pair_violations(&lattice, &indexed)
            .violations
            .into_iter()
            .next()
        {
            return Err(Error::InvalidFan(format!("{}: {}", v.axiom, v.detail)));
        }
        Ok(Self::assemble(lattice, cones))
    }

    fn assemble(lattice: ColouredLattice, cones: Vec<ColouredCone>) -> ColouredFan {
        let mut closure: BTreeSet<ColouredCone> = BTreeSet::new();
        closure.insert(ColouredCone::trivial(lattice.rank()));
        for c in &cones {
            closure.extend(c.faces(&lattice));
        }
        let mut maximal: Vec<ColouredCone> = closure
            .iter()
            .filter(|c| {
                !closure
                    .iter()
                    .any(|d| d != *c && c.cone.is_face_of(&d.cone))
            })
            .cloned()
            .collect();
        maximal.sort();
        ColouredFan {
            lattice,
            maximal_cones: maximal,
            closure: closure.into_iter().collect(),
        }
    }

    /// The fan `{0ᶜ}` on an uncoloured lattice of the given rank.
    pub fn trivial(rank: usize) -> ColouredFan {
        Self::assemble(ColouredLattice::uncoloured(rank), Vec::new())
    }

    pub fn lattice(&self) -> &ColouredLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn maximal_cones(&self) -> &[ColouredCone] {
        &self.maximal_cones
    }

    /// Every coloured face of every maximal cone, sorted, without repetition.
    pub fn face_closure(&self) -> &[ColouredCone] {
        &self.closure
    }

    pub fn contains(&self, cc: &ColouredCone) -> bool {
        self.closure.binary_search(cc).is_ok()
    }

    /// The support, given by the underlying maximal cones.
    pub fn support(&self) -> Vec<Cone> {
        self.maximal_cones.iter().map(|c| c.cone.clone()).collect()
    }

    pub fn support_contains(&self, p: &[BigInt]) -> bool {
        self.maximal_cones
            .iter()
            .any(|c| c.cone.contains_point(p).unwrap_or(false))
    }

    pub fn colour_set(&self) -> BTreeSet<String> {
        self.maximal_cones
            .iter()
            .flat_map(|c| c.colours.iter().cloned())
            .collect()
    }

    /// Primitive generators of the rays `(ρ, ∅)` of the fan, sorted lexicographically.
    pub fn non_coloured_rays(&self) -> Vec<Vec<BigInt>> {
        self.closure
            .iter()
            .filter(|c| c.cone.dim() == 1 && c.colours.is_empty())
            .map(|c| c.cone.rays()[0].clone())
            .collect::<BTreeSet<Vector>>()
            .into_iter()
            .collect()
    }

    /// The same fan with every colour set emptied.
    pub fn decolour(&self) -> ColouredFan {
        let cones = self
            .maximal_cones
            .iter()
            .map(ColouredCone::decolour)
            .collect();
        Self::assemble(self.lattice.clone(), cones)
    }

    /// The product fan on the direct sum; clashing labels of `other` receive trailing primes.
    pub fn product(&self, other: &ColouredFan) -> ColouredFan {
        let (lattice, renaming) = self.lattice.direct_sum(&other.lattice);
        self.product_with(other, lattice, &renaming)
    }

    pub(crate) fn product_with(
        &self,
        other: &ColouredFan,
        lattice: ColouredLattice,
        renaming: &BTreeMap<String, String>,
    ) -> ColouredFan {
        let mut cones = Vec::new();
        for a in &self.maximal_cones {
            for b in &other.maximal_cones {
                let mut colours = a.colours.clone();
                colours.extend(b.colours.iter().map(|l| renaming[l].clone()));
                cones.push(ColouredCone::unchecked(a.cone.product(&b.cone), colours));
            }
        }
        Self::assemble(lattice, cones)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    fn lattice(rank: usize, colours: &[(&str, &[i64])]) -> ColouredLattice {
        ColouredLattice::new(
            rank,
            colours
                .iter()
                .map(|(l, p)| Colour::new(*l, int_vec(p)))
                .collect(),
        )
        .unwrap()
    }

    fn data(gens: &[&[i64]], colours: &[&str]) -> ColouredConeData {
        ColouredConeData {
            generators: gens.iter().map(|g| int_vec(g)).collect(),
            colours: colours.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn cone(dim: usize, gens: &[&[i64]]) -> Cone {
        let gens: Vec<Vector> = gens.iter().map(|g| int_vec(g)).collect();
        Cone::from_generators(dim, &gens).unwrap()
    }

    fn labels(ls: &[&str]) -> BTreeSet<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn coloured_faces() {
        let l = lattice(2, &[("a1", &[1, 0]), ("a2", &[0, 1])]);
        let cc =
            ColouredCone::new(&l, cone(2, &[&[1, 0], &[0, 1]]), labels(&["a1", "a2"])).unwrap();
        let face = cc.coloured_face(&l, &cone(2, &[&[1, 0]])).unwrap();
        assert_eq!(face.colours(), &labels(&["a1"]));
        assert_eq!(cc.coloured_face(&l, cc.cone()).unwrap(), cc);
        assert_eq!(
            cc.coloured_face(&l, &Cone::zero(2)).unwrap(),
            ColouredCone::trivial(2)
        );
        assert_eq!(
            cc.coloured_face(&l, &cone(2, &[&[1, 1]])),
            Err(Error::NotAFace)
        );
    }

    #[test]
    fn projective_plane_fan_is_valid() {
        let l = lattice(2, &[("a", &[1, 0])]);
        let cones = [data(&[&[1, 0]], &["a"]), data(&[&[0, 1]], &[])];
        assert!(validate_fan(&l, &cones).is_valid());
        let fan = ColouredFan::new(l, &cones).unwrap();
        assert_eq!(fan.maximal_cones().len(), 2);
        assert_eq!(fan.face_closure().len(), 3);
    }

    #[test]
    fn invalid_fans_are_reported() {
        let l = lattice(2, &[("a", &[0, 1])]);
        let report = validate_fan(&l, &[data(&[&[1, 0]], &["a"])]);
        assert_eq!(report.violations[0].axiom, "colour point outside cone");
        let l = lattice(2, &[]);
        let report = validate_fan(
            &l,
            &[
                data(&[&[1, 0], &[0, 1]], &[]),
                data(&[&[1, 1], &[1, -1]], &[]),
            ],
        );
        assert_eq!(report.violations[0].axiom, "intersection is not a face");
        let l = lattice(1, &[("z", &[0])]);
        let report = validate_fan(&l, &[data(&[&[1]], &["z"])]);
        assert_eq!(
            report.violations[0].axiom,
            "zero colour point in colour set"
        );
        let report = validate_fan(&l, &[data(&[&[1], &[-1]], &[])]);
        assert_eq!(report.violations[0].axiom, "cone not strongly convex");
        let l = lattice(2, &[("a", &[1, 0])]);
        let report = validate_fan(
            &l,
            &[
                data(&[&[1, 0], &[0, 1]], &["a"]),
                data(&[&[1, 0], &[0, -1]], &[]),
            ],
        );
        assert_eq!(report.violations[0].axiom, "intersection colours disagree");
        assert!(ColouredLattice::new(
            1,
            vec![
                Colour::new("a", int_vec(&[1])),
                Colour::new("a", int_vec(&[2]))
            ]
        )
        .is_err());
    }

    #[test]
    fn colour_sets_and_decolouring() {
        let l = lattice(2, &[("a1", &[1, 0]), ("a2", &[0, 1])]);
        let fan = ColouredFan::new(l.clone(), &[data(&[&[1, 0], &[0, 1]], &["a2"])]).unwrap();
        assert_eq!(fan.colour_set(), labels(&["a2"]));
        let plain = fan.decolour();
        assert!(plain.colour_set().is_empty());
        assert_eq!(
            plain.maximal_cones()[0].cone(),
            fan.maximal_cones()[0].cone()
        );
        assert_eq!(plain.decolour(), plain);
        let empty = ColouredFan::new(l, &[]).unwrap();
        assert_eq!(empty.maximal_cones(), &[ColouredCone::trivial(2)]);
        assert!(empty.colour_set().is_empty());
    }

    #[test]
    fn products() {
        let l = lattice(1, &[("a", &[1])]);
        let f = ColouredFan::new(l, &[data(&[&[1]], &["a"])]).unwrap();
        let p = f.product(&f);
        assert_eq!(p.maximal_cones().len(), 1);
        assert_eq!(p.maximal_cones()[0].cone(), &cone(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(p.colour_set(), labels(&["a", "a'"]));
        assert_eq!(p.lattice().point("a'"), Some(int_vec(&[0, 1]).as_slice()));
        let t = f.product(&ColouredFan::trivial(0));
        assert_eq!(t, f);
    }

    #[test]
    fn faces_listed_with_their_cone_are_absorbed() {
        let l = lattice(2, &[]);
        let fan =
            ColouredFan::new(l, &[data(&[&[1, 0], &[0, 1]], &[]), data(&[&[1, 0]], &[])]).unwrap();
        assert_eq!(fan.maximal_cones().len(), 1);
        assert_eq!(
            fan.non_coloured_rays(),
            vec![int_vec(&[0, 1]), int_vec(&[1, 0])]
        );
    }
}
