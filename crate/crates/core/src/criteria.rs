//! Decision procedures on stacky coloured fans and their maps.

use std::collections::BTreeSet;
use std::fmt;

use crate::check::Check;
use crate::coloured::{ColouredCone, ColouredFan, ColouredLattice};
use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{cokernel_structure, kernel_basis, quotient_map, IntMatrix, Sublattice};
use crate::linalg::{self, Vector};
use crate::stacky::{check_compatibility, StackyColouredFan, StackyMap};

pub fn is_toroidal(f: &ColouredFan) -> bool {
    f.colour_set().is_empty()
}

/// The three equivalent characterizations of an unstable cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnstableMethod {
    /// Every functional nonnegative on the image cone vanishes on it.
    NonnegativeFunctionals,
    /// Zero lies in the relative interior of the image cone.
    ZeroInRelativeInterior,
    /// The part of the cone in the kernel is not inside a proper face.
    KernelMeetsInterior,
}

impl UnstableMethod {
    pub const ALL: [UnstableMethod; 3] = [
        UnstableMethod::NonnegativeFunctionals,
        UnstableMethod::ZeroInRelativeInterior,
        UnstableMethod::KernelMeetsInterior,
    ];

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(UnstableMethod::NonnegativeFunctionals),
            2 => Some(UnstableMethod::ZeroInRelativeInterior),
            3 => Some(UnstableMethod::KernelMeetsInterior),
            _ => None,
        }
    }
}

/// Instability of a cone (not necessarily in a fan) under `beta`.
pub fn cone_is_unstable(beta: &IntMatrix, tau: &Cone, method: UnstableMethod) -> Result<bool> {
    check_dim(beta.cols(), tau.ambient_rank())?;
    let image = tau.image(beta)?;
    Ok(match method {
        UnstableMethod::NonnegativeFunctionals => {
            let gens = image.generators();
            let dual = Cone::from_inequalities(beta.rows(), &gens, &[])?;
            let perp = Cone::from_inequalities(beta.rows(), &[], &gens)?;
            dual == perp
        }
        UnstableMethod::ZeroInRelativeInterior => tau.rays().iter().all(|v| {
            image
                .contains_point(&linalg::neg(&beta.apply_unchecked(v)))
                .unwrap_or(false)
        }),
        UnstableMethod::KernelMeetsInterior => {
            let mut equations: Vec<Vector> = tau.equations().basis().to_vec();
            equations.extend(beta.row_vectors());
            let kernel_part =
                Cone::from_inequalities(tau.ambient_rank(), tau.inequalities(), &equations)?;
            tau.smallest_face_containing(&kernel_part.interior_point())? == *tau
        }
    })
}

/// Instability of a coloured cone of the fan of `s`.
pub fn is_unstable(
    s: &StackyColouredFan,
    tau: &ColouredCone,
    method: UnstableMethod,
) -> Result<bool> {
    if !s.fan().contains(tau) {
        return Err(Error::ConeNotInFan);
    }
    cone_is_unstable(s.beta(), tau.cone(), method)
}

/// Whether the lattice map restricts to a bijection between the lattice points of the cones.
pub fn monoid_iso_check(lattice_map: &IntMatrix, source: &Cone, target: &Cone) -> Result<bool> {
    if !source.is_strongly_convex() || !target.is_strongly_convex() {
        return Err(Error::NotStronglyConvex);
    }
    check_dim(lattice_map.cols(), source.ambient_rank())?;
    check_dim(lattice_map.rows(), target.ambient_rank())?;
    if source.image(lattice_map)? != *target {
        return Ok(false);
    }
    let group = source.cone_group();
    let images: Vec<Vector> = group
        .basis()
        .iter()
        .map(|b| lattice_map.apply_unchecked(b))
        .collect();
    if linalg::rank(&images, lattice_map.rows()) != group.rank() {
        return Ok(false);
    }
    Ok(Sublattice::span(lattice_map.rows(), &images)? == target.cone_group())
}

/// Outcome of the three isomorphism conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    /// The base map is an isomorphism of coloured lattices.
    pub lattice_iso: Check,
    /// Every codomain cone has a single preimage cone with the same colours.
    pub single_preimages: Check,
    /// The lattice map identifies the monoids of lattice points of preimage and image.
    pub monoids: Check,
}

impl IsoVerdict {
    pub fn overall(&self) -> bool {
        self.lattice_iso.passed() && self.single_preimages.passed() && self.monoids.passed()
    }
}

pub fn check_isomorphism(m: &StackyMap) -> Result<IsoVerdict> {
    let base = m.base_map();
    let lattice_iso = if !base.is_unimodular() {
        Check::fail(format!("{base} is not invertible over the integers"))
    } else if !m.dominant_colours().is_empty() {
        let labels: Vec<&str> = m.dominant_colours().iter().map(String::as_str).collect();
        Check::fail(format!(
            "colours {} are not in the codomain",
            labels.join(", ")
        ))
    } else if m.domain().fan().lattice().labels() != m.codomain().fan().lattice().labels() {
        Check::fail("colour sets differ")
    } else if m.base_dominant_colours().is_none() {
        Check::fail("base colour points do not correspond")
    } else {
        Check::pass()
    };

    let mut preimage_failure = None;
    let mut monoid_failure = None;
    let mut monoid_skipped = None;
    for target in m.codomain().fan().face_closure() {
        let pre = m.preimage_subfan(target)?;
        if pre.len() != 1 {
            preimage_failure
                .get_or_insert(format!("{target} has {} maximal preimage cones", pre.len()));
            monoid_skipped.get_or_insert(format!("preimage of {target} is not a single cone"));
            continue;
        }
        if pre[0].colours() != target.colours() {
            preimage_failure
                .get_or_insert(format!("preimage {} of {target} has other colours", pre[0]));
        }
        if !monoid_iso_check(m.lattice_map(), pre[0].cone(), target.cone())? {
            monoid_failure.get_or_insert(format!(
                "lattice points of {} and {target} do not correspond",
                pre[0]
            ));
        }
    }
    let monoids = match (monoid_failure, monoid_skipped) {
        (Some(w), _) => Check::fail(w),
        (None, Some(reason)) => Check::not_evaluated(reason),
        (None, None) => Check::pass(),
    };
    Ok(IsoVerdict {
        lattice_iso,
        single_preimages: Check::from_failure(preimage_failure),
        monoids,
    })
}

/// Outcome of the four good-moduli-space conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmsVerdict {
    /// Single preimages with equal image cones and matching colours.
    pub single_preimages: Check,
    /// The preimage of the trivial cone is unstable.
    pub unstable_preimage: Check,
    /// The base map is surjective.
    pub surjective_base: Check,
    /// The kernel of the base map is the group of the image of the unstable cone.
    pub kernel: Check,
    /// The preimage of the trivial cone, when it is a single cone.
    pub trivial_preimage: Option<ColouredCone>,
}

impl GmsVerdict {
    pub fn overall(&self) -> bool {
        [
            &self.single_preimages,
            &self.unstable_preimage,
            &self.surjective_base,
            &self.kernel,
        ]
        .iter()
        .all(|c| c.passed())
    }
}

pub fn check_gms_morphism(m: &StackyMap) -> Result<GmsVerdict> {
    let mut failure = None;
    for target in m.codomain().fan().face_closure() {
        let pre = m.preimage_subfan(target)?;
        if pre.len() != 1 {
            failure.get_or_insert(format!("{target} has {} maximal preimage cones", pre.len()));
            continue;
        }
        if pre[0].cone().image(m.lattice_map())? != *target.cone() {
            failure.get_or_insert(format!("{} does not map onto {target}", pre[0]));
            continue;
        }
        let expected: BTreeSet<String> = target
            .colours()
            .union(m.dominant_colours())
            .cloned()
            .collect();
        if *pre[0].colours() != expected {
            failure.get_or_insert(format!(
                "colours of {} are not those of {target} plus the dominant ones",
                pre[0]
            ));
        }
    }
    let zero = ColouredCone::trivial(m.codomain().fan().rank());
    let pre_zero = m.preimage_subfan(&zero)?;
    let tau = (pre_zero.len() == 1).then(|| pre_zero[0].clone());
    let beta = m.domain().beta();
    let (unstable_preimage, kernel) = match &tau {
        None => {
            let reason = format!(
                "the trivial cone has {} maximal preimage cones",
                pre_zero.len()
            );
            (
                Check::not_evaluated(reason.clone()),
                Check::not_evaluated(reason),
            )
        }
        Some(t) => {
            let unstable =
                cone_is_unstable(beta, t.cone(), UnstableMethod::ZeroInRelativeInterior)?;
            let expected = t.cone().image(beta)?.cone_group();
            let actual = kernel_basis(m.base_map());
            (
                Check::from_failure((!unstable).then(|| format!("{t} is not unstable"))),
                Check::from_failure((actual != expected).then(|| {
                    "kernel of the base map differs from the group of the image cone".to_string()
                })),
            )
        }
    };
    let surjective = cokernel_structure(m.base_map()).is_trivial();
    Ok(GmsVerdict {
        single_preimages: Check::from_failure(failure),
        unstable_preimage,
        surjective_base: Check::from_failure(
            (!surjective).then(|| format!("{} is not surjective", m.base_map())),
        ),
        kernel,
        trivial_preimage: tau,
    })
}

/// Why a good moduli space fan does or does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GmsReason {
    Ok,
    NoUniqueMaxUnstable,
    IncompatibleImage,
}

impl fmt::Display for GmsReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GmsReason::Ok => "OK",
            GmsReason::NoUniqueMaxUnstable => "NoUniqueMaxUnstable",
            GmsReason::IncompatibleImage => "IncompatibleImage",
        })
    }
}

/// The good moduli space construction: the quotient lattice, its fan and the two maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmsFanResult {
    pub exists: bool,
    pub reason: GmsReason,
    /// Every unstable coloured cone of the fan.
    pub unstable_cones: Vec<ColouredCone>,
    /// The unique maximal unstable coloured cone, if there is one.
    pub maximal_unstable: Option<ColouredCone>,
    pub gms_lattice: Option<ColouredLattice>,
    pub gms_fan: Option<ColouredFan>,
    /// The quotient map on the base lattice.
    pub projection: Option<IntMatrix>,
    /// The composite of the stacky map and the projection.
    pub lattice_map: Option<IntMatrix>,
}

impl GmsFanResult {
    /// The map from `s` to the constructed fan with the identity, when the fan exists.
    pub fn map(&self, s: &StackyColouredFan) -> Option<Result<StackyMap>> {
        if !self.exists {
            return None;
        }
        let fan = self.gms_fan.clone()?;
        Some(StackyMap::new(
            s.clone(),
            StackyColouredFan::identity(fan),
            self.lattice_map.clone()?,
            self.projection.clone()?,
        ))
    }
}

pub fn gms_fan(s: &StackyColouredFan) -> Result<GmsFanResult> {
    let beta = s.beta();
    let closure = s.fan().face_closure();
    let mut unstable_cones = Vec::new();
    for c in closure {
        if cone_is_unstable(beta, c.cone(), UnstableMethod::ZeroInRelativeInterior)? {
            unstable_cones.push(c.clone());
        }
    }
    let tau = unstable_cones
        .iter()
        .find(|t| unstable_cones.iter().all(|u| u.is_contained_in(t)))
        .cloned();
    let Some(tau) = tau else {
        return Ok(GmsFanResult {
            exists: false,
            reason: GmsReason::NoUniqueMaxUnstable,
            unstable_cones,
            maximal_unstable: None,
            gms_lattice: None,
            gms_fan: None,
            projection: None,
            lattice_map: None,
        });
    };

    let group = tau.cone().image(beta)?.cone_group();
    let (_, projection) = quotient_map(s.codomain_rank(), &group)?;
    let lattice_map = projection.mul(beta)?;
    let dominant = tau.colours().clone();
    let gms_lattice = s
        .fan()
        .lattice()
        .image_restricted(&lattice_map, |l| !dominant.contains(l));

    let maps_into = |c: &ColouredCone, image: &Cone, colours: &BTreeSet<String>| {
        c.colours()
            .iter()
            .all(|l| dominant.contains(l) || colours.contains(l))
            && c.cone().rays().iter().all(|r| {
                image
                    .contains_point(&lattice_map.apply_unchecked(r))
                    .unwrap_or(false)
            })
    };
    let mut kept: BTreeSet<ColouredCone> = BTreeSet::new();
    for sigma in closure {
        let image = sigma.cone().image(&lattice_map)?;
        if !image.is_strongly_convex() {
            continue;
        }
        let colours: BTreeSet<String> = sigma.colours().difference(&dominant).cloned().collect();
        let Ok(candidate) = ColouredCone::new(&gms_lattice, image.clone(), colours.clone()) else {
            continue;
        };
        let members: Vec<&ColouredCone> = closure
            .iter()
            .filter(|c| maps_into(c, &image, &colours))
            .collect();
        let maximal: Vec<&&ColouredCone> = members
            .iter()
            .filter(|c| !members.iter().any(|d| d != *c && c.is_contained_in(d)))
            .collect();
        if maximal.len() != 1 {
            continue;
        }
        let pre = maximal[0];
        let pre_colours: BTreeSet<String> = pre.colours().difference(&dominant).cloned().collect();
        if pre.cone().image(&lattice_map)? == image && pre_colours == colours {
            kept.insert(candidate);
        }
    }
    // Any fan receiving a good moduli map is the face closure of the maximal candidates, so
    // it exists only when those faces are candidates themselves and form a fan.
    let maximal: Vec<ColouredCone> = kept
        .iter()
        .filter(|c| !kept.iter().any(|d| d != *c && c.is_contained_in(d)))
        .cloned()
        .collect();
    let closed = maximal
        .iter()
        .all(|c| c.faces(&gms_lattice).iter().all(|f| kept.contains(f)));
    let fan = if maximal.is_empty() || !closed {
        None
    } else {
        ColouredFan::from_cones(gms_lattice.clone(), maximal).ok()
    };
    let compatible = match &fan {
        Some(f) => check_compatibility(&lattice_map, s.fan(), f, &dominant)?,
        None => false,
    };
    Ok(GmsFanResult {
        exists: compatible,
        reason: if compatible {
            GmsReason::Ok
        } else {
            GmsReason::IncompatibleImage
        },
        unstable_cones,
        maximal_unstable: Some(tau),
        gms_lattice: Some(gms_lattice),
        gms_fan: fan,
        projection: Some(projection),
        lattice_map: Some(lattice_map),
    })
}
