//! Stacky coloured fans and the maps between them.

use std::collections::{BTreeMap, BTreeSet};

use crate::check::Check;
use crate::coloured::{ColouredCone, ColouredFan, ColouredLattice};
use crate::error::{check_dim, Error, Result};
use crate::lattice::{cokernel_structure, AbelianGroupStructure, IntMatrix};
use crate::linalg;

/// A coloured fan on `N` with a finite-cokernel map `N → L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StackyColouredFan {
    fan: ColouredFan,
    beta: IntMatrix,
}

impl StackyColouredFan {
    pub fn new(fan: ColouredFan, beta: IntMatrix) -> Result<Self> {
        check_dim(fan.rank(), beta.cols())?;
        if !cokernel_structure(&beta).is_finite() {
            return Err(Error::InvalidFan(format!(
                "the map {beta} does not have finite cokernel"
            )));
        }
        Ok(StackyColouredFan { fan, beta })
    }

    /// The fan with the identity map to itself.
    pub fn identity(fan: ColouredFan) -> Self {
        let beta = IntMatrix::identity(fan.rank());
        StackyColouredFan { fan, beta }
    }

    pub fn fan(&self) -> &ColouredFan {
        &self.fan
    }

    pub fn beta(&self) -> &IntMatrix {
        &self.beta
    }

    pub fn codomain_rank(&self) -> usize {
        self.beta.rows()
    }

    /// `L` with the images of the colour points of `N`.
    pub fn base_coloured_lattice(&self) -> ColouredLattice {
        self.fan
            .lattice()
            .image(&self.beta)
            .expect("shape checked at construction")
    }

    /// Character group of the stabilizer group: the cokernel of the dual map.
    pub fn k_beta(&self) -> AbelianGroupStructure {
        cokernel_structure(&self.beta.transpose())
    }

    pub fn decolour(&self) -> Self {
        StackyColouredFan {
            fan: self.fan.decolour(),
            beta: self.beta.clone(),
        }
    }

    pub fn product(&self, other: &StackyColouredFan) -> Self {
        let reserved = self.fan.lattice().labels();
        let avoid: BTreeSet<String> = reserved
            .union(&other.fan.lattice().labels())
            .cloned()
            .collect();
        self.product_with(other, &reserved, &avoid)
    }

    pub(crate) fn product_with(
        &self,
        other: &StackyColouredFan,
        reserved: &BTreeSet<String>,
        avoid: &BTreeSet<String>,
    ) -> Self {
        let (lattice, renaming) =
            self.fan
                .lattice()
                .direct_sum_with(other.fan.lattice(), reserved, avoid);
        StackyColouredFan {
            fan: self.fan.product_with(&other.fan, lattice, &renaming),
            beta: self.beta.block_diagonal(&other.beta),
        }
    }
}

fn maps_into(
    lattice_map: &IntMatrix,
    source: &ColouredCone,
    target: &ColouredCone,
    dominant: &BTreeSet<String>,
) -> bool {
    source
        .colours()
        .iter()
        .all(|c| dominant.contains(c) || target.colours().contains(c))
        && source.cone().rays().iter().all(|r| {
            target
                .cone()
                .contains_point(&lattice_map.apply_unchecked(r))
                .unwrap_or(false)
        })
}

/// Whether every cone of `f1` maps into some cone of `f2`, colours outside `dominant` included.
pub fn check_compatibility(
    lattice_map: &IntMatrix,
    f1: &ColouredFan,
    f2: &ColouredFan,
    dominant: &BTreeSet<String>,
) -> Result<bool> {
    check_dim(f1.rank(), lattice_map.cols())?;
    check_dim(f2.rank(), lattice_map.rows())?;
    Ok(f1.maximal_cones().iter().all(|s1| {
        f2.maximal_cones()
            .iter()
            .any(|s2| maps_into(lattice_map, s1, s2, dominant))
    }))
}

/// Itemized outcome of checking the axioms of a map of stacky coloured fans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapValidation {
    /// Colour labels and colour points are respected.
    pub colours: Check,
    /// The lattice map is compatible with the two fans.
    pub compatibility: Check,
    /// The square with the two stacky maps commutes.
    pub commutes: Check,
    /// Both lattice maps have finite cokernel.
    pub finite_cokernels: Check,
}

impl MapValidation {
    pub fn is_valid(&self) -> bool {
        [
            &self.colours,
            &self.compatibility,
            &self.commutes,
            &self.finite_cokernels,
        ]
        .iter()
        .all(|c| c.passed())
    }

    fn failures(&self) -> Vec<String> {
        [
            ("colours", &self.colours),
            ("compatibility", &self.compatibility),
            ("commuting square", &self.commutes),
            ("finite cokernels", &self.finite_cokernels),
        ]
        .iter()
        .filter(|(_, c)| !c.passed())
        .map(|(name, c)| format!("{name}: {}", c.witness.clone().unwrap_or_default()))
        .collect()
    }
}

fn dominant_colours(domain: &StackyColouredFan, codomain: &StackyColouredFan) -> BTreeSet<String> {
    let target = codomain.fan.lattice().labels();
    domain
        .fan
        .lattice()
        .labels()
        .into_iter()
        .filter(|l| !target.contains(l))
        .collect()
}

/// Checks whether the pair of lattice maps defines a map of stacky coloured fans.
pub fn validate_map(
    domain: &StackyColouredFan,
    codomain: &StackyColouredFan,
    lattice_map: &IntMatrix,
    base_map: &IntMatrix,
) -> Result<MapValidation> {
    check_dim(codomain.fan.rank(), lattice_map.rows())?;
    check_dim(domain.fan.rank(), lattice_map.cols())?;
    check_dim(codomain.codomain_rank(), base_map.rows())?;
    check_dim(domain.codomain_rank(), base_map.cols())?;
    let dominant = dominant_colours(domain, codomain);
    let source = domain.fan.lattice();

    let mut colour_failure = None;
    for c in codomain.fan.lattice().colours() {
        match source.point(&c.label) {
            None => {
                colour_failure = Some(format!(
                    "codomain colour {:?} is not a domain colour",
                    c.label
                ));
                break;
            }
            Some(p) if lattice_map.apply_unchecked(p) != c.point => {
                colour_failure = Some(format!(
                    "colour {:?} is not sent to its codomain point",
                    c.label
                ));
                break;
            }
            Some(_) => {}
        }
    }
    if colour_failure.is_none() {
        colour_failure = dominant
            .iter()
            .find(|l| {
                !linalg::is_zero(
                    &lattice_map.apply_unchecked(source.point(l).expect("domain label")),
                )
            })
            .map(|l| format!("dominantly mapped colour {l:?} does not map to 0"));
    }

    let compatible = check_compatibility(lattice_map, &domain.fan, &codomain.fan, &dominant)?;
    let left = codomain.beta.mul(lattice_map)?;
    let right = base_map.mul(&domain.beta)?;
    let finite =
        cokernel_structure(lattice_map).is_finite() && cokernel_structure(base_map).is_finite();
    Ok(MapValidation {
        colours: Check::from_failure(colour_failure),
        compatibility: Check::from_failure(
            (!compatible).then(|| "some domain cone maps into no codomain cone".to_string()),
        ),
        commutes: Check::from_failure(
            (left != right).then(|| format!("{left} differs from {right}")),
        ),
        finite_cokernels: Check::from_failure(
            (!finite).then(|| "a lattice map has infinite cokernel".to_string()),
        ),
    })
}

/// A validated map of stacky coloured fans: a lattice map `N₁ → N₂` and a base map `L₁ → L₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyMap {
    domain: StackyColouredFan,
    codomain: StackyColouredFan,
    lattice_map: IntMatrix,
    base_map: IntMatrix,
    dominant: BTreeSet<String>,
}

impl StackyMap {
    pub fn new(
        domain: StackyColouredFan,
        codomain: StackyColouredFan,
        lattice_map: IntMatrix,
        base_map: IntMatrix,
    ) -> Result<Self> {
        let report = validate_map(&domain, &codomain, &lattice_map, &base_map)?;
        if !report.is_valid() {
            return Err(Error::InvalidMap(report.failures().join("; ")));
        }
        let dominant = dominant_colours(&domain, &codomain);
        Ok(StackyMap {
            domain,
            codomain,
            lattice_map,
            base_map,
            dominant,
        })
    }

    pub fn identity(s: StackyColouredFan) -> Self {
        let lattice_map = IntMatrix::identity(s.fan.rank());
        let base_map = IntMatrix::identity(s.codomain_rank());
        StackyMap {
            codomain: s.clone(),
            domain: s,
            lattice_map,
            base_map,
            dominant: BTreeSet::new(),
        }
    }

    pub fn domain(&self) -> &StackyColouredFan {
        &self.domain
    }

    pub fn codomain(&self) -> &StackyColouredFan {
        &self.codomain
    }

    pub fn lattice_map(&self) -> &IntMatrix {
        &self.lattice_map
    }

    pub fn base_map(&self) -> &IntMatrix {
        &self.base_map
    }

    /// Domain colours missing from the codomain; their points map to 0.
    pub fn dominant_colours(&self) -> &BTreeSet<String> {
        &self.dominant
    }

    /// Dominant colours read off the base lattices: base colours of the domain that the base
    /// map kills and that are absent from the codomain base. Returns `None` if the base map
    /// sends some surviving colour anywhere but its codomain base point.
    pub fn base_dominant_colours(&self) -> Option<BTreeSet<String>> {
        let source = self.domain.base_coloured_lattice();
        let target = self.codomain.base_coloured_lattice();
        let mut out = BTreeSet::new();
        for c in source.colours() {
            let image = self.base_map.apply_unchecked(&c.point);
            match target.point(&c.label) {
                Some(p) if p == image.as_slice() => {}
                Some(_) => return None,
                None if linalg::is_zero(&image) => {
                    out.insert(c.label.clone());
                }
                None => return None,
            }
        }
        Some(out)
    }

    /// Maximal coloured cones of the domain fan that map into `target`.
    pub fn preimage_subfan(&self, target: &ColouredCone) -> Result<Vec<ColouredCone>> {
        if !self.codomain.fan.contains(target) {
            return Err(Error::ConeNotInFan);
        }
        let members: Vec<&ColouredCone> = self
            .domain
            .fan
            .face_closure()
            .iter()
            .filter(|c| maps_into(&self.lattice_map, c, target, &self.dominant))
            .collect();
        Ok(members
            .iter()
            .filter(|c| !members.iter().any(|d| d != *c && c.is_contained_in(d)))
            .map(|c| (*c).clone())
            .collect())
    }

    /// `next ∘ self`.
    pub fn compose(&self, next: &StackyMap) -> Result<StackyMap> {
        if self.codomain != next.domain {
            return Err(Error::Mismatch(
                "codomain of the first map differs from domain of the second".into(),
            ));
        }
        StackyMap::new(
            self.domain.clone(),
            next.codomain.clone(),
            next.lattice_map.mul(&self.lattice_map)?,
            next.base_map.mul(&self.base_map)?,
        )
    }

    /// The product map; clashing labels of the second factor receive trailing primes.
    pub fn product(&self, other: &StackyMap) -> Result<StackyMap> {
        let reserved = self.domain.fan.lattice().labels();
        let avoid: BTreeSet<String> = reserved
            .union(&other.domain.fan.lattice().labels())
            .cloned()
            .collect();
        StackyMap::new(
            self.domain.product_with(&other.domain, &reserved, &avoid),
            self.codomain
                .product_with(&other.codomain, &reserved, &avoid),
            self.lattice_map.block_diagonal(&other.lattice_map),
            self.base_map.block_diagonal(&other.base_map),
        )
    }

    /// The same matrices between the decolourations of domain and codomain.
    pub fn decolour(&self) -> Result<StackyMap> {
        StackyMap::new(
            self.domain.decolour(),
            self.codomain.decolour(),
            self.lattice_map.clone(),
            self.base_map.clone(),
        )
    }

    /// Relabelling of the second factor used by [`StackyMap::product`].
    pub fn product_renaming(&self, other: &StackyMap) -> BTreeMap<String, String> {
        let reserved = self.domain.fan.lattice().labels();
        let avoid: BTreeSet<String> = reserved
            .union(&other.domain.fan.lattice().labels())
            .cloned()
            .collect();
        crate::coloured::renaming_for(&other.domain.fan.lattice().labels(), &reserved, &avoid)
    }
}

/// The identity matrices from the decolouration of `s` back to `s`.
pub fn decolouration_map(s: &StackyColouredFan) -> Result<StackyMap> {
    StackyMap::new(
        s.decolour(),
        s.clone(),
        IntMatrix::identity(s.fan.rank()),
        IntMatrix::identity(s.codomain_rank()),
    )
}
