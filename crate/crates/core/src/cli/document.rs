//! JSON documents for stacky coloured fans and maps between them.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::coloured::{Colour, ColouredCone, ColouredConeData, ColouredFan, ColouredLattice};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::stacky::{StackyColouredFan, StackyMap};

const MAX_SAFE_INTEGER: i64 = (1 << 53) - 1;

/// An integer that serializes as a JSON number when it is exactly representable as a double
/// and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= MAX_SAFE_INTEGER => serializer.serialize_i64(x),
            _ => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }

        deserializer.deserialize_any(IntVisitor)
    }
}

pub(crate) fn to_json_vec(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub(crate) fn from_json_vec(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub(crate) fn to_json_matrix(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    (0..m.rows()).map(|i| to_json_vec(m.row(i))).collect()
}

fn dimension_error(detail: String) -> Error {
    Error::ValidationError {
        axiom: "dimension mismatch".into(),
        detail,
    }
}

/// Reads a row-major matrix with the given shape.
pub(crate) fn from_json_matrix(
    name: &str,
    rows: &[Vec<JsonInt>],
    nrows: usize,
    ncols: usize,
) -> Result<IntMatrix> {
    if rows.len() != nrows {
        return Err(dimension_error(format!(
            "{name} has {} rows, expected {nrows}",
            rows.len()
        )));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(dimension_error(format!(
            "{name} row {i} has {} entries, expected {ncols}",
            r.len()
        )));
    }
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| from_json_vec(r)).collect();
    IntMatrix::from_rows(ncols, &rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColourDocument {
    pub label: String,
    pub point: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub rank: usize,
    #[serde(default)]
    pub colours: Vec<ColourDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDocument {
    pub generators: Vec<Vec<JsonInt>>,
    #[serde(default)]
    pub colours: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanBody {
    #[serde(default)]
    pub maximal_cones: Vec<ConeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaDocument {
    pub codomain_rank: usize,
    /// Rows are codomain coordinates: column `j` is the image of `e_j`.
    pub matrix: Vec<Vec<JsonInt>>,
    /// Expected images of the colour points; checked against the matrix when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain_colour_points: Option<Vec<ColourDocument>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub lattice: LatticeDocument,
    pub fan: FanBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaDocument>,
}

impl LatticeDocument {
    pub fn from_lattice(lattice: &ColouredLattice) -> Self {
        LatticeDocument {
            rank: lattice.rank(),
            colours: lattice
                .colours()
                .iter()
                .map(|c| ColourDocument {
                    label: c.label.clone(),
                    point: to_json_vec(&c.point),
                })
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<ColouredLattice> {
        let colours = self
            .colours
            .iter()
            .map(|c| Colour::new(c.label.clone(), from_json_vec(&c.point)))
            .collect();
        ColouredLattice::new(self.rank, colours)
    }
}

impl ConeDocument {
    pub fn from_cone(c: &ColouredCone) -> Self {
        ConeDocument {
            generators: c.cone().rays().iter().map(|r| to_json_vec(r)).collect(),
            colours: c.colours().clone(),
        }
    }

    fn data(&self) -> ColouredConeData {
        ColouredConeData {
            generators: self.generators.iter().map(|g| from_json_vec(g)).collect(),
            colours: self.colours.clone(),
        }
    }
}

impl FanBody {
    pub fn from_cones(cones: &[ColouredCone]) -> Self {
        FanBody {
            maximal_cones: cones.iter().map(ConeDocument::from_cone).collect(),
        }
    }
}

impl FanDocument {
    pub fn from_fan(f: &ColouredFan) -> Self {
        FanDocument {
            name: None,
            lattice: LatticeDocument::from_lattice(f.lattice()),
            fan: FanBody::from_cones(f.maximal_cones()),
            beta: None,
        }
    }

    pub fn from_stacky(s: &StackyColouredFan) -> Self {
        let mut doc = Self::from_fan(s.fan());
        doc.beta = Some(BetaDocument {
            codomain_rank: s.codomain_rank(),
            matrix: to_json_matrix(s.beta()),
            codomain_colour_points: None,
        });
        doc
    }

    pub fn with_name(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    pub fn cone_data(&self) -> Vec<ColouredConeData> {
        self.fan
            .maximal_cones
            .iter()
            .map(ConeDocument::data)
            .collect()
    }

    pub fn coloured_fan(&self) -> Result<ColouredFan> {
        ColouredFan::new(self.lattice.to_lattice()?, &self.cone_data())
    }

    /// The stacky fan; without a `beta` entry the map is the identity.
    pub fn stacky(&self) -> Result<StackyColouredFan> {
        let fan = self.coloured_fan()?;
        let Some(beta) = &self.beta else {
            return Ok(StackyColouredFan::identity(fan));
        };
        let matrix = from_json_matrix("beta", &beta.matrix, beta.codomain_rank, self.lattice.rank)?;
        let s = StackyColouredFan::new(fan, matrix)?;
        if let Some(expected) = &beta.codomain_colour_points {
            check_codomain_points(&s, expected)?;
        }
        Ok(s)
    }
}

fn check_codomain_points(s: &StackyColouredFan, expected: &[ColourDocument]) -> Result<()> {
    let base = s.base_coloured_lattice();
    let mismatch = |detail: String| Error::ValidationError {
        axiom: "codomain colour point".into(),
        detail,
    };
    for c in expected {
        let point = from_json_vec(&c.point);
        match base.point(&c.label) {
            None => {
                return Err(mismatch(format!(
                    "{:?} is not a colour of the lattice",
                    c.label
                )))
            }
            Some(p) if p != point.as_slice() => {
                return Err(mismatch(format!(
                    "{:?} maps to {p:?}, not {point:?}",
                    c.label
                )));
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// An inline fan document or a path to one, relative to the enclosing document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanSource {
    Inline(Box<FanDocument>),
    Path(String),
}

impl Serialize for FanSource {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FanSource::Inline(doc) => doc.serialize(serializer),
            FanSource::Path(p) => serializer.serialize_str(p),
        }
    }
}

impl<'de> Deserialize<'de> for FanSource {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SourceVisitor;

        impl<'de> Visitor<'de> for SourceVisitor {
            type Value = FanSource;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a fan document or a path")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<FanSource, E> {
                Ok(FanSource::Path(v.to_string()))
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                map: A,
            ) -> std::result::Result<FanSource, A::Error> {
                FanDocument::deserialize(de::value::MapAccessDeserializer::new(map))
                    .map(|d| FanSource::Inline(Box::new(d)))
            }
        }

        deserializer.deserialize_any(SourceVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub domain: FanSource,
    pub codomain: FanSource,
    /// The lattice map between the fan lattices.
    #[serde(rename = "Phi")]
    pub lattice_map: Vec<Vec<JsonInt>>,
    /// The map between the base lattices.
    #[serde(rename = "phi")]
    pub base_map: Vec<Vec<JsonInt>>,
}

impl MapDocument {
    pub fn from_map(m: &StackyMap) -> Self {
        MapDocument {
            name: None,
            domain: FanSource::Inline(Box::new(FanDocument::from_stacky(m.domain()))),
            codomain: FanSource::Inline(Box::new(FanDocument::from_stacky(m.codomain()))),
            lattice_map: to_json_matrix(m.lattice_map()),
            base_map: to_json_matrix(m.base_map()),
        }
    }

    /// Loads both ends, reading path references relative to `base_dir`.
    pub fn stacky_parts(&self, base_dir: &Path) -> Result<(StackyColouredFan, StackyColouredFan)> {
        let load = |src: &FanSource| -> Result<StackyColouredFan> {
            match src {
                FanSource::Inline(doc) => doc.stacky(),
                FanSource::Path(p) => match read_document(&base_dir.join(p))? {
                    Document::Fan(doc) => doc.stacky(),
                    Document::Map(_) => Err(Error::ParseError {
                        path: p.clone(),
                        message: "expected a fan document, found a map document".into(),
                    }),
                },
            }
        };
        Ok((load(&self.domain)?, load(&self.codomain)?))
    }

    /// The matrices with shapes checked against the two ends.
    pub fn matrices(
        &self,
        domain: &StackyColouredFan,
        codomain: &StackyColouredFan,
    ) -> Result<(IntMatrix, IntMatrix)> {
        Ok((
            from_json_matrix(
                "Phi",
                &self.lattice_map,
                codomain.fan().rank(),
                domain.fan().rank(),
            )?,
            from_json_matrix(
                "phi",
                &self.base_map,
                codomain.codomain_rank(),
                domain.codomain_rank(),
            )?,
        ))
    }

    pub fn stacky_map(&self, base_dir: &Path) -> Result<StackyMap> {
        let (domain, codomain) = self.stacky_parts(base_dir)?;
        let (lattice_map, base_map) = self.matrices(&domain, &codomain)?;
        StackyMap::new(domain, codomain, lattice_map, base_map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Fan(FanDocument),
    Map(MapDocument),
}

fn parse_as<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> Result<T> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| Error::ParseError {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| Error::ParseError {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Parses UTF-8 JSON text; objects with a `domain` key are map documents.
pub fn parse_document(bytes: &[u8]) -> Result<Document> {
    let value: serde_json::Value = parse_as(bytes)?;
    if value.get("domain").is_some() {
        parse_as(bytes).map(Document::Map)
    } else {
        parse_as(bytes).map(Document::Fan)
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    let bytes = std::fs::read(path).map_err(|e| Error::ParseError {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_document(&bytes).map_err(|e| match e {
        Error::ParseError {
            path: field,
            message,
        } => Error::ParseError {
            path: format!("{}: {field}", path.display()),
            message,
        },
        other => other,
    })
}

/// Directory that relative references inside the document at `path` resolve against.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Pretty JSON with keys in sorted order.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("documents serialize to JSON");
    let mut out = serde_json::to_string_pretty(&value).expect("JSON values print");
    out.push('\n');
    out
}

impl Serialize for Document {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Document::Fan(d) => d.serialize(serializer),
            Document::Map(d) => d.serialize(serializer),
        }
    }
}
