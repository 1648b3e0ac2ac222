//! JSON file formats.
//!
//! Scalars and grade coordinates are written as strings (`"3"`, `"-1/2"`)
//! and read from strings or integers. Coefficients are interpreted in the
//! field chosen by the caller.
//!
//! * presentation: `{"n", "generators": [grade], "relations": [{"grade", "coeffs"}]}`
//! * complex: `{"n", "terms": {"-1": [grade]}, "differentials": {"-1": rows}}`
//! * bifiltration: `{"simplices": [{"vertices": [int], "grade": grade}]}`
//! * certificate: level, ε, field, the two modules or complexes, both maps
//!   and, above the module level, both homotopies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complexes::{ChainMap, FreeChainComplex, Homotopy};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Field, Matrix, Rational, Scalar};
use crate::freemod::{FreeModule, GradedMatrix};
use crate::grading::Grade;
use crate::ingest::{Bifiltration, Simplex};
use crate::interleave::{CertificateMaps, InterleavingCertificate, Level};
use crate::presentation::{FPMorphism, Presentation};

/// A number written as a JSON integer or string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn rational(&self) -> Result<Rational> {
        match self {
            Number::Int(v) => Ok(Rational::from_integer((*v).into())),
            Number::Text(t) => parse_rational(t),
        }
    }

    fn scalar(&self, field: Field) -> Result<Scalar> {
        match self {
            Number::Int(v) => Ok(field.from_i64(*v)),
            Number::Text(t) => field.parse(t),
        }
    }
}

fn text(value: &Rational) -> Number {
    Number::Text(format_rational(value))
}

fn scalar_text(value: &Scalar) -> Number {
    Number::Text(value.to_string())
}

fn grade_out(g: &Grade) -> Vec<Number> {
    g.coords().iter().map(text).collect()
}

fn grade_in(coords: &[Number], n: usize) -> Result<Grade> {
    if coords.len() != n {
        return Err(Error::Dimension(format!(
            "grade with {} coordinates in dimension {n}",
            coords.len()
        )));
    }
    Ok(Grade::new(
        coords.iter().map(Number::rational).collect::<Result<_>>()?,
    ))
}

fn module_in(grades: &[Vec<Number>], n: usize) -> Result<FreeModule> {
    FreeModule::new(
        n,
        grades.iter().map(|g| grade_in(g, n)).collect::<Result<_>>()?,
    )
}

fn rows_out(m: &Matrix) -> Vec<Vec<Number>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(scalar_text).collect())
        .collect()
}

fn rows_in(rows: &[Vec<Number>], field: Field, nrows: usize, ncols: usize) -> Result<Matrix> {
    if rows.len() != nrows {
        return Err(Error::Shape(format!("{} rows, expected {nrows}", rows.len())));
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|v| v.scalar(field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, ncols, rows)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn degree_key(key: &str) -> Result<i32> {
    key.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("degree key {key:?} is not an integer")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationFile {
    pub grade: Vec<Number>,
    pub coeffs: Vec<Number>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub n: usize,
    pub generators: Vec<Vec<Number>>,
    #[serde(default)]
    pub relations: Vec<RelationFile>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> PresentationFile {
        PresentationFile {
            n: p.n(),
            generators: p.generators().grades().iter().map(grade_out).collect(),
            relations: (0..p.num_relations())
                .map(|r| {
                    let (g, coeffs) = p.relation(r);
                    RelationFile {
                        grade: grade_out(g),
                        coeffs: coeffs.iter().map(scalar_text).collect(),
                    }
                })
                .collect(),
        }
    }

    pub fn to_presentation(&self, field: Field) -> Result<Presentation> {
        let gens = module_in(&self.generators, self.n)?;
        let relations = self
            .relations
            .iter()
            .map(|r| {
                Ok((
                    grade_in(&r.grade, self.n)?,
                    r.coeffs
                        .iter()
                        .map(|c| c.scalar(field))
                        .collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(field, gens, relations)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub terms: BTreeMap<String, Vec<Vec<Number>>>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<Number>>>,
}

impl ComplexFile {
    pub fn from_complex(x: &FreeChainComplex) -> ComplexFile {
        ComplexFile {
            n: x.n(),
            terms: x
                .terms()
                .iter()
                .map(|(j, t)| (j.to_string(), t.grades().iter().map(grade_out).collect()))
                .collect(),
            differentials: x
                .differentials()
                .iter()
                .map(|(j, d)| (j.to_string(), rows_out(d.entries())))
                .collect(),
        }
    }

    pub fn to_complex(&self, field: Field) -> Result<FreeChainComplex> {
        let mut terms = BTreeMap::new();
        for (key, grades) in &self.terms {
            terms.insert(degree_key(key)?, module_in(grades, self.n)?);
        }
        let empty = FreeModule::empty(self.n);
        let mut differentials = BTreeMap::new();
        for (key, rows) in &self.differentials {
            let j = degree_key(key)?;
            let source = terms.get(&j).unwrap_or(&empty).clone();
            let target = terms.get(&(j + 1)).unwrap_or(&empty).clone();
            let m = rows_in(rows, field, target.rank(), source.rank())?;
            differentials.insert(j, GradedMatrix::new(source, target, m)?);
        }
        FreeChainComplex::new(self.n, field, terms, differentials)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexFile {
    pub vertices: Vec<usize>,
    pub grade: Vec<Number>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BifiltrationFile {
    pub simplices: Vec<SimplexFile>,
}

impl BifiltrationFile {
    pub fn from_bifiltration(k: &Bifiltration) -> BifiltrationFile {
        BifiltrationFile {
            simplices: k
                .simplices()
                .iter()
                .map(|s| SimplexFile {
                    vertices: s.vertices.clone(),
                    grade: grade_out(&s.grade),
                })
                .collect(),
        }
    }

    pub fn to_bifiltration(&self) -> Result<Bifiltration> {
        Bifiltration::new(
            self.simplices
                .iter()
                .map(|s| {
                    Ok(Simplex {
                        vertices: s.vertices.clone(),
                        grade: grade_in(&s.grade, 2)
                            .map_err(|e| Error::InvalidBifiltration(e.to_string()))?,
                    })
                })
                .collect::<Result<_>>()?,
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedMatrixFile {
    pub n: usize,
    pub source: Vec<Vec<Number>>,
    pub target: Vec<Vec<Number>>,
    pub rows: Vec<Vec<Number>>,
}

impl GradedMatrixFile {
    pub fn from_matrix(m: &GradedMatrix) -> GradedMatrixFile {
        GradedMatrixFile {
            n: m.source().n(),
            source: m.source().grades().iter().map(grade_out).collect(),
            target: m.target().grades().iter().map(grade_out).collect(),
            rows: rows_out(m.entries()),
        }
    }

    pub fn to_matrix(&self, field: Field) -> Result<GradedMatrix> {
        let source = module_in(&self.source, self.n)?;
        let target = module_in(&self.target, self.n)?;
        let m = rows_in(&self.rows, field, target.rank(), source.rank())?;
        GradedMatrix::new(source, target, m)
    }
}

/// Module maps are stored as generator-level lifts, one column per source
/// generator over the target generators.
fn lifts_out(f: &FPMorphism) -> Vec<Vec<Number>> {
    (0..f.source().num_generators())
        .map(|j| f.image_lift(j).iter().map(scalar_text).collect())
        .collect()
}

fn lifts_in(columns: &[Vec<Number>], field: Field) -> Result<Vec<Vec<Scalar>>> {
    columns
        .iter()
        .map(|c| c.iter().map(|v| v.scalar(field)).collect())
        .collect()
}

/// Per-degree matrices of a chain map or homotopy, keyed by source degree.
pub fn component_rows(map: &BTreeMap<i32, GradedMatrix>) -> BTreeMap<String, Vec<Vec<Number>>> {
    map.iter()
        .map(|(j, m)| (j.to_string(), rows_out(m.entries())))
        .collect()
}

fn components_in(
    rows: &BTreeMap<String, Vec<Vec<Number>>>,
    source: &FreeChainComplex,
    target: &FreeChainComplex,
    offset: i32,
) -> Result<BTreeMap<i32, GradedMatrix>> {
    let field = source.field();
    let mut out = BTreeMap::new();
    for (key, r) in rows {
        let j = degree_key(key)?;
        let (s, t) = (source.term(j).clone(), target.term(j + offset).clone());
        let m = rows_in(r, field, t.rank(), s.rank())?;
        out.insert(j, GradedMatrix::new(s, t, m)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Endpoint {
    Module(PresentationFile),
    Complex(ComplexFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapFile {
    Lifts(Vec<Vec<Number>>),
    Components(BTreeMap<String, Vec<Vec<Number>>>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub level: String,
    pub epsilon: Number,
    pub field: String,
    pub source: Endpoint,
    pub target: Endpoint,
    pub forward: MapFile,
    pub backward: MapFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_homotopy: Option<BTreeMap<String, Vec<Vec<Number>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_homotopy: Option<BTreeMap<String, Vec<Vec<Number>>>>,
}

impl CertificateFile {
    pub fn from_certificate(c: &InterleavingCertificate) -> CertificateFile {
        let (source, target, forward, backward, hs, ht) = match &c.maps {
            CertificateMaps::Module { forward, backward } => (
                Endpoint::Module(PresentationFile::from_presentation(forward.source())),
                Endpoint::Module(PresentationFile::from_presentation(backward.source())),
                MapFile::Lifts(lifts_out(forward)),
                MapFile::Lifts(lifts_out(backward)),
                None,
                None,
            ),
            CertificateMaps::Complex {
                forward,
                backward,
                source_homotopy,
                target_homotopy,
            } => (
                Endpoint::Complex(ComplexFile::from_complex(forward.source())),
                Endpoint::Complex(ComplexFile::from_complex(backward.source())),
                MapFile::Components(component_rows(forward.components())),
                MapFile::Components(component_rows(backward.components())),
                Some(component_rows(source_homotopy.components())),
                Some(component_rows(target_homotopy.components())),
            ),
        };
        CertificateFile {
            level: c.level.name().to_string(),
            epsilon: text(&c.epsilon),
            field: c.field().to_string(),
            source,
            target,
            forward,
            backward,
            source_homotopy: hs,
            target_homotopy: ht,
        }
    }

    /// Rebuilds the certificate; it still has to be checked with
    /// [`InterleavingCertificate::verify`].
    pub fn to_certificate(&self) -> Result<InterleavingCertificate> {
        let level = Level::parse(&self.level)?;
        let field: Field = self.field.parse()?;
        let epsilon = self.epsilon.rational()?;
        match (&self.source, &self.target, &self.forward, &self.backward) {
            (Endpoint::Module(m), Endpoint::Module(n), MapFile::Lifts(f), MapFile::Lifts(g))
                if level == Level::Module =>
            {
                let (m, n) = (m.to_presentation(field)?, n.to_presentation(field)?);
                let f = FPMorphism::from_lifts(m.clone(), n.shift(&epsilon), &lifts_in(f, field)?)?;
                let g = FPMorphism::from_lifts(n, m.shift(&epsilon), &lifts_in(g, field)?)?;
                Ok(InterleavingCertificate::module(epsilon, f, g))
            }
            (
                Endpoint::Complex(x),
                Endpoint::Complex(y),
                MapFile::Components(f),
                MapFile::Components(g),
            ) if level != Level::Module => {
                let (x, y) = (x.to_complex(field)?, y.to_complex(field)?);
                let (ye, xe) = (y.shift(&epsilon), x.shift(&epsilon));
                let two = &epsilon + &epsilon;
                let (x2, y2) = (x.shift(&two), y.shift(&two));
                let forward = ChainMap::new(x.clone(), ye.clone(), components_in(f, &x, &ye, 0)?)?;
                let backward = ChainMap::new(y.clone(), xe.clone(), components_in(g, &y, &xe, 0)?)?;
                let empty = BTreeMap::new();
                let hs = self.source_homotopy.as_ref().unwrap_or(&empty);
                let ht = self.target_homotopy.as_ref().unwrap_or(&empty);
                let source_homotopy = Homotopy::new(x.clone(), x2.clone(), components_in(hs, &x, &x2, -1)?)?;
                let target_homotopy = Homotopy::new(y.clone(), y2.clone(), components_in(ht, &y, &y2, -1)?)?;
                Ok(InterleavingCertificate {
                    level,
                    epsilon,
                    maps: CertificateMaps::Complex {
                        forward,
                        backward,
                        source_homotopy,
                        target_homotopy,
                    },
                })
            }
            _ => Err(Error::Parse(format!(
                "certificate contents do not match level {level}"
            ))),
        }
    }
}

pub fn read_presentation(json: &str, field: Field) -> Result<Presentation> {
    parse_json::<PresentationFile>(json)?.to_presentation(field)
}

pub fn read_complex(json: &str, field: Field) -> Result<FreeChainComplex> {
    parse_json::<ComplexFile>(json)?.to_complex(field)
}

pub fn read_bifiltration(json: &str) -> Result<Bifiltration> {
    parse_json::<BifiltrationFile>(json)?.to_bifiltration()
}

pub fn read_graded_matrix(json: &str, field: Field) -> Result<GradedMatrix> {
    parse_json::<GradedMatrixFile>(json)?.to_matrix(field)
}

pub fn read_certificate(json: &str) -> Result<InterleavingCertificate> {
    parse_json::<CertificateFile>(json)?.to_certificate()
}

fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn write_presentation(p: &Presentation) -> String {
    to_string(&PresentationFile::from_presentation(p))
}

pub fn write_complex(x: &FreeChainComplex) -> String {
    to_string(&ComplexFile::from_complex(x))
}

pub fn write_bifiltration(k: &Bifiltration) -> String {
    to_string(&BifiltrationFile::from_bifiltration(k))
}

pub fn write_graded_matrix(m: &GradedMatrix) -> String {
    to_string(&GradedMatrixFile::from_matrix(m))
}

pub fn write_certificate(c: &InterleavingCertificate) -> String {
    to_string(&CertificateFile::from_certificate(c))
}
