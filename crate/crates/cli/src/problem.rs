//! JSON problem files: a field, an optional algebra presentation, named
//! modules and maps, and named scenarios wiring them into certificates,
//! self-extension data, sequences, cusp (bi)modules and searches.
//!
//! All scalars are strings in the exact serialization (`"n"`, `"n/d"`, or
//! a residue in `[0, p)`), so fixtures stay hand-auditable.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use modvar::algmod::{AlgebraPresentation, ModulePoint, NcPoly};
use modvar::cusp::{CuspBimodule, CuspModule, Side};
use modvar::degen::{DegenerationCertificate, SelfExtensionDatum, ShortExactCandidate};
use modvar::exactfield::{FieldSpec, Matrix, Scalar};

#[derive(Debug)]
pub enum LoadError {
    Json(String),
    Field(String),
    Scalar(String),
    Shape(String),
    Unresolved(String),
    Core(modvar::Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Json(e) => write!(f, "cannot parse problem file: {e}"),
            LoadError::Field(e) => write!(f, "bad field spec: {e}"),
            LoadError::Scalar(e) => write!(f, "bad scalar: {e}"),
            LoadError::Shape(e) => write!(f, "bad shape: {e}"),
            LoadError::Unresolved(e) => write!(f, "unresolved name: {e}"),
            LoadError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<modvar::Error> for LoadError {
    fn from(e: modvar::Error) -> Self {
        LoadError::Core(e)
    }
}

type LoadResult<T> = Result<T, LoadError>;

#[derive(Deserialize)]
struct FieldJson {
    kind: String,
    #[serde(default)]
    p: Option<u32>,
}

#[derive(Deserialize)]
struct TermJson {
    coeff: String,
    word: Vec<usize>,
}

#[derive(Deserialize)]
struct AlgebraJson {
    generators: usize,
    #[serde(default)]
    relations: Vec<Vec<TermJson>>,
}

#[derive(Deserialize)]
struct ModuleJson {
    dim: usize,
    mats: Vec<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
struct MapJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Deserialize, Clone)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioJson {
    /// `0 -> U -f-> W -g-> V -> 0`.
    Sequence {
        u: String,
        w: String,
        v: String,
        f: String,
        g: String,
    },
    /// `0 -> Z -f-> Z (+) M -g-> N -> 0`, with an optional dual witness
    /// `0 -> N -> T (+) M -> T -> 0`.
    Certificate {
        m: String,
        n: String,
        z: String,
        f: String,
        g: String,
        #[serde(default)]
        t: Option<String>,
        #[serde(default)]
        f_dual: Option<String>,
        #[serde(default)]
        g_dual: Option<String>,
    },
    /// `0 -> Z -> Z (+) Y -> Z -> 0` via `ftilde, gtilde, htilde`.
    SelfExtension {
        z: String,
        y: String,
        ftilde: String,
        gtilde: String,
        htilde: String,
    },
    /// One-sided module over the cusp ring.
    CuspModule {
        side: String,
        m2: String,
        m3: String,
    },
    /// Bimodule over the cusp ring.
    CuspBimodule {
        left_m2: String,
        left_m3: String,
        right_m2: String,
        right_m3: String,
    },
    /// Input of the filtration certificate constructor.
    Submodule { module: String, basis: String },
    /// Two partitions for the Jordan Hom oracle.
    PartitionPair { lambda: Vec<usize>, mu: Vec<usize> },
    /// Parameters of the finite-field self-extension search.
    GapSearch { d_z: usize, t: usize },
}

#[derive(Deserialize)]
struct ProblemJson {
    field: FieldJson,
    #[serde(default)]
    algebra: Option<AlgebraJson>,
    #[serde(default)]
    modules: BTreeMap<String, ModuleJson>,
    #[serde(default)]
    maps: BTreeMap<String, MapJson>,
    #[serde(default)]
    scenarios: BTreeMap<String, ScenarioJson>,
}

/// A fully resolved problem file.
pub struct Problem {
    pub field: FieldSpec,
    pub modules: BTreeMap<String, ModulePoint>,
    pub maps: BTreeMap<String, Matrix>,
    pub scenarios: BTreeMap<String, ScenarioJson>,
}

fn parse_scalar(field: FieldSpec, s: &str) -> LoadResult<Scalar> {
    field
        .parse(s)
        .map_err(|e| LoadError::Scalar(format!("{s:?}: {e}")))
}

fn parse_matrix(field: FieldSpec, rows: usize, cols: usize, entries: &[Vec<String>]) -> LoadResult<Matrix> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(LoadError::Shape(format!(
            "entry grid does not match {rows}x{cols}"
        )));
    }
    let mut parsed = Vec::with_capacity(rows);
    for row in entries {
        let mut out = Vec::with_capacity(cols);
        for e in row {
            out.push(parse_scalar(field, e)?);
        }
        parsed.push(out);
    }
    Matrix::from_rows(field, parsed).map_err(LoadError::Core)
}

impl Problem {
    pub fn parse(text: &str) -> LoadResult<Problem> {
        let json: ProblemJson =
            serde_json::from_str(text).map_err(|e| LoadError::Json(e.to_string()))?;
        let field = match json.field.kind.as_str() {
            "rational" => FieldSpec::Rational,
            "prime" => {
                let p = json
                    .field
                    .p
                    .ok_or_else(|| LoadError::Field("prime field needs `p`".into()))?;
                FieldSpec::prime(p).map_err(|e| LoadError::Field(e.to_string()))?
            }
            other => return Err(LoadError::Field(format!("unknown kind {other:?}"))),
        };

        let algebra = match &json.algebra {
            None => None,
            Some(a) => {
                let mut relations = Vec::with_capacity(a.relations.len());
                for rel in &a.relations {
                    let mut terms = Vec::with_capacity(rel.len());
                    for term in rel {
                        terms.push((parse_scalar(field, &term.coeff)?, term.word.clone()));
                    }
                    relations.push(NcPoly { terms });
                }
                Some(Arc::new(
                    AlgebraPresentation::new(field, a.generators, relations)
                        .map_err(LoadError::Core)?,
                ))
            }
        };

        let mut modules = BTreeMap::new();
        for (name, m) in &json.modules {
            let alg = algebra
                .as_ref()
                .ok_or_else(|| LoadError::Unresolved(format!("module {name:?} needs an algebra")))?;
            let mut mats = Vec::with_capacity(m.mats.len());
            for mat in &m.mats {
                let rows: Vec<Vec<String>> = mat.clone();
                mats.push(parse_matrix(field, m.dim, m.dim, &rows)?);
            }
            modules.insert(
                name.clone(),
                ModulePoint::new(Arc::clone(alg), m.dim, mats).map_err(LoadError::Core)?,
            );
        }

        let mut maps = BTreeMap::new();
        for (name, m) in &json.maps {
            maps.insert(name.clone(), parse_matrix(field, m.rows, m.cols, &m.entries)?);
        }

        Ok(Problem {
            field,
            modules,
            maps,
            scenarios: json.scenarios,
        })
    }

    pub fn module(&self, name: &str) -> LoadResult<&ModulePoint> {
        self.modules
            .get(name)
            .ok_or_else(|| LoadError::Unresolved(format!("module {name:?}")))
    }

    pub fn map(&self, name: &str) -> LoadResult<&Matrix> {
        self.maps
            .get(name)
            .ok_or_else(|| LoadError::Unresolved(format!("map {name:?}")))
    }

    pub fn scenario(&self, name: &str) -> LoadResult<&ScenarioJson> {
        self.scenarios
            .get(name)
            .ok_or_else(|| LoadError::Unresolved(format!("scenario {name:?}")))
    }

    /// Builds the short exact candidate of a sequence-like scenario
    /// (sequence, certificate or self-extension).
    pub fn sequence(&self, name: &str) -> LoadResult<ShortExactCandidate> {
        match self.scenario(name)? {
            ScenarioJson::Sequence { u, w, v, f, g } => Ok(ShortExactCandidate::new(
                self.module(u)?.clone(),
                self.module(w)?.clone(),
                self.module(v)?.clone(),
                self.map(f)?.clone(),
                self.map(g)?.clone(),
            )?),
            ScenarioJson::Certificate { .. } => Ok(self.certificate(name)?.to_sequence()?),
            ScenarioJson::SelfExtension { .. } => Ok(self.self_extension(name)?.to_sequence()?),
            _ => Err(LoadError::Unresolved(format!(
                "scenario {name:?} is not sequence-like"
            ))),
        }
    }

    pub fn certificate(&self, name: &str) -> LoadResult<DegenerationCertificate> {
        match self.scenario(name)? {
            ScenarioJson::Certificate {
                m,
                n,
                z,
                f,
                g,
                t,
                f_dual,
                g_dual,
            } => {
                let cert = DegenerationCertificate::new(
                    self.module(m)?.clone(),
                    self.module(n)?.clone(),
                    self.module(z)?.clone(),
                    self.map(f)?.clone(),
                    self.map(g)?.clone(),
                )?;
                match (t, f_dual, g_dual) {
                    (None, None, None) => Ok(cert),
                    (Some(t), Some(fd), Some(gd)) => Ok(cert.with_dual(
                        self.module(t)?.clone(),
                        self.map(fd)?.clone(),
                        self.map(gd)?.clone(),
                    )?),
                    _ => Err(LoadError::Shape(format!(
                        "certificate {name:?} gives a partial dual witness"
                    ))),
                }
            }
            _ => Err(LoadError::Unresolved(format!(
                "scenario {name:?} is not a certificate"
            ))),
        }
    }

    pub fn self_extension(&self, name: &str) -> LoadResult<SelfExtensionDatum> {
        match self.scenario(name)? {
            ScenarioJson::SelfExtension {
                z,
                y,
                ftilde,
                gtilde,
                htilde,
            } => Ok(SelfExtensionDatum::new(
                self.module(z)?.clone(),
                self.module(y)?.clone(),
                self.map(ftilde)?.clone(),
                self.map(gtilde)?.clone(),
                self.map(htilde)?.clone(),
            )?),
            _ => Err(LoadError::Unresolved(format!(
                "scenario {name:?} is not a self-extension datum"
            ))),
        }
    }

    pub fn cusp_module(&self, name: &str) -> LoadResult<CuspModule> {
        match self.scenario(name)? {
            ScenarioJson::CuspModule { side, m2, m3 } => {
                let side = match side.as_str() {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    other => {
                        return Err(LoadError::Shape(format!("unknown side {other:?}")));
                    }
                };
                Ok(CuspModule::new(
                    self.map(m2)?.clone(),
                    self.map(m3)?.clone(),
                    side,
                )?)
            }
            _ => Err(LoadError::Unresolved(format!(
                "scenario {name:?} is not a cusp module"
            ))),
        }
    }

    pub fn cusp_bimodule(&self, name: &str) -> LoadResult<CuspBimodule> {
        match self.scenario(name)? {
            ScenarioJson::CuspBimodule {
                left_m2,
                left_m3,
                right_m2,
                right_m3,
            } => Ok(CuspBimodule::new(
                self.map(left_m2)?.clone(),
                self.map(left_m3)?.clone(),
                self.map(right_m2)?.clone(),
                self.map(right_m3)?.clone(),
            )?),
            _ => Err(LoadError::Unresolved(format!(
                "scenario {name:?} is not a cusp bimodule"
            ))),
        }
    }
}

/// Serializes a matrix back to the nested-string form used in reports.
pub fn matrix_to_json(m: &Matrix) -> serde_json::Value {
    let field = m.field();
    let rows: Vec<serde_json::Value> = (0..m.rows())
        .map(|r| {
            let row: Vec<serde_json::Value> = (0..m.cols())
                .map(|c| serde_json::Value::String(field.format(m.at(r, c))))
                .collect();
            serde_json::Value::Array(row)
        })
        .collect();
    serde_json::Value::Array(rows)
}
