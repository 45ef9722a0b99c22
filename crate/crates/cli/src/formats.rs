//! JSON encodings of the core types.
//!
//! Grassmann elements are `{"n": N, "terms": [{"mono": [1, 2], "re": .., "im": ..}]}`.
//! Inside a file that declares `n` once at the top, an element may leave
//! out its own `n`; when present it must agree.

use std::collections::BTreeMap;

use gl11_core::cech::{HiggsCechData, Mode, Nerve, TransitionData};
use gl11_core::fatgraph::{FatGraph, GraphConnection, RealForm};
use gl11_core::grassmann::monomial_indices;
use gl11_core::hitchin::{LocalFunction, LocalMatrix, MetricData};
use gl11_core::integrable::ParabolicData;
use gl11_core::{ConjugationTable, GrassmannElement, GroupCoords, Parity, SuperMatrix11};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Degree cap for local functions read from files.
pub const DEFAULT_MAX_DEGREE: u32 = 64;

fn invalid(field: impl Into<String>, msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid {
        field: field.into(),
        message: msg.to_string(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub mono: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn from_element(x: &GrassmannElement) -> Self {
        ElementJson {
            n: Some(x.num_generators()),
            terms: x
                .terms()
                .map(|(m, c)| TermJson {
                    mono: monomial_indices(m),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    /// Decode under the file-level generator count `n`.
    pub fn decode(&self, n: Option<u32>, field: &str) -> Result<GrassmannElement> {
        let n = match (self.n, n) {
            (Some(a), Some(b)) if a != b => {
                return Err(invalid(field, format!("element has n = {a} but the file declares n = {b}")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(invalid(field, "missing generator count n")),
        };
        let mut x = GrassmannElement::zero(n);
        for (k, t) in self.terms.iter().enumerate() {
            if t.mono.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("{field}.terms[{k}].mono"), "indices must be strictly increasing"));
            }
            let m = GrassmannElement::monomial(n, &t.mono, Complex64::new(t.re, t.im))
                .map_err(|e| invalid(format!("{field}.terms[{k}]"), e))?;
            x = &x + &m;
        }
        Ok(x)
    }
}

fn element(x: &ElementJson, n: Option<u32>, field: &str, parity: Parity) -> Result<GrassmannElement> {
    let v = x.decode(n, field)?;
    if !v.is_zero() && v.parity() != parity {
        return Err(invalid(field, format!("expected an {parity} element, found {}", v.parity())));
    }
    Ok(v)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub a: ElementJson,
    pub beta: ElementJson,
    pub gamma: ElementJson,
    pub d: ElementJson,
}

impl MatrixJson {
    pub fn from_matrix(m: &SuperMatrix11) -> Self {
        MatrixJson {
            a: ElementJson::from_element(&m.a),
            beta: ElementJson::from_element(&m.beta),
            gamma: ElementJson::from_element(&m.gamma),
            d: ElementJson::from_element(&m.d),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoordsJson {
    pub h: ElementJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<ElementJson>,
    pub alpha: ElementJson,
    pub beta: ElementJson,
}

impl CoordsJson {
    pub fn from_coords(c: &GroupCoords) -> Self {
        CoordsJson {
            h: ElementJson::from_element(&c.h),
            s: Some(ElementJson::from_element(&c.s)),
            alpha: ElementJson::from_element(&c.alpha),
            beta: ElementJson::from_element(&c.beta),
        }
    }

    pub fn decode(&self, n: Option<u32>, field: &str) -> Result<GroupCoords> {
        let h = element(&self.h, n, &format!("{field}.h"), Parity::Even)?;
        let n = Some(h.num_generators());
        let s = match &self.s {
            Some(s) => element(s, n, &format!("{field}.s"), Parity::Even)?,
            None => GrassmannElement::zero(h.num_generators()),
        };
        let alpha = element(&self.alpha, n, &format!("{field}.alpha"), Parity::Odd)?;
        let beta = element(&self.beta, n, &format!("{field}.beta"), Parity::Odd)?;
        GroupCoords::new(h, s, alpha, beta).map_err(|e| invalid(field, e))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NerveJson {
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub simplices: BTreeMap<String, Vec<Vec<usize>>>,
}

impl NerveJson {
    pub fn from_nerve(nerve: &Nerve) -> Self {
        let simplices = (1..=3)
            .filter(|&p| !nerve.simplices(p).is_empty())
            .map(|p| (p.to_string(), nerve.simplices(p).to_vec()))
            .collect();
        NerveJson {
            vertices: nerve.vertices(),
            simplices,
        }
    }

    pub fn decode(&self) -> Result<Nerve> {
        for key in self.simplices.keys() {
            if !matches!(key.as_str(), "1" | "2" | "3") {
                return Err(invalid(format!("simplices.{key}"), "dimension must be 1, 2 or 3"));
            }
        }
        let get = |p: &str| self.simplices.get(p).cloned().unwrap_or_default();
        Nerve::new(&self.vertices, &get("1"), &get("2"), &get("3")).map_err(|e| invalid("simplices", e))
    }
}

/// Parse a simplex key such as `"0,1"`.
fn simplex_key(key: &str, field: &str) -> Result<Vec<usize>> {
    key.split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| invalid(format!("{field}.{key}"), "keys are comma-separated chart indices"))
}

fn simplex_name(s: &[usize]) -> String {
    s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeJson {
    Sl,
    Gl,
}

/// Transition data keyed by edge (`"i,j"`) with twist integers keyed by
/// triangle (`"i,j,k"`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionJson {
    pub n: u32,
    pub mode: ModeJson,
    pub edges: BTreeMap<String, CoordsJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub twists: BTreeMap<String, i64>,
}

impl TransitionJson {
    pub fn from_data(data: &TransitionData) -> Self {
        TransitionJson {
            n: data.num_generators(),
            mode: match data.mode() {
                Mode::Sl => ModeJson::Sl,
                Mode::Gl => ModeJson::Gl,
            },
            edges: data
                .edges()
                .map(|(&(i, j), c)| (simplex_name(&[i, j]), CoordsJson::from_coords(c)))
                .collect(),
            twists: data
                .twists()
                .filter(|(_, &k)| k != 0)
                .map(|(&(i, j, k), &t)| (simplex_name(&[i, j, k]), t))
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<TransitionData> {
        let mode = match self.mode {
            ModeJson::Sl => Mode::Sl,
            ModeJson::Gl => Mode::Gl,
        };
        let mut data = TransitionData::new(self.n, mode);
        for (key, c) in &self.edges {
            let s = simplex_key(key, "edges")?;
            let field = format!("edges.{key}");
            if s.len() != 2 {
                return Err(invalid(field, "edge keys have two chart indices"));
            }
            let coords = c.decode(Some(self.n), &field)?;
            data.set_edge(s[0], s[1], coords).map_err(|e| invalid(&field, e))?;
        }
        for (key, &t) in &self.twists {
            let s = simplex_key(key, "twists")?;
            let field = format!("twists.{key}");
            if s.len() != 3 {
                return Err(invalid(field, "twist keys have three chart indices"));
            }
            data.set_twist(s[0], s[1], s[2], t).map_err(|e| invalid(&field, e))?;
        }
        Ok(data)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HiggsVertexJson {
    pub a: ElementJson,
    pub b: ElementJson,
    pub delta: ElementJson,
    pub gamma: ElementJson,
}

/// Local Higgs data `Φ_i = [[a + b, δ], [γ, a − b]]` keyed by chart.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HiggsCechJson {
    pub n: u32,
    pub vertices: BTreeMap<String, HiggsVertexJson>,
}

impl HiggsCechJson {
    pub fn decode(&self) -> Result<HiggsCechData> {
        let n = Some(self.n);
        let mut out = HiggsCechData::new(self.n);
        for (key, v) in &self.vertices {
            let field = format!("vertices.{key}");
            let id: usize = key.parse().map_err(|_| invalid(&field, "chart keys are integers"))?;
            out.set_vertex(
                id,
                element(&v.a, n, &format!("{field}.a"), Parity::Even)?,
                element(&v.b, n, &format!("{field}.b"), Parity::Even)?,
                element(&v.delta, n, &format!("{field}.delta"), Parity::Odd)?,
                element(&v.gamma, n, &format!("{field}.gamma"), Parity::Odd)?,
            )
            .map_err(|e| invalid(field, e))?;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityJson {
    Even,
    Odd,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub z: u32,
    pub zbar: u32,
    pub coeff: ElementJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalFunctionJson {
    pub parity: ParityJson,
    #[serde(default)]
    pub terms: Vec<PolyTermJson>,
}

impl LocalFunctionJson {
    pub fn from_function(f: &LocalFunction) -> Self {
        LocalFunctionJson {
            parity: if f.parity() == Parity::Odd { ParityJson::Odd } else { ParityJson::Even },
            terms: f
                .terms()
                .map(|((p, q), c)| PolyTermJson {
                    z: p,
                    zbar: q,
                    coeff: ElementJson::from_element(c),
                })
                .collect(),
        }
    }

    pub fn decode(&self, n: u32, field: &str) -> Result<LocalFunction> {
        let parity = match self.parity {
            ParityJson::Even => Parity::Even,
            ParityJson::Odd => Parity::Odd,
        };
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(k, t)| Ok((t.z, t.zbar, element(&t.coeff, Some(n), &format!("{field}.terms[{k}].coeff"), parity)?)))
            .collect::<Result<Vec<_>>>()?;
        LocalFunction::from_terms(n, parity, DEFAULT_MAX_DEGREE, terms).map_err(|e| invalid(field, e))
    }
}

/// A metric `g(u, ρ, ρ̄)` on one chart. `table` lists the 1-based image of
/// each generator under conjugation; by default the first half of the
/// generators is paired with the second half.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricJson {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
    pub u: LocalFunctionJson,
    pub rho: LocalFunctionJson,
}

pub fn decode_table(table: &Option<Vec<usize>>, n: u32) -> Result<ConjugationTable> {
    let t = match table {
        Some(images) => ConjugationTable::from_pairing(images).map_err(|e| invalid("table", e))?,
        None if n.is_multiple_of(2) => ConjugationTable::half_split(n),
        None => return Err(invalid("table", "an odd number of generators needs an explicit table")),
    };
    if t.num_generators() != n {
        return Err(invalid("table", format!("table covers {} generators, file declares {n}", t.num_generators())));
    }
    Ok(t)
}

impl MetricJson {
    pub fn decode(&self) -> Result<MetricData> {
        let table = decode_table(&self.table, self.n)?;
        MetricData::new(self.u.decode(self.n, "u")?, self.rho.decode(self.n, "rho")?, table)
            .map_err(|e| invalid("metric", e))
    }
}

/// A Higgs field `[[a, δ], [γ, a]]` on one chart.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HiggsFieldJson {
    pub n: u32,
    pub a: LocalFunctionJson,
    pub delta: LocalFunctionJson,
    pub gamma: LocalFunctionJson,
}

impl HiggsFieldJson {
    pub fn decode(&self) -> Result<LocalMatrix> {
        gl11_core::hitchin::higgs_field(
            self.a.decode(self.n, "a")?,
            self.delta.decode(self.n, "delta")?,
            self.gamma.decode(self.n, "gamma")?,
        )
        .map_err(|e| invalid("higgs", e))
    }
}

/// Half-edges `0..half_edges`, the pairing involution, the cyclic order of
/// half-edges at each vertex and, optionally, the preferred half-edge of
/// each edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FatGraphJson {
    pub half_edges: usize,
    pub pairing: Vec<usize>,
    pub cyclic_orders: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<usize>>,
}

impl FatGraphJson {
    pub fn from_graph(g: &FatGraph) -> Self {
        FatGraphJson {
            half_edges: g.num_half_edges(),
            pairing: g.pairing().to_vec(),
            cyclic_orders: g.cyclic_orders().to_vec(),
            orientation: Some(g.orientation().to_vec()),
        }
    }

    pub fn decode(&self) -> Result<FatGraph> {
        if self.pairing.len() != self.half_edges {
            return Err(invalid(
                "pairing",
                format!("{} entries for {} half-edges", self.pairing.len(), self.half_edges),
            ));
        }
        FatGraph::new(self.pairing.clone(), self.cyclic_orders.clone(), self.orientation.clone())
            .map_err(|e| invalid("fatgraph", e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormJson {
    Sl,
    Su,
}

/// Edge id → coordinates of the parallel transport along that edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConnectionJson {
    pub n: u32,
    pub form: FormJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
    pub edges: BTreeMap<String, CoordsJson>,
}

impl ConnectionJson {
    pub fn from_connection(c: &GraphConnection) -> Self {
        let (form, table) = match c.form() {
            RealForm::Sl => (FormJson::Sl, None),
            RealForm::Su(t) => (FormJson::Su, Some(t.images())),
        };
        ConnectionJson {
            n: c.num_generators(),
            form,
            table,
            edges: c
                .coords()
                .iter()
                .enumerate()
                .map(|(e, g)| (e.to_string(), CoordsJson::from_coords(g)))
                .collect(),
        }
    }

    pub fn decode(&self, graph: FatGraph) -> Result<GraphConnection> {
        let form = match self.form {
            FormJson::Sl => RealForm::Sl,
            FormJson::Su => RealForm::Su(decode_table(&self.table, self.n)?),
        };
        let mut coords = vec![None; graph.num_edges()];
        for (key, c) in &self.edges {
            let field = format!("edges.{key}");
            let e: usize = key.parse().map_err(|_| invalid(&field, "edge keys are integers"))?;
            let slot = coords
                .get_mut(e)
                .ok_or_else(|| invalid(&field, format!("graph has {} edges", graph.num_edges())))?;
            *slot = Some(c.decode(Some(self.n), &field)?);
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(e, c)| c.ok_or_else(|| invalid(format!("edges.{e}"), "missing edge")))
            .collect::<Result<Vec<_>>>()?;
        GraphConnection::new(graph, form, coords).map_err(|e| invalid("connection", e))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SiteJson {
    pub z: [f64; 2],
    pub u: [f64; 2],
    pub v: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    pub sites: Vec<SiteJson>,
    #[serde(default = "one")]
    pub hbar: f64,
}

fn one() -> f64 {
    1.0
}

impl SystemJson {
    pub fn from_data(p: &ParabolicData, hbar: f64) -> Self {
        let pair = |c: Complex64| [c.re, c.im];
        SystemJson {
            sites: (1..=p.num_sites())
                .map(|i| SiteJson {
                    z: pair(p.z(i)),
                    u: pair(p.u(i)),
                    v: pair(p.v(i)),
                })
                .collect(),
            hbar,
        }
    }

    pub fn decode(&self) -> Result<ParabolicData> {
        let c = |x: [f64; 2]| Complex64::new(x[0], x[1]);
        ParabolicData::new(
            self.sites.iter().map(|s| c(s.z)).collect(),
            self.sites.iter().map(|s| c(s.u)).collect(),
            self.sites.iter().map(|s| c(s.v)).collect(),
        )
        .map_err(|e| invalid("sites", e))
    }
}

/// Read and parse a JSON file; serde reports line and column on failure.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        source: e,
    })
}
