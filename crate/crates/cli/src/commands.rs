//! One function per subcommand. Each reads its inputs, delegates to the
//! core checks and returns a [`RunReport`].

use std::path::Path;

use gl11_core::cech::{check_gl_cocycle, check_sl_cocycle, gl_higgs_constraints, sl_higgs_obstruction, Mode};
use gl11_core::fatgraph::{constrained_dims, free_dims, moduli_dims, OrientedEdge, RealForm};
use gl11_core::hitchin::{curvature, hitchin_residual, LocalMatrix};
use gl11_core::integrable::{
    garnier_hamiltonian, garnier_hamiltonian_expanded, garnier_hamiltonian_residue, gaudin_commutators,
    gaudin_hamiltonian, gl11_relations, number_operator, poisson_bracket, quantize, ParabolicData, MAX_DENSE_SITES,
};
use gl11_core::selftest::group_selftest;
use gl11_core::{GrassmannElement, Report};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::formats::{
    read_json, ConnectionJson, FatGraphJson, HiggsCechJson, HiggsFieldJson, MatrixJson, MetricJson, NerveJson,
    SystemJson, TransitionJson,
};
use crate::report::RunReport;

/// Contour samples for the residue form of the Garnier Hamiltonians.
const RESIDUE_SAMPLES: usize = 64;

pub struct Settings {
    pub tol: f64,
    pub seed: u64,
}

impl Settings {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn group_selftest_cmd(s: &Settings, count: usize, generators: u32, corrupt: bool) -> Result<RunReport> {
    let report = if count == 0 {
        Report::new()
    } else {
        group_selftest(&mut s.rng(), generators, count, s.tol, corrupt)?
    };
    Ok(RunReport::new("group-selftest", s.tol, &report)
        .with_value("count", count)
        .with_value("generators", generators))
}

pub fn cech_verify(s: &Settings, nerve: &Path, data: &Path, higgs: Option<&Path>, mod_2pi: bool) -> Result<RunReport> {
    let nerve = read_json::<NerveJson>(nerve)?.decode()?;
    let data = read_json::<TransitionJson>(data)?.decode()?;
    data.validate(&nerve).map_err(|e| CliError::Invalid {
        field: "edges".into(),
        message: e.to_string(),
    })?;
    let mut report = match data.mode() {
        Mode::Sl => check_sl_cocycle(&nerve, &data, s.tol, mod_2pi)?,
        Mode::Gl => check_gl_cocycle(&nerve, &data, s.tol, mod_2pi)?,
    };
    if let Some(path) = higgs {
        let higgs = read_json::<HiggsCechJson>(path)?.decode()?;
        let sub = match data.mode() {
            Mode::Sl => {
                let o = sl_higgs_obstruction(&nerve, &data, &higgs, s.tol)?;
                let mut r = Report::new();
                r.record("t_closed", o.closed_residual, s.tol);
                r.record("t_exact", o.exact_residual, s.tol);
                r
            }
            Mode::Gl => gl_higgs_constraints(&nerve, &data, &higgs, s.tol)?.report,
        };
        report.merge(sub.prefixed("higgs."));
    }
    Ok(RunReport::new("cech-verify", s.tol, &report))
}

fn entry_report(prefix: &str, m: &LocalMatrix, tol: f64) -> Report {
    let mut r = Report::new();
    for (name, f) in [("a", &m.a), ("beta", &m.beta), ("gamma", &m.gamma), ("d", &m.d)] {
        r.record(&format!("{prefix}.{name}"), f.max_abs(), tol);
    }
    r
}

/// Residual of the Hitchin equations, or the curvature alone when no Higgs
/// field is given.
pub fn hitchin_residual_cmd(s: &Settings, metric: &Path, higgs: Option<&Path>) -> Result<RunReport> {
    let m = read_json::<MetricJson>(metric)?.decode()?;
    let report = match higgs {
        Some(path) => {
            let phi = read_json::<HiggsFieldJson>(path)?.decode()?;
            entry_report("residual", &hitchin_residual(&m, &phi)?, s.tol)
        }
        None => entry_report("curvature", &curvature(&m)?, s.tol),
    };
    Ok(RunReport::new("hitchin-residual", s.tol, &report))
}

fn read_connection(graph: &Path, connection: &Path) -> Result<gl11_core::fatgraph::GraphConnection> {
    let graph = read_json::<FatGraphJson>(graph)?.decode()?;
    read_json::<ConnectionJson>(connection)?.decode(graph)
}

pub fn fatgraph_normalize(s: &Settings, graph: &Path, connection: &Path, out: Option<&Path>) -> Result<RunReport> {
    let conn = read_connection(graph, connection)?;
    let norm = conn.gauge_normalize(s.tol)?;
    let mut report = Report::new();
    report.record("vertex_sums", norm.connection.max_vertex_sum(), s.tol);
    let encoded = ConnectionJson::from_connection(&norm.connection);
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&encoded).expect("connections serialize");
        std::fs::write(path, text + "\n").map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
    }
    let run = RunReport::new("fatgraph normalize", s.tol, &report).with_value("residual_gauge", norm.kernel);
    Ok(if out.is_none() { run.with_value("connection", encoded) } else { run })
}

/// Parse `"0,-2,1"`: edge ids, with a leading minus for the reversed
/// orientation (so `-0` is edge 0 backwards).
pub fn parse_cycle(text: &str) -> Result<Vec<OrientedEdge>> {
    text.split(',')
        .map(|p| {
            let p = p.trim();
            let (rev, id) = match p.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, p),
            };
            let e: usize = id.parse().map_err(|_| CliError::Invalid {
                field: "cycle".into(),
                message: format!("`{p}` is not an edge id"),
            })?;
            Ok(if rev { OrientedEdge::backward(e) } else { OrientedEdge::forward(e) })
        })
        .collect()
}

pub fn fatgraph_holonomy(s: &Settings, graph: &Path, connection: &Path, cycle: &str) -> Result<RunReport> {
    let conn = read_connection(graph, connection)?;
    let path = parse_cycle(cycle)?;
    if let Some(oe) = path.iter().find(|oe| oe.edge >= conn.graph().num_edges()) {
        return Err(CliError::Invalid {
            field: "cycle".into(),
            message: format!("edge {} out of range", oe.edge),
        });
    }
    let hol = conn.holonomy(&path)?;
    // sdet is multiplicative and sdet g(h, s, α, β) = e^s
    let n = conn.num_generators();
    let total_s = path.iter().fold(GrassmannElement::zero(n), |acc, &oe| &acc + &conn.along(oe).s);
    let mut report = Report::new();
    report.record("sdet", hol.sdet()?.distance(&total_s.exp_even()?), s.tol);
    Ok(RunReport::new("fatgraph holonomy", s.tol, &report)
        .with_value("holonomy", MatrixJson::from_matrix(&hol))
        .with_value("supertrace", crate::formats::ElementJson::from_element(&hol.str())))
}

pub fn fatgraph_check_punctures(s: &Settings, graph: &Path, connection: &Path) -> Result<RunReport> {
    let conn = read_connection(graph, connection)?;
    let p = conn.check_puncture_constraints(s.tol);
    Ok(RunReport::new("fatgraph check-punctures", s.tol, &p.report)
        .with_value("even_constraints", p.even_constraints)
        .with_value("odd_constraints", p.odd_constraints))
}

/// Closed-form dimensions, and with a graph the counted ones compared
/// against them.
pub fn fatgraph_dims(
    s: &Settings,
    genus: usize,
    punctures: usize,
    constrained: bool,
    su: bool,
    graph: Option<&Path>,
) -> Result<RunReport> {
    let closed = moduli_dims(genus, punctures, constrained, su)?;
    let mut report = Report::new();
    let mut counted = None;
    if let Some(path) = graph {
        let g = read_json::<FatGraphJson>(path)?.decode()?;
        let (gg, ss) = g.genus_and_punctures()?;
        if (gg, ss) != (genus, punctures) {
            return Err(CliError::Invalid {
                field: "fatgraph".into(),
                message: format!("graph has (g, s) = ({gg}, {ss}), not ({genus}, {punctures})"),
            });
        }
        // only the shape of the real form matters for counting
        let form = if su {
            RealForm::Su(gl11_core::ConjugationTable::half_split(2))
        } else {
            RealForm::Sl
        };
        let c = if constrained { constrained_dims(&g, &form) } else { free_dims(&g, &form) };
        report.record("even", c.0.abs_diff(closed.0) as f64, s.tol);
        report.record("odd", c.1.abs_diff(closed.1) as f64, s.tol);
        counted = Some(c);
    }
    let mut run = RunReport::new("fatgraph dims", s.tol, &report).with_value("closed_form", closed);
    if let Some(c) = counted {
        run = run.with_value("counted", c);
    }
    Ok(run)
}

/// The system from `--system`, or a seeded random one with `m` sites.
fn system(s: &Settings, file: Option<&Path>, m: Option<usize>) -> Result<(ParabolicData, f64)> {
    match (file, m) {
        (Some(path), _) => {
            let sys = read_json::<SystemJson>(path)?;
            Ok((sys.decode()?, sys.hbar))
        }
        (None, Some(m)) => Ok((ParabolicData::random(&mut s.rng(), m), 1.0)),
        (None, None) => Err(CliError::Invalid {
            field: "system".into(),
            message: "give a system file or a site count".into(),
        }),
    }
}

pub fn garnier_check(s: &Settings, file: Option<&Path>, m: Option<usize>) -> Result<RunReport> {
    let (p, _) = system(s, file, m)?;
    let m = p.num_sites();
    let hs = (1..=m).map(|i| garnier_hamiltonian(&p, i)).collect::<gl11_core::Result<Vec<_>>>()?;
    let mut report = Report::new();
    for i in 0..m {
        for j in i + 1..m {
            let b = poisson_bracket(&hs[i], &hs[j])?;
            report.record(&format!("pair_{}_{}", i + 1, j + 1), b.max_abs(), s.tol);
        }
        let expanded = garnier_hamiltonian_expanded(&p, i + 1)?;
        report.record("expanded_form", expanded.distance(&hs[i]), s.tol);
        let residue = garnier_hamiltonian_residue(&p, i + 1, RESIDUE_SAMPLES)?;
        report.record("residue_form", residue.distance(&hs[i]), s.tol);
    }
    let sum = hs.iter().skip(1).fold(hs[0].clone(), |a, b| &a + b);
    report.record("sum", sum.max_abs(), s.tol);
    Ok(RunReport::new("garnier-check", s.tol, &report).with_value("sites", m))
}

fn dense_only(p: &ParabolicData) -> Result<()> {
    if p.num_sites() > MAX_DENSE_SITES {
        return Err(CliError::Invalid {
            field: "sites".into(),
            message: format!("at most {MAX_DENSE_SITES} sites are supported here"),
        });
    }
    Ok(())
}

pub fn gaudin_commute(s: &Settings, file: Option<&Path>, m: Option<usize>) -> Result<RunReport> {
    let (p, hbar) = system(s, file, m)?;
    let m = p.num_sites();
    let mut report = Report::new();
    for ((i, j), rel) in gaudin_commutators(&p, hbar)? {
        report.record(&format!("pair_{i}_{j}"), rel, s.tol);
    }
    if m <= MAX_DENSE_SITES {
        report.merge(gl11_relations(&p, s.tol)?.prefixed("gl11."));
        let hs = (1..=m)
            .map(|i| gaudin_hamiltonian(&p, i, hbar)?.to_matrix())
            .collect::<gl11_core::Result<Vec<_>>>()?;
        let mut sum = hs[0].clone();
        for h in &hs[1..] {
            sum = sum.try_add(h)?;
        }
        report.record("sum", sum.norm(), s.tol);
        let nt = number_operator(m).to_matrix()?;
        for h in &hs {
            report.record("number_conserved", h.supercommutator(&nt)?.norm(), s.tol);
        }
    }
    Ok(RunReport::new("gaudin-commute", s.tol, &report)
        .with_value("sites", m)
        .with_value("hbar", hbar))
}

pub fn quantize_compare(s: &Settings, file: Option<&Path>, m: Option<usize>) -> Result<RunReport> {
    let (p, hbar) = system(s, file, m)?;
    dense_only(&p)?;
    let mut report = Report::new();
    for i in 1..=p.num_sites() {
        let q = quantize(&p, &garnier_hamiltonian(&p, i)?, hbar, s.tol)?;
        let diff = q.try_sub(&gaudin_hamiltonian(&p, i, hbar)?)?.to_matrix()?;
        let worst = diff.data().iter().map(|x| x.norm()).fold(0.0, f64::max);
        report.record(&format!("site_{i}"), worst, s.tol);
    }
    Ok(RunReport::new("quantize-compare", s.tol, &report)
        .with_value("sites", p.num_sites())
        .with_value("hbar", hbar))
}
