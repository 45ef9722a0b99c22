use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::Rng;

use super::graph::{FatGraph, OrientedEdge};
use crate::error::{Error, Result};
use crate::grassmann::{ConjugationTable, GrassmannElement, Parity};
use crate::linalg::{self, MinNormSolver, RANK_TOL};
use crate::report::Report;
use crate::sample;
use crate::supergroup::{GroupCoords, SuperMatrix11};

/// Structure group of a graph connection. The SU form carries the
/// conjugation defining `h̄ = −h`, `ᾱ = −β`.
#[derive(Debug, Clone, PartialEq)]
pub enum RealForm {
    Sl,
    Su(ConjugationTable),
}

/// One-parameter subgroups used for rescaling at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RescaleKind {
    Diag,
    Lower,
    Upper,
}

/// Tolerance for the SU reality conditions.
pub const REALITY_TOL: f64 = 1e-9;

/// Group element assigned to each edge of a fatgraph, read along the edge's
/// preferred direction. The reverse traversal carries the inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphConnection {
    graph: FatGraph,
    form: RealForm,
    n: u32,
    coords: Vec<GroupCoords>,
}

/// Result of [`GraphConnection::gauge_normalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    pub connection: GraphConnection,
    /// Dimension of the space of vertex parameters left undetermined
    /// (even, odd); the global constant rescalings.
    pub kernel: (usize, usize),
    /// Largest vertex sum after normalization.
    pub residual: f64,
}

/// Boundary holonomies of a connection.
#[derive(Debug, Clone, PartialEq)]
pub struct PunctureReport {
    pub report: Report,
    /// `‖hol(B_i) − 1‖` per boundary cycle.
    pub residuals: Vec<f64>,
    /// Independent even / odd equations the boundary conditions impose on
    /// a gauge-normalized connection.
    pub even_constraints: usize,
    pub odd_constraints: usize,
}

fn su_defect(c: &GroupCoords, table: &ConjugationTable) -> Result<f64> {
    let dh = &c.h.conjugate(table)? + &c.h;
    let da = &c.alpha.conjugate(table)? + &c.beta;
    Ok(dh.max_abs().max(da.max_abs()).max(c.s.max_abs()))
}

/// Even element with `x̄ = −x`.
fn imaginary_part(x: &GrassmannElement, table: &ConjugationTable) -> GrassmannElement {
    (x - &x.conjugate(table).expect("table matches")).scale(0.5)
}

fn random_su_coords<R: Rng + ?Sized>(rng: &mut R, n: u32, table: &ConjugationTable) -> GroupCoords {
    let h = imaginary_part(&sample::random_even(rng, n, 3), table);
    let alpha = sample::random_odd(rng, n, 3);
    let beta = -alpha.conjugate(table).expect("table matches");
    GroupCoords::sl(h, alpha, beta).expect("parities are right")
}

/// Rescaling element at a vertex. In SU form the lower and upper subgroups
/// are replaced by `g(0, γ, −γ̄)` and `g(0, −γ̄, γ)`, and a diagonal
/// parameter must satisfy `c̄ = −c`.
pub fn rescaling_element(form: &RealForm, kind: RescaleKind, param: &GrassmannElement) -> Result<GroupCoords> {
    let n = param.num_generators();
    let zero = GrassmannElement::zero(n);
    match kind {
        RescaleKind::Diag => {
            param.expect_parity(Parity::Even, "diagonal rescaling")?;
            if let RealForm::Su(t) = form {
                if t.num_generators() != n {
                    return Err(Error::GeneratorMismatch(t.num_generators(), n));
                }
                let defect = (&param.conjugate(t)? + param).max_abs();
                if defect > REALITY_TOL {
                    return Err(Error::InvalidInput(format!(
                        "SU diagonal rescaling needs an imaginary parameter (defect {defect:.3e})"
                    )));
                }
            }
            GroupCoords::sl(param.clone(), zero.clone(), zero)
        }
        RescaleKind::Lower | RescaleKind::Upper => {
            param.expect_parity(Parity::Odd, "off-diagonal rescaling")?;
            let (a, b) = match (form, kind) {
                (RealForm::Sl, RescaleKind::Lower) => (param.clone(), zero.clone()),
                (RealForm::Sl, _) => (zero.clone(), param.clone()),
                (RealForm::Su(t), RescaleKind::Lower) => (param.clone(), -param.conjugate(t)?),
                (RealForm::Su(t), _) => (-param.conjugate(t)?, param.clone()),
            };
            GroupCoords::sl(zero, a, b)
        }
    }
}

impl GraphConnection {
    pub fn new(graph: FatGraph, form: RealForm, coords: Vec<GroupCoords>) -> Result<Self> {
        if coords.len() != graph.num_edges() {
            return Err(Error::InvalidInput(format!(
                "{} edge assignments for {} edges",
                coords.len(),
                graph.num_edges()
            )));
        }
        let n = coords.first().map(|c| c.num_generators()).unwrap_or(0);
        if let RealForm::Su(t) = &form {
            if t.num_generators() != n {
                return Err(Error::GeneratorMismatch(t.num_generators(), n));
            }
        }
        for (e, c) in coords.iter().enumerate() {
            if c.num_generators() != n {
                return Err(Error::GeneratorMismatch(n, c.num_generators()));
            }
            if !c.is_sl() {
                return Err(Error::InvalidInput(format!("edge {e} has s ≠ 0")));
            }
            if let RealForm::Su(t) = &form {
                let d = su_defect(c, t)?;
                if d > REALITY_TOL {
                    return Err(Error::InvalidInput(format!(
                        "edge {e} violates the SU reality conditions (defect {d:.3e})"
                    )));
                }
            }
        }
        Ok(GraphConnection { graph, form, n, coords })
    }

    pub fn trivial(graph: FatGraph, form: RealForm, n: u32) -> Self {
        let coords = vec![GroupCoords::identity(n); graph.num_edges()];
        GraphConnection { graph, form, n, coords }
    }

    /// Random assignment satisfying the reality conditions of `form`.
    pub fn random<R: Rng + ?Sized>(graph: FatGraph, form: RealForm, rng: &mut R, n: u32) -> Self {
        let coords = (0..graph.num_edges())
            .map(|_| match &form {
                RealForm::Sl => sample::random_coords(rng, n, false),
                RealForm::Su(t) => random_su_coords(rng, n, t),
            })
            .collect();
        GraphConnection { graph, form, n, coords }
    }

    /// Random connection with trivial boundary holonomy around every
    /// puncture: `g_e = r_t⁻¹ · e^{h_e} · r_h` with `(h_e)` in the kernel of
    /// the boundary matrix and random vertex elements `r_v`.
    pub fn random_puncture_trivial<R: Rng + ?Sized>(graph: FatGraph, form: RealForm, rng: &mut R, n: u32) -> Self {
        let b = graph.boundary_matrix();
        let eig = (b.transpose() * &b).symmetric_eigen();
        let kernel: Vec<usize> = (0..graph.num_edges())
            .filter(|&k| eig.eigenvalues[k].abs() < RANK_TOL)
            .collect();
        let mut h = vec![GrassmannElement::zero(n); graph.num_edges()];
        for &k in &kernel {
            let mut x = sample::random_even(rng, n, 3);
            if let RealForm::Su(t) = &form {
                x = imaginary_part(&x, t);
            }
            for (e, he) in h.iter_mut().enumerate() {
                *he = &*he + &x.scale(eig.eigenvectors[(e, k)]);
            }
        }
        let r: Vec<GroupCoords> = (0..graph.num_vertices())
            .map(|_| match &form {
                RealForm::Sl => sample::random_coords(rng, n, false),
                RealForm::Su(t) => random_su_coords(rng, n, t),
            })
            .collect();
        let zero = GrassmannElement::zero(n);
        let coords = h
            .into_iter()
            .map(|he| GroupCoords::sl(he, zero.clone(), zero.clone()).expect("even h"))
            .collect();
        let base = GraphConnection { graph, form, n, coords };
        base.apply_gauge(&r).expect("SU vertex elements keep the reality conditions")
    }

    pub fn graph(&self) -> &FatGraph {
        &self.graph
    }

    pub fn form(&self) -> &RealForm {
        &self.form
    }

    pub fn num_generators(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[GroupCoords] {
        &self.coords
    }

    /// Coordinates read along a traversal; the reverse of an edge carries
    /// `(−h, −α, −β)`.
    pub fn along(&self, oe: OrientedEdge) -> GroupCoords {
        let c = &self.coords[oe.edge];
        if oe.reversed {
            c.inverse()
        } else {
            c.clone()
        }
    }

    /// Same connection on the graph with every edge reversed.
    pub fn reversed(&self) -> Self {
        GraphConnection {
            graph: self.graph.reversed(),
            form: self.form.clone(),
            n: self.n,
            coords: self.coords.iter().map(GroupCoords::inverse).collect(),
        }
    }

    /// Per vertex, the sums `(Σ h_i, Σ α^v_i, Σ β^v_i)` over incident edges
    /// read toward the vertex.
    pub fn vertex_sums(&self) -> Vec<[GrassmannElement; 3]> {
        let z = GrassmannElement::zero(self.n);
        let mut sums = vec![[z.clone(), z.clone(), z]; self.graph.num_vertices()];
        for e in 0..self.graph.num_edges() {
            for (v, oe) in [
                (self.graph.head_vertex(e), OrientedEdge::forward(e)),
                (self.graph.tail_vertex(e), OrientedEdge::backward(e)),
            ] {
                let c = self.along(oe);
                let s = &mut sums[v];
                s[0] = &s[0] + &c.h;
                s[1] = &s[1] + &c.alpha;
                s[2] = &s[2] + &c.beta;
            }
        }
        sums
    }

    pub fn max_vertex_sum(&self) -> f64 {
        self.vertex_sums()
            .iter()
            .flat_map(|s| s.iter().map(|x| x.max_abs()))
            .fold(0.0, f64::max)
    }

    /// Gauge transformation by one group element per vertex:
    /// `g_e ↦ r_{t(e)}⁻¹ g_e r_{h(e)}`.
    pub fn apply_gauge(&self, r: &[GroupCoords]) -> Result<Self> {
        if r.len() != self.graph.num_vertices() {
            return Err(Error::InvalidInput(format!(
                "{} gauge elements for {} vertices",
                r.len(),
                self.graph.num_vertices()
            )));
        }
        let mut coords = Vec::with_capacity(self.coords.len());
        for (e, g) in self.coords.iter().enumerate() {
            let left = r[self.graph.tail_vertex(e)].inverse();
            let right = &r[self.graph.head_vertex(e)];
            coords.push(left.try_product(g)?.try_product(right)?);
        }
        GraphConnection::new(self.graph.clone(), self.form.clone(), coords)
    }

    /// Rescale at vertex `v` by the one-parameter subgroup `kind`.
    pub fn vertex_rescale(&self, v: usize, kind: RescaleKind, param: &GrassmannElement) -> Result<Self> {
        if v >= self.graph.num_vertices() {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
        if param.num_generators() != self.n {
            return Err(Error::GeneratorMismatch(self.n, param.num_generators()));
        }
        let mut r = vec![GroupCoords::identity(self.n); self.graph.num_vertices()];
        r[v] = rescaling_element(&self.form, kind, param)?;
        self.apply_gauge(&r)
    }

    /// Ordered product of the edge matrices along `path`.
    pub fn holonomy(&self, path: &[OrientedEdge]) -> Result<SuperMatrix11> {
        let mut m = SuperMatrix11::identity(self.n);
        for (k, &oe) in path.iter().enumerate() {
            if oe.edge >= self.graph.num_edges() {
                return Err(Error::InvalidInput(format!("edge {} out of range", oe.edge)));
            }
            if k > 0 && self.graph.endpoints(path[k - 1]).1 != self.graph.endpoints(oe).0 {
                return Err(Error::NonContiguous(k));
            }
            m = &m * &self.along(oe).to_matrix();
        }
        Ok(m)
    }

    /// Solve for vertex rescalings making every vertex sum vanish. The odd
    /// sectors go first (lower rescalings for `α`, then upper ones for `β`;
    /// in SU form the second is implied by the first) and the even sector
    /// last, since diagonal rescalings leave `α`, `β` alone while the odd
    /// ones feed quadratic terms into `h`.
    pub fn gauge_normalize(&self, tol: f64) -> Result<Normalization> {
        if !self.graph.is_connected() {
            return Err(Error::InvalidFatGraph("gauge normalization needs a connected graph".into()));
        }
        let solver = MinNormSolver::new(self.graph.laplacian());
        let steps: &[(usize, RescaleKind)] = match self.form {
            RealForm::Sl => &[(1, RescaleKind::Lower), (2, RescaleKind::Upper), (0, RescaleKind::Diag)],
            RealForm::Su(_) => &[(1, RescaleKind::Lower), (0, RescaleKind::Diag)],
        };
        let mut conn = self.clone();
        for &(slot, kind) in steps {
            let rhs: Vec<GrassmannElement> = conn.vertex_sums().iter().map(|s| -&s[slot]).collect();
            let sol = solver.solve(&rhs, self.n);
            if sol.residual > tol {
                return Err(Error::SingularGauge { residual: sol.residual });
            }
            let r = sol
                .x
                .iter()
                .map(|p| rescaling_element(&self.form, kind, p))
                .collect::<Result<Vec<_>>>()?;
            conn = conn.apply_gauge(&r)?;
        }
        let residual = conn.max_vertex_sum();
        if residual > tol {
            return Err(Error::SingularGauge { residual });
        }
        let k = solver.nullity();
        let kernel = match self.form {
            RealForm::Sl => (k, 2 * k),
            RealForm::Su(_) => (k, k),
        };
        Ok(Normalization {
            connection: conn,
            kernel,
            residual,
        })
    }

    /// Holonomy around every boundary cycle compared with the identity.
    pub fn check_puncture_constraints(&self, tol: f64) -> PunctureReport {
        let mut report = Report::new();
        let mut residuals = Vec::new();
        let one = SuperMatrix11::identity(self.n);
        for (i, b) in self.graph.boundary_cycles().iter().enumerate() {
            let hol = self.holonomy(&b.edges).expect("boundary cycles are contiguous");
            let r = hol.distance(&one);
            report.record(&format!("puncture_{i}"), r, tol);
            residuals.push(r);
        }
        let (even, odd) = free_dims(&self.graph, &self.form);
        let (ce, co) = constrained_dims(&self.graph, &self.form);
        PunctureReport {
            report,
            residuals,
            even_constraints: even - ce,
            odd_constraints: odd - co,
        }
    }
}

fn odd_multiplier(form: &RealForm) -> usize {
    match form {
        RealForm::Sl => 2,
        RealForm::Su(_) => 1,
    }
}

/// Free coordinates left after imposing the vertex constraints: per sector
/// `E − rank C` with `C` the signed incidence matrix.
pub fn free_dims(graph: &FatGraph, form: &RealForm) -> (usize, usize) {
    let k = graph.num_edges() - linalg::rank(&graph.incidence_matrix());
    (k, odd_multiplier(form) * k)
}

/// Free coordinates left after imposing both the vertex constraints and
/// trivial boundary holonomy, to first order around the trivial connection.
pub fn constrained_dims(graph: &FatGraph, form: &RealForm) -> (usize, usize) {
    let c = graph.incidence_matrix();
    let b = graph.boundary_matrix();
    let mut stacked = DMatrix::zeros(c.nrows() + b.nrows(), graph.num_edges());
    stacked.rows_mut(0, c.nrows()).copy_from(&c);
    stacked.rows_mut(c.nrows(), b.nrows()).copy_from(&b);
    let k = graph.num_edges() - linalg::rank(&stacked);
    (k, odd_multiplier(form) * k)
}
