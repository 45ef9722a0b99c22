use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannElement, Parity};
use crate::report::Report;
use crate::supergroup::{higgs_transform, SuperMatrix11};

use super::cochain::{coboundary, solve_coboundary, Cochain};
use super::nerve::Nerve;
use super::transition::TransitionData;

/// Local Higgs fields `Φ_i = [[a_i + b_i/2, δ_i], [γ_i, a_i − b_i/2]]` on the
/// charts of a nerve.
#[derive(Debug, Clone, PartialEq)]
pub struct HiggsCechData {
    n: u32,
    entries: BTreeMap<usize, [GrassmannElement; 4]>,
}

impl HiggsCechData {
    pub fn new(n: u32) -> Self {
        HiggsCechData {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn num_generators(&self) -> u32 {
        self.n
    }

    pub fn set_vertex(
        &mut self,
        v: usize,
        a: GrassmannElement,
        b: GrassmannElement,
        delta: GrassmannElement,
        gamma: GrassmannElement,
    ) -> Result<()> {
        for x in [&a, &b, &delta, &gamma] {
            if x.num_generators() != self.n {
                return Err(Error::GeneratorMismatch(self.n, x.num_generators()));
            }
        }
        a.expect_parity(Parity::Even, "Higgs entry a")?;
        b.expect_parity(Parity::Even, "Higgs entry b")?;
        delta.expect_parity(Parity::Odd, "Higgs entry delta")?;
        gamma.expect_parity(Parity::Odd, "Higgs entry gamma")?;
        self.entries.insert(v, [a, b, delta, gamma]);
        Ok(())
    }

    /// Set chart `v` from a matrix, reading off `a`, `b`, `δ`, `γ`.
    pub fn set_matrix(&mut self, v: usize, phi: &SuperMatrix11) -> Result<()> {
        let a = (&phi.a + &phi.d).scale(0.5);
        let b = &phi.a - &phi.d;
        self.set_vertex(v, a, b, phi.beta.clone(), phi.gamma.clone())
    }

    fn get(&self, v: usize) -> Result<&[GrassmannElement; 4]> {
        self.entries
            .get(&v)
            .ok_or_else(|| Error::InvalidInput(format!("no Higgs data on chart {v}")))
    }

    pub fn a(&self, v: usize) -> Result<GrassmannElement> {
        Ok(self.get(v)?[0].clone())
    }

    pub fn b(&self, v: usize) -> Result<GrassmannElement> {
        Ok(self.get(v)?[1].clone())
    }

    pub fn delta(&self, v: usize) -> Result<GrassmannElement> {
        Ok(self.get(v)?[2].clone())
    }

    pub fn gamma(&self, v: usize) -> Result<GrassmannElement> {
        Ok(self.get(v)?[3].clone())
    }

    pub fn matrix(&self, v: usize) -> Result<SuperMatrix11> {
        let [a, b, d, g] = self.get(v)?;
        let hb = b.scale(0.5);
        Ok(SuperMatrix11 {
            a: a + &hb,
            beta: d.clone(),
            gamma: g.clone(),
            d: a - &hb,
        })
    }

    pub fn vertices(&self) -> impl Iterator<Item = &usize> {
        self.entries.keys()
    }

    /// Glue `phi` on the first chart to every other chart with
    /// `Φ_j = g̃_ij⁻¹ Φ_i g̃_ij` along a breadth-first spanning tree. For
    /// cocycle data the result satisfies the gluing law on every edge.
    pub fn glue_from(nerve: &Nerve, data: &TransitionData, phi: &SuperMatrix11) -> Result<Self> {
        let verts = nerve.vertices();
        let root = *verts
            .first()
            .ok_or_else(|| Error::InvalidNerve("nerve has no charts".into()))?;
        let mut out = HiggsCechData::new(data.num_generators());
        out.set_matrix(root, phi)?;
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for e in nerve.simplices(1) {
                let j = if e[0] == i {
                    e[1]
                } else if e[1] == i {
                    e[0]
                } else {
                    continue;
                };
                if seen.insert(j) {
                    let phi_j = higgs_transform(&out.matrix(i)?, &data.coords(i, j)?.to_matrix())?;
                    out.set_matrix(j, &phi_j)?;
                    queue.push_back(j);
                }
            }
        }
        if seen.len() != verts.len() {
            return Err(Error::InvalidNerve("nerve is not connected".into()));
        }
        Ok(out)
    }
}

/// Outcome of the sl(1|1) gluing obstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct SlObstruction {
    /// `t_ij = δ_i α_ij − β_ij γ_i`
    pub t: Cochain,
    /// Largest coefficient of `δt`; zero for admissible data.
    pub closed_residual: f64,
    /// Minimum-norm `η` with `t = δη`, absent when the class is nonzero.
    pub eta: Option<Cochain>,
    /// Residual of the least-squares solve for `η`.
    pub exact_residual: f64,
    /// Dimension of the space of `η` solving `t = δη`.
    pub solution_dim: usize,
}

impl SlObstruction {
    pub fn is_obstructed(&self) -> bool {
        self.eta.is_none()
    }
}

/// `t_ij = δ_i α_ij − β_ij γ_i` for the ordered pair `(i, j)`.
fn t_value(data: &TransitionData, higgs: &HiggsCechData, i: usize, j: usize) -> Result<GrassmannElement> {
    let c = data.coords(i, j)?;
    Ok(higgs.delta(i)? * &c.alpha - &c.beta * &higgs.gamma(i)?)
}

/// Build `t` and decide whether `[t] = 0`, which is the gluing condition
/// `[δ]·[α] = [β]·[γ]` for a traceless Higgs field. Requires `b ≡ 0`.
pub fn sl_higgs_obstruction(
    nerve: &Nerve,
    data: &TransitionData,
    higgs: &HiggsCechData,
    tol: f64,
) -> Result<SlObstruction> {
    for v in nerve.vertices() {
        let b = higgs.b(v)?;
        if b.max_abs() > tol {
            return Err(Error::InvalidInput(format!(
                "chart {v} has nonzero b; the sl obstruction needs a traceless Higgs field"
            )));
        }
    }
    let n = data.num_generators();
    let t = Cochain::from_fn(nerve, 1, n, |e| t_value(data, higgs, e[0], e[1]).unwrap_or_else(|_| GrassmannElement::zero(n)))?;
    // surface missing data as an error rather than a silent zero
    for e in nerve.simplices(1) {
        t_value(data, higgs, e[0], e[1])?;
    }
    let closed_residual = coboundary(nerve, &t)?.max_abs();
    let (eta, exact_residual, solution_dim) = match solve_coboundary(nerve, &t, tol) {
        Ok(sol) => (Some(sol.cochain), sol.residual, sol.solution_dim),
        Err(Error::Obstruction { residual }) => (None, residual, 0),
        Err(e) => return Err(e),
    };
    Ok(SlObstruction {
        t,
        closed_residual,
        eta,
        exact_residual,
        solution_dim,
    })
}

/// Outcome of the gl(1|1) gluing constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct GlHiggsOutcome {
    /// Named checks: `brel_alpha`, `brel_beta`, `b_invariant`, `c_cocycle`,
    /// `c_exact` and `c_matches_a`.
    pub report: Report,
    /// Minimum-norm 0-cochain `a` with `c_ij = a_i − a_j`, if one exists.
    pub potential: Option<Cochain>,
    /// Dimension of the space of such `a`.
    pub solution_dim: usize,
}

/// `c_ij = β_ij γ_i − δ_i α_ij − β_ij α_ij b_i` for the ordered pair `(i, j)`.
pub(crate) fn c_value(data: &TransitionData, higgs: &HiggsCechData, i: usize, j: usize) -> Result<GrassmannElement> {
    let g = data.coords(i, j)?;
    let (b, d, gm) = (higgs.b(i)?, higgs.delta(i)?, higgs.gamma(i)?);
    Ok(&g.beta * &gm - &d * &g.alpha - &g.beta * &g.alpha * &b)
}

/// Check the gl(1|1) gluing constraints on every edge and triangle:
///
/// * `α_ij b_i = γ_i − e^{−s_ij} γ_j` and `β_ij b_i = e^{s_ij} δ_j − δ_i`,
/// * `b_i = b_j`,
/// * `c_ij + c_jk + c_ki = 0`,
/// * `c_ij = a_i − a_j` for some 0-cochain `a`, and for the given `a_i`.
pub fn gl_higgs_constraints(
    nerve: &Nerve,
    data: &TransitionData,
    higgs: &HiggsCechData,
    tol: f64,
) -> Result<GlHiggsOutcome> {
    let n = data.num_generators();
    let mut report = Report::new();
    for e in nerve.simplices(1) {
        let (i, j) = (e[0], e[1]);
        let g = data.coords(i, j)?;
        let es = g.s.exp_even()?;
        let ems = (-&g.s).exp_even()?;
        let bi = higgs.b(i)?;
        let ra = &g.alpha * &bi - (higgs.gamma(i)? - &ems * &higgs.gamma(j)?);
        let rb = &g.beta * &bi - (&es * &higgs.delta(j)? - higgs.delta(i)?);
        report.record("brel_alpha", ra.max_abs(), tol);
        report.record("brel_beta", rb.max_abs(), tol);
        report.record("b_invariant", bi.distance(&higgs.b(j)?), tol);
        let c = c_value(data, higgs, i, j)?;
        report.record("c_matches_a", c.distance(&(higgs.a(i)? - higgs.a(j)?)), tol);
    }
    for t in nerve.simplices(2) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let sum = c_value(data, higgs, i, j)? + c_value(data, higgs, j, k)? + c_value(data, higgs, k, i)?;
        report.record("c_cocycle", sum.max_abs(), tol);
    }
    let c = Cochain::from_fn(nerve, 1, n, |e| c_value(data, higgs, e[0], e[1]).expect("checked above"))?;
    // c_ij = a_i − a_j is c = −δa
    let (potential, solution_dim) = match solve_coboundary(nerve, &c, tol) {
        Ok(sol) => {
            report.record("c_exact", sol.residual, tol);
            (Some(sol.cochain.scale(-1.0)), sol.solution_dim)
        }
        Err(Error::Obstruction { residual }) => {
            report.record("c_exact", residual, tol);
            (None, 0)
        }
        Err(e) => return Err(e),
    };
    Ok(GlHiggsOutcome {
        report,
        potential,
        solution_dim,
    })
}
