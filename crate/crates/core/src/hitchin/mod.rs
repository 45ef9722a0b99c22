//! Hermitian metrics, Chern connections and the Hitchin equations on a
//! single chart, in an exact polynomial model.
//!
//! A metric is `H = g(u, ρ, ρ̄) = e^u K` with
//! `K = [[1 − ρρ̄/2, ρ̄], [ρ, 1 + ρρ̄/2]]`. The factor `e^u` is central, so it
//! never has to be expanded: `H⁻¹∂H = ∂u + K⁻¹∂K` and `H⁻¹Φ†H = K⁻¹Φ†K`.
//! Everything else is polynomial in `z`, `z̄` and the residual checks are
//! exact up to floating-point rounding.

mod poly;

pub use poly::{LocalFunction, LocalMatrix, DEFAULT_MAX_DEGREE};

use alloc::format;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{ConjugationTable, GrassmannElement, Parity};
use crate::supergroup::{GroupCoords, SuperMatrix11};

/// The data `(u, ρ)` of a metric `H = g(u, ρ, ρ̄)` with the conjugation used
/// to form `ρ̄`.
#[derive(Clone, PartialEq, Debug)]
pub struct MetricData {
    pub u: LocalFunction,
    pub rho: LocalFunction,
    pub table: ConjugationTable,
}

impl MetricData {
    pub fn new(u: LocalFunction, rho: LocalFunction, table: ConjugationTable) -> Result<Self> {
        let n = u.num_generators();
        if rho.num_generators() != n {
            return Err(Error::GeneratorMismatch(n, rho.num_generators()));
        }
        if table.num_generators() != n {
            return Err(Error::GeneratorMismatch(n, table.num_generators()));
        }
        check_parity(&u, Parity::Even, "metric u")?;
        check_parity(&rho, Parity::Odd, "metric rho")?;
        Ok(MetricData { u, rho, table })
    }

    pub fn num_generators(&self) -> u32 {
        self.u.num_generators()
    }

    pub fn rho_bar(&self) -> Result<LocalFunction> {
        self.rho.conjugate_fn(&self.table)
    }

    /// `K = g(0, ρ, ρ̄)`.
    pub fn k_matrix(&self) -> Result<LocalMatrix> {
        k_of(&self.rho, &self.rho_bar()?)
    }

    /// `H` evaluated at a point.
    pub fn eval(&self, z: Complex64) -> Result<SuperMatrix11> {
        let rho = self.rho.eval(z);
        let rho_bar = self.rho_bar()?.eval(z);
        Ok(GroupCoords::sl(self.u.eval(z), rho, rho_bar)?.to_matrix())
    }
}

fn check_parity(f: &LocalFunction, want: Parity, what: &'static str) -> Result<()> {
    if f.parity() == want || f.is_zero() {
        Ok(())
    } else {
        Err(Error::Parity {
            what,
            expected: want,
            found: f.parity(),
        })
    }
}

fn k_of(rho: &LocalFunction, rho_bar: &LocalFunction) -> Result<LocalMatrix> {
    let n = rho.num_generators();
    let one = LocalFunction::constant(GrassmannElement::one(n))?.with_max_degree(rho.max_degree())?;
    let half = rho.try_mul(rho_bar)?.scale(0.5);
    LocalMatrix::new(one.try_sub(&half)?, rho_bar.clone(), rho.clone(), one.try_add(&half)?)
}

fn scalar_matrix(f: &LocalFunction) -> LocalMatrix {
    let n = f.num_generators();
    LocalMatrix {
        a: f.clone(),
        beta: LocalFunction::zero(n, Parity::Odd),
        gamma: LocalFunction::zero(n, Parity::Odd),
        d: f.clone(),
    }
}

/// `H⁻¹∂H` from the closed form: diagonal `∂u − ½ρ̄∂ρ − ½ρ∂ρ̄`, upper
/// `∂ρ̄`, lower `∂ρ`.
pub fn chern_form(m: &MetricData) -> Result<LocalMatrix> {
    let rb = m.rho_bar()?;
    let (dr, drb) = (m.rho.d_z(), rb.d_z());
    let diag = m
        .u
        .d_z()
        .try_sub(&rb.try_mul(&dr)?.scale(0.5))?
        .try_sub(&m.rho.try_mul(&drb)?.scale(0.5))?;
    LocalMatrix::new(diag.clone(), drb, dr, diag)
}

/// `H⁻¹∂H = ∂u + K⁻¹∂K` with `K⁻¹` obtained by inverting `K` as a matrix.
pub fn chern_form_by_inversion(m: &MetricData) -> Result<LocalMatrix> {
    let k = m.k_matrix()?;
    let ki = k.try_inverse()?;
    scalar_matrix(&m.u.d_z()).try_add(&ki.try_mul(&k.d_z())?)
}

/// `F = ∂̄(H⁻¹∂H)`.
pub fn curvature(m: &MetricData) -> Result<LocalMatrix> {
    Ok(chern_form(m)?.d_zbar())
}

/// `[[a, δ], [γ, a]]`.
pub fn higgs_field(a: LocalFunction, delta: LocalFunction, gamma: LocalFunction) -> Result<LocalMatrix> {
    LocalMatrix::new(a.clone(), delta, gamma, a)
}

/// `Φ†_H = H⁻¹Φ†H = K⁻¹Φ†K`.
pub fn adjoint_h(m: &MetricData, phi: &LocalMatrix) -> Result<LocalMatrix> {
    let k = m.k_matrix()?;
    // K⁻¹ = g(0, −ρ, −ρ̄)
    let ki = k_of(&m.rho.scale(-1.0), &m.rho_bar()?.scale(-1.0))?;
    ki.try_mul(&phi.dagger(&m.table)?)?.try_mul(&k)
}

/// `F − [Φ, Φ†_H]` for a traceless Higgs field `Φ = [[a, δ], [γ, a]]`.
pub fn hitchin_residual(m: &MetricData, phi: &LocalMatrix) -> Result<LocalMatrix> {
    if phi.a != phi.d {
        return Err(Error::InvalidInput("Higgs field must have zero supertrace (equal diagonal entries)".into()));
    }
    let f = curvature(m)?;
    let comm = phi.commutator(&adjoint_h(m, phi)?)?;
    f.try_sub(&comm)
}

fn require(f: &LocalFunction, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} (got {f})")))
    }
}

/// Flat metric `ρ = ρ_h + ρ_a`, `u = v_h + v_a + ½ρ̄_hρ_h + ½ρ_aρ̄_a` from
/// holomorphic `ρ_h`, `v_h` and antiholomorphic `ρ_a`, `v_a`.
pub fn flat_solution(
    rho_h: &LocalFunction,
    rho_a: &LocalFunction,
    v_h: &LocalFunction,
    v_a: &LocalFunction,
    table: &ConjugationTable,
) -> Result<MetricData> {
    require(rho_h, rho_h.is_holomorphic(), "rho_h must be holomorphic")?;
    require(v_h, v_h.is_holomorphic(), "v_h must be holomorphic")?;
    require(rho_a, rho_a.is_antiholomorphic(), "rho_a must be antiholomorphic")?;
    require(v_a, v_a.is_antiholomorphic(), "v_a must be antiholomorphic")?;
    for (f, want, what) in [
        (rho_h, Parity::Odd, "rho_h"),
        (rho_a, Parity::Odd, "rho_a"),
        (v_h, Parity::Even, "v_h"),
        (v_a, Parity::Even, "v_a"),
    ] {
        check_parity(f, want, what)?;
    }
    let rho = rho_h.try_add(rho_a)?;
    let quad_h = rho_h.conjugate_fn(table)?.try_mul(rho_h)?;
    let quad_a = rho_a.try_mul(&rho_a.conjugate_fn(table)?)?;
    let u = v_h
        .try_add(v_a)?
        .try_add(&quad_h.scale(0.5))?
        .try_add(&quad_a.scale(0.5))?;
    MetricData::new(u, rho, table.clone())
}

/// Solution of the Hitchin equations for `Φ = [[a, δ], [γ, a]]` with
/// holomorphic odd `δ`, `γ`: the flat solution with `ηη̄ + φφ̄` added to `u`,
/// where `η = ∫δ dz` and `φ = ∫γ dz`.
pub fn hitchin_solution(
    rho_h: &LocalFunction,
    rho_a: &LocalFunction,
    v_h: &LocalFunction,
    v_a: &LocalFunction,
    delta: &LocalFunction,
    gamma: &LocalFunction,
    table: &ConjugationTable,
) -> Result<MetricData> {
    for (f, what) in [(delta, "delta"), (gamma, "gamma")] {
        check_parity(f, Parity::Odd, what)?;
        require(f, f.is_holomorphic(), "delta and gamma must be holomorphic")?;
    }
    let mut m = flat_solution(rho_h, rho_a, v_h, v_a, table)?;
    let eta = delta.antiderivative_z()?;
    let phi = gamma.antiderivative_z()?;
    let extra = eta
        .try_mul(&eta.conjugate_fn(table)?)?
        .try_add(&phi.try_mul(&phi.conjugate_fn(table)?)?)?;
    m.u = m.u.try_add(&extra)?;
    Ok(m)
}

/// Coordinates of `g(h̄, β̄, ᾱ) · g(u, ρ, ρ̄) · g(h, α, β)` by the closed law
/// `(u + h + h̄ − ½(αᾱ + ββ̄ + ρ(ᾱ − β) + (α − β̄)ρ̄), ρ + α + β̄, ρ̄ + β + ᾱ)`.
///
/// Inputs are values at a point; `g` must be in SL(1|1).
pub fn metric_gauge_law(
    u: &GrassmannElement,
    rho: &GrassmannElement,
    g: &GroupCoords,
    table: &ConjugationTable,
) -> Result<GroupCoords> {
    if !g.is_sl() {
        return Err(Error::InvalidInput("gauge transformation must have s = 0".into()));
    }
    let c = |x: &GrassmannElement| x.conjugate(table);
    let (hb, ab, bb, rb) = (c(&g.h)?, c(&g.alpha)?, c(&g.beta)?, c(rho)?);
    let quad = &g.alpha * &ab + &g.beta * &bb + rho * &(&ab - &g.beta) + (&g.alpha - &bb) * &rb;
    let new_u = u + &g.h + &hb - quad.scale(0.5);
    let new_rho = rho + &g.alpha + &bb;
    let new_rho_bar = &rb + &g.beta + &ab;
    GroupCoords::sl(new_u, new_rho, new_rho_bar)
}

/// `g(h̄, β̄, ᾱ)`, the conjugate transpose of `g(h, α, β)`.
pub fn dagger_coords(g: &GroupCoords, table: &ConjugationTable) -> Result<GroupCoords> {
    GroupCoords::sl(g.h.conjugate(table)?, g.beta.conjugate(table)?, g.alpha.conjugate(table)?)
}
