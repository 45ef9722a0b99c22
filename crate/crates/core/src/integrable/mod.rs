//! The parabolic Hitchin system on P¹: residue matrices, the classical
//! Garnier Hamiltonians with their super-Poisson bracket, and the gl(1|1)
//! Gaudin model acting on `ℂ[θ_1, …, θ_m]`.
//!
//! Site `i` (1-based) owns the odd generators `θ_i = 2i − 1` and
//! `η_i = 2i` of a Grassmann algebra with `2m` generators.

mod gaudin;
mod operator;

pub use gaudin::{
    gaudin_commutators, gaudin_generators, gaudin_hamiltonian, gl11_relations, number_operator, quantize,
    quantize_monomials,
    GaudinGenerators, MAX_DENSE_SITES,
};
pub use operator::{Factor, Operator, OperatorMatrix};

use alloc::format;
use alloc::vec::Vec;

use core::f64::consts::PI;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannElement, Parity};
use crate::sample;
use crate::supergroup::SuperMatrix11;

/// Relative separation below which two marked points count as equal.
pub const MIN_SEPARATION: f64 = 1e-8;

/// Marked points `z_i` with eigenvalue data `u_i = a_i + b_i`,
/// `v_i = a_i − b_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicData {
    z: Vec<Complex64>,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
}

fn too_close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < MIN_SEPARATION * 1f64.max(a.norm()).max(b.norm())
}

impl ParabolicData {
    pub fn new(z: Vec<Complex64>, u: Vec<Complex64>, v: Vec<Complex64>) -> Result<Self> {
        let m = z.len();
        if m == 0 || u.len() != m || v.len() != m {
            return Err(Error::InvalidInput(format!(
                "need matching non-empty site lists, got {} / {} / {}",
                m,
                u.len(),
                v.len()
            )));
        }
        if 2 * m > crate::grassmann::MAX_GENERATORS as usize {
            return Err(Error::TooManyGenerators(2 * m as u32));
        }
        for i in 0..m {
            for j in 0..i {
                if too_close(z[i], z[j]) {
                    return Err(Error::InvalidInput(format!("marked points z_{} and z_{} coincide", j + 1, i + 1)));
                }
            }
        }
        Ok(ParabolicData { z, u, v })
    }

    /// Random sites in the unit disc, pairwise at least 0.2 apart.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Self {
        let mut z: Vec<Complex64> = Vec::with_capacity(m);
        while z.len() < m {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if z.iter().all(|w| (w - c).norm() > 0.2) {
                z.push(c);
            }
        }
        let u = (0..m).map(|_| sample::coeff(rng)).collect();
        let v = (0..m).map(|_| sample::coeff(rng)).collect();
        ParabolicData { z, u, v }
    }

    pub fn num_sites(&self) -> usize {
        self.z.len()
    }

    /// Generators of the classical algebra, `2m`.
    pub fn num_generators(&self) -> u32 {
        2 * self.z.len() as u32
    }

    pub fn z(&self, i: usize) -> Complex64 {
        self.z[i - 1]
    }

    pub fn u(&self, i: usize) -> Complex64 {
        self.u[i - 1]
    }

    pub fn v(&self, i: usize) -> Complex64 {
        self.v[i - 1]
    }

    pub fn points(&self) -> &[Complex64] {
        &self.z
    }

    /// Copy with every `u_i` multiplied by `c`.
    pub fn with_scaled_u(&self, c: f64) -> Self {
        ParabolicData {
            z: self.z.clone(),
            u: self.u.iter().map(|u| u * c).collect(),
            v: self.v.clone(),
        }
    }

    pub(crate) fn check_site(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.num_sites() {
            return Err(Error::SiteOutOfRange {
                index: i,
                sites: self.num_sites(),
            });
        }
        Ok(())
    }

    /// `(a_i, b_i)`.
    pub fn eigenvalues(&self, i: usize) -> (Complex64, Complex64) {
        let (u, v) = (self.u(i), self.v(i));
        ((u + v) * 0.5, (u - v) * 0.5)
    }

    pub fn theta(&self, i: usize) -> GrassmannElement {
        GrassmannElement::generator(self.num_generators(), 2 * i - 1).expect("site in range")
    }

    pub fn eta(&self, i: usize) -> GrassmannElement {
        GrassmannElement::generator(self.num_generators(), 2 * i).expect("site in range")
    }
}

/// `A_i = [[a − θη, θ], [(a − b)η, b − θη]]`.
pub fn residue_matrix(p: &ParabolicData, i: usize) -> Result<SuperMatrix11> {
    p.check_site(i)?;
    let n = p.num_generators();
    let (a, b) = p.eigenvalues(i);
    let (th, et) = (p.theta(i), p.eta(i));
    let te = &th * &et;
    SuperMatrix11::new(
        &GrassmannElement::scalar(n, a) - &te,
        th,
        et.scale(a - b),
        &GrassmannElement::scalar(n, b) - &te,
    )
}

/// Coefficient of `dz` in `Φ(z) = Σ A_i / (z − z_i)`.
pub fn higgs_value(p: &ParabolicData, z: Complex64) -> Result<SuperMatrix11> {
    let mut out = SuperMatrix11::zero(p.num_generators());
    for i in 1..=p.num_sites() {
        if too_close(z, p.z(i)) {
            return Err(Error::Pole(i));
        }
        out = &out + &residue_matrix(p, i)?.scale((z - p.z(i)).inv());
    }
    Ok(out)
}

/// `(1/2πi) ∮ f(z) dz` around `z_i` by the trapezoidal rule on a circle
/// of half the distance to the nearest other pole.
fn contour_residue<T>(
    p: &ParabolicData,
    i: usize,
    samples: usize,
    mut f: impl FnMut(Complex64) -> Result<T>,
    add: impl Fn(T, T) -> T,
    scale: impl Fn(&T, Complex64) -> T,
) -> Result<T> {
    let c = p.z(i);
    let r = (1..=p.num_sites())
        .filter(|&j| j != i)
        .map(|j| (p.z(j) - c).norm())
        .fold(1.0f64, f64::min)
        * 0.5;
    let mut acc: Option<T> = None;
    for k in 0..samples {
        let w = Complex64::from_polar(r, 2.0 * PI * k as f64 / samples as f64);
        let term = scale(&f(c + w)?, w / samples as f64);
        acc = Some(match acc {
            None => term,
            Some(a) => add(a, term),
        });
    }
    acc.ok_or_else(|| Error::InvalidInput("contour needs at least one sample".into()))
}

/// `Res_{z_i} Φ` recovered numerically from samples of `Φ` on a circle.
pub fn residue_by_contour(p: &ParabolicData, i: usize, samples: usize) -> Result<SuperMatrix11> {
    p.check_site(i)?;
    contour_residue(p, i, samples, |z| higgs_value(p, z), |a, b| &a + &b, |x, c| x.scale(c))
}

fn need_two_sites(p: &ParabolicData) -> Result<()> {
    if p.num_sites() < 2 {
        return Err(Error::InvalidInput("Garnier Hamiltonians need at least two sites".into()));
    }
    Ok(())
}

/// `H_i = Σ_{j≠i} str(A_i A_j) / (z_i − z_j)`.
pub fn garnier_hamiltonian(p: &ParabolicData, i: usize) -> Result<GrassmannElement> {
    need_two_sites(p)?;
    p.check_site(i)?;
    let ai = residue_matrix(p, i)?;
    let mut h = GrassmannElement::zero(p.num_generators());
    for j in (1..=p.num_sites()).filter(|&j| j != i) {
        let s = (&ai * &residue_matrix(p, j)?).str();
        h = &h + &s.scale((p.z(i) - p.z(j)).inv());
    }
    Ok(h)
}

/// The same Hamiltonian from the expanded summand
/// `½(u_i − 2θ_iη_i)v_j + ½v_i(u_j − 2θ_jη_j) + θ_i v_j η_j − v_i η_i θ_j`.
pub fn garnier_hamiltonian_expanded(p: &ParabolicData, i: usize) -> Result<GrassmannElement> {
    need_two_sites(p)?;
    p.check_site(i)?;
    let n = p.num_generators();
    let c = |x: Complex64| GrassmannElement::scalar(n, x);
    let (ti, ei) = (p.theta(i), p.eta(i));
    let two_te_i = (&ti * &ei).scale(2.0);
    let mut h = GrassmannElement::zero(n);
    for j in (1..=p.num_sites()).filter(|&j| j != i) {
        let (tj, ej) = (p.theta(j), p.eta(j));
        let two_te_j = (&tj * &ej).scale(2.0);
        let summand = (&c(p.u(i)) - &two_te_i).scale(p.v(j) * 0.5)
            + (&c(p.u(j)) - &two_te_j).scale(p.v(i) * 0.5)
            + (&ti * &ej).scale(p.v(j))
            - (&ei * &tj).scale(p.v(i));
        h = &h + &summand.scale((p.z(i) - p.z(j)).inv());
    }
    Ok(h)
}

/// The same Hamiltonian as `½ Res_{z_i} str(Φ²)`, by contour sampling.
pub fn garnier_hamiltonian_residue(p: &ParabolicData, i: usize, samples: usize) -> Result<GrassmannElement> {
    need_two_sites(p)?;
    p.check_site(i)?;
    let half = contour_residue(
        p,
        i,
        samples,
        |z| {
            let phi = higgs_value(p, z)?;
            Ok((&phi * &phi).str())
        },
        |a, b| &a + &b,
        |x, c| x.scale(c),
    )?;
    Ok(half.scale(0.5))
}

/// Relative sign of the `∂_η F ∂_θ G` term in [`poisson_bracket`].
pub const POISSON_SIGN: f64 = 1.0;

/// `{F, G} = Σ_i (∂_{θ_i}F ∂_{η_i}G + ∂_{η_i}F ∂_{θ_i}G)` with left
/// derivatives, on the algebra whose generators pair up as `(θ_i, η_i)`.
pub fn poisson_bracket(f: &GrassmannElement, g: &GrassmannElement) -> Result<GrassmannElement> {
    let n = f.num_generators();
    if g.num_generators() != n {
        return Err(Error::GeneratorMismatch(n, g.num_generators()));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("{n} generators do not pair into (θ, η)")));
    }
    for (x, what) in [(f, "bracket argument F"), (g, "bracket argument G")] {
        if x.parity() == Parity::Mixed {
            return Err(Error::Parity {
                what,
                expected: Parity::Even,
                found: Parity::Mixed,
            });
        }
    }
    let mut out = GrassmannElement::zero(n);
    for i in 1..=(n as usize / 2) {
        let (t, e) = (2 * i - 1, 2 * i);
        let first = &f.left_derivative(t)? * &g.left_derivative(e)?;
        let second = &f.left_derivative(e)? * &g.left_derivative(t)?;
        out = &out + &first + &second.scale(POISSON_SIGN);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
