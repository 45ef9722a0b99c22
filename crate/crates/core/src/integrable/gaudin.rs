use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::operator::{Factor, Operator, OperatorMatrix};
use super::{garnier_hamiltonian, need_two_sites, ParabolicData};
use crate::error::{Error, Result};
use crate::grassmann::{monomial_indices, GrassmannElement};
use crate::report::Report;

/// Largest number of sites materialized as dense `2^m × 2^m` matrices.
pub const MAX_DENSE_SITES: usize = 10;

/// The gl(1|1) generators at one site acting on `ℂ[θ_1, …, θ_m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaudinGenerators {
    /// `½u_i − θ_i∂_i`
    pub n: Operator,
    /// `v_i`
    pub e: Operator,
    /// `v_i ∂_i`
    pub psi_plus: Operator,
    /// `θ_i`
    pub psi_minus: Operator,
}

pub fn gaudin_generators(p: &ParabolicData, i: usize) -> Result<GaudinGenerators> {
    p.check_site(i)?;
    let m = p.num_sites();
    let theta_d = Operator::word(m, 1.0, alloc::vec![Factor::Theta(i), Factor::Deriv(i)])?;
    Ok(GaudinGenerators {
        n: Operator::scalar(m, p.u(i) * 0.5).try_sub(&theta_d)?,
        e: Operator::scalar(m, p.v(i)),
        psi_plus: Operator::deriv(m, i)?.scale(p.v(i)),
        psi_minus: Operator::theta(m, i)?,
    })
}

/// `H_i = ħ Σ_{j≠i} (E_iN_j + N_iE_j + Ψ⁻_iΨ⁺_j − Ψ⁺_iΨ⁻_j) / (z_i − z_j)`.
pub fn gaudin_hamiltonian(p: &ParabolicData, i: usize, hbar: f64) -> Result<Operator> {
    need_two_sites(p)?;
    p.check_site(i)?;
    let gi = gaudin_generators(p, i)?;
    let mut h = Operator::zero(p.num_sites());
    for j in (1..=p.num_sites()).filter(|&j| j != i) {
        let gj = gaudin_generators(p, j)?;
        let summand = gi
            .e
            .try_mul(&gj.n)?
            .try_add(&gi.n.try_mul(&gj.e)?)?
            .try_add(&gi.psi_minus.try_mul(&gj.psi_plus)?)?
            .try_sub(&gi.psi_plus.try_mul(&gj.psi_minus)?)?;
        h = h.try_add(&summand.scale((p.z(i) - p.z(j)).inv() * hbar))?;
    }
    Ok(h)
}

/// Total fermion number `Σ_j θ_j ∂_j`.
pub fn number_operator(m: usize) -> Operator {
    (1..=m).fold(Operator::zero(m), |acc, j| {
        let w = Operator::word(m, 1.0, alloc::vec![Factor::Theta(j), Factor::Deriv(j)]).expect("site in range");
        acc.try_add(&w).expect("same size")
    })
}

fn dense(p: &ParabolicData) -> Result<()> {
    if p.num_sites() > MAX_DENSE_SITES {
        return Err(Error::InvalidInput(format!(
            "{} sites exceed the dense limit {MAX_DENSE_SITES}",
            p.num_sites()
        )));
    }
    Ok(())
}

/// The gl(1|1) relations at every site and supercommutation across sites,
/// as matrix identities.
pub fn gl11_relations(p: &ParabolicData, tol: f64) -> Result<Report> {
    dense(p)?;
    let mats = (1..=p.num_sites())
        .map(|i| {
            let g = gaudin_generators(p, i)?;
            Ok([g.n.to_matrix()?, g.e.to_matrix()?, g.psi_plus.to_matrix()?, g.psi_minus.to_matrix()?])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = Report::new();
    for [n, e, pp, pm] in &mats {
        rep.record("n_psi_plus", n.supercommutator(pp)?.distance(pp), tol);
        rep.record("n_psi_minus", n.supercommutator(pm)?.distance(&pm.scale(-1.0)), tol);
        rep.record("psi_plus_psi_minus", pp.supercommutator(pm)?.distance(e), tol);
        let central = [n, pp, pm]
            .iter()
            .map(|x| e.supercommutator(x).map(|c| c.norm()))
            .collect::<Result<Vec<_>>>()?;
        rep.record("e_central", central.into_iter().fold(0.0, f64::max), tol);
        rep.record("parity", if pp.parity_consistent() && pm.parity_consistent() && n.parity_consistent() { 0.0 } else { 1.0 }, tol);
    }
    let mut cross = 0.0f64;
    for (i, a) in mats.iter().enumerate() {
        for b in mats.iter().skip(i + 1) {
            for x in a {
                for y in b {
                    cross = cross.max(x.supercommutator(y)?.norm());
                }
            }
        }
    }
    rep.record("distinct_sites", cross, tol);
    Ok(rep)
}

// deterministic probe vectors for the matrix-free check
fn probe(dim: usize, seed: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|k| {
            let x = (k * 7 + seed * 13 + 1) as f64;
            Complex64::new(Float::sin(x * 0.754_877_666), Float::cos(x * 0.569_840_290))
        })
        .collect()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    Float::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>())
}

/// Relative commutator `‖[H_i, H_j]‖ / (‖H_i‖ ‖H_j‖)` for every pair
/// `i < j`. Dense up to [`MAX_DENSE_SITES`]; beyond that the commutator is
/// applied to fixed probe vectors and compared with `‖H_iH_jv‖ + ‖H_jH_iv‖`.
pub fn gaudin_commutators(p: &ParabolicData, hbar: f64) -> Result<Vec<((usize, usize), f64)>> {
    need_two_sites(p)?;
    let m = p.num_sites();
    let hs = (1..=m).map(|i| gaudin_hamiltonian(p, i, hbar)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    if m <= MAX_DENSE_SITES {
        let mats = hs.iter().map(Operator::to_matrix).collect::<Result<Vec<OperatorMatrix>>>()?;
        for i in 0..m {
            for j in i + 1..m {
                let c = mats[i].supercommutator(&mats[j])?.norm();
                let scale = mats[i].norm() * mats[j].norm();
                out.push(((i + 1, j + 1), if scale > 0.0 { c / scale } else { c }));
            }
        }
    } else {
        let vs: Vec<_> = (0..3).map(|s| probe(1 << m, s)).collect();
        for i in 0..m {
            for j in i + 1..m {
                let mut worst = 0.0f64;
                for v in &vs {
                    let ab = hs[i].apply(&hs[j].apply(v)?)?;
                    let ba = hs[j].apply(&hs[i].apply(v)?)?;
                    let diff: Vec<_> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
                    let scale = vec_norm(&ab) + vec_norm(&ba);
                    let r = vec_norm(&diff);
                    worst = worst.max(if scale > 0.0 { r / scale } else { r });
                }
                out.push(((i + 1, j + 1), worst));
            }
        }
    }
    Ok(out)
}

/// Quantize a Garnier Hamiltonian of `p`: `u_i → ħu_i`, `η_i → ħ∂_i`,
/// `θ_i` acting by multiplication, with each monomial read in generator
/// order so `θ_i` always stands left of `∂_i`.
pub fn quantize(p: &ParabolicData, h: &GrassmannElement, hbar: f64, tol: f64) -> Result<Operator> {
    need_two_sites(p)?;
    if h.num_generators() != p.num_generators() {
        return Err(Error::GeneratorMismatch(p.num_generators(), h.num_generators()));
    }
    let scale = 1f64.max(h.max_abs());
    let mut site = None;
    for i in 1..=p.num_sites() {
        if garnier_hamiltonian(p, i)?.distance(h) <= tol * scale {
            site = Some(i);
            break;
        }
    }
    let i = site.ok_or_else(|| {
        Error::InvalidInput("observable is not a Garnier Hamiltonian of these parameters".into())
    })?;
    quantize_monomials(p.num_sites(), &garnier_hamiltonian(&p.with_scaled_u(hbar), i)?, hbar)
}

/// Term-by-term substitution `θ_i → θ_i`, `η_i → ħ∂_i` on an element of the
/// `2m`-generator algebra, each monomial read in generator order.
pub fn quantize_monomials(m: usize, h: &GrassmannElement, hbar: f64) -> Result<Operator> {
    if h.num_generators() as usize != 2 * m {
        return Err(Error::GeneratorMismatch(2 * m as u32, h.num_generators()));
    }
    let mut op = Operator::zero(m);
    for (mono, c) in h.terms() {
        let mut coeff = c;
        let factors = monomial_indices(mono)
            .into_iter()
            .map(|g| {
                if g % 2 == 1 {
                    Factor::Theta(g.div_ceil(2))
                } else {
                    coeff *= hbar;
                    Factor::Deriv(g / 2)
                }
            })
            .collect::<Vec<_>>();
        op = op.try_add(&Operator::word(m, coeff, factors)?)?;
    }
    Ok(op)
}
