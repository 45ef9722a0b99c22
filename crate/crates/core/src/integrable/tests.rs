use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::grassmann::GrassmannElement;
use crate::sample;
use crate::supergroup::SuperMatrix11;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn body_matrix(m: &SuperMatrix11) -> [Complex64; 4] {
    [m.a.body(), m.beta.body(), m.gamma.body(), m.d.body()]
}

#[test]
fn residue_matrix_is_a_conjugated_flag() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = ParabolicData::random(&mut rng, 3);
    let n = p.num_generators();
    for i in 1..=3 {
        let a = residue_matrix(&p, i).unwrap();
        let (ai, bi) = p.eigenvalues(i);
        let z = c(0.0, 0.0);
        assert_eq!(body_matrix(&a), [ai, z, z, bi]);
        let zero = GrassmannElement::zero(n);
        let one = GrassmannElement::one(n);
        let flag = SuperMatrix11::new(GrassmannElement::scalar(n, ai), p.theta(i), zero.clone(), GrassmannElement::scalar(n, bi)).unwrap();
        let g = SuperMatrix11::new(one.clone(), zero.clone(), p.eta(i), one).unwrap();
        let conj = &(&g * &flag) * &g.inverse().unwrap();
        assert!(conj.approx_eq(&a, 1e-12));
        assert!(a.str().approx_eq(&GrassmannElement::scalar(n, p.v(i)), 1e-12));
    }
    assert_eq!(residue_matrix(&p, 4), Err(Error::SiteOutOfRange { index: 4, sites: 3 }));
}

#[test]
fn higgs_field_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p1 = ParabolicData::random(&mut rng, 1);
    let v = higgs_value(&p1, p1.z(1) + 1.0).unwrap();
    assert!(v.approx_eq(&residue_matrix(&p1, 1).unwrap(), 1e-12));

    let p = ParabolicData::random(&mut rng, 4);
    assert_eq!(higgs_value(&p, p.z(3)), Err(Error::Pole(3)));
    for i in 1..=4 {
        let r = residue_by_contour(&p, i, 64).unwrap();
        assert!(r.approx_eq(&residue_matrix(&p, i).unwrap(), 1e-10));
    }
    // z Φ(z) → Σ A_i at large |z|
    let total = (1..=4).fold(SuperMatrix11::zero(p.num_generators()), |acc, i| &acc + &residue_matrix(&p, i).unwrap());
    let big = c(1e7, 3e6);
    let lead = higgs_value(&p, big).unwrap().scale(big);
    assert!(lead.distance(&total) < 1e-5);
}

#[test]
fn distinct_points_are_enforced() {
    let z = vec![c(0.0, 0.0), c(1e-10, 0.0)];
    let u = vec![c(1.0, 0.0); 2];
    assert!(ParabolicData::new(z, u.clone(), u.clone()).is_err());
    assert!(ParabolicData::new(vec![c(0.0, 0.0), c(1.0, 0.0)], u.clone(), u).is_ok());
}

#[test]
fn garnier_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 2..=4 {
        let p = ParabolicData::random(&mut rng, m);
        for i in 1..=m {
            let h = garnier_hamiltonian(&p, i).unwrap();
            assert!(h.is_even());
            assert!(h.approx_eq(&garnier_hamiltonian_expanded(&p, i).unwrap(), 1e-12));
            assert!(h.approx_eq(&garnier_hamiltonian_residue(&p, i, 64).unwrap(), 1e-9));
            let bos: Complex64 = (1..=m)
                .filter(|&j| j != i)
                .map(|j| (p.u(i) * p.v(j) + p.v(i) * p.u(j)) * 0.5 / (p.z(i) - p.z(j)))
                .sum();
            assert!((h.body() - bos).norm() < 1e-12);
        }
    }
    let p = ParabolicData::random(&mut rng, 2);
    let sum = &garnier_hamiltonian(&p, 1).unwrap() + &garnier_hamiltonian(&p, 2).unwrap();
    assert!(sum.max_abs() < 1e-12);
    assert!(garnier_hamiltonian(&ParabolicData::random(&mut rng, 1), 1).is_err());
}

#[test]
fn poisson_bracket_basics() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let p = ParabolicData::random(&mut rng, 3);
    let n = p.num_generators();
    let te = |i| &p.theta(i) * &p.eta(i);
    assert!(poisson_bracket(&te(1), &te(2)).unwrap().is_zero());
    // {θ, η} = 1
    let one = poisson_bracket(&p.theta(2), &p.eta(2)).unwrap();
    assert!(one.approx_eq(&GrassmannElement::one(n), 1e-15));
    for _ in 0..10 {
        let f = sample::random_even(&mut rng, n, 4);
        let g = sample::random_even(&mut rng, n, 4);
        let k = sample::random_even(&mut rng, n, 4);
        let fg = poisson_bracket(&f, &g).unwrap();
        assert!(fg.approx_eq(&-poisson_bracket(&g, &f).unwrap(), 1e-12));
        let lhs = poisson_bracket(&f, &(&g * &k)).unwrap();
        let rhs = &fg * &k + &g * &poisson_bracket(&f, &k).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-10));
    }
    let mixed = &p.theta(1) + &GrassmannElement::one(n);
    assert!(poisson_bracket(&mixed, &te(1)).is_err());
}

#[test]
fn garnier_hamiltonians_poisson_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 2..=4 {
        for _ in 0..5 {
            let p = ParabolicData::random(&mut rng, m);
            let hs: Vec<_> = (1..=m).map(|i| garnier_hamiltonian(&p, i).unwrap()).collect();
            for i in 0..m {
                for j in 0..m {
                    assert!(poisson_bracket(&hs[i], &hs[j]).unwrap().max_abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn single_site_generators() {
    let p = ParabolicData::new(vec![c(0.0, 0.0)], vec![c(0.7, 0.1)], vec![c(1.3, -0.4)]).unwrap();
    let g = gaudin_generators(&p, 1).unwrap();
    let pm = g.psi_minus.to_matrix().unwrap();
    let pp = g.psi_plus.to_matrix().unwrap();
    assert_eq!(pm.get(1, 0), c(1.0, 0.0));
    assert_eq!(pm.get(0, 1), c(0.0, 0.0));
    assert_eq!(pp.get(0, 1), p.v(1));
    assert_eq!(pp.get(1, 0), c(0.0, 0.0));
    let anti = pp.try_mul(&pm).unwrap().try_add(&pm.try_mul(&pp).unwrap()).unwrap();
    assert!(anti.distance(&g.e.to_matrix().unwrap()) < 1e-15);
    let n = g.n.to_matrix().unwrap();
    assert!(n.supercommutator(&pp).unwrap().distance(&pp) < 1e-15);
}

#[test]
fn gl11_relations_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let p = ParabolicData::random(&mut rng, 4);
    let rep = gl11_relations(&p, 1e-12).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures());
    let a = gaudin_generators(&p, 1).unwrap().psi_minus.to_matrix().unwrap();
    let b = gaudin_generators(&p, 3).unwrap().psi_minus.to_matrix().unwrap();
    assert!(a.try_mul(&b).unwrap().try_add(&b.try_mul(&a).unwrap()).unwrap().norm() < 1e-15);
}

#[test]
fn gaudin_hamiltonians_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in [2, 3, 4] {
        let p = ParabolicData::random(&mut rng, m);
        for ((i, j), r) in gaudin_commutators(&p, 1.0).unwrap() {
            assert!(r < 1e-12, "[H_{i}, H_{j}] = {r}");
        }
        let hs: Vec<_> = (1..=m).map(|i| gaudin_hamiltonian(&p, i, 1.0).unwrap().to_matrix().unwrap()).collect();
        let total = hs.iter().skip(1).fold(hs[0].clone(), |a, b| a.try_add(b).unwrap());
        assert!(total.norm() < 1e-12);
        let nt = number_operator(m).to_matrix().unwrap();
        for h in &hs {
            assert!(h.supercommutator(&nt).unwrap().norm() < 1e-12);
            assert!(h.parity_consistent());
        }
    }
}

#[test]
fn vacuum_eigenvalue() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = ParabolicData::random(&mut rng, 2);
    let hbar = 0.37;
    let h1 = gaudin_hamiltonian(&p, 1, hbar).unwrap().to_matrix().unwrap();
    let expect = (p.v(1) * p.u(2) + p.u(1) * p.v(2)) * 0.5 * hbar / (p.z(1) - p.z(2));
    assert!((h1.get(0, 0) - expect).norm() < 1e-12);
    for r in 1..4 {
        assert_eq!(h1.get(r, 0), c(0.0, 0.0));
    }
}

#[test]
fn quantization_matches_gaudin() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for m in 2..=4 {
        let p = ParabolicData::random(&mut rng, m);
        let hbar = rng.gen_range(0.5..2.0);
        for i in 1..=m {
            let q = quantize(&p, &garnier_hamiltonian(&p, i).unwrap(), hbar, 1e-9).unwrap();
            let g = gaudin_hamiltonian(&p, i, hbar).unwrap();
            assert!(q.to_matrix().unwrap().distance(&g.to_matrix().unwrap()) < 1e-12);
            // bosonic part with u → ħu sits on the vacuum
            let classical = garnier_hamiltonian(&p.with_scaled_u(hbar), i).unwrap().body();
            assert!((g.to_matrix().unwrap().get(0, 0) - classical).norm() < 1e-12);
        }
        let zero = quantize(&p, &garnier_hamiltonian(&p, 1).unwrap(), 0.0, 1e-9).unwrap();
        assert!(zero.to_matrix().unwrap().norm() < 1e-15);
    }
    let p = ParabolicData::random(&mut rng, 3);
    let other = &garnier_hamiltonian(&p, 1).unwrap() + &p.theta(1);
    assert!(quantize(&p, &other, 1.0, 1e-9).is_err());
}

#[test]
fn commutator_of_quantized_quadratics_tracks_the_bracket() {
    // [Q F, Q G] = −ħ Q({F, G}) for F, G bilinear in θ and η
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let m = 3;
    let p = ParabolicData::random(&mut rng, m);
    let n = p.num_generators();
    let quad = |rng: &mut ChaCha8Rng| {
        let mut f = GrassmannElement::zero(n);
        for a in 1..=m {
            for b in 1..=m {
                f = &f + &(&p.theta(a) * &p.eta(b)).scale(sample::coeff(rng));
            }
        }
        f
    };
    let hbar = 0.8;
    for _ in 0..5 {
        let (f, g) = (quad(&mut rng), quad(&mut rng));
        let qf = quantize_monomials(m, &f, hbar).unwrap().to_matrix().unwrap();
        let qg = quantize_monomials(m, &g, hbar).unwrap().to_matrix().unwrap();
        let lhs = qf.supercommutator(&qg).unwrap();
        let rhs = quantize_monomials(m, &poisson_bracket(&f, &g).unwrap(), hbar).unwrap().to_matrix().unwrap().scale(-hbar);
        assert!(lhs.distance(&rhs) < 1e-12);
    }
}

#[test]
fn matrix_free_commutators() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let p = ParabolicData::random(&mut rng, 11);
    let rs = gaudin_commutators(&p, 1.0).unwrap();
    assert_eq!(rs.len(), 55);
    assert!(rs.iter().all(|(_, r)| *r < 1e-12));
}
