//! Property tests over random seeds. Every strategy draws a seed and builds
//! the instance from a seeded generator, so shrinking works on the seed.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cech::{coboundary, two_cocycle_g, Cochain, Mode, Nerve, TransitionData};
use crate::fatgraph::{FatGraph, GraphConnection, RealForm};
use crate::grassmann::{ConjugationTable, GrassmannElement};
use crate::integrable::{garnier_hamiltonian, ParabolicData};
use crate::sample;

const TOL: f64 = 1e-9;
const N: u32 = 6;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative_and_distributive(seed: u64) {
        let mut r = rng(seed);
        let x = sample::random_mixed(&mut r, N, 4);
        let y = sample::random_mixed(&mut r, N, 4);
        let z = sample::random_mixed(&mut r, N, 4);
        prop_assert!((&(&x * &y) * &z).approx_eq(&(&x * &(&y * &z)), TOL));
        prop_assert!((&x * &(&y + &z)).approx_eq(&(&(&x * &y) + &(&x * &z)), TOL));
    }

    #[test]
    fn homogeneous_elements_supercommute(seed: u64) {
        let mut r = rng(seed);
        let x = sample::random_homogeneous(&mut r, N, 4);
        let y = sample::random_homogeneous(&mut r, N, 4);
        let sign = if x.is_odd() && y.is_odd() { -1.0 } else { 1.0 };
        prop_assert!((&x * &y).approx_eq(&(&y * &x).scale(sign), TOL));
    }

    #[test]
    fn odd_elements_square_to_zero(seed: u64) {
        let mut r = rng(seed);
        let x = sample::random_odd(&mut r, N, 5);
        prop_assert!((&x * &x).max_abs() < TOL);
    }

    #[test]
    fn conjugation_reverses_products(seed: u64) {
        let mut r = rng(seed);
        let table = ConjugationTable::half_split(N);
        let x = sample::random_mixed(&mut r, N, 4);
        let y = sample::random_mixed(&mut r, N, 4);
        let lhs = (&x * &y).conjugate(&table).unwrap();
        let rhs = &y.conjugate(&table).unwrap() * &x.conjugate(&table).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, TOL));
    }

    #[test]
    fn exp_log_roundtrip(seed: u64) {
        let mut r = rng(seed);
        let x = sample::random_even_soul(&mut r, N, 4);
        let back = x.exp_even().unwrap().log_even().unwrap();
        prop_assert!(back.approx_eq(&x, TOL));
        let one = GrassmannElement::one(N);
        prop_assert!((&x.exp_even().unwrap() * &(-&x).exp_even().unwrap()).approx_eq(&one, TOL));
    }

    #[test]
    fn group_law(seed: u64) {
        let mut r = rng(seed);
        let a = sample::random_coords(&mut r, N, true);
        let b = sample::random_coords(&mut r, N, true);
        let c = sample::random_coords(&mut r, N, true);
        let left = a.try_product(&b).unwrap().try_product(&c).unwrap();
        let right = a.try_product(&b.try_product(&c).unwrap()).unwrap();
        prop_assert!(left.to_matrix().approx_eq(&right.to_matrix(), TOL));
        let e = a.try_product(&a.inverse()).unwrap().to_matrix();
        prop_assert!(e.approx_eq(&crate::SuperMatrix11::identity(N), TOL));
        let m = a.to_matrix().try_mul(&b.to_matrix()).unwrap();
        prop_assert!(a.try_product(&b).unwrap().to_matrix().approx_eq(&m, TOL));
    }

    #[test]
    fn coboundary_squares_to_zero(seed: u64) {
        let mut r = rng(seed);
        let nerve = Nerve::tetrahedron();
        let c = Cochain::from_fn(&nerve, 1, N, |_| sample::random_mixed(&mut r, N, 3)).unwrap();
        let dd = coboundary(&nerve, &coboundary(&nerve, &c).unwrap()).unwrap();
        prop_assert!(dd.max_abs() < TOL);
    }

    #[test]
    fn two_cocycle_is_closed(seed: u64) {
        let mut r = rng(seed);
        let nerve = Nerve::tetrahedron();
        let data = TransitionData::random_cocycle(&nerve, &mut r, N, Mode::Gl).unwrap();
        let g = two_cocycle_g(&nerve, &data, TOL).unwrap();
        prop_assert!(coboundary(&nerve, &g).unwrap().max_abs() < TOL);
    }

    #[test]
    fn normalization_is_idempotent(seed: u64, which in 0usize..4) {
        let mut r = rng(seed);
        let (g, s) = [(0, 3), (1, 1), (1, 2), (2, 1)][which];
        let graph = FatGraph::fixture(g, s).unwrap();
        let conn = GraphConnection::random(graph, RealForm::Sl, &mut r, N);
        let once = conn.gauge_normalize(TOL).unwrap().connection;
        prop_assert!(once.max_vertex_sum() < TOL);
        let twice = once.gauge_normalize(TOL).unwrap().connection;
        for (x, y) in once.coords().iter().zip(twice.coords()) {
            prop_assert!(x.distance(y, false) < TOL);
        }
    }

    #[test]
    fn garnier_hamiltonians_sum_to_zero(seed: u64, m in 2usize..5) {
        let mut r = rng(seed);
        let p = ParabolicData::random(&mut r, m);
        let mut total = garnier_hamiltonian(&p, 1).unwrap();
        for i in 2..=m {
            total = &total + &garnier_hamiltonian(&p, i).unwrap();
        }
        prop_assert!(total.max_abs() < TOL);
    }
}
