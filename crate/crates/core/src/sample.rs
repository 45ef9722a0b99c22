//! Random instances for property tests, self-tests and benchmarks.
//!
//! All generators take any [`rand::Rng`], so results are reproducible from a
//! seeded generator. Coefficients are drawn uniformly from the unit square and
//! monomials are kept short so products stay sparse.

use num_complex::Complex64;
use rand::Rng;

use crate::grassmann::{GrassmannElement, Monomial, Parity};
use crate::supergroup::{GroupCoords, SuperMatrix11};

pub fn coeff<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A monomial of the requested parity with at most four generators.
/// `Parity::Mixed` allows either.
pub fn monomial<R: Rng + ?Sized>(rng: &mut R, n: u32, parity: Parity) -> Monomial {
    let max_len = n.min(4);
    loop {
        let len = rng.gen_range(0..=max_len);
        let ok = match parity {
            Parity::Even => len % 2 == 0,
            Parity::Odd => len % 2 == 1,
            Parity::Mixed => true,
        };
        if !ok {
            continue;
        }
        let mut m: Monomial = 0;
        while m.count_ones() < len {
            m |= 1u64 << rng.gen_range(0..n);
        }
        return m;
    }
}

fn element<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    terms: usize,
    parity: Parity,
    with_body: bool,
) -> GrassmannElement {
    let mut items = alloc::vec::Vec::with_capacity(terms + 1);
    if with_body {
        items.push((0, coeff(rng)));
    }
    for _ in 0..terms {
        let m = monomial(rng, n, parity);
        if m != 0 || with_body {
            items.push((m, coeff(rng)));
        }
    }
    GrassmannElement::from_terms(n, items).expect("sampled monomials are in range")
}

/// Even element with a random body and up to `terms` further monomials.
pub fn random_even<R: Rng + ?Sized>(rng: &mut R, n: u32, terms: usize) -> GrassmannElement {
    element(rng, n, terms, Parity::Even, true)
}

/// Even element with zero body.
pub fn random_even_soul<R: Rng + ?Sized>(rng: &mut R, n: u32, terms: usize) -> GrassmannElement {
    element(rng, n, terms, Parity::Even, false)
}

pub fn random_odd<R: Rng + ?Sized>(rng: &mut R, n: u32, terms: usize) -> GrassmannElement {
    element(rng, n, terms, Parity::Odd, false)
}

pub fn random_mixed<R: Rng + ?Sized>(rng: &mut R, n: u32, terms: usize) -> GrassmannElement {
    element(rng, n, terms, Parity::Mixed, true)
}

/// Random homogeneous element, even or odd with equal probability.
pub fn random_homogeneous<R: Rng + ?Sized>(rng: &mut R, n: u32, terms: usize) -> GrassmannElement {
    if rng.gen_bool(0.5) {
        random_even(rng, n, terms)
    } else {
        random_odd(rng, n, terms)
    }
}

/// Even element whose body has modulus at least 0.5, so it is invertible
/// and well conditioned.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: u32, terms: usize) -> GrassmannElement {
    let soul = random_even_soul(rng, n, terms);
    let r = rng.gen_range(0.5..1.5);
    let phi = rng.gen_range(-3.0..3.0);
    &soul + &GrassmannElement::scalar(n, Complex64::from_polar(r, phi))
}

/// Random group coordinates; `s` is zero unless `gl` is set.
pub fn random_coords<R: Rng + ?Sized>(rng: &mut R, n: u32, gl: bool) -> GroupCoords {
    let h = random_even(rng, n, 3);
    let s = if gl {
        random_even(rng, n, 3)
    } else {
        GrassmannElement::zero(n)
    };
    GroupCoords::new(h, s, random_odd(rng, n, 3), random_odd(rng, n, 3))
        .expect("sampled coordinates have the right parities")
}

/// An invertible even supermatrix.
pub fn random_supermatrix<R: Rng + ?Sized>(rng: &mut R, n: u32) -> SuperMatrix11 {
    SuperMatrix11::new(
        random_invertible(rng, n, 3),
        random_odd(rng, n, 3),
        random_odd(rng, n, 3),
        random_invertible(rng, n, 3),
    )
    .expect("sampled blocks have the right parities")
}

/// Which of `z`, `z̄` a random local function may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dependence {
    Holomorphic,
    Antiholomorphic,
    Both,
}

/// Random polynomial with up to `terms` terms of degree at most `degree` in
/// each variable, under the degree cap `cap`.
pub fn random_local_function<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    parity: Parity,
    dependence: Dependence,
    degree: u32,
    terms: usize,
    cap: u32,
) -> crate::hitchin::LocalFunction {
    let mut items = alloc::vec::Vec::with_capacity(terms);
    for _ in 0..terms {
        let p = if dependence == Dependence::Antiholomorphic { 0 } else { rng.gen_range(0..=degree) };
        let q = if dependence == Dependence::Holomorphic { 0 } else { rng.gen_range(0..=degree) };
        let c = match parity {
            Parity::Odd => random_odd(rng, n, 2),
            _ => random_even(rng, n, 2),
        };
        items.push((p, q, c));
    }
    crate::hitchin::LocalFunction::from_terms(n, parity, cap, items).expect("terms respect the cap")
}
