//! Randomized self-test of the GL(1|1) group law in coordinates.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::grassmann::GrassmannElement;
use crate::report::Report;
use crate::sample;
use crate::supergroup::{coords_product, to_coords, GroupCoords};

/// Run the group-law checks on `count` random triples in a
/// `n`-generator algebra.
///
/// Named checks: `associativity`, `identity`, `inverse` (coordinates of
/// `g·g⁻¹`), `inverse_matrix` (closed-form inverse against the matrix
/// inverse), `product_matrix` (closed-form law against the matrix product),
/// `roundtrip` (matrix of the recovered coordinates) and `sdet`
/// (`sdet = e^s`). With `corrupt` set, the closed-form product fed to
/// `product_matrix` has `½` added to `h`.
pub fn group_selftest<R: Rng + ?Sized>(rng: &mut R, n: u32, count: usize, tol: f64, corrupt: bool) -> Result<Report> {
    let mut rep = Report::new();
    let id = GroupCoords::identity(n);
    for _ in 0..count {
        let [a, b, c] = [0, 1, 2].map(|_| sample::random_coords(rng, n, true));
        let ab_c = coords_product(&coords_product(&a, &b), &c);
        let a_bc = coords_product(&a, &coords_product(&b, &c));
        rep.record("associativity", ab_c.distance(&a_bc, false), tol);
        let left = coords_product(&id, &a).distance(&a, false);
        let right = coords_product(&a, &id).distance(&a, false);
        rep.record("identity", left.max(right), tol);
        let inv = a.inverse();
        let r = coords_product(&a, &inv).max_abs().max(coords_product(&inv, &a).max_abs());
        rep.record("inverse", r, tol);
        rep.record("inverse_matrix", inv.to_matrix().distance(&a.to_matrix().inverse()?), tol);
        let mut ab = coords_product(&a, &b);
        if corrupt {
            ab.h = &ab.h + &GrassmannElement::scalar(n, Complex64::new(0.5, 0.0));
        }
        rep.record("product_matrix", ab.to_matrix().distance(&(&a.to_matrix() * &b.to_matrix())), tol);
        let m = a.to_matrix();
        rep.record("roundtrip", to_coords(&m)?.to_matrix().distance(&m), tol);
        let sdet = a.to_matrix().sdet()?;
        rep.record("sdet", sdet.distance(&a.s.exp_even()?), tol);
    }
    Ok(rep)
}
