//! GL(1|1) and SL(1|1) supermatrices over a Grassmann algebra.
//!
//! Group elements are parametrized as `g̃(h, s, α, β) = g(h, α, β)·H_s` with
//!
//! ```text
//! g(h, α, β) = [[e^h (1 − αβ/2), e^h β], [e^h α, e^h (1 + αβ/2)]]
//! H_s        = diag(e^{s/2}, e^{−s/2})
//! ```
//!
//! so that `sdet g̃ = e^s` and `s = 0` is the SL(1|1) subgroup.

use core::f64::consts::PI;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannElement, Parity};

/// A (1|1)×(1|1) matrix `[[a, β], [γ, d]]` with even diagonal and odd
/// off-diagonal blocks.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperMatrix11 {
    pub a: GrassmannElement,
    pub beta: GrassmannElement,
    pub gamma: GrassmannElement,
    pub d: GrassmannElement,
}

impl SuperMatrix11 {
    pub fn new(
        a: GrassmannElement,
        beta: GrassmannElement,
        gamma: GrassmannElement,
        d: GrassmannElement,
    ) -> Result<Self> {
        let n = a.num_generators();
        for x in [&beta, &gamma, &d] {
            if x.num_generators() != n {
                return Err(Error::GeneratorMismatch(n, x.num_generators()));
            }
        }
        a.expect_parity(Parity::Even, "supermatrix block a")?;
        d.expect_parity(Parity::Even, "supermatrix block d")?;
        beta.expect_parity(Parity::Odd, "supermatrix block beta")?;
        gamma.expect_parity(Parity::Odd, "supermatrix block gamma")?;
        Ok(SuperMatrix11 { a, beta, gamma, d })
    }

    pub fn identity(n: u32) -> Self {
        Self::diag(GrassmannElement::one(n), GrassmannElement::one(n))
    }

    pub fn zero(n: u32) -> Self {
        let z = GrassmannElement::zero(n);
        SuperMatrix11 {
            a: z.clone(),
            beta: z.clone(),
            gamma: z.clone(),
            d: z,
        }
    }

    pub fn diag(a: GrassmannElement, d: GrassmannElement) -> Self {
        let z = GrassmannElement::zero(a.num_generators());
        SuperMatrix11 {
            a,
            beta: z.clone(),
            gamma: z,
            d,
        }
    }

    pub fn num_generators(&self) -> u32 {
        self.a.num_generators()
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        let (n, m) = (self.num_generators(), other.num_generators());
        if n == m {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch(n, m))
        }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_same_n(o)?;
        Ok(SuperMatrix11 {
            a: &self.a * &o.a + &self.beta * &o.gamma,
            beta: &self.a * &o.beta + &self.beta * &o.d,
            gamma: &self.gamma * &o.a + &self.d * &o.gamma,
            d: &self.gamma * &o.beta + &self.d * &o.d,
        })
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same_n(o)?;
        Ok(SuperMatrix11 {
            a: &self.a + &o.a,
            beta: &self.beta + &o.beta,
            gamma: &self.gamma + &o.gamma,
            d: &self.d + &o.d,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&-o)
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        SuperMatrix11 {
            a: self.a.scale(c),
            beta: self.beta.scale(c),
            gamma: self.gamma.scale(c),
            d: self.d.scale(c),
        }
    }

    /// Multiply every entry on the left by the even scalar `x`.
    pub fn scale_by(&self, x: &GrassmannElement) -> Self {
        SuperMatrix11 {
            a: x * &self.a,
            beta: x * &self.beta,
            gamma: x * &self.gamma,
            d: x * &self.d,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.a.body().norm() > crate::grassmann::CANON_EPS
            && self.d.body().norm() > crate::grassmann::CANON_EPS
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible("supermatrix with a or d of zero body"));
        }
        let ai = self.a.inv()?;
        let di = self.d.inv()?;
        // Schur complements
        let sa = (&self.a - &(&self.beta * &di * &self.gamma)).inv()?;
        let sd = (&self.d - &(&self.gamma * &ai * &self.beta)).inv()?;
        Ok(SuperMatrix11 {
            beta: -(&ai * &self.beta * &sd),
            gamma: -(&di * &self.gamma * &sa),
            a: sa,
            d: sd,
        })
    }

    /// Berezinian `(a/d)(1 − βγ/(da))`.
    pub fn sdet(&self) -> Result<GrassmannElement> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible("superdeterminant needs invertible a and d"));
        }
        let n = self.num_generators();
        let ai = self.a.inv()?;
        let di = self.d.inv()?;
        let corr = GrassmannElement::one(n) - &self.beta * &self.gamma * &di * &ai;
        Ok(&self.a * &di * &corr)
    }

    /// Supertrace `a − d`.
    pub fn str(&self) -> GrassmannElement {
        &self.a - &self.d
    }

    /// `self·o − o·self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    pub fn max_abs(&self) -> f64 {
        [&self.a, &self.beta, &self.gamma, &self.d]
            .iter()
            .map(|x| x.max_abs())
            .fold(0.0, f64::max)
    }

    /// Largest entry-wise coefficient difference.
    pub fn distance(&self, o: &Self) -> f64 {
        (self - o).max_abs()
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.num_generators() == o.num_generators() && self.distance(o) <= tol
    }

    /// Apply `f` to every entry.
    pub fn map(&self, f: impl Fn(&GrassmannElement) -> GrassmannElement) -> Self {
        SuperMatrix11 {
            a: f(&self.a),
            beta: f(&self.beta),
            gamma: f(&self.gamma),
            d: f(&self.d),
        }
    }
}

impl fmt::Display for SuperMatrix11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.beta, self.gamma, self.d)
    }
}

macro_rules! matop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&SuperMatrix11> for &SuperMatrix11 {
            type Output = SuperMatrix11;
            fn $method(self, rhs: &SuperMatrix11) -> SuperMatrix11 {
                self.$try(rhs).expect("mismatched generator counts")
            }
        }
        impl $trait<SuperMatrix11> for SuperMatrix11 {
            type Output = SuperMatrix11;
            fn $method(self, rhs: SuperMatrix11) -> SuperMatrix11 {
                (&self).$method(&rhs)
            }
        }
    };
}

matop!(Mul, mul, try_mul);
matop!(Add, add, try_add);
matop!(Sub, sub, try_sub);

impl Neg for &SuperMatrix11 {
    type Output = SuperMatrix11;
    fn neg(self) -> SuperMatrix11 {
        self.map(|x| -x)
    }
}

/// Coordinates `(h, s, α, β)` of `g̃ = g(h, α, β)·H_s`.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupCoords {
    pub h: GrassmannElement,
    pub s: GrassmannElement,
    pub alpha: GrassmannElement,
    pub beta: GrassmannElement,
}

impl GroupCoords {
    pub fn new(
        h: GrassmannElement,
        s: GrassmannElement,
        alpha: GrassmannElement,
        beta: GrassmannElement,
    ) -> Result<Self> {
        let n = h.num_generators();
        for x in [&s, &alpha, &beta] {
            if x.num_generators() != n {
                return Err(Error::GeneratorMismatch(n, x.num_generators()));
            }
        }
        h.expect_parity(Parity::Even, "coordinate h")?;
        s.expect_parity(Parity::Even, "coordinate s")?;
        alpha.expect_parity(Parity::Odd, "coordinate alpha")?;
        beta.expect_parity(Parity::Odd, "coordinate beta")?;
        Ok(GroupCoords { h, s, alpha, beta })
    }

    /// SL(1|1) coordinates, `s = 0`.
    pub fn sl(h: GrassmannElement, alpha: GrassmannElement, beta: GrassmannElement) -> Result<Self> {
        let s = GrassmannElement::zero(h.num_generators());
        Self::new(h, s, alpha, beta)
    }

    pub fn identity(n: u32) -> Self {
        let z = GrassmannElement::zero(n);
        GroupCoords {
            h: z.clone(),
            s: z.clone(),
            alpha: z.clone(),
            beta: z,
        }
    }

    pub fn num_generators(&self) -> u32 {
        self.h.num_generators()
    }

    pub fn is_sl(&self) -> bool {
        self.s.is_zero()
    }

    /// The matrix `g(h, α, β)·H_s`.
    pub fn to_matrix(&self) -> SuperMatrix11 {
        let n = self.num_generators();
        let half_ab = (&self.alpha * &self.beta).scale(0.5);
        let one = GrassmannElement::one(n);
        let half_s = self.s.scale(0.5);
        let ep = (&self.h + &half_s).exp_even().expect("h, s are even");
        let em = (&self.h - &half_s).exp_even().expect("h, s are even");
        SuperMatrix11 {
            a: &ep * &(&one - &half_ab),
            beta: &em * &self.beta,
            gamma: &ep * &self.alpha,
            d: &em * &(&one + &half_ab),
        }
    }

    /// Group inverse `(−h, −s, −e^s α, −e^{−s} β)`.
    pub fn inverse(&self) -> Self {
        let es = self.s.exp_even().expect("s is even");
        let ems = (-&self.s).exp_even().expect("s is even");
        GroupCoords {
            h: -&self.h,
            s: -&self.s,
            alpha: -(&es * &self.alpha),
            beta: -(&ems * &self.beta),
        }
    }

    pub fn try_product(&self, o: &Self) -> Result<Self> {
        if self.num_generators() != o.num_generators() {
            return Err(Error::GeneratorMismatch(self.num_generators(), o.num_generators()));
        }
        Ok(coords_product(self, o))
    }

    pub fn max_abs(&self) -> f64 {
        [&self.h, &self.s, &self.alpha, &self.beta]
            .iter()
            .map(|x| x.max_abs())
            .fold(0.0, f64::max)
    }

    /// Apply `f` to every coordinate.
    pub fn map(&self, f: impl Fn(&GrassmannElement) -> GrassmannElement) -> Self {
        GroupCoords {
            h: f(&self.h),
            s: f(&self.s),
            alpha: f(&self.alpha),
            beta: f(&self.beta),
        }
    }

    /// Coordinate-wise distance, with `h` compared modulo `2πi` when
    /// `h_mod_2pi` is set.
    pub fn distance(&self, o: &Self, h_mod_2pi: bool) -> f64 {
        let mut dh = &self.h - &o.h;
        if h_mod_2pi {
            dh = reduce_mod_2pi_i(&dh);
        }
        [
            dh.max_abs(),
            self.s.distance(&o.s),
            self.alpha.distance(&o.alpha),
            self.beta.distance(&o.beta),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Shift the body's imaginary part by the nearest multiple of `2π`.
pub fn reduce_mod_2pi_i(x: &GrassmannElement) -> GrassmannElement {
    let b = x.body();
    let k = num_traits::Float::round(b.im / (2.0 * PI));
    x - &GrassmannElement::scalar(x.num_generators(), Complex64::new(0.0, 2.0 * PI * k))
}

/// Matrix of the coordinates.
pub fn from_coords(c: &GroupCoords) -> SuperMatrix11 {
    c.to_matrix()
}

/// Coordinates of an invertible supermatrix, using the principal logarithm
/// on the bodies of the diagonal.
pub fn to_coords(m: &SuperMatrix11) -> Result<GroupCoords> {
    if !m.is_invertible() {
        return Err(Error::NotInvertible("to_coords needs invertible a and d"));
    }
    let n = m.num_generators();
    let alpha = &m.gamma * &m.a.inv()?;
    let beta = &m.beta * &m.d.inv()?;
    let half_ab = (&alpha * &beta).scale(0.5);
    let one = GrassmannElement::one(n);
    let l1 = (&m.a * &(&one + &half_ab)).log_even()?;
    let l2 = (&m.d * &(&one - &half_ab)).log_even()?;
    Ok(GroupCoords {
        h: (&l1 + &l2).scale(0.5),
        s: &l1 - &l2,
        alpha,
        beta,
    })
}

/// Closed-form group law in coordinates.
///
/// # Panics
///
/// If the two coordinate sets live in different algebras.
pub fn coords_product(c1: &GroupCoords, c2: &GroupCoords) -> GroupCoords {
    let es = c1.s.exp_even().expect("s is even");
    let ems = (-&c1.s).exp_even().expect("s is even");
    let alpha = &c1.alpha + &(&ems * &c2.alpha);
    let beta = &c1.beta + &(&es * &c2.beta);
    let quad = &c1.alpha * &es * &c2.beta - &ems * &c2.alpha * &c1.beta;
    GroupCoords {
        h: &c1.h + &c2.h + quad.scale(0.5),
        s: &c1.s + &c2.s,
        alpha,
        beta,
    }
}

/// Eigen-decomposition of a Higgs field with invertible supertrace.
#[derive(Clone, PartialEq, Debug)]
pub struct HiggsEigenData {
    pub lambda_plus: GrassmannElement,
    pub lambda_minus: GrassmannElement,
    /// `P` with `P⁻¹ Φ P = diag(λ₊, λ₋)`.
    pub p: SuperMatrix11,
}

/// Diagonalize `Φ = [[a, β], [γ, d]]`.
///
/// The eigenvalues are `λ₊ = a + βγ/(a − d)` and `λ₋ = d + βγ/(a − d)`,
/// equivalently `½(str(Φ²)/str(Φ) ± str(Φ))`.
pub fn higgs_eigen(phi: &SuperMatrix11) -> Result<HiggsEigenData> {
    let st = phi.str();
    if st.body().norm() < crate::grassmann::CANON_EPS {
        return Err(Error::NonDiagonalizable);
    }
    let sti = st.inv()?;
    let corr = &phi.beta * &phi.gamma * &sti;
    let p = SuperMatrix11 {
        a: GrassmannElement::one(phi.num_generators()),
        beta: -(&phi.beta * &sti),
        gamma: &phi.gamma * &sti,
        d: GrassmannElement::one(phi.num_generators()),
    };
    Ok(HiggsEigenData {
        lambda_plus: &phi.a + &corr,
        lambda_minus: &phi.d + &corr,
        p,
    })
}

/// Eigenvalues from the supertrace invariants `½(str(Φ²)/str(Φ) ± str(Φ))`.
pub fn higgs_eigenvalues_invariant(phi: &SuperMatrix11) -> Result<(GrassmannElement, GrassmannElement)> {
    let st = phi.str();
    if st.body().norm() < crate::grassmann::CANON_EPS {
        return Err(Error::NonDiagonalizable);
    }
    let st2 = (phi * phi).str();
    let ratio = &st2 * &st.inv()?;
    Ok(((&ratio + &st).scale(0.5), (&ratio - &st).scale(0.5)))
}

/// Gluing law `g̃⁻¹ Φ g̃`.
pub fn higgs_transform(phi: &SuperMatrix11, g: &SuperMatrix11) -> Result<SuperMatrix11> {
    let gi = g.inverse()?;
    gi.try_mul(phi)?.try_mul(g)
}
