//! Exact arithmetic in a finitely generated Grassmann algebra.
//!
//! An element is stored as a sparse map from monomials to complex coefficients.
//! A monomial is a bitset over the generators: bit `i - 1` set means the
//! generator `θ_i` is present, and the implied product is always written in
//! increasing index order. Every sign coming from anticommutation is folded
//! into the coefficient when the element is built, so the representation is
//! unique once coefficients below [`CANON_EPS`] are pruned.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A monomial in canonical (increasing) generator order, as a bitset.
pub type Monomial = u64;

pub const MAX_GENERATORS: u32 = 64;

/// Coefficients with magnitude below this are dropped after every operation.
pub const CANON_EPS: f64 = 1e-12;

/// Default comparison tolerance used by checks throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// Parity of a product of two homogeneous factors.
    pub fn product(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

#[inline]
fn bit(index: usize) -> Monomial {
    1u64 << (index - 1)
}

/// Sign picked up when the canonical monomials `a` and `b` are concatenated
/// and sorted, or `None` if they share a generator.
#[inline]
pub fn product_sign(a: Monomial, b: Monomial) -> Option<f64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        if j < 63 {
            swaps += (a >> (j + 1)).count_ones();
        }
        rest &= rest - 1;
    }
    Some(if swaps & 1 == 0 { 1.0 } else { -1.0 })
}

/// Generator indices (1-based) of a monomial in increasing order.
pub fn monomial_indices(m: Monomial) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    let mut rest = m;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize + 1);
        rest &= rest - 1;
    }
    out
}

/// An involution on generator indices describing how complex conjugation
/// acts on the odd generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationTable {
    // 0-based image of each generator
    pairing: Vec<usize>,
}

impl ConjugationTable {
    /// Pair `θ_i` with `θ_{i+N/2}`. For odd `N` the last generator is
    /// self-conjugate.
    pub fn half_split(n: u32) -> Self {
        let n = n as usize;
        let half = n / 2;
        let mut pairing: Vec<usize> = (0..n).collect();
        for i in 0..half {
            pairing[i] = i + half;
            pairing[i + half] = i;
        }
        ConjugationTable { pairing }
    }

    /// Every generator is its own conjugate.
    pub fn self_conjugate(n: u32) -> Self {
        ConjugationTable {
            pairing: (0..n as usize).collect(),
        }
    }

    /// Build from 1-based images; the map must be an involution of `1..=N`.
    pub fn from_pairing(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_GENERATORS as usize {
            return Err(Error::TooManyGenerators(n as u32));
        }
        let mut pairing = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::GeneratorOutOfRange {
                    index: img,
                    n: n as u32,
                });
            }
            pairing.push(img - 1);
        }
        for (i, &j) in pairing.iter().enumerate() {
            if pairing[j] != i {
                return Err(Error::InvalidInput(alloc::format!(
                    "conjugation table is not an involution at generator {}",
                    i + 1
                )));
            }
        }
        Ok(ConjugationTable { pairing })
    }

    pub fn num_generators(&self) -> u32 {
        self.pairing.len() as u32
    }

    /// Conjugate generator of `θ_i` (1-based).
    pub fn image(&self, i: usize) -> usize {
        self.pairing[i - 1] + 1
    }

    /// 1-based images, the inverse of [`ConjugationTable::from_pairing`].
    pub fn images(&self) -> Vec<usize> {
        self.pairing.iter().map(|&j| j + 1).collect()
    }
}

/// An element of `Λ = ℂ[θ_1..θ_N]/(θ_iθ_j + θ_jθ_i)`.
#[derive(Clone, PartialEq)]
pub struct GrassmannElement {
    n: u32,
    terms: BTreeMap<Monomial, Complex64>,
}

impl GrassmannElement {
    /// The zero element.
    ///
    /// # Panics
    ///
    /// If `n` exceeds [`MAX_GENERATORS`].
    pub fn zero(n: u32) -> Self {
        assert!(n <= MAX_GENERATORS, "at most 64 generators are supported");
        GrassmannElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: u32, c: impl Into<Complex64>) -> Self {
        let mut out = Self::zero(n);
        out.push(0, c.into());
        out
    }

    pub fn one(n: u32) -> Self {
        Self::scalar(n, 1.0)
    }

    /// The generator `θ_i`, 1-based.
    pub fn generator(n: u32, i: usize) -> Result<Self> {
        Self::monomial(n, &[i], 1.0)
    }

    /// `c · θ_{i_1} θ_{i_2} ⋯` for indices in any order; the sign of sorting
    /// is applied and a repeated index gives zero.
    pub fn monomial(n: u32, indices: &[usize], c: impl Into<Complex64>) -> Result<Self> {
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(n));
        }
        let mut mono: Monomial = 0;
        let mut sign = 1.0;
        for &i in indices {
            if i == 0 || i > n as usize {
                return Err(Error::GeneratorOutOfRange { index: i, n });
            }
            match product_sign(mono, bit(i)) {
                Some(s) => {
                    sign *= s;
                    mono |= bit(i);
                }
                None => return Ok(Self::zero(n)),
            }
        }
        let mut out = Self::zero(n);
        out.push(mono, c.into() * sign);
        Ok(out)
    }

    /// Build from canonical monomials; duplicate monomials are summed.
    pub fn from_terms<I>(n: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(n));
        }
        let mut out = Self::zero(n);
        for (m, c) in terms {
            if n < 64 && m >> n != 0 {
                let index = 64 - m.leading_zeros() as usize;
                return Err(Error::GeneratorOutOfRange { index, n });
            }
            *out.terms.entry(m).or_insert_with(Complex64::zero) += c;
        }
        out.canonicalize();
        Ok(out)
    }

    fn push(&mut self, m: Monomial, c: Complex64) {
        if c.norm() >= CANON_EPS {
            self.terms.insert(m, c);
        }
    }

    fn canonicalize(&mut self) {
        self.terms.retain(|_, c| c.norm() >= CANON_EPS);
    }

    /// Drop every coefficient with magnitude below `eps`.
    pub fn pruned(&self, eps: f64) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, c| c.norm() >= eps);
        out
    }

    pub fn num_generators(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Complex64 {
        self.terms.get(&m).copied().unwrap_or_else(Complex64::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Nilpotent part, `x - body(x)`.
    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&0);
        out
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        GrassmannElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| keep(m))
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    /// Parity of the element; zero counts as even.
    pub fn parity(&self) -> Parity {
        let mut has_even = false;
        let mut has_odd = false;
        for &m in self.terms.keys() {
            if m.count_ones() % 2 == 0 {
                has_even = true;
            } else {
                has_odd = true;
            }
        }
        match (has_even, has_odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// True for zero as well.
    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }

    /// Check homogeneity, accepting zero for either parity.
    pub fn expect_parity(&self, expected: Parity, what: &'static str) -> Result<()> {
        let ok = match expected {
            Parity::Even => self.is_even(),
            Parity::Odd => self.is_odd(),
            Parity::Mixed => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parity {
                what,
                expected,
                found: self.parity(),
            })
        }
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            *out.terms.entry(m).or_insert_with(Complex64::zero) += c;
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            *out.terms.entry(m).or_insert_with(Complex64::zero) -= c;
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let mut acc: BTreeMap<Monomial, Complex64> = BTreeMap::new();
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                if let Some(sign) = product_sign(a, b) {
                    *acc.entry(a | b).or_insert_with(Complex64::zero) += ca * cb * sign;
                }
            }
        }
        let mut out = GrassmannElement {
            n: self.n,
            terms: acc,
        };
        out.canonicalize();
        Ok(out)
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = GrassmannElement {
            n: self.n,
            terms: self.terms.iter().map(|(&m, &v)| (m, v * c)).collect(),
        };
        out.canonicalize();
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `e^x` for even `x`: `e^{body} Σ soul^k / k!`, finite by nilpotency.
    pub fn exp_even(&self) -> Result<Self> {
        self.expect_parity(Parity::Even, "exp_even argument")?;
        let soul = self.soul();
        let mut sum = Self::one(self.n);
        let mut term = Self::one(self.n);
        let mut k = 1u32;
        loop {
            term = (&term * &soul).scale(1.0 / k as f64);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        Ok(sum.scale(self.body().exp()))
    }

    /// Principal logarithm of an even element with nonzero body.
    pub fn log_even(&self) -> Result<Self> {
        self.expect_parity(Parity::Even, "log_even argument")?;
        let b = self.body();
        if b.norm() < CANON_EPS {
            return Err(Error::NotInvertible("logarithm of an element with zero body"));
        }
        let x = self.soul().scale(b.inv());
        let mut sum = Self::scalar(self.n, b.ln());
        let mut power = Self::one(self.n);
        let mut k = 1u32;
        loop {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum = &sum + &power.scale(sign / k as f64);
            k += 1;
        }
        Ok(sum)
    }

    /// Multiplicative inverse of an even element with nonzero body.
    pub fn inv(&self) -> Result<Self> {
        self.expect_parity(Parity::Even, "inverse argument")?;
        let b = self.body();
        if b.norm() < CANON_EPS {
            return Err(Error::NotInvertible("element has zero body"));
        }
        let binv = b.inv();
        let x = self.soul().scale(-binv);
        let mut sum = Self::one(self.n);
        let mut power = Self::one(self.n);
        loop {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(binv))
    }

    /// Antilinear anti-automorphism: `conj(uv) = conj(v) conj(u)`, with
    /// generators mapped through `table`.
    pub fn conjugate(&self, table: &ConjugationTable) -> Result<Self> {
        if table.num_generators() != self.n {
            return Err(Error::GeneratorMismatch(table.num_generators(), self.n));
        }
        let mut out = Self::zero(self.n);
        for (&m, &c) in &self.terms {
            // reversed product of the conjugated generators
            let mut mono: Monomial = 0;
            let mut sign = 1.0;
            for i in monomial_indices(m).into_iter().rev() {
                let b = bit(table.image(i));
                sign *= product_sign(mono, b).expect("conjugation table is a bijection");
                mono |= b;
            }
            *out.terms.entry(mono).or_insert_with(Complex64::zero) += c.conj() * sign;
        }
        out.canonicalize();
        Ok(out)
    }

    /// Left derivative `∂/∂θ_i`.
    pub fn left_derivative(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n as usize {
            return Err(Error::GeneratorOutOfRange { index: i, n: self.n });
        }
        let b = bit(i);
        let below = b - 1;
        let mut out = Self::zero(self.n);
        for (&m, &c) in &self.terms {
            if m & b != 0 {
                let sign = if (m & below).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
                out.terms.insert(m & !b, c * sign);
            }
        }
        Ok(out)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude of `self - other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && self.distance(other) <= tol
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}[{}]", self.n, self)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&m, &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            for i in monomial_indices(m) {
                write!(f, "·θ{}", i)?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&GrassmannElement> for &GrassmannElement {
            type Output = GrassmannElement;
            /// # Panics
            ///
            /// If the operands have different generator counts.
            fn $method(self, rhs: &GrassmannElement) -> GrassmannElement {
                self.$try(rhs).expect("mismatched generator counts")
            }
        }
        impl $trait<GrassmannElement> for GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: GrassmannElement) -> GrassmannElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GrassmannElement> for GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: &GrassmannElement) -> GrassmannElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<GrassmannElement> for &GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: GrassmannElement) -> GrassmannElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        GrassmannElement {
            n: self.n,
            terms: self.terms.iter().map(|(&m, &c)| (m, -c)).collect(),
        }
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn th(n: u32, idx: &[usize]) -> GrassmannElement {
        GrassmannElement::monomial(n, idx, 1.0).unwrap()
    }

    fn c(n: u32, v: f64) -> GrassmannElement {
        GrassmannElement::scalar(n, v)
    }

    #[test]
    fn addition_examples() {
        let t1 = th(4, &[1]);
        assert_eq!(&t1 + &t1, t1.scale(2.0));
        assert!((&t1 + &(-&t1)).is_zero());
        let x = &c(4, 1.0) + &th(4, &[1, 2]);
        let y = &c(4, 2.0) - &th(4, &[1, 2]);
        assert_eq!(&x + &y, c(4, 3.0));
    }

    #[test]
    fn mismatched_generator_counts() {
        let err = th(3, &[1]).try_add(&th(4, &[1])).unwrap_err();
        assert_eq!(err, Error::GeneratorMismatch(3, 4));
        assert!(th(3, &[1]).try_mul(&th(4, &[1])).is_err());
    }

    #[test]
    fn multiplication_signs() {
        let t1 = th(4, &[1]);
        let t2 = th(4, &[2]);
        assert_eq!(&t1 * &t2, th(4, &[1, 2]));
        assert_eq!(&t2 * &t1, -th(4, &[1, 2]));
        assert!((&t1 * &t1).is_zero());
        let lhs = (&c(4, 1.0) + &t1) * (&c(4, 1.0) + &t2);
        let rhs = c(4, 1.0) + t1.clone() + t2.clone() + th(4, &[1, 2]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_constructor_sorts_with_sign() {
        assert_eq!(th(5, &[3, 1, 2]), th(5, &[1, 2, 3]));
        assert_eq!(th(5, &[2, 1, 3]), -th(5, &[1, 2, 3]));
        assert!(th(5, &[2, 4, 2]).is_zero());
        assert!(GrassmannElement::monomial(3, &[4], 1.0).is_err());
        assert!(GrassmannElement::monomial(3, &[0], 1.0).is_err());
    }

    #[test]
    fn body_and_soul() {
        let x = &c(4, 3.0) + &th(4, &[1, 2]);
        assert_eq!(x.body(), Complex64::new(3.0, 0.0));
        assert_eq!(x.soul(), th(4, &[1, 2]));
        assert!((&x.soul() * &x.soul()).is_zero());
    }

    #[test]
    fn exp_examples() {
        let z = GrassmannElement::zero(4);
        assert_eq!(z.exp_even().unwrap(), c(4, 1.0));
        let x = &c(4, 0.7) + &th(4, &[1, 2]);
        let expect = (&c(4, 1.0) + &th(4, &[1, 2])).scale(0.7f64.exp());
        assert!(x.exp_even().unwrap().approx_eq(&expect, 1e-12));
        let y = &th(4, &[1, 2]) + &th(4, &[3, 4]);
        let expect = c(4, 1.0) + th(4, &[1, 2]) + th(4, &[3, 4]) + th(4, &[1, 2, 3, 4]);
        assert!(y.exp_even().unwrap().approx_eq(&expect, 1e-12));
        assert!(th(4, &[1]).exp_even().is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(c(4, 1.0).inv().unwrap(), c(4, 1.0));
        let x = &c(4, 1.0) + &th(4, &[1, 2]);
        assert_eq!(x.inv().unwrap(), &c(4, 1.0) - &th(4, &[1, 2]));
        let y = c(4, 2.0) + th(4, &[1, 2]) + th(4, &[3, 4]);
        assert!((&y.inv().unwrap() * &y).approx_eq(&c(4, 1.0), 1e-12));
        assert_eq!(
            th(4, &[1, 2]).inv().unwrap_err(),
            Error::NotInvertible("element has zero body")
        );
    }

    #[test]
    fn log_inverts_exp() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x = sample::random_even(&mut rng, 6, 4);
            let e = x.exp_even().unwrap();
            let back = e.log_even().unwrap();
            // principal branch on the body, the soul must match exactly
            assert!(back.soul().approx_eq(&x.soul(), 1e-9));
            assert!((back.exp_even().unwrap()).approx_eq(&e, 1e-9));
        }
    }

    #[test]
    fn conjugation_examples() {
        let i1 = GrassmannElement::scalar(4, Complex64::new(0.0, 1.0));
        let table = ConjugationTable::half_split(4);
        assert_eq!(
            i1.conjugate(&table).unwrap(),
            GrassmannElement::scalar(4, Complex64::new(0.0, -1.0))
        );
        // conj(θ1 θ2) = conj(θ2) conj(θ1) = θ4 θ3 = -θ3 θ4
        let lit = &th(4, &[4]) * &th(4, &[3]);
        assert_eq!(th(4, &[1, 2]).conjugate(&table).unwrap(), lit);
        assert_eq!(lit, -th(4, &[3, 4]));
        // self-conjugate table: a length-2 monomial flips sign
        let selfc = ConjugationTable::self_conjugate(4);
        assert_eq!(th(4, &[1, 2]).conjugate(&selfc).unwrap(), -th(4, &[1, 2]));
    }

    #[test]
    fn conjugation_table_validation() {
        assert!(ConjugationTable::from_pairing(&[3, 4, 1, 2]).is_ok());
        assert!(ConjugationTable::from_pairing(&[2, 3, 1]).is_err());
        assert!(ConjugationTable::from_pairing(&[5, 2]).is_err());
        let t = ConjugationTable::half_split(5);
        assert_eq!(t.images(), alloc::vec![3, 4, 1, 2, 5]);
    }

    #[test]
    fn conjugation_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let table = ConjugationTable::half_split(8);
        for _ in 0..100 {
            let x = sample::random_mixed(&mut rng, 8, 6);
            let back = x.conjugate(&table).unwrap().conjugate(&table).unwrap();
            assert!(back.approx_eq(&x, 1e-12));
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(th(3, &[1]).left_derivative(1).unwrap(), c(3, 1.0));
        assert_eq!(th(3, &[1, 2]).left_derivative(2).unwrap(), -th(3, &[1]));
        let x = th(3, &[1, 2]);
        let a = x.left_derivative(2).unwrap().left_derivative(1).unwrap();
        let b = x.left_derivative(1).unwrap().left_derivative(2).unwrap();
        assert!((&a + &b).is_zero());
        assert!(x.left_derivative(4).is_err());
    }

    #[test]
    fn parity_queries() {
        let mixed = &c(3, 1.0) + &th(3, &[1]);
        assert_eq!(mixed.parity(), Parity::Mixed);
        assert_eq!(th(3, &[1, 2, 3]).parity(), Parity::Odd);
        assert_eq!(GrassmannElement::zero(3).parity(), Parity::Even);
        assert!(GrassmannElement::zero(3).is_odd());
        assert_eq!(mixed.even_part(), c(3, 1.0));
        assert_eq!(mixed.odd_part(), th(3, &[1]));
    }

    #[test]
    fn from_terms_validates_and_prunes() {
        let x = GrassmannElement::from_terms(
            3,
            [(0b011, Complex64::new(1.0, 0.0)), (0b011, Complex64::new(-1.0, 1e-14))],
        )
        .unwrap();
        assert!(x.is_zero());
        assert!(GrassmannElement::from_terms(3, [(0b1000, Complex64::new(1.0, 0.0))]).is_err());
    }
}
