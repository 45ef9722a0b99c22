use alloc::collections::BTreeMap;
use alloc::format;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{ConjugationTable, GrassmannElement, Parity};

/// Default cap on the degree in each of `z` and `z̄`.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

/// A polynomial in the formal variables `z`, `z̄` with coefficients in Λ,
/// all of one declared parity.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalFunction {
    n: u32,
    parity: Parity,
    max_degree: u32,
    // (deg z, deg z̄) -> coefficient
    terms: BTreeMap<(u32, u32), GrassmannElement>,
}

impl LocalFunction {
    /// The zero function of the given parity.
    pub fn zero(n: u32, parity: Parity) -> Self {
        assert!(parity != Parity::Mixed, "a local function has a definite parity");
        LocalFunction {
            n,
            parity,
            max_degree: DEFAULT_MAX_DEGREE,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff · z^p z̄^q`, with the parity taken from `coeff` (zero counts
    /// as even).
    pub fn monomial(p: u32, q: u32, coeff: GrassmannElement) -> Result<Self> {
        let parity = coeff.parity();
        if parity == Parity::Mixed {
            return Err(Error::Parity {
                what: "local function coefficient",
                expected: Parity::Even,
                found: Parity::Mixed,
            });
        }
        let mut f = LocalFunction::zero(coeff.num_generators(), parity);
        f.insert(p, q, coeff)?;
        Ok(f)
    }

    pub fn constant(c: GrassmannElement) -> Result<Self> {
        Self::monomial(0, 0, c)
    }

    /// Build from `(p, q, coeff)` triples; repeated degrees are summed.
    pub fn from_terms<I>(n: u32, parity: Parity, max_degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32, GrassmannElement)>,
    {
        if parity == Parity::Mixed {
            return Err(Error::InvalidInput("a local function has a definite parity".into()));
        }
        let mut f = LocalFunction::zero(n, parity).with_max_degree(max_degree)?;
        for (p, q, c) in terms {
            f.insert(p, q, c)?;
        }
        Ok(f)
    }

    fn insert(&mut self, p: u32, q: u32, c: GrassmannElement) -> Result<()> {
        if c.num_generators() != self.n {
            return Err(Error::GeneratorMismatch(self.n, c.num_generators()));
        }
        c.expect_parity(self.parity, "local function coefficient")?;
        if p > self.max_degree || q > self.max_degree {
            if c.is_zero() {
                return Ok(());
            }
            return Err(Error::PolynomialOverflow(format!(
                "term z^{p} z̄^{q} exceeds the degree cap {}",
                self.max_degree
            )));
        }
        let cur = self.terms.remove(&(p, q)).unwrap_or_else(|| GrassmannElement::zero(self.n));
        let sum = &cur + &c;
        if !sum.is_zero() {
            self.terms.insert((p, q), sum);
        }
        Ok(())
    }

    /// Change the degree cap; fails if an existing term would not fit.
    pub fn with_max_degree(mut self, max_degree: u32) -> Result<Self> {
        if let Some(&(p, q)) = self.terms.keys().find(|&&(p, q)| p > max_degree || q > max_degree) {
            return Err(Error::PolynomialOverflow(format!(
                "term z^{p} z̄^{q} exceeds the degree cap {max_degree}"
            )));
        }
        self.max_degree = max_degree;
        Ok(self)
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn num_generators(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `((p, q), coeff)` in increasing degree order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &GrassmannElement)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, p: u32, q: u32) -> GrassmannElement {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(|| GrassmannElement::zero(self.n))
    }

    /// No `z̄` dependence.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|&(_, q)| q == 0)
    }

    /// No `z` dependence.
    pub fn is_antiholomorphic(&self) -> bool {
        self.terms.keys().all(|&(p, _)| p == 0)
    }

    /// Largest coefficient magnitude over all terms.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.max_abs()).fold(0.0, f64::max)
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::GeneratorMismatch(self.n, o.n));
        }
        Ok(())
    }

    fn with_terms(&self, parity: Parity, max_degree: u32) -> LocalFunction {
        LocalFunction {
            n: self.n,
            parity,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let parity = self.sum_parity(o)?;
        let mut out = self.clone();
        out.parity = parity;
        out.max_degree = self.max_degree.max(o.max_degree);
        for (&(p, q), c) in &o.terms {
            out.insert(p, q, c.clone())?;
        }
        Ok(out)
    }

    fn sum_parity(&self, o: &Self) -> Result<Parity> {
        // zero is compatible with either parity
        if self.is_zero() {
            Ok(o.parity)
        } else if o.is_zero() || self.parity == o.parity {
            Ok(self.parity)
        } else {
            Err(Error::Parity {
                what: "sum of local functions",
                expected: self.parity,
                found: o.parity,
            })
        }
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.scale(-1.0))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut out = self.with_terms(self.parity.product(o.parity), self.max_degree.max(o.max_degree));
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &o.terms {
                let c = c1 * c2;
                if !c.is_zero() {
                    out.insert(p1 + p2, q1 + q2, c)?;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(&k, v)| (k, v.scale(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// `∂/∂z`.
    pub fn d_z(&self) -> Self {
        let mut out = self.with_terms(self.parity, self.max_degree);
        for (&(p, q), c) in &self.terms {
            if p > 0 {
                out.terms.insert((p - 1, q), c.scale(p as f64));
            }
        }
        out
    }

    /// `∂/∂z̄`.
    pub fn d_zbar(&self) -> Self {
        let mut out = self.with_terms(self.parity, self.max_degree);
        for (&(p, q), c) in &self.terms {
            if q > 0 {
                out.terms.insert((p, q - 1), c.scale(q as f64));
            }
        }
        out
    }

    /// Primitive in `z` with no `z`-independent part.
    pub fn antiderivative_z(&self) -> Result<Self> {
        let mut out = self.with_terms(self.parity, self.max_degree);
        for (&(p, q), c) in &self.terms {
            out.insert(p + 1, q, c.scale(1.0 / (p + 1) as f64))?;
        }
        Ok(out)
    }

    /// Swap `z ↔ z̄` and conjugate coefficients through `table`.
    pub fn conjugate_fn(&self, table: &ConjugationTable) -> Result<Self> {
        let mut out = self.with_terms(self.parity, self.max_degree);
        for (&(p, q), c) in &self.terms {
            out.terms.insert((q, p), c.conjugate(table)?);
        }
        Ok(out)
    }

    /// Value at a point `z` (with `z̄` the complex conjugate).
    pub fn eval(&self, z: Complex64) -> GrassmannElement {
        let zb = z.conj();
        let mut acc = GrassmannElement::zero(self.n);
        for (&(p, q), c) in &self.terms {
            acc = &acc + &c.scale(z.powu(p) * zb.powu(q));
        }
        acc
    }
}

impl fmt::Display for LocalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(p, q), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·z^{p}·z̄^{q}")?;
        }
        Ok(())
    }
}

/// A 2×2 matrix of local functions `[[a, β], [γ, d]]` with even diagonal
/// and odd off-diagonal entries.
#[derive(Clone, PartialEq, Debug)]
pub struct LocalMatrix {
    pub a: LocalFunction,
    pub beta: LocalFunction,
    pub gamma: LocalFunction,
    pub d: LocalFunction,
}

impl LocalMatrix {
    pub fn new(a: LocalFunction, beta: LocalFunction, gamma: LocalFunction, d: LocalFunction) -> Result<Self> {
        let n = a.num_generators();
        for x in [&beta, &gamma, &d] {
            if x.num_generators() != n {
                return Err(Error::GeneratorMismatch(n, x.num_generators()));
            }
        }
        for (x, want, what) in [
            (&a, Parity::Even, "local matrix entry a"),
            (&d, Parity::Even, "local matrix entry d"),
            (&beta, Parity::Odd, "local matrix entry beta"),
            (&gamma, Parity::Odd, "local matrix entry gamma"),
        ] {
            if x.parity() != want && !x.is_zero() {
                return Err(Error::Parity {
                    what,
                    expected: want,
                    found: x.parity(),
                });
            }
        }
        Ok(LocalMatrix { a, beta, gamma, d })
    }

    pub fn zero(n: u32) -> Self {
        LocalMatrix {
            a: LocalFunction::zero(n, Parity::Even),
            beta: LocalFunction::zero(n, Parity::Odd),
            gamma: LocalFunction::zero(n, Parity::Odd),
            d: LocalFunction::zero(n, Parity::Even),
        }
    }

    pub fn num_generators(&self) -> u32 {
        self.a.num_generators()
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let e = |x: &LocalFunction, y: &LocalFunction, u: &LocalFunction, v: &LocalFunction| -> Result<LocalFunction> {
            x.try_mul(y)?.try_add(&u.try_mul(v)?)
        };
        Ok(LocalMatrix {
            a: e(&self.a, &o.a, &self.beta, &o.gamma)?,
            beta: e(&self.a, &o.beta, &self.beta, &o.d)?,
            gamma: e(&self.gamma, &o.a, &self.d, &o.gamma)?,
            d: e(&self.gamma, &o.beta, &self.d, &o.d)?,
        })
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        Ok(LocalMatrix {
            a: self.a.try_add(&o.a)?,
            beta: self.beta.try_add(&o.beta)?,
            gamma: self.gamma.try_add(&o.gamma)?,
            d: self.d.try_add(&o.d)?,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.map(|x| x.scale(-1.0)))
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    pub fn map(&self, f: impl Fn(&LocalFunction) -> LocalFunction) -> Self {
        LocalMatrix {
            a: f(&self.a),
            beta: f(&self.beta),
            gamma: f(&self.gamma),
            d: f(&self.d),
        }
    }

    pub fn try_map(&self, f: impl Fn(&LocalFunction) -> Result<LocalFunction>) -> Result<Self> {
        Ok(LocalMatrix {
            a: f(&self.a)?,
            beta: f(&self.beta)?,
            gamma: f(&self.gamma)?,
            d: f(&self.d)?,
        })
    }

    pub fn d_z(&self) -> Self {
        self.map(|x| x.d_z())
    }

    pub fn d_zbar(&self) -> Self {
        self.map(|x| x.d_zbar())
    }

    /// Conjugate transpose `[[ā, γ̄], [β̄, d̄]]`.
    pub fn dagger(&self, table: &ConjugationTable) -> Result<Self> {
        Ok(LocalMatrix {
            a: self.a.conjugate_fn(table)?,
            beta: self.gamma.conjugate_fn(table)?,
            gamma: self.beta.conjugate_fn(table)?,
            d: self.d.conjugate_fn(table)?,
        })
    }

    /// Largest coefficient over all entries.
    pub fn max_abs(&self) -> f64 {
        [&self.a, &self.beta, &self.gamma, &self.d]
            .iter()
            .map(|x| x.max_abs())
            .fold(0.0, f64::max)
    }

    /// Largest coefficient per entry, in the order `a, beta, gamma, d`.
    pub fn entry_max_abs(&self) -> [f64; 4] {
        [self.a.max_abs(), self.beta.max_abs(), self.gamma.max_abs(), self.d.max_abs()]
    }

    pub fn with_max_degree(&self, k: u32) -> Result<Self> {
        self.try_map(|x| x.clone().with_max_degree(k))
    }
}

impl LocalFunction {
    /// Inverse of an even function `c + x` with `c` a nonzero constant and
    /// `x` nilpotent (every coefficient of `x` has zero body). The geometric
    /// series terminates.
    pub fn try_inv(&self) -> Result<Self> {
        if self.parity != Parity::Even {
            return Err(Error::Parity {
                what: "inverse of a local function",
                expected: Parity::Even,
                found: self.parity,
            });
        }
        let c = self.coeff(0, 0).body();
        if c.norm() < crate::grassmann::CANON_EPS {
            return Err(Error::NotInvertible("local function with zero constant body"));
        }
        let mut x = self.scale(-c.inv());
        x.insert(0, 0, GrassmannElement::one(self.n))?;
        if x.terms.values().any(|v| v.body().norm() >= crate::grassmann::CANON_EPS) {
            return Err(Error::NotInvertible("local function with non-constant body"));
        }
        // (c(1 − x))⁻¹ = c⁻¹ Σ x^k
        let mut sum = LocalFunction::constant(GrassmannElement::one(self.n))?.with_max_degree(self.max_degree)?;
        let mut power = sum.clone();
        for _ in 0..=self.n {
            power = power.try_mul(&x)?;
            if power.is_zero() {
                break;
            }
            sum = sum.try_add(&power)?;
        }
        Ok(sum.scale(c.inv()))
    }
}

impl LocalMatrix {
    /// Inverse through Schur complements, for matrices whose diagonal
    /// entries are invertible in the sense of [`LocalFunction::try_inv`].
    pub fn try_inverse(&self) -> Result<Self> {
        let ai = self.a.try_inv()?;
        let di = self.d.try_inv()?;
        let sa = self.a.try_sub(&self.beta.try_mul(&di)?.try_mul(&self.gamma)?)?.try_inv()?;
        let sd = self.d.try_sub(&self.gamma.try_mul(&ai)?.try_mul(&self.beta)?)?.try_inv()?;
        Ok(LocalMatrix {
            beta: ai.try_mul(&self.beta)?.try_mul(&sd)?.scale(-1.0),
            gamma: di.try_mul(&self.gamma)?.try_mul(&sa)?.scale(-1.0),
            a: sa,
            d: sd,
        })
    }
}
