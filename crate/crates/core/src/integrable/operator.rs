use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::grassmann::{product_sign, Monomial, Parity};

/// Elementary odd operator on `ℂ[θ_1, …, θ_m]`, for a 1-based site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// Left multiplication by `θ_k`.
    Theta(usize),
    /// Left derivative `∂/∂θ_k`.
    Deriv(usize),
}

impl Factor {
    fn site(self) -> usize {
        match self {
            Factor::Theta(k) | Factor::Deriv(k) => k,
        }
    }

    /// Image of a basis monomial, with its sign.
    fn act(self, mono: Monomial) -> Option<(f64, Monomial)> {
        let b = 1u64 << (self.site() - 1);
        match self {
            Factor::Theta(_) => product_sign(b, mono).map(|s| (s, mono | b)),
            Factor::Deriv(_) if mono & b != 0 => product_sign(b, mono ^ b).map(|s| (s, mono ^ b)),
            Factor::Deriv(_) => None,
        }
    }
}

fn act_word(word: &[Factor], mono: Monomial) -> Option<(f64, Monomial)> {
    word.iter().rev().try_fold((1.0, mono), |(s, m), f| {
        f.act(m).map(|(s2, m2)| (s * s2, m2))
    })
}

/// Polynomial in the `θ_k` and `∂_k`, kept as a sum of words. Usable at any
/// size through [`Operator::apply`]; [`Operator::to_matrix`] materializes it.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    m: usize,
    terms: Vec<(Complex64, Vec<Factor>)>,
}

impl Operator {
    pub fn zero(m: usize) -> Self {
        Operator { m, terms: Vec::new() }
    }

    pub fn scalar(m: usize, c: impl Into<Complex64>) -> Self {
        Operator {
            m,
            terms: vec![(c.into(), Vec::new())],
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, 1.0)
    }

    pub fn word(m: usize, c: impl Into<Complex64>, factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            if f.site() == 0 || f.site() > m {
                return Err(Error::SiteOutOfRange {
                    index: f.site(),
                    sites: m,
                });
            }
        }
        Ok(Operator {
            m,
            terms: vec![(c.into(), factors)],
        })
    }

    pub fn theta(m: usize, k: usize) -> Result<Self> {
        Self::word(m, 1.0, vec![Factor::Theta(k)])
    }

    pub fn deriv(m: usize, k: usize) -> Result<Self> {
        Self::word(m, 1.0, vec![Factor::Deriv(k)])
    }

    pub fn num_sites(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Factor>)] {
        &self.terms
    }

    pub fn parity(&self) -> Parity {
        let mut it = self.terms.iter().filter(|(c, _)| *c != Complex64::new(0.0, 0.0));
        let Some((_, w)) = it.next() else {
            return Parity::Even;
        };
        let p = w.len() % 2;
        if it.all(|(_, w)| w.len() % 2 == p) {
            if p == 0 {
                Parity::Even
            } else {
                Parity::Odd
            }
        } else {
            Parity::Mixed
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.m != o.m {
            return Err(Error::InvalidInput(alloc::format!("operators on {} and {} sites", self.m, o.m)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Ok(Operator { m: self.m, terms })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.scale(-1.0))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, wa) in &self.terms {
            for (b, wb) in &o.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((a * b, w));
            }
        }
        Ok(Operator { m: self.m, terms })
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        Operator {
            m: self.m,
            terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect(),
        }
    }

    /// Apply to a vector in the monomial basis (index = bitmask).
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = 1usize << self.m;
        if v.len() != dim {
            return Err(Error::InvalidInput(alloc::format!("vector of length {} for dimension {dim}", v.len())));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (c, w) in &self.terms {
            for (mono, x) in v.iter().enumerate() {
                if x.norm_sqr() == 0.0 {
                    continue;
                }
                if let Some((s, img)) = act_word(w, mono as Monomial) {
                    out[img as usize] += c * x * s;
                }
            }
        }
        Ok(out)
    }

    /// Dense matrix in the monomial basis, for at most `max_sites` sites.
    pub fn to_matrix_capped(&self, max_sites: usize) -> Result<OperatorMatrix> {
        if self.m > max_sites {
            return Err(Error::InvalidInput(alloc::format!(
                "{} sites exceed the dense limit {max_sites}; use apply",
                self.m
            )));
        }
        let dim = 1usize << self.m;
        let mut data = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for (c, w) in &self.terms {
            for mono in 0..dim {
                if let Some((s, img)) = act_word(w, mono as Monomial) {
                    data[(img as usize, mono)] += c * s;
                }
            }
        }
        Ok(OperatorMatrix {
            m: self.m,
            parity: self.parity(),
            data,
        })
    }

    pub fn to_matrix(&self) -> Result<OperatorMatrix> {
        self.to_matrix_capped(super::MAX_DENSE_SITES)
    }
}

/// Dense operator on `ℂ[θ_1, …, θ_m]` with rows and columns indexed by
/// monomial bitmask, with its declared parity.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    m: usize,
    parity: Parity,
    data: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(m: usize, parity: Parity, data: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << m;
        if data.shape() != (dim, dim) {
            return Err(Error::InvalidInput(alloc::format!("matrix is not {dim} × {dim}")));
        }
        Ok(OperatorMatrix { m, parity, data })
    }

    pub fn num_sites(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    /// Whether the nonzero entries respect the declared parity: even
    /// operators keep the monomial degree parity, odd ones flip it.
    pub fn parity_consistent(&self) -> bool {
        let flip = match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
            Parity::Mixed => return false,
        };
        (0..self.dim()).all(|c| {
            (0..self.dim()).all(|r| {
                self.data[(r, c)].norm() == 0.0 || ((r.count_ones() + c.count_ones()) % 2) as usize == flip
            })
        })
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.m != o.m {
            return Err(Error::InvalidInput(alloc::format!("operators on {} and {} sites", self.m, o.m)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let parity = if self.parity == o.parity { self.parity } else { Parity::Mixed };
        Ok(OperatorMatrix {
            m: self.m,
            parity,
            data: &self.data + &o.data,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.scale(-1.0))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        OperatorMatrix {
            m: self.m,
            parity: self.parity,
            data: self.data.map(|x| x * c),
        }
    }

    /// Matrix product, skipping the zero entries of `o`; the operators
    /// here have a handful of nonzeros per column.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let dim = self.dim();
        let zero = Complex64::new(0.0, 0.0);
        let mut data = DMatrix::from_element(dim, dim, zero);
        for c in 0..dim {
            for k in 0..dim {
                let b = o.data[(k, c)];
                if b == zero {
                    continue;
                }
                for r in 0..dim {
                    let a = self.data[(r, k)];
                    if a != zero {
                        data[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(OperatorMatrix {
            m: self.m,
            parity: self.parity.product(o.parity),
            data,
        })
    }

    /// `AB − (−1)^{|A||B|} BA`.
    pub fn supercommutator(&self, o: &Self) -> Result<Self> {
        if self.parity == Parity::Mixed || o.parity == Parity::Mixed {
            return Err(Error::Parity {
                what: "supercommutator argument",
                expected: Parity::Even,
                found: Parity::Mixed,
            });
        }
        let ab = self.try_mul(o)?;
        let ba = o.try_mul(self)?;
        let both_odd = self.parity == Parity::Odd && o.parity == Parity::Odd;
        let mut out = if both_odd { ab.try_add(&ba)? } else { ab.try_sub(&ba)? };
        out.parity = self.parity.product(o.parity);
        Ok(out)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        Float::sqrt(self.data.iter().map(|x| x.norm_sqr()).sum::<f64>())
    }

    pub fn distance(&self, o: &Self) -> f64 {
        Float::sqrt(self.data.iter().zip(o.data.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_site_matrices() {
        let t = Operator::theta(1, 1).unwrap().to_matrix().unwrap();
        let d = Operator::deriv(1, 1).unwrap().to_matrix().unwrap();
        // basis (1, θ₁)
        assert_eq!(t.get(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(t.get(0, 1), Complex64::new(0.0, 0.0));
        assert_eq!(d.get(0, 1), Complex64::new(1.0, 0.0));
        let anti = t.supercommutator(&d).unwrap();
        assert!(anti.distance(&Operator::identity(1).to_matrix().unwrap()) < 1e-15);
    }

    #[test]
    fn canonical_anticommutation() {
        let m = 3;
        for i in 1..=m {
            for j in 1..=m {
                let ti = Operator::theta(m, i).unwrap().to_matrix().unwrap();
                let tj = Operator::theta(m, j).unwrap().to_matrix().unwrap();
                let dj = Operator::deriv(m, j).unwrap().to_matrix().unwrap();
                assert!(ti.supercommutator(&tj).unwrap().norm() < 1e-15);
                let expect = if i == j { (1u32 << m) as f64 } else { 0.0 };
                assert!((ti.supercommutator(&dj).unwrap().norm().powi(2) - expect).abs() < 1e-12);
                assert!(ti.parity_consistent());
            }
        }
    }

    #[test]
    fn apply_matches_matrix() {
        let m = 3;
        let op = Operator::theta(m, 2)
            .unwrap()
            .try_mul(&Operator::deriv(m, 3).unwrap())
            .unwrap()
            .try_add(&Operator::deriv(m, 1).unwrap().scale(Complex64::new(0.0, 2.0)))
            .unwrap();
        let mat = op.to_matrix().unwrap();
        let v: Vec<Complex64> = (0..8).map(|k| Complex64::new(k as f64, 1.0 - k as f64)).collect();
        let w = op.apply(&v).unwrap();
        for (r, wr) in w.iter().enumerate() {
            let expect: Complex64 = (0..8).map(|c| mat.get(r, c) * v[c]).sum();
            assert!((wr - expect).norm() < 1e-12);
        }
        assert_eq!(op.parity(), Parity::Mixed);
    }

    #[test]
    fn dense_limit_is_enforced() {
        assert!(Operator::identity(12).to_matrix().is_err());
        assert!(Operator::identity(12).apply(&vec![Complex64::new(1.0, 0.0); 1 << 12]).is_ok());
        assert!(Operator::theta(2, 3).is_err());
    }
}
