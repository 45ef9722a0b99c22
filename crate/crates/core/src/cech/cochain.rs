use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::linalg::MinNormSolver;

use super::nerve::{face, sort_with_sign, Nerve, Simplex};

/// An alternating `p`-cochain with values in Λ.
///
/// Values are stored on sorted simplices; other vertex orders pick up the
/// sign of the sorting permutation. Missing simplices read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    degree: usize,
    n: u32,
    values: BTreeMap<Simplex, GrassmannElement>,
}

impl Cochain {
    pub fn zero(degree: usize, n: u32) -> Self {
        Cochain {
            degree,
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> u32 {
        self.n
    }

    /// Value on `s` in the given vertex order.
    ///
    /// # Panics
    ///
    /// If `s` has the wrong length.
    pub fn get(&self, s: &[usize]) -> GrassmannElement {
        assert_eq!(s.len(), self.degree + 1, "simplex length does not match cochain degree");
        match sort_with_sign(s) {
            None => GrassmannElement::zero(self.n),
            Some((sorted, sign)) => match self.values.get(&sorted) {
                Some(v) if sign > 0.0 => v.clone(),
                Some(v) => -v,
                None => GrassmannElement::zero(self.n),
            },
        }
    }

    /// Set the value on `s` in the given vertex order.
    pub fn set(&mut self, s: &[usize], value: GrassmannElement) -> Result<()> {
        if s.len() != self.degree + 1 {
            return Err(Error::DegreeOverflow(s.len().saturating_sub(1)));
        }
        if value.num_generators() != self.n {
            return Err(Error::GeneratorMismatch(self.n, value.num_generators()));
        }
        let (sorted, sign) = sort_with_sign(s)
            .ok_or_else(|| Error::InvalidNerve(format!("simplex {s:?} repeats a vertex")))?;
        let v = if sign > 0.0 { value } else { -value };
        if v.is_zero() {
            self.values.remove(&sorted);
        } else {
            self.values.insert(sorted, v);
        }
        Ok(())
    }

    /// Build a cochain from a function on the sorted simplices of the nerve.
    pub fn from_fn(
        nerve: &Nerve,
        degree: usize,
        n: u32,
        mut f: impl FnMut(&[usize]) -> GrassmannElement,
    ) -> Result<Self> {
        if degree > 3 {
            return Err(Error::DegreeOverflow(degree));
        }
        let mut c = Cochain::zero(degree, n);
        for s in nerve.simplices(degree) {
            c.set(s, f(s))?;
        }
        Ok(c)
    }

    /// Stored (sorted simplex, value) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &GrassmannElement)> {
        self.values.iter()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().map(|v| v.max_abs()).fold(0.0, f64::max)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        if self.degree != o.degree {
            return Err(Error::DegreeOverflow(o.degree));
        }
        if self.n != o.n {
            return Err(Error::GeneratorMismatch(self.n, o.n));
        }
        let mut out = self.clone();
        for (s, v) in &o.values {
            let cur = out.values.remove(s).unwrap_or_else(|| GrassmannElement::zero(self.n));
            let d = &cur - v;
            if !d.is_zero() {
                out.values.insert(s.clone(), d);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.try_sub(&o.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        Cochain {
            degree: self.degree,
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(s, v)| (s.clone(), v.scale(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Largest coefficient of `self − o`.
    pub fn distance(&self, o: &Self) -> f64 {
        self.try_sub(o).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
    }
}

/// Alternating-sum coboundary `(δc)(s) = Σ_k (−1)^k c(s without vertex k)`.
pub fn coboundary(nerve: &Nerve, c: &Cochain) -> Result<Cochain> {
    if c.degree >= 3 {
        return Err(Error::DegreeOverflow(c.degree));
    }
    Cochain::from_fn(nerve, c.degree + 1, c.n, |s| {
        let mut acc = GrassmannElement::zero(c.n);
        for k in 0..s.len() {
            let f = c.get(&face(s, k));
            acc = if k % 2 == 0 { &acc + &f } else { &acc - &f };
        }
        acc
    })
}

/// Cup product, front face of `u` times back face of `v`.
pub fn cup_product(nerve: &Nerve, u: &Cochain, v: &Cochain) -> Result<Cochain> {
    let (p, q) = (u.degree, v.degree);
    if p + q > 2 {
        return Err(Error::DegreeOverflow(p + q));
    }
    if u.n != v.n {
        return Err(Error::GeneratorMismatch(u.n, v.n));
    }
    Cochain::from_fn(nerve, p + q, u.n, |s| u.get(&s[..=p]) * v.get(&s[p..]))
}

/// Result of a coboundary solve.
#[derive(Debug, Clone, PartialEq)]
pub struct CoboundarySolution {
    /// Minimum-norm `f` with `δf = c`.
    pub cochain: Cochain,
    /// Largest coefficient of `δf − c`.
    pub residual: f64,
    /// Dimension over Λ of the affine space of solutions.
    pub solution_dim: usize,
}

/// Solve `δf = c` for a `(p−1)`-cochain `f`, returning the minimum-norm
/// solution. An inconsistent system means `[c] ≠ 0` in `H^p` of the nerve.
pub fn solve_coboundary(nerve: &Nerve, c: &Cochain, tol: f64) -> Result<CoboundarySolution> {
    let p = c.degree;
    if p == 0 || p > 3 {
        return Err(Error::DegreeOverflow(p));
    }
    let solver = MinNormSolver::new(nerve.coboundary_matrix(p - 1));
    let rhs: Vec<GrassmannElement> = nerve.simplices(p).iter().map(|s| c.get(s)).collect();
    let sol = solver.solve(&rhs, c.n);
    if sol.residual > tol {
        return Err(Error::Obstruction {
            residual: sol.residual,
        });
    }
    let mut f = Cochain::zero(p - 1, c.n);
    for (s, v) in nerve.simplices(p - 1).iter().zip(sol.x) {
        f.set(s, v)?;
    }
    Ok(CoboundarySolution {
        cochain: f,
        residual: sol.residual,
        solution_dim: solver.nullity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const N: u32 = 6;

    fn random_cochain(rng: &mut ChaCha8Rng, nerve: &Nerve, p: usize) -> Cochain {
        Cochain::from_fn(nerve, p, N, |_| sample::random_homogeneous(rng, N, 3)).unwrap()
    }

    #[test]
    fn alternating_storage() {
        let mut c = Cochain::zero(1, N);
        let t = GrassmannElement::generator(N, 1).unwrap();
        c.set(&[2, 1], t.clone()).unwrap();
        assert_eq!(c.get(&[1, 2]), -t.clone());
        assert_eq!(c.get(&[2, 1]), t);
        assert!(c.get(&[1, 1]).is_zero());
    }

    #[test]
    fn coboundary_examples() {
        let nerve = Nerve::tetrahedron();
        let one = GrassmannElement::one(N);
        let constant = Cochain::from_fn(&nerve, 0, N, |_| one.clone()).unwrap();
        assert_eq!(coboundary(&nerve, &constant).unwrap().max_abs(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_cochain(&mut rng, &nerve, 0);
        let df = coboundary(&nerve, &f).unwrap();
        for e in nerve.simplices(1) {
            assert_eq!(df.get(e), f.get(&[e[1]]) - f.get(&[e[0]]));
        }
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let nerve = Nerve::tetrahedron();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for p in 0..2 {
            for _ in 0..20 {
                let c = random_cochain(&mut rng, &nerve, p);
                let dd = coboundary(&nerve, &coboundary(&nerve, &c).unwrap()).unwrap();
                assert!(dd.max_abs() < 1e-12);
            }
        }
        let c = random_cochain(&mut rng, &nerve, 3);
        assert_eq!(coboundary(&nerve, &c).unwrap_err(), Error::DegreeOverflow(3));
    }

    #[test]
    fn cup_examples() {
        let nerve = Nerve::triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_cochain(&mut rng, &nerve, 0);
        let v = random_cochain(&mut rng, &nerve, 1);
        let uv = cup_product(&nerve, &u, &v).unwrap();
        for e in nerve.simplices(1) {
            assert_eq!(uv.get(e), u.get(&[e[0]]) * v.get(e));
        }
        let z = Cochain::zero(1, N);
        assert_eq!(cup_product(&nerve, &u, &z).unwrap().max_abs(), 0.0);
        assert!(cup_product(&nerve, &v, &random_cochain(&mut rng, &nerve, 2)).is_err());
    }

    #[test]
    fn cup_leibniz() {
        let nerve = Nerve::tetrahedron();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for (p, q) in [(0, 0), (0, 1), (1, 0)] {
            for _ in 0..20 {
                let u = random_cochain(&mut rng, &nerve, p);
                let v = random_cochain(&mut rng, &nerve, q);
                let lhs = coboundary(&nerve, &cup_product(&nerve, &u, &v).unwrap()).unwrap();
                let a = cup_product(&nerve, &coboundary(&nerve, &u).unwrap(), &v).unwrap();
                let b = cup_product(&nerve, &u, &coboundary(&nerve, &v).unwrap()).unwrap();
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = a.try_add(&b.scale(sign)).unwrap();
                assert!(lhs.distance(&rhs) < 1e-12);
            }
        }
    }

    #[test]
    fn solve_examples() {
        let nerve = Nerve::tetrahedron();
        let zero = Cochain::zero(2, N);
        let sol = solve_coboundary(&nerve, &zero, 1e-9).unwrap();
        assert_eq!(sol.cochain.max_abs(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [1, 2] {
            let f0 = random_cochain(&mut rng, &nerve, p - 1);
            let g = coboundary(&nerve, &f0).unwrap();
            let sol = solve_coboundary(&nerve, &g, 1e-9).unwrap();
            let back = coboundary(&nerve, &sol.cochain).unwrap();
            assert!(back.distance(&g) < 1e-9);
        }
    }

    #[test]
    fn sphere_obstruction() {
        // on the boundary of a tetrahedron a 2-cochain with nonzero total
        // alternating sum is not a coboundary
        let nerve = Nerve::tetrahedron_boundary();
        let mut g = Cochain::zero(2, N);
        g.set(&[0, 1, 2], GrassmannElement::one(N)).unwrap();
        assert!(matches!(
            solve_coboundary(&nerve, &g, 1e-9),
            Err(Error::Obstruction { .. })
        ));
        let mut ok = Cochain::zero(2, N);
        ok.set(&[0, 1, 2], GrassmannElement::one(N)).unwrap();
        ok.set(&[0, 1, 3], GrassmannElement::one(N)).unwrap();
        let sol = solve_coboundary(&nerve, &ok, 1e-9).unwrap();
        assert!(coboundary(&nerve, &sol.cochain).unwrap().distance(&ok) < 1e-9);
    }
}
