use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::report::Report;
use crate::sample;
use crate::supergroup::{coords_product, reduce_mod_2pi_i, GroupCoords};

use super::cochain::Cochain;
use super::nerve::{sort_with_sign, Nerve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// SL(1|1): every `s_ij` vanishes.
    Sl,
    /// GL(1|1) with twists `s_ij`.
    Gl,
}

/// Transition functions `g̃_ij = g̃(h_ij, s_ij, α_ij, β_ij)` on the edges of
/// a nerve, together with the integers `n_ijk` fixing the branch of `h` on
/// triple overlaps.
///
/// Only the orientation `i < j` is stored; the reverse orientation is the
/// group inverse, which is exactly the antisymmetry rule
/// `h_ji = −h_ij`, `s_ji = −s_ij`, `α_ji = −e^{s_ij}α_ij`, `β_ji = −e^{−s_ij}β_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionData {
    n: u32,
    mode: Mode,
    edges: BTreeMap<(usize, usize), GroupCoords>,
    twists: BTreeMap<(usize, usize, usize), i64>,
}

impl TransitionData {
    pub fn new(n: u32, mode: Mode) -> Self {
        TransitionData {
            n,
            mode,
            edges: BTreeMap::new(),
            twists: BTreeMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn num_generators(&self) -> u32 {
        self.n
    }

    /// Set `g̃_ij`; the reverse orientation follows.
    pub fn set_edge(&mut self, i: usize, j: usize, c: GroupCoords) -> Result<()> {
        if i == j {
            return Err(Error::InvalidNerve(format!("edge ({i}, {j}) is degenerate")));
        }
        if c.num_generators() != self.n {
            return Err(Error::GeneratorMismatch(self.n, c.num_generators()));
        }
        if self.mode == Mode::Sl && !c.is_sl() {
            return Err(Error::InvalidInput(format!(
                "edge ({i}, {j}) has nonzero s in SL mode"
            )));
        }
        if i < j {
            self.edges.insert((i, j), c);
        } else {
            self.edges.insert((j, i), c.inverse());
        }
        Ok(())
    }

    /// Set `n_ijk`; the value is alternating in the vertex order.
    pub fn set_twist(&mut self, i: usize, j: usize, k: usize, n: i64) -> Result<()> {
        let (s, sign) = sort_with_sign(&[i, j, k])
            .ok_or_else(|| Error::InvalidNerve(format!("triangle ({i}, {j}, {k}) repeats a vertex")))?;
        let v = if sign > 0.0 { n } else { -n };
        if v == 0 {
            self.twists.remove(&(s[0], s[1], s[2]));
        } else {
            self.twists.insert((s[0], s[1], s[2]), v);
        }
        Ok(())
    }

    pub fn twist(&self, i: usize, j: usize, k: usize) -> i64 {
        match sort_with_sign(&[i, j, k]) {
            None => 0,
            Some((s, sign)) => {
                let v = self.twists.get(&(s[0], s[1], s[2])).copied().unwrap_or(0);
                if sign > 0.0 {
                    v
                } else {
                    -v
                }
            }
        }
    }

    /// Coordinates of `g̃_ij` in either orientation.
    pub fn coords(&self, i: usize, j: usize) -> Result<GroupCoords> {
        if i < j {
            self.edges.get(&(i, j)).cloned()
        } else {
            self.edges.get(&(j, i)).map(|c| c.inverse())
        }
        .ok_or_else(|| Error::InvalidInput(format!("no transition data on edge ({i}, {j})")))
    }

    /// Stored edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &GroupCoords)> {
        self.edges.iter()
    }

    pub fn twists(&self) -> impl Iterator<Item = (&(usize, usize, usize), &i64)> {
        self.twists.iter()
    }

    /// Check that every edge of the nerve carries data.
    pub fn validate(&self, nerve: &Nerve) -> Result<()> {
        for e in nerve.simplices(1) {
            self.coords(e[0], e[1])?;
        }
        Ok(())
    }

    /// Build cocycle data by choosing free edges with `free` and forcing the
    /// remaining ones through the triangle identities.
    ///
    /// Edges are visited in lexicographic order; whenever a filled triangle
    /// has exactly two known edges the third is derived, otherwise the next
    /// unknown edge is free. Fails if a triangle ends up inconsistent.
    pub fn cocycle_from(
        nerve: &Nerve,
        n: u32,
        mode: Mode,
        mut free: impl FnMut(usize, usize) -> GroupCoords,
    ) -> Result<Self> {
        let mut data = TransitionData::new(n, mode);
        let edges = nerve.simplices(1);
        let known = |d: &TransitionData, i: usize, j: usize| d.edges.contains_key(&(i.min(j), i.max(j)));
        loop {
            let mut progressed = false;
            for t in nerve.simplices(2) {
                let (i, j, k) = (t[0], t[1], t[2]);
                let have = [known(&data, i, j), known(&data, j, k), known(&data, i, k)];
                if have.iter().filter(|&&b| b).count() != 2 {
                    continue;
                }
                // g_ik = g_ij g_jk
                if !have[2] {
                    let c = coords_product(&data.coords(i, j)?, &data.coords(j, k)?);
                    data.set_edge(i, k, c)?;
                } else if !have[0] {
                    let c = coords_product(&data.coords(i, k)?, &data.coords(k, j)?);
                    data.set_edge(i, j, c)?;
                } else {
                    let c = coords_product(&data.coords(j, i)?, &data.coords(i, k)?);
                    data.set_edge(j, k, c)?;
                }
                progressed = true;
            }
            if progressed {
                continue;
            }
            match edges.iter().find(|e| !known(&data, e[0], e[1])) {
                Some(e) => {
                    let c = free(e[0], e[1]);
                    data.set_edge(e[0], e[1], c)?;
                }
                None => break,
            }
        }
        let worst = cocycle_residuals(nerve, &data)?
            .iter()
            .map(|r| r.max_abs(false))
            .fold(0.0, f64::max);
        if worst > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "free choices are inconsistent on this nerve (residual {worst:.3e})"
            )));
        }
        Ok(data)
    }

    /// Random cocycle data with all twists `n_ijk = 0`.
    pub fn random_cocycle<R: Rng + ?Sized>(nerve: &Nerve, rng: &mut R, n: u32, mode: Mode) -> Result<Self> {
        Self::cocycle_from(nerve, n, mode, |_, _| sample::random_coords(rng, n, mode == Mode::Gl))
    }
}

/// Defects of the cocycle identities on one sorted triangle `(i, j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleResidual {
    pub simplex: [usize; 3],
    /// `α_ik − α_ij − e^{−s_ij}α_jk`
    pub alpha: GrassmannElement,
    /// `β_ik − β_ij − e^{s_ij}β_jk`
    pub beta: GrassmannElement,
    /// `s_ik − s_ij − s_jk`
    pub s: GrassmannElement,
    /// `h_ik − h_ij − h_jk − ½(α_ij e^{s_ij} β_jk − e^{−s_ij} α_jk β_ij) − 2πi n_ijk`
    pub h: GrassmannElement,
}

impl CocycleResidual {
    fn h_value(&self, h_mod_2pi: bool) -> f64 {
        if h_mod_2pi {
            reduce_mod_2pi_i(&self.h).max_abs()
        } else {
            self.h.max_abs()
        }
    }

    pub fn max_abs(&self, h_mod_2pi: bool) -> f64 {
        [self.alpha.max_abs(), self.beta.max_abs(), self.s.max_abs(), self.h_value(h_mod_2pi)]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn two_pi_i(n: u32, k: i64) -> GrassmannElement {
    GrassmannElement::scalar(n, Complex64::new(0.0, 2.0 * PI * k as f64))
}

/// Per-triangle defects of the twisted GL(1|1) cocycle identities.
pub fn cocycle_residuals(nerve: &Nerve, data: &TransitionData) -> Result<Vec<CocycleResidual>> {
    let n = data.n;
    let mut out = Vec::new();
    for t in nerve.simplices(2) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let (ij, jk, ik) = (data.coords(i, j)?, data.coords(j, k)?, data.coords(i, k)?);
        let p = coords_product(&ij, &jk);
        out.push(CocycleResidual {
            simplex: [i, j, k],
            alpha: &ik.alpha - &p.alpha,
            beta: &ik.beta - &p.beta,
            s: &ik.s - &p.s,
            h: &ik.h - &p.h - two_pi_i(n, data.twist(i, j, k)),
        });
    }
    Ok(out)
}

/// Check the untwisted SL(1|1) identities
/// `α_ik = α_ij + α_jk`, `β_ik = β_ij + β_jk` and
/// `h_ik = h_ij + h_jk + ½(α_ij β_jk − α_jk β_ij) + 2πi n_ijk`
/// on every triangle. Nonzero `s` on any edge is reported under `"s"`.
pub fn check_sl_cocycle(nerve: &Nerve, data: &TransitionData, tol: f64, h_mod_2pi: bool) -> Result<Report> {
    let n = data.n;
    let mut report = Report::new();
    for e in nerve.simplices(1) {
        report.record("s", data.coords(e[0], e[1])?.s.max_abs(), tol);
    }
    for t in nerve.simplices(2) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let (ij, jk, ik) = (data.coords(i, j)?, data.coords(j, k)?, data.coords(i, k)?);
        let ra = &ik.alpha - &ij.alpha - &jk.alpha;
        let rb = &ik.beta - &ij.beta - &jk.beta;
        let quad = (&ij.alpha * &jk.beta - &jk.alpha * &ij.beta).scale(0.5);
        let mut rh = &ik.h - &ij.h - &jk.h - quad - two_pi_i(n, data.twist(i, j, k));
        if h_mod_2pi {
            rh = reduce_mod_2pi_i(&rh);
        }
        report.record("alpha", ra.max_abs(), tol);
        report.record("beta", rb.max_abs(), tol);
        report.record("h", rh.max_abs(), tol);
    }
    Ok(report)
}

/// Check the twisted GL(1|1) identities on every triangle, plus the
/// multiplicative cocycle `e^{s_ik} = e^{s_ij} e^{s_jk}` of the
/// superdeterminant under `"sdet"`.
pub fn check_gl_cocycle(nerve: &Nerve, data: &TransitionData, tol: f64, h_mod_2pi: bool) -> Result<Report> {
    let mut report = Report::new();
    for r in cocycle_residuals(nerve, data)? {
        report.record("alpha", r.alpha.max_abs(), tol);
        report.record("beta", r.beta.max_abs(), tol);
        report.record("s", r.s.max_abs(), tol);
        report.record("h", r.h_value(h_mod_2pi), tol);
        let [i, j, k] = r.simplex;
        let e = |x: &GrassmannElement| x.exp_even().expect("s is even");
        let (sij, sjk, sik) = (data.coords(i, j)?.s, data.coords(j, k)?.s, data.coords(i, k)?.s);
        report.record("sdet", e(&sik).distance(&(e(&sij) * e(&sjk))), tol);
    }
    Ok(report)
}

/// `½(α_ij e^{s_ij} β_jk − e^{−s_ij} α_jk β_ij)` for any vertex order.
pub fn two_cocycle_value(data: &TransitionData, i: usize, j: usize, k: usize) -> Result<GrassmannElement> {
    let (ij, jk) = (data.coords(i, j)?, data.coords(j, k)?);
    let es = ij.s.exp_even()?;
    let ems = (-&ij.s).exp_even()?;
    Ok((&ij.alpha * &es * &jk.beta - &ems * &jk.alpha * &ij.beta).scale(0.5))
}

/// The quadratic 2-cochain `g_ijk` of cocycle data. The data must satisfy
/// the `α`, `β` and `s` identities; `h` does not enter.
pub fn two_cocycle_g(nerve: &Nerve, data: &TransitionData, tol: f64) -> Result<Cochain> {
    let report = check_gl_cocycle(nerve, data, tol, true)?;
    for name in ["alpha", "beta", "s"] {
        if let Some(c) = report.get(name) {
            if !c.passed {
                return Err(Error::InvalidInput(format!(
                    "transition data fails the {name} cocycle identity (residual {:.3e})",
                    c.max_residual
                )));
            }
        }
    }
    let mut g = Cochain::zero(2, data.n);
    for t in nerve.simplices(2) {
        g.set(t, two_cocycle_value(data, t[0], t[1], t[2])?)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::coboundary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const N: u32 = 8;

    fn th(i: usize) -> GrassmannElement {
        GrassmannElement::generator(N, i).unwrap()
    }

    fn zero() -> GrassmannElement {
        GrassmannElement::zero(N)
    }

    fn sl(h: GrassmannElement, a: GrassmannElement, b: GrassmannElement) -> GroupCoords {
        GroupCoords::sl(h, a, b).unwrap()
    }

    fn triangle_alpha_data(a13: GrassmannElement) -> TransitionData {
        let mut d = TransitionData::new(N, Mode::Sl);
        d.set_edge(0, 1, sl(zero(), th(1), zero())).unwrap();
        d.set_edge(1, 2, sl(zero(), th(2), zero())).unwrap();
        d.set_edge(0, 2, sl(zero(), a13, zero())).unwrap();
        d
    }

    #[test]
    fn zero_data_passes() {
        let nerve = Nerve::tetrahedron();
        let d = TransitionData::cocycle_from(&nerve, N, Mode::Sl, |_, _| GroupCoords::identity(N)).unwrap();
        let r = check_sl_cocycle(&nerve, &d, 1e-9, false).unwrap();
        assert!(r.passed());
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn additive_alpha_example() {
        let nerve = Nerve::triangle();
        let good = triangle_alpha_data(th(1) + th(2));
        assert!(check_sl_cocycle(&nerve, &good, 1e-9, false).unwrap().passed());
        let bad = triangle_alpha_data(th(1));
        let r = check_sl_cocycle(&nerve, &bad, 1e-9, false).unwrap();
        assert_eq!(r.failures(), alloc::vec!["alpha"]);
        let res = &cocycle_residuals(&nerve, &bad).unwrap()[0];
        assert_eq!(res.alpha, -th(2));
    }

    #[test]
    fn reversal_rule() {
        let mut d = TransitionData::new(N, Mode::Gl);
        let s = GrassmannElement::scalar(N, 0.3);
        let c = GroupCoords::new(th(1) * th(2), s.clone(), th(3), th(4)).unwrap();
        d.set_edge(0, 1, c.clone()).unwrap();
        let r = d.coords(1, 0).unwrap();
        assert_eq!(r.h, -c.h.clone());
        assert_eq!(r.s, -s.clone());
        assert!(r.alpha.approx_eq(&(-(s.exp_even().unwrap() * &c.alpha)), 1e-14));
        assert!(r.beta.approx_eq(&(-((-&s).exp_even().unwrap() * &c.beta)), 1e-14));
        assert!(d.coords(0, 2).is_err());
    }

    #[test]
    fn sl_mode_rejects_twist() {
        let mut d = TransitionData::new(N, Mode::Sl);
        let c = GroupCoords::new(zero(), GrassmannElement::scalar(N, 1.0), zero(), zero()).unwrap();
        assert!(d.set_edge(0, 1, c).is_err());
    }

    #[test]
    fn twisted_alpha_example() {
        // s_01 = log 2 forces α_02 = α_01 + ½α_12
        let nerve = Nerve::triangle();
        let mut d = TransitionData::new(N, Mode::Gl);
        let log2 = GrassmannElement::scalar(N, 2f64.ln());
        d.set_edge(0, 1, GroupCoords::new(zero(), log2.clone(), th(1), zero()).unwrap()).unwrap();
        d.set_edge(1, 2, GroupCoords::new(zero(), zero(), th(2), zero()).unwrap()).unwrap();
        let a02 = th(1) + th(2).scale(0.5);
        d.set_edge(0, 2, GroupCoords::new(zero(), log2.clone(), a02, zero()).unwrap()).unwrap();
        assert!(check_gl_cocycle(&nerve, &d, 1e-9, false).unwrap().passed());
        // untwisted sum is wrong here
        let mut bad = d.clone();
        bad.set_edge(0, 2, GroupCoords::new(zero(), log2, th(1) + th(2), zero()).unwrap()).unwrap();
        let r = check_gl_cocycle(&nerve, &bad, 1e-9, false).unwrap();
        assert_eq!(r.failures(), alloc::vec!["alpha"]);
    }

    #[test]
    fn gl_reduces_to_sl() {
        let nerve = Nerve::tetrahedron();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut d = TransitionData::random_cocycle(&nerve, &mut rng, N, Mode::Sl).unwrap();
            let sl_r = check_sl_cocycle(&nerve, &d, 1e-9, false).unwrap();
            let gl_r = check_gl_cocycle(&nerve, &d, 1e-9, false).unwrap();
            assert!(sl_r.passed() && gl_r.passed());
            // break h on one edge and compare verdicts
            let mut c = d.coords(0, 3).unwrap();
            c.h = &c.h + &(th(5) * th(6));
            d.set_edge(0, 3, c).unwrap();
            let sl_r = check_sl_cocycle(&nerve, &d, 1e-9, false).unwrap();
            let gl_r = check_gl_cocycle(&nerve, &d, 1e-9, false).unwrap();
            assert_eq!(sl_r.failures(), gl_r.failures());
            assert_eq!(sl_r.failures(), alloc::vec!["h"]);
        }
    }

    #[test]
    fn twist_integers() {
        let nerve = Nerve::triangle();
        let mut d = TransitionData::new(N, Mode::Sl);
        let tau = GrassmannElement::scalar(N, Complex64::new(0.0, 2.0 * PI));
        d.set_edge(0, 1, GroupCoords::identity(N)).unwrap();
        d.set_edge(1, 2, GroupCoords::identity(N)).unwrap();
        d.set_edge(0, 2, sl(tau, zero(), zero())).unwrap();
        assert!(!check_sl_cocycle(&nerve, &d, 1e-9, false).unwrap().passed());
        assert!(check_sl_cocycle(&nerve, &d, 1e-9, true).unwrap().passed());
        d.set_twist(0, 1, 2, 1).unwrap();
        assert!(check_sl_cocycle(&nerve, &d, 1e-9, false).unwrap().passed());
        assert_eq!(d.twist(1, 0, 2), -1);
    }

    #[test]
    fn two_cocycle_example() {
        // α_01 = θ1, β_12 = θ2, everything else forced
        let nerve = Nerve::triangle();
        let d = TransitionData::cocycle_from(&nerve, N, Mode::Sl, |i, j| match (i, j) {
            (0, 1) => sl(zero(), th(1), zero()),
            (0, 2) => sl(zero(), th(1), th(2)),
            _ => GroupCoords::identity(N),
        })
        .unwrap();
        let g = two_cocycle_g(&nerve, &d, 1e-9).unwrap();
        assert!(g.get(&[0, 1, 2]).approx_eq(&(th(1) * th(2)).scale(0.5), 1e-15));

        let alpha_free = TransitionData::cocycle_from(&nerve, N, Mode::Sl, |_, _| sl(th(1) * th(2), zero(), th(3))).unwrap();
        assert_eq!(two_cocycle_g(&nerve, &alpha_free, 1e-9).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn two_cocycle_antisymmetric_and_closed() {
        let nerve = Nerve::tetrahedron();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for mode in [Mode::Sl, Mode::Gl] {
            for _ in 0..20 {
                let d = TransitionData::random_cocycle(&nerve, &mut rng, N, mode).unwrap();
                let g = two_cocycle_g(&nerve, &d, 1e-9).unwrap();
                for t in nerve.simplices(2) {
                    let base = g.get(t);
                    let perms = [[0, 1, 2, 1], [1, 0, 2, 0], [0, 2, 1, 0], [2, 1, 0, 0], [1, 2, 0, 1], [2, 0, 1, 1]];
                    for p in perms {
                        let v = two_cocycle_value(&d, t[p[0]], t[p[1]], t[p[2]]).unwrap();
                        let want = if p[3] == 1 { base.clone() } else { -base.clone() };
                        assert!(v.approx_eq(&want, 1e-9), "{v} vs {want}");
                    }
                }
                assert!(coboundary(&nerve, &g).unwrap().max_abs() < 1e-9);
            }
        }
    }

    #[test]
    fn two_cocycle_rejects_non_cocycle() {
        let nerve = Nerve::triangle();
        assert!(two_cocycle_g(&nerve, &triangle_alpha_data(th(1)), 1e-9).is_err());
    }
}
