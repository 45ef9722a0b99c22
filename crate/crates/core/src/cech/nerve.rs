use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

/// A simplex as a strictly increasing list of chart indices.
pub type Simplex = Vec<usize>;

/// Sign of the permutation sorting `v`, with the sorted copy, or `None` if
/// an index repeats.
pub(crate) fn sort_with_sign(v: &[usize]) -> Option<(Simplex, f64)> {
    let mut s = v.to_vec();
    let mut sign = 1.0;
    // insertion sort, counting transpositions
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((s, sign))
    }
}

/// Finite simplicial complex of dimension at most 3 on a set of charts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    // simplices[p] holds the sorted p-simplices in lexicographic order
    simplices: [Vec<Simplex>; 4],
}

impl Nerve {
    /// Build a nerve from its vertices and higher simplices (in any vertex
    /// order). Every face of a listed simplex must be listed too.
    pub fn new(
        vertices: &[usize],
        edges: &[Vec<usize>],
        triangles: &[Vec<usize>],
        tetrahedra: &[Vec<usize>],
    ) -> Result<Self> {
        let mut simplices: [Vec<Simplex>; 4] = Default::default();
        let lists: [Vec<Vec<usize>>; 4] = [
            vertices.iter().map(|&v| vec![v]).collect(),
            edges.to_vec(),
            triangles.to_vec(),
            tetrahedra.to_vec(),
        ];
        for (p, list) in lists.iter().enumerate() {
            let mut set = BTreeSet::new();
            for s in list {
                if s.len() != p + 1 {
                    return Err(Error::InvalidNerve(format!(
                        "simplex {s:?} listed as dimension {p}"
                    )));
                }
                let (sorted, _) = sort_with_sign(s)
                    .ok_or_else(|| Error::InvalidNerve(format!("simplex {s:?} repeats a vertex")))?;
                if !set.insert(sorted) {
                    return Err(Error::InvalidNerve(format!("simplex {s:?} listed twice")));
                }
            }
            simplices[p] = set.into_iter().collect();
        }
        let nerve = Nerve { simplices };
        for p in 1..4 {
            for s in &nerve.simplices[p] {
                for k in 0..=p {
                    let face = face(s, k);
                    if !nerve.contains(&face) {
                        return Err(Error::InvalidNerve(format!(
                            "face {face:?} of {s:?} is missing"
                        )));
                    }
                }
            }
        }
        Ok(nerve)
    }

    /// Three charts with a common triple intersection.
    pub fn triangle() -> Self {
        Self::new(&[0, 1, 2], &[vec![0, 1], vec![0, 2], vec![1, 2]], &[vec![0, 1, 2]], &[])
            .expect("fixture is closed")
    }

    /// Four charts, all intersections non-empty.
    pub fn tetrahedron() -> Self {
        Self::full(4)
    }

    /// All triple intersections but no quadruple one; `H²` has rank one.
    pub fn tetrahedron_boundary() -> Self {
        let full = Self::full(4);
        Nerve {
            simplices: [
                full.simplices[0].clone(),
                full.simplices[1].clone(),
                full.simplices[2].clone(),
                Vec::new(),
            ],
        }
    }

    /// Four charts whose nerve has a two-dimensional `H¹`, like a torus:
    /// all six pairwise overlaps but only the triple overlap `012`.
    ///
    /// The two independent cycles are `0→1→3→0` and `0→2→3→0`.
    pub fn genus_one() -> Self {
        let full = Self::full(4);
        Nerve {
            simplices: [
                full.simplices[0].clone(),
                full.simplices[1].clone(),
                vec![vec![0, 1, 2]],
                Vec::new(),
            ],
        }
    }

    fn full(n: usize) -> Self {
        let mut simplices: [Vec<Simplex>; 4] = Default::default();
        for mask in 1u32..(1 << n) {
            let s: Simplex = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if s.len() <= 4 {
                simplices[s.len() - 1].push(s);
            }
        }
        for list in &mut simplices {
            list.sort();
        }
        Nerve { simplices }
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices[0].iter().map(|s| s[0]).collect()
    }

    /// Sorted `p`-simplices; empty for `p > 3`.
    pub fn simplices(&self, p: usize) -> &[Simplex] {
        if p < 4 {
            &self.simplices[p]
        } else {
            &[]
        }
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        match sort_with_sign(s) {
            Some((sorted, _)) if !sorted.is_empty() && sorted.len() <= 4 => {
                self.simplices[sorted.len() - 1].binary_search(&sorted).is_ok()
            }
            _ => false,
        }
    }

    pub(crate) fn index_of(&self, sorted: &[usize]) -> Option<usize> {
        let p = sorted.len().checked_sub(1)?;
        self.simplices(p).binary_search(&sorted.to_vec()).ok()
    }

    /// Matrix of `δ: C^p → C^{p+1}` in the lexicographic simplex bases.
    pub fn coboundary_matrix(&self, p: usize) -> DMatrix<f64> {
        let rows = self.simplices(p + 1);
        let cols = self.simplices(p);
        let mut m = DMatrix::zeros(rows.len(), cols.len());
        for (r, s) in rows.iter().enumerate() {
            for k in 0..s.len() {
                let c = self.index_of(&face(s, k)).expect("nerve is closed under faces");
                m[(r, c)] += if k % 2 == 0 { 1.0 } else { -1.0 };
            }
        }
        m
    }

    /// Rank of `H^p` of the nerve with complex coefficients.
    pub fn betti(&self, p: usize) -> usize {
        let dim = self.simplices(p).len();
        let out = linalg::rank(&self.coboundary_matrix(p));
        let inn = if p == 0 {
            0
        } else {
            linalg::rank(&self.coboundary_matrix(p - 1))
        };
        dim - out - inn
    }

    /// True if the 1-skeleton is connected.
    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        if verts.is_empty() {
            return true;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![verts[0]];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for e in &self.simplices[1] {
                if e[0] == v {
                    stack.push(e[1]);
                } else if e[1] == v {
                    stack.push(e[0]);
                }
            }
        }
        seen.len() == verts.len()
    }
}

/// The face of `s` with its `k`-th vertex removed.
pub(crate) fn face(s: &[usize], k: usize) -> Simplex {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &v)| v)
        .collect()
}
