use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// An edge traversed in its preferred direction (`reversed == false`,
/// tail to head) or against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub edge: usize,
    pub reversed: bool,
}

impl OrientedEdge {
    pub fn forward(edge: usize) -> Self {
        OrientedEdge { edge, reversed: false }
    }

    pub fn backward(edge: usize) -> Self {
        OrientedEdge { edge, reversed: true }
    }

    pub fn flip(self) -> Self {
        OrientedEdge {
            edge: self.edge,
            reversed: !self.reversed,
        }
    }
}

/// The oriented edges around one face of the ribbon graph, i.e. one
/// puncture of the thickened surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCycle {
    pub edges: Vec<OrientedEdge>,
}

/// A trivalent ribbon graph.
///
/// Half-edges are numbered `0..2E`. `pairing` is the fixed-point-free
/// involution joining the two halves of an edge, and each vertex lists its
/// three half-edges in counter-clockwise cyclic order. Edge `e` runs from
/// the vertex of its preferred half-edge `tail(e)` to the vertex of
/// `pairing[tail(e)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatGraph {
    pairing: Vec<usize>,
    cyclic_orders: Vec<Vec<usize>>,
    // per half-edge: (vertex, position in its cyclic order)
    location: Vec<(usize, usize)>,
    // per edge: preferred half-edge
    tails: Vec<usize>,
    // per half-edge: its edge
    edge_of: Vec<usize>,
}

impl FatGraph {
    /// Validate and build. With `orientation = None` every edge is oriented
    /// from its lower-numbered half-edge and edges are numbered in that
    /// order; otherwise `orientation[e]` is the preferred half-edge of edge `e`.
    pub fn new(pairing: Vec<usize>, cyclic_orders: Vec<Vec<usize>>, orientation: Option<Vec<usize>>) -> Result<Self> {
        let h = pairing.len();
        if h == 0 || !h.is_multiple_of(2) {
            return Err(Error::InvalidFatGraph(format!("{h} half-edges cannot pair up")));
        }
        for (i, &j) in pairing.iter().enumerate() {
            if j >= h || pairing[j] != i || i == j {
                return Err(Error::InvalidFatGraph(format!(
                    "pairing is not a fixed-point-free involution at half-edge {i}"
                )));
            }
        }
        let mut location = vec![(usize::MAX, 0); h];
        for (v, order) in cyclic_orders.iter().enumerate() {
            if order.len() != 3 {
                return Err(Error::InvalidFatGraph(format!(
                    "vertex {v} has {} half-edges, expected 3",
                    order.len()
                )));
            }
            for (pos, &he) in order.iter().enumerate() {
                if he >= h {
                    return Err(Error::InvalidFatGraph(format!("half-edge {he} out of range")));
                }
                if location[he].0 != usize::MAX {
                    return Err(Error::InvalidFatGraph(format!("half-edge {he} appears twice")));
                }
                location[he] = (v, pos);
            }
        }
        if let Some(he) = location.iter().position(|l| l.0 == usize::MAX) {
            return Err(Error::InvalidFatGraph(format!("half-edge {he} is not attached to a vertex")));
        }
        let tails = match orientation {
            None => (0..h).filter(|&i| i < pairing[i]).collect::<Vec<_>>(),
            Some(o) => {
                let mut seen = BTreeSet::new();
                for &t in &o {
                    if t >= h || !seen.insert(t.min(pairing[t])) {
                        return Err(Error::InvalidFatGraph(format!(
                            "orientation must pick one half-edge of every edge (bad entry {t})"
                        )));
                    }
                }
                if seen.len() != h / 2 {
                    return Err(Error::InvalidFatGraph("orientation does not cover every edge".into()));
                }
                o
            }
        };
        let mut edge_of = vec![0; h];
        for (e, &t) in tails.iter().enumerate() {
            edge_of[t] = e;
            edge_of[pairing[t]] = e;
        }
        Ok(FatGraph {
            pairing,
            cyclic_orders,
            location,
            tails,
            edge_of,
        })
    }

    /// Build from edges as (tail vertex, head vertex) pairs. Edge `e` gets
    /// half-edges `2e` (tail) and `2e + 1` (head); `cyclic_orders` lists
    /// half-edges per vertex.
    pub fn from_edges(edges: &[(usize, usize)], cyclic_orders: Vec<Vec<usize>>) -> Result<Self> {
        let pairing = (0..2 * edges.len()).map(|i| i ^ 1).collect();
        let g = Self::new(pairing, cyclic_orders, None)?;
        for (e, &(t, h)) in edges.iter().enumerate() {
            if g.tail_vertex(e) != t || g.head_vertex(e) != h {
                return Err(Error::InvalidFatGraph(format!(
                    "edge {e} is listed as ({t}, {h}) but its half-edges sit at ({}, {})",
                    g.tail_vertex(e),
                    g.head_vertex(e)
                )));
            }
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn num_edges(&self) -> usize {
        self.tails.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn cyclic_orders(&self) -> &[Vec<usize>] {
        &self.cyclic_orders
    }

    /// Preferred half-edge of every edge.
    pub fn orientation(&self) -> &[usize] {
        &self.tails
    }

    pub fn vertex_of(&self, half_edge: usize) -> usize {
        self.location[half_edge].0
    }

    pub fn edge_of(&self, half_edge: usize) -> usize {
        self.edge_of[half_edge]
    }

    pub fn tail_vertex(&self, e: usize) -> usize {
        self.vertex_of(self.tails[e])
    }

    pub fn head_vertex(&self, e: usize) -> usize {
        self.vertex_of(self.pairing[self.tails[e]])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.tail_vertex(e) == self.head_vertex(e)
    }

    /// Start and end vertex of a traversal.
    pub fn endpoints(&self, oe: OrientedEdge) -> (usize, usize) {
        let (t, h) = (self.tail_vertex(oe.edge), self.head_vertex(oe.edge));
        if oe.reversed {
            (h, t)
        } else {
            (t, h)
        }
    }

    /// Next half-edge counter-clockwise at the same vertex.
    pub fn next(&self, half_edge: usize) -> usize {
        let (v, pos) = self.location[half_edge];
        self.cyclic_orders[v][(pos + 1) % 3]
    }

    /// Traversal leaving the vertex of `half_edge` along it.
    fn leaving(&self, half_edge: usize) -> OrientedEdge {
        let e = self.edge_of(half_edge);
        OrientedEdge {
            edge: e,
            reversed: self.tails[e] != half_edge,
        }
    }

    /// Faces of the ribbon graph: orbits of `next ∘ pairing`, each written
    /// as the sequence of oriented edges walked along its boundary. Cycles
    /// start from their lowest half-edge and are listed in that order.
    pub fn boundary_cycles(&self) -> Vec<BoundaryCycle> {
        let mut seen = vec![false; self.num_half_edges()];
        let mut out = Vec::new();
        for start in 0..self.num_half_edges() {
            if seen[start] {
                continue;
            }
            let mut edges = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                edges.push(self.leaving(h));
                h = self.next(self.pairing[h]);
            }
            out.push(BoundaryCycle { edges });
        }
        out
    }

    pub fn num_faces(&self) -> usize {
        self.boundary_cycles().len()
    }

    /// `(g, s)` from `V − E + s = 2 − 2g`.
    pub fn genus_and_punctures(&self) -> Result<(usize, usize)> {
        let s = self.num_faces() as i64;
        let chi = self.num_vertices() as i64 - self.num_edges() as i64 + s;
        if chi > 2 || chi % 2 != 0 {
            return Err(Error::InvalidFatGraph(format!("Euler characteristic {chi} of a disconnected graph")));
        }
        Ok((((2 - chi) / 2) as usize, s as usize))
    }

    pub fn is_connected(&self) -> bool {
        let parents = self.tree_parents(0);
        (1..self.num_vertices()).all(|v| parents[v].is_some())
    }

    /// Breadth-first tree from `root`: for each vertex the traversal that
    /// enters it, `None` for the root and for unreachable vertices.
    fn tree_parents(&self, root: usize) -> Vec<Option<OrientedEdge>> {
        let v = self.num_vertices();
        let mut parent: Vec<Option<OrientedEdge>> = vec![None; v];
        let mut seen = vec![false; v];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &he in &self.cyclic_orders[x] {
                let oe = self.leaving(he);
                let (_, y) = self.endpoints(oe);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(oe);
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    /// Tree path from `root` to `v`.
    fn tree_path(&self, parents: &[Option<OrientedEdge>], v: usize) -> Vec<OrientedEdge> {
        let mut path = Vec::new();
        let mut x = v;
        while let Some(oe) = parents[x] {
            path.push(oe);
            x = self.endpoints(oe).0;
        }
        path.reverse();
        path
    }

    /// Closed loops based at `base` generating the fundamental group: one
    /// per edge outside a breadth-first spanning tree.
    pub fn fundamental_cycles(&self, base: usize) -> Vec<Vec<OrientedEdge>> {
        let parents = self.tree_parents(base);
        let tree: BTreeSet<usize> = parents.iter().flatten().map(|oe| oe.edge).collect();
        let mut out = Vec::new();
        for e in 0..self.num_edges() {
            if tree.contains(&e) {
                continue;
            }
            let mut path = self.tree_path(&parents, self.tail_vertex(e));
            path.push(OrientedEdge::forward(e));
            let back = self.tree_path(&parents, self.head_vertex(e));
            path.extend(back.into_iter().rev().map(|oe| oe.flip()));
            out.push(path);
        }
        out
    }

    /// The same graph with every edge's preferred half-edge swapped.
    pub fn reversed(&self) -> Self {
        let tails = self.tails.iter().map(|&t| self.pairing[t]).collect();
        FatGraph::new(self.pairing.clone(), self.cyclic_orders.clone(), Some(tails)).expect("still valid")
    }

    /// Signed incidence matrix `V × E`: `+1` at the head, `−1` at the tail,
    /// zero column for a loop.
    pub fn incidence_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.num_vertices(), self.num_edges());
        for e in 0..self.num_edges() {
            m[(self.head_vertex(e), e)] += 1.0;
            m[(self.tail_vertex(e), e)] -= 1.0;
        }
        m
    }

    /// Graph Laplacian `D − A` on vertices, loops ignored.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let c = self.incidence_matrix();
        &c * c.transpose()
    }

    /// Face-by-edge matrix: net number of forward minus backward traversals
    /// of each edge along each boundary cycle.
    pub fn boundary_matrix(&self) -> DMatrix<f64> {
        let cycles = self.boundary_cycles();
        let mut m = DMatrix::zeros(cycles.len(), self.num_edges());
        for (i, c) in cycles.iter().enumerate() {
            for oe in &c.edges {
                m[(i, oe.edge)] += if oe.reversed { -1.0 } else { 1.0 };
            }
        }
        m
    }

    /// Theta graph with one face, `(g, s) = (1, 1)`.
    pub fn theta_one_face() -> Self {
        Self::from_edges(&[(0, 1), (0, 1), (0, 1)], vec![vec![0, 2, 4], vec![1, 3, 5]]).expect("fixture")
    }

    /// Planar theta graph, `(g, s) = (0, 3)`.
    pub fn theta_planar() -> Self {
        Self::from_edges(&[(0, 1), (0, 1), (0, 1)], vec![vec![0, 2, 4], vec![1, 5, 3]]).expect("fixture")
    }

    /// Two loops joined by a bridge, `(g, s) = (0, 3)`.
    pub fn dumbbell() -> Self {
        Self::from_edges(&[(0, 0), (0, 1), (1, 1)], vec![vec![0, 1, 2], vec![3, 4, 5]]).expect("fixture")
    }

    /// Complete graph on four vertices drawn on a torus, `(g, s) = (1, 2)`.
    pub fn k4_torus() -> Self {
        Self::from_edges(
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            vec![vec![0, 2, 4], vec![1, 6, 8], vec![3, 7, 10], vec![5, 9, 11]],
        )
        .expect("fixture")
    }

    /// Complete bipartite graph `K_{3,3}` with one face, `(g, s) = (2, 1)`.
    pub fn k33_one_face() -> Self {
        Self::from_edges(
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
            vec![
                vec![0, 2, 4],
                vec![6, 8, 10],
                vec![12, 14, 16],
                vec![1, 7, 13],
                vec![3, 9, 15],
                vec![5, 17, 11],
            ],
        )
        .expect("fixture")
    }

    /// The shipped fixture for `(g, s)`, if there is one.
    pub fn fixture(genus: usize, punctures: usize) -> Option<Self> {
        match (genus, punctures) {
            (0, 3) => Some(Self::theta_planar()),
            (1, 1) => Some(Self::theta_one_face()),
            (1, 2) => Some(Self::k4_torus()),
            (2, 1) => Some(Self::k33_one_face()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_topology() {
        assert_eq!(FatGraph::theta_one_face().genus_and_punctures().unwrap(), (1, 1));
        assert_eq!(FatGraph::theta_planar().genus_and_punctures().unwrap(), (0, 3));
        assert_eq!(FatGraph::dumbbell().genus_and_punctures().unwrap(), (0, 3));
        assert_eq!(FatGraph::k4_torus().genus_and_punctures().unwrap(), (1, 2));
        assert_eq!(FatGraph::k33_one_face().genus_and_punctures().unwrap(), (2, 1));
        for (g, s) in [(0, 3), (1, 1), (1, 2), (2, 1)] {
            let f = FatGraph::fixture(g, s).unwrap();
            assert_eq!(f.genus_and_punctures().unwrap(), (g, s));
            assert_eq!(f.num_vertices(), 2 * (2 * g + s - 2));
        }
    }

    #[test]
    fn planar_k4_has_four_faces() {
        let g = FatGraph::from_edges(
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            vec![vec![0, 2, 4], vec![1, 8, 6], vec![3, 7, 10], vec![5, 11, 9]],
        )
        .unwrap();
        assert_eq!(g.genus_and_punctures().unwrap(), (0, 4));
    }

    #[test]
    fn faces_partition_half_edges() {
        for g in [FatGraph::k4_torus(), FatGraph::k33_one_face(), FatGraph::dumbbell()] {
            let total: usize = g.boundary_cycles().iter().map(|c| c.edges.len()).sum();
            assert_eq!(total, g.num_half_edges());
            // every edge is walked once in each direction
            let m = g.boundary_matrix();
            for e in 0..g.num_edges() {
                assert_eq!(m.column(e).sum(), 0.0);
            }
            for c in g.boundary_cycles() {
                for w in c.edges.windows(2) {
                    assert_eq!(g.endpoints(w[0]).1, g.endpoints(w[1]).0);
                }
                let (first, last) = (c.edges[0], *c.edges.last().unwrap());
                assert_eq!(g.endpoints(last).1, g.endpoints(first).0);
            }
        }
    }

    #[test]
    fn validation() {
        assert!(FatGraph::new(vec![0, 1], vec![], None).is_err());
        assert!(FatGraph::new(vec![1, 0], vec![vec![0, 1]], None).is_err());
        // a one-vertex graph cannot be trivalent
        assert!(FatGraph::new(vec![1, 0, 3, 2], vec![vec![0, 1, 2, 3]], None).is_err());
        assert!(FatGraph::from_edges(&[(0, 1), (0, 1), (0, 1)], vec![vec![0, 2, 4], vec![1, 3, 3]]).is_err());
        assert!(FatGraph::from_edges(&[(1, 0), (0, 1), (0, 1)], vec![vec![0, 2, 4], vec![1, 3, 5]]).is_err());
    }

    #[test]
    fn fundamental_cycles_are_closed() {
        for g in [FatGraph::k4_torus(), FatGraph::k33_one_face(), FatGraph::dumbbell()] {
            let cycles = g.fundamental_cycles(0);
            assert_eq!(cycles.len(), g.num_edges() - g.num_vertices() + 1);
            for c in cycles {
                assert_eq!(g.endpoints(c[0]).0, 0);
                assert_eq!(g.endpoints(*c.last().unwrap()).1, 0);
                for w in c.windows(2) {
                    assert_eq!(g.endpoints(w[0]).1, g.endpoints(w[1]).0);
                }
            }
        }
    }
}
