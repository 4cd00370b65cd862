//! Quadratic (10-node) overlay on the volumetric mesh.
//!
//! Mid-side nodes sit at geometric edge midpoints and exist for FEA only.
//! Node numbering: corner nodes keep their vertex ids (0..n_v); mid node of
//! edge `e` gets id `n_v + e`, where `e` indexes the mesh's lexicographically
//! ordered unique-edge list, so the numbering is deterministic.

use std::collections::HashMap;

use super::{Point, VolumetricMesh};

/// Local edge order of a 10-node tet: mids 4..10 correspond to corner pairs
/// (0,1), (1,2), (0,2), (0,3), (1,3), (2,3).
pub const TET10_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];

#[derive(Debug, Clone)]
pub struct QuadraticMesh {
    base: VolumetricMesh,
    mid_nodes: Vec<Point>,
    tets10: Vec<[usize; 10]>,
}

pub fn build_quadratic(base: VolumetricMesh) -> QuadraticMesh {
    let n_v = base.n_vertices();
    let mut edge_index: HashMap<[usize; 2], usize> = HashMap::with_capacity(base.edges().len());
    for (e, &pair) in base.edges().iter().enumerate() {
        edge_index.insert(pair, e);
    }
    let mid_nodes: Vec<Point> = base
        .edges()
        .iter()
        .map(|&[u, v]| Point::from((base.vertex(u).coords + base.vertex(v).coords) / 2.0))
        .collect();
    let tets10 = base
        .tets()
        .iter()
        .map(|t| {
            let mut nodes = [0usize; 10];
            nodes[..4].copy_from_slice(t);
            for (k, &(i, j)) in TET10_EDGES.iter().enumerate() {
                let key = [t[i].min(t[j]), t[i].max(t[j])];
                nodes[4 + k] = n_v + edge_index[&key];
            }
            nodes
        })
        .collect();
    QuadraticMesh {
        base,
        mid_nodes,
        tets10,
    }
}

impl QuadraticMesh {
    pub fn base(&self) -> &VolumetricMesh {
        &self.base
    }

    pub fn n_nodes(&self) -> usize {
        self.base.n_vertices() + self.mid_nodes.len()
    }

    pub fn n_mid_nodes(&self) -> usize {
        self.mid_nodes.len()
    }

    pub fn node_position(&self, i: usize) -> Point {
        let n_v = self.base.n_vertices();
        if i < n_v {
            *self.base.vertex(i)
        } else {
            self.mid_nodes[i - n_v]
        }
    }

    pub fn tet10(&self, i: usize) -> [usize; 10] {
        self.tets10[i]
    }

    pub fn tets10(&self) -> &[[usize; 10]] {
        &self.tets10
    }

    /// Corner vertex pair of mid node `i` (panics if `i` is a corner node).
    pub fn mid_node_edge(&self, i: usize) -> [usize; 2] {
        self.base.edges()[i - self.base.n_vertices()]
    }

    pub fn is_mid_node(&self, i: usize) -> bool {
        i >= self.base.n_vertices()
    }

    /// Positions of the 10 nodes of tet `i`.
    pub fn element_coords(&self, i: usize) -> [Point; 10] {
        let mut coords = [Point::origin(); 10];
        for (k, &n) in self.tets10[i].iter().enumerate() {
            coords[k] = self.node_position(n);
        }
        coords
    }
}
