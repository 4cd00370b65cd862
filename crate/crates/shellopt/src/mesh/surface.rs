//! Boundary surface graph: edges of the boundary faces, used for the
//! surface Laplacian, contact sampling, and surface-restricted distances.

use super::distance::{dijkstra_impl, DistanceMap};
use super::VolumetricMesh;
use crate::sparse::{CsrMatrix, TripletBuilder};

#[derive(Debug, Clone)]
pub struct SurfaceGraph {
    /// Boundary vertex ids, ascending; position = local index.
    boundary_ids: Vec<usize>,
    /// Global vertex id -> local index (usize::MAX for non-boundary).
    local: Vec<usize>,
    /// Local adjacency with Euclidean edge lengths, ascending by neighbor.
    adjacency: Vec<Vec<(usize, f64)>>,
    n_edges: usize,
}

impl SurfaceGraph {
    pub fn of(mesh: &VolumetricMesh) -> Self {
        let boundary_ids = mesh.boundary_vertices().to_vec();
        let mut local = vec![usize::MAX; mesh.n_vertices()];
        for (k, &v) in boundary_ids.iter().enumerate() {
            local[v] = k;
        }
        let mut edges: Vec<[usize; 2]> = mesh
            .boundary_faces()
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [b, c], [a, c]])
            .map(|[u, v]| [u.min(v), u.max(v)])
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); boundary_ids.len()];
        for &[u, v] in &edges {
            let len = (mesh.vertex(u) - mesh.vertex(v)).norm();
            adjacency[local[u]].push((local[v], len));
            adjacency[local[v]].push((local[u], len));
        }
        for a in &mut adjacency {
            a.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        }
        Self {
            boundary_ids,
            local,
            adjacency,
            n_edges: edges.len(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.boundary_ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn boundary_ids(&self) -> &[usize] {
        &self.boundary_ids
    }

    pub fn local_index(&self, vertex: usize) -> Option<usize> {
        let k = self.local[vertex];
        (k != usize::MAX).then_some(k)
    }

    pub fn global_id(&self, local: usize) -> usize {
        self.boundary_ids[local]
    }

    /// Surface-graph neighbors of a boundary vertex, as global vertex ids.
    pub fn neighbors(&self, vertex: usize) -> Vec<usize> {
        match self.local_index(vertex) {
            Some(k) => self.adjacency[k]
                .iter()
                .map(|&(w, _)| self.boundary_ids[w])
                .collect(),
            None => Vec::new(),
        }
    }

    /// Combinatorial graph Laplacian over local indices: degree on the
    /// diagonal, -1 for each surface edge.
    pub fn laplacian(&self) -> CsrMatrix {
        let n = self.n_vertices();
        let mut b = TripletBuilder::new(n, n);
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            b.add(i, i, nbrs.len() as f64);
            for &(j, _) in nbrs {
                b.add(i, j, -1.0);
            }
        }
        b.build()
    }

    /// Truncated Dijkstra over surface edges; results keyed by global ids.
    pub fn bounded_distances(&self, source: usize, radius: f64) -> DistanceMap {
        let src_local = self
            .local_index(source)
            .expect("source must be a boundary vertex");
        let local_entries = dijkstra_impl(self.n_vertices(), src_local, radius, |v, out| {
            out.extend_from_slice(&self.adjacency[v])
        });
        let mut entries: Vec<(usize, f64)> = local_entries
            .into_iter()
            .map(|(v, d)| (self.boundary_ids[v], d))
            .collect();
        entries.sort_unstable_by_key(|&(v, _)| v);
        DistanceMap::from_parts(source, radius, entries)
    }
}

/// Combinatorial graph Laplacian of the boundary edge graph together with
/// the boundary-id ordering its rows refer to.
pub fn surface_graph_laplacian(mesh: &VolumetricMesh) -> (CsrMatrix, Vec<usize>) {
    let g = SurfaceGraph::of(mesh);
    let l = g.laplacian();
    (l, g.boundary_ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use approx::assert_relative_eq;
    use nalgebra::SymmetricEigen;

    #[test]
    fn tet_surface_laplacian_is_k4() {
        // center-split tet: boundary is the 4 outer vertices, fully connected
        let m = fixtures::five_vertex().unwrap();
        let (l, ids) = surface_graph_laplacian(&m);
        assert_eq!(ids, vec![0, 1, 2, 3]);
        let dense = l.to_dense();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 3.0 } else { -1.0 };
                assert_relative_eq!(dense[(i, j)], expect);
            }
        }
        // eigenvalues of K4 Laplacian: {0, 4, 4, 4}
        let mut eig: Vec<f64> = SymmetricEigen::new(dense).eigenvalues.iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        assert_relative_eq!(eig[0], 0.0, epsilon = 1e-10);
        for &e in &eig[1..] {
            assert_relative_eq!(e, 4.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn laplacian_annihilates_constants() {
        let m = fixtures::box_grid(3, 3, 3, 1.0).unwrap();
        let (l, ids) = surface_graph_laplacian(&m);
        let ones = vec![1.0; ids.len()];
        for r in l.matvec(&ones) {
            assert_relative_eq!(r, 0.0, epsilon = 1e-12);
        }
        assert!(l.max_symmetry_error() < 1e-15);
    }

    #[test]
    fn one_zero_eigenvalue_per_component() {
        let m = fixtures::box_grid(3, 3, 3, 1.0).unwrap();
        let (l, _) = surface_graph_laplacian(&m);
        let eig = SymmetricEigen::new(l.to_dense());
        let zeros = eig.eigenvalues.iter().filter(|&&e| e.abs() < 1e-9).count();
        assert_eq!(zeros, 1, "closed box surface is one component");
    }
}
