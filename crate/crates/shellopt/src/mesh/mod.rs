//! Volumetric tetrahedral mesh: the fixed analysis domain.
//!
//! The mesh is immutable after construction. Vertices are classified into
//! boundary, skeleton, and interior sets; the boundary surface is extracted
//! from the tets and validated as a closed 2-manifold; the skeleton must be
//! nonempty and form a single connected component of the edge graph.

mod distance;
mod io;
mod quadratic;
mod surface;

pub use distance::{bounded_graph_distances, DistanceMap};
pub use io::{load_mesh, parse_mesh, save_mesh};
pub use quadratic::{build_quadratic, QuadraticMesh};
pub use surface::{surface_graph_laplacian, SurfaceGraph};

use std::collections::HashMap;

use nalgebra::{Point3, Vector3};

use crate::error::{Error, Result};

pub type Point = Point3<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    Boundary,
    Skeleton,
    Interior,
}

/// Tetrahedral mesh with vertex classification and derived connectivity.
#[derive(Debug, Clone)]
pub struct VolumetricMesh {
    vertices: Vec<Point>,
    tets: Vec<[usize; 4]>,
    classes: Vec<VertexClass>,
    boundary_faces: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    edge_lengths: Vec<f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
    boundary_vertices: Vec<usize>,
    skeleton_vertices: Vec<usize>,
    interior_vertices: Vec<usize>,
    tet_volumes: Vec<f64>,
    mean_edge_length: f64,
}

pub fn signed_tet_volume(a: &Point, b: &Point, c: &Point, d: &Point) -> f64 {
    (b - a).cross(&(c - a)).dot(&(d - a)) / 6.0
}

impl VolumetricMesh {
    /// Build a mesh from raw vertices, tets, and a skeleton vertex set.
    ///
    /// Boundary vertices are derived from the extracted surface. If
    /// `tagged_boundary` is given (mesh files carry explicit tags) it is
    /// validated against the extracted surface. Inverted tets are
    /// reoriented; zero-volume tets are an error.
    pub fn build(
        vertices: Vec<Point>,
        mut tets: Vec<[usize; 4]>,
        skeleton: &[usize],
        tagged_boundary: Option<&[usize]>,
    ) -> Result<Self> {
        let n = vertices.len();
        for t in &tets {
            for &v in t {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, len: n });
                }
            }
        }
        for &v in skeleton {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, len: n });
            }
        }

        // characteristic scale for the degeneracy tolerance
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &vertices {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let scale = (hi - lo).norm().max(1e-300);
        let vol_tol = 1e-14 * scale * scale * scale;

        let mut tet_volumes = Vec::with_capacity(tets.len());
        for (i, t) in tets.iter_mut().enumerate() {
            let v = signed_tet_volume(
                &vertices[t[0]],
                &vertices[t[1]],
                &vertices[t[2]],
                &vertices[t[3]],
            );
            if v.abs() <= vol_tol {
                return Err(Error::DegenerateTet { tet: i, volume: v });
            }
            if v < 0.0 {
                t.swap(2, 3);
            }
            tet_volumes.push(v.abs());
        }

        // face census: sorted triple -> (count, one outward-oriented copy)
        let mut face_count: HashMap<[usize; 3], (usize, [usize; 3])> = HashMap::new();
        for t in &tets {
            let [a, b, c, d] = *t;
            // outward-oriented faces of a positively oriented tet
            for f in [[a, c, b], [a, b, d], [a, d, c], [b, c, d]] {
                let mut key = f;
                key.sort_unstable();
                let e = face_count.entry(key).or_insert((0, f));
                e.0 += 1;
            }
        }
        for (key, (count, _)) in &face_count {
            if *count > 2 {
                return Err(Error::NonManifoldFace {
                    face: *key,
                    count: *count,
                });
            }
        }
        let mut boundary_faces: Vec<[usize; 3]> = face_count
            .values()
            .filter(|(c, _)| *c == 1)
            .map(|(_, f)| *f)
            .collect();
        boundary_faces.sort_unstable();

        // closed 2-manifold: every boundary edge shared by exactly 2 faces
        let mut bedge_count: HashMap<[usize; 2], usize> = HashMap::new();
        for f in &boundary_faces {
            for (u, v) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
                let key = [u.min(v), u.max(v)];
                *bedge_count.entry(key).or_insert(0) += 1;
            }
        }
        let mut bad: Vec<([usize; 2], usize)> = bedge_count
            .iter()
            .filter(|(_, &c)| c != 2)
            .map(|(k, &c)| (*k, c))
            .collect();
        bad.sort_unstable();
        if let Some(([u, v], c)) = bad.first() {
            return Err(Error::NonManifoldBoundary(*u, *v, *c));
        }

        let mut on_surface = vec![false; n];
        for f in &boundary_faces {
            for &v in f {
                on_surface[v] = true;
            }
        }

        if let Some(tagged) = tagged_boundary {
            let mut tagged_set = vec![false; n];
            for &v in tagged {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, len: n });
                }
                tagged_set[v] = true;
            }
            for v in 0..n {
                if tagged_set[v] != on_surface[v] {
                    return Err(Error::BoundaryTagMismatch { vertex: v });
                }
            }
        }

        let mut classes = vec![VertexClass::Interior; n];
        for (v, &on) in on_surface.iter().enumerate() {
            if on {
                classes[v] = VertexClass::Boundary;
            }
        }
        for &v in skeleton {
            if on_surface[v] {
                return Err(Error::BoundaryTagMismatch { vertex: v });
            }
            classes[v] = VertexClass::Skeleton;
        }

        // unique edges, lexicographically ordered
        let mut edges: Vec<[usize; 2]> = tets
            .iter()
            .flat_map(|t| {
                let [a, b, c, d] = *t;
                [[a, b], [a, c], [a, d], [b, c], [b, d], [c, d]]
            })
            .map(|[u, v]| [u.min(v), u.max(v)])
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let edge_lengths: Vec<f64> = edges
            .iter()
            .map(|&[u, v]| (vertices[u] - vertices[v]).norm())
            .collect();
        let mean_edge_length = edge_lengths.iter().sum::<f64>() / edge_lengths.len().max(1) as f64;

        let mut adjacency = vec![Vec::new(); n];
        for (&[u, v], &len) in edges.iter().zip(&edge_lengths) {
            adjacency[u].push((v, len));
            adjacency[v].push((u, len));
        }
        for a in &mut adjacency {
            a.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        }

        let collect_class = |cl: VertexClass| -> Vec<usize> {
            classes
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == cl)
                .map(|(v, _)| v)
                .collect()
        };
        let boundary_vertices = collect_class(VertexClass::Boundary);
        let skeleton_vertices = collect_class(VertexClass::Skeleton);
        let interior_vertices = collect_class(VertexClass::Interior);

        if skeleton_vertices.is_empty() {
            return Err(Error::SkeletonMissing);
        }
        let components = count_components(&skeleton_vertices, &adjacency, &classes);
        if components != 1 {
            return Err(Error::SkeletonDisconnected { components });
        }

        Ok(Self {
            vertices,
            tets,
            classes,
            boundary_faces,
            edges,
            edge_lengths,
            adjacency,
            boundary_vertices,
            skeleton_vertices,
            interior_vertices,
            tet_volumes,
            mean_edge_length,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_tets(&self) -> usize {
        self.tets.len()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn tet(&self, i: usize) -> [usize; 4] {
        self.tets[i]
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    pub fn tet_volume(&self, i: usize) -> f64 {
        self.tet_volumes[i]
    }

    pub fn class(&self, v: usize) -> VertexClass {
        self.classes[v]
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn boundary_faces(&self) -> &[[usize; 3]] {
        &self.boundary_faces
    }

    /// Unique edges as sorted vertex pairs, lexicographically ordered.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    pub fn mean_edge_length(&self) -> f64 {
        self.mean_edge_length
    }

    /// Neighbors of `v` with Euclidean edge lengths, ascending by index.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn boundary_vertices(&self) -> &[usize] {
        &self.boundary_vertices
    }

    pub fn skeleton_vertices(&self) -> &[usize] {
        &self.skeleton_vertices
    }

    pub fn interior_vertices(&self) -> &[usize] {
        &self.interior_vertices
    }

    /// Total volume as the sum of tet volumes.
    pub fn volume(&self) -> f64 {
        self.tet_volumes.iter().sum()
    }

    /// Volume enclosed by the boundary surface via the divergence theorem.
    pub fn enclosed_volume(&self) -> f64 {
        self.boundary_faces
            .iter()
            .map(|&[a, b, c]| {
                let (a, b, c) = (&self.vertices[a], &self.vertices[b], &self.vertices[c]);
                a.coords.dot(&b.coords.cross(&c.coords)) / 6.0
            })
            .sum()
    }

    /// Outward unit normal of boundary face `f`.
    pub fn face_normal(&self, f: usize) -> Vector3<f64> {
        let [a, b, c] = self.boundary_faces[f];
        let n = (self.vertices[b] - self.vertices[a]).cross(&(self.vertices[c] - self.vertices[a]));
        n.normalize()
    }

    /// Area-weighted outward unit normal at a boundary vertex.
    pub fn boundary_vertex_normal(&self, v: usize) -> Vector3<f64> {
        let mut acc = Vector3::zeros();
        for f in &self.boundary_faces {
            if f.contains(&v) {
                let n = (self.vertices[f[1]] - self.vertices[f[0]])
                    .cross(&(self.vertices[f[2]] - self.vertices[f[0]]));
                acc += n / 2.0; // area-weighted
            }
        }
        acc.normalize()
    }
}

fn count_components(
    members: &[usize],
    adjacency: &[Vec<(usize, f64)>],
    classes: &[VertexClass],
) -> usize {
    let mut visited = vec![false; classes.len()];
    let mut components = 0;
    for &start in members {
        if visited[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        visited[start] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adjacency[v] {
                if !visited[w] && classes[w] == VertexClass::Skeleton {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Regular-ish tet split at its centroid into 4 tets: 4 boundary
    /// vertices, 1 interior skeleton vertex.
    pub fn center_split_tet() -> VolumetricMesh {
        let vertices = vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(1.0, 0.0, 0.0),
            Point::new(0.0, 1.0, 0.0),
            Point::new(0.0, 0.0, 1.0),
            Point::new(0.25, 0.25, 0.25),
        ];
        let tets = vec![[0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4]];
        VolumetricMesh::build(vertices, tets, &[4], None).unwrap()
    }

    #[test]
    fn center_split_classes() {
        let m = center_split_tet();
        assert_eq!(m.boundary_vertices(), &[0, 1, 2, 3]);
        assert_eq!(m.skeleton_vertices(), &[4]);
        assert!(m.interior_vertices().is_empty());
        assert_eq!(m.boundary_faces().len(), 4);
    }

    #[test]
    fn inverted_tet_is_reoriented() {
        let vertices = vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(1.0, 0.0, 0.0),
            Point::new(0.0, 1.0, 0.0),
            Point::new(0.0, 0.0, 1.0),
            Point::new(0.25, 0.25, 0.25),
        ];
        // first tet deliberately inverted
        let tets = vec![[1, 0, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4]];
        let m = VolumetricMesh::build(vertices, tets, &[4], None).unwrap();
        for i in 0..m.n_tets() {
            let [a, b, c, d] = m.tet(i);
            let v = signed_tet_volume(m.vertex(a), m.vertex(b), m.vertex(c), m.vertex(d));
            assert!(v > 0.0, "tet {i} still inverted");
        }
    }

    #[test]
    fn missing_skeleton_is_an_error() {
        let vertices = vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(1.0, 0.0, 0.0),
            Point::new(0.0, 1.0, 0.0),
            Point::new(0.0, 0.0, 1.0),
        ];
        let err = VolumetricMesh::build(vertices, vec![[0, 1, 2, 3]], &[], None).unwrap_err();
        assert!(matches!(err, Error::SkeletonMissing));
    }

    #[test]
    fn degenerate_tet_is_an_error() {
        let vertices = vec![
            Point::new(0.0, 0.0, 0.0),
            Point::new(1.0, 0.0, 0.0),
            Point::new(0.0, 1.0, 0.0),
            Point::new(0.5, 0.5, 0.0), // coplanar
        ];
        let err = VolumetricMesh::build(vertices, vec![[0, 1, 2, 3]], &[], None).unwrap_err();
        assert!(matches!(err, Error::DegenerateTet { .. }));
    }

    #[test]
    fn volume_matches_divergence_theorem() {
        let m = center_split_tet();
        assert_relative_eq!(m.volume(), m.enclosed_volume(), max_relative = 1e-12);
        assert_relative_eq!(m.volume(), 1.0 / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn boundary_normals_point_outward() {
        let m = center_split_tet();
        let centroid = Point::new(0.25, 0.25, 0.25);
        for f in 0..m.boundary_faces().len() {
            let [a, b, c] = m.boundary_faces()[f];
            let fc = Point::from(
                (m.vertex(a).coords + m.vertex(b).coords + m.vertex(c).coords) / 3.0,
            );
            assert!(m.face_normal(f).dot(&(fc - centroid)) > 0.0);
        }
    }
}
