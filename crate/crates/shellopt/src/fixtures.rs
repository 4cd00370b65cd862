//! Structured fixture meshes for tests, benchmarks, and demos.
//!
//! These generators produce small valid meshes (box bars, balls, voxel
//! shapes) with sensible skeletons. They are not a general-purpose mesher;
//! real problems load meshes from files.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use nalgebra::Vector3;

use crate::error::Result;
use crate::mesh::{Point, VolumetricMesh};

/// Center-split tet: 4 boundary vertices, 1 interior skeleton vertex.
pub fn five_vertex() -> Result<VolumetricMesh> {
    let vertices = vec![
        Point::new(0.0, 0.0, 0.0),
        Point::new(1.0, 0.0, 0.0),
        Point::new(0.0, 1.0, 0.0),
        Point::new(0.0, 0.0, 1.0),
        Point::new(0.25, 0.25, 0.25),
    ];
    let tets = vec![[0, 1, 2, 4], [0, 1, 3, 4], [0, 2, 3, 4], [1, 2, 3, 4]];
    VolumetricMesh::build(vertices, tets, &[4], None)
}

/// Kuhn 6-tet split of the unit cube, as paths through the vertex lattice.
/// All cells share the same main-diagonal direction, so face diagonals agree
/// between neighboring cells.
const CUBE_PATHS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn kuhn_tets(corner: impl Fn(usize, usize, usize) -> usize) -> Vec<[usize; 4]> {
    // corner(bx, by, bz) with bits in {0,1}
    let mut tets = Vec::with_capacity(6);
    for path in CUBE_PATHS {
        let mut bits = [0usize; 3];
        let mut nodes = [corner(0, 0, 0); 4];
        for (step, &axis) in path.iter().enumerate() {
            bits[axis] = 1;
            nodes[step + 1] = corner(bits[0], bits[1], bits[2]);
        }
        tets.push(nodes);
    }
    tets
}

/// Axis-aligned box of `nx x ny x nz` cells of side `h`, Kuhn-split into
/// `6*nx*ny*nz` tets. The skeleton is the central lattice line along x.
/// Requires at least 2 cells in each direction so the skeleton is interior.
pub fn box_grid(nx: usize, ny: usize, nz: usize, h: f64) -> Result<VolumetricMesh> {
    assert!(nx >= 2 && ny >= 2 && nz >= 2, "box_grid needs >= 2 cells per axis");
    let vid = |i: usize, j: usize, k: usize| (k * (ny + 1) + j) * (nx + 1) + i;
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1) * (nz + 1));
    for k in 0..=nz {
        for j in 0..=ny {
            for i in 0..=nx {
                vertices.push(Point::new(i as f64 * h, j as f64 * h, k as f64 * h));
            }
        }
    }
    let mut tets = Vec::with_capacity(6 * nx * ny * nz);
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                tets.extend(kuhn_tets(|bx, by, bz| vid(i + bx, j + by, k + bz)));
            }
        }
    }
    let (jm, km) = (ny / 2, nz / 2);
    let skeleton: Vec<usize> = (1..nx).map(|i| vid(i, jm, km)).collect();
    VolumetricMesh::build(vertices, tets, &skeleton, None)
}

/// Icosphere: vertices on the unit sphere, `20 * 4^subdivisions` triangles.
pub fn icosphere(subdivisions: usize) -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector3<f64>> = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vector3::new(x, y, z).normalize())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut midpoint: HashMap<[usize; 2], usize> = HashMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let mut mid = |u: usize, v: usize| {
                let key = [u.min(v), u.max(v)];
                *midpoint.entry(key).or_insert_with(|| {
                    verts.push((verts[u] + verts[v]).normalize());
                    verts.len() - 1
                })
            };
            let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }
    (verts, faces)
}

/// Split the prism (a0,b0,c0)-(a1,b1,c1) into 3 tets. Every quad face is cut
/// by the diagonal through its smallest vertex id, so neighboring prisms
/// that share a quad agree on the cut.
fn split_prism(p: [usize; 6]) -> [[usize; 4]; 3] {
    const ROTATIONS: [[usize; 6]; 6] = [
        [0, 1, 2, 3, 4, 5],
        [1, 2, 0, 4, 5, 3],
        [2, 0, 1, 5, 3, 4],
        [3, 5, 4, 0, 2, 1],
        [4, 3, 5, 1, 0, 2],
        [5, 4, 3, 2, 1, 0],
    ];
    let min_pos = (0..6).min_by_key(|&i| p[i]).unwrap();
    let q: [usize; 6] = ROTATIONS[min_pos].map(|i| p[i]);
    // remaining ambiguous quad is (q1, q2, q5, q4)
    if q[1].min(q[5]) < q[2].min(q[4]) {
        [[q[0], q[1], q[2], q[5]], [q[0], q[1], q[5], q[4]], [q[0], q[4], q[5], q[3]]]
    } else {
        [[q[0], q[1], q[2], q[4]], [q[0], q[4], q[2], q[5]], [q[0], q[4], q[5], q[3]]]
    }
}

/// Ball built from concentric icosphere layers joined by prisms, with a
/// center vertex fanning the innermost layer. Layer 1 is the skeleton.
/// `shape` scales the radius per direction (1.0 = round ball).
pub fn ball_with(
    subdivisions: usize,
    layers: usize,
    radius: f64,
    shape: impl Fn(&Vector3<f64>) -> f64,
) -> Result<VolumetricMesh> {
    assert!(layers >= 2, "need at least skeleton + boundary layers");
    let (sphere, faces) = icosphere(subdivisions);
    let per_layer = sphere.len();
    let mut vertices = vec![Point::origin()];
    for layer in 1..=layers {
        let r = radius * layer as f64 / layers as f64;
        for dir in &sphere {
            let p = dir * r * shape(dir);
            vertices.push(Point::from(p));
        }
    }
    let lid = |layer: usize, v: usize| 1 + (layer - 1) * per_layer + v;
    let mut tets = Vec::new();
    for &[a, b, c] in &faces {
        tets.push([0, lid(1, a), lid(1, b), lid(1, c)]);
    }
    for layer in 1..layers {
        for &[a, b, c] in &faces {
            let prism = [
                lid(layer, a),
                lid(layer, b),
                lid(layer, c),
                lid(layer + 1, a),
                lid(layer + 1, b),
                lid(layer + 1, c),
            ];
            tets.extend(split_prism(prism));
        }
    }
    let skeleton: Vec<usize> = (0..per_layer).map(|v| lid(1, v)).collect();
    VolumetricMesh::build(vertices, tets, &skeleton, None)
}

/// Round ball; skeleton is the innermost icosphere layer.
pub fn ball(subdivisions: usize, layers: usize, radius: f64) -> Result<VolumetricMesh> {
    ball_with(subdivisions, layers, radius, |_| 1.0)
}

/// Voxel shape: union of unit lattice cells, Kuhn-split. `skeleton` lists
/// lattice vertex coordinates that must exist and be interior.
pub fn voxel_shape(
    cells: &BTreeSet<(i32, i32, i32)>,
    h: f64,
    skeleton: &[(i32, i32, i32)],
) -> Result<VolumetricMesh> {
    let mut vertex_ids: BTreeMap<(i32, i32, i32), usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    for &(cx, cy, cz) in cells {
        for dz in 0..=1 {
            for dy in 0..=1 {
                for dx in 0..=1 {
                    let key = (cx + dx, cy + dy, cz + dz);
                    vertex_ids.entry(key).or_insert_with(|| {
                        vertices.push(Point::new(
                            key.0 as f64 * h,
                            key.1 as f64 * h,
                            key.2 as f64 * h,
                        ));
                        vertices.len() - 1
                    });
                }
            }
        }
    }
    let mut tets = Vec::with_capacity(6 * cells.len());
    for &(cx, cy, cz) in cells {
        tets.extend(kuhn_tets(|bx, by, bz| {
            vertex_ids[&(cx + bx as i32, cy + by as i32, cz + bz as i32)]
        }));
    }
    let skeleton_ids: Vec<usize> = skeleton.iter().map(|key| vertex_ids[key]).collect();
    VolumetricMesh::build(vertices, tets, &skeleton_ids, None)
}

/// Four-limbed cross: two 3x3-cell bars crossing at the origin, with an
/// axis skeleton through each limb. A small multi-limb shape for cavity
/// and watertightness tests.
pub fn multi_limb() -> Result<VolumetricMesh> {
    let mut cells = BTreeSet::new();
    for x in -4..4 {
        for y in -1..2 {
            for z in -1..2 {
                cells.insert((x, y, z));
            }
        }
    }
    for z in -4..4 {
        for y in -1..2 {
            for x in -1..2 {
                cells.insert((x, y, z));
            }
        }
    }
    let mut skeleton = Vec::new();
    for x in -3..=3 {
        skeleton.push((x, 0, 0));
    }
    for z in -3..=3 {
        if z != 0 {
            skeleton.push((0, 0, z));
        }
    }
    voxel_shape(&cells, 1.0, &skeleton)
}
