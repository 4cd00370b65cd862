//! Text mesh format.
//!
//! Three sections introduced by header lines:
//!
//! ```text
//! nodes
//! <id> <x> <y> <z>
//! tets
//! <id> <v0> <v1> <v2> <v3>
//! tags
//! <vertex id> boundary|skeleton
//! ```
//!
//! Ids are zero-based and must be contiguous and ascending. Untagged
//! vertices are interior. `#` starts a comment. Boundary tags are validated
//! against the surface extracted from the tets.

use std::fmt::Write as _;
use std::path::Path;

use super::{Point, VertexClass, VolumetricMesh};
use crate::error::{Error, Result};

enum Section {
    None,
    Nodes,
    Tets,
    Tags,
}

pub fn parse_mesh(text: &str) -> Result<VolumetricMesh> {
    let mut vertices: Vec<Point> = Vec::new();
    let mut tets: Vec<[usize; 4]> = Vec::new();
    let mut boundary_tags: Vec<usize> = Vec::new();
    let mut skeleton_tags: Vec<usize> = Vec::new();
    let mut section = Section::None;

    let fail = |line: usize, message: &str| Error::MeshParse {
        line,
        message: message.to_string(),
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "nodes" => {
                section = Section::Nodes;
                continue;
            }
            "tets" => {
                section = Section::Tets;
                continue;
            }
            "tags" => {
                section = Section::Tags;
                continue;
            }
            _ => {}
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::None => return Err(fail(line_no, "data before any section header")),
            Section::Nodes => {
                if fields.len() != 4 {
                    return Err(fail(line_no, "expected `id x y z`"));
                }
                let id: usize = fields[0]
                    .parse()
                    .map_err(|_| fail(line_no, "bad node id"))?;
                if id != vertices.len() {
                    return Err(fail(line_no, "node ids must be contiguous from 0"));
                }
                let mut c = [0.0f64; 3];
                for (k, f) in fields[1..].iter().enumerate() {
                    c[k] = f.parse().map_err(|_| fail(line_no, "bad coordinate"))?;
                }
                vertices.push(Point::new(c[0], c[1], c[2]));
            }
            Section::Tets => {
                if fields.len() != 5 {
                    return Err(fail(line_no, "expected `id v0 v1 v2 v3`"));
                }
                let id: usize = fields[0].parse().map_err(|_| fail(line_no, "bad tet id"))?;
                if id != tets.len() {
                    return Err(fail(line_no, "tet ids must be contiguous from 0"));
                }
                let mut t = [0usize; 4];
                for (k, f) in fields[1..].iter().enumerate() {
                    t[k] = f.parse().map_err(|_| fail(line_no, "bad vertex index"))?;
                }
                tets.push(t);
            }
            Section::Tags => {
                if fields.len() != 2 {
                    return Err(fail(line_no, "expected `vertex_id boundary|skeleton`"));
                }
                let id: usize = fields[0]
                    .parse()
                    .map_err(|_| fail(line_no, "bad vertex id"))?;
                match fields[1] {
                    "boundary" => boundary_tags.push(id),
                    "skeleton" => skeleton_tags.push(id),
                    other => {
                        return Err(fail(line_no, &format!("unknown tag `{other}`")));
                    }
                }
            }
        }
    }

    if vertices.is_empty() {
        return Err(fail(0, "no nodes"));
    }
    if tets.is_empty() {
        return Err(fail(0, "no tets"));
    }
    VolumetricMesh::build(vertices, tets, &skeleton_tags, Some(&boundary_tags))
}

pub fn load_mesh<P: AsRef<Path>>(path: P) -> Result<VolumetricMesh> {
    let text = std::fs::read_to_string(path)?;
    parse_mesh(&text)
}

pub fn mesh_to_string(mesh: &VolumetricMesh) -> String {
    let mut s = String::new();
    s.push_str("nodes\n");
    for (i, p) in mesh.vertices().iter().enumerate() {
        let _ = writeln!(s, "{} {} {} {}", i, p.x, p.y, p.z);
    }
    s.push_str("tets\n");
    for (i, t) in mesh.tets().iter().enumerate() {
        let _ = writeln!(s, "{} {} {} {} {}", i, t[0], t[1], t[2], t[3]);
    }
    s.push_str("tags\n");
    for v in 0..mesh.n_vertices() {
        match mesh.class(v) {
            VertexClass::Boundary => {
                let _ = writeln!(s, "{v} boundary");
            }
            VertexClass::Skeleton => {
                let _ = writeln!(s, "{v} skeleton");
            }
            VertexClass::Interior => {}
        }
    }
    s
}

pub fn save_mesh<P: AsRef<Path>>(path: P, mesh: &VolumetricMesh) -> Result<()> {
    std::fs::write(path, mesh_to_string(mesh))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIVE_VERTEX: &str = "\
# center-split tet
nodes
0 0 0 0
1 1 0 0
2 0 1 0
3 0 0 1
4 0.25 0.25 0.25
tets
0 0 1 2 4
1 0 1 3 4
2 0 2 3 4
3 1 2 3 4
tags
0 boundary
1 boundary
2 boundary
3 boundary
4 skeleton
";

    #[test]
    fn parses_five_vertex_mesh() {
        let m = parse_mesh(FIVE_VERTEX).unwrap();
        assert_eq!(m.boundary_vertices().len(), 4);
        assert_eq!(m.skeleton_vertices(), &[4]);
        assert!(m.interior_vertices().is_empty());
    }

    #[test]
    fn missing_skeleton_tag_is_an_error() {
        let text = FIVE_VERTEX.replace("4 skeleton", "");
        // vertex 4 is untagged -> interior, so no skeleton exists
        let err = parse_mesh(&text).unwrap_err();
        assert!(matches!(err, Error::SkeletonMissing), "{err}");
    }

    #[test]
    fn single_tet_without_skeleton_tag() {
        let text = "\
nodes
0 0 0 0
1 1 0 0
2 0 1 0
3 0 0 1
tets
0 0 1 2 3
tags
0 boundary
1 boundary
2 boundary
3 boundary
";
        let err = parse_mesh(text).unwrap_err();
        assert!(matches!(err, Error::SkeletonMissing));
    }

    #[test]
    fn inverted_tet_file_loads_reoriented() {
        let text = FIVE_VERTEX.replace("0 0 1 2 4", "0 1 0 2 4");
        let m = parse_mesh(&text).unwrap();
        for i in 0..m.n_tets() {
            let [a, b, c, d] = m.tet(i);
            assert!(
                super::super::signed_tet_volume(m.vertex(a), m.vertex(b), m.vertex(c), m.vertex(d))
                    > 0.0
            );
        }
    }

    #[test]
    fn bad_tag_reports_line() {
        let text = FIVE_VERTEX.replace("4 skeleton", "4 banana");
        match parse_mesh(&text).unwrap_err() {
            Error::MeshParse { line, .. } => assert!(line > 0),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn roundtrip_through_text() {
        let m = parse_mesh(FIVE_VERTEX).unwrap();
        let m2 = parse_mesh(&mesh_to_string(&m)).unwrap();
        assert_eq!(m.n_vertices(), m2.n_vertices());
        assert_eq!(m.tets(), m2.tets());
        assert_eq!(m.classes(), m2.classes());
    }

    #[test]
    fn wrong_boundary_tag_is_mismatch() {
        // tag the interior-located vertex as boundary
        let text = FIVE_VERTEX.replace("4 skeleton", "4 boundary");
        let err = parse_mesh(&text).unwrap_err();
        assert!(matches!(err, Error::BoundaryTagMismatch { .. }), "{err}");
    }
}
