//! Polyhedral meshes spanned by point orbits, and OFF/OBJ text formats.
//!
//! Faces come from the alternating cycles `g, g s_i, g s_i s_j, ...` of the
//! Cayley graph. When vertices of the graph map to coinciding points (a
//! chamber point on a mirror) the cycles are collapsed and faces with fewer
//! than three distinct corners are dropped.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::coxeter::CayleyGraph;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MeshMetadata {
    pub group: String,
    pub point: Vec<f64>,
    pub lambda: Option<f64>,
    pub class_lengths: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeshDocument {
    pub vertices: Vec<[f64; 3]>,
    /// Vertex-index cycles, oriented counter-clockwise seen from outside.
    pub faces: Vec<Vec<usize>>,
    pub metadata: MeshMetadata,
}

/// Identifies points closer than `tol`; returns the distinct points and, for
/// every input, the index of its representative.
pub fn merge_points(points: &[Vec<f64>], tol: f64) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut distinct: Vec<Vec<f64>> = Vec::new();
    let mut map = Vec::with_capacity(points.len());
    for p in points {
        match distinct.iter().position(|q| linalg::distance(p, q) <= tol) {
            Some(i) => map.push(i),
            None => {
                map.push(distinct.len());
                distinct.push(p.clone());
            }
        }
    }
    (distinct, map)
}

impl MeshDocument {
    /// Mesh of the points `points[v]` attached to the vertices of a rank-3
    /// Cayley graph. Points closer than `tol` are merged.
    pub fn from_cayley_points(graph: &CayleyGraph, points: &[Vec<f64>], tol: f64) -> Result<Self> {
        if points.len() != graph.vertex_count() {
            return Err(Error::Dimension(format!(
                "{} points for {} vertices",
                points.len(),
                graph.vertex_count()
            )));
        }
        if let Some(p) = points.iter().find(|p| p.len() != 3) {
            return Err(Error::Dimension(format!("mesh points must be 3D, got dimension {}", p.len())));
        }
        let (distinct, map) = merge_points(points, tol);
        let vertices: Vec<[f64; 3]> = distinct.iter().map(|p| [p[0], p[1], p[2]]).collect();

        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        let classes = graph.class_count();
        for i in 0..classes {
            for j in (i + 1)..classes {
                for start in 0..graph.vertex_count() {
                    let len = graph.alternating_cycle_length(start, i, j);
                    let mut cycle = Vec::with_capacity(len);
                    let mut v = start;
                    for step in 0..len {
                        cycle.push(map[v]);
                        v = graph.neighbor(v, if step % 2 == 0 { i } else { j });
                    }
                    let Some(face) = collapse_cycle(&cycle) else {
                        continue;
                    };
                    let key: Vec<usize> = face.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
                    if seen.insert(key) {
                        faces.push(face);
                    }
                }
            }
        }
        let mut mesh = Self {
            vertices,
            faces,
            metadata: MeshMetadata::default(),
        };
        mesh.orient_outward();
        Ok(mesh)
    }

    pub fn with_metadata(mut self, metadata: MeshMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    fn orient_outward(&mut self) {
        for face in &mut self.faces {
            let normal = newell_normal(&self.vertices, face);
            let c = centroid(&self.vertices, face);
            if linalg::dot(&normal, &c) < 0.0 {
                face.reverse();
            }
        }
    }

    /// Undirected edges of the face cycles, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for f in &self.faces {
            for (k, &a) in f.iter().enumerate() {
                let b = f[(k + 1) % f.len()];
                set.insert((a.min(b), a.max(b)));
            }
        }
        set.into_iter().collect()
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.faces.len() as i64
    }

    /// True iff every edge borders exactly two faces.
    pub fn is_closed_manifold(&self) -> bool {
        let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for f in &self.faces {
            for (k, &a) in f.iter().enumerate() {
                let b = f[(k + 1) % f.len()];
                *count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    /// Number of faces of each size.
    pub fn face_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for f in &self.faces {
            *census.entry(f.len()).or_default() += 1;
        }
        census
    }

    /// Sizes of the faces around vertex `v` in cyclic order, in the
    /// lexicographically smallest rotation or reflection.
    pub fn vertex_configuration(&self, v: usize) -> Vec<usize> {
        let p = self.vertices[v];
        let axis = unit(&p);
        let incident: Vec<&Vec<usize>> = self.faces.iter().filter(|f| f.contains(&v)).collect();
        if incident.is_empty() {
            return Vec::new();
        }
        // tangent frame at v
        let helper = if axis[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let u = unit(&cross(&axis, &helper));
        let w = cross(&axis, &u);
        let mut around: Vec<(f64, usize)> = incident
            .iter()
            .map(|f| {
                let c = centroid(&self.vertices, f);
                let d = [c[0] - p[0], c[1] - p[1], c[2] - p[2]];
                (linalg::dot(&d, &w).atan2(linalg::dot(&d, &u)), f.len())
            })
            .collect();
        around.sort_by(|a, b| a.0.total_cmp(&b.0));
        canonical_cycle(&around.iter().map(|a| a.1).collect::<Vec<_>>())
    }

    /// `(a,b,c,...)` if all vertices share one configuration.
    pub fn solid_label(&self) -> Option<String> {
        let first = self.vertex_configuration(0);
        if first.is_empty() || (1..self.vertices.len()).any(|v| self.vertex_configuration(v) != first) {
            return None;
        }
        let parts: Vec<String> = first.iter().map(|s| s.to_string()).collect();
        Some(format!("({})", parts.join(",")))
    }

    pub fn to_off_string(&self) -> String {
        let mut s = String::new();
        s.push_str("OFF\n");
        let _ = writeln!(s, "{} {} {}", self.vertices.len(), self.faces.len(), self.edges().len());
        for v in &self.vertices {
            let _ = writeln!(s, "{:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            let _ = write!(s, "{}", f.len());
            for i in f {
                let _ = write!(s, " {i}");
            }
            s.push('\n');
        }
        s
    }

    pub fn to_obj_string(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            s.push('f');
            for i in f {
                let _ = write!(s, " {}", i + 1);
            }
            s.push('\n');
        }
        s
    }

    /// Writes OFF text; returns the number of bytes written.
    pub fn write_off(&self, path: &Path) -> Result<usize> {
        write_text(path, &self.to_off_string())
    }

    pub fn write_obj(&self, path: &Path) -> Result<usize> {
        write_text(path, &self.to_obj_string())
    }
}

fn write_text(path: &Path, text: &str) -> Result<usize> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text.len())
}

/// Parses OFF text (comments after `#` and blank lines are ignored).
pub fn parse_off(text: &str) -> Result<MeshDocument> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    if lines.next() != Some("OFF") {
        return Err(Error::Parse("missing OFF header".into()));
    }
    let counts = parse_numbers::<usize>(lines.next().ok_or_else(|| Error::Parse("missing counts".into()))?)?;
    if counts.len() != 3 {
        return Err(Error::Parse("counts line must be `V F E`".into()));
    }
    let mut vertices = Vec::with_capacity(counts[0]);
    for _ in 0..counts[0] {
        let v = parse_numbers::<f64>(lines.next().ok_or_else(|| Error::Parse("missing vertex line".into()))?)?;
        if v.len() != 3 {
            return Err(Error::Parse(format!("vertex line has {} coordinates", v.len())));
        }
        vertices.push([v[0], v[1], v[2]]);
    }
    let mut faces = Vec::with_capacity(counts[1]);
    for _ in 0..counts[1] {
        let f = parse_numbers::<usize>(lines.next().ok_or_else(|| Error::Parse("missing face line".into()))?)?;
        if f.is_empty() || f.len() != f[0] + 1 {
            return Err(Error::Parse("face line length does not match its count".into()));
        }
        if let Some(i) = f[1..].iter().find(|&&i| i >= vertices.len()) {
            return Err(Error::Parse(format!("face index {i} out of range")));
        }
        faces.push(f[1..].to_vec());
    }
    Ok(MeshDocument {
        vertices,
        faces,
        metadata: MeshMetadata::default(),
    })
}

fn parse_numbers<T: std::str::FromStr>(line: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| Error::Parse(format!("bad number `{t}`"))))
        .collect()
}

/// Removes cyclically consecutive repeats; `None` if fewer than three remain.
fn collapse_cycle(cycle: &[usize]) -> Option<Vec<usize>> {
    let mut out: Vec<usize> = Vec::with_capacity(cycle.len());
    for &v in cycle {
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    let distinct: BTreeSet<_> = out.iter().collect();
    (distinct.len() >= 3 && distinct.len() == out.len()).then_some(out)
}

fn canonical_cycle(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut best: Option<Vec<usize>> = None;
    for rev in [false, true] {
        let s: Vec<usize> = if rev { seq.iter().rev().copied().collect() } else { seq.to_vec() };
        for r in 0..n {
            let cand: Vec<usize> = (0..n).map(|i| s[(i + r) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn newell_normal(vertices: &[[f64; 3]], face: &[usize]) -> [f64; 3] {
    let mut n = [0.0; 3];
    for (k, &a) in face.iter().enumerate() {
        let p = vertices[a];
        let q = vertices[face[(k + 1) % face.len()]];
        n[0] += (p[1] - q[1]) * (p[2] + q[2]);
        n[1] += (p[2] - q[2]) * (p[0] + q[0]);
        n[2] += (p[0] - q[0]) * (p[1] + q[1]);
    }
    n
}

fn centroid(vertices: &[[f64; 3]], face: &[usize]) -> [f64; 3] {
    let mut c = [0.0; 3];
    for &i in face {
        for d in 0..3 {
            c[d] += vertices[i][d];
        }
    }
    c.map(|x| x / face.len() as f64)
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(a: &[f64; 3]) -> [f64; 3] {
    let n = linalg::norm(a);
    a.map(|x| x / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MeshDocument {
        MeshDocument {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            faces: vec![vec![0, 1, 2]],
            metadata: MeshMetadata::default(),
        }
    }

    #[test]
    fn triangle_off_text() {
        let text = triangle().to_off_string();
        assert_eq!(text.lines().count(), 6);
        assert!(text.starts_with("OFF\n3 1 3\n"));
        assert!(text.ends_with("3 0 1 2\n"));
        assert_eq!(parse_off(&text).unwrap(), triangle());
    }

    #[test]
    fn collapse_rules() {
        assert_eq!(collapse_cycle(&[1, 1, 2, 2, 3, 3]), Some(vec![1, 2, 3]));
        assert_eq!(collapse_cycle(&[1, 2, 2, 1]), None);
        assert_eq!(collapse_cycle(&[4, 1, 2, 3, 4]), Some(vec![4, 1, 2, 3]));
    }

    #[test]
    fn canonical_rotation_and_reflection() {
        assert_eq!(canonical_cycle(&[5, 4, 3, 4]), vec![3, 4, 5, 4]);
        assert_eq!(canonical_cycle(&[10, 6, 4]), vec![4, 6, 10]);
        assert_eq!(canonical_cycle(&[6, 10, 4]), vec![4, 6, 10]);
    }

    #[test]
    fn malformed_off_is_rejected() {
        assert!(parse_off("OFF\n1 0 0\n0 0\n").is_err());
        assert!(parse_off("OFX\n").is_err());
        assert!(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n").is_err());
    }
}
