//! Integral three-dimensional polytopes with the origin as their unique
//! interior lattice point: convex hulls, polar duals, face lattices and
//! lattice-point counts.
//!
//! Facets are stored as `normal · x ≥ -offset` with a primitive inward normal.
//! The polytope is reflexive exactly when every offset is 1, and then the
//! normals are the vertices of the polar dual.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point3 = [i64; 3];

pub const ORIGIN: Point3 = [0, 0, 0];

#[inline]
pub fn dot(a: &Point3, b: &Point3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn sub(a: &Point3, b: &Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
fn cross(a: &Point3, b: &Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Sign of `(b - a) × (c - a) · (p - a)`, in `i128` so small coordinates can
/// never overflow.
fn orient(a: &Point3, b: &Point3, c: &Point3, p: &Point3) -> i128 {
    let n = cross(&sub(b, a), &sub(c, a));
    let d = sub(p, a);
    n.iter().zip(d.iter()).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn gcd3(v: &Point3) -> i64 {
    v[0].gcd(&v[1]).gcd(&v[2])
}

pub fn is_primitive(v: &Point3) -> bool {
    gcd3(v) == 1
}

fn primitive(v: &Point3) -> Point3 {
    let g = gcd3(v);
    [v[0] / g, v[1] / g, v[2] / g]
}

fn det3(a: &Point3, b: &Point3, c: &Point3) -> i64 {
    dot(a, &cross(b, c))
}

/// Number of lattice points strictly between two lattice points.
pub fn segment_interior_points(a: &Point3, b: &Point3) -> usize {
    let g = gcd3(&sub(b, a));
    if g == 0 {
        0
    } else {
        g as usize - 1
    }
}

/// All lattice points on the closed segment, ordered from `a` to `b`.
pub fn segment_lattice_points(a: &Point3, b: &Point3) -> Vec<Point3> {
    let d = sub(b, a);
    let g = gcd3(&d);
    if g == 0 {
        return vec![*a];
    }
    let step = [d[0] / g, d[1] / g, d[2] / g];
    (0..=g)
        .map(|k| [a[0] + k * step[0], a[1] + k * step[1], a[2] + k * step[2]])
        .collect()
}

/// Row-vector action `x ↦ x·M`.
pub fn apply_row(x: &Point3, m: &[[i64; 3]; 3]) -> Point3 {
    let mut out = [0; 3];
    for (j, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|i| x[i] * m[i][j]).sum();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Primitive inward normal.
    pub normal: Point3,
    /// Lattice distance of the facet plane from the origin.
    pub offset: i64,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: [usize; 2],
    pub facets: [usize; 2],
}

/// A proper face of a polytope together with its lattice points.
///
/// `interior_count` is l*: the number of lattice points in the relative
/// interior. A vertex counts itself, so l* of a vertex is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: u8,
    /// Vertex coordinates, sorted.
    pub vertices: Vec<Point3>,
    /// Indices of the facets containing this face.
    pub facets: Vec<usize>,
    pub lattice_points: Vec<Point3>,
    pub interior_count: usize,
}

#[derive(Clone, Debug)]
pub struct Polytope3 {
    name: Option<String>,
    vertices: Vec<Point3>,
    facets: Vec<Facet>,
    edges: Vec<Edge>,
    lattice_points: Vec<Point3>,
    faces: Vec<Face>,
}

/// Equality is equality of vertex sets.
impl PartialEq for Polytope3 {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polytope3 {}

impl Polytope3 {
    /// Convex hull of `points`, validated as a polytope whose only interior
    /// lattice point is the origin.
    pub fn hull(points: &[Point3]) -> Result<Self> {
        let p = Self::convex_hull(points)?;
        let extra: Vec<Point3> = p
            .interior_lattice_points()
            .into_iter()
            .filter(|x| *x != ORIGIN)
            .collect();
        if !extra.is_empty() {
            return Err(Error::ExtraInteriorPoints(extra));
        }
        Ok(p)
    }

    /// Convex hull of `points` requiring only full dimension and the origin
    /// in the interior.
    pub fn convex_hull(points: &[Point3]) -> Result<Self> {
        let mut pts: Vec<Point3> = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let triangles = triangulated_hull(&pts)?;

        let mut planes: BTreeMap<(Point3, i64), ()> = BTreeMap::new();
        for t in &triangles {
            let (a, b, c) = (&pts[t[0]], &pts[t[1]], &pts[t[2]]);
            let out = primitive(&cross(&sub(b, a), &sub(c, a)));
            let inward = [-out[0], -out[1], -out[2]];
            planes.insert((inward, dot(&out, a)), ());
        }
        if planes.keys().any(|&(_, off)| off <= 0) {
            return Err(Error::OriginNotInterior);
        }
        let planes: Vec<(Point3, i64)> = planes.into_keys().collect();

        let tight = |x: &Point3| -> Vec<usize> {
            (0..planes.len())
                .filter(|&f| dot(&planes[f].0, x) == -planes[f].1)
                .collect()
        };
        let vertices: Vec<Point3> = pts
            .iter()
            .filter(|x| {
                let t = tight(x);
                spans_three(&t.iter().map(|&f| planes[f].0).collect::<Vec<_>>())
            })
            .copied()
            .collect();

        let facets: Vec<Facet> = planes
            .iter()
            .enumerate()
            .map(|(f, &(normal, offset))| Facet {
                normal,
                offset,
                vertices: (0..vertices.len())
                    .filter(|&v| tight(&vertices[v]).contains(&f))
                    .collect(),
            })
            .collect();

        let mut edges = Vec::new();
        for f in 0..facets.len() {
            for g in f + 1..facets.len() {
                let common: Vec<usize> = facets[f]
                    .vertices
                    .iter()
                    .filter(|v| facets[g].vertices.contains(v))
                    .copied()
                    .collect();
                if common.len() == 2 {
                    edges.push(Edge {
                        ends: [common[0], common[1]],
                        facets: [f, g],
                    });
                }
            }
        }
        edges.sort_by_key(|e| e.ends);

        let mut poly = Self {
            name: None,
            vertices,
            facets,
            edges,
            lattice_points: Vec::new(),
            faces: Vec::new(),
        };
        poly.lattice_points = poly.scan_lattice_points();
        poly.faces = poly.build_faces();
        Ok(poly)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn lattice_points(&self) -> &[Point3] {
        &self.lattice_points
    }

    pub fn contains(&self, x: &Point3) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) >= -f.offset)
    }

    pub fn interior_lattice_points(&self) -> Vec<Point3> {
        self.lattice_points
            .iter()
            .filter(|x| self.facets.iter().all(|f| dot(&f.normal, x) > -f.offset))
            .copied()
            .collect()
    }

    pub fn boundary_lattice_points(&self) -> Vec<Point3> {
        self.lattice_points
            .iter()
            .filter(|x| self.facets.iter().any(|f| dot(&f.normal, x) == -f.offset))
            .copied()
            .collect()
    }

    /// Every facet at lattice distance one from the origin.
    pub fn is_reflexive(&self) -> bool {
        self.facets.iter().all(|f| f.offset == 1)
    }

    pub fn polar_dual(&self) -> Result<Self> {
        if let Some(f) = self.facets.iter().find(|f| f.offset != 1) {
            let n = f.normal;
            let d = f.offset;
            let frac = |x: i64| {
                let g = x.gcd(&d);
                if d / g == 1 {
                    format!("{}", x / g)
                } else {
                    format!("{}/{}", x / g, d / g)
                }
            };
            return Err(Error::NotReflexive {
                normal: n,
                offset: d,
                dual_vertex: format!("({}, {}, {})", frac(n[0]), frac(n[1]), frac(n[2])),
            });
        }
        let normals: Vec<Point3> = self.facets.iter().map(|f| f.normal).collect();
        let dual = Self::hull(&normals)?;
        Ok(match &self.name {
            Some(n) => dual.with_name(format!("{n}*")),
            None => dual,
        })
    }

    /// All faces: vertices, then edges, then facets, each in the order of the
    /// corresponding list on the polytope.
    pub fn face_lattice(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex_face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn edge_face(&self, i: usize) -> &Face {
        &self.faces[self.vertices.len() + i]
    }

    pub fn facet_face(&self, i: usize) -> &Face {
        &self.faces[self.vertices.len() + self.edges.len() + i]
    }

    pub fn faces_of_dim(&self, dim: u8) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    /// Looks a face up by its vertex set.
    pub fn find_face(&self, vertices: &[Point3]) -> Option<&Face> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        key.dedup();
        self.faces.iter().find(|f| f.vertices == key)
    }

    pub fn is_vertex(&self, x: &Point3) -> bool {
        self.vertices.binary_search(x).is_ok()
    }

    /// The face of `dual` paired with `face` by `(x, y) = -1` for all `x` in
    /// `face`. `dual` must be the polar dual of `self`.
    pub fn dual_face_in<'a>(&self, dual: &'a Polytope3, face: &Face) -> Result<&'a Face> {
        let own = self.find_face(&face.vertices).ok_or(Error::NotAFace)?;
        if own.dim != face.dim {
            return Err(Error::NotAFace);
        }
        let image: Vec<Point3> = dual
            .vertices
            .iter()
            .filter(|y| face.vertices.iter().all(|x| dot(x, y) == -1))
            .copied()
            .collect();
        dual.find_face(&image).ok_or(Error::NotAFace)
    }

    pub fn dual_face(&self, face: &Face) -> Result<Face> {
        let dual = self.polar_dual()?;
        self.dual_face_in(&dual, face).cloned()
    }

    /// Lattice points lying on some edge (vertices included), sorted.
    pub fn edge_lattice_points(&self) -> Vec<Point3> {
        let mut pts: Vec<Point3> = self
            .faces_of_dim(1)
            .flat_map(|f| f.lattice_points.iter().copied())
            .collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    /// Vertex images under the row action `x ↦ x·M`, sorted.
    pub fn transformed_vertices(&self, m: &[[i64; 3]; 3]) -> Vec<Point3> {
        let mut v: Vec<Point3> = self.vertices.iter().map(|x| apply_row(x, m)).collect();
        v.sort_unstable();
        v
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.facets.len() as i64
    }

    fn scan_lattice_points(&self) -> Vec<Point3> {
        let lo: Vec<i64> = (0..3).map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..3).map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap()).collect();
        let mut out = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    let p = [x, y, z];
                    if self.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    fn tight_facets(&self, x: &Point3) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| dot(&self.facets[f].normal, x) == -self.facets[f].offset)
            .collect()
    }

    fn build_faces(&self) -> Vec<Face> {
        let tight: Vec<(Point3, Vec<usize>)> = self
            .lattice_points
            .iter()
            .map(|x| (*x, self.tight_facets(x)))
            .collect();
        let make = |dim: u8, mut verts: Vec<Point3>, facets: Vec<usize>| {
            verts.sort_unstable();
            let on_face: Vec<&(Point3, Vec<usize>)> = tight
                .iter()
                .filter(|(_, t)| facets.iter().all(|f| t.contains(f)))
                .collect();
            Face {
                dim,
                vertices: verts,
                interior_count: on_face.iter().filter(|(_, t)| *t == facets).count(),
                lattice_points: on_face.iter().map(|(x, _)| *x).collect(),
                facets,
            }
        };
        let mut faces = Vec::new();
        for v in &self.vertices {
            faces.push(make(0, vec![*v], self.tight_facets(v)));
        }
        for e in &self.edges {
            let verts = vec![self.vertices[e.ends[0]], self.vertices[e.ends[1]]];
            faces.push(make(1, verts, e.facets.to_vec()));
        }
        for (i, f) in self.facets.iter().enumerate() {
            let verts = f.vertices.iter().map(|&v| self.vertices[v]).collect();
            faces.push(make(2, verts, vec![i]));
        }
        faces
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: PolytopeFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("polytope JSON: {e}")))?;
        Ok(Self::hull(&file.vertices)?.with_name(file.name))
    }

    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile {
            name: self.name.clone().unwrap_or_default(),
            vertices: self.vertices.clone(),
        }
    }
}

impl fmt::Display for Polytope3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} vertices, {} edges, {} facets, {} lattice points",
            self.name.as_deref().unwrap_or("polytope"),
            self.vertices.len(),
            self.edges.len(),
            self.facets.len(),
            self.lattice_points.len()
        )
    }
}

/// On-disk polytope: `{"name": ..., "vertices": [[x, y, z], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub name: String,
    pub vertices: Vec<Point3>,
}

fn spans_three(normals: &[Point3]) -> bool {
    let n = normals.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if det3(&normals[i], &normals[j], &normals[k]) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Incremental beneath-beyond hull. Returns outward-oriented triangles over
/// indices into `pts`; points on or inside the current hull are skipped, so
/// coplanar facets come out as several triangles sharing a plane.
fn triangulated_hull(pts: &[Point3]) -> Result<Vec<[usize; 3]>> {
    let n = pts.len();
    if n < 4 {
        return Err(Error::DegenerateHull);
    }
    let i0 = 0;
    let i1 = 1;
    let i2 = (2..n)
        .find(|&i| cross(&sub(&pts[i1], &pts[i0]), &sub(&pts[i], &pts[i0])) != [0, 0, 0])
        .ok_or(Error::DegenerateHull)?;
    let i3 = (2..n)
        .find(|&i| orient(&pts[i0], &pts[i1], &pts[i2], &pts[i]) != 0)
        .ok_or(Error::DegenerateHull)?;

    let tet = [i0, i1, i2, i3];
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for skip in 0..4 {
        let t: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| tet[k]).collect();
        let mut f = [t[0], t[1], t[2]];
        if orient(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[tet[skip]]) > 0 {
            f.swap(1, 2);
        }
        faces.push(f);
    }

    for p in 0..n {
        if tet.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|f| orient(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[p]) > 0)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut directed: HashSet<(usize, usize)> = HashSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            for k in 0..3 {
                directed.insert((f[k], f[(k + 1) % 3]));
            }
        }
        let mut horizon: Vec<(usize, usize)> = directed
            .iter()
            .filter(|&&(a, b)| !directed.contains(&(b, a)))
            .copied()
            .collect();
        horizon.sort_unstable();
        let mut kept: Vec<[usize; 3]> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        kept.extend(horizon.into_iter().map(|(a, b)| [a, b, p]));
        faces = kept;
    }
    Ok(faces)
}
