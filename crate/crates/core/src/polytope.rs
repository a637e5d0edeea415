//! Delzant moment polytopes in half-space form.
//!
//! A polytope is a list of facets `<x, normal> >= offset` with primitive inward
//! normals. Facet `i` (0-based) is the divisor `D{i+1}` in every report.
//!
//! Vertices are found by walking the edge graph: starting from one vertex, each
//! incident edge is followed until the first facet it hits. Smoothness is
//! checked along the way, since the edge directions at a vertex are only
//! integral when its normals form a lattice basis.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{determinant, LatticeError, LatticeVector};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("polytope dimension must be positive")]
    ZeroDimension,
    #[error("facet D{facet}: {source}")]
    BadNormal {
        facet: usize,
        #[source]
        source: LatticeError,
    },
    #[error("facet D{facet}: normal {normal} is not primitive")]
    NonPrimitiveNormal { facet: usize, normal: LatticeVector },
    #[error("half-space intersection is unbounded")]
    Unbounded,
    #[error("half-space intersection is empty")]
    Empty,
    #[error("not Delzant at vertex {vertex}: {reason}")]
    NotDelzant { vertex: String, reason: String },
    #[error("facet D{facet} does not touch the polytope")]
    RedundantFacet { facet: usize },
    #[error("not monotone: {0}")]
    NotMonotone(String),
    #[error("point has dimension {found}, polytope has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid polytope JSON: {0}")]
    Json(String),
}

/// `<x, normal> >= offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    #[serde(with = "rational")]
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: LatticeVector, offset: Rational) -> Self {
        HalfSpace { normal, offset }
    }

    /// `<x, normal> - offset`; nonnegative exactly on the half-space.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot_q(&self.normal, x) - &self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelzantPolytope {
    dim: usize,
    facets: Vec<HalfSpace>,
}

/// A vertex together with its local cone.
///
/// `edge_directions[j]` leaves the facet `incident_facets[j]` and stays on all
/// the other incident facets, so it pairs to 1 with that facet's normal and to
/// 0 with the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFigure {
    pub position: Vec<Rational>,
    pub incident_facets: Vec<usize>,
    pub edge_directions: Vec<LatticeVector>,
}

impl VertexFigure {
    /// `p23`-style label from the 1-based facet indices.
    pub fn label(&self) -> String {
        vertex_label(&self.incident_facets)
    }

    pub fn is_integral(&self) -> bool {
        self.position.iter().all(|c| c.is_integer())
    }
}

pub(crate) fn vertex_label(facets: &[usize]) -> String {
    if facets.iter().all(|&f| f < 9) {
        let digits: String = facets.iter().map(|f| (f + 1).to_string()).collect();
        format!("p{digits}")
    } else {
        let parts: Vec<String> = facets.iter().map(|f| (f + 1).to_string()).collect();
        format!("p_{{{}}}", parts.join(","))
    }
}

/// One edge of the polytope, `endpoints` indexing into the vertex list.
///
/// `direction` points from `endpoints.0` to `endpoints.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSegment {
    pub endpoints: (usize, usize),
    pub direction: LatticeVector,
    pub lattice_length: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: Vec<VertexFigure>,
    pub edges: Vec<EdgeSegment>,
}

impl DelzantPolytope {
    pub fn new(dim: usize, facets: Vec<HalfSpace>) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        for (i, f) in facets.iter().enumerate() {
            if f.normal.dim() != dim {
                return Err(PolytopeError::BadNormal {
                    facet: i + 1,
                    source: LatticeError::DimensionMismatch {
                        expected: dim,
                        found: f.normal.dim(),
                    },
                });
            }
            if f.normal.is_zero() {
                return Err(PolytopeError::BadNormal {
                    facet: i + 1,
                    source: LatticeError::ZeroVector,
                });
            }
            if !f.normal.is_primitive() {
                return Err(PolytopeError::NonPrimitiveNormal {
                    facet: i + 1,
                    normal: f.normal.clone(),
                });
            }
        }
        Ok(DelzantPolytope { dim, facets })
    }

    pub fn from_json(s: &str) -> Result<Self, PolytopeError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            dim: usize,
            facets: Vec<HalfSpace>,
        }
        let f: File = serde_json::from_str(s).map_err(|e| PolytopeError::Json(e.to_string()))?;
        DelzantPolytope::new(f.dim, f.facets)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polytope serializes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// The polytope moved by `t`: every point `x` becomes `x + t`.
    pub fn translate(&self, t: &[Rational]) -> Result<DelzantPolytope, PolytopeError> {
        if t.len() != self.dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.dim,
                found: t.len(),
            });
        }
        let facets = self
            .facets
            .iter()
            .map(|f| HalfSpace::new(f.normal.clone(), &f.offset + dot_q(&f.normal, t)))
            .collect();
        Ok(DelzantPolytope {
            dim: self.dim,
            facets,
        })
    }

    pub fn enumerate_vertices(&self) -> Result<Vec<VertexFigure>, PolytopeError> {
        Ok(self.skeleton()?.vertices)
    }

    pub fn enumerate_edges(&self) -> Result<Vec<EdgeSegment>, PolytopeError> {
        Ok(self.skeleton()?.edges)
    }

    /// Vertices and edges in one pass, both in deterministic order:
    /// vertices lexicographic by position, edges by endpoint indices.
    pub fn skeleton(&self) -> Result<Skeleton, PolytopeError> {
        let start = self.initial_vertex()?;
        let mut seen: BTreeMap<Vec<Rational>, VertexFigure> = BTreeMap::new();
        let mut raw_edges: Vec<(Vec<Rational>, Vec<Rational>, LatticeVector, Rational)> =
            Vec::new();
        let mut queue = VecDeque::from([start]);

        while let Some(pos) = queue.pop_front() {
            if seen.contains_key(&pos) {
                continue;
            }
            let fig = self.vertex_figure(&pos)?;
            for dir in &fig.edge_directions {
                let (t, next) = self.follow_edge(&pos, dir)?;
                if !seen.contains_key(&next) {
                    queue.push_back(next.clone());
                }
                raw_edges.push((pos.clone(), next, dir.clone(), t));
            }
            seen.insert(pos, fig);
        }

        for i in 0..self.facets.len() {
            if !seen.values().any(|v| v.incident_facets.contains(&i)) {
                return Err(PolytopeError::RedundantFacet { facet: i + 1 });
            }
        }

        let index: BTreeMap<&Vec<Rational>, usize> =
            seen.keys().enumerate().map(|(i, p)| (p, i)).collect();
        let mut edges = BTreeMap::new();
        for (a, b, dir, len) in &raw_edges {
            let (ia, ib) = (index[a], index[b]);
            if ia < ib {
                edges.insert(
                    (ia, ib),
                    EdgeSegment {
                        endpoints: (ia, ib),
                        direction: dir.clone(),
                        lattice_length: len.clone(),
                    },
                );
            }
        }

        Ok(Skeleton {
            vertices: seen.into_values().collect(),
            edges: edges.into_values().collect(),
        })
    }

    /// The local cone at `pos`, which must be a vertex.
    fn vertex_figure(&self, pos: &[Rational]) -> Result<VertexFigure, PolytopeError> {
        let active: Vec<usize> = (0..self.facets.len())
            .filter(|&i| self.facets[i].slack(pos).is_zero())
            .collect();
        let label = || format_point(pos);
        if active.len() != self.dim {
            return Err(PolytopeError::NotDelzant {
                vertex: label(),
                reason: format!("{} facets meet, expected {}", active.len(), self.dim),
            });
        }
        let rows: Vec<Vec<i64>> = active
            .iter()
            .map(|&i| self.facets[i].normal.coords().to_vec())
            .collect();
        let det = determinant(&rows);
        if det.abs() != 1 {
            return Err(PolytopeError::NotDelzant {
                vertex: label(),
                reason: format!("normals have determinant {det}"),
            });
        }
        let edge_directions = (0..self.dim)
            .map(|j| {
                let rhs: Vec<Rational> = (0..self.dim).map(|r| int(i64::from(r == j))).collect();
                let sol = solve_square(&to_q_rows(&rows), &rhs).expect("unimodular system");
                let coords = sol
                    .iter()
                    .map(|c| rational::to_i64(c).expect("unimodular inverse is integral"))
                    .collect();
                LatticeVector::new(coords).expect("dim > 0")
            })
            .collect();
        Ok(VertexFigure {
            position: pos.to_vec(),
            incident_facets: active,
            edge_directions,
        })
    }

    /// Moves from `pos` along `dir` until the first facet blocks, returning
    /// the step length and the new vertex.
    fn follow_edge(
        &self,
        pos: &[Rational],
        dir: &LatticeVector,
    ) -> Result<(Rational, Vec<Rational>), PolytopeError> {
        let mut best: Option<Rational> = None;
        for f in &self.facets {
            let rate = f.normal.pairing(dir).expect("checked dims");
            if rate < 0 {
                let t = f.slack(pos) / int(-rate);
                if best.as_ref().is_none_or(|b| t < *b) {
                    best = Some(t);
                }
            }
        }
        let t = best.ok_or(PolytopeError::Unbounded)?;
        let next = pos
            .iter()
            .zip(dir.coords())
            .map(|(p, &d)| p + &t * int(d))
            .collect();
        Ok((t, next))
    }

    /// First feasible intersection of `dim` facets, in lexicographic order of
    /// facet subsets.
    fn initial_vertex(&self) -> Result<Vec<Rational>, PolytopeError> {
        let n = self.dim;
        let m = self.facets.len();
        let all_rows: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .map(|f| f.normal.coords().iter().map(|&c| int(c)).collect())
            .collect();
        if rank(&all_rows) < n {
            // No vertices; a pointed region is impossible, so it is either
            // empty or contains a line.
            return Err(PolytopeError::Unbounded);
        }
        let mut subset: Vec<usize> = (0..n).collect();
        loop {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| all_rows[i].clone()).collect();
            let rhs: Vec<Rational> = subset
                .iter()
                .map(|&i| self.facets[i].offset.clone())
                .collect();
            if let Some(x) = solve_square(&rows, &rhs) {
                if self.contains(&x) {
                    return Ok(x);
                }
            }
            if !next_combination(&mut subset, m) {
                return Err(PolytopeError::Empty);
            }
        }
    }

    /// Finds the translation moving every facet offset to -1.
    ///
    /// Returns the translation and the translated polytope, whose vertices are
    /// then lattice points.
    pub fn monotone_normalize(&self) -> Result<(Vec<Rational>, DelzantPolytope), PolytopeError> {
        self.skeleton()?;
        // <t, n_i> = -1 - offset_i for every facet
        let rows: Vec<Vec<Rational>> = self
            .facets
            .iter()
            .map(|f| {
                let mut r: Vec<Rational> = f.normal.coords().iter().map(|&c| int(c)).collect();
                r.push(int(-1) - &f.offset);
                r
            })
            .collect();
        let t = solve_overdetermined(&rows, self.dim).ok_or_else(|| {
            PolytopeError::NotMonotone("no translation puts every facet offset at -1".to_string())
        })?;
        let moved = self.translate(&t)?;
        for v in moved.enumerate_vertices()? {
            if !v.is_integral() {
                return Err(PolytopeError::NotMonotone(format!(
                    "vertex {} is not a lattice point in reflexive position",
                    format_point(&v.position)
                )));
            }
        }
        Ok((t, moved))
    }

    /// True if every facet offset is -1.
    pub fn is_reflexive_position(&self) -> bool {
        self.facets.iter().all(|f| f.offset == int(-1))
    }
}

/// Free-function forms matching the polytope operations.
pub fn enumerate_vertices(p: &DelzantPolytope) -> Result<Vec<VertexFigure>, PolytopeError> {
    p.enumerate_vertices()
}

pub fn enumerate_edges(p: &DelzantPolytope) -> Result<Vec<EdgeSegment>, PolytopeError> {
    p.enumerate_edges()
}

pub fn monotone_normalize(
    p: &DelzantPolytope,
) -> Result<(Vec<Rational>, DelzantPolytope), PolytopeError> {
    p.monotone_normalize()
}

pub fn format_point(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(rational::format).collect();
    format!("({})", parts.join(","))
}

pub(crate) fn dot_q(v: &LatticeVector, x: &[Rational]) -> Rational {
    v.coords()
        .iter()
        .zip(x)
        .fold(Rational::zero(), |acc, (&a, b)| acc + b * int(a))
}

fn to_q_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&c| int(c)).collect())
        .collect()
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Reduced row echelon form in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

/// Unique solution of a square system, or `None` if singular.
fn solve_square(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.iter().map(|r| r[n].clone()).collect())
}

/// Solves an augmented system with `n` unknowns that must have a unique
/// solution; `None` if inconsistent or underdetermined.
fn solve_overdetermined(aug: &[Vec<Rational>], n: usize) -> Option<Vec<Rational>> {
    let mut m = aug.to_vec();
    let pivots = row_reduce(&mut m, n + 1);
    if pivots.contains(&n) || pivots.len() < n {
        return None;
    }
    Some(m[..n].iter().map(|r| r[n].clone()).collect())
}

/// Facet sets of every nonempty face, including the whole polytope (empty set).
///
/// For a simple polytope the faces through a vertex are in bijection with the
/// subsets of its incident facets.
pub fn face_facet_sets(vertices: &[VertexFigure]) -> Vec<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for v in vertices {
        let k = v.incident_facets.len();
        for mask in 0u64..(1u64 << k) {
            let s: Vec<usize> = (0..k)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| v.incident_facets[b])
                .collect();
            faces.insert(s);
        }
    }
    let mut out: Vec<Vec<usize>> = faces.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
