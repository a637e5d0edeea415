//! Circle actions on toric manifolds induced by a subcircle of the torus.
//!
//! Given a monotone Delzant polytope (moved to reflexive position) and a
//! primitive direction `xi`, the circle `t -> t^xi` acts on the toric manifold.
//! Its weights at a vertex are the pairings of `xi` with the primitive edge
//! directions pointing away from that vertex. Edges with weight 0 are fixed
//! spheres, and connected runs of them span the faces that make up the
//! positive-dimensional fixed components.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::circle_action::{
    gradient_sphere_invariants, gromov_width, ActionData, ActionError, Provenance, RawComponent,
    WidthError, WidthReport, Witness,
};
use crate::lattice::{quotient_order, LatticeError, LatticeVector};
use crate::polytope::{
    dot_q, face_facet_sets, format_point, vertex_label, DelzantPolytope, EdgeSegment,
    PolytopeError, Skeleton, VertexFigure,
};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("direction {0} is not primitive (its entries must be coprime)")]
    ImprimitiveDirection(LatticeVector),
    #[error("direction has dimension {found}, polytope has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error("{0} is not a vertex of the polytope")]
    NotAVertex(String),
    #[error("vertices {first} and {second} lie in one fixed component but disagree on {what}")]
    InconsistentComponent {
        first: String,
        second: String,
        what: &'static str,
    },
    #[error("NOT SEMIFREE: {0}")]
    NotSemifree(Witness),
    #[error("edge {edge}: c1 = {c1}, area = {area}, lattice length = {lattice_length}")]
    CrossCheckFailed {
        edge: String,
        c1: i64,
        area: String,
        lattice_length: String,
    },
}

/// A subcircle of the torus acting on a monotone toric manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcircleSpec {
    xi: LatticeVector,
    polytope: DelzantPolytope,
    translation: Vec<Rational>,
    skeleton: Skeleton,
}

impl SubcircleSpec {
    /// Checks `xi` and moves the polytope to reflexive position.
    pub fn new(xi: LatticeVector, polytope: &DelzantPolytope) -> Result<Self, ToricError> {
        if xi.dim() != polytope.dim() {
            return Err(ToricError::DimensionMismatch {
                expected: polytope.dim(),
                found: xi.dim(),
            });
        }
        if xi.is_zero() {
            return Err(ToricError::ZeroDirection);
        }
        if !xi.is_primitive() {
            return Err(ToricError::ImprimitiveDirection(xi));
        }
        let (translation, reflexive) = polytope.monotone_normalize()?;
        let skeleton = reflexive.skeleton()?;
        Ok(SubcircleSpec {
            xi,
            polytope: reflexive,
            translation,
            skeleton,
        })
    }

    pub fn xi(&self) -> &LatticeVector {
        &self.xi
    }

    /// The polytope in reflexive position.
    pub fn polytope(&self) -> &DelzantPolytope {
        &self.polytope
    }

    /// Translation that was applied to the input polytope.
    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn vertices(&self) -> &[VertexFigure] {
        &self.skeleton.vertices
    }

    pub fn edges(&self) -> &[EdgeSegment] {
        &self.skeleton.edges
    }

    /// `<xi, v>`, the moment value of the subcircle at a point of the
    /// reflexive polytope.
    pub fn moment_at(&self, position: &[Rational]) -> Rational {
        dot_q(&self.xi, position)
    }

    fn weights_at(&self, v: &VertexFigure) -> Vec<i64> {
        v.edge_directions
            .iter()
            .map(|e| self.xi.pairing(e).expect("dims checked"))
            .collect()
    }
}

/// Weights of the subcircle at `v`, one per edge direction, zeros included.
pub fn vertex_weights(spec: &SubcircleSpec, v: &VertexFigure) -> Result<Vec<i64>, ToricError> {
    let own = spec
        .vertices()
        .iter()
        .find(|w| w.position == v.position)
        .ok_or_else(|| ToricError::NotAVertex(format_point(&v.position)))?;
    Ok(spec.weights_at(own))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceIsotropy {
    /// Facets containing the face; empty for the whole polytope.
    pub facets: Vec<usize>,
    pub order: u64,
}

/// Isotropy order of the subcircle over every face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyReport {
    dim: usize,
    /// Larger faces first, then by facet indices.
    pub entries: Vec<FaceIsotropy>,
}

impl IsotropyReport {
    pub fn order_of(&self, facets: &[usize]) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.facets == facets)
            .map(|e| e.order)
    }

    /// The largest face whose isotropy order exceeds 1.
    pub fn violation(&self) -> Option<&FaceIsotropy> {
        self.entries.iter().find(|e| e.order > 1)
    }

    pub fn is_semifree(&self) -> bool {
        self.violation().is_none()
    }

    pub fn max_order(&self) -> u64 {
        self.entries.iter().map(|e| e.order).max().unwrap_or(0)
    }

    pub fn face_label(&self, facets: &[usize]) -> String {
        face_label(self.dim, facets)
    }

    pub fn witness(&self) -> Option<Witness> {
        self.violation().map(|v| Witness::FaceIsotropy {
            face: self.face_label(&v.facets),
            order: v.order,
        })
    }
}

fn face_label(dim: usize, facets: &[usize]) -> String {
    match facets.len() {
        0 => "open orbit".to_string(),
        1 => format!("facet D{}", facets[0] + 1),
        k if k == dim => format!("vertex {}", vertex_label(facets)),
        _ => format!("face {}", divisor_label(facets)),
    }
}

fn divisor_label(facets: &[usize]) -> String {
    let parts: Vec<String> = facets.iter().map(|f| format!("D{}", f + 1)).collect();
    parts.join("\u{2229}")
}

pub fn isotropy_report(spec: &SubcircleSpec) -> Result<IsotropyReport, ToricError> {
    let facets = spec.polytope.facets();
    let entries = face_facet_sets(spec.vertices())
        .into_iter()
        .map(|s| {
            let normals: Vec<LatticeVector> = s.iter().map(|&i| facets[i].normal.clone()).collect();
            let order = quotient_order(&spec.xi, &normals)?;
            Ok(FaceIsotropy { facets: s, order })
        })
        .collect::<Result<Vec<_>, LatticeError>>()?;
    Ok(IsotropyReport {
        dim: spec.polytope.dim(),
        entries,
    })
}

/// Per-vertex data used to group vertices into fixed components.
struct VertexData {
    weights: Vec<i64>,
    /// Incident facets whose edge has nonzero weight; these cut out the
    /// fixed face through the vertex.
    face: Vec<usize>,
    nonzero: Vec<i64>,
}

fn vertex_data(spec: &SubcircleSpec) -> Vec<VertexData> {
    spec.vertices()
        .iter()
        .map(|v| {
            let weights = spec.weights_at(v);
            let mut face: Vec<usize> = v
                .incident_facets
                .iter()
                .zip(&weights)
                .filter(|(_, &w)| w != 0)
                .map(|(&f, _)| f)
                .collect();
            face.sort_unstable();
            let mut nonzero: Vec<i64> = weights.iter().copied().filter(|&w| w != 0).collect();
            nonzero.sort_unstable();
            VertexData {
                weights,
                face,
                nonzero,
            }
        })
        .collect()
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Groups of vertex indices joined by zero-weight edges, each sorted, ordered
/// by smallest member.
fn fixed_groups(spec: &SubcircleSpec) -> Vec<Vec<usize>> {
    let nv = spec.vertices().len();
    let mut parent: Vec<usize> = (0..nv).collect();
    for e in spec.edges() {
        if spec.xi.pairing(&e.direction).expect("dims checked") == 0 {
            let (a, b) = (
                find(&mut parent, e.endpoints.0),
                find(&mut parent, e.endpoints.1),
            );
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..nv {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Fixed-point data of the subcircle action.
pub fn toric_action(spec: &SubcircleSpec) -> Result<ActionData, ToricError> {
    let n = spec.polytope.dim();
    let data = vertex_data(spec);
    let verts = spec.vertices();
    let mut raw = Vec::new();
    for group in fixed_groups(spec) {
        let first = group[0];
        let d0 = &data[first];
        for &other in &group[1..] {
            let d = &data[other];
            let what = if d.face != d0.face {
                Some("the fixed face")
            } else if d.nonzero != d0.nonzero {
                Some("the normal weights")
            } else if d.weights.iter().sum::<i64>() != d0.weights.iter().sum::<i64>() {
                Some("the weight sum")
            } else {
                None
            };
            if let Some(what) = what {
                return Err(ToricError::InconsistentComponent {
                    first: verts[first].label(),
                    second: verts[other].label(),
                    what,
                });
            }
        }
        let complex_dim = n - d0.face.len();
        if group.len() == 1 && complex_dim > 0 || group.len() > 1 && complex_dim == 0 {
            return Err(ToricError::InconsistentComponent {
                first: verts[first].label(),
                second: verts[*group.last().unwrap()].label(),
                what: "the dimension of the fixed face",
            });
        }
        let label = if complex_dim == 0 {
            verts[first].label()
        } else {
            divisor_label(&d0.face)
        };
        raw.push(RawComponent {
            label,
            complex_dim: complex_dim as u32,
            weights: d0.nonzero.clone(),
        });
    }
    let provenance = Provenance::Toric {
        xi: spec.xi.clone(),
        polytope: spec.polytope.clone(),
    };
    Ok(ActionData::new(n as u32, raw, provenance)?)
}

/// Width of the subcircle action. Semifreeness is decided on the face
/// lattice before the fixed-point checks run.
pub fn toric_width(spec: &SubcircleSpec) -> Result<(ActionData, WidthReport), ToricError> {
    let action = toric_action(spec)?;
    let iso = isotropy_report(spec)?;
    if let Some(w) = iso.witness() {
        return Err(WidthError::hypothesis_failed(&action, w).into());
    }
    let report = gromov_width(&action)?;
    Ok((action, report))
}

/// One edge sphere with its invariants computed three ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCheck {
    pub edge: EdgeSegment,
    /// Lower endpoint (smaller `H`).
    pub from: String,
    pub to: String,
    /// Weight of the subcircle along the edge, seen from the lower endpoint.
    pub weight: i64,
    /// From the weight sums at the two fixed components.
    pub c1: i64,
    /// From the moment values of the endpoints.
    pub area: Rational,
    /// From the polytope geometry.
    pub lattice_length: Rational,
}

/// Checks `c1 = area = lattice length` on every edge that is a gradient
/// sphere (nonzero weight). Requires a semifree action.
pub fn edge_cross_check(spec: &SubcircleSpec) -> Result<Vec<EdgeCheck>, ToricError> {
    if let Some(w) = isotropy_report(spec)?.witness() {
        return Err(ToricError::NotSemifree(w));
    }
    let action = toric_action(spec)?;
    let groups = fixed_groups(spec);
    let verts = spec.vertices();
    let component_of = |v: usize| {
        let g = groups
            .iter()
            .position(|g| g.contains(&v))
            .expect("every vertex grouped");
        &action.components()[g]
    };

    let mut out = Vec::new();
    for e in spec.edges() {
        let w = spec.xi.pairing(&e.direction).expect("dims checked");
        if w == 0 {
            continue;
        }
        // direction runs from endpoints.0 to endpoints.1, so w > 0 means the
        // moment map increases along it
        let (lo, hi) = if w > 0 {
            (e.endpoints.0, e.endpoints.1)
        } else {
            (e.endpoints.1, e.endpoints.0)
        };
        let inv = gradient_sphere_invariants(component_of(lo), component_of(hi))?;
        let area = spec.moment_at(&verts[hi].position) - spec.moment_at(&verts[lo].position);
        let check = EdgeCheck {
            edge: e.clone(),
            from: verts[lo].label(),
            to: verts[hi].label(),
            weight: w.abs(),
            c1: inv.c1,
            area,
            lattice_length: e.lattice_length.clone(),
        };
        if int(check.c1) != check.area
            || check.area != check.lattice_length
            || inv.area != check.area
        {
            return Err(ToricError::CrossCheckFailed {
                edge: format!("{}-{}", check.from, check.to),
                c1: check.c1,
                area: rational::format(&check.area),
                lattice_length: rational::format(&check.lattice_length),
            });
        }
        out.push(check);
    }
    Ok(out)
}
