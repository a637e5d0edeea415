//! Inputs shared by the benchmarks.

use gromov_core::rational::int;
use gromov_core::{DelzantPolytope, HalfSpace, LatticeVector};

fn polytope(dim: usize, facets: &[(&[i64], i64)]) -> DelzantPolytope {
    let facets = facets
        .iter()
        .map(|(n, o)| HalfSpace::new(LatticeVector::new(n.to_vec()).unwrap(), int(*o)))
        .collect();
    DelzantPolytope::new(dim, facets).unwrap()
}

/// The blow-up of the projective plane at one point, as drawn in the plane.
pub fn fig1() -> DelzantPolytope {
    polytope(
        2,
        &[(&[0, 1], 0), (&[-1, -1], -3), (&[1, 0], 0), (&[1, 1], 1)],
    )
}

/// The cube `[-1, 1]^dim`.
pub fn cube(dim: usize) -> DelzantPolytope {
    let mut facets = Vec::new();
    for i in 0..dim {
        for s in [1, -1] {
            let mut n = vec![0; dim];
            n[i] = s;
            facets.push(HalfSpace::new(LatticeVector::new(n).unwrap(), int(-1)));
        }
    }
    DelzantPolytope::new(dim, facets).unwrap()
}

/// A smooth reflexive hexagon: the plane blown up at three points.
pub fn hexagon() -> DelzantPolytope {
    polytope(
        2,
        &[
            (&[1, 0], -1),
            (&[1, 1], -1),
            (&[0, 1], -1),
            (&[-1, 0], -1),
            (&[-1, -1], -1),
            (&[0, -1], -1),
        ],
    )
}
