//! Integer lattice primitives.
//!
//! Everything here works over `i64` with exact arithmetic. Vectors that show up
//! in practice (facet normals, edge directions, subcircle generators) have tiny
//! entries, so the row reductions below never come close to overflowing.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors do not extend to a basis of Z^{dim}")]
    NotUnimodular { dim: usize },
    #[error("lattice vectors must have at least one coordinate")]
    Empty,
}

/// An integer vector in `Z^n`.
///
/// Depending on context this is an edge direction, a facet normal or the
/// generator of a subcircle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Result<Self, LatticeError> {
        if coords.is_empty() {
            return Err(LatticeError::Empty);
        }
        Ok(LatticeVector(coords))
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// gcd of the absolute values of the coordinates; 0 for the zero vector.
    pub fn content(&self) -> i64 {
        gcd_all(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Divides out the content, keeping orientation.
    pub fn primitive_direction(&self) -> Result<LatticeVector, LatticeError> {
        let g = self.content();
        if g == 0 {
            return Err(LatticeError::ZeroVector);
        }
        Ok(LatticeVector(self.0.iter().map(|c| c / g).collect()))
    }

    /// Standard dot product.
    pub fn pairing(&self, other: &LatticeVector) -> Result<i64, LatticeError> {
        self.check_dim(other.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<(), LatticeError> {
        if self.dim() != found {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Free-function form of [`LatticeVector::primitive_direction`].
pub fn primitive_direction(v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
    v.primitive_direction()
}

/// Free-function form of [`LatticeVector::pairing`].
pub fn pairing(x: &LatticeVector, y: &LatticeVector) -> Result<i64, LatticeError> {
    x.pairing(y)
}

pub(crate) fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Row-style Hermite normal form of an `n x k` matrix given by its columns,
/// together with the unimodular transform and its inverse.
///
/// `transform * A = hnf`, where `hnf` is upper triangular in its first
/// `rank` rows and zero below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteReduction {
    /// Row-major `n x k`.
    pub hnf: Vec<Vec<i64>>,
    /// Row-major `n x n`, determinant ±1.
    pub transform: Vec<Vec<i64>>,
    /// Row-major `n x n`, `transform * transform_inv = I`.
    pub transform_inv: Vec<Vec<i64>>,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl HermiteReduction {
    /// Reduces the matrix whose columns are `columns` (all of length `dim`).
    pub fn of_columns(dim: usize, columns: &[LatticeVector]) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::Empty);
        }
        for c in columns {
            if c.dim() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
        }
        let k = columns.len();
        let mut state = Reducer {
            a: (0..dim)
                .map(|r| columns.iter().map(|c| c.0[r]).collect())
                .collect(),
            u: identity(dim),
            v: identity(dim),
        };

        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..k {
            if row == dim {
                break;
            }
            for i in row + 1..dim {
                if state.a[i][col] != 0 {
                    state.combine(row, i, col);
                }
            }
            if state.a[row][col] == 0 {
                continue;
            }
            if state.a[row][col] < 0 {
                state.negate(row);
            }
            let p = state.a[row][col];
            for r in 0..row {
                let q = Integer::div_floor(&state.a[r][col], &p);
                if q != 0 {
                    state.sub_multiple(r, row, q);
                }
            }
            pivots.push(col);
            row += 1;
        }

        Ok(HermiteReduction {
            hnf: state.a,
            transform: state.u,
            transform_inv: state.v,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True iff the columns are linearly independent and span a saturated
    /// sublattice, i.e. they extend to a basis of `Z^n`.
    pub fn is_unimodular(&self) -> bool {
        let k = self.hnf.first().map_or(0, |r| r.len());
        self.rank() == k
            && self
                .pivots
                .iter()
                .enumerate()
                .all(|(r, &c)| self.hnf[r][c] == 1)
    }
}

struct Reducer {
    a: Vec<Vec<i64>>,
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
}

impl Reducer {
    /// Replaces rows (r, i) by a unimodular combination that zeroes `a[i][col]`.
    fn combine(&mut self, r: usize, i: usize, col: usize) {
        let a = self.a[r][col];
        let b = self.a[i][col];
        let e = a.extended_gcd(&b);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let (ag, bg) = (a / g, b / g);
        // E = [[x, y], [-bg, ag]], E^-1 = [[ag, -y], [bg, x]]
        for m in [&mut self.a, &mut self.u] {
            let (ri, rr) = (m[i].clone(), m[r].clone());
            for j in 0..rr.len() {
                m[r][j] = x * rr[j] + y * ri[j];
                m[i][j] = -bg * rr[j] + ag * ri[j];
            }
        }
        for row in self.v.iter_mut() {
            let (cr, ci) = (row[r], row[i]);
            row[r] = ag * cr + bg * ci;
            row[i] = -y * cr + x * ci;
        }
    }

    fn negate(&mut self, r: usize) {
        for m in [&mut self.a, &mut self.u] {
            m[r].iter_mut().for_each(|c| *c = -*c);
        }
        for row in self.v.iter_mut() {
            row[r] = -row[r];
        }
    }

    /// row_t -= q * row_s
    fn sub_multiple(&mut self, t: usize, s: usize, q: i64) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m[t].len() {
                let d = q * m[s][j];
                m[t][j] -= d;
            }
        }
        for row in self.v.iter_mut() {
            row[s] += q * row[t];
        }
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect()
}

/// Completes `vectors` to a basis of `Z^dim`, returning only the added vectors.
pub fn extend_to_basis(
    dim: usize,
    vectors: &[LatticeVector],
) -> Result<Vec<LatticeVector>, LatticeError> {
    let red = HermiteReduction::of_columns(dim, vectors)?;
    if !red.is_unimodular() {
        return Err(LatticeError::NotUnimodular { dim });
    }
    let k = vectors.len();
    Ok((k..dim)
        .map(|c| LatticeVector(red.transform_inv.iter().map(|row| row[c]).collect()))
        .collect())
}

/// Order of the isotropy group of the `xi`-subcircle on the torus orbits whose
/// stabilizer lattice is spanned by `normals`.
///
/// Returns the gcd of the image of `xi` in `Z^n / span(normals)`; 0 means the
/// whole stratum is fixed by the subcircle.
pub fn quotient_order(xi: &LatticeVector, normals: &[LatticeVector]) -> Result<u64, LatticeError> {
    if xi.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let dim = xi.dim();
    let red = HermiteReduction::of_columns(dim, normals)?;
    if !red.is_unimodular() {
        return Err(LatticeError::NotUnimodular { dim });
    }
    let k = normals.len();
    let projected: Vec<i64> = red.transform[k..]
        .iter()
        .map(|row| row.iter().zip(xi.coords()).map(|(a, b)| a * b).sum())
        .collect();
    Ok(gcd_all(&projected).unsigned_abs())
}

/// Determinant of a square integer matrix (rows), by fraction-free elimination.
pub fn determinant(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    let d = if n == 0 { 1 } else { sign * m[n - 1][n - 1] };
    d as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn primitive_direction_examples() {
        assert_eq!(lv(&[2, 4]).primitive_direction().unwrap(), lv(&[1, 2]));
        assert_eq!(lv(&[0, -3]).primitive_direction().unwrap(), lv(&[0, -1]));
        assert_eq!(lv(&[3, -3]).primitive_direction().unwrap(), lv(&[1, -1]));
        assert_eq!(
            lv(&[0, 0]).primitive_direction(),
            Err(LatticeError::ZeroVector)
        );
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&lv(&[0, 1]), &lv(&[1, -1])).unwrap(), -1);
        assert_eq!(pairing(&lv(&[-1, -2]), &lv(&[0, 1])).unwrap(), -2);
        assert_eq!(pairing(&lv(&[7, -5]), &LatticeVector::zero(2)).unwrap(), 0);
        assert_eq!(
            pairing(&lv(&[1, 2]), &lv(&[1, 2, 3])),
            Err(LatticeError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn quotient_order_examples() {
        assert_eq!(quotient_order(&lv(&[-1, -2]), &[lv(&[1, 0])]).unwrap(), 2);
        assert_eq!(quotient_order(&lv(&[0, 1]), &[lv(&[0, 1])]).unwrap(), 0);
        assert_eq!(quotient_order(&lv(&[0, 1]), &[]).unwrap(), 1);
        assert_eq!(quotient_order(&lv(&[2, 4]), &[]).unwrap(), 2);
    }

    #[test]
    fn quotient_order_errors() {
        assert_eq!(
            quotient_order(&lv(&[0, 0]), &[lv(&[1, 0])]),
            Err(LatticeError::ZeroVector)
        );
        assert_eq!(
            quotient_order(&lv(&[1, 0]), &[lv(&[2, 0])]),
            Err(LatticeError::NotUnimodular { dim: 2 })
        );
        assert_eq!(
            quotient_order(&lv(&[1, 0]), &[lv(&[1, 1]), lv(&[1, -1])]),
            Err(LatticeError::NotUnimodular { dim: 2 })
        );
        // dependent columns
        assert_eq!(
            quotient_order(&lv(&[1, 0, 0]), &[lv(&[1, 1, 0]), lv(&[-1, -1, 0])]),
            Err(LatticeError::NotUnimodular { dim: 3 })
        );
    }

    #[test]
    fn extension_completes_a_basis() {
        let given = vec![lv(&[2, 3, 0]), lv(&[0, 1, 1])];
        let extra = extend_to_basis(3, &given).unwrap();
        assert_eq!(extra.len(), 1);
        let rows: Vec<Vec<i64>> = given
            .iter()
            .chain(&extra)
            .map(|v| v.coords().to_vec())
            .collect();
        assert_eq!(determinant(&rows).abs(), 1);
    }

    #[test]
    fn transform_and_inverse_agree() {
        let cols = vec![lv(&[3, 5, -2]), lv(&[1, 4, 7])];
        let red = HermiteReduction::of_columns(3, &cols).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3)
                    .map(|t| red.transform[i][t] * red.transform_inv[t][j])
                    .sum();
                assert_eq!(s, i64::from(i == j));
            }
        }
        // transform * A == hnf
        for i in 0..3 {
            for (j, c) in cols.iter().enumerate() {
                let s: i64 = (0..3).map(|t| red.transform[i][t] * c.coords()[t]).sum();
                assert_eq!(s, red.hnf[i][j]);
            }
        }
        assert_eq!(red.rank(), 2);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[vec![1, 2], vec![3, 4]]), -2);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]),
            0
        );
        assert_eq!(determinant(&[]), 1);
    }
}
