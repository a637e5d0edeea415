//! The standard semifree circle action on `Gr(k, m)`.
//!
//! The circle rotates the first `k` coordinates of `C^m`. Fixed components are
//! `Gr(k1, k) x Gr(k2, m - k)` with `k1 + k2 = k`, and the tangent space
//! `Hom(C^k, C^(m-k))` splits into four blocks: two carry weight 0, one carries
//! weight -1 (`k1 * (m-k-k2)` copies) and one carries weight +1
//! (`k2 * (k-k1)` copies).

use thiserror::Error;

use crate::circle_action::{ActionData, Provenance, RawComponent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannianError {
    #[error("Gr({k},{m}) needs 1 <= k <= m - k")]
    InvalidRange { k: u32, m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrassmannianSpec {
    k: u32,
    m: u32,
}

impl GrassmannianSpec {
    pub fn new(k: u32, m: u32) -> Result<Self, GrassmannianError> {
        if k < 1 || k > m.saturating_sub(k) {
            return Err(GrassmannianError::InvalidRange { k, m });
        }
        Ok(GrassmannianSpec { k, m })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Complex dimension `k(m - k)`.
    pub fn n(&self) -> u32 {
        self.k * (self.m - self.k)
    }
}

pub fn grassmannian_action(spec: &GrassmannianSpec) -> ActionData {
    let (k, m) = (spec.k, spec.m);
    let components = (0..=k)
        .rev()
        .filter_map(|k1| {
            let k2 = k - k1;
            if k2 > m - k {
                return None;
            }
            let minus = k1 * (m - k - k2);
            let plus = k2 * (k - k1);
            let mut weights = vec![-1i64; minus as usize];
            weights.extend(std::iter::repeat_n(1, plus as usize));
            Some(RawComponent {
                label: format!("Gr({k1},{k})xGr({k2},{})", m - k),
                complex_dim: k1 * (k - k1) + k2 * (m - k - k2),
                weights,
            })
        })
        .collect();
    ActionData::new(spec.n(), components, Provenance::Grassmannian(*spec))
        .expect("Grassmannian data is well formed")
}
