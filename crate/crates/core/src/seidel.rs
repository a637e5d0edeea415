//! Degree bookkeeping for the Seidel element of a verified action.
//!
//! The element is written `a_n q^-n + ... + a_1 q^-1 + a_0` in degree-0 quantum
//! cohomology, with `a_i` of cohomological degree `2i` and `q` of degree 2. For
//! a semifree action with isolated maximum, `a_n` is the point class and
//! `a_s = ... = a_(n-1) = 0`, where `s` is the second largest critical value.
//! The remaining coefficients need curve counts and are left unconstrained.
//!
//! A coefficient attached to a section class `B` sits at index `n - c1(B)`.

use std::fmt;

use thiserror::Error;

use crate::circle_action::{gromov_width, ActionData, WidthError};
use crate::rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeidelStatus {
    PointClass,
    ForcedZero,
    Unconstrained,
}

impl fmt::Display for SeidelStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeidelStatus::PointClass => "point class",
            SeidelStatus::ForcedZero => "forced zero",
            SeidelStatus::Unconstrained => "unconstrained",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelEntry {
    pub index: u32,
    pub status: SeidelStatus,
    pub cohomology_degree: i64,
    pub q_exponent: i64,
}

impl SeidelEntry {
    pub fn new(index: u32, status: SeidelStatus) -> Self {
        SeidelEntry {
            index,
            status,
            cohomology_degree: 2 * i64::from(index),
            q_exponent: -i64::from(index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelStructure {
    pub n: u32,
    pub s: i64,
    /// Ordered by index, 0 to n.
    pub entries: Vec<SeidelEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeidelError {
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error("entry a_{index}: degree {cohomology_degree} + 2 * ({q_exponent}) != 0")]
    DegreeMismatch {
        index: u32,
        cohomology_degree: i64,
        q_exponent: i64,
    },
    #[error("q exponents must run from 0 down to -{n} without gaps; missing a_{missing}")]
    Gap { n: u32, missing: u32 },
}

pub fn seidel_structure(a: &ActionData) -> Result<SeidelStructure, SeidelError> {
    let report = gromov_width(a)?;
    let n = rational::to_i64(&report.h_max).expect("monotone check makes H integral");
    let s = rational::to_i64(&report.s).expect("monotone check makes H integral");
    let n = u32::try_from(n).expect("H(F_max) = n > 0");
    let entries = (0..=n)
        .map(|i| {
            let status = if i == n {
                SeidelStatus::PointClass
            } else if i64::from(i) >= s {
                SeidelStatus::ForcedZero
            } else {
                SeidelStatus::Unconstrained
            };
            SeidelEntry::new(i, status)
        })
        .collect();
    Ok(SeidelStructure { n, s, entries })
}

/// Every entry has quantum degree 0 and the exponents cover `0, -1, ..., -n`.
pub fn degree_check(st: &SeidelStructure) -> Result<(), SeidelError> {
    for e in &st.entries {
        if e.cohomology_degree + 2 * e.q_exponent != 0 {
            return Err(SeidelError::DegreeMismatch {
                index: e.index,
                cohomology_degree: e.cohomology_degree,
                q_exponent: e.q_exponent,
            });
        }
    }
    for i in 0..=st.n {
        if !st.entries.iter().any(|e| e.q_exponent == -i64::from(i)) {
            return Err(SeidelError::Gap {
                n: st.n,
                missing: i,
            });
        }
    }
    Ok(())
}

fn q_power(e: i64) -> String {
    if e < 0 {
        format!("q^{{\u{2212}{}}}", -e)
    } else {
        format!("q^{{{e}}}")
    }
}

impl SeidelStructure {
    pub fn indices_with(&self, status: SeidelStatus) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|e| e.status == status)
            .map(|e| e.index)
            .collect()
    }

    /// True when every coefficient below the leading one is forced to vanish.
    pub fn is_exact(&self) -> bool {
        self.indices_with(SeidelStatus::Unconstrained).is_empty()
    }

    /// `S(φ) = [pt] ⊗ q^{−n}` followed by the unconstrained terms, if any.
    pub fn formula(&self) -> String {
        let mut out = format!(
            "S(\u{03c6}) = [pt] \u{2297} {}",
            q_power(-i64::from(self.n))
        );
        let mut free = self.indices_with(SeidelStatus::Unconstrained);
        free.reverse();
        for i in free {
            if i == 0 {
                out.push_str(" + a_0");
            } else {
                out.push_str(&format!(" + a_{i} \u{2297} {}", q_power(-i64::from(i))));
            }
        }
        out
    }
}
