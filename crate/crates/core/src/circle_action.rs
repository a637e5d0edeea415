//! Fixed-point data of a Hamiltonian circle action and the width computation.
//!
//! A fixed component stores only its nonzero weights; the zero weights are the
//! tangent directions along the component and are counted by `complex_dim`.
//! The moment map is always normalized so that `H(F) = -m(F)`, where `m(F)` is
//! the sum of the weights at `F`. Under that normalization the Chern number and
//! the symplectic area of a gradient sphere coincide.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassmannian::GrassmannianSpec;
use crate::lattice::LatticeVector;
use crate::polytope::DelzantPolytope;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("manifold dimension n must be positive")]
    ZeroDimension,
    #[error("component {component}: zero weights are not stored; count them in complex_dim")]
    ZeroWeight { component: String },
    #[error("component {component}: {weights} weights + complex_dim {complex_dim} != n = {n}")]
    DimensionCount {
        component: String,
        weights: usize,
        complex_dim: u32,
        n: u32,
    },
    #[error("a nontrivial action needs at least two fixed components")]
    TooFewComponents,
    #[error("duplicate component label {0:?}")]
    DuplicateLabel(String),
    #[error("components {0} and {1} both attain the maximum of H")]
    AmbiguousMax(String, String),
    #[error("components {0} and {1} both attain the minimum of H")]
    AmbiguousMin(String, String),
    #[error("need H(x) < H(y), got H({x}) = {hx} and H({y}) = {hy}")]
    NotOrdered {
        x: String,
        y: String,
        hx: String,
        hy: String,
    },
    #[error("gradient sphere has c1 = {c1} but area {area}; components are not normalized")]
    SphereMismatch { c1: i64, area: String },
    #[error("cannot take the product of zero actions")]
    EmptyProduct,
    #[error("invalid action JSON: {0}")]
    Json(String),
}

/// A fixed component before the moment map has been attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComponent {
    pub label: String,
    pub complex_dim: u32,
    pub weights: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub label: String,
    pub complex_dim: u32,
    /// Nonzero isotropy weights, sorted ascending.
    pub weights: Vec<i64>,
    pub h: Rational,
}

impl FixedComponent {
    /// Sum of the weights.
    pub fn m(&self) -> i64 {
        self.weights.iter().sum()
    }
}

/// Sets `H(F) = -m(F)` on every component.
pub fn normalize_moment(raw: Vec<RawComponent>) -> Vec<FixedComponent> {
    raw.into_iter()
        .map(|c| {
            let mut weights = c.weights;
            weights.sort_unstable();
            let h = int(-weights.iter().sum::<i64>());
            FixedComponent {
                label: c.label,
                complex_dim: c.complex_dim,
                weights,
                h,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Abstract,
    Toric {
        xi: LatticeVector,
        polytope: DelzantPolytope,
    },
    Grassmannian(GrassmannianSpec),
    Product(Vec<Provenance>),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Abstract => write!(f, "abstract"),
            Provenance::Toric { xi, .. } => write!(f, "toric, direction {xi}"),
            Provenance::Grassmannian(g) => write!(f, "Gr({},{})", g.k(), g.m()),
            Provenance::Product(parts) => {
                let p: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "product[{}]", p.join("; "))
            }
        }
    }
}

/// Fixed-point data of a circle action on a closed manifold of real dimension `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionData {
    n: u32,
    components: Vec<FixedComponent>,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct ActionFile {
    n: u32,
    components: Vec<ComponentFile>,
}

#[derive(Serialize, Deserialize)]
struct ComponentFile {
    label: String,
    complex_dim: u32,
    weights: Vec<i64>,
    /// Written for readability, ignored on input.
    #[serde(
        rename = "H",
        default,
        skip_deserializing,
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_rational"
    )]
    h: Option<Rational>,
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => rational::serialize(r, s),
        None => s.serialize_none(),
    }
}

impl ActionData {
    pub fn new(
        n: u32,
        raw: Vec<RawComponent>,
        provenance: Provenance,
    ) -> Result<Self, ActionError> {
        if n == 0 {
            return Err(ActionError::ZeroDimension);
        }
        let mut labels = BTreeSet::new();
        for c in &raw {
            if !labels.insert(c.label.clone()) {
                return Err(ActionError::DuplicateLabel(c.label.clone()));
            }
            if c.weights.contains(&0) {
                return Err(ActionError::ZeroWeight {
                    component: c.label.clone(),
                });
            }
            if c.weights.len() + c.complex_dim as usize != n as usize {
                return Err(ActionError::DimensionCount {
                    component: c.label.clone(),
                    weights: c.weights.len(),
                    complex_dim: c.complex_dim,
                    n,
                });
            }
        }
        if raw.len() < 2 {
            return Err(ActionError::TooFewComponents);
        }
        let components = normalize_moment(raw);
        let data = ActionData {
            n,
            components,
            provenance,
        };
        // Extremal level sets are connected, so each holds a single component.
        let by_h = data.sorted_by_h();
        if by_h[0].h == by_h[1].h {
            return Err(ActionError::AmbiguousMax(
                by_h[0].label.clone(),
                by_h[1].label.clone(),
            ));
        }
        let k = by_h.len();
        if by_h[k - 1].h == by_h[k - 2].h {
            return Err(ActionError::AmbiguousMin(
                by_h[k - 2].label.clone(),
                by_h[k - 1].label.clone(),
            ));
        }
        Ok(data)
    }

    pub fn from_json(s: &str) -> Result<Self, ActionError> {
        let f: ActionFile =
            serde_json::from_str(s).map_err(|e| ActionError::Json(e.to_string()))?;
        let raw = f
            .components
            .into_iter()
            .map(|c| RawComponent {
                label: c.label,
                complex_dim: c.complex_dim,
                weights: c.weights,
            })
            .collect();
        ActionData::new(f.n, raw, Provenance::Abstract)
    }

    /// JSON in the action file format, components by descending `H`.
    pub fn to_json(&self) -> String {
        let f = ActionFile {
            n: self.n,
            components: self
                .sorted_by_h()
                .into_iter()
                .map(|c| ComponentFile {
                    label: c.label.clone(),
                    complex_dim: c.complex_dim,
                    weights: c.weights.clone(),
                    h: Some(c.h.clone()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&f).expect("action data serializes")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn component(&self, label: &str) -> Option<&FixedComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    /// Components by descending `H`, ties broken by label.
    pub fn sorted_by_h(&self) -> Vec<&FixedComponent> {
        let mut v: Vec<&FixedComponent> = self.components.iter().collect();
        v.sort_by(|a, b| b.h.cmp(&a.h).then_with(|| a.label.cmp(&b.label)));
        v
    }

    /// Distinct critical values, descending.
    pub fn levels(&self) -> Vec<Rational> {
        let set: BTreeSet<&Rational> = self.components.iter().map(|c| &c.h).collect();
        set.into_iter().rev().cloned().collect()
    }

    pub fn max_component(&self) -> &FixedComponent {
        self.sorted_by_h()[0]
    }

    pub fn min_component(&self) -> &FixedComponent {
        self.sorted_by_h().last().expect("at least two components")
    }

    /// `H(F_max) - s`, whether or not the hypotheses hold.
    pub fn raw_gap(&self) -> Option<Rational> {
        let levels = self.levels();
        (levels.len() >= 2).then(|| &levels[0] - &levels[1])
    }

    /// Every nonzero weight is ±1.
    pub fn check_semifree(&self) -> CheckOutcome {
        for c in &self.components {
            if let Some(&w) = c.weights.iter().find(|w| w.abs() != 1) {
                return Err(Witness::WeightNotUnit {
                    component: c.label.clone(),
                    weight: w,
                });
            }
        }
        Ok(())
    }

    /// The maximum is a single point with every weight equal to -1.
    pub fn check_isolated_max(&self) -> CheckOutcome {
        let top = self.max_component();
        if top.complex_dim != 0 {
            return Err(Witness::MaxNotPoint {
                component: top.label.clone(),
                complex_dim: top.complex_dim,
            });
        }
        if let Some(&w) = top.weights.iter().find(|&&w| w != -1) {
            return Err(Witness::MaxWeightNotMinusOne {
                component: top.label.clone(),
                weight: w,
            });
        }
        Ok(())
    }

    /// `H(F_max) = n` and every critical value is an integer.
    pub fn check_monotone_consistency(&self) -> CheckOutcome {
        let top = self.max_component();
        if top.h != int(i64::from(self.n)) {
            return Err(Witness::MaxNotAtN {
                h_max: top.h.clone(),
                n: self.n,
            });
        }
        for c in self.sorted_by_h() {
            if !c.h.is_integer() {
                return Err(Witness::NonIntegralLevel {
                    component: c.label.clone(),
                    h: c.h.clone(),
                });
            }
        }
        Ok(())
    }

    /// Runs every hypothesis check in order, stopping at the first failure.
    pub fn check_all(&self) -> Result<Vec<Hypothesis>, Witness> {
        self.check_semifree()?;
        self.check_isolated_max()?;
        self.check_monotone_consistency()?;
        Ok(vec![
            Hypothesis::Semifree,
            Hypothesis::IsolatedMax,
            Hypothesis::MonotoneConsistency,
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    Semifree,
    IsolatedMax,
    MonotoneConsistency,
}

impl Hypothesis {
    /// Headline used when the hypothesis fails.
    pub fn failure_headline(self) -> &'static str {
        match self {
            Hypothesis::Semifree => "NOT SEMIFREE",
            Hypothesis::IsolatedMax => "MAXIMUM NOT ISOLATED",
            Hypothesis::MonotoneConsistency => "NOT MONOTONE-NORMALIZED",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::Semifree => "semifree",
            Hypothesis::IsolatedMax => "isolated maximum",
            Hypothesis::MonotoneConsistency => "monotone normalization",
        })
    }
}

/// Why a hypothesis check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    WeightNotUnit {
        component: String,
        weight: i64,
    },
    /// A face of a moment polytope whose stabilizer in the subcircle is too big.
    FaceIsotropy {
        face: String,
        order: u64,
    },
    MaxNotPoint {
        component: String,
        complex_dim: u32,
    },
    MaxWeightNotMinusOne {
        component: String,
        weight: i64,
    },
    MaxNotAtN {
        h_max: Rational,
        n: u32,
    },
    NonIntegralLevel {
        component: String,
        h: Rational,
    },
}

impl Witness {
    pub fn hypothesis(&self) -> Hypothesis {
        match self {
            Witness::WeightNotUnit { .. } | Witness::FaceIsotropy { .. } => Hypothesis::Semifree,
            Witness::MaxNotPoint { .. } | Witness::MaxWeightNotMinusOne { .. } => {
                Hypothesis::IsolatedMax
            }
            Witness::MaxNotAtN { .. } | Witness::NonIntegralLevel { .. } => {
                Hypothesis::MonotoneConsistency
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::WeightNotUnit { component, weight } => {
                write!(f, "weight {weight} at {component}")
            }
            Witness::FaceIsotropy { face, order } => write!(f, "{face} isotropy order {order}"),
            Witness::MaxNotPoint {
                component,
                complex_dim,
            } => write!(f, "maximum {component} has complex dimension {complex_dim}"),
            Witness::MaxWeightNotMinusOne { component, weight } => {
                write!(f, "weight {weight} at maximum {component}")
            }
            Witness::MaxNotAtN { h_max, n } => {
                write!(f, "H(F_max) = {} but n = {n}", rational::format(h_max))
            }
            Witness::NonIntegralLevel { component, h } => write!(
                f,
                "H({component}) = {} is not an integer",
                rational::format(h)
            ),
        }
    }
}

pub type CheckOutcome = Result<(), Witness>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub width: Rational,
    pub h_max: Rational,
    pub s: Rational,
    pub max_component: String,
    pub second_level_components: Vec<String>,
    pub hypothesis_log: Vec<Hypothesis>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WidthError {
    #[error("{}: {witness}{}", witness.hypothesis().failure_headline(), raw_suffix(raw_difference))]
    HypothesisFailed {
        witness: Box<Witness>,
        /// `H_max - s` for diagnostics; never a width.
        raw_difference: Option<Rational>,
    },
    #[error("only one critical value")]
    NotEnoughComponents,
}

fn raw_suffix(raw: &Option<Rational>) -> String {
    match raw {
        Some(r) => format!(
            "; raw H_max \u{2212} s = {} (diagnostic only)",
            rational::format(r)
        ),
        None => String::new(),
    }
}

impl WidthError {
    pub fn hypothesis_failed(a: &ActionData, witness: Witness) -> Self {
        WidthError::HypothesisFailed {
            witness: Box::new(witness),
            raw_difference: a.raw_gap(),
        }
    }
}

/// `H(F_max) - s` with `s` the second largest critical value, after checking
/// that the action is semifree with an isolated maximum at level `n`.
pub fn gromov_width(a: &ActionData) -> Result<WidthReport, WidthError> {
    let log = a
        .check_all()
        .map_err(|w| WidthError::hypothesis_failed(a, w))?;
    let levels = a.levels();
    if levels.len() < 2 {
        return Err(WidthError::NotEnoughComponents);
    }
    let (h_max, s) = (levels[0].clone(), levels[1].clone());
    let second = a
        .sorted_by_h()
        .into_iter()
        .filter(|c| c.h == s)
        .map(|c| c.label.clone())
        .collect();
    Ok(WidthReport {
        width: &h_max - &s,
        max_component: a.max_component().label.clone(),
        h_max,
        s,
        second_level_components: second,
        hypothesis_log: log,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereInvariants {
    /// `m(x) - m(y)`
    pub c1: i64,
    /// `H(y) - H(x)`
    pub area: Rational,
}

/// Chern number and area of a gradient sphere running from `x` up to `y`.
pub fn gradient_sphere_invariants(
    x: &FixedComponent,
    y: &FixedComponent,
) -> Result<SphereInvariants, ActionError> {
    if x.h >= y.h {
        return Err(ActionError::NotOrdered {
            x: x.label.clone(),
            y: y.label.clone(),
            hx: rational::format(&x.h),
            hy: rational::format(&y.h),
        });
    }
    let inv = SphereInvariants {
        c1: x.m() - y.m(),
        area: &y.h - &x.h,
    };
    if int(inv.c1) != inv.area {
        return Err(ActionError::SphereMismatch {
            c1: inv.c1,
            area: rational::format(&inv.area),
        });
    }
    Ok(inv)
}

/// Diagonal action on a product: weights concatenate and moment maps add.
pub fn product_action(parts: &[ActionData]) -> Result<ActionData, ActionError> {
    match parts {
        [] => Err(ActionError::EmptyProduct),
        [single] => Ok(single.clone()),
        _ => {
            let mut acc: Vec<RawComponent> = vec![RawComponent {
                label: String::new(),
                complex_dim: 0,
                weights: Vec::new(),
            }];
            for (i, part) in parts.iter().enumerate() {
                let mut next = Vec::with_capacity(acc.len() * part.components.len());
                for a in &acc {
                    for c in &part.components {
                        let label = if i == 0 {
                            c.label.clone()
                        } else {
                            format!("{} \u{00d7} {}", a.label, c.label)
                        };
                        let mut weights = a.weights.clone();
                        weights.extend_from_slice(&c.weights);
                        next.push(RawComponent {
                            label,
                            complex_dim: a.complex_dim + c.complex_dim,
                            weights,
                        });
                    }
                }
                acc = next;
            }
            let n = parts.iter().map(|p| p.n).sum();
            let provenance =
                Provenance::Product(parts.iter().map(|p| p.provenance.clone()).collect());
            ActionData::new(n, acc, provenance)
        }
    }
}

impl WidthReport {
    pub fn is_positive(&self) -> bool {
        self.width.is_positive()
    }
}
