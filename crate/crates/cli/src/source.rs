//! Manifold sources: parsing the command-line forms and turning them into
//! fixed-point data.

use std::fs;
use std::path::{Path, PathBuf};

use gromov_core::{
    grassmannian_action, isotropy_report, product_action, toric_action, ActionData, ActionError,
    DelzantPolytope, GrassmannianSpec, LatticeVector, PolytopeError, SubcircleSpec, ToricError,
    Witness,
};

use crate::Failure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    ActionFile(PathBuf),
    Toric {
        polytope: PathBuf,
        xi: LatticeVector,
    },
    Grassmannian(GrassmannianSpec),
    Product(Vec<Source>),
}

/// Parses `a,b[,c...]` into a primitive direction.
pub fn parse_direction(s: &str) -> Result<LatticeVector, Failure> {
    let coords = parse_ints(s).map_err(|e| Failure::input(format!("--dir {s:?}: {e}")))?;
    check_direction(coords)
}

fn check_direction(coords: Vec<i64>) -> Result<LatticeVector, Failure> {
    let xi = LatticeVector::new(coords).map_err(|e| Failure::input(e.to_string()))?;
    if xi.is_zero() {
        return Err(Failure::input(ToricError::ZeroDirection.to_string()));
    }
    if !xi.is_primitive() {
        return Err(Failure::input(
            ToricError::ImprimitiveDirection(xi).to_string(),
        ));
    }
    Ok(xi)
}

pub fn parse_grassmannian(s: &str) -> Result<GrassmannianSpec, Failure> {
    let v = parse_ints(s).map_err(|e| Failure::input(format!("--grassmannian {s:?}: {e}")))?;
    let [k, m] = v[..] else {
        return Err(Failure::input(format!(
            "--grassmannian {s:?}: expected k,m"
        )));
    };
    let k = u32::try_from(k).map_err(|_| Failure::input(format!("k = {k} is out of range")))?;
    let m = u32::try_from(m).map_err(|_| Failure::input(format!("m = {m} is out of range")))?;
    GrassmannianSpec::new(k, m).map_err(|e| Failure::input(e.to_string()))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|_| format!("{t:?} is not an integer"))
        })
        .collect()
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(format!("unbalanced ')' in {s:?}"));
                }
            }
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced '(' in {s:?}"));
    }
    out.push(s[start..].trim());
    Ok(out)
}

/// Parses the factor list of `--product`.
///
/// Factors are `gr(k,m)`, `action(FILE)`, `toric(FILE,a,b,...)` or a nested
/// `product(...)`.
pub fn parse_product(s: &str) -> Result<Source, Failure> {
    let factors = split_top_level(s)
        .map_err(Failure::input)?
        .into_iter()
        .map(parse_factor)
        .collect::<Result<Vec<_>, _>>()?;
    if factors.is_empty() {
        return Err(Failure::input(
            "--product needs at least one factor".to_string(),
        ));
    }
    Ok(Source::Product(factors))
}

fn parse_factor(f: &str) -> Result<Source, Failure> {
    let bad = || Failure::input(format!("cannot parse product factor {f:?}"));
    let open = f.find('(').ok_or_else(bad)?;
    if !f.ends_with(')') {
        return Err(bad());
    }
    let (head, body) = (f[..open].trim(), &f[open + 1..f.len() - 1]);
    match head {
        "gr" | "grassmannian" => Ok(Source::Grassmannian(parse_grassmannian(body)?)),
        "action" => Ok(Source::ActionFile(PathBuf::from(body.trim()))),
        "toric" => {
            let (path, dir) = body.split_once(',').ok_or_else(bad)?;
            Ok(Source::Toric {
                polytope: PathBuf::from(path.trim()),
                xi: parse_direction(dir)?,
            })
        }
        "product" => parse_product(body),
        _ => Err(bad()),
    }
}

/// Fixed-point data plus whatever the source knows beyond it.
pub struct Resolved {
    pub action: ActionData,
    /// Present only for a single toric source.
    pub toric: Option<SubcircleSpec>,
    /// Face of some toric factor with isotropy order above 1.
    pub face_witness: Option<Witness>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn load_spec(polytope: &Path, xi: &LatticeVector) -> Result<SubcircleSpec, Failure> {
    let p = DelzantPolytope::from_json(&read(polytope)?)
        .map_err(|e| Failure::input(format!("{}: {e}", polytope.display())))?;
    SubcircleSpec::new(xi.clone(), &p).map_err(|e| match e {
        ToricError::Polytope(PolytopeError::NotMonotone(msg)) => Failure::not_monotone(msg),
        e => Failure::input(format!("{}: {e}", polytope.display())),
    })
}

pub fn resolve(src: &Source) -> Result<Resolved, Failure> {
    match src {
        Source::ActionFile(path) => {
            let action =
                ActionData::from_json(&read(path)?).map_err(|e| action_failure(path, e))?;
            Ok(Resolved {
                action,
                toric: None,
                face_witness: None,
            })
        }
        Source::Toric { polytope, xi } => {
            let spec = load_spec(polytope, xi)?;
            let action = toric_action(&spec).map_err(|e| Failure::input(e.to_string()))?;
            let face_witness = isotropy_report(&spec)
                .map_err(|e| Failure::input(e.to_string()))?
                .witness();
            Ok(Resolved {
                action,
                toric: Some(spec),
                face_witness,
            })
        }
        Source::Grassmannian(g) => Ok(Resolved {
            action: grassmannian_action(g),
            toric: None,
            face_witness: None,
        }),
        Source::Product(parts) => {
            let parts = parts.iter().map(resolve).collect::<Result<Vec<_>, _>>()?;
            let face_witness = parts.iter().find_map(|p| p.face_witness.clone());
            let actions: Vec<ActionData> = parts.into_iter().map(|p| p.action).collect();
            let action = product_action(&actions).map_err(|e| Failure::input(e.to_string()))?;
            Ok(Resolved {
                action,
                toric: None,
                face_witness,
            })
        }
    }
}

fn action_failure(path: &Path, e: ActionError) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}
