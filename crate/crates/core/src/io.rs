//! JSON file formats. Indices are 1-based in files and 0-based in memory;
//! rationals are strings `"p"` or `"p/q"`.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::{binomial, Cochain};
use crate::deformation::Deformation;
use crate::error::{Error, Result};
use crate::extension::ExtensionCocycle;
use crate::lie::{validate_lie, InvDerStructure, LieAlgebra, StructureConstants};
use crate::qlinalg::{format_rational, parse_rational, Matrix, Rational};
use crate::report::{Report, Residual};
use crate::representation::Representation;

/// One nonzero structure constant `c[i][j][k]` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub dim: usize,
    pub rho: Vec<Vec<Vec<String>>>,
    pub delta_v: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub order: usize,
    pub mu: Vec<Vec<BracketEntry>>,
    pub delta: Vec<Vec<Vec<String>>>,
}

/// `gamma` is an `m × C(n,2)` grid whose columns follow the pairs `i < j`
/// in lexicographic order; `chi` is `m × n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub v_dim: usize,
    pub delta_v: Vec<Vec<String>>,
    pub gamma: Vec<Vec<String>>,
    pub chi: Vec<Vec<String>>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types always serialize");
    s.push('\n');
    s
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| rational_strings(m.row(r))).collect()
}

pub fn matrix_from_rows(rows: &[Vec<String>], what: &str) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn sized_matrix(rows: &[Vec<String>], r: usize, c: usize, what: &str) -> Result<Matrix> {
    let m = if rows.is_empty() && (r == 0 || c == 0) {
        Matrix::zeros(r, c)
    } else {
        matrix_from_rows(rows, what)?
    };
    if m.rows() != r || m.cols() != c {
        return Err(Error::Shape(format!("{what} must be {r}x{c}, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m)
}

pub fn constants_from_entries(dim: usize, entries: &[BracketEntry]) -> Result<StructureConstants> {
    let mut c = StructureConstants::zeros(dim);
    let mut seen = BTreeMap::new();
    for e in entries {
        for (name, v) in [("i", e.i), ("j", e.j), ("k", e.k)] {
            if v == 0 || v > dim {
                return Err(Error::Invalid(format!("bracket index {name}={v} out of range 1..{dim}")));
            }
        }
        if e.i >= e.j {
            return Err(Error::Invalid(format!(
                "bracket entry ({},{},{}): expected i<j",
                e.i, e.j, e.k
            )));
        }
        if seen.insert((e.i, e.j, e.k), ()).is_some() {
            return Err(Error::Invalid(format!("duplicate bracket entry ({},{},{})", e.i, e.j, e.k)));
        }
        let v = parse_rational(&e.c)?;
        c.set(e.j - 1, e.i - 1, e.k - 1, -v.clone());
        c.set(e.i - 1, e.j - 1, e.k - 1, v);
    }
    Ok(c)
}

/// Nonzero `c[i][j][k]` with `i < j`, sorted lexicographically.
pub fn entries_from_constants(c: &StructureConstants) -> Vec<BracketEntry> {
    let n = c.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let v = c.get(i, j, k);
                if !v.is_zero() {
                    out.push(BracketEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        c: format_rational(v),
                    });
                }
            }
        }
    }
    out
}

/// The Lie algebra of a file (validated) and its `delta`, if present.
pub fn algebra_from_file(file: &AlgebraFile) -> Result<(LieAlgebra, Option<Matrix>)> {
    let n = file.dim;
    let constants = constants_from_entries(n, &file.brackets)?;
    let mut algebra = validate_lie(constants)?;
    if let Some(names) = &file.basis {
        if names.len() != n {
            return Err(Error::Shape(format!("{} basis names for dimension {n}", names.len())));
        }
        algebra = algebra.with_basis_names(names.clone())?;
    }
    let delta = match &file.delta {
        Some(rows) => Some(sized_matrix(rows, n, n, "delta")?),
        None => None,
    };
    Ok((algebra, delta))
}

pub fn read_algebra(path: &Path) -> Result<(LieAlgebra, Option<Matrix>)> {
    algebra_from_file(&read_json(path)?)
}

/// A fully validated InvDer structure from a file that must carry `delta`.
pub fn parse_algebra(path: &Path) -> Result<InvDerStructure> {
    let (algebra, delta) = read_algebra(path)?;
    let delta = delta.ok_or_else(|| Error::Invalid(format!("{}: no delta given", path.display())))?;
    InvDerStructure::new(algebra, delta)
}

pub fn emit_algebra_file(s: &InvDerStructure) -> AlgebraFile {
    AlgebraFile {
        dim: s.dim(),
        basis: s.algebra().basis_names().map(<[String]>::to_vec),
        brackets: entries_from_constants(s.algebra().constants()),
        delta: Some(matrix_to_rows(s.delta())),
    }
}

pub fn emit_algebra(s: &InvDerStructure) -> String {
    to_json(&emit_algebra_file(s))
}

pub fn representation_from_file(s: &InvDerStructure, file: &RepresentationFile) -> Result<Representation> {
    let m = file.dim;
    if file.rho.len() != s.dim() {
        return Err(Error::Shape(format!("rho has {} matrices, expected {}", file.rho.len(), s.dim())));
    }
    let rho = file
        .rho
        .iter()
        .enumerate()
        .map(|(i, rows)| sized_matrix(rows, m, m, &format!("rho[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let delta_v = sized_matrix(&file.delta_v, m, m, "delta_v")?;
    Representation::new(s.clone(), rho, delta_v)
}

pub fn emit_representation_file(r: &Representation) -> RepresentationFile {
    RepresentationFile {
        dim: r.target_dim(),
        rho: r.rho().iter().map(matrix_to_rows).collect(),
        delta_v: matrix_to_rows(r.delta_v()),
    }
}

/// Accepts `N+1` coefficients (order 0 included and checked against the
/// base) or `N` (order 0 taken from the base).
pub fn deformation_from_file(s: &InvDerStructure, file: &DeformationFile) -> Result<Deformation> {
    let n = s.dim();
    let big_n = file.order;
    if file.mu.len() != file.delta.len() {
        return Err(Error::Shape("mu and delta have different lengths".into()));
    }
    let mu = file
        .mu
        .iter()
        .map(|e| constants_from_entries(n, e))
        .collect::<Result<Vec<_>>>()?;
    let delta = file
        .delta
        .iter()
        .enumerate()
        .map(|(i, rows)| sized_matrix(rows, n, n, &format!("delta[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if mu.len() == big_n + 1 {
        Deformation::from_full(s.clone(), mu, delta)
    } else if mu.len() == big_n {
        Deformation::new(s.clone(), mu, delta)
    } else {
        Err(Error::Shape(format!(
            "order {big_n} needs {} or {} coefficients, got {}",
            big_n + 1,
            big_n,
            mu.len()
        )))
    }
}

pub fn emit_deformation_file(d: &Deformation) -> DeformationFile {
    DeformationFile {
        order: d.order(),
        mu: d.mu().iter().map(entries_from_constants).collect(),
        delta: d.delta().iter().map(matrix_to_rows).collect(),
    }
}

pub fn cocycle_from_file(n: usize, file: &CocycleFile) -> Result<ExtensionCocycle> {
    let m = file.v_dim;
    let delta_v = sized_matrix(&file.delta_v, m, m, "delta_v")?;
    let gamma = sized_matrix(&file.gamma, m, binomial(n, 2), "gamma")?;
    let chi = sized_matrix(&file.chi, m, n, "chi")?;
    ExtensionCocycle::new(Cochain::from_values(2, n, gamma)?, Cochain::from_map(chi), delta_v)
}

pub fn emit_cocycle_file(e: &ExtensionCocycle) -> CocycleFile {
    CocycleFile {
        v_dim: e.v_dim(),
        delta_v: matrix_to_rows(e.delta_v()),
        gamma: matrix_to_rows(e.gamma().values()),
        chi: matrix_to_rows(e.chi().as_map()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub identity: String,
    pub formula: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationJson {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// 1-based basis indices.
    pub indices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub passed: bool,
    pub checks: Vec<CheckJson>,
    pub violations: Vec<ViolationJson>,
}

pub fn report_json(r: &Report) -> ReportJson {
    ReportJson {
        passed: r.passed(),
        checks: r
            .checked
            .iter()
            .map(|id| CheckJson {
                identity: id.label().to_string(),
                formula: id.formula().to_string(),
                passed: r.holds(*id),
            })
            .collect(),
        violations: r
            .violations
            .iter()
            .map(|v| ViolationJson {
                identity: v.identity.label().to_string(),
                order: v.order,
                indices: v.indices.iter().map(|i| i + 1).collect(),
                residual: match &v.residual {
                    Residual::None => None,
                    Residual::Vector(x) => Some(serde_json::json!(rational_strings(x))),
                    Residual::Matrix(m) => Some(serde_json::json!(matrix_to_rows(m))),
                },
            })
            .collect(),
    }
}
