//! Sectioned key-value analysis configs.
//!
//! ```text
//! [curve]
//! x = a*cosh(s/sqrt(a^2 + b^2))
//! y = a*sinh(s/sqrt(a^2 + b^2))
//! z = b*s/sqrt(a^2 + b^2)
//! domain = -2 2
//! param.a = 1
//! param.b = 1
//!
//! [field]
//! f = x^2 + y^2 + z
//! convention = coordinate
//!
//! [analysis]
//! samples = 64
//! abs_tol = 1e-7
//! rel_tol = 1e-6
//! checks = slant-helix, darboux-helix
//! ```
//!
//! Defaults: 128 samples, `abs_tol = 1e-7`, `rel_tol = 1e-6`, coordinate
//! convention, domain `[-2, 2]`, all checks applicable to the detected
//! causal kind. Lines starting with `#` are comments. Coordinate 1 of all
//! vectors is the timelike one.

use std::collections::BTreeMap;
use std::fmt;

use eikonal_core::field::GradientConvention;
use eikonal_core::numerics::expr::Expression;

/// Check names accepted in `checks`, across both causal kinds.
pub const CHECK_NAMES: &[&str] = &[
    "slant-helix",
    "darboux-helix",
    "non-normed-darboux",
    "corollary-2-1",
    "theorem-2-1",
    "theorem-2-2",
    "corollary-2-2",
    "theorem-2-3",
    "null-helix",
    "null-slant-v2",
    "null-slant-v3",
    "null-darboux",
    "theorem-3-1",
    "theorem-3-2",
    "theorem-3-3",
    "theorem-3-4",
    "corollary-3-1",
    "theorem-3-5",
];

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse { line: usize, msg: String },
    UnknownKey { line: usize, key: String },
    BadExpression { line: usize, msg: String },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse { line, msg } => write!(f, "config line {line}: {msg}"),
            ConfigError::UnknownKey { line, key } => {
                write!(f, "config line {line}: unknown key `{key}`")
            }
            ConfigError::BadExpression { line, msg } => {
                write!(f, "config line {line}: bad expression: {msg}")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub curve_x: String,
    pub curve_y: String,
    pub curve_z: String,
    pub params: BTreeMap<String, f64>,
    pub domain: (f64, f64),
    pub field: String,
    pub convention: GradientConvention,
    pub samples: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// `None` runs every check applicable to the causal kind; an explicit
    /// empty list runs none.
    pub checks: Option<Vec<String>>,
}

impl AnalysisConfig {
    /// Canonical text form; `parse_config` of this is identity.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("[curve]\n");
        out.push_str(&format!("x = {}\n", self.curve_x));
        out.push_str(&format!("y = {}\n", self.curve_y));
        out.push_str(&format!("z = {}\n", self.curve_z));
        out.push_str(&format!("domain = {:.17e} {:.17e}\n", self.domain.0, self.domain.1));
        for (k, v) in &self.params {
            out.push_str(&format!("param.{k} = {v:.17e}\n"));
        }
        out.push_str("\n[field]\n");
        out.push_str(&format!("f = {}\n", self.field));
        out.push_str(&format!("convention = {}\n", self.convention.name()));
        out.push_str("\n[analysis]\n");
        out.push_str(&format!("samples = {}\n", self.samples));
        out.push_str(&format!("abs_tol = {:.17e}\n", self.abs_tol));
        out.push_str(&format!("rel_tol = {:.17e}\n", self.rel_tol));
        if let Some(checks) = &self.checks {
            out.push_str(&format!("checks = {}\n", checks.join(", ")));
        }
        out
    }
}

fn parse_f64(line: usize, text: &str) -> Result<f64, ConfigError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| ConfigError::Parse { line, msg: format!("bad number `{}`", text.trim()) })
}

/// Parse a sectioned config; expressions are compiled here so malformed
/// input is rejected with its line number.
pub fn parse_config(text: &str) -> Result<AnalysisConfig, ConfigError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Curve,
        Field,
        Analysis,
    }

    let mut section = Section::None;
    let mut x: Option<(usize, String)> = None;
    let mut y: Option<(usize, String)> = None;
    let mut z: Option<(usize, String)> = None;
    let mut f: Option<(usize, String)> = None;
    let mut params = BTreeMap::new();
    let mut domain = (-2.0, 2.0);
    let mut convention = GradientConvention::CoordinateGradient;
    let mut samples = 128usize;
    let mut abs_tol = 1e-7;
    let mut rel_tol = 1e-6;
    let mut checks: Option<Vec<String>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(ConfigError::Parse {
                line: line_no,
                msg: "unterminated section header".into(),
            })?;
            section = match name.trim() {
                "curve" => Section::Curve,
                "field" => Section::Field,
                "analysis" => Section::Analysis,
                other => {
                    return Err(ConfigError::Parse {
                        line: line_no,
                        msg: format!("unknown section `[{other}]`"),
                    })
                }
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Parse { line: line_no, msg: "expected `key = value`".into() });
        };
        let key = key.trim();
        let value = value.trim();
        match (section, key) {
            (Section::Curve, "x") => x = Some((line_no, value.to_string())),
            (Section::Curve, "y") => y = Some((line_no, value.to_string())),
            (Section::Curve, "z") => z = Some((line_no, value.to_string())),
            (Section::Curve | Section::Analysis, "domain") => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(ConfigError::Parse {
                        line: line_no,
                        msg: "domain needs two numbers: `domain = s_min s_max`".into(),
                    });
                }
                domain = (parse_f64(line_no, parts[0])?, parse_f64(line_no, parts[1])?);
            }
            (Section::Curve, k) if k.starts_with("param.") => {
                let name = &k["param.".len()..];
                if name.is_empty() {
                    return Err(ConfigError::Parse {
                        line: line_no,
                        msg: "empty parameter name".into(),
                    });
                }
                params.insert(name.to_string(), parse_f64(line_no, value)?);
            }
            (Section::Field, "f") => f = Some((line_no, value.to_string())),
            (Section::Field, "convention") => {
                convention = match value {
                    "coordinate" => GradientConvention::CoordinateGradient,
                    "metric" => GradientConvention::MetricGradient,
                    other => {
                        return Err(ConfigError::Parse {
                            line: line_no,
                            msg: format!(
                                "convention must be `coordinate` or `metric`, got `{other}`"
                            ),
                        })
                    }
                };
            }
            (Section::Analysis, "samples") => {
                samples = value.parse().map_err(|_| ConfigError::Parse {
                    line: line_no,
                    msg: format!("bad sample count `{value}`"),
                })?;
            }
            (Section::Analysis, "abs_tol") => abs_tol = parse_f64(line_no, value)?,
            (Section::Analysis, "rel_tol") => rel_tol = parse_f64(line_no, value)?,
            (Section::Analysis, "checks") => {
                let list: Vec<String> = value
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                for name in &list {
                    if !CHECK_NAMES.contains(&name.as_str()) {
                        return Err(ConfigError::UnknownKey {
                            line: line_no,
                            key: format!("checks: `{name}`"),
                        });
                    }
                }
                checks = Some(list);
            }
            (Section::None, k) => {
                return Err(ConfigError::Parse {
                    line: line_no,
                    msg: format!("key `{k}` before any section header"),
                })
            }
            (_, k) => return Err(ConfigError::UnknownKey { line: line_no, key: k.to_string() }),
        }
    }

    let (x_line, curve_x) =
        x.ok_or(ConfigError::Parse { line: 0, msg: "missing [curve] x".into() })?;
    let (y_line, curve_y) =
        y.ok_or(ConfigError::Parse { line: 0, msg: "missing [curve] y".into() })?;
    let (z_line, curve_z) =
        z.ok_or(ConfigError::Parse { line: 0, msg: "missing [curve] z".into() })?;
    let (f_line, field) =
        f.ok_or(ConfigError::Parse { line: 0, msg: "missing [field] f".into() })?;

    // compile everything now so bad expressions carry their config line
    for (line, src, vars) in [
        (x_line, &curve_x, &["s"][..]),
        (y_line, &curve_y, &["s"][..]),
        (z_line, &curve_z, &["s"][..]),
        (f_line, &field, &["x", "y", "z"][..]),
    ] {
        Expression::parse(src, vars, &params)
            .map_err(|e| ConfigError::BadExpression { line, msg: e.to_string() })?;
    }
    if !(domain.0 < domain.1) {
        return Err(ConfigError::Parse {
            line: 0,
            msg: format!("domain [{}, {}] is empty", domain.0, domain.1),
        });
    }
    if samples < 8 {
        return Err(ConfigError::Parse {
            line: 0,
            msg: format!("samples must be at least 8, got {samples}"),
        });
    }
    if !(abs_tol > 0.0 && rel_tol > 0.0) {
        return Err(ConfigError::Parse { line: 0, msg: "tolerances must be positive".into() });
    }

    Ok(AnalysisConfig {
        curve_x,
        curve_y,
        curve_z,
        params,
        domain,
        field,
        convention,
        samples,
        abs_tol,
        rel_tol,
        checks,
    })
}
