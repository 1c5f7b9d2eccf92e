//! JSON input files, report files and CSV traces.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::lti::LtiSystem;
use crate::obsv::{Certificate, SystemReport};

/// A matrix or vector entry: decimal strings parse exactly, bare JSON numbers are accepted
/// through their literal text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Number(serde_json::Number),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Text(s) => s.clone(),
            Entry::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default)]
    pub name: String,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Entry>>,
    pub c: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default)]
    pub name: String,
    pub matrix: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

fn count_numbers<'a>(entries: impl IntoIterator<Item = &'a Entry>) -> usize {
    entries.into_iter().filter(|e| matches!(e, Entry::Number(_))).count()
}

fn parse_vec<T: Scalar>(v: &[Entry]) -> Result<Vec<T>> {
    v.iter().map(|e| T::parse_decimal(&e.text())).collect()
}

fn parse_matrix<T: Scalar>(rows: &[Vec<Entry>]) -> Result<Matrix<T>> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    let parsed: Vec<Vec<T>> = rows.iter().map(|r| parse_vec(r)).collect::<Result<_>>()?;
    Matrix::from_rows(parsed)
}

impl SystemFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// Number of entries written as JSON numbers rather than strings.
    pub fn float_literals(&self) -> usize {
        count_numbers(self.a.iter().flatten()) + count_numbers(&self.c) + self.b.as_ref().map_or(0, |b| count_numbers(b))
    }

    pub fn matrix_a<T: Scalar>(&self) -> Result<Matrix<T>> {
        parse_matrix(&self.a)
    }

    pub fn vector_c<T: Scalar>(&self) -> Result<Vec<T>> {
        parse_vec(&self.c)
    }

    pub fn vector_b<T: Scalar>(&self) -> Result<Option<Vec<T>>> {
        self.b.as_deref().map(parse_vec).transpose()
    }

    /// `(A, b, c)`, with `b = 0` when the file has none.
    pub fn system<T: Scalar>(&self) -> Result<LtiSystem<T>> {
        let a = self.matrix_a::<T>()?;
        let b = self.vector_b()?.unwrap_or_else(|| vec![T::zero(); a.rows()]);
        LtiSystem::new(a, b, self.vector_c()?)
    }
}

impl MatrixFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn float_literals(&self) -> usize {
        count_numbers(self.matrix.iter().flatten())
    }

    pub fn matrix<T: Scalar>(&self) -> Result<Matrix<T>> {
        parse_matrix(&self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub command: String,
    pub input: String,
    pub backend: String,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub environment: Environment,
    pub exit_code: i32,
    pub result: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub traces: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `trace_r{r}_beta{β}.csv`, with the elements of `β` joined by `-`.
pub fn trace_file_name(sys: &SystemReport) -> String {
    let beta: Vec<String> = sys.beta.elems().iter().map(|e| e.to_string()).collect();
    format!("trace_r{}_beta{}.csv", sys.r, beta.join("-"))
}

/// `t,g` rows for one compound system.
pub fn trace_csv(sys: &SystemReport) -> String {
    let mut out = String::from("t,g\n");
    for (i, g) in sys.samples.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, g));
    }
    out
}

/// Writes one CSV per system of the certificate (and of its factors, prefixed by target)
/// and returns the file names.
pub fn write_traces(dir: &Path, cert: &Certificate) -> Result<Vec<String>> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut names = Vec::new();
    write_traces_prefixed(dir, cert, "", &mut names)?;
    Ok(names)
}

fn write_traces_prefixed(dir: &Path, cert: &Certificate, prefix: &str, names: &mut Vec<String>) -> Result<()> {
    for sys in &cert.per_system {
        let name = format!("{prefix}{}", trace_file_name(sys));
        let path: PathBuf = dir.join(&name);
        fs::write(&path, trace_csv(sys)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        names.push(name);
    }
    for (i, factor) in cert.factors.iter().enumerate() {
        let p = match i {
            0 => "obsv_",
            _ => "ctrb_",
        };
        write_traces_prefixed(dir, factor, p, names)?;
    }
    Ok(())
}

pub fn write_report(dir: &Path, report: &ReportFile) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join("report.json");
    fs::write(&path, report.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    #[test]
    fn strings_and_numbers_parse() {
        let f: SystemFile = serde_json::from_str(r#"{"A": [["0.5"]], "c": [2]}"#).unwrap();
        assert_eq!(f.float_literals(), 1);
        let sys = f.system::<Rational>().unwrap();
        assert_eq!(sys.a[(0, 0)], Rational::new(1.into(), 2.into()));
        assert_eq!(sys.c, vec![Rational::from_integer(2.into())]);
        let wide: SystemFile = serde_json::from_str(r#"{"A": [["1", "2"]], "c": ["1", "1"]}"#).unwrap();
        assert!(wide.system::<Rational>().is_err());
    }

    #[test]
    fn empty_matrix_is_rejected() {
        let f: MatrixFile = serde_json::from_str(r#"{"matrix": []}"#).unwrap();
        assert!(f.matrix::<f64>().is_err());
    }
}
