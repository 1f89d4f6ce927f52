use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use superspencer_core::grading::CaseLabel;
use superspencer_core::repmod::Weight;
use superspencer_core::Parity;

use crate::RunError;

/// How expected and computed weights are compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// Equal coordinates.
    #[default]
    Exact,
    /// Equal as functionals on the torus elements that lie in `g_0`.
    G0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFactor {
    pub weight: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitness {
    /// Every adjacent pair of the composition series splits.
    AllSplit,
    /// Each `(lower, upper)` occurs as an adjacent nonsplit pair.
    Nonsplit(Vec<(String, String)>),
}

/// One expected outcome for one case, with the statement it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub case: String,
    /// Order of `H^{k,2}`; absent for tower-only entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i32>,
    /// Leading dims `g_{-1}, g_0, ...`; a trailing zero also demands a stabilized tower.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Composition factors as a multiset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<ExpectedFactor>>,
    /// Weights of all highest vectors of the module, as a multiset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub highest: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitness: Option<Splitness>,
    #[serde(default)]
    pub weights: WeightMode,
    /// Weights are also compared modulo the span of these, e.g. when the
    /// statement is about modules over a subalgebra with a smaller torus.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulo: Vec<String>,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Expectation {
    fn weight_strings(&self) -> impl Iterator<Item = &str> {
        let f = self.factors.iter().flatten().map(|f| f.weight.as_str());
        let h = self.highest.iter().flatten().map(String::as_str);
        let s = match &self.splitness {
            Some(Splitness::Nonsplit(v)) => v.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect(),
            _ => Vec::new(),
        };
        f.chain(h).chain(s).chain(self.modulo.iter().map(String::as_str))
    }

    /// Label parses, the citation is present and every weight is well formed.
    pub fn validate(&self) -> Result<(), String> {
        if self.source.trim().is_empty() {
            return Err(format!("{}: expectation without a source", self.case));
        }
        self.case.parse::<CaseLabel>().map_err(|e| e.to_string())?;
        if self.k.is_none() && self.tower.is_none() {
            return Err(format!("{}: neither an order nor a tower", self.case));
        }
        if self.k.is_none() && (self.dim.is_some() || self.factors.is_some() || self.highest.is_some() || self.splitness.is_some()) {
            return Err(format!("{}: cohomology data without an order", self.case));
        }
        for w in self.weight_strings() {
            w.parse::<Weight>().map_err(|e| format!("{}: {e}", self.case))?;
        }
        Ok(())
    }
}

/// One data file: a theorem or table encoded as expectations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table {
    pub title: String,
    pub expectations: Vec<Expectation>,
    #[serde(skip)]
    pub path: PathBuf,
}

impl Table {
    pub fn load(path: &Path) -> Result<Table, RunError> {
        let text = std::fs::read_to_string(path).map_err(|source| RunError::Io { path: path.to_path_buf(), source })?;
        let mut t: Table = serde_json::from_str(&text).map_err(|e| RunError::Table { path: path.to_path_buf(), message: e.to_string() })?;
        t.path = path.to_path_buf();
        for e in &t.expectations {
            e.validate().map_err(|message| RunError::Table { path: path.to_path_buf(), message })?;
        }
        Ok(t)
    }
}

/// `$SUPERSPENCER_TABLES`, or the tables shipped with the crate.
pub fn default_tables_dir() -> PathBuf {
    std::env::var_os("SUPERSPENCER_TABLES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("reference_tables"))
}

/// Every `*.json` file in `dir`, in file-name order.
pub fn load_tables(dir: &Path) -> Result<Vec<Table>, RunError> {
    let io = |source| RunError::Io { path: dir.to_path_buf(), source };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
    paths.sort();
    paths.iter().map(|p| Table::load(p)).collect()
}

/// Expectations for `case`, across all tables.
pub fn for_case<'a>(tables: &'a [Table], case: &str) -> Vec<&'a Expectation> {
    tables.iter().flat_map(|t| &t.expectations).filter(|e| e.case == case).collect()
}
