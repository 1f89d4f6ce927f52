use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use superspencer_core::exactlin::SparseMatrix;

use crate::run::RunReport;
use crate::RunError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Pretty JSON: one object for a single report, an array otherwise.
pub fn to_json(reports: &[RunReport]) -> String {
    let mut s = match reports {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("reports serialize");
    s.push('\n');
    s
}

/// `case,k,dim,factors,splitness`, one row per order.
///
/// Factors are `weight:parity:dim` joined by `|`, bottom to top; splitness lists
/// `split` or `nonsplit` for each adjacent pair.
pub fn to_csv(reports: &[RunReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["case", "k", "dim", "factors", "splitness"]).expect("in-memory write");
    for r in reports {
        for o in &r.cohomology {
            let (factors, split) = match &o.module {
                Some(m) => (
                    m.factors.iter().map(|f| format!("{}:{}:{}", f.weight, if f.parity.is_odd() { "odd" } else { "even" }, f.dim)).collect::<Vec<_>>().join("|"),
                    m.splitness.iter().map(|s| if s.split { "split" } else { "nonsplit" }).collect::<Vec<_>>().join("|"),
                ),
                None => (String::new(), String::new()),
            };
            w.write_record([r.case.as_str(), &o.k.to_string(), &o.dim.to_string(), &factors, &split]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

pub fn render(reports: &[RunReport], format: Format) -> String {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => to_csv(reports),
    }
}

/// Header `rows cols nnz`, then one `r c p/q` line per nonzero entry.
pub fn matrix_triplets(m: &SparseMatrix) -> String {
    let t = m.triples();
    let mut s = format!("{} {} {}\n", m.nrows(), m.ncols(), t.len());
    for (r, c, x) in t {
        let q = x.to_bigrational();
        s.push_str(&format!("{r} {c} {}/{}\n", q.numer(), q.denom()));
    }
    s
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), RunError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|source| RunError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes()).map_err(|source| RunError::Io { path: "<stdout>".into(), source })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{CaseSpec, KRange};
    use crate::run::run_case;
    use superspencer_core::Scalar;

    #[test]
    fn csv_has_one_row_per_order() {
        let r = run_case(&CaseSpec::new("spe:2", KRange::new(1, 2)), None).unwrap();
        let s = to_csv(std::slice::from_ref(&r));
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "case,k,dim,factors,splitness");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("spe:2,1,4,e1:"), "{}", lines[1]);
    }

    #[test]
    fn json_is_an_object_for_one_report() {
        let r = run_case(&CaseSpec::new("pe:2", KRange::new(1, 1)), None).unwrap();
        assert!(to_json(std::slice::from_ref(&r)).starts_with('{'));
        assert!(to_json(&[r.clone(), r]).starts_with('['));
    }

    #[test]
    fn triplets() {
        let mut m = SparseMatrix::zeros(2, 3);
        m.set(1, 2, Scalar::from_int(-3) / Scalar::from_int(4));
        m.set(0, 0, Scalar::one());
        assert_eq!(matrix_triplets(&m), "2 3 2\n0 0 1/1\n1 2 -3/4\n");
    }
}
