use std::fmt;
use std::str::FromStr;

use super::{osp_grading, pe_family_pair, q_grading, sl_depth1_grading, sl_standard_grading, GradedPair, GradingError, PeKind};
use crate::exactlin::Scalar;

/// A case label such as `spe:3`, `sl-d1:3:4:0:1`, `q:3:1:+` or `reduced:osp:5:2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Pe(usize),
    Spe(usize),
    Cpe(usize),
    PeExt(usize, Scalar, Scalar),
    SlStd(usize, usize),
    SlD1(usize, usize, usize, usize),
    Q(usize, usize, bool),
    /// `osp(m|2n)` stored as `(m, n)`.
    Osp(usize, usize),
    Reduced(Box<CaseLabel>),
}

#[derive(Debug, thiserror::Error)]
#[error("invalid case label `{label}`: {reason}")]
pub struct LabelError {
    pub label: String,
    pub reason: String,
}

impl FromStr for CaseLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        let err = |reason: &str| LabelError { label: s.to_string(), reason: reason.to_string() };
        if let Some(rest) = s.strip_prefix("reduced:") {
            let inner: CaseLabel = rest.parse().map_err(|e: LabelError| err(&e.reason))?;
            return Ok(CaseLabel::Reduced(Box::new(inner)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize, LabelError> {
            parts.get(i).ok_or_else(|| err("missing parameter"))?.parse().map_err(|_| err("parameter is not a count"))
        };
        let arity = |k: usize| if parts.len() == k + 1 { Ok(()) } else { Err(err(&format!("expected {k} parameters"))) };
        match parts[0] {
            "pe" => arity(1).and(Ok(CaseLabel::Pe(num(1)?))),
            "spe" => arity(1).and(Ok(CaseLabel::Spe(num(1)?))),
            "cpe" => arity(1).and(Ok(CaseLabel::Cpe(num(1)?))),
            "pe-ext" => {
                arity(3)?;
                let a: Scalar = parts[2].parse().map_err(|_| err("a is not rational"))?;
                let b: Scalar = parts[3].parse().map_err(|_| err("b is not rational"))?;
                Ok(CaseLabel::PeExt(num(1)?, a, b))
            }
            "sl-std" => arity(2).and(Ok(CaseLabel::SlStd(num(1)?, num(2)?))),
            "sl-d1" => arity(4).and(Ok(CaseLabel::SlD1(num(1)?, num(2)?, num(3)?, num(4)?))),
            "q" => {
                arity(3)?;
                let plus = match parts[3] {
                    "+" | "plus" => true,
                    "-" | "minus" | "\u{2212}" => false,
                    _ => return Err(err("sign must be + or -")),
                };
                Ok(CaseLabel::Q(num(1)?, num(2)?, plus))
            }
            "osp" => {
                arity(2)?;
                let two_n = num(2)?;
                if two_n % 2 != 0 {
                    return Err(err("the second osp parameter is 2n and must be even"));
                }
                Ok(CaseLabel::Osp(num(1)?, two_n / 2))
            }
            _ => Err(err("unknown family")),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::Pe(n) => write!(f, "pe:{n}"),
            CaseLabel::Spe(n) => write!(f, "spe:{n}"),
            CaseLabel::Cpe(n) => write!(f, "cpe:{n}"),
            CaseLabel::PeExt(n, a, b) => write!(f, "pe-ext:{n}:{a}:{b}"),
            CaseLabel::SlStd(m, n) => write!(f, "sl-std:{m}:{n}"),
            CaseLabel::SlD1(m, n, p, q) => write!(f, "sl-d1:{m}:{n}:{p}:{q}"),
            CaseLabel::Q(n, p, plus) => write!(f, "q:{n}:{p}:{}", if *plus { "+" } else { "-" }),
            CaseLabel::Osp(m, n) => write!(f, "osp:{m}:{}", 2 * n),
            CaseLabel::Reduced(inner) => write!(f, "reduced:{inner}"),
        }
    }
}

impl CaseLabel {
    pub fn build(&self) -> Result<GradedPair, GradingError> {
        let mut pair = match self {
            CaseLabel::Pe(n) => pe_family_pair(&PeKind::Pe, *n)?,
            CaseLabel::Spe(n) => pe_family_pair(&PeKind::Spe, *n)?,
            CaseLabel::Cpe(n) => pe_family_pair(&PeKind::Cpe, *n)?,
            CaseLabel::PeExt(n, a, b) => pe_family_pair(&PeKind::Ext(a.clone(), b.clone()), *n)?,
            CaseLabel::SlStd(m, n) => sl_standard_grading(*m, *n)?,
            CaseLabel::SlD1(m, n, p, q) => sl_depth1_grading(*m, *n, *p, *q)?,
            CaseLabel::Q(n, p, plus) => q_grading(*n, *p, *plus)?,
            CaseLabel::Osp(m, n) => osp_grading(*m, *n)?,
            CaseLabel::Reduced(inner) => return inner.build()?.reduced(),
        };
        pair.label = self.to_string();
        Ok(pair)
    }
}

/// Parses a label and builds its pair.
pub fn build_case(label: &str) -> Result<GradedPair, Box<dyn std::error::Error + Send + Sync>> {
    let l: CaseLabel = label.parse()?;
    Ok(l.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for s in ["pe:3", "spe:2", "cpe:4", "pe-ext:3:1:3", "pe-ext:3:0:1", "sl-std:2:3", "sl-d1:3:4:0:1", "q:3:1:+", "q:3:1:-", "osp:5:2", "reduced:osp:4:2"] {
            let l: CaseLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("osp:5:3".parse::<CaseLabel>().is_err());
        assert!("spe".parse::<CaseLabel>().is_err());
        assert!("foo:1".parse::<CaseLabel>().is_err());
        assert!("sl-std:2".parse::<CaseLabel>().is_err());
    }
}
