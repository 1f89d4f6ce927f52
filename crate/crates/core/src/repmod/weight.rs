use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactlin::Scalar;

/// A torus weight in `(epsilon, delta)` coordinates, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub eps: Vec<Scalar>,
    pub delta: Vec<Scalar>,
}

impl Weight {
    pub fn zero(n_eps: usize, n_delta: usize) -> Self {
        Weight { eps: vec![Scalar::zero(); n_eps], delta: vec![Scalar::zero(); n_delta] }
    }

    pub fn from_ints(eps: &[i64], delta: &[i64]) -> Self {
        Weight {
            eps: eps.iter().map(|&x| Scalar::from_int(x)).collect(),
            delta: delta.iter().map(|&x| Scalar::from_int(x)).collect(),
        }
    }

    /// Splits a flat coordinate list after `n_eps` entries.
    pub fn from_coords(coords: Vec<Scalar>, n_eps: usize) -> Self {
        let mut eps = coords;
        let delta = eps.split_off(n_eps);
        Weight { eps, delta }
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.eps.len(), self.delta.len())
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().chain(&self.delta).all(|x| x.is_zero())
    }

    /// Strictly positive in the lexicographic order.
    pub fn is_positive(&self) -> bool {
        self.eps.iter().chain(&self.delta).find(|x| !x.is_zero()).is_some_and(|x| x.signum() > 0)
    }

    fn zip(&self, o: &Weight, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Weight {
        assert_eq!(self.ranks(), o.ranks(), "weights of different ranks");
        Weight {
            eps: self.eps.iter().zip(&o.eps).map(|(a, b)| f(a, b)).collect(),
            delta: self.delta.iter().zip(&o.delta).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Integer coordinates, when all are integral.
    pub fn int_parts(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let conv = |v: &[Scalar]| v.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>();
        Some((conv(&self.eps)?, conv(&self.delta)?))
    }
}

impl Ord for Weight {
    fn cmp(&self, o: &Self) -> Ordering {
        self.eps.cmp(&o.eps).then_with(|| self.delta.cmp(&o.delta))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        self.zip(o, |a, b| a - b)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { eps: self.eps.iter().map(|x| -x).collect(), delta: self.delta.iter().map(|x| -x).collect() }
    }
}

/// Written like `2e1-e2+d1-2d2`; `0` for the zero weight.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, v) in [("e", &self.eps), ("d", &self.delta)] {
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let neg = c.signum() < 0;
                let a = c.abs();
                if neg {
                    f.write_str("-")?;
                } else if !first {
                    f.write_str("+")?;
                }
                if !a.is_one() {
                    if a.is_integer() {
                        write!(f, "{a}")?;
                    } else {
                        write!(f, "({a})")?;
                    }
                }
                write!(f, "{sym}{}", i + 1)?;
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse weight `{0}`")]
pub struct ParseWeightError(String);

impl Weight {
    /// Parses the [`fmt::Display`] syntax against known ranks.
    pub fn parse(s: &str, n_eps: usize, n_delta: usize) -> Result<Self, ParseWeightError> {
        let bad = || ParseWeightError(s.to_string());
        let mut w = Weight::zero(n_eps, n_delta);
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(w);
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut depth = 0;
        for ch in t.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && !cur.is_empty() => terms.push(std::mem::take(&mut cur)),
                _ => {}
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let pos = body.find(['e', 'd']).ok_or_else(bad)?;
            let (coef, rest) = body.split_at(pos);
            let coef = coef.trim_start_matches('(').trim_end_matches(')').trim_end_matches('*');
            let c: Scalar = if coef.is_empty() { Scalar::one() } else { coef.parse().map_err(|_| bad())? };
            let c = c * Scalar::from_int(sign);
            let idx: usize = rest[1..].parse().map_err(|_| bad())?;
            let slot = match rest.as_bytes()[0] {
                b'e' if idx >= 1 && idx <= n_eps => &mut w.eps[idx - 1],
                b'd' if idx >= 1 && idx <= n_delta => &mut w.delta[idx - 1],
                _ => return Err(bad()),
            };
            *slot += &c;
        }
        Ok(w)
    }
}

impl FromStr for Weight {
    type Err = ParseWeightError;

    /// Ranks are inferred from the largest index present.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut ne = 0;
        let mut nd = 0;
        let b = s.as_bytes();
        for (i, &ch) in b.iter().enumerate() {
            if ch == b'e' || ch == b'd' {
                let digits: String = s[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
                let k: usize = digits.parse().map_err(|_| ParseWeightError(s.to_string()))?;
                if ch == b'e' {
                    ne = ne.max(k);
                } else {
                    nd = nd.max(k);
                }
            }
        }
        Weight::parse(s, ne, nd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse_roundtrip() {
        let w = Weight::from_ints(&[2, -1], &[1, -2]);
        assert_eq!(w.to_string(), "2e1-e2+d1-2d2");
        assert_eq!(Weight::parse("2e1-e2+d1-2d2", 2, 2).unwrap(), w);
        assert_eq!(Weight::zero(3, 0).to_string(), "0");
        let h = Weight { eps: vec![Scalar::new(1, 2)], delta: vec![] };
        assert_eq!(Weight::parse(&h.to_string(), 1, 0).unwrap(), h);
        assert!(Weight::parse("e4", 3, 0).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let a = Weight::from_ints(&[1, 0], &[0]);
        let b = Weight::from_ints(&[0, 5], &[5]);
        assert!(a > b);
        assert!((&a - &b).is_positive());
        assert!(!Weight::zero(2, 1).is_positive());
        assert!(Weight::from_ints(&[0, 0], &[1]).is_positive());
    }
}
