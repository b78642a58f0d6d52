//! Sign-pattern indexing shared by every table type.
//!
//! Variable 1 is the slowest index and `+` precedes `-`, so for two
//! variables the order is `++, +-, -+, --`. The same order is used for
//! computational basis states (spin up = `+`).

use crate::error::{Error, Result};

/// Signs of pattern `idx` over `n` variables.
pub fn pattern(n: usize, idx: usize) -> Vec<i8> {
    (0..n)
        .map(|i| if idx >> (n - 1 - i) & 1 == 0 { 1 } else { -1 })
        .collect()
}

pub fn index_of(signs: &[i8]) -> usize {
    signs
        .iter()
        .fold(0, |acc, &s| (acc << 1) | usize::from(s < 0))
}

pub fn pattern_string(n: usize, idx: usize) -> String {
    pattern(n, idx)
        .into_iter()
        .map(crate::report::sign_char)
        .collect()
}

pub fn parse_pattern(s: &str) -> Result<Vec<i8>> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(Error::Parse(format!("bad sign {other:?} in pattern {s:?}"))),
        })
        .collect()
}

/// Serialize `values` as a map keyed by sign strings.
pub(crate) fn to_map(n: usize, values: &[f64]) -> serde_json::Map<String, serde_json::Value> {
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| (pattern_string(n, k), serde_json::Value::from(v)))
        .collect()
}

pub(crate) fn from_map(
    n: usize,
    map: &std::collections::BTreeMap<String, f64>,
) -> Result<Vec<f64>> {
    let mut out = vec![f64::NAN; 1 << n];
    for (k, &v) in map {
        let p = parse_pattern(k)?;
        if p.len() != n {
            return Err(Error::Parse(format!("pattern {k:?} has arity {}, expected {n}", p.len())));
        }
        out[index_of(&p)] = v;
    }
    if out.iter().any(|v| v.is_nan()) {
        return Err(Error::Parse(format!("table needs all {} sign patterns", 1 << n)));
    }
    Ok(out)
}

macro_rules! sign_keyed_serde {
    ($ty:ident, $n:expr) => {
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                crate::signs::to_map($n, &self.values).serialize(s)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let map = std::collections::BTreeMap::<String, f64>::deserialize(d)?;
                let v = crate::signs::from_map($n, &map).map_err(serde::de::Error::custom)?;
                Ok($ty {
                    values: v.try_into().expect("length checked"),
                })
            }
        }
    };
}
pub(crate) use sign_keyed_serde;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order() {
        let names: Vec<_> = (0..4).map(|k| pattern_string(2, k)).collect();
        assert_eq!(names, ["++", "+-", "-+", "--"]);
        for k in 0..8 {
            assert_eq!(index_of(&pattern(3, k)), k);
        }
        assert_eq!(parse_pattern("+-+").unwrap(), vec![1, -1, 1]);
        assert!(parse_pattern("+x").is_err());
    }
}
