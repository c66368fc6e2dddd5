//! Text and JSON formats for distributions and urns.
//!
//! A distribution is written `a:1/3,b:2/3`; an urn is written `a:2,b:1` or
//! as JSON `{"colors": ["a", "b"], "counts": [2, 1]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finstoch::{Dist, FinSet};
use crate::multiset::Multiset;
use crate::rat::{format_rat, parse_rat, Rat};

fn entries(s: &str) -> Result<Vec<(&str, &str)>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    s.split(',')
        .map(|item| {
            let (l, v) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("`{}` is not `label:value`", item.trim())))?;
            let l = l.trim();
            if l.is_empty() || l.contains(['|', '+', '(', ')']) {
                return Err(Error::Parse(format!("bad label `{l}`")));
            }
            Ok((l, v.trim()))
        })
        .collect()
}

/// Parses `label:num/den,...` over the atoms in the order given.
pub fn parse_dist(s: &str) -> Result<Dist> {
    let items = entries(s)?;
    let set = FinSet::atoms(items.iter().map(|(l, _)| *l))?;
    let weights = items
        .iter()
        .map(|(_, v)| parse_rat(v))
        .collect::<Result<Vec<Rat>>>()?;
    Dist::new(&set, weights)
}

/// Parses `label:count,...`; the colours form the base set, in order.
pub fn parse_urn(s: &str) -> Result<Multiset> {
    let items = entries(s)?;
    let set = FinSet::atoms(items.iter().map(|(l, _)| *l))?;
    let counts = items
        .iter()
        .map(|(_, v)| {
            v.parse::<u32>()
                .map_err(|_| Error::Parse(format!("`{v}` is not a count")))
        })
        .collect::<Result<Vec<u32>>>()?;
    Multiset::new(&set, counts)
}

/// The JSON form of an urn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UrnJson {
    pub colors: Vec<String>,
    pub counts: Vec<u32>,
}

impl UrnJson {
    pub fn to_multiset(&self) -> Result<Multiset> {
        Multiset::new(&FinSet::atoms(&self.colors)?, self.counts.clone())
    }

    pub fn from_multiset(m: &Multiset) -> UrnJson {
        UrnJson {
            colors: m.base().labels().iter().map(|l| l.to_string()).collect(),
            counts: m.counts().to_vec(),
        }
    }
}

/// Accepts either the text or the JSON form.
pub fn parse_urn_any(s: &str) -> Result<Multiset> {
    if s.trim_start().starts_with('{') {
        let j: UrnJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_multiset()
    } else {
        parse_urn(s)
    }
}

/// One line `outcome: p` per support element, in enumeration order.
pub fn render_dist(d: &Dist) -> String {
    d.support()
        .iter()
        .map(|(i, w)| format!("{}: {}\n", d.carrier().label(*i), format_rat(w)))
        .collect()
}

/// A support entry in JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub outcome: String,
    pub probability: String,
}

/// JSON form of a distribution: its support, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistJson {
    pub support: Vec<Outcome>,
}

impl DistJson {
    pub fn from_dist(d: &Dist) -> DistJson {
        DistJson {
            support: d
                .support()
                .iter()
                .map(|(i, w)| Outcome {
                    outcome: d.carrier().label(*i).to_string(),
                    probability: format_rat(w),
                })
                .collect(),
        }
    }

    /// Sum of the probabilities, re-parsed.
    pub fn total(&self) -> Result<Rat> {
        self.support.iter().map(|o| parse_rat(&o.probability)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn dist_text() {
        let d = parse_dist("a:1/3, b:2/3").unwrap();
        assert_eq!(d.weights(), vec![rat(1, 3), rat(2, 3)]);
        assert_eq!(render_dist(&d), "a: 1/3\nb: 2/3\n");
        assert!(matches!(
            parse_dist("a:1/3,b:1/3"),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            parse_dist("a:1/2,a:1/2"),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            parse_dist("a:-1,b:2"),
            Err(Error::NegativeWeight(_))
        ));
        assert!(matches!(parse_dist("a"), Err(Error::Parse(_))));
        assert!(matches!(parse_dist(""), Err(Error::Parse(_))));
    }

    #[test]
    fn urn_text_and_json() {
        let u = parse_urn("a:2,b:1").unwrap();
        assert_eq!(u.counts(), &[2, 1]);
        assert_eq!(u.to_string(), "2|a|+1|b|");
        let j = UrnJson::from_multiset(&u);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"colors":["a","b"],"counts":[2,1]}"#);
        assert_eq!(parse_urn_any(&s).unwrap(), u);
        assert!(parse_urn("a:x").is_err());
        assert!(parse_urn_any(r#"{"colors":["a"],"counts":[1,2]}"#).is_err());
    }

    #[test]
    fn dist_json_totals_one() {
        let d = parse_dist("h:1/2,t:1/2").unwrap();
        let j = DistJson::from_dist(&d);
        assert_eq!(j.total().unwrap(), rat(1, 1));
        let back: DistJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
    }
}
