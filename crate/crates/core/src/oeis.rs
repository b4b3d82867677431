//! Integer-sequence lookup against the OEIS, online or from bundled response files.

use std::path::PathBuf;
use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable that forces fixture mode whatever the caller asked for.
pub const FORCE_FIXTURE_ENV: &str = "STEPWALK_OEIS_FIXTURE";
/// Environment variable naming an extra directory of fixture files.
pub const FIXTURE_DIR_ENV: &str = "STEPWALK_OEIS_FIXTURE_DIR";

const SEARCH_URL: &str = "https://oeis.org/search";
const BUNDLED: [&str; 5] = [
    include_str!("../fixtures/oeis/A000045.json"),
    include_str!("../fixtures/oeis/A000108.json"),
    include_str!("../fixtures/oeis/A000930.json"),
    include_str!("../fixtures/oeis/A000931.json"),
    include_str!("../fixtures/oeis/A009766.json"),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OeisMode {
    #[default]
    Off,
    Online,
    Fixture,
}

impl OeisMode {
    /// The mode actually used, honouring [`FORCE_FIXTURE_ENV`].
    pub fn effective(self) -> Self {
        match std::env::var(FORCE_FIXTURE_ENV) {
            Ok(v) if !v.is_empty() && v != "0" && self != OeisMode::Off => OeisMode::Fixture,
            _ => self,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisMatch {
    pub id: String,
    pub name: String,
    /// position of the first matching term in the entry's data
    pub offset: usize,
}

/// One entry in the shape returned by the search endpoint.
#[derive(Clone, Debug, Deserialize)]
struct Entry {
    number: u64,
    name: String,
    data: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SearchResponse {
    List(Vec<Entry>),
    Wrapped { results: Option<Vec<Entry>> },
    Single(Entry),
}

impl SearchResponse {
    fn entries(self) -> Vec<Entry> {
        match self {
            SearchResponse::List(v) => v,
            SearchResponse::Wrapped { results } => results.unwrap_or_default(),
            SearchResponse::Single(e) => vec![e],
        }
    }
}

fn parse_data(data: &str) -> Vec<BigUint> {
    data.split(',')
        .filter_map(|t| t.trim().parse().ok())
        .collect()
}

fn find_run(hay: &[BigUint], needle: &[BigUint]) -> Option<usize> {
    hay.windows(needle.len()).position(|w| w == needle)
}

fn rank(entries: Vec<Entry>, terms: &[BigUint]) -> Vec<OeisMatch> {
    let mut out: Vec<OeisMatch> = entries
        .into_iter()
        .filter_map(|e| {
            let offset = find_run(&parse_data(&e.data), terms)?;
            Some(OeisMatch {
                id: format!("A{:06}", e.number),
                name: e.name,
                offset,
            })
        })
        .collect();
    out.sort_by(|a, b| (a.offset, &a.id).cmp(&(b.offset, &b.id)));
    out
}

fn fixture_entries() -> Result<Vec<Entry>> {
    let mut v: Vec<Entry> = BUNDLED
        .iter()
        .map(|s| serde_json::from_str(s))
        .collect::<std::result::Result<_, _>>()?;
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_ENV).map(PathBuf::from) {
        for item in std::fs::read_dir(dir)? {
            let path = item?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let text = std::fs::read_to_string(&path)?;
                let resp: SearchResponse = serde_json::from_str(&text)?;
                v.extend(resp.entries());
            }
        }
    }
    Ok(v)
}

fn online_entries(terms: &[BigUint]) -> Result<Vec<Entry>> {
    let q = terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
    let agent = ureq::AgentBuilder::new().timeout(Duration::from_secs(10)).build();
    let mut last = String::new();
    for _ in 0..2 {
        match agent.get(SEARCH_URL).query("q", &q).query("fmt", "json").call() {
            Ok(resp) => {
                let text = resp.into_string().map_err(|e| Error::Network(e.to_string()))?;
                let parsed: SearchResponse =
                    serde_json::from_str(&text).map_err(|e| Error::Network(e.to_string()))?;
                return Ok(parsed.entries());
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Network(last))
}

/// Sequences containing `terms` as a contiguous run, best match first.
pub fn oeis_lookup(terms: &[BigUint], mode: OeisMode) -> Result<Vec<OeisMatch>> {
    if terms.is_empty() {
        return Err(Error::InvalidInput("no terms to look up".into()));
    }
    let join = || terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
    match mode.effective() {
        OeisMode::Off => Ok(vec![]),
        OeisMode::Online => Ok(rank(online_entries(terms)?, terms)),
        OeisMode::Fixture => {
            let found = rank(fixture_entries()?, terms);
            if found.is_empty() {
                Err(Error::MissingFixture(join()))
            } else {
                Ok(found)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn fixtures_resolve() {
        let m = oeis_lookup(&big(&[1, 1, 2, 5, 14, 42]), OeisMode::Fixture).unwrap();
        assert_eq!(m[0].id, "A000108");
        let m = oeis_lookup(&big(&[1, 1, 2, 3, 5, 8, 13]), OeisMode::Fixture).unwrap();
        assert!(m.iter().any(|x| x.id == "A000045"));
    }

    #[test]
    fn empty_terms_rejected() {
        assert!(matches!(oeis_lookup(&[], OeisMode::Fixture), Err(Error::InvalidInput(_))));
    }
}
