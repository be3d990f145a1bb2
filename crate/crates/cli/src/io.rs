//! File formats and argument parsing shared by the subcommands.

use std::fmt;
use std::path::Path;

use e8cm::changemaker::Tau;
use e8cm::lattice_core::GramLattice;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// A failure that maps onto a process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit code 2.
    Usage(String),
    /// A verification ran and failed: exit code 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<e8cm::Error> for CliError {
    fn from(e: e8cm::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// `{"rank": n, "gram": [[...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramFile {
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
}

impl GramFile {
    pub fn from_lattice(l: &GramLattice<i64>) -> Self {
        GramFile { rank: l.rank(), gram: l.gram().clone() }
    }

    pub fn to_lattice(&self) -> Result<GramLattice<i64>, CliError> {
        if self.gram.len() != self.rank {
            return Err(CliError::Usage(format!("rank {} but {} Gram rows", self.rank, self.gram.len())));
        }
        Ok(GramLattice::new(self.gram.clone())?)
    }
}

/// `{"s_star": [8 integers], "sigma": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauFile {
    pub s_star: [i64; 8],
    pub sigma: Vec<i64>,
}

impl TauFile {
    pub fn from_tau(t: &Tau) -> Self {
        TauFile { s_star: t.s_star(), sigma: t.sigma().to_vec() }
    }

    /// The normalised vector: `s` is moved into the fundamental chamber and the
    /// tail is sorted by absolute value.
    pub fn to_tau(&self) -> Tau {
        Tau::from_dual(self.s_star, self.sigma.clone())
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Comma-separated integers; the empty string is the empty list.
pub fn parse_list(s: &str) -> Result<Vec<i64>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| CliError::Usage(format!("{x:?}: {e}"))))
        .collect()
}

pub fn parse_s_star(s: &str) -> Result<[i64; 8], CliError> {
    let v = parse_list(s)?;
    v.try_into().map_err(|v: Vec<i64>| CliError::Usage(format!("s* needs 8 entries, got {}", v.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_list("1, 1,2").unwrap(), vec![1, 1, 2]);
        assert!(parse_list("1,x").is_err());
        assert!(parse_s_star("0,0,1").is_err());
        assert_eq!(parse_s_star("0,0,1,0,0,0,0,0").unwrap()[2], 1);
    }

    #[test]
    fn tau_round_trip() {
        let f: TauFile = serde_json::from_str(r#"{"s_star":[0,1,1,0,0,0,0,0],"sigma":[1]}"#).unwrap();
        let t = f.to_tau();
        assert_eq!(t.norm(), 43);
        assert_eq!(TauFile::from_tau(&t), f);
    }

    #[test]
    fn gram_rank_must_match() {
        let g = GramFile { rank: 2, gram: vec![vec![2]] };
        assert_eq!(g.to_lattice().unwrap_err().exit_code(), 2);
    }
}
