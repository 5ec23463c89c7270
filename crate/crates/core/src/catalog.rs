//! Built-in complexes and the JSON complex file format.

use serde::{Deserialize, Serialize};

use crate::complexes::FlagComplex;
use crate::error::{Error, Result};

/// Names accepted by [`by_name`]; `simplexN` takes any `N` in `1..=16`.
pub const NAMES: &[&str] = &["k2", "k3", "pentagon", "path4", "cycle4", "simplexN"];

/// The fixed catalog members used by the acceptance suite.
pub fn standard() -> Vec<(&'static str, FlagComplex)> {
    ["k2", "k3", "pentagon", "path4", "cycle4", "simplex3"]
        .into_iter()
        .map(|n| (n, by_name(n).expect("catalog member")))
        .collect()
}

pub fn by_name(name: &str) -> Result<FlagComplex> {
    match name {
        "k2" => FlagComplex::new(2, &[]),
        "k3" => FlagComplex::new(3, &[(1, 3)]),
        "pentagon" => FlagComplex::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
        "path4" => FlagComplex::new(4, &[(1, 2), (2, 3), (3, 4)]),
        "cycle4" => FlagComplex::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]),
        _ => match name.strip_prefix("simplex").map(str::parse::<usize>) {
            Some(Ok(m)) => FlagComplex::simplex(m),
            _ => Err(Error::Input(format!(
                "unknown complex '{name}' (known: {})",
                NAMES.join(", ")
            ))),
        },
    }
}

/// `{"m": 3, "edges": [[1,3]]}`, optionally with `"faces"` (maximal faces of
/// a simplicial complex) and `"flag_completion": true` to accept a
/// non-flag face list by completing it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub m: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub flag_completion: bool,
}

impl ComplexFile {
    pub fn from_complex(k: &FlagComplex) -> Self {
        ComplexFile {
            m: k.m(),
            edges: k.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            faces: None,
            flag_completion: false,
        }
    }

    pub fn to_complex(&self) -> Result<FlagComplex> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        match &self.faces {
            None => FlagComplex::new(self.m, &edges),
            Some(faces) => {
                let mut all = faces.clone();
                all.extend(edges.iter().map(|&(i, j)| vec![i, j]));
                FlagComplex::from_faces(self.m, &all, self.flag_completion)
            }
        }
    }
}

pub fn from_json(text: &str) -> Result<FlagComplex> {
    let file: ComplexFile = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed complex file: {e}")))?;
    file.to_complex()
}

pub fn to_json(k: &FlagComplex) -> String {
    serde_json::to_string(&ComplexFile::from_complex(k)).expect("serialisable")
}
