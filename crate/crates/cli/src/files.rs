//! JSON file formats for the inputs the engines accept.
//!
//! All files are UTF-8 JSON with rationals written as `"p/q"` strings
//! (`"p"` when the denominator is 1). Saving always emits the canonical
//! form: compact JSON followed by one newline, so `save(load(file))`
//! reproduces a canonical file byte for byte.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sigsurf_core::{
    BrieskornExponents, PuiseuxPairs, ResolutionGraph, SpectralEntry, SpectralPairs,
};

use crate::error::CliError;
use crate::job::JobInput;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string(value).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Puiseux pairs file: `{"pairs": [[3,2],[7,2],[15,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsFile {
    pub pairs: Vec<(u64, u64)>,
}

impl PairsFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }

    pub fn to_pairs(&self) -> Result<PuiseuxPairs, CliError> {
        Ok(PuiseuxPairs::new(self.pairs.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphVertex {
    pub id: u32,
    pub m: u64,
}

/// Resolution graph file:
/// `{"exceptional": [{"id":0,"m":10}], "arrowheads": [1,2], "edges": [[0,1],[0,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub exceptional: Vec<GraphVertex>,
    pub arrowheads: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

impl GraphFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }

    pub fn to_graph(&self) -> Result<ResolutionGraph, CliError> {
        let exceptional = self.exceptional.iter().map(|v| (v.id, v.m)).collect();
        Ok(ResolutionGraph::new(
            exceptional,
            self.arrowheads.clone(),
            self.edges.clone(),
        )?)
    }
}

/// Spectral pairs file:
/// `{"entries": [{"alpha":"-1/6","w":1,"h":1},{"alpha":"1/6","w":1,"h":1}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralFile {
    pub entries: Vec<SpectralEntry>,
}

impl SpectralFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }

    pub fn to_spectral(&self) -> Result<SpectralPairs, CliError> {
        Ok(SpectralPairs::new(self.entries.clone())?)
    }
}

/// One benchmark fixture: a name, the suspension exponent, and exactly one
/// input variant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFixture {
    pub name: String,
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(u64, u64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sppairs: Option<Vec<SpectralEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brieskorn: Option<(u64, u64, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

impl SuiteFixture {
    pub fn input(&self) -> Result<JobInput, CliError> {
        let mut inputs: Vec<JobInput> = Vec::new();
        if let Some(pairs) = &self.pairs {
            inputs.push(JobInput::Pairs(PuiseuxPairs::new(pairs.clone())?));
        }
        if let Some(graph) = &self.graph {
            inputs.push(JobInput::Graph(graph.to_graph()?));
        }
        if let Some(entries) = &self.sppairs {
            inputs.push(JobInput::Spectral(SpectralPairs::new(entries.clone())?));
        }
        if let Some(&(c1, c2, c3)) = self.brieskorn.as_ref() {
            inputs.push(JobInput::Brieskorn(BrieskornExponents::new(c1, c2, c3)?));
        }
        if let Some(expr) = &self.poly {
            inputs.push(JobInput::Poly(sigsurf_core::parse_polynomial(expr)?));
        }
        match inputs.len() {
            1 => Ok(inputs.pop().expect("length checked")),
            0 => Err(CliError::Input(format!(
                "fixture '{}' has no input variant",
                self.name
            ))),
            _ => Err(CliError::Input(format!(
                "fixture '{}' has more than one input variant",
                self.name
            ))),
        }
    }
}

/// Benchmark suite file: `{"fixtures": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    pub fixtures: Vec<SuiteFixture>,
}

impl SuiteFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        read_json(path)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }
}

/// Loads and validates a Puiseux pairs file.
pub fn load_pairs(path: &Path) -> Result<PuiseuxPairs, CliError> {
    PairsFile::read(path)?.to_pairs()
}

/// Loads and validates a resolution graph file.
pub fn load_graph(path: &Path) -> Result<ResolutionGraph, CliError> {
    GraphFile::read(path)?.to_graph()
}

/// Loads and validates a spectral pairs file.
pub fn load_spectral(path: &Path) -> Result<SpectralPairs, CliError> {
    SpectralFile::read(path)?.to_spectral()
}
