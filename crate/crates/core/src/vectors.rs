//! Pre-trained word vectors in the GloVe text format.
//!
//! One entry per line: a token followed by `d` decimal floats, single-space
//! separated. There is no header line. The dimension is fixed by the first
//! line and every later line must agree with it.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum VectorError {
    #[error("cannot read vector file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{source_name}:{line}: missing token")]
    MissingToken { source_name: String, line: usize },
    #[error("{source_name}:{line}: token {token:?} has no vector components")]
    EmptyVector {
        source_name: String,
        line: usize,
        token: String,
    },
    #[error("{source_name}:{line}: malformed float {field:?} for token {token:?}")]
    MalformedFloat {
        source_name: String,
        line: usize,
        token: String,
        field: String,
    },
    #[error("{source_name}:{line}: non-finite component {field:?} for token {token:?}")]
    NonFinite {
        source_name: String,
        line: usize,
        token: String,
        field: String,
    },
    #[error("{source_name}:{line}: token {token:?} has {found} components, expected {expected}")]
    InconsistentDimension {
        source_name: String,
        line: usize,
        token: String,
        expected: usize,
        found: usize,
    },
    #[error("{source_name}: vectors have dimension {found}, expected {expected}")]
    DimensionMismatch {
        source_name: String,
        expected: usize,
        found: usize,
    },
    #[error("{source_name}:{line}: duplicate token {token:?} (first seen on line {first_line})")]
    DuplicateToken {
        source_name: String,
        line: usize,
        first_line: usize,
        token: String,
    },
    #[error("{source_name}: no vectors found")]
    Empty { source_name: String },
}

/// Immutable token → vector map.
///
/// Components are kept at `f64` in one contiguous buffer; `lookup` hands out
/// slices into it.
#[derive(Debug, Clone)]
pub struct VectorStore {
    dimension: usize,
    index: HashMap<String, usize>,
    data: Vec<f64>,
    source: String,
}

impl VectorStore {
    /// Loads a GloVe-format file. When `expected_dim` is given the file's
    /// dimension must match it.
    pub fn load(path: impl AsRef<Path>, expected_dim: Option<usize>) -> Result<Self, VectorError> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| VectorError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_reader(file, &path.display().to_string(), expected_dim)
    }

    pub fn from_reader<R: Read>(
        reader: R,
        source_name: &str,
        expected_dim: Option<usize>,
    ) -> Result<Self, VectorError> {
        let reader = BufReader::new(reader);
        let mut dimension: Option<usize> = None;
        let mut index = HashMap::new();
        let mut first_seen: HashMap<usize, usize> = HashMap::new();
        let mut data = Vec::new();
        let name = || source_name.to_string();

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|source| VectorError::Io {
                path: PathBuf::from(source_name),
                source,
            })?;
            let line = line.trim_end_matches(['\r', ' ']);
            let mut fields = line.split(' ');
            let token = match fields.next() {
                Some(t) if !t.is_empty() => t,
                _ => {
                    return Err(VectorError::MissingToken {
                        source_name: name(),
                        line: line_no,
                    })
                }
            };

            let start = data.len();
            for field in fields {
                let value: f64 = field.parse().map_err(|_| VectorError::MalformedFloat {
                    source_name: name(),
                    line: line_no,
                    token: token.to_string(),
                    field: field.to_string(),
                })?;
                if !value.is_finite() {
                    return Err(VectorError::NonFinite {
                        source_name: name(),
                        line: line_no,
                        token: token.to_string(),
                        field: field.to_string(),
                    });
                }
                data.push(value);
            }
            let found = data.len() - start;

            match dimension {
                None => {
                    if found == 0 {
                        return Err(VectorError::EmptyVector {
                            source_name: name(),
                            line: line_no,
                            token: token.to_string(),
                        });
                    }
                    if let Some(expected) = expected_dim {
                        if expected != found {
                            return Err(VectorError::DimensionMismatch {
                                source_name: name(),
                                expected,
                                found,
                            });
                        }
                    }
                    dimension = Some(found);
                }
                Some(expected) if expected != found => {
                    return Err(VectorError::InconsistentDimension {
                        source_name: name(),
                        line: line_no,
                        token: token.to_string(),
                        expected,
                        found,
                    });
                }
                Some(_) => {}
            }

            let row = index.len();
            match index.entry(token.to_string()) {
                Entry::Occupied(e) => {
                    return Err(VectorError::DuplicateToken {
                        source_name: name(),
                        line: line_no,
                        first_line: first_seen[e.get()],
                        token: token.to_string(),
                    });
                }
                Entry::Vacant(e) => {
                    e.insert(row);
                    first_seen.insert(row, line_no);
                }
            }
        }

        let dimension = dimension.ok_or_else(|| VectorError::Empty {
            source_name: name(),
        })?;
        Ok(Self {
            dimension,
            index,
            data,
            source: source_name.to_string(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Exact-match lookup. No case folding happens here.
    pub fn lookup(&self, token: &str) -> Option<&[f64]> {
        self.index.get(token).map(|&row| {
            let start = row * self.dimension;
            &self.data[start..start + self.dimension]
        })
    }

    pub fn contains(&self, token: &str) -> bool {
        self.index.contains_key(token)
    }

    /// Tokens in arbitrary order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.index.keys().map(String::as_str)
    }
}
