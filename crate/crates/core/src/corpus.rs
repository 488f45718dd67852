//! Paper and scholar records loaded from JSON-Lines files.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{source_name}:{line}: malformed JSON: {message}")]
    Json {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("{source_name}:{line}: paper {paper_id:?} has an empty author list")]
    EmptyAuthors {
        source_name: String,
        line: usize,
        paper_id: String,
    },
    #[error("{source_name}:{line}: paper {paper_id:?} lists author {scholar_id:?} more than once")]
    DuplicateAuthor {
        source_name: String,
        line: usize,
        paper_id: String,
        scholar_id: String,
    },
    #[error("{source_name}:{line}: paper {paper_id:?} has negative citation count {citations}")]
    NegativeCitations {
        source_name: String,
        line: usize,
        paper_id: String,
        citations: i64,
    },
    #[error("{source_name}:{line}: empty {field}")]
    EmptyId {
        source_name: String,
        line: usize,
        field: &'static str,
    },
    #[error("{source_name}:{line}: duplicate paper_id {paper_id:?}")]
    DuplicatePaper {
        source_name: String,
        line: usize,
        paper_id: String,
    },
    #[error("{source_name}:{line}: duplicate scholar_id {scholar_id:?}")]
    DuplicateScholar {
        source_name: String,
        line: usize,
        scholar_id: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Paper {
    pub paper_id: String,
    pub title: Option<String>,
    pub abstract_text: String,
    /// Rank order; position 0 is the first author.
    pub authors: Vec<String>,
    pub citations: u64,
}

impl Paper {
    /// 1-based authorship rank of `scholar_id`, if they are an author.
    pub fn rank_of(&self, scholar_id: &str) -> Option<usize> {
        self.authors
            .iter()
            .position(|a| a == scholar_id)
            .map(|p| p + 1)
    }

    pub fn coauthor_count(&self) -> usize {
        self.authors.len()
    }

    pub fn has_blank_abstract(&self) -> bool {
        self.abstract_text.trim().is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scholar {
    pub scholar_id: String,
    pub display_name: Option<String>,
}

/// Per-scholar aggregates over the papers they authored at any rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScholarProfile {
    pub scholar_id: String,
    /// Sorted ascending.
    pub paper_ids: Vec<String>,
    pub max_citations: u64,
}

impl ScholarProfile {
    /// Number of papers, always ≥ 1.
    pub fn paper_count(&self) -> usize {
        self.paper_ids.len()
    }
}

#[derive(Deserialize)]
struct PaperRecord {
    paper_id: String,
    #[serde(rename = "abstract")]
    abstract_text: String,
    authors: Vec<String>,
    citations: i64,
    #[serde(default)]
    title: Option<String>,
}

#[derive(Deserialize)]
struct ScholarRecord {
    scholar_id: String,
    name: String,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    scholars: BTreeMap<String, Scholar>,
    papers: Vec<Paper>,
    by_id: HashMap<String, usize>,
}

impl Corpus {
    /// Loads the papers file and, optionally, the companion scholars file.
    pub fn load(papers: impl AsRef<Path>, scholars: Option<&Path>) -> Result<Self, CorpusError> {
        let papers = papers.as_ref();
        let open = |p: &Path| {
            File::open(p).map_err(|source| CorpusError::Io {
                path: p.to_path_buf(),
                source,
            })
        };
        let paper_file = open(papers)?;
        match scholars {
            Some(s) => {
                let scholar_file = open(s)?;
                Self::from_readers(
                    paper_file,
                    &papers.display().to_string(),
                    Some((scholar_file, &s.display().to_string())),
                )
            }
            None => Self::from_readers(
                paper_file,
                &papers.display().to_string(),
                None::<(File, &str)>,
            ),
        }
    }

    pub fn from_readers<P: Read, S: Read>(
        papers: P,
        papers_name: &str,
        scholars: Option<(S, &str)>,
    ) -> Result<Self, CorpusError> {
        let mut corpus = Corpus::default();

        if let Some((reader, name)) = scholars {
            for_each_line(reader, name, |line_no, line| {
                let rec: ScholarRecord = parse_json(line, name, line_no)?;
                if rec.scholar_id.is_empty() {
                    return Err(CorpusError::EmptyId {
                        source_name: name.to_string(),
                        line: line_no,
                        field: "scholar_id",
                    });
                }
                if corpus.scholars.contains_key(&rec.scholar_id) {
                    return Err(CorpusError::DuplicateScholar {
                        source_name: name.to_string(),
                        line: line_no,
                        scholar_id: rec.scholar_id,
                    });
                }
                corpus.scholars.insert(
                    rec.scholar_id.clone(),
                    Scholar {
                        scholar_id: rec.scholar_id,
                        display_name: Some(rec.name),
                    },
                );
                Ok(())
            })?;
        }

        for_each_line(papers, papers_name, |line_no, line| {
            let rec: PaperRecord = parse_json(line, papers_name, line_no)?;
            let paper = validate(rec, papers_name, line_no)?;
            corpus.push(paper, papers_name, line_no)
        })?;

        Ok(corpus)
    }

    /// Builds a corpus from in-memory papers, applying the same validation
    /// as the file loader (line numbers count papers from 1).
    pub fn from_papers(papers: impl IntoIterator<Item = Paper>) -> Result<Self, CorpusError> {
        let mut corpus = Corpus::default();
        for (idx, paper) in papers.into_iter().enumerate() {
            let rec = PaperRecord {
                paper_id: paper.paper_id,
                abstract_text: paper.abstract_text,
                authors: paper.authors,
                citations: paper.citations as i64,
                title: paper.title,
            };
            let paper = validate(rec, "<memory>", idx + 1)?;
            corpus.push(paper, "<memory>", idx + 1)?;
        }
        Ok(corpus)
    }

    fn push(&mut self, paper: Paper, source_name: &str, line: usize) -> Result<(), CorpusError> {
        if self.by_id.contains_key(&paper.paper_id) {
            return Err(CorpusError::DuplicatePaper {
                source_name: source_name.to_string(),
                line,
                paper_id: paper.paper_id,
            });
        }
        for author in &paper.authors {
            self.scholars
                .entry(author.clone())
                .or_insert_with(|| Scholar {
                    scholar_id: author.clone(),
                    display_name: None,
                });
        }
        self.by_id.insert(paper.paper_id.clone(), self.papers.len());
        self.papers.push(paper);
        Ok(())
    }

    /// Papers in file order.
    pub fn papers(&self) -> &[Paper] {
        &self.papers
    }

    pub fn paper(&self, paper_id: &str) -> Option<&Paper> {
        self.by_id.get(paper_id).map(|&i| &self.papers[i])
    }

    pub fn scholars(&self) -> impl Iterator<Item = &Scholar> {
        self.scholars.values()
    }

    pub fn scholar(&self, scholar_id: &str) -> Option<&Scholar> {
        self.scholars.get(scholar_id)
    }

    pub fn scholar_count(&self) -> usize {
        self.scholars.len()
    }

    /// Ids of papers whose abstract is empty or whitespace.
    pub fn blank_abstracts(&self) -> Vec<&str> {
        self.papers
            .iter()
            .filter(|p| p.has_blank_abstract())
            .map(|p| p.paper_id.as_str())
            .collect()
    }

    /// One profile per scholar with at least one paper, keyed by scholar id.
    pub fn scholar_profiles(&self) -> BTreeMap<String, ScholarProfile> {
        let mut profiles: BTreeMap<String, ScholarProfile> = BTreeMap::new();
        for paper in &self.papers {
            for author in &paper.authors {
                let profile = profiles
                    .entry(author.clone())
                    .or_insert_with(|| ScholarProfile {
                        scholar_id: author.clone(),
                        paper_ids: Vec::new(),
                        max_citations: 0,
                    });
                profile.paper_ids.push(paper.paper_id.clone());
                profile.max_citations = profile.max_citations.max(paper.citations);
            }
        }
        for profile in profiles.values_mut() {
            profile.paper_ids.sort();
        }
        profiles
    }
}

/// Convenience wrapper for a papers file without a scholars file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    Corpus::load(path, None)
}

fn validate(rec: PaperRecord, source_name: &str, line: usize) -> Result<Paper, CorpusError> {
    if rec.paper_id.is_empty() {
        return Err(CorpusError::EmptyId {
            source_name: source_name.to_string(),
            line,
            field: "paper_id",
        });
    }
    if rec.authors.is_empty() {
        return Err(CorpusError::EmptyAuthors {
            source_name: source_name.to_string(),
            line,
            paper_id: rec.paper_id,
        });
    }
    let mut seen = HashSet::new();
    for author in &rec.authors {
        if author.is_empty() {
            return Err(CorpusError::EmptyId {
                source_name: source_name.to_string(),
                line,
                field: "author id",
            });
        }
        if !seen.insert(author.as_str()) {
            return Err(CorpusError::DuplicateAuthor {
                source_name: source_name.to_string(),
                line,
                paper_id: rec.paper_id.clone(),
                scholar_id: author.clone(),
            });
        }
    }
    if rec.citations < 0 {
        return Err(CorpusError::NegativeCitations {
            source_name: source_name.to_string(),
            line,
            paper_id: rec.paper_id,
            citations: rec.citations,
        });
    }
    Ok(Paper {
        paper_id: rec.paper_id,
        title: rec.title,
        abstract_text: rec.abstract_text,
        authors: rec.authors,
        citations: rec.citations as u64,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(
    line: &str,
    source_name: &str,
    line_no: usize,
) -> Result<T, CorpusError> {
    serde_json::from_str(line).map_err(|e| CorpusError::Json {
        source_name: source_name.to_string(),
        line: line_no,
        message: e.to_string(),
    })
}

fn for_each_line<R: Read>(
    reader: R,
    source_name: &str,
    mut f: impl FnMut(usize, &str) -> Result<(), CorpusError>,
) -> Result<(), CorpusError> {
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|source| CorpusError::Io {
            path: PathBuf::from(source_name),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        f(idx + 1, trimmed)?;
    }
    Ok(())
}
