//! Named graph pairs with the verdict each method is expected to reach.
//!
//! The manifest is line oriented:
//!
//! ```text
//! name | file1 | file2 | 1wl=<d|n> | nc1wl=<d|n> | 2wl=<d|n> | 3wl=<d|n> | iso=<t|f|x> | prov=<figure|derived|trivial>
//! ```
//!
//! `#` starts a comment line. The built-in corpus is compiled into the
//! library; [`load_corpus_dir`] reads the same format from disk.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{parse_edge_list, Graph, GraphError};
use crate::wl::{Method, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Transcribed from a published figure.
    Figure,
    Derived,
    Trivial,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Figure => "figure",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleIso {
    Isomorphic,
    NonIsomorphic,
    /// Too many nodes for the brute-force oracle.
    TooLarge,
}

impl OracleIso {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            OracleIso::Isomorphic => Some(true),
            OracleIso::NonIsomorphic => Some(false),
            OracleIso::TooLarge => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub files: (String, String),
    pub texts: (String, String),
    pub graphs: (Graph, Graph),
    pub expected: BTreeMap<Method, Verdict>,
    pub provenance: Provenance,
    pub oracle_isomorphic: OracleIso,
}

impl CorpusEntry {
    pub fn expected(&self, method: Method) -> Verdict {
        self.expected[&method]
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("{file}: {source}")]
    Graph {
        file: String,
        #[source]
        source: GraphError,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

const MANIFEST: &str = include_str!("../corpus/manifest.txt");

const FILES: &[(&str, &str)] = &[
    ("bicyclopentyl.txt", include_str!("../corpus/bicyclopentyl.txt")),
    ("bridged-triangles.txt", include_str!("../corpus/bridged-triangles.txt")),
    ("c3x2.txt", include_str!("../corpus/c3x2.txt")),
    ("c4x2.txt", include_str!("../corpus/c4x2.txt")),
    ("c6.txt", include_str!("../corpus/c6.txt")),
    ("c8.txt", include_str!("../corpus/c8.txt")),
    ("cube.txt", include_str!("../corpus/cube.txt")),
    ("decalin.txt", include_str!("../corpus/decalin.txt")),
    ("hex-chord.txt", include_str!("../corpus/hex-chord.txt")),
    ("hex-labeled.txt", include_str!("../corpus/hex-labeled.txt")),
    ("k13.txt", include_str!("../corpus/k13.txt")),
    ("k3-perm.txt", include_str!("../corpus/k3-perm.txt")),
    ("k3.txt", include_str!("../corpus/k3.txt")),
    ("k33.txt", include_str!("../corpus/k33.txt")),
    ("k4x2.txt", include_str!("../corpus/k4x2.txt")),
    ("p4.txt", include_str!("../corpus/p4.txt")),
    ("prism.txt", include_str!("../corpus/prism.txt")),
    ("rook4x4.txt", include_str!("../corpus/rook4x4.txt")),
    ("shrikhande.txt", include_str!("../corpus/shrikhande.txt")),
    ("tri2-labeled.txt", include_str!("../corpus/tri2-labeled.txt")),
];

/// Text of a built-in corpus file, by file name.
pub fn builtin_file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The built-in corpus. Panics only if the embedded files are broken, which
/// the unit tests rule out.
pub fn load_corpus() -> Vec<CorpusEntry> {
    parse_manifest(MANIFEST, |file| {
        builtin_file(file)
            .map(str::to_owned)
            .ok_or_else(|| format!("no built-in corpus file {file:?}"))
    })
    .expect("built-in corpus is well formed")
}

/// Reads `manifest.txt` and the graph files it names from `dir`.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    load_manifest_file(&dir.join("manifest.txt"))
}

/// Reads a manifest; graph files resolve relative to its directory.
pub fn load_manifest_file(path: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_owned(),
        source,
    })?;
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_manifest(&text, |file| {
        std::fs::read_to_string(dir.join(file)).map_err(|e| format!("cannot read {file:?}: {e}"))
    })
}

/// Parses manifest text, fetching graph files through `read`.
pub fn parse_manifest(
    text: &str,
    mut read: impl FnMut(&str) -> Result<String, String>,
) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| CorpusError::Manifest { line: line_no, message };
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 9 {
            return Err(err(format!("expected 9 fields, found {}", fields.len())));
        }
        if entries.iter().any(|e: &CorpusEntry| e.name == fields[0]) {
            return Err(err(format!("duplicate entry {:?}", fields[0])));
        }

        let mut expected = BTreeMap::new();
        for (field, method) in fields[3..7].iter().zip(Method::ALL) {
            let value = keyed(field, method.as_str()).map_err(&err)?;
            let verdict = match value {
                "d" => Verdict::Distinguished,
                "n" => Verdict::NotDistinguished,
                other => return Err(err(format!("{method} verdict must be d or n, got {other:?}"))),
            };
            expected.insert(method, verdict);
        }
        let oracle_isomorphic = match keyed(fields[7], "iso").map_err(&err)? {
            "t" => OracleIso::Isomorphic,
            "f" => OracleIso::NonIsomorphic,
            "x" => OracleIso::TooLarge,
            other => return Err(err(format!("iso must be t, f or x, got {other:?}"))),
        };
        let provenance = match keyed(fields[8], "prov").map_err(&err)? {
            "figure" => Provenance::Figure,
            "derived" => Provenance::Derived,
            "trivial" => Provenance::Trivial,
            other => return Err(err(format!("unknown provenance {other:?}"))),
        };

        let mut load = |file: &str| -> Result<(String, Graph), CorpusError> {
            let text = read(file).map_err(&err)?;
            let graph = parse_edge_list(&text).map_err(|source| CorpusError::Graph {
                file: file.to_owned(),
                source,
            })?;
            Ok((text, graph))
        };
        let (t1, g1) = load(fields[1])?;
        let (t2, g2) = load(fields[2])?;

        let entry = CorpusEntry {
            name: fields[0].to_owned(),
            files: (fields[1].to_owned(), fields[2].to_owned()),
            texts: (t1, t2),
            graphs: (g1, g2),
            expected,
            provenance,
            oracle_isomorphic,
        };
        check_consistency(&entry).map_err(&err)?;
        entries.push(entry);
    }
    Ok(entries)
}

fn keyed<'a>(field: &'a str, key: &str) -> Result<&'a str, String> {
    field
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| format!("expected {key}=..., got {field:?}"))
}

/// Hierarchy constraints a recorded set of verdicts must obey on its own.
fn check_consistency(entry: &CorpusEntry) -> Result<(), String> {
    let d = |m| entry.expected(m).is_distinguished();
    if d(Method::OneWl) && !d(Method::NcOneWl) {
        return Err("1wl distinguishes but nc1wl does not".into());
    }
    if d(Method::NcOneWl) && !d(Method::ThreeWl) {
        return Err("nc1wl distinguishes but 3wl does not".into());
    }
    if d(Method::OneWl) != d(Method::TwoWl) {
        return Err("2wl verdict differs from 1wl".into());
    }
    if entry.oracle_isomorphic == OracleIso::Isomorphic && Method::ALL.into_iter().any(d) {
        return Err("isomorphic pair recorded as distinguished".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_loads() {
        let corpus = load_corpus();
        assert_eq!(corpus.len(), 10);
        let c6 = corpus.iter().find(|e| e.name == "c6-vs-2c3").unwrap();
        assert_eq!(c6.expected(Method::OneWl), Verdict::NotDistinguished);
        assert_eq!(c6.expected(Method::NcOneWl), Verdict::Distinguished);
        assert_eq!(c6.expected(Method::ThreeWl), Verdict::Distinguished);
        let k3 = corpus.iter().find(|e| e.name == "k3-vs-k3-perm").unwrap();
        assert_eq!(k3.oracle_isomorphic, OracleIso::Isomorphic);
        assert_eq!(k3.provenance, Provenance::Trivial);
    }

    #[test]
    fn every_builtin_file_is_referenced() {
        let corpus = load_corpus();
        for (name, _) in FILES {
            assert!(
                corpus.iter().any(|e| e.files.0 == *name || e.files.1 == *name),
                "{name} unused"
            );
        }
    }

    fn fake_read(_: &str) -> Result<String, String> {
        Ok("3 3\n0 1\n1 2\n0 2\n".into())
    }

    #[test]
    fn manifest_errors() {
        let bad_fields = "a | x | y | 1wl=n\n";
        assert!(matches!(
            parse_manifest(bad_fields, fake_read),
            Err(CorpusError::Manifest { line: 1, .. })
        ));
        let bad_verdict = "# c\na | x | y | 1wl=q | nc1wl=n | 2wl=n | 3wl=n | iso=t | prov=trivial\n";
        assert!(matches!(
            parse_manifest(bad_verdict, fake_read),
            Err(CorpusError::Manifest { line: 2, .. })
        ));
        let inconsistent = "a | x | y | 1wl=d | nc1wl=n | 2wl=d | 3wl=d | iso=f | prov=derived\n";
        assert!(parse_manifest(inconsistent, fake_read).is_err());
        let iso_but_distinguished = "a | x | y | 1wl=n | nc1wl=n | 2wl=n | 3wl=d | iso=t | prov=derived\n";
        assert!(parse_manifest(iso_but_distinguished, fake_read).is_err());
        let ok = "a | x | y | 1wl=n | nc1wl=n | 2wl=n | 3wl=n | iso=t | prov=trivial\n";
        assert_eq!(parse_manifest(ok, fake_read).unwrap().len(), 1);
        let missing = |_: &str| Err::<String, _>("gone".to_owned());
        assert!(parse_manifest(ok, missing).is_err());
    }

    #[test]
    fn bad_graph_file_reported() {
        let ok = "a | x | y | 1wl=n | nc1wl=n | 2wl=n | 3wl=n | iso=t | prov=trivial\n";
        let err = parse_manifest(ok, |_| Ok("2 1\n0 0\n".into())).unwrap_err();
        assert!(matches!(err, CorpusError::Graph { .. }));
    }
}
