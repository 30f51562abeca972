//! Corpus ingestion.
//!
//! A corpus is either a directory of UTF-8 `.txt` files, where each file
//! stem is the document id, or a file of JSON lines with `id` and `text`
//! fields. Documents come back sorted by id.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use sentilex_core::Document;
use serde::Deserialize;

use crate::error::Error;

#[derive(Deserialize)]
struct Record {
    id: String,
    text: String,
}

pub fn load_corpus(path: &Path) -> Result<Vec<Document>, Error> {
    let mut documents = if path.is_dir() {
        load_directory(path)?
    } else {
        load_records(path)?
    };
    if documents.is_empty() {
        return Err(Error::EmptyCorpus(path.to_path_buf()));
    }
    documents.sort_by(|a, b| a.id.cmp(&b.id));
    let mut seen = BTreeSet::new();
    for d in &documents {
        if !seen.insert(d.id.as_str()) {
            return Err(Error::DuplicateDocument(d.id.clone()));
        }
    }
    log::info!(
        "loaded {} documents from {}",
        documents.len(),
        path.display()
    );
    Ok(documents)
}

fn load_directory(dir: &Path) -> Result<Vec<Document>, Error> {
    let io_err = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut documents = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        if !path.is_file() || path.extension().and_then(|e| e.to_str()) != Some("txt") {
            continue;
        }
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::Document {
                path: path.clone(),
                reason: "file name is not valid UTF-8".into(),
            })?
            .to_string();
        let bytes = fs::read(&path).map_err(|e| Error::Document {
            path: path.clone(),
            reason: e.to_string(),
        })?;
        let text = String::from_utf8(bytes).map_err(|e| Error::Document {
            path: path.clone(),
            reason: format!(
                "invalid UTF-8 at byte offset {}",
                e.utf8_error().valid_up_to()
            ),
        })?;
        log::debug!("document {id}: {} bytes", text.len());
        documents.push(Document::new(id, text));
    }
    Ok(documents)
}

fn load_records(path: &Path) -> Result<Vec<Document>, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Document {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str::<Record>(line)
                .map(|r| Document::new(r.id, r.text))
                .map_err(|e| Error::CorpusRecord {
                    path: path.to_path_buf(),
                    line: i + 1,
                    reason: e.to_string(),
                })
        })
        .collect()
}
