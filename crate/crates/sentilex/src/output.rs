//! All-or-nothing output: files are staged as temporaries next to their
//! destination and only renamed into place once every one was written.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::Error;

pub struct StagedOutput {
    dir: PathBuf,
    files: Vec<(PathBuf, NamedTempFile)>,
}

impl StagedOutput {
    pub fn new(dir: &Path) -> Result<Self, Error> {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        Ok(StagedOutput {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn stage(&mut self, name: &str, contents: &[u8]) -> Result<(), Error> {
        let target = self.dir.join(name);
        let io_err = |source| Error::Io {
            path: target.clone(),
            source,
        };
        let mut tmp = NamedTempFile::new_in(&self.dir).map_err(io_err)?;
        tmp.write_all(contents).map_err(io_err)?;
        tmp.as_file().sync_all().map_err(io_err)?;
        self.files.push((target, tmp));
        Ok(())
    }

    /// Moves every staged file into place. If one rename fails, the files
    /// already moved are removed again.
    pub fn commit(self) -> Result<Vec<PathBuf>, Error> {
        let mut written = Vec::new();
        for (target, tmp) in self.files {
            if let Err(e) = tmp.persist(&target) {
                for done in &written {
                    let _ = fs::remove_file(done);
                }
                return Err(Error::Io {
                    path: target,
                    source: e.error,
                });
            }
            log::info!("wrote {}", target.display());
            written.push(target);
        }
        Ok(written)
    }
}
