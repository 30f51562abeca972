//! Run configuration: a line-oriented `key = value` file with section
//! headers.
//!
//! ```text
//! [output]
//! dir = out
//! formats = table, json, csv
//!
//! [scoring]
//! skip_window = 2
//!
//! [corpus]
//! path = corpus
//!
//! [lexicon liu]
//! kind = categorical
//! language = en
//! positive = lexicons/liu-positive.txt
//! negative = lexicons/liu-negative.txt
//!
//! [build]
//! source = liu
//! mapping = lexicons/en-ig.map.tsv
//! manual = lexicons/ig-manual.tsv
//! name = igbosentilex
//!
//! [score]
//! lexicon = igbosentilex
//!
//! [evaluate]
//! lexicons = liu, nrc, igbosentilex
//! ```
//!
//! Relative paths are resolved against the directory holding the config
//! file. Lines starting with `#` or `;` are comments.

use std::collections::{btree_map, BTreeMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReportFormat {
    Table,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "table" => Ok(ReportFormat::Table),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!(
                "unknown report format {other:?} (expected table, json or csv)"
            )),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Table => "table",
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Build,
    Score,
    Evaluate,
}

/// Where a lexicon comes from and how to parse it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LexiconFiles {
    Categorical {
        positive: PathBuf,
        negative: PathBuf,
    },
    Valenced(PathBuf),
    NgramScored(PathBuf),
    Canonical(PathBuf),
}

impl LexiconFiles {
    pub fn paths(&self) -> Vec<&Path> {
        match self {
            LexiconFiles::Categorical { positive, negative } => vec![positive, negative],
            LexiconFiles::Valenced(p)
            | LexiconFiles::NgramScored(p)
            | LexiconFiles::Canonical(p) => {
                vec![p]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconSpec {
    pub name: String,
    /// Required for the raw source formats; optional (and checked) for
    /// canonical files, which carry their own tag.
    pub language: Option<String>,
    pub files: LexiconFiles,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildSpec {
    pub source: String,
    pub mapping: PathBuf,
    pub manual: Option<PathBuf>,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub lexicons: Vec<LexiconSpec>,
    pub build: Option<BuildSpec>,
    pub corpus: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub skip_window: usize,
    pub formats: Vec<ReportFormat>,
    pub score_lexicon: Option<String>,
    pub evaluate_lexicons: Option<Vec<String>>,
}

type Section = BTreeMap<String, (usize, String)>;

struct Sections {
    order: Vec<String>,
    map: BTreeMap<String, Section>,
}

fn split_sections(text: &str, problems: &mut Vec<String>) -> Sections {
    let mut sections = Sections {
        order: Vec::new(),
        map: BTreeMap::new(),
    };
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let Some(header) = header.strip_suffix(']') else {
                problems.push(format!("line {line_no}: unterminated section header"));
                current = None;
                continue;
            };
            let header = header.split_whitespace().collect::<Vec<_>>().join(" ");
            if sections.map.contains_key(&header) {
                problems.push(format!("line {line_no}: section [{header}] appears twice"));
            } else {
                sections.order.push(header.clone());
                sections.map.insert(header.clone(), Section::new());
            }
            current = Some(header);
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            problems.push(format!("line {line_no}: expected `key = value`"));
            continue;
        };
        let Some(section) = &current else {
            problems.push(format!(
                "line {line_no}: `{}` outside any section",
                key.trim()
            ));
            continue;
        };
        let entry = sections.map.get_mut(section).expect("section registered");
        let key = key.trim().to_string();
        match entry.entry(key) {
            btree_map::Entry::Occupied(e) => problems.push(format!(
                "line {line_no}: `{}` repeated in [{section}]",
                e.key()
            )),
            btree_map::Entry::Vacant(e) => {
                e.insert((line_no, value.trim().to_string()));
            }
        }
    }
    sections
}

/// Pulls known keys out of one section, reporting leftovers as unknown.
struct Reader<'a> {
    name: &'a str,
    section: Section,
    base: &'a Path,
}

impl Reader<'_> {
    fn take(&mut self, key: &str) -> Option<String> {
        self.section.remove(key).map(|(_, v)| v)
    }

    fn require(&mut self, key: &str, problems: &mut Vec<String>) -> Option<String> {
        let value = self.take(key);
        if value.is_none() {
            problems.push(format!("[{}] is missing `{key}`", self.name));
        }
        value
    }

    fn path(&mut self, key: &str, problems: &mut Vec<String>) -> Option<PathBuf> {
        self.require(key, problems).map(|v| self.base.join(v))
    }

    fn finish(self, problems: &mut Vec<String>) {
        for (key, (line, _)) in self.section {
            problems.push(format!(
                "line {line}: unknown key `{key}` in [{}]",
                self.name
            ));
        }
    }
}

fn list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, Error> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        RunConfig::parse(&text, base)
    }

    /// Parses config text, resolving relative paths against `base`. Every
    /// problem found is reported, not just the first.
    pub fn parse(text: &str, base: &Path) -> Result<RunConfig, Error> {
        let mut problems = Vec::new();
        let mut sections = split_sections(text, &mut problems);
        let mut config = RunConfig {
            lexicons: Vec::new(),
            build: None,
            corpus: None,
            output_dir: base.join("out"),
            skip_window: sentilex_core::scoring::DEFAULT_SKIP_WINDOW,
            formats: vec![ReportFormat::Table],
            score_lexicon: None,
            evaluate_lexicons: None,
        };

        for name in sections.order.clone() {
            let section = sections.map.remove(&name).expect("listed section");
            let mut reader = Reader {
                name: &name,
                section,
                base,
            };
            let mut words = name.splitn(2, ' ');
            match (words.next().unwrap_or(""), words.next()) {
                ("output", None) => {
                    if let Some(dir) = reader.take("dir") {
                        config.output_dir = base.join(dir);
                    }
                    if let Some(formats) = reader.take("formats") {
                        config.formats = parse_formats(&formats, &mut problems);
                    }
                }
                ("scoring", None) => {
                    if let Some(w) = reader.take("skip_window") {
                        match w.parse::<usize>() {
                            Ok(w) => config.skip_window = w,
                            Err(_) => problems.push(format!(
                                "[scoring] skip_window must be a non-negative integer, got {w:?}"
                            )),
                        }
                    }
                }
                ("corpus", None) => config.corpus = reader.path("path", &mut problems),
                ("build", None) => {
                    let source = reader.require("source", &mut problems);
                    let mapping = reader.path("mapping", &mut problems);
                    let manual = reader.take("manual").map(|m| base.join(m));
                    let name = reader.require("name", &mut problems);
                    if let (Some(source), Some(mapping), Some(name)) = (source, mapping, name) {
                        config.build = Some(BuildSpec {
                            source,
                            mapping,
                            manual,
                            name,
                        });
                    }
                }
                ("score", None) => config.score_lexicon = reader.take("lexicon"),
                ("evaluate", None) => {
                    config.evaluate_lexicons = reader.take("lexicons").map(|v| list(&v))
                }
                ("lexicon", Some(lex_name)) => {
                    if let Some(spec) = read_lexicon(lex_name, &mut reader, &mut problems) {
                        config.lexicons.push(spec);
                    }
                }
                _ => {
                    problems.push(format!("unknown section [{name}]"));
                    reader.section.clear();
                }
            }
            reader.finish(&mut problems);
        }

        if problems.is_empty() {
            Ok(config)
        } else {
            Err(Error::Config(problems))
        }
    }

    pub fn lexicon(&self, name: &str) -> Option<&LexiconSpec> {
        self.lexicons.iter().find(|l| l.name == name)
    }

    /// The lexicon `score` runs with.
    pub fn score_target(&self) -> Result<&LexiconSpec, String> {
        match &self.score_lexicon {
            Some(name) => self
                .lexicon(name)
                .ok_or_else(|| format!("[score] lexicon {name:?} is not defined")),
            None => match self.lexicons.as_slice() {
                [only] => Ok(only),
                [] => Err("no lexicon defined".to_string()),
                _ => Err(
                    "several lexicons defined; choose one with `lexicon` in [score]".to_string(),
                ),
            },
        }
    }

    /// Lexicons compared by `evaluate`, in report order.
    pub fn evaluate_targets(&self) -> Result<Vec<&LexiconSpec>, Vec<String>> {
        let Some(names) = &self.evaluate_lexicons else {
            return Ok(self.lexicons.iter().collect());
        };
        let mut problems = Vec::new();
        let specs: Vec<&LexiconSpec> = names
            .iter()
            .filter_map(|n| {
                let spec = self.lexicon(n);
                if spec.is_none() {
                    problems.push(format!("[evaluate] lexicon {n:?} is not defined"));
                }
                spec
            })
            .collect();
        if problems.is_empty() {
            Ok(specs)
        } else {
            Err(problems)
        }
    }

    /// Checks everything `command` needs; all problems are reported together.
    pub fn validate(&self, command: Command) -> Result<(), Error> {
        let mut problems = Vec::new();
        let mut need_file = |path: &Path, what: &str| {
            if !path.exists() {
                problems.push(format!("{what} not found: {}", path.display()));
            }
        };
        let mut lexicons: Vec<&LexiconSpec> = Vec::new();
        let mut extra = Vec::new();
        match command {
            Command::Build => match &self.build {
                None => extra.push("missing [build] section".to_string()),
                Some(build) => {
                    need_file(&build.mapping, "mapping file");
                    if let Some(manual) = &build.manual {
                        need_file(manual, "manual entries file");
                    }
                    match self.lexicon(&build.source) {
                        Some(spec) => lexicons.push(spec),
                        None => extra.push(format!(
                            "[build] source lexicon {:?} is not defined",
                            build.source
                        )),
                    }
                }
            },
            Command::Score => match self.score_target() {
                Ok(spec) => lexicons.push(spec),
                Err(p) => extra.push(p),
            },
            Command::Evaluate => match self.evaluate_targets() {
                Ok(specs) if specs.len() < 2 => {
                    extra.push("need at least two lexicons".to_string())
                }
                Ok(specs) => lexicons = specs,
                Err(p) => extra.extend(p),
            },
        }
        if matches!(command, Command::Score | Command::Evaluate) {
            match &self.corpus {
                Some(corpus) => need_file(corpus, "corpus"),
                None => extra.push("missing [corpus] path".to_string()),
            }
        }
        for spec in lexicons {
            for path in spec.files.paths() {
                need_file(path, &format!("lexicon {:?} file", spec.name));
            }
        }
        problems.extend(extra);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems))
        }
    }
}

fn parse_formats(value: &str, problems: &mut Vec<String>) -> Vec<ReportFormat> {
    let mut formats = Vec::new();
    for item in list(value) {
        match item.parse() {
            Ok(f) if !formats.contains(&f) => formats.push(f),
            Ok(_) => {}
            Err(e) => problems.push(e),
        }
    }
    if formats.is_empty() {
        problems.push("no report format selected".to_string());
    }
    formats
}

fn read_lexicon(
    name: &str,
    reader: &mut Reader<'_>,
    problems: &mut Vec<String>,
) -> Option<LexiconSpec> {
    if name.contains(char::is_whitespace) {
        problems.push(format!("lexicon name {name:?} must be a single word"));
        return None;
    }
    let kind = reader.require("kind", problems)?;
    let language = reader.take("language");
    if language.is_none() && kind != "canonical" {
        problems.push(format!("[lexicon {name}] is missing `language`"));
    }
    let files = match kind.as_str() {
        "categorical" => {
            let positive = reader.path("positive", problems);
            let negative = reader.path("negative", problems);
            LexiconFiles::Categorical {
                positive: positive?,
                negative: negative?,
            }
        }
        "valenced" => LexiconFiles::Valenced(reader.path("path", problems)?),
        "ngram-scored" => LexiconFiles::NgramScored(reader.path("path", problems)?),
        "canonical" => LexiconFiles::Canonical(reader.path("path", problems)?),
        other => {
            problems.push(format!(
                "[lexicon {name}] unknown kind {other:?} (expected categorical, valenced, ngram-scored or canonical)"
            ));
            reader.section.clear();
            return None;
        }
    };
    Some(LexiconSpec {
        name: name.to_string(),
        language,
        files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
[output]
dir = results
formats = table, csv

[scoring]
skip_window = 3

[corpus]
path = corpus

[lexicon liu]
kind = categorical
language = en
positive = pos.txt
negative = neg.txt

[lexicon ig]
kind = canonical
path = out/ig.tsv

[build]
source = liu
mapping = map.tsv
name = ig

[evaluate]
lexicons = ig, liu
";

    #[test]
    fn parses_sample() {
        let cfg = RunConfig::parse(SAMPLE, Path::new("/base")).unwrap();
        assert_eq!(cfg.output_dir, Path::new("/base/results"));
        assert_eq!(cfg.skip_window, 3);
        assert_eq!(cfg.formats, [ReportFormat::Table, ReportFormat::Csv]);
        assert_eq!(cfg.corpus.as_deref(), Some(Path::new("/base/corpus")));
        assert_eq!(cfg.lexicons.len(), 2);
        assert_eq!(
            cfg.lexicons[0].files,
            LexiconFiles::Categorical {
                positive: "/base/pos.txt".into(),
                negative: "/base/neg.txt".into()
            }
        );
        let build = cfg.build.as_ref().unwrap();
        assert_eq!(
            (build.source.as_str(), build.manual.as_ref()),
            ("liu", None)
        );
        let targets: Vec<_> = cfg
            .evaluate_targets()
            .unwrap()
            .iter()
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(targets, ["ig", "liu"]);
    }

    #[test]
    fn defaults() {
        let cfg = RunConfig::parse("", Path::new("b")).unwrap();
        assert_eq!(cfg.output_dir, Path::new("b/out"));
        assert_eq!(cfg.skip_window, 2);
        assert_eq!(cfg.formats, [ReportFormat::Table]);
    }

    #[test]
    fn reports_every_problem() {
        let text = "\
stray = 1
[scoring]
skip_window = -1
[output]
formats = table, pdf
colour = blue
[lexicon x]
kind = categorical
positive = p.txt
[mystery]
a = b
";
        let Err(Error::Config(problems)) = RunConfig::parse(text, Path::new(".")) else {
            panic!("expected config error");
        };
        let joined = problems.join("\n");
        for needle in [
            "outside any section",
            "skip_window must be a non-negative integer",
            "unknown report format \"pdf\"",
            "unknown key `colour`",
            "missing `negative`",
            "missing `language`",
            "unknown section [mystery]",
        ] {
            assert!(joined.contains(needle), "{needle:?} not in:\n{joined}");
        }
    }

    #[test]
    fn validation_collects_missing_paths() {
        let cfg = RunConfig::parse(SAMPLE, Path::new("/nonexistent")).unwrap();
        let Err(Error::Config(problems)) = cfg.validate(Command::Evaluate) else {
            panic!("expected validation error");
        };
        // corpus + canonical file + two categorical lists
        assert_eq!(problems.len(), 4, "{problems:?}");

        let Err(Error::Config(problems)) = cfg.validate(Command::Build) else {
            panic!("expected validation error");
        };
        assert!(problems
            .iter()
            .any(|p| p.contains("mapping file not found: /nonexistent/map.tsv")));
    }

    #[test]
    fn evaluate_needs_two_lexicons() {
        let text = "[corpus]\npath = .\n[lexicon a]\nkind = canonical\npath = .\n";
        let cfg = RunConfig::parse(text, Path::new(".")).unwrap();
        let Err(Error::Config(problems)) = cfg.validate(Command::Evaluate) else {
            panic!("expected validation error");
        };
        assert_eq!(problems, ["need at least two lexicons"]);
    }

    #[test]
    fn score_target_selection() {
        let two = RunConfig::parse(SAMPLE, Path::new(".")).unwrap();
        assert!(two.score_target().is_err());
        let one =
            RunConfig::parse("[lexicon a]\nkind = canonical\npath = x\n", Path::new(".")).unwrap();
        assert_eq!(one.score_target().unwrap().name, "a");
    }
}
