//! Text renderings of build reports, score results and agreement reports.

use std::fmt::Write as _;

use sentilex_core::{AgreementReport, BuildReport, Lexicon, Polarity, ScoreResult};
use serde::Serialize;

use crate::error::Error;

pub const AVERAGE_LABEL: &str = "Average polarity agreement (%):";

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "Yes"
    } else {
        "No"
    }
}

fn title(p: Polarity) -> &'static str {
    match p {
        Polarity::Positive => "Positive",
        Polarity::Negative => "Negative",
        Polarity::Neutral => "Neutral",
    }
}

/// Aligned plain-text table: one block of rows per lexicon (one row per
/// polarity, `Yes`/`No` per document), then the agreement row and the
/// average line. A `Neutral` row is only shown when some lexicon produced a
/// neutral label.
pub fn render_table(report: &AgreementReport) -> String {
    let any_neutral = report
        .matrix
        .iter()
        .flatten()
        .any(|p| *p == Polarity::Neutral);
    let mut polarities = vec![Polarity::Positive, Polarity::Negative];
    if any_neutral {
        polarities.push(Polarity::Neutral);
    }

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["Lexicon".to_string(), "Polarity".to_string()];
    header.extend(report.document_ids.iter().cloned());
    rows.push(header);
    for (name, labels) in report.lexicon_names.iter().zip(&report.matrix) {
        for (i, polarity) in polarities.iter().enumerate() {
            let mut row = vec![
                if i == 0 { name.clone() } else { String::new() },
                title(*polarity).to_string(),
            ];
            row.extend(labels.iter().map(|l| yes_no(l == polarity).to_string()));
            rows.push(row);
        }
    }
    let mut agreement = vec!["Agreement per document (%)".to_string(), String::new()];
    agreement.extend(report.per_document_percent.iter().map(u32::to_string));
    rows.push(agreement);

    let columns = rows[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<width$}", width = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let _ = writeln!(out, "{AVERAGE_LABEL} {}", report.average_percent);
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    lexicons: &'a [String],
    documents: &'a [String],
    matrix: Vec<Vec<&'static str>>,
    per_document_percent: &'a [u32],
    percent_total: u64,
    average_percent: String,
}

pub fn render_json(report: &AgreementReport) -> Result<String, Error> {
    let doc = JsonReport {
        lexicons: &report.lexicon_names,
        documents: &report.document_ids,
        matrix: report
            .matrix
            .iter()
            .map(|row| row.iter().map(|p| p.as_str()).collect())
            .collect(),
        per_document_percent: &report.per_document_percent,
        percent_total: report.percent_total(),
        average_percent: report.average_percent.to_string(),
    };
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Render(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Matrix export: a header of document ids, one row per lexicon, then the
/// per-document agreement and the average.
pub fn render_csv(report: &AgreementReport) -> Result<String, Error> {
    let render = |e: csv::Error| Error::Render(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let mut header = vec!["lexicon"];
    header.extend(report.document_ids.iter().map(String::as_str));
    w.write_record(&header).map_err(render)?;
    for (name, labels) in report.lexicon_names.iter().zip(&report.matrix) {
        let mut row = vec![name.as_str()];
        row.extend(labels.iter().map(|p| p.as_str()));
        w.write_record(&row).map_err(render)?;
    }
    let percents: Vec<String> = report
        .per_document_percent
        .iter()
        .map(u32::to_string)
        .collect();
    let mut row = vec!["agreement_percent"];
    row.extend(percents.iter().map(String::as_str));
    w.write_record(&row).map_err(render)?;
    w.write_record(["average_percent", &report.average_percent.to_string()])
        .map_err(render)?;
    let bytes = w.into_inner().map_err(|e| Error::Render(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Render(e.to_string()))
}

/// Per-document scores as TSV, in the order given.
pub fn render_scores(results: &[ScoreResult]) -> Result<String, Error> {
    let render = |e: csv::Error| Error::Render(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .delimiter(b'\t')
        .from_writer(Vec::new());
    w.write_record(["id", "positive", "negative", "valence_sum", "polarity"])
        .map_err(render)?;
    for r in results {
        w.write_record([
            r.document_id.as_str(),
            &r.positive_count.to_string(),
            &r.negative_count.to_string(),
            &r.valence_sum.to_string(),
            r.polarity.as_str(),
        ])
        .map_err(render)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Render(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Render(e.to_string()))
}

pub fn render_build_report(lexicon: &Lexicon, report: &BuildReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lexicon: {}", lexicon.name());
    let _ = writeln!(out, "language: {}", lexicon.language());
    let _ = writeln!(out, "entries: {}", lexicon.len());
    let _ = writeln!(out, "auto-translated entries: {}", report.translated_count);

    let _ = writeln!(
        out,
        "unmapped source terms: {}",
        report.unmapped_source_terms.len()
    );
    for term in &report.unmapped_source_terms {
        let _ = writeln!(out, "  {term}");
    }
    let _ = writeln!(out, "conflicts dropped: {}", report.conflicts_dropped.len());
    for (term, polarities) in &report.conflicts_dropped {
        let labels: Vec<&str> = polarities.iter().map(|p| p.as_str()).collect();
        let _ = writeln!(out, "  {term}\t{}", labels.join(","));
    }
    let _ = writeln!(out, "manual overrides: {}", report.manual_overrides.len());
    for term in &report.manual_overrides {
        let _ = writeln!(out, "  {term}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Polarity::*;

    fn sample() -> AgreementReport {
        AgreementReport::from_matrix(
            vec!["liu".into(), "nrc".into(), "ig".into()],
            vec!["01".into(), "02".into()],
            vec![
                vec![Negative, Positive],
                vec![Negative, Positive],
                vec![Negative, Negative],
            ],
        )
        .unwrap()
    }

    #[test]
    fn table_layout() {
        let table = render_table(&sample());
        let expected = "\
Lexicon                     Polarity  01   02
liu                         Positive  No   Yes
                            Negative  Yes  No
nrc                         Positive  No   Yes
                            Negative  Yes  No
ig                          Positive  No   No
                            Negative  Yes  Yes
Agreement per document (%)            100  66
Average polarity agreement (%): 83.00
";
        assert_eq!(table, expected);
    }

    #[test]
    fn table_neutral_row_only_when_needed() {
        let report = AgreementReport::from_matrix(
            vec!["a".into(), "b".into()],
            vec!["x".into()],
            vec![vec![Neutral], vec![Positive]],
        )
        .unwrap();
        assert!(render_table(&report).contains("Neutral"));
        assert!(!render_table(&sample()).contains("Neutral"));
    }

    #[test]
    fn csv_and_json() {
        let csv = render_csv(&sample()).unwrap();
        assert_eq!(
            csv,
            "lexicon,01,02\nliu,negative,positive\nnrc,negative,positive\nig,negative,negative\nagreement_percent,100,66\naverage_percent,83.00\n"
        );
        let json: serde_json::Value =
            serde_json::from_str(&render_json(&sample()).unwrap()).unwrap();
        assert_eq!(json["average_percent"], "83.00");
        assert_eq!(json["percent_total"], 166);
        assert_eq!(json["matrix"][2][1], "negative");
    }
}
