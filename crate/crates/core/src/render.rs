//! CSV, Markdown and LaTeX renderings of result tables.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::encoding::{TableArtifact, TableColumn, TableRow, TABLE_HEADER};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
    Tex,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "md" => Ok(OutputFormat::Markdown),
            "tex" => Ok(OutputFormat::Tex),
            _ => Err(Error::Name(s.to_string())),
        }
    }
}

/// Renders a header and rows of already-formatted cells.
///
/// `tex_rule` is the LaTeX column specification, e.g. `|l|l|`.
pub fn render_rows(header: &[&str], rows: &[Vec<String>], format: OutputFormat, tex_rule: &str) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        OutputFormat::Markdown => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}|", vec!["---"; header.len()].join("|"));
            for row in rows {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
        OutputFormat::Tex => {
            let _ = writeln!(out, "\\begin{{tabular}}{{{tex_rule}}} \\hline");
            let _ = writeln!(out, "{} \\\\ \\hline", header.join(" & "));
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| format!("${c}$")).collect();
                let _ = writeln!(out, "{} \\\\ \\hline", cells.join(" & "));
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    out
}

/// Column rule of the appendix tables: `n`, then the `f` block, then the `f^{-1}` block.
pub const APPENDIX_TEX_RULE: &str = "|l||l|l|l|l|l||l|l|l|l|l|";

/// A plain `|l|l|...|` rule for `columns` columns.
pub fn plain_tex_rule(columns: usize) -> String {
    format!("|{}", "l|".repeat(columns))
}

impl TableArtifact {
    pub fn render(&self, format: OutputFormat) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                std::iter::once(row.n.to_string())
                    .chain(row.cells.iter().map(BigInt::to_string))
                    .collect()
            })
            .collect();
        let header: Vec<&str> = match format {
            OutputFormat::Tex => std::iter::once("$n$")
                .chain(TableColumn::ALL.map(TableColumn::tex_header))
                .collect(),
            _ => TABLE_HEADER.split(',').collect(),
        };
        render_rows(&header, &rows, format, APPENDIX_TEX_RULE)
    }

    /// Parses the CSV rendering back into a table.
    pub fn from_csv(function: &str, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if header.join(",") != TABLE_HEADER {
            return Err(Error::Shape(format!("unexpected table header `{}`", header.join(","))));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let n = record[0]
                .parse::<usize>()
                .map_err(|_| Error::Shape(format!("bad row index `{}`", &record[0])))?;
            let cells = record
                .iter()
                .skip(1)
                .map(|s| s.parse::<BigInt>().map_err(|_| Error::Shape(format!("bad integer `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(TableRow { n, cells });
        }
        Ok(TableArtifact {
            function: function.to_string(),
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::experiment_table;

    #[test]
    fn csv_rendering_round_trips_byte_for_byte() {
        let table = experiment_table("double_factorial_odd", 12).unwrap();
        let csv = table.render(OutputFormat::Csv);
        assert!(csv.starts_with(TABLE_HEADER));
        assert!(!csv.contains('\r'));
        let parsed = TableArtifact::from_csv("double_factorial_odd", &csv).unwrap();
        assert_eq!(parsed, table);
        assert_eq!(parsed.render(OutputFormat::Csv), csv);
    }

    #[test]
    fn tex_mirrors_the_appendix_layout() {
        let tex = experiment_table("phi", 2).unwrap().render(OutputFormat::Tex);
        let expected = "\\begin{tabular}{|l||l|l|l|l|l||l|l|l|l|l|} \\hline\n\
$n$ & $f(n)$ & $c_1[f](n)$ & $c_2[f](n)$ & $c_3[f](n)$ & $c_4[f](n)$ & $f^{-1}(n)$ & $c_1[f^{-1}](n)$ & $c_2[f^{-1}](n)$ & $c_3[f^{-1}](n)$ & $c_4[f^{-1}](n)$ \\\\ \\hline\n\
$1$ & $1$ & $1$ & $1$ & $1$ & $1$ & $1$ & $1$ & $1$ & $1$ & $1$ \\\\ \\hline\n\
$2$ & $1$ & $2$ & $0$ & $0$ & $2$ & $-1$ & $0$ & $-2$ & $-2$ & $0$ \\\\ \\hline\n\
\\end{tabular}\n";
        assert_eq!(tex, expected);
    }

    #[test]
    fn markdown_has_a_separator_row() {
        let md = render_rows(&["a", "b"], &[vec!["1".into(), "2".into()]], OutputFormat::Markdown, "");
        assert_eq!(md, "| a | b |\n|---|---|\n| 1 | 2 |\n");
        assert_eq!(plain_tex_rule(3), "|l|l|l|");
    }

    #[test]
    fn formats_parse() {
        assert_eq!("md".parse::<OutputFormat>().unwrap(), OutputFormat::Markdown);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
