//! Rendering of the report envelope as JSON, an aligned table or CSV.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;
use trunclab::Ceilings;

use crate::args::Format;
use crate::commands::Output;

#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub schema_version: u32,
    pub subcommand: &'static str,
    pub params: Value,
    pub format: Format,
    pub seed: u64,
    pub ceilings: Ceilings,
    pub strict_def: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    config: &'a RunConfig,
    result: &'a Value,
}

pub fn render(config: &RunConfig, out: &Output, w: &mut impl Write) -> io::Result<()> {
    match config.format {
        Format::Json => {
            let env = Envelope { config, result: &out.result };
            serde_json::to_writer_pretty(&mut *w, &env)?;
            writeln!(w)
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(&out.columns)?;
            for row in &out.rows {
                csv.write_record(row)?;
            }
            csv.flush()
        }
        Format::Table => table(config, out, w),
    }
}

fn table(config: &RunConfig, out: &Output, w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "# trunclab {} (schema {})", config.subcommand, config.schema_version)?;
    writeln!(w, "# params: {}", config.params)?;
    writeln!(
        w,
        "# seed: {}  scan ceiling: {}  sieve ceiling: {}  node budget: {}  strict_def: {}",
        config.seed,
        config.ceilings.scan,
        config.ceilings.sieve,
        config.ceilings.node_budget,
        config.strict_def
    )?;
    if !out.complete {
        writeln!(w, "# budget exhausted: results are partial")?;
    }
    let mut widths: Vec<usize> = out.columns.iter().map(|c| c.chars().count()).collect();
    for row in &out.rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &width)| format!("{c:<width$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(w, "{}", line(&mut out.columns.iter().copied()))?;
    let rules: Vec<String> = widths.iter().map(|&n| "-".repeat(n)).collect();
    writeln!(w, "{}", line(&mut rules.iter().map(String::as_str)))?;
    for row in &out.rows {
        writeln!(w, "{}", line(&mut row.iter().map(String::as_str)))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample(format: Format) -> String {
        let config = RunConfig {
            schema_version: 1,
            subcommand: "max-scan",
            params: json!({ "digits": 2 }),
            format,
            seed: 0,
            ceilings: Ceilings::default(),
            strict_def: false,
        };
        let out = Output {
            result: json!({ "max": 3 }),
            columns: vec!["max", "witness"],
            rows: vec![vec!["3".into(), "[1,2]".into()], vec!["3".into(), "[2,10]".into()]],
            complete: true,
        };
        let mut buf = Vec::new();
        render(&config, &out, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_quotes_lists() {
        assert_eq!(sample(Format::Csv), "max,witness\n3,\"[1,2]\"\n3,\"[2,10]\"\n");
    }

    #[test]
    fn table_columns_align() {
        let text = sample(Format::Table);
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body, ["max  witness", "---  -------", "3    [1,2]", "3    [2,10]"]);
    }

    #[test]
    fn json_envelope() {
        let v: Value = serde_json::from_str(&sample(Format::Json)).unwrap();
        assert_eq!(v["config"]["subcommand"], "max-scan");
        assert_eq!(v["result"]["max"], 3);
    }
}
