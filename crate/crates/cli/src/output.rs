use std::str::FromStr;

use anyhow::{bail, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format '{other}' (csv or table)")),
        }
    }
}

/// Fixed three-decimal rendering; never prints a negative zero.
pub fn fixed3(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Renders a header and rows as CSV (LF endings) or as an aligned text table.
pub fn render(header: &[&str], rows: &[Vec<String>], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Table => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                if r.len() != widths.len() {
                    bail!("row has {} cells, header has {}", r.len(), widths.len());
                }
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .enumerate()
                    .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(header.to_vec());
            for r in rows {
                out += &line(r.iter().map(String::as_str).collect());
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_decimals() {
        assert_eq!(fixed3(0.1510), "0.151");
        assert_eq!(fixed3(-0.0001), "0.000");
        assert_eq!(fixed3(-0.0117), "-0.012");
        assert_eq!(fixed3(8.66658), "8.667");
    }

    #[test]
    fn table_and_csv() {
        let rows = vec![vec!["a".to_string(), "1.000".to_string()], vec!["long name".to_string(), "-2.500".to_string()]];
        let csv = render(&["name", "x"], &rows, Format::Csv).unwrap();
        assert_eq!(csv, "name,x\na,1.000\nlong name,-2.500\n");
        let table = render(&["name", "x"], &rows, Format::Table).unwrap();
        assert_eq!(table, "name            x\na           1.000\nlong name  -2.500\n");
    }
}
