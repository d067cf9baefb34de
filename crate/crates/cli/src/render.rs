use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
    Text,
}

/// Header plus rows of already-formatted cells.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            title: None,
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn titled(mut self, title: &str) -> Self {
        self.title = Some(title.to_string());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(&format!("# {t}\n"));
        }
        out.push_str(&csv_line(&self.headers));
        for r in &self.rows {
            out.push_str(&csv_line(r));
        }
        out
    }

    fn md(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(&format!("### {t}\n\n"));
        }
        out.push_str(&format!("| {} |\n", self.headers.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(self.headers.len())));
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }
}

fn csv_line(cells: &[String]) -> String {
    let quoted: Vec<String> = cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}

/// Everything a command produces, in each output shape.
pub struct Document {
    pub json: Value,
    pub tables: Vec<Table>,
    pub text: String,
}

impl Document {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => join_sections(self.tables.iter().map(Table::csv)),
            Format::Md => join_sections(self.tables.iter().map(Table::md)),
            Format::Text => self.text.clone(),
        }
    }
}

fn join_sections(parts: impl Iterator<Item = String>) -> String {
    parts.collect::<Vec<_>>().join("\n")
}

/// `key: value` lines, aligned.
pub fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

/// A one-row table of the same pairs.
pub fn record_table(pairs: &[(&str, String)]) -> Table {
    let mut t = Table::new(&pairs.iter().map(|(k, _)| *k).collect::<Vec<_>>());
    t.push(pairs.iter().map(|(_, v)| v.clone()).collect());
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_only_when_needed() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["x,y".into(), "z".into()]);
        let d = Document {
            json: Value::Null,
            tables: vec![t],
            text: String::new(),
        };
        assert_eq!(d.render(Format::Csv), "a,b\n\"x,y\",z\n");
        assert_eq!(d.render(Format::Md), "| a | b |\n|---|---|\n| x,y | z |\n");
    }

    #[test]
    fn key_values_align() {
        let s = key_values(&[("a", "1".into()), ("long", "2".into())]);
        assert_eq!(s, "a     1\nlong  2\n");
    }
}
