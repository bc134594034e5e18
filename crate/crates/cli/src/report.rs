use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Tsv,
}

/// Output of one command: free-form lines for people, a table for machines.
#[derive(Debug, Clone, Default)]
pub struct Report {
    lines: Vec<String>,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), ..Self::default() }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn row<I, T>(&mut self, cells: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let row: Vec<String> = cells.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row);
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Human => {
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
            }
            Format::Tsv => {
                for row in std::iter::once(&self.headers).chain(&self.rows) {
                    // tabs and newlines inside a cell would break the framing
                    let cells: Vec<String> = row.iter().map(|c| c.replace(['\t', '\n'], " ")).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
            }
        }
        out
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn yes_no(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_has_header_first() {
        let mut r = Report::new(&["a", "b"]);
        r.line("hello").row(["1", "x\ty"]);
        assert_eq!(r.render(Format::Tsv), "a\tb\n1\tx y\n");
        assert_eq!(r.render(Format::Human), "hello\n");
    }
}
