//! Text, CSV, JSON and LaTeX emitters for elements and transition matrices.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::composition::{all_compositions, Composition};
use crate::error::{Error, Result};
use crate::nsym::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

/// `c1*x1 + c2*x2 − …`, with unit coefficients suppressed and compound ones parenthesised.
pub(crate) fn join_terms<'a, S: Scalar + 'a>(terms: impl IntoIterator<Item = (&'a S, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        let neg = -c.clone();
        let (negative, body) =
            if !c.is_compound() && c.to_string().starts_with('-') { (true, neg) } else { (false, c.clone()) };
        let coef = if body.is_one() {
            String::new()
        } else if body.is_compound() {
            format!("({body})*")
        } else {
            format!("{body}*")
        };
        match (out.is_empty(), negative) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&coef);
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A transition matrix with composition labels on both axes.
#[derive(Clone, PartialEq)]
pub struct LabeledMatrix<S> {
    pub rows: Vec<Composition>,
    pub cols: Vec<Composition>,
    pub entries: Matrix<S>,
}

impl<S: Scalar> LabeledMatrix<S> {
    /// Square matrix on the compositions of `n` in phi order.
    pub fn square(n: usize, entries: Matrix<S>) -> Result<Self> {
        let labels = all_compositions(n);
        if entries.rows() != labels.len() || entries.cols() != labels.len() {
            return Err(Error::SizeMismatch { left: labels.len(), right: entries.rows() });
        }
        Ok(LabeledMatrix { rows: labels.clone(), cols: labels, entries })
    }
}

impl<S: Scalar> std::fmt::Debug for LabeledMatrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// Parts written without separators, as in `112`; comma-separated once a part exceeds 9.
fn compact_label(a: &Composition) -> String {
    if a.parts().iter().all(|&p| p < 10) {
        a.parts().iter().map(ToString::to_string).collect()
    } else {
        a.to_string()
    }
}

/// LaTeX for a scalar printed in canonical text form: `q^2*t` becomes `q^{2}t`.
pub fn latex_scalar<S: Scalar>(c: &S) -> String {
    latex_text(&c.to_string())
}

#[derive(Serialize)]
struct JsonMatrix<'a, S> {
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<&'a S>>,
}

pub fn render_matrix<S: Scalar + Serialize>(m: &LabeledMatrix<S>, format: Format) -> Result<String> {
    let e = &m.entries;
    Ok(match format {
        Format::Text => {
            let mut cells: Vec<Vec<String>> =
                vec![std::iter::once(String::new()).chain(m.cols.iter().map(ToString::to_string)).collect()];
            for (r, a) in m.rows.iter().enumerate() {
                cells.push(std::iter::once(a.to_string()).chain(e.row(r).iter().map(ToString::to_string)).collect());
            }
            let widths: Vec<usize> = (0..cells[0].len())
                .map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for row in &cells {
                let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = std::iter::once("alpha".to_string()).chain(m.cols.iter().map(ToString::to_string));
            w.write_record(header).map_err(|err| Error::Parse(err.to_string()))?;
            for (r, a) in m.rows.iter().enumerate() {
                let rec = std::iter::once(a.to_string()).chain(e.row(r).iter().map(ToString::to_string));
                w.write_record(rec).map_err(|err| Error::Parse(err.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|err| Error::Parse(err.to_string()))?)
                .map_err(|err| Error::Parse(err.to_string()))?
        }
        Format::Json => {
            let j = JsonMatrix {
                rows: m.rows.iter().map(ToString::to_string).collect(),
                cols: m.cols.iter().map(ToString::to_string).collect(),
                entries: (0..e.rows()).map(|r| e.row(r).iter().collect()).collect(),
            };
            serde_json::to_string_pretty(&j).map_err(|err| Error::Parse(err.to_string()))? + "\n"
        }
        Format::Latex => {
            let mut out = String::new();
            let _ = writeln!(out, "\\left[\\begin{{array}}{{l|{}}}", "c".repeat(e.cols()));
            let lines: Vec<String> = m
                .rows
                .iter()
                .enumerate()
                .map(|(r, a)| {
                    let cells: Vec<String> = e.row(r).iter().map(latex_scalar).collect();
                    format!("{}&{}", compact_label(a), cells.join("&"))
                })
                .collect();
            out.push_str(&lines.join("\\\\\n\\noalign{\\medskip}"));
            out.push_str("\n\\end{array}\\right]\n");
            out
        }
    })
}

/// One element in the requested format.
pub fn render_element<X: std::fmt::Display + Serialize>(x: &X, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text | Format::Csv => format!("{x}\n"),
        Format::Json => serde_json::to_string_pretty(x).map_err(|err| Error::Parse(err.to_string()))? + "\n",
        Format::Latex => {
            format!("{}\n", latex_text(&x.to_string()))
        }
    })
}

fn latex_text(text: &str) -> String {
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '*' => {}
            '^' => {
                let mut exp = String::new();
                while let Some(&d) = chars.peek() {
                    if d == '-' && exp.is_empty() || d.is_ascii_digit() {
                        exp.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let _ = write!(out, "^{{{exp}}}");
            }
            _ => out.push(ch),
        }
    }
    out
}
