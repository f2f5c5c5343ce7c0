//! Plain-text table rendering.

use clap::ValueEnum;
use skeingram::gram::GramMatrix;
use skeingram::verify::{VerificationReport, Witness};

use crate::DetOutput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Rows of cells, rendered with left-aligned padded columns.
#[derive(Debug, Default)]
pub struct Table {
    rows: Vec<Vec<String>>,
    /// Printed after the rows, outside the column layout.
    footer: Option<String>,
}

impl Table {
    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    fn kv(&mut self, key: &str, value: impl ToString) {
        self.row([key.to_string(), value.to_string()]);
    }

    pub fn render(&self) -> String {
        let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for r in &self.rows {
            let line: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        if let Some(f) = &self.footer {
            out.push_str(f);
            out.push('\n');
        }
        out
    }
}

pub fn gram_table(g: &GramMatrix, duration_ms: u64) -> Table {
    let mut t = Table::default();
    let side = g.side();
    t.row(["#".to_string(), "basis".to_string()].into_iter().chain((0..side).map(|j| j.to_string())));
    for (i, b) in g.basis().iter().enumerate() {
        t.row(
            [i.to_string(), b.to_string()]
                .into_iter()
                .chain((0..side).map(|j| g.entry(i, j).to_string())),
        );
    }
    t.footer = Some(format!("time: {duration_ms} ms"));
    t
}

pub fn det_table(out: &DetOutput) -> Table {
    let mut t = Table::default();
    t.kv("family", out.family);
    t.kv("n", out.n);
    t.kv("side", out.side);
    t.kv("mode", out.mode);
    if let Some(p) = out.prime {
        t.kv("prime", p);
    }
    if let Some(s) = out.seed {
        t.kv("seed", s);
    }
    if let Some(n) = out.terms {
        t.kv("terms", n);
    }
    if let Some(det) = &out.determinant {
        t.kv("determinant", det);
    }
    for e in &out.evaluations {
        let point: Vec<String> = e.point.iter().map(u64::to_string).collect();
        t.kv("value", format!("{} at ({})", e.value, point.join(", ")));
    }
    t.kv("time_ms", out.duration_ms);
    t
}

pub fn report_table(r: &VerificationReport) -> Table {
    let mut t = Table::default();
    t.kv("tag", &r.tag);
    t.kv("family", r.family);
    t.kv("n", r.n);
    t.kv("mode", r.mode);
    t.kv("verdict", format!("{:?}", r.verdict));
    if let Some(s) = r.seed {
        t.kv("seed", s);
    }
    if let Some(p) = r.prime {
        t.kv("prime", p);
    }
    match &r.witness {
        Witness::Quotient(q) => t.kv("quotient", q),
        Witness::Remainder {
            factor,
            divided,
            remainder,
        } => {
            t.kv("factor", factor);
            t.kv("divided", divided);
            t.kv("remainder_terms", remainder.len());
        }
        Witness::Counterexample { point, det, formula } => {
            t.kv("point", format!("{point:?}"));
            t.kv("det", det);
            t.kv("formula", formula);
        }
        Witness::Agreement {
            trials,
            per_trial_bound,
        } => {
            t.kv("trials", trials);
            t.kv("per_trial_bound", format!("{per_trial_bound:.3e}"));
        }
        Witness::Rank(rr) => {
            t.kv("substitution", &rr.substitution);
            t.kv("side", rr.side);
            t.kv("observed_rank", rr.observed_rank);
            t.kv("observed_nullity", rr.observed_nullity);
            t.kv("claimed_nullity", rr.claimed_nullity);
            t.kv("trials", rr.trials);
        }
    }
    t.kv("time_ms", r.duration_ms);
    t
}
