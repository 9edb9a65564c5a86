//! Report documents and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use stanley_core::algebra::{DepthReport, NumericOutcome};
use stanley_core::bounds::{BoundKind, BoundReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command's output. `input` is the canonical form of the ideal source.
#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub result: Output,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Output {
    Gen(GenDoc),
    Bounds(BoundsDoc),
    Sdepth(SdepthDoc),
    Partial(PartialDoc),
    Ass(AssDoc),
    BigSize(BigSizeDoc),
    Depth(DepthReport),
    Verify(VerifyDoc),
    Reproduce(ReproduceDoc),
}

#[derive(Clone, Debug, Serialize)]
pub struct GenDoc {
    pub n: usize,
    pub count: usize,
    pub canonical: String,
    pub generators: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundEntry {
    /// Published result the bound comes from.
    pub result: &'static str,
    #[serde(flatten)]
    pub report: BoundReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsDoc {
    pub lower: i64,
    pub upper: Option<i64>,
    pub reports: Vec<BoundEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalDoc {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeDoc {
    pub d: usize,
    pub feasible: bool,
    pub nodes: u64,
}

/// Exact Stanley depth with its witness. This is the cached document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdepthDoc {
    pub value: usize,
    pub upper_start: usize,
    pub witness: Vec<IntervalDoc>,
    pub decomposition: Vec<String>,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub probes: Vec<ProbeDoc>,
}

/// What was settled before a deadline expired.
#[derive(Clone, Debug, Serialize)]
pub struct PartialDoc {
    pub status: &'static str,
    pub best_feasible: usize,
    pub least_infeasible: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssDoc {
    pub method: &'static str,
    pub primes: Vec<String>,
    pub big_size: usize,
    pub decomposition_verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BigSizeDoc {
    pub primes: usize,
    pub big_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyDoc {
    pub family: String,
    pub big_size: Option<usize>,
    pub cited: Option<&'static str>,
    pub numeric: NumericOutcome,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceRow {
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub status: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproduceDoc {
    pub rows: Vec<ReproduceRow>,
    pub passed: bool,
}

impl Document {
    /// Process exit status implied by the document.
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Output::Partial(_) => 3,
            Output::Reproduce(r) if !r.passed => 1,
            Output::Verify(v) if v.status == "FAILED" => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(input) = &self.input {
            let _ = writeln!(s, "input: {input}");
        }
        match &self.result {
            Output::Gen(g) => {
                let _ = writeln!(s, "variables: {}\ngenerators ({}):", g.n, g.count);
                for x in &g.generators {
                    let _ = writeln!(s, "  {x}");
                }
                warnings_text(&mut s, &g.warnings);
            }
            Output::Bounds(b) => {
                match b.upper {
                    Some(u) => _ = writeln!(s, "sdepth in [{}, {}]", b.lower, u),
                    None => _ = writeln!(s, "sdepth >= {}", b.lower),
                }
                for e in &b.reports {
                    let r = &e.report;
                    let rel = match r.kind {
                        BoundKind::Upper => "<=",
                        BoundKind::Lower => ">=",
                    };
                    let _ = write!(s, "  {}: sdepth {rel} {}", e.result, r.integer_bound);
                    if r.kind == BoundKind::Upper {
                        let _ = write!(s, " (exact {})", r.exact_value);
                    }
                    if let (Some(a), Some(naive)) = (r.a, r.naive_comparison) {
                        let _ = write!(s, " [A = {a}, naive bound {naive}]");
                    }
                    s.push('\n');
                    warnings_text(&mut s, &r.warnings);
                }
            }
            Output::Sdepth(d) => {
                let _ = writeln!(s, "sdepth: {}", d.value);
                let _ = writeln!(s, "search: {} nodes, started at d = {}, {} ms", d.nodes, d.upper_start, d.elapsed_ms);
                let _ = writeln!(s, "Stanley decomposition ({} spaces):", d.decomposition.len());
                for x in &d.decomposition {
                    let _ = writeln!(s, "  {x}");
                }
            }
            Output::Partial(p) => {
                let _ = writeln!(s, "deadline reached: sdepth >= {}", p.best_feasible);
                if let Some(d) = p.least_infeasible {
                    let _ = writeln!(s, "no partition reaches {d}, so sdepth <= {}", d - 1);
                }
            }
            Output::Ass(a) => {
                let _ = writeln!(s, "associated primes ({}, {}):", a.primes.len(), a.method);
                for p in &a.primes {
                    let _ = writeln!(s, "  {p}");
                }
                let _ = writeln!(s, "big size: {}", a.big_size);
                let _ = writeln!(s, "intersection equals the ideal: {}", a.decomposition_verified);
            }
            Output::BigSize(b) => {
                let _ = writeln!(s, "big size: {} ({} associated primes)", b.big_size, b.primes);
            }
            Output::Depth(d) => {
                let _ = writeln!(s, "depth S/I = {} over characteristic {}", d.depth_quotient, d.field_char);
                let _ = writeln!(s, "depth I = {}", d.depth_ideal);
                let _ = writeln!(s, "projective dimension of S/I = {}", d.projective_dimension);
            }
            Output::Verify(v) => {
                let _ = writeln!(s, "{}: {}", v.family, v.status);
                if let Some(t) = v.big_size {
                    let _ = writeln!(s, "big size: {t}");
                }
                if let Some(c) = v.cited {
                    let _ = writeln!(s, "cited: {c}");
                }
                match &v.numeric {
                    NumericOutcome::Checked(c) => {
                        let _ = writeln!(
                            s,
                            "numeric: sdepth {} vs depth {} (char {}): {}",
                            c.sdepth,
                            c.depth_ideal,
                            c.field_char,
                            if c.ok { "ok" } else { "violated" }
                        );
                    }
                    NumericOutcome::Skipped(_) => _ = writeln!(s, "numeric: skipped"),
                }
            }
            Output::Reproduce(r) => {
                let header = ["check", "expected", "computed", "status"];
                let rows: Vec<[&str; 4]> = r
                    .rows
                    .iter()
                    .map(|x| [x.check.as_str(), x.expected.as_str(), x.computed.as_str(), x.status])
                    .collect();
                let mut widths = header.map(str::len);
                for row in &rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.len());
                    }
                }
                for row in std::iter::once(&header).chain(&rows) {
                    let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    let _ = writeln!(s, "{}", cells.join("  ").trim_end());
                }
                let _ = writeln!(s, "{}", if r.passed { "all checks passed" } else { "MISMATCH" });
            }
        }
        s
    }

    fn csv(&self) -> String {
        let (header, rows) = self.table();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("in-memory write");
        for row in rows {
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    /// Column names and rows for CSV output. Column order is part of the interface.
    pub fn table(&self) -> (&'static [&'static str], Vec<Vec<String>>) {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        match &self.result {
            Output::Gen(g) => (
                &["index", "generator"],
                g.generators.iter().enumerate().map(|(i, x)| vec![(i + 1).to_string(), x.clone()]).collect(),
            ),
            Output::Bounds(b) => (
                &["source", "result", "kind", "exact", "floor", "a", "naive_comparison", "warnings"],
                b.reports
                    .iter()
                    .map(|e| {
                        let r = &e.report;
                        vec![
                            r.source.code().to_string(),
                            e.result.to_string(),
                            match r.kind {
                                BoundKind::Upper => "upper".into(),
                                BoundKind::Lower => "lower".into(),
                            },
                            r.exact_value.to_string(),
                            r.integer_bound.to_string(),
                            r.a.map(|a| a.to_string()).unwrap_or_default(),
                            r.naive_comparison.map(|a| a.to_string()).unwrap_or_default(),
                            r.warnings.join("; "),
                        ]
                    })
                    .collect(),
            ),
            Output::Sdepth(d) => (
                &["sdepth", "lower", "upper", "dimension"],
                d.witness
                    .iter()
                    .map(|iv| {
                        vec![
                            d.value.to_string(),
                            index_list(&iv.lower),
                            index_list(&iv.upper),
                            iv.upper.len().to_string(),
                        ]
                    })
                    .collect(),
            ),
            Output::Partial(p) => (
                &["status", "best_feasible", "least_infeasible"],
                vec![vec![p.status.to_string(), p.best_feasible.to_string(), opt(p.least_infeasible)]],
            ),
            Output::Ass(a) => (
                &["index", "prime", "method"],
                a.primes
                    .iter()
                    .enumerate()
                    .map(|(i, p)| vec![(i + 1).to_string(), p.clone(), a.method.into()])
                    .collect(),
            ),
            Output::BigSize(b) => (&["primes", "big_size"], vec![vec![b.primes.to_string(), b.big_size.to_string()]]),
            Output::Depth(d) => (
                &["field_char", "depth_quotient", "depth_ideal", "projective_dimension"],
                vec![vec![
                    d.field_char.to_string(),
                    d.depth_quotient.to_string(),
                    d.depth_ideal.to_string(),
                    d.projective_dimension.to_string(),
                ]],
            ),
            Output::Verify(v) => {
                let (sd, dep, ch, ok) = match &v.numeric {
                    NumericOutcome::Checked(c) => {
                        (c.sdepth.to_string(), c.depth_ideal.to_string(), c.field_char.to_string(), c.ok.to_string())
                    }
                    NumericOutcome::Skipped(_) => Default::default(),
                };
                (
                    &["family", "big_size", "cited", "sdepth", "depth_ideal", "field_char", "numeric_ok", "status"],
                    vec![vec![
                        v.family.clone(),
                        opt(v.big_size),
                        v.cited.unwrap_or_default().to_string(),
                        sd,
                        dep,
                        ch,
                        ok,
                        v.status.clone(),
                    ]],
                )
            }
            Output::Reproduce(r) => (
                &["check", "expected", "computed", "status"],
                r.rows
                    .iter()
                    .map(|x| vec![x.check.clone(), x.expected.clone(), x.computed.clone(), x.status.to_string()])
                    .collect(),
            ),
        }
    }
}

fn index_list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    parts.join(" ")
}

fn warnings_text(s: &mut String, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(s, "  warning: {w}");
    }
}
