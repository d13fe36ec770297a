//! `cvn`: translation lengths, stretch factors, Whitehead tests, and
//! pull-equivalence checks on tree files.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 bounded-search result
//! (stretch lower bounds between boundary trees, which certify a lower bound
//! rather than the exact supremum).

use clap::{Parser, Subcommand, ValueEnum};
use cvn_core::boundary::{self, SpectrumClass};
use cvn_core::rational::{to_decimal_string, ExtRational, Rational};
use cvn_core::stretch::{self, StretchReport};
use cvn_core::tree::{TreeModel, TreeRegistry};
use cvn_core::whitehead::{self, Verdict, WhiteheadMove};
use cvn_core::words::{enumerate_cyclic_words, Word};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cvn",
    version,
    about = "Exact computations on marked metric graphs and boundary trees of outer space"
)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Render rationals as 12-significant-digit decimals.
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translation length of a word in a tree.
    Translen { tree: PathBuf, word: String },
    /// Stretch factor between two trees (exact when the source is a marked
    /// graph; bounded search via --brute otherwise).
    Stretch {
        from: PathBuf,
        to: PathBuf,
        /// Max word length for the bounded search (boundary-tree sources).
        #[arg(long)]
        brute: Option<usize>,
    },
    /// Asymmetric Lipschitz distance between two marked graphs.
    Distance { from: PathBuf, to: PathBuf },
    /// Candidate loops of a marked graph, or candidate shapes of a boundary tree.
    Candidates { tree: PathBuf },
    /// Whitehead test: primitivity or simplicity of a word.
    Whitehead {
        #[arg(value_enum)]
        test: WhiteheadTest,
        word: String,
        #[arg(long)]
        rank: usize,
    },
    /// Special-pull equivalence and bounded spectrum comparison of two
    /// boundary trees.
    PullEquiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "primitive")]
        class: ClassArg,
    },
    /// Table of translation lengths over conjugacy classes.
    Spectrum {
        tree: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        primitive_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WhiteheadTest {
    Primitive,
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Primitive,
    Simple,
    All,
}

impl ClassArg {
    fn class(self) -> SpectrumClass {
        match self {
            ClassArg::Primitive => SpectrumClass::Primitive,
            ClassArg::Simple => SpectrumClass::Simple,
            ClassArg::All => SpectrumClass::All,
        }
    }
}

struct Render {
    json: bool,
    decimal: bool,
}

impl Render {
    fn rational(&self, q: &Rational) -> String {
        if self.decimal {
            to_decimal_string(q)
        } else {
            q.to_string()
        }
    }

    fn ext(&self, q: &ExtRational) -> String {
        match q.as_finite() {
            Some(v) => self.rational(v),
            None => "inf".to_owned(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs; everything else is a
            // usage error (exit 1 per the interface contract).
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let render = Render {
        json: cli.json,
        decimal: cli.decimal,
    };
    match run(cli.command, &render) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_tree(path: &Path) -> anyhow::Result<Box<dyn TreeModel>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    TreeRegistry::standard()
        .parse_str(&text)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

fn parse_word(s: &str, rank: usize) -> anyhow::Result<Word> {
    Word::parse(s, rank).map_err(|e| anyhow::anyhow!("word: {e}"))
}

fn run(command: Command, render: &Render) -> anyhow::Result<ExitCode> {
    match command {
        Command::Translen { tree, word } => {
            let tree = load_tree(&tree)?;
            let word = parse_word(&word, tree.rank())?;
            let length = tree.translation_length(&word);
            if render.json {
                print_json(&TranslenOut {
                    tree_type: tree.type_name().to_owned(),
                    word: word.to_string(),
                    length: length.to_string(),
                })?;
            } else {
                println!("{}", render.rational(&length));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stretch { from, to, brute } => {
            let from_tree = load_tree(&from)?;
            let to_tree = load_tree(&to)?;
            anyhow::ensure!(
                from_tree.rank() == to_tree.rank(),
                "rank mismatch: {} vs {}",
                from_tree.rank(),
                to_tree.rank()
            );
            if let Some(graph) = from_tree.as_marked_graph() {
                // Exact via candidates; --brute switches to the bounded
                // word-enumeration oracle instead.
                if let Some(max_len) = brute {
                    anyhow::ensure!(max_len >= 1, "--brute: length bound must be at least 1");
                    let (lambda, best) = stretch::max_ratio_over_classes(
                        graph.rank(),
                        max_len,
                        |w| graph.translation_length(w),
                        |w| to_tree.translation_length(w),
                    );
                    emit_stretch(&report_from_best(lambda, best), true, render)?;
                    return Ok(ExitCode::from(2));
                }
                let report = stretch::stretch_factor_into(graph, |w| to_tree.translation_length(w));
                emit_stretch(&report, false, render)?;
                return Ok(ExitCode::SUCCESS);
            }
            let source = from_tree
                .as_pulled_tree()
                .expect("tree kinds are marked graphs or pulled trees");
            let max_len = brute.ok_or_else(|| {
                anyhow::anyhow!(
                    "--brute LENGTH is required when the source is a boundary tree \
                     (only a certified lower bound can be computed)"
                )
            })?;
            anyhow::ensure!(max_len >= 1, "--brute: length bound must be at least 1");
            let report = match to_tree.as_pulled_tree() {
                Some(target) => boundary::stretch_lower_bound(source, target, max_len)?,
                None => {
                    let (lambda, best) = stretch::max_ratio_over_classes(
                        source.rank(),
                        max_len,
                        |w| source.translation_length(w),
                        |w| to_tree.translation_length(w),
                    );
                    report_from_best(lambda, best)
                }
            };
            emit_stretch(&report, true, render)?;
            Ok(ExitCode::from(2))
        }
        Command::Distance { from, to } => {
            let from_tree = load_tree(&from)?;
            let to_tree = load_tree(&to)?;
            let (Some(a), Some(b)) = (from_tree.as_marked_graph(), to_tree.as_marked_graph())
            else {
                anyhow::bail!("distance requires two marked graphs");
            };
            let report =
                stretch::normalized_stretch(a, b).map_err(|e| anyhow::anyhow!(e.to_string()))?;
            let log = report.lambda.to_f64().ln();
            if render.json {
                print_json(&DistanceOut {
                    lambda: report.lambda.to_string(),
                    log,
                })?;
            } else {
                println!("lambda = {}", render.ext(&report.lambda));
                println!("d = log(lambda) = {log:.12}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Candidates { tree } => {
            let tree = load_tree(&tree)?;
            if let Some(graph) = tree.as_marked_graph() {
                let candidates = stretch::enumerate_candidates(graph);
                if render.json {
                    let rows: Vec<CandidateOut> = candidates
                        .iter()
                        .map(|c| CandidateOut {
                            word: c.word.to_string(),
                            shape: c.shape.as_str().to_owned(),
                            length: graph.path_length(&c.edge_path).to_string(),
                        })
                        .collect();
                    print_json(&CandidatesOut { candidates: rows })?;
                } else {
                    let mut table = Table::new(vec!["word", "shape", "length"]);
                    for c in &candidates {
                        table.row(vec![
                            c.word.to_string(),
                            c.shape.as_str().to_owned(),
                            render.rational(&graph.path_length(&c.edge_path)),
                        ]);
                    }
                    table.print();
                }
            } else {
                let shapes = boundary::enumerate_candidates_boundary(
                    tree.as_pulled_tree().expect("boundary tree"),
                );
                if render.json {
                    print_json(&ShapesOut {
                        shapes: shapes.iter().map(|s| s.as_str().to_owned()).collect(),
                    })?;
                } else {
                    for s in shapes {
                        println!("{}", s.as_str());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Whitehead { test, word, rank } => {
            anyhow::ensure!(rank >= 1, "--rank must be at least 1");
            let word = parse_word(&word, rank)?;
            let cert = whitehead::classify(&word, rank)?;
            let verdict = match test {
                WhiteheadTest::Primitive => cert.verdict == Verdict::Primitive,
                WhiteheadTest::Simple => cert.verdict != Verdict::Nonsimple,
            };
            let test_name = match test {
                WhiteheadTest::Primitive => "primitive",
                WhiteheadTest::Simple => "simple",
            };
            if render.json {
                print_json(&WhiteheadOut {
                    test: test_name.to_owned(),
                    verdict,
                    classification: cert.verdict.as_str().to_owned(),
                    moves: cert.moves.iter().map(render_move).collect(),
                    final_word: cert.final_word.to_string(),
                })?;
            } else {
                println!("{test_name}: {verdict}");
                println!("classification: {}", cert.verdict.as_str());
                for (i, m) in cert.moves.iter().enumerate() {
                    println!("move {}: {}", i + 1, render_move(m));
                }
                println!("final word: {}", cert.final_word);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::PullEquiv {
            left,
            right,
            max_len,
            class,
        } => {
            let left_tree = load_tree(&left)?;
            let right_tree = load_tree(&right)?;
            let (Some(a), Some(b)) = (left_tree.as_pulled_tree(), right_tree.as_pulled_tree())
            else {
                anyhow::bail!("pull-equiv requires two boundary (pulled_tree) files");
            };
            let special = boundary::special_pull_equivalent(a, b)?;
            let spectrum = boundary::spectrum_compare(a, b, class.class(), max_len)?;
            if render.json {
                print_json(&PullEquivOut {
                    special_pull_equivalent: special.verdict,
                    spectrum_class: spectrum.relation.as_str().to_owned(),
                    spectrum_equal: spectrum.verdict,
                    max_len_checked: spectrum.max_len_checked,
                    witness: spectrum.witness.as_ref().map(|w| w.to_string()),
                })?;
            } else {
                println!("special_pull_equivalent: {}", special.verdict);
                println!(
                    "spectrum({}, L = {}): {}",
                    spectrum.relation.as_str(),
                    spectrum.max_len_checked,
                    if spectrum.verdict {
                        "equal"
                    } else {
                        "different"
                    }
                );
                if let Some(w) = &spectrum.witness {
                    let word = w.to_word();
                    println!(
                        "witness: {} ({} vs {})",
                        w,
                        render.rational(&a.translation_length(&word)),
                        render.rational(&b.translation_length(&word)),
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum {
            tree,
            max_len,
            primitive_only,
        } => {
            let tree = load_tree(&tree)?;
            let rank = tree.rank();
            let mut rows: Vec<SpectrumRow> = Vec::new();
            for c in enumerate_cyclic_words(rank, max_len) {
                if primitive_only && !whitehead::is_primitive(&c.to_word(), rank)? {
                    continue;
                }
                rows.push(SpectrumRow {
                    word: c.to_string(),
                    length: tree.translation_length(&c.to_word()).to_string(),
                });
            }
            if render.json {
                print_json(&SpectrumOut { rows })?;
            } else {
                let mut table = Table::new(vec!["word", "length"]);
                for r in &rows {
                    let length = if render.decimal {
                        to_decimal_string(&cvn_core::rational::parse_rational(&r.length).unwrap())
                    } else {
                        r.length.clone()
                    };
                    table.row(vec![r.word.clone(), length]);
                }
                table.print();
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn report_from_best(
    lambda: ExtRational,
    best: Option<(cvn_core::words::CyclicWord, Rational, Rational)>,
) -> StretchReport {
    use cvn_core::stretch::CandidateRatio;
    let (witness, table) = match best {
        Some((word, len_from, len_to)) => {
            let ratio = ExtRational::ratio(&len_to, &len_from);
            (
                Some(word.clone()),
                vec![CandidateRatio {
                    word,
                    shape: None,
                    len_from,
                    len_to,
                    ratio,
                }],
            )
        }
        None => (None, Vec::new()),
    };
    StretchReport {
        lambda,
        witness,
        table,
    }
}

fn render_move(m: &WhiteheadMove) -> String {
    match m {
        WhiteheadMove::Relabel { images } => {
            let parts: Vec<String> = images
                .iter()
                .enumerate()
                .map(|(i, l)| format!("{}->{}", cvn_core::words::Letter::generator(i + 1), l))
                .collect();
            format!("relabel({})", parts.join(", "))
        }
        WhiteheadMove::TypeII { multiplier, set } => {
            let set: Vec<String> = set.iter().map(|l| l.to_string()).collect();
            format!("type2(multiplier={multiplier}, set={{{}}})", set.join(", "))
        }
    }
}

fn emit_stretch(report: &StretchReport, lower_bound: bool, render: &Render) -> anyhow::Result<()> {
    if render.json {
        let rows: Vec<StretchRowOut> = report
            .table
            .iter()
            .map(|r| StretchRowOut {
                word: r.word.to_string(),
                shape: r.shape.map(|s| s.as_str().to_owned()),
                len_from: r.len_from.to_string(),
                len_to: r.len_to.to_string(),
                ratio: r.ratio.to_string(),
            })
            .collect();
        print_json(&StretchOut {
            lambda: report.lambda.to_string(),
            witness: report.witness.as_ref().map(|w| w.to_string()),
            lower_bound,
            table: rows,
        })?;
        return Ok(());
    }
    if !report.table.is_empty() {
        let mut table = Table::new(vec!["word", "shape", "len_from", "len_to", "ratio"]);
        for r in &report.table {
            table.row(vec![
                r.word.to_string(),
                r.shape.map(|s| s.as_str()).unwrap_or("-").to_owned(),
                render.rational(&r.len_from),
                render.rational(&r.len_to),
                render.ext(&r.ratio),
            ]);
        }
        table.print();
    }
    let label = if lower_bound {
        "lambda >= "
    } else {
        "lambda = "
    };
    println!("{label}{}", render.ext(&report.lambda));
    if let Some(w) = &report.witness {
        println!("witness: {w}");
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

// Machine-readable documents. Deserialize is derived so that emitted output
// re-parses into the same structure (byte-identical re-rendering).

#[derive(Serialize, Deserialize)]
struct TranslenOut {
    tree_type: String,
    word: String,
    length: String,
}

#[derive(Serialize, Deserialize)]
struct StretchOut {
    lambda: String,
    witness: Option<String>,
    lower_bound: bool,
    table: Vec<StretchRowOut>,
}

#[derive(Serialize, Deserialize)]
struct StretchRowOut {
    word: String,
    shape: Option<String>,
    len_from: String,
    len_to: String,
    ratio: String,
}

#[derive(Serialize, Deserialize)]
struct DistanceOut {
    lambda: String,
    log: f64,
}

#[derive(Serialize, Deserialize)]
struct CandidatesOut {
    candidates: Vec<CandidateOut>,
}

#[derive(Serialize, Deserialize)]
struct CandidateOut {
    word: String,
    shape: String,
    length: String,
}

#[derive(Serialize, Deserialize)]
struct ShapesOut {
    shapes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct WhiteheadOut {
    test: String,
    verdict: bool,
    classification: String,
    moves: Vec<String>,
    final_word: String,
}

#[derive(Serialize, Deserialize)]
struct PullEquivOut {
    special_pull_equivalent: bool,
    spectrum_class: String,
    spectrum_equal: bool,
    max_len_checked: usize,
    witness: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumOut {
    rows: Vec<SpectrumRow>,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRow {
    word: String,
    length: String,
}

/// Minimal fixed-width table rendering.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Table {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    fn row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn print(&self) {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: Vec<String>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            println!("{}", padded.join("  ").trim_end());
        };
        line(self.header.iter().map(|h| h.to_string()).collect());
        line(widths.iter().map(|w| "-".repeat(*w)).collect());
        for row in &self.rows {
            line(row.clone());
        }
    }
}
