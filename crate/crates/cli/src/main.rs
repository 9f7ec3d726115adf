use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partial_ybe::cycle::{
    are_isomorphic, decompose, derive_cycle_set, multipermutation_level, retract, verify_cycle_set,
    Multipermutation, DEFAULT_DECOMPOSE_LIMIT, DEFAULT_ISO_LIMIT,
};
use partial_ybe::monoid::{is_idempotent, pi_trace, psi, reconstruct, MonoidWord, StructureMonoid};
use partial_ybe::reversing::{
    check_left_distributivity, default_max_steps, oplus, reverse, Distributivity, ReversingOutcome,
};
use partial_ybe::solution::{
    self, example, save, save_string, verify, Axiom, AxiomReport, PartialSolution, VerifyOptions,
    EXAMPLE_NAMES,
};
use partial_ybe::thompson::{f_normal_form, f_words_equal, window_checks, FWord};
use partial_ybe::Error;
use serde_json::{json, Value};

/// Partial set-theoretic solutions of the Yang-Baxter equation.
///
/// Exit status: 0 when the property holds or the operation succeeds, 1 when
/// it fails or the result is undefined, 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "pybe", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Solution document (JSON); `-` reads standard input.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Built-in example: etingof4, squarefree3, trivial3, thompson.
    #[arg(long)]
    example: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Other {
    /// Second solution document.
    #[arg(long)]
    other_file: Option<PathBuf>,
    /// Second solution as a built-in example.
    #[arg(long)]
    other_example: Option<String>,
}

#[derive(Args)]
struct Window {
    /// Check indices below this bound (required for countable carriers).
    #[arg(long)]
    window: Option<u64>,
    /// Run the checkers in parallel; results are identical.
    #[arg(long)]
    parallel: bool,
}

impl Window {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            window: self.window,
            parallel: self.parallel,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AxiomArg {
    All,
    NonDegenerate,
    Involutive,
    Braided,
    SquareFree,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a partial solution.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "all")]
        axiom: AxiomArg,
        #[command(flatten)]
        window: Window,
    },
    /// Evaluate r(x, y).
    Apply {
        #[command(flatten)]
        source: Source,
        x: u64,
        y: u64,
    },
    /// Embed a word: σ_w, π(w) and idempotency; `--trace` adds the π trace.
    Embed {
        #[command(flatten)]
        source: Source,
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Decide equality of two words in the structure inverse monoid.
    Eq {
        #[command(flatten)]
        source: Source,
        w1: String,
        w2: String,
        #[command(flatten)]
        window: Window,
    },
    /// Compute g ⊕ h; `--left a` also checks a(g ⊕ h) = ag ⊕ ah.
    Oplus {
        #[command(flatten)]
        source: Source,
        g: String,
        h: String,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        max_steps: Option<usize>,
        #[command(flatten)]
        window: Window,
    },
    /// Right-reverse w1⁻¹w2 and print the diagram.
    Reverse {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Write the diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the derived cycle set x ⋆ y = σ_x⁻¹(y).
    Cycleset {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        window: Window,
    },
    /// Retract a finite solution.
    Retract {
        #[command(flatten)]
        source: Source,
    },
    /// Multipermutation level of a finite solution.
    Mpl {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 16)]
        max_iter: u32,
    },
    /// Split a finite solution into two invariant parts.
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_DECOMPOSE_LIMIT)]
        limit: usize,
    },
    /// Search for an isomorphism between two finite solutions.
    Iso {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        other: Other,
        #[arg(long, default_value_t = DEFAULT_ISO_LIMIT)]
        limit: usize,
    },
    /// Normal form of a word in Thompson's group F, e.g. "1 0" or "0 1 0^-1".
    ThompsonNf { word: String },
    /// Decide equality of two words in F.
    ThompsonEq { w1: String, w2: String },
    /// Relation set, irretractability and invariant parts on a window.
    ThompsonCheck {
        #[arg(long, required = true, value_parser = clap::value_parser!(u64).range(3..))]
        window: u64,
    },
    /// List the built-in examples, or print one as a document.
    Examples { name: Option<String> },
}

/// A failure that maps to exit status 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        match e {
            Error::MissingWindow => Usage("--window is required for countable carriers".into()),
            e => Usage(e.to_string()),
        }
    }
}

type Run = Result<bool, Usage>;

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, value: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("JSON values serialize")
            );
        } else {
            print!("{}", text());
        }
    }
}

fn load(source: &Source) -> Result<PartialSolution, Usage> {
    load_from(source.file.as_ref(), source.example.as_deref())
}

fn load_from(file: Option<&PathBuf>, name: Option<&str>) -> Result<PartialSolution, Usage> {
    match (file, name) {
        (Some(path), _) if path.as_os_str() == "-" => Ok(solution::load(io::stdin().lock())?),
        (Some(path), _) => {
            let f =
                File::open(path).map_err(|e| Usage(format!("--file {}: {e}", path.display())))?;
            Ok(solution::load(BufReader::new(f))?)
        }
        (None, Some(name)) => Ok(example(name)?),
        (None, None) => Err(Usage("one of --file or --example is required".into())),
    }
}

fn word(flag: &str, text: &str) -> Result<MonoidWord, Usage> {
    text.parse()
        .map_err(|e: Error| Usage(format!("{flag}: {e}")))
}

fn f_word(flag: &str, text: &str) -> Result<FWord, Usage> {
    text.parse()
        .map_err(|e: Error| Usage(format!("{flag}: {e}")))
}

/// Rejects letters outside a finite carrier.
fn check_letters(s: &PartialSolution, flag: &str, w: &MonoidWord) -> Result<(), Usage> {
    if let Some(size) = s.size() {
        if let Some(l) = w.letters().iter().find(|l| l.index >= size) {
            return Err(Usage(format!(
                "{flag}: letter {l} lies outside the carrier of size {size}"
            )));
        }
    }
    Ok(())
}

fn report_lines<A: std::fmt::Display>(reports: &[AxiomReport<A>]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = write!(
            out,
            "{:<14} {}",
            r.axiom.to_string(),
            if r.holds { "holds" } else { "fails" }
        );
        if let Some(w) = &r.witness {
            let tuple: Vec<String> = w.tuple.iter().map(u64::to_string).collect();
            let _ = write!(out, "  witness ({}) {}", tuple.join(","), w.equation);
        }
        if r.skipped > 0 {
            let _ = write!(out, "  skipped {}", r.skipped);
        }
        out.push('\n');
    }
    out
}

fn run(cli: Cli) -> Run {
    let out = Out { json: cli.json };
    match cli.command {
        Command::Verify {
            source,
            axiom,
            window,
        } => {
            let s = load(&source)?;
            let axioms = match axiom {
                AxiomArg::All => Axiom::ALL.to_vec(),
                AxiomArg::NonDegenerate => vec![Axiom::NonDegenerate],
                AxiomArg::Involutive => vec![Axiom::Involutive],
                AxiomArg::Braided => vec![Axiom::Braided],
                AxiomArg::SquareFree => vec![Axiom::SquareFree],
            };
            let opts = window.options();
            let reports = axioms
                .into_iter()
                .map(|a| verify(&s, a, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            out.emit(json!(reports), || report_lines(&reports));
            Ok(reports.iter().all(|r| r.holds))
        }
        Command::Apply { source, x, y } => {
            let s = load(&source)?;
            if let Some(size) = s.size() {
                if let Some(bad) = [x, y].into_iter().find(|&k| k >= size) {
                    return Err(Error::OutOfCarrier { index: bad, size }.into());
                }
            }
            let value = s.r_apply(x, y);
            out.emit(
                json!({ "x": x, "y": y, "defined": value.is_some(), "value": value }),
                || match value {
                    Some((a, b)) => format!("r({x},{y}) = ({a},{b})\n"),
                    None => format!("r({x},{y}) undefined\n"),
                },
            );
            Ok(value.is_some())
        }
        Command::Embed {
            source,
            word: text,
            trace,
        } => {
            let s = load(&source)?;
            let w = word("WORD", &text)?;
            check_letters(&s, "WORD", &w)?;
            let e = psi(&s, &w)?;
            let idem = is_idempotent(&s, &w)?;
            let t = pi_trace(&s, &w)?;
            let back = trace.then(|| reconstruct(&s, &t)).transpose()?;
            let mut value = json!({
                "word": w,
                "sigma": e.bij,
                "pi": e.fun,
                "idempotent": idem,
            });
            if trace {
                value["trace"] = json!(t.steps);
                value["reconstructed"] = json!(back);
            }
            out.emit(value, || {
                let mut text = format!(
                    "word        {w}\nsigma       {}\npi          {}\nidempotent  {idem}\n",
                    e.bij, e.fun
                );
                if let Some(back) = &back {
                    for (i, st) in t.steps.iter().enumerate() {
                        let _ = writeln!(
                            text,
                            "step {i}  {}  increment {}  prefix {}",
                            st.letter, st.increment, st.prefix_sigma
                        );
                    }
                    let _ = writeln!(text, "reconstructed  {back}");
                }
                text
            });
            Ok(true)
        }
        Command::Eq {
            source,
            w1,
            w2,
            window,
        } => {
            let s = load(&source)?;
            let (a, b) = (word("W1", &w1)?, word("W2", &w2)?);
            check_letters(&s, "W1", &a)?;
            check_letters(&s, "W2", &b)?;
            let m = StructureMonoid::with_options(&s, &window.options())?;
            let equal = m.words_equal(&a, &b)?;
            out.emit(json!({ "w1": a, "w2": b, "equal": equal }), || {
                format!("{a} {} {b}\n", if equal { "=" } else { "≠" })
            });
            Ok(equal)
        }
        Command::Oplus {
            source,
            g,
            h,
            left,
            max_steps,
            window,
        } => {
            let s = load(&source)?;
            let (g, h) = (word("G", &g)?, word("H", &h)?);
            let a = left.map(|t| word("--left", &t)).transpose()?;
            for (flag, w) in [("G", Some(&g)), ("H", Some(&h)), ("--left", a.as_ref())] {
                if let Some(w) = w {
                    check_letters(&s, flag, w)?;
                }
            }
            let m = StructureMonoid::with_options(&s, &window.options())?;
            let steps = |x: &MonoidWord, y: &MonoidWord| {
                max_steps.unwrap_or_else(|| default_max_steps(x, y))
            };
            let sum = oplus(&m, &g, &h, steps(&g, &h))?;
            let dist = match &a {
                Some(a) => Some(check_left_distributivity(
                    &m,
                    a,
                    &g,
                    &h,
                    steps(&a.concat(&g), &a.concat(&h)),
                )?),
                None => None,
            };
            out.emit(
                json!({ "g": g, "h": h, "sum": sum, "left_distributivity": dist }),
                || {
                    let mut text = match &sum {
                        Some(x) => format!("{g} ⊕ {h} = {x}\n"),
                        None => format!("{g} ⊕ {h} undefined\n"),
                    };
                    if let (Some(a), Some(d)) = (&a, dist) {
                        let _ = writeln!(text, "left distributivity by {a}: {d:?}");
                    }
                    text
                },
            );
            Ok(sum.is_some() && dist != Some(Distributivity::Fails))
        }
        Command::Reverse {
            source,
            w1,
            w2,
            max_steps,
            dot,
        } => {
            let s = load(&source)?;
            let (a, b) = (word("--w1", &w1)?, word("--w2", &w2)?);
            check_letters(&s, "--w1", &a)?;
            check_letters(&s, "--w2", &b)?;
            let outcome = reverse(
                &s,
                &a,
                &b,
                max_steps.unwrap_or_else(|| default_max_steps(&a, &b)),
            );
            if let (Some(path), ReversingOutcome::Closed { diagram, .. }) = (&dot, &outcome) {
                std::fs::write(path, diagram.to_dot())
                    .map_err(|e| Usage(format!("--dot {}: {e}", path.display())))?;
            }
            out.emit(json!(outcome), || {
                let mut text = format!("{outcome}\n");
                if let ReversingOutcome::Closed { diagram, .. } = &outcome {
                    text.push_str(&diagram.dump());
                }
                text
            });
            Ok(outcome.is_closed())
        }
        Command::Cycleset { source, window } => {
            let s = load(&source)?;
            let reports = verify_cycle_set(&derive_cycle_set(&s), &window.options())?;
            out.emit(json!(reports), || report_lines(&reports));
            Ok(reports.iter().all(|r| r.holds))
        }
        Command::Retract { source } => {
            let s = load(&source)?;
            let r = retract(&s)?;
            let size = r.solution.size().unwrap_or(0);
            out.emit(
                json!({ "class_of": r.class_of, "solution": save(&r.solution) }),
                || {
                    let classes: Vec<String> = r
                        .class_of
                        .iter()
                        .enumerate()
                        .map(|(x, c)| format!("{x}->{c}"))
                        .collect();
                    format!(
                        "size {} -> {size}\nclasses {}\n{}\n",
                        s.size().unwrap_or(0),
                        classes.join(" "),
                        save_string(&r.solution)
                    )
                },
            );
            Ok(true)
        }
        Command::Mpl { source, max_iter } => {
            let s = load(&source)?;
            let result = multipermutation_level(&s, max_iter)?;
            out.emit(json!(result), || match result {
                Multipermutation::Level { level } => format!("level {level}\n"),
                Multipermutation::Irretractable { size } => {
                    format!("irretractable, fixed point of size {size}\n")
                }
                Multipermutation::Exhausted { iterations, size } => {
                    format!("no fixed point after {iterations} retractions (size {size})\n")
                }
            });
            Ok(result.level().is_some())
        }
        Command::Decompose { source, limit } => {
            let s = load(&source)?;
            let parts = decompose(&s, limit)?;
            out.emit(
                json!({ "decomposable": parts.is_some(), "partition": parts }),
                || match &parts {
                    Some(p) => format!("{:?} | {:?}\n", p.first, p.second),
                    None => "indecomposable\n".into(),
                },
            );
            Ok(parts.is_some())
        }
        Command::Iso {
            source,
            other,
            limit,
        } => {
            let s1 = load(&source)?;
            let s2 = load_from(other.other_file.as_ref(), other.other_example.as_deref())?;
            let alpha = are_isomorphic(&s1, &s2, limit)?;
            out.emit(
                json!({ "isomorphic": alpha.is_some(), "map": alpha }),
                || match &alpha {
                    Some(a) => {
                        let pairs: Vec<String> = a
                            .iter()
                            .enumerate()
                            .map(|(x, y)| format!("{x}->{y}"))
                            .collect();
                        format!("isomorphic {}\n", pairs.join(" "))
                    }
                    None => "not isomorphic\n".into(),
                },
            );
            Ok(alpha.is_some())
        }
        Command::ThompsonNf { word } => {
            let w = f_word("WORD", &word)?;
            let nf = f_normal_form(&w);
            out.emit(
                json!({
                    "word": w,
                    "normal_form": nf,
                    "positive": nf.positive_exponents(),
                    "negative": nf.negative_exponents(),
                }),
                || format!("{nf}\n"),
            );
            Ok(true)
        }
        Command::ThompsonEq { w1, w2 } => {
            let (a, b) = (f_word("W1", &w1)?, f_word("W2", &w2)?);
            let equal = f_words_equal(&a, &b);
            out.emit(json!({ "w1": a, "w2": b, "equal": equal }), || {
                format!("{a} {} {b}\n", if equal { "=" } else { "≠" })
            });
            Ok(equal)
        }
        Command::ThompsonCheck { window } => {
            let r = window_checks(window);
            out.emit(json!(r), || {
                format!(
                    "window              {}\nrelations           {}\nrelations match     {}\npresentation shape  {}\nirretractable       {}\n{{x0}} invariant      {}\n{{x1,..}} invariant   {}\n",
                    r.window,
                    r.relation_count,
                    r.relations_match,
                    r.presentation_shaped,
                    r.irretractable,
                    r.x0_invariant,
                    r.tail_invariant
                )
            });
            Ok(r.all_hold())
        }
        Command::Examples { name } => match name {
            None => {
                out.emit(json!(EXAMPLE_NAMES), || {
                    EXAMPLE_NAMES.iter().map(|n| format!("{n}\n")).collect()
                });
                Ok(true)
            }
            Some(name) => {
                let s = example(&name)?;
                out.emit(save(&s), || format!("{}\n", save_string(&s)));
                Ok(true)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
