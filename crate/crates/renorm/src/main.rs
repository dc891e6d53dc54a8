//! `renorm`: parse parenthesized words, print coproducts, antipodes and
//! counterterms, evaluate them in the toy models, enumerate forest
//! structures, and run identity suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use renorm_core::algebra::Expr;
use renorm_core::hopf::{antipode, coproduct, coproduct_traced, forest_z, renormalize};
use renorm_core::letters::Alphabet;
use renorm_core::toymodel::{eval_expr, eval_expr_exact, Model, ModelError, Scheme, Window};
use renorm_core::words::{enumerate_ipws, parse_word, ParseError, Word};

use renorm::{alphabet_file, checks, dot, json, numeric, oracle};

#[derive(Parser)]
#[command(
    name = "renorm",
    version,
    about = "Hopf-algebra renormalization on parenthesized words"
)]
struct Cli {
    /// Alphabet file (JSON). Without it, any identifier is accepted as a
    /// one-loop logarithmic letter.
    #[arg(long, global = true, env = "RENORM_ALPHABET")]
    alphabet: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Iterated,
    Propagator,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Iterated => Model::Iterated,
            ModelArg::Propagator => Model::Propagator,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Momentum,
    Ms,
    Identity,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Momentum => Scheme::Momentum,
            SchemeArg::Ms => Scheme::Ms,
            SchemeArg::Identity => Scheme::Identity,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a word and echo its canonical form, length, depth and loop order.
    Parse {
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the coproduct of a word.
    Delta {
        word: String,
        /// Also record every recursion rule applied.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the antipode S[R[w]] (or S[w] with --bare).
    Antipode {
        word: String,
        /// Antipode of the bare word instead of its R closure.
        #[arg(long)]
        bare: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the forest-formula counterterm Z of an irreducible word.
    Z {
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the renormalized expression m[(S (x) id) Delta[w]].
    #[command(alias = "renorm")]
    Renormalize {
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a word (or its renormalization) under a model and scheme.
    Eval {
        word: String,
        #[arg(long, value_enum, default_value = "iterated")]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "momentum")]
        scheme: SchemeArg,
        /// Expansion window as lo:hi, e.g. -3:4. Defaults to -(length):4.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Evaluate m[(S (x) id) Delta[w]] instead of the bare word.
        #[arg(long)]
        renormalized: bool,
        /// Also print the exact closed form (momentum/identity schemes).
        #[arg(long)]
        exact: bool,
        /// Append a numeric quadrature comparison, e.g. eps=0.05,c=2.
        #[arg(long)]
        oracle: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List all canonical irreducible words of a given length.
    Enumerate {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run an identity suite; exits 1 when a check fails.
    Check {
        #[arg(long)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        #[arg(long, value_enum, default_value = "iterated")]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "momentum")]
        scheme: SchemeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    HopfAxioms,
    AntipodeForest,
    Coassoc,
    Finiteness,
    ModelBTheorem,
    Overlap,
    Enumeration,
    Expansion,
}

/// Process exit codes: 0 success, 1 check failure, 2 usage or parse
/// error, 3 model-domain error.
enum Failure {
    Check,
    Usage(String),
    Model(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check => 1,
            Failure::Usage(_) => 2,
            Failure::Model(_) => 3,
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure::Model(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check => {}
                Failure::Usage(msg) | Failure::Model(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn load_alphabet(path: &Option<PathBuf>) -> Result<Alphabet, Failure> {
    match path {
        Some(p) => alphabet_file::load(p).map_err(|e| Failure::Usage(e.to_string())),
        None => Ok(alphabet_file::default_alphabet()),
    }
}

fn parse_or_diagnose(text: &str, alphabet: &Alphabet) -> Result<Word, Failure> {
    parse_word(text, alphabet).map_err(|e| Failure::Usage(diagnose(text, &e)))
}

fn diagnose(text: &str, e: &ParseError) -> String {
    match e.column() {
        Some(col) => {
            let caret = " ".repeat(col.saturating_sub(1)) + "^";
            format!("{e}\n  {text}\n  {caret}")
        }
        None => e.to_string(),
    }
}

fn print_expr(op: &str, input: &str, e: &Expr, format: Format) -> Result<(), Failure> {
    match format {
        Format::Text => println!("{e}"),
        Format::Json => println!("{}", json::expr_payload(op, input, e)),
        Format::Dot => return Err(dot_unsupported()),
    }
    Ok(())
}

fn dot_unsupported() -> Failure {
    Failure::Usage("dot output is only available for `parse`".into())
}

fn parse_window(s: &Option<String>, word_len: usize) -> Result<Window, Failure> {
    match s {
        None => Ok(Window::default_for_length(word_len)),
        Some(text) => {
            let (lo, hi) = text
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("window `{text}` is not lo:hi")))?;
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("window floor `{lo}` is not an integer")))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("window ceiling `{hi}` is not an integer")))?;
            if lo > hi {
                return Err(Failure::Usage(format!("window {lo}:{hi} is empty")));
            }
            Ok(Window::new(lo, hi))
        }
    }
}

fn parse_oracle_spec(s: &str) -> Result<(f64, f64), Failure> {
    let mut eps = None;
    let mut c = None;
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("oracle argument `{s}` is not eps=..,c=..")))?;
        let val: f64 = v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("oracle value `{v}` is not a number")))?;
        match k.trim() {
            "eps" => eps = Some(val),
            "c" => c = Some(val),
            other => return Err(Failure::Usage(format!("unknown oracle key `{other}`"))),
        }
    }
    match (eps, c) {
        (Some(e), Some(c)) => Ok((e, c)),
        _ => Err(Failure::Usage(
            "oracle argument needs both eps= and c=".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let alphabet = load_alphabet(&cli.alphabet)?;
    match cli.command {
        Command::Parse { word, format } => {
            let w = parse_or_diagnose(&word, &alphabet)?;
            match format {
                Format::Text => {
                    println!("canonical: {w}");
                    println!("length: {}", w.length());
                    println!("depth: {}", w.depth());
                    println!("loops: {}", w.loop_order());
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "schema": json::SCHEMA,
                            "canonical": w.to_string(),
                            "length": w.length(),
                            "depth": w.depth(),
                            "loops": w.loop_order(),
                        })
                    );
                }
                Format::Dot => print!("{}", dot::word_to_dot(&w)),
            }
            Ok(())
        }
        Command::Delta {
            word,
            trace,
            format,
        } => {
            let w = parse_or_diagnose(&word, &alphabet)?;
            let e = Expr::from_word(&w);
            if trace {
                let (out, steps) = coproduct_traced(&e);
                match format {
                    Format::Text => {
                        for s in &steps {
                            println!("[{}] {} => {}", s.rule, s.input, s.output);
                        }
                        println!("{out}");
                    }
                    Format::Json => println!(
                        "{}",
                        json::trace_payload("delta", &word, &steps, json::tensor2_terms(&out))
                    ),
                    Format::Dot => return Err(dot_unsupported()),
                }
            } else {
                let out = coproduct(&e);
                match format {
                    Format::Text => println!("{out}"),
                    Format::Json => println!("{}", json::tensor2_payload("delta", &word, &out)),
                    Format::Dot => return Err(dot_unsupported()),
                }
            }
            Ok(())
        }
        Command::Antipode { word, bare, format } => {
            let w = parse_or_diagnose(&word, &alphabet)?;
            let e = if bare {
                Expr::from_word(&w)
            } else {
                Expr::from_word(&w).apply_r()
            };
            print_expr("antipode", &word, &antipode(&e), format)
        }
        Command::Z { word, format } => {
            let w = parse_or_diagnose(&word, &alphabet)?;
            let factors = w.factors();
            if factors.len() != 1 {
                return Err(Failure::Usage(format!(
                    "`z` expects an irreducible word, got `{w}`"
                )));
            }
            print_expr("z", &word, &forest_z(&factors[0]), format)
        }
        Command::Renormalize { word, format } => {
            let w = parse_or_diagnose(&word, &alphabet)?;
            print_expr(
                "renormalize",
                &word,
                &renormalize(&Expr::from_word(&w)),
                format,
            )
        }
        Command::Eval {
            word,
            model,
            scheme,
            window,
            renormalized,
            exact,
            oracle: oracle_spec,
            format,
        } => {
            let w = parse_or_diagnose(&word, &alphabet)?;
            let model: Model = model.into();
            let scheme: Scheme = scheme.into();
            let win = parse_window(&window, w.length())?;
            let expr = if renormalized {
                renormalize(&Expr::from_word(&w))
            } else {
                Expr::from_word(&w)
            };
            let series = eval_expr(&expr, model, scheme, win)?;
            let finite = series.is_finite().ok();
            let exact_form = if exact {
                Some(eval_expr_exact(&expr, model, scheme)?)
            } else {
                None
            };
            let oracle_result = match &oracle_spec {
                None => None,
                Some(spec) => {
                    let (eps, c) = parse_oracle_spec(spec)?;
                    let value = run_oracle(&w, model, renormalized, eps, c)?;
                    let reference = numeric::series_eval(&series, eps, c);
                    Some((value, reference))
                }
            };
            match format {
                Format::Text => {
                    for (k, p) in series.coeffs() {
                        println!("eps^{k}: {p}");
                    }
                    if let Some(f) = finite {
                        println!("finite: {f}");
                    }
                    if let Some(s) = &exact_form {
                        println!("exact: {s}");
                    }
                    if let Some((value, reference)) = oracle_result {
                        let rel = if reference == 0.0 {
                            (value - reference).abs()
                        } else {
                            ((value - reference) / reference).abs()
                        };
                        println!("oracle: {value:.12e} series: {reference:.12e} rel: {rel:.3e}");
                    }
                }
                Format::Json => {
                    let mut payload = json::series_payload(&series);
                    if let Some(f) = finite {
                        payload["finite"] = serde_json::json!(f);
                    }
                    if let Some(s) = &exact_form {
                        payload["exact"] = json::scaled_payload(s);
                    }
                    if let Some((value, reference)) = oracle_result {
                        payload["oracle"] = json::oracle_payload(value, reference, 1e-6);
                    }
                    println!("{payload}");
                }
                Format::Dot => return Err(dot_unsupported()),
            }
            Ok(())
        }
        Command::Enumerate {
            length,
            count_only,
            format,
        } => {
            if length == 0 {
                return Err(Failure::Usage("enumeration length starts at 1".into()));
            }
            let single = Alphabet::single();
            let words = enumerate_ipws(length, &single);
            let note = (length == 7).then(|| {
                format!(
                    "note: engine counts {} canonical iPWs at length 7; the published series \
                     quotes 51 (discrepancy documented, not resolved)",
                    words.len()
                )
            });
            match format {
                Format::Text => {
                    if !count_only {
                        for w in &words {
                            println!("{w}");
                        }
                    }
                    println!("count: {}", words.len());
                    if let Some(n) = note {
                        println!("{n}");
                    }
                }
                Format::Json => {
                    let mut payload = serde_json::json!({
                        "schema": json::SCHEMA,
                        "length": length,
                        "count": words.len(),
                    });
                    if !count_only {
                        payload["words"] = serde_json::json!(words
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>());
                    }
                    if let Some(n) = note {
                        payload["note"] = serde_json::json!(n);
                    }
                    println!("{payload}");
                }
                Format::Dot => return Err(dot_unsupported()),
            }
            Ok(())
        }
        Command::Check {
            suite,
            max_length,
            model,
            scheme,
            format,
        } => {
            let report = match suite {
                SuiteArg::HopfAxioms => checks::suite_hopf_axioms(max_length),
                SuiteArg::AntipodeForest => checks::suite_antipode_forest(max_length),
                SuiteArg::Coassoc => checks::suite_coassoc(scheme.into(), max_length),
                SuiteArg::Finiteness => checks::suite_finiteness(model.into(), max_length),
                SuiteArg::ModelBTheorem => checks::suite_model_b(max_length),
                SuiteArg::Overlap => checks::suite_overlap(),
                SuiteArg::Enumeration => checks::suite_enumeration(max_length.max(7)),
                SuiteArg::Expansion => checks::suite_expansion(max_length),
            };
            match format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.to_json()),
                Format::Dot => return Err(dot_unsupported()),
            }
            if report.passed() {
                Ok(())
            } else {
                // the failure report is always machine readable
                if format == Format::Text {
                    println!("{}", report.to_json());
                }
                Err(Failure::Check)
            }
        }
    }
}

fn run_oracle(
    w: &Word,
    model: Model,
    renormalized: bool,
    eps: f64,
    c: f64,
) -> Result<f64, Failure> {
    let tol = 1e-9;
    let result = match (model, renormalized) {
        (Model::Iterated, false) => oracle::iterated_bare(w, eps, c, tol),
        (Model::Iterated, true) => oracle::iterated_renormalized(w, eps, c, tol),
        (Model::Propagator, false) => oracle::propagator_bare(w, eps, c, tol),
        (Model::Propagator, true) => {
            return Err(Failure::Usage(
                "the quadrature oracle covers bare propagator words only".into(),
            ))
        }
    };
    result.map_err(|e| Failure::Model(e.to_string()))
}
