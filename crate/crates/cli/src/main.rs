use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use multiplex_juggling::cards::{card_to_embedding, embedding_to_card, render_card};
use multiplex_juggling::embeddings::{embedding_to_sequence, sequence_to_embedding};
use multiplex_juggling::genfun::{
    gf_cor_l1, gf_infinite, gf_prop1, gf_thm3, gf_thm_l1, infinite_rational, DEFAULT_MONOMIAL_BUDGET,
};
use multiplex_juggling::rational::fit_recurrence;
use multiplex_juggling::sequences::{
    build_transfer_matrix, count_periodic, count_sequences, count_sequences_brute, state_count,
};
use multiplex_juggling::verify::{checks, Limits, Report, Suite};
use multiplex_juggling::{Card, CardSequence, Embedding, Error, RationalFunction, SequenceEmbedding};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "mjc", version, about = "Exact counts and generating functions for multiplex juggling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Transfer,
    Thm3,
    Prop1,
    ThmL1,
    CorL1,
    Infinite,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Transfer => "transfer",
            Method::Thm3 => "thm3",
            Method::Prop1 => "prop1",
            Method::ThmL1 => "thm-l1",
            Method::CorL1 => "cor-l1",
            Method::Infinite => "infinite",
        }
    }

    fn single_card_only(self) -> bool {
        matches!(self, Method::Prop1 | Method::ThmL1 | Method::CorL1 | Method::Infinite)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    ThmL1,
    CorL1,
    Infinite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Identities,
    Cross,
    Bijections,
    Oeis,
    All,
}

#[derive(clap::Args, Clone, Copy)]
struct Budgets {
    /// Largest transfer matrix dimension to build.
    #[arg(long, default_value_t = 5_000)]
    max_states: u64,
    /// Largest truncation box (monomial count) for the operator formula.
    #[arg(long, default_value_t = DEFAULT_MONOMIAL_BUDGET)]
    max_monomials: u128,
    /// Largest count the brute-force walker may visit.
    #[arg(long, default_value_t = 20_000_000)]
    max_sequences: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Count card sequences J(b,k,l) (or J0 with --periodic).
    Count {
        #[arg(long)]
        balls: u32,
        /// Hand capacity; omit only for --method infinite.
        #[arg(long)]
        capacity: Option<u32>,
        #[arg(long, default_value_t = 1)]
        length: u32,
        #[arg(long, value_enum, default_value_t = Method::Transfer)]
        method: Method,
        #[arg(long)]
        periodic: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Coefficient table J(0..=B, k, l).
    Series {
        #[arg(long)]
        capacity: Option<u32>,
        #[arg(long, default_value_t = 1)]
        length: u32,
        #[arg(long, default_value_t = 20)]
        order: u32,
        #[arg(long, value_enum, default_value_t = Method::Transfer)]
        method: Method,
        #[arg(long)]
        periodic: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Closed-form single-card generating function.
    Genfun {
        #[arg(long)]
        capacity: Option<u32>,
        #[arg(long, value_enum, default_value_t = Formula::ThmL1)]
        formula: Formula,
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 8)]
        max_balls: u32,
        #[arg(long, default_value_t = 2)]
        max_capacity: u32,
        #[arg(long, default_value_t = 3)]
        max_length: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// ASCII diagram of a card given as "arrival=..;departure=..;f=..".
    Draw {
        #[arg(long)]
        card: String,
    },
    /// Fit the shortest linear recurrence to "a0,a1,...".
    Fit {
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Transfer matrix over ball states.
    Matrix {
        #[arg(long)]
        balls: u32,
        #[arg(long)]
        capacity: u32,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Encode cards as embeddings, or decode embeddings back to cards.
    Embed {
        /// One card gives its word embedding; several (in order) give the
        /// sequence embedding.
        #[arg(long, conflicts_with_all = ["embedding", "sequence_embedding"])]
        card: Vec<String>,
        /// Word embedding such as "011|1|00|001|11".
        #[arg(long, conflicts_with = "sequence_embedding")]
        embedding: Option<String>,
        /// Sequence embedding "gamma=..;delta=..".
        #[arg(long)]
        sequence_embedding: Option<String>,
    },
}

/// A failure together with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded { .. }) { EXIT_BUDGET } else { EXIT_USAGE };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

#[derive(Serialize)]
struct CountJson {
    b: u32,
    k: Option<u32>,
    l: u32,
    method: &'static str,
    periodic: bool,
    count: String,
}

#[derive(Serialize)]
struct SeriesOut {
    k: Option<u32>,
    l: u32,
    method: &'static str,
    periodic: bool,
    order: u32,
    counts: Vec<String>,
}

#[derive(Serialize)]
struct GenfunJson {
    formula: &'static str,
    k: Option<u32>,
    numerator: Vec<String>,
    denominator: Vec<String>,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    id: &'a str,
    params: &'a str,
    passed: bool,
    detail: &'a str,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if f.code == EXIT_VERIFY {
                print!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Count { balls, capacity, length, method, periodic, json, budgets } => {
            check_method(capacity, length, method, periodic)?;
            let count = count_with(balls, capacity, length, method, periodic, &budgets)?;
            if json {
                let j = CountJson { b: balls, k: capacity, l: length, method: method.name(), periodic, count: count.to_string() };
                Ok(to_json_line(&j))
            } else {
                Ok(format!("{count}\n"))
            }
        }
        Command::Series { capacity, length, order, method, periodic, format, budgets } => {
            check_method(capacity, length, method, periodic)?;
            let counts = series_with(capacity, length, order, method, periodic, &budgets)?;
            Ok(match format {
                Format::Json => to_json_line(&SeriesOut {
                    k: capacity,
                    l: length,
                    method: method.name(),
                    periodic,
                    order,
                    counts: counts.iter().map(BigInt::to_string).collect(),
                }),
                Format::Csv => {
                    let mut s = String::from("b,count\n");
                    for (b, c) in counts.iter().enumerate() {
                        let _ = writeln!(s, "{b},{c}");
                    }
                    s
                }
                Format::Text => counts.iter().map(|c| format!("{c}\n")).collect(),
            })
        }
        Command::Genfun { capacity, formula, json } => genfun(capacity, formula, json),
        Command::Verify { suite, max_balls, max_capacity, max_length, trials, seed, json } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Cross => Suite::Cross,
                SuiteArg::Bijections => Suite::Bijections,
                SuiteArg::Oeis => Suite::Oeis,
                SuiteArg::All => Suite::All,
            };
            let limits = Limits { max_balls, max_capacity, max_length, trials, seed, ..Limits::default() };
            let list = checks(suite, &limits);
            let report = Report::new(list.par_iter().map(|c| c.execute()).collect());
            let text = if json {
                let rows: Vec<CheckJson> = report
                    .outcomes()
                    .iter()
                    .map(|o| CheckJson { id: &o.id, params: &o.params, passed: o.passed, detail: &o.detail })
                    .collect();
                to_json_line(&rows)
            } else {
                format!("{report}\n")
            };
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure { code: EXIT_VERIFY, message: text })
            }
        }
        Command::Draw { card } => {
            let card: Card = card.parse()?;
            Ok(render_card(&card)?)
        }
        Command::Fit { sequence, max_order, json } => fit(&sequence, max_order, json),
        Command::Matrix { balls, capacity, json, budgets } => {
            check_capacity(capacity)?;
            check_states(balls, capacity, &budgets)?;
            let t = build_transfer_matrix(balls, capacity);
            if json {
                return Ok(to_json_line(&t.to_json()));
            }
            let mut s = String::new();
            for (state, row) in t.states().iter().zip(t.counts()) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{state}: {}", cells.join(" "));
            }
            Ok(s)
        }
        Command::Embed { card, embedding, sequence_embedding } => embed(&card, embedding, sequence_embedding),
    }
}

fn to_json_line<T: Serialize>(v: &T) -> String {
    format!("{}\n", serde_json::to_string(v).expect("serializable"))
}

fn check_capacity(k: u32) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::usage("--capacity must be positive"));
    }
    Ok(())
}

fn check_method(capacity: Option<u32>, length: u32, method: Method, periodic: bool) -> Result<(), Failure> {
    if method.single_card_only() && length != 1 {
        return Err(Failure::usage(format!("--method {} needs --length 1", method.name())));
    }
    if periodic && !matches!(method, Method::Brute | Method::Transfer) {
        return Err(Failure::usage("--periodic needs --method brute or transfer"));
    }
    match (method, capacity) {
        (Method::Infinite, Some(_)) => Err(Failure::usage("--method infinite takes no --capacity")),
        (Method::Infinite, None) => Ok(()),
        (_, None) => Err(Failure::usage("--capacity is required")),
        (_, Some(k)) => check_capacity(k),
    }?;
    if length == 0 && matches!(method, Method::Thm3 | Method::Brute) {
        return Err(Failure::usage(format!("--method {} needs --length >= 1", method.name())));
    }
    Ok(())
}

fn check_states(b: u32, k: u32, budgets: &Budgets) -> Result<(), Failure> {
    let n = state_count(b, k);
    if n > budgets.max_states.into() {
        return Err(Error::BudgetExceeded {
            what: "transfer matrix state",
            needed: u128::try_from(n).unwrap_or(u128::MAX),
            limit: budgets.max_states.into(),
        }
        .into());
    }
    Ok(())
}

fn count_with(b: u32, k: Option<u32>, ell: u32, method: Method, periodic: bool, budgets: &Budgets) -> Result<BigInt, Failure> {
    let n = b as usize;
    Ok(match method {
        Method::Infinite => gf_infinite(b).swap_remove(n),
        Method::Prop1 => gf_prop1(k.unwrap(), b)?.swap_remove(n),
        Method::ThmL1 => gf_thm_l1(k.unwrap())?.expand(n)?.swap_remove(n),
        Method::CorL1 => gf_cor_l1(k.unwrap())?.expand(n)?.swap_remove(n),
        Method::Thm3 => gf_thm3(k.unwrap(), ell, b, budgets.max_monomials)?.swap_remove(n),
        Method::Transfer => {
            let k = k.unwrap();
            check_states(b, k, budgets)?;
            if periodic {
                count_periodic(b, k, ell).into()
            } else {
                count_sequences(b, k, ell).into()
            }
        }
        Method::Brute => {
            let k = k.unwrap();
            check_states(b, k, budgets)?;
            // the transfer count sizes the walk before it starts
            let size = count_sequences(b, k, ell);
            if size > budgets.max_sequences.into() {
                return Err(Error::BudgetExceeded {
                    what: "brute-force sequence",
                    needed: u128::try_from(size).unwrap_or(u128::MAX),
                    limit: budgets.max_sequences.into(),
                }
                .into());
            }
            let (all, per) = count_sequences_brute(b, k, ell as usize);
            BigInt::from(if periodic { per } else { all })
        }
    })
}

fn series_with(
    k: Option<u32>,
    ell: u32,
    order: u32,
    method: Method,
    periodic: bool,
    budgets: &Budgets,
) -> Result<Vec<BigInt>, Failure> {
    let n = order as usize;
    Ok(match method {
        Method::Infinite => gf_infinite(order),
        Method::Prop1 => gf_prop1(k.unwrap(), order)?,
        Method::ThmL1 => gf_thm_l1(k.unwrap())?.expand(n)?,
        Method::CorL1 => gf_cor_l1(k.unwrap())?.expand(n)?,
        Method::Thm3 => gf_thm3(k.unwrap(), ell, order, budgets.max_monomials)?,
        Method::Transfer | Method::Brute => {
            (0..=order).map(|b| count_with(b, k, ell, method, periodic, budgets)).collect::<Result<_, _>>()?
        }
    })
}

fn genfun(capacity: Option<u32>, formula: Formula, json: bool) -> Outcome {
    let (name, rf): (&'static str, RationalFunction) = match (formula, capacity) {
        (Formula::Infinite, None) => ("infinite", infinite_rational()),
        (Formula::Infinite, Some(_)) => return Err(Failure::usage("--formula infinite takes no --capacity")),
        (_, None) => return Err(Failure::usage("--capacity is required")),
        (Formula::ThmL1, Some(k)) => ("thm-l1", gf_thm_l1(k)?),
        (Formula::CorL1, Some(k)) => ("cor-l1", gf_cor_l1(k)?),
    };
    let num: Vec<String> = rf.numerator().coeffs().iter().map(ToString::to_string).collect();
    let den: Vec<String> = rf.denominator().coeffs().iter().map(ToString::to_string).collect();
    if json {
        return Ok(to_json_line(&GenfunJson { formula: name, k: capacity, numerator: num, denominator: den }));
    }
    Ok(format!(
        "numerator: [{}]\ndenominator: [{}]\n({}) / ({})\n",
        num.join(","),
        den.join(","),
        rf.numerator(),
        rf.denominator()
    ))
}

fn fit(sequence: &str, max_order: usize, json: bool) -> Outcome {
    let seq: Vec<BigInt> = sequence
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| Failure::usage(format!("bad term {t:?}"))))
        .collect::<Result<_, _>>()?;
    let Some(rec) = fit_recurrence(&seq, max_order) else {
        return Err(Failure { code: EXIT_VERIFY, message: format!("no recurrence of order <= {max_order} found\n") });
    };
    if json {
        return Ok(to_json_line(&rec.to_json()));
    }
    let mut rhs = String::new();
    for (i, c) in rec.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let factor = if mag.is_one() { String::new() } else { format!("{mag}*") };
        if rhs.is_empty() {
            let lead = if c.is_negative() { "-" } else { "" };
            let _ = write!(rhs, "{lead}{factor}a(n-{})", i + 1);
        } else {
            let _ = write!(rhs, " {sign} {factor}a(n-{})", i + 1);
        }
    }
    if rhs.is_empty() {
        rhs.push('0');
    }
    let coeffs: Vec<String> = rec.coeffs().iter().map(ToString::to_string).collect();
    Ok(format!(
        "order {}: ({})\na(n) = {rhs} for n >= {}\n",
        rec.order(),
        coeffs.join(","),
        rec.valid_from()
    ))
}

fn embed(cards: &[String], embedding: Option<String>, sequence_embedding: Option<String>) -> Outcome {
    if let Some(e) = embedding {
        let e: Embedding = e.parse()?;
        return Ok(format!("{}\n", embedding_to_card(&e)?));
    }
    if let Some(se) = sequence_embedding {
        let se: SequenceEmbedding = se.parse()?;
        let seq = embedding_to_sequence(&se)?;
        return Ok(seq.cards().iter().map(|c| format!("{c}\n")).collect());
    }
    match cards {
        [] => Err(Failure::usage("give --card, --embedding or --sequence-embedding")),
        [one] => {
            let card: Card = one.parse()?;
            Ok(format!("{}\n", card_to_embedding(&card)?))
        }
        many => {
            let cards = many.iter().map(|c| c.parse::<Card>()).collect::<Result<Vec<_>, _>>()?;
            let seq = CardSequence::new(cards)?;
            Ok(format!("{}\n", sequence_to_embedding(&seq)?))
        }
    }
}
