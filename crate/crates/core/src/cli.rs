//! The `hfzf` command line.
//!
//! Exit codes: 0 success, 1 semantic negative (falsifiable, not a member, not well-founded),
//! 2 input or parse error, 3 size budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::datatypes as dt;
use crate::error::Error;
use crate::fixedpoint as fp;
use crate::hf::{Config, Set, Universe};
use crate::ordinals;
use crate::proplogic::{self as pl, Context, Prop, Valuation};
use crate::recursion;
use crate::relations::{self, Rel};
use crate::selftest::{self, Selection};
use crate::sweep::Exec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hfzf",
    version,
    about = "Induction and recursion over hereditarily finite sets"
)]
struct Cli {
    /// Maximum number of interned sets.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    /// Seed for randomized self-tests.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Sexpr,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Rank of a set, as an ordinal.
    Rank { set: String },
    /// Least transitive superset.
    Eclose { set: String },
    /// Stage n of the cumulative hierarchy over a set.
    Vfrom { set: String, n: u32 },
    /// Membership in univ(A).
    Inuniv {
        #[arg(long = "A")]
        a: String,
        set: String,
    },
    /// Reflexive-transitive closure of a relation.
    Rtrancl {
        rel: String,
        /// Transitive closure instead.
        #[arg(long)]
        plus: bool,
    },
    /// The membership relation on a set.
    Memrel { set: String },
    /// Well-foundedness of a relation.
    Wf { rel: String },
    /// Reports Transset, Ord and Limit.
    Ord { set: String },
    /// Recursion on the natural numbers with a built-in body.
    Natrec {
        a: String,
        k: String,
        #[arg(long, value_enum)]
        body: NatBody,
    },
    /// Least fixedpoint of an operator inside a bounding set.
    Lfp {
        #[arg(long)]
        op: String,
        #[arg(long)]
        bound: String,
        /// Print the whole Kleene chain.
        #[arg(long)]
        chain: bool,
    },
    /// Banach decomposition, and the Schröder-Bernstein bijection for injections.
    Banach {
        #[arg(long = "X")]
        x: String,
        #[arg(long = "Y")]
        y: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Recognizes a list and prints its items, or with --encode builds one from items.
    List {
        #[arg(long)]
        encode: bool,
        #[arg(required = true)]
        sets: Vec<String>,
    },
    /// Mirror image of a term.
    Reflect { term: String },
    /// Operations on trees and forests.
    Tf {
        #[arg(long, value_enum)]
        op: TfOp,
        /// Label function for map.
        #[arg(long = "fn", value_enum, default_value_t = LabelFn::Id)]
        label_fn: LabelFn,
        set: String,
    },
    /// All finite subsets, as the least fixedpoint Fin(A).
    Fin { set: String },
    /// Propositional logic.
    Prop {
        #[command(subcommand)]
        cmd: PropCmd,
    },
    /// Runs property suites: core, fixedpoint, recursion, datatypes, logic or all.
    Selftest {
        suite: String,
        /// Run the sweeps on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NatBody {
    Add,
    Double,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TfOp {
    Map,
    Size,
    Preorder,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LabelFn {
    Id,
    Succ,
}

#[derive(Subcommand, Debug)]
enum PropCmd {
    /// Decides H ⊨ p.
    Valid {
        #[arg(short = 'H')]
        hyps: Option<PathBuf>,
        prop: String,
    },
    /// Builds a derivation of p from H, or prints a falsifying valuation.
    Prove {
        #[arg(short = 'H')]
        hyps: Option<PathBuf>,
        prop: String,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Checks a derivation file.
    Check {
        file: PathBuf,
        #[arg(short = 'H')]
        hyps: Option<PathBuf>,
    },
}

/// Why a command stopped early.
enum Stop {
    Input(String),
    Budget(String),
    Io(std::io::Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Stop::Budget(e.to_string())
        } else {
            Stop::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for Stop {
    fn from(e: std::io::Error) -> Self {
        Stop::Io(e)
    }
}

type Run = Result<i32, Stop>;

struct Env<'o> {
    u: Universe,
    format: Format,
    out: &'o mut dyn Write,
}

impl Env<'_> {
    fn set(&mut self, text: &str) -> Result<Set, Stop> {
        Ok(self.u.parse(text)?)
    }

    fn rel(&mut self, text: &str) -> Result<Rel, Stop> {
        let s = self.set(text)?;
        Ok(Rel::new(&self.u, s)?)
    }

    fn show(&self, s: Set) -> String {
        match self.format {
            Format::Text => self.u.show(s),
            Format::Sexpr => self.u.show_sexpr(s),
        }
    }

    fn print_set(&mut self, s: Set) -> Run {
        let text = self.show(s);
        writeln!(self.out, "{text}")?;
        Ok(EXIT_OK)
    }

    fn print_bool(&mut self, b: bool) -> Run {
        writeln!(self.out, "{b}")?;
        Ok(if b { EXIT_OK } else { EXIT_NEGATIVE })
    }

    /// `name = value` lines, or one `(name value)` list per field.
    fn print_fields(&mut self, head: &str, fields: &[(&str, String)]) -> Run {
        match self.format {
            Format::Text => {
                for (k, v) in fields {
                    writeln!(self.out, "{k} = {v}")?;
                }
            }
            Format::Sexpr => {
                let body: Vec<String> = fields.iter().map(|(k, v)| format!("({k} {v})")).collect();
                writeln!(self.out, "({head} {})", body.join(" "))?;
            }
        }
        Ok(EXIT_OK)
    }
}

/// Parses `args` (including the program name) and runs the command, writing results to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_INPUT,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let config = Config {
        budget: cli.budget,
        ..Config::default()
    };
    let mut env = Env {
        u: Universe::with_config(config),
        format: cli.format,
        out,
    };
    match dispatch(&mut env, cli.cmd, cli.seed) {
        Ok(code) => code,
        Err(Stop::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(Stop::Budget(m)) => {
            let _ = writeln!(err, "budget: {m}");
            EXIT_BUDGET
        }
        Err(Stop::Io(e)) => {
            let _ = writeln!(err, "io error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(env: &mut Env, cmd: Cmd, seed: u64) -> Run {
    match cmd {
        Cmd::Rank { set } => {
            let s = env.set(&set)?;
            let r = recursion::rank(&mut env.u, s);
            env.print_set(r)
        }
        Cmd::Eclose { set } => {
            let s = env.set(&set)?;
            let e = recursion::eclose(&mut env.u, s);
            env.print_set(e)
        }
        Cmd::Vfrom { set, n } => {
            let s = env.set(&set)?;
            let v = recursion::vfrom(&mut env.u, s, n)?;
            env.u.check_budget()?;
            env.print_set(v)
        }
        Cmd::Inuniv { a, set } => {
            let (a, x) = (env.set(&a)?, env.set(&set)?);
            let b = recursion::in_univ(&env.u, a, x);
            env.print_bool(b)
        }
        Cmd::Rtrancl { rel, plus } => {
            let r = env.rel(&rel)?;
            let c = if plus {
                relations::trancl(&mut env.u, r)?
            } else {
                relations::rtrancl(&mut env.u, r)?
            };
            env.print_set(c.set())
        }
        Cmd::Memrel { set } => {
            let s = env.set(&set)?;
            let m = relations::memrel(&mut env.u, s);
            env.print_set(m.set())
        }
        Cmd::Wf { rel } => {
            let r = env.rel(&rel)?;
            let b = relations::is_wf(&env.u, r);
            env.print_bool(b)
        }
        Cmd::Ord { set } => {
            let s = env.set(&set)?;
            let t = ordinals::is_transset(&env.u, s);
            let o = ordinals::is_ord(&env.u, s);
            let l = ordinals::is_limit(&mut env.u, s);
            env.print_fields(
                "ord",
                &[
                    ("transset", t.to_string()),
                    ("ord", o.to_string()),
                    ("limit", l.to_string()),
                ],
            )
        }
        Cmd::Natrec { a, k, body } => {
            let (a, k) = (env.set(&a)?, env.set(&k)?);
            let r = match body {
                NatBody::Add => ordinals::nat_rec(&mut env.u, a, &|u, _, r| Ok(u.succ(r)), k)?,
                NatBody::Double => ordinals::nat_rec(
                    &mut env.u,
                    a,
                    &|u, _, r| {
                        let s = u.succ(r);
                        Ok(u.succ(s))
                    },
                    k,
                )?,
            };
            env.print_set(r)
        }
        Cmd::Lfp { op, bound, chain } => {
            let d = env.set(&bound)?;
            let h = fp::parse_op(&mut env.u, &op)?;
            let steps = fp::lfp_chain(&mut env.u, d, &h)?;
            if chain {
                let shown: Vec<String> = steps.iter().map(|&s| env.show(s)).collect();
                match env.format {
                    Format::Text => {
                        for s in shown {
                            writeln!(env.out, "{s}")?;
                        }
                    }
                    Format::Sexpr => writeln!(env.out, "(chain {})", shown.join(" "))?,
                }
                Ok(EXIT_OK)
            } else {
                env.print_set(*steps.last().unwrap())
            }
        }
        Cmd::Banach { x, y, f, g } => {
            let (x, y, f, g) = (env.set(&x)?, env.set(&y)?, env.set(&f)?, env.set(&g)?);
            let parts = fp::banach_decompose(&mut env.u, x, y, f, g)?;
            let mut fields = vec![
                ("XA", env.show(parts.xa)),
                ("XB", env.show(parts.xb)),
                ("YA", env.show(parts.ya)),
                ("YB", env.show(parts.yb)),
            ];
            match fp::schroeder_bernstein(&mut env.u, x, y, f, g) {
                Ok(h) => fields.push(("bijection", env.show(h))),
                Err(Error::NotInjective) => {}
                Err(e) => return Err(e.into()),
            }
            env.print_fields("banach", &fields)
        }
        Cmd::List { encode, sets } => {
            if encode {
                let items = sets
                    .iter()
                    .map(|s| env.set(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let l = dt::list_from(&mut env.u, &items);
                return env.print_set(l);
            }
            let [text] = sets.as_slice() else {
                return Err(Stop::Input(
                    "expected one set (or --encode with items)".into(),
                ));
            };
            let l = env.set(text)?;
            match dt::list_to_vec(&env.u, l) {
                Some(items) => {
                    let shown: Vec<String> = items.iter().map(|&s| env.show(s)).collect();
                    match env.format {
                        Format::Text => writeln!(env.out, "[{}]", shown.join(", "))?,
                        Format::Sexpr => writeln!(env.out, "(list{})", prefixed(&shown))?,
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(env.out, "not a list")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Cmd::Reflect { term } => {
            let t = env.set(&term)?;
            let r = dt::reflect(&mut env.u, t)?;
            env.print_set(r)
        }
        Cmd::Tf { op, label_fn, set } => {
            let z = env.set(&set)?;
            let r = match op {
                TfOp::Map => match label_fn {
                    LabelFn::Id => dt::tf_map(&mut env.u, &|_, x| Ok(x), z)?,
                    LabelFn::Succ => dt::tf_map(&mut env.u, &|u, x| Ok(u.succ(x)), z)?,
                },
                TfOp::Size => dt::tf_size(&mut env.u, z)?,
                TfOp::Preorder => dt::tf_preorder(&mut env.u, z)?,
            };
            env.print_set(r)
        }
        Cmd::Fin { set } => {
            let a = env.set(&set)?;
            let f = dt::fin_enum(&mut env.u, a)?;
            env.u.check_budget()?;
            env.print_set(f)
        }
        Cmd::Prop { cmd } => prop(env, cmd),
        Cmd::Selftest { suite, sequential } => {
            let sel: Selection = suite.parse().map_err(Stop::Input)?;
            let ctx = selftest::Ctx {
                seed,
                exec: if sequential {
                    Exec::Sequential
                } else {
                    Exec::Parallel
                },
            };
            let ok = selftest::run(sel, &ctx, env.out)?;
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn prefixed(items: &[String]) -> String {
    items.iter().map(|s| format!(" {s}")).collect()
}

/// Reads a hypothesis file: one proposition per line, `;` starts a comment.
pub fn read_hyps(path: &Path) -> Result<Context, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_hyps(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_hyps(text: &str) -> Result<Context, String> {
    let mut h = Context::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split(';').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = pl::parse_prop(line).map_err(|e| format!("line {}: {e}", i + 1))?;
        h.insert(p);
    }
    Ok(h)
}

fn load_hyps(path: &Option<PathBuf>) -> Result<Context, Stop> {
    match path {
        Some(p) => read_hyps(p).map_err(Stop::Input),
        None => Ok(Context::new()),
    }
}

fn prop_sexpr(p: &Prop) -> String {
    match p {
        Prop::Fls => "fls".into(),
        Prop::Var(v) => format!("(var {v})"),
        Prop::Imp(a, b) => format!("(imp {} {})", prop_sexpr(a), prop_sexpr(b)),
    }
}

fn show_prop(format: Format, p: &Prop) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Sexpr => prop_sexpr(p),
    }
}

fn show_valuation(format: Format, t: &Valuation) -> String {
    let atoms: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    match format {
        Format::Text => format!("{{{}}}", atoms.join(",")),
        Format::Sexpr => format!("(valuation{})", prefixed(&atoms)),
    }
}

fn falsified(env: &mut Env, t: &Valuation) -> Run {
    let v = show_valuation(env.format, t);
    match env.format {
        Format::Text => writeln!(env.out, "falsifiable: {v}")?,
        Format::Sexpr => writeln!(env.out, "(falsifiable {v})")?,
    }
    Ok(EXIT_NEGATIVE)
}

fn prop(env: &mut Env, cmd: PropCmd) -> Run {
    let parse = |s: &str| pl::parse_prop(s).map_err(Stop::from);
    match cmd {
        PropCmd::Valid { hyps, prop } => {
            let h = load_hyps(&hyps)?;
            let p = parse(&prop)?;
            match pl::falsifying_valuation(&h, &p) {
                None => {
                    writeln!(env.out, "valid")?;
                    Ok(EXIT_OK)
                }
                Some(t) => falsified(env, &t),
            }
        }
        PropCmd::Prove { hyps, prop, out } => {
            let h = load_hyps(&hyps)?;
            let p = parse(&prop)?;
            match pl::prove_complete(&h, &p) {
                Ok(d) => {
                    let text = pl::write_derivation(&d);
                    match out {
                        Some(path) => {
                            fs::write(&path, format!("{text}\n"))?;
                            writeln!(env.out, "proved {}", show_prop(env.format, &p))?;
                        }
                        None => writeln!(env.out, "{text}")?,
                    }
                    Ok(EXIT_OK)
                }
                Err(t) => falsified(env, &t),
            }
        }
        PropCmd::Check { file, hyps } => {
            let h = load_hyps(&hyps)?;
            let text = fs::read_to_string(&file)
                .map_err(|e| Stop::Input(format!("{}: {e}", file.display())))?;
            let d = pl::parse_derivation(&text).map_err(|e| Stop::Input(e.to_string()))?;
            let c = pl::check_derivation(&d, &h).map_err(|e| Stop::Input(e.to_string()))?;
            writeln!(env.out, "ok: {}", show_prop(env.format, &c))?;
            Ok(EXIT_OK)
        }
    }
}
