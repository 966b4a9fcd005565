//! Command-line front end.
//!
//! Exit codes: 0 success or "true", 1 "false" or rejected, 2 usage or parse
//! error, 3 operation not applicable to the given machine (for example a
//! question that is undecidable outside the synchronous class).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::asyncalg::{async_closure, complement_det, decide_empty_async, decide_finite_async, project_tape, taped_witness, ClosureOp};
use crate::automaton::MultiTapeAutomaton;
use crate::error::Error;
use crate::format::{parse_automaton, serialize_automaton, Machine};
use crate::intersect::{intersect, intersect_report};
use crate::lanes::{default_tape_ids, from_taped_model, to_taped_model};
use crate::simulate::simulate;
use crate::symbol::NWord;
use crate::sync::{decide, determinize_sync, is_synchronous, sync_boolean, sync_regular, BoolOp, DecisionKind, RegularOp};
use crate::synctransform::{check_synchronized, check_synchronized_det, synchronize};
use crate::taped::TapedAutomaton;
use crate::words::{convolve, deconvolve, PaddedWord};
use crate::zoo::{pcp_encode, pcp_solve_bounded, zoo_build, zoo_taped, CATALOG};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mta", version, about = "Multi-tape finite automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate a machine on an n-word and print the verdict.
    Run { file: PathBuf, #[arg(last = true)] word: Vec<String> },
    /// Exit 0 if the n-word is accepted, 1 otherwise.
    Accepts { file: PathBuf, #[arg(last = true)] word: Vec<String> },
    /// Print a shortest accepting run.
    Trace { file: PathBuf, #[arg(last = true)] word: Vec<String> },
    /// Check a document and print the machine's properties.
    Validate { file: PathBuf },
    /// Print the convolution of an n-word.
    Convolve { #[arg(last = true)] word: Vec<String> },
    /// Read back a convolution given as space-separated columns.
    Deconvolve { #[arg(long)] tapes: usize, columns: Vec<String> },
    /// Closure operations; the result is printed as a document.
    Op {
        op: OpName,
        file: PathBuf,
        other: Option<PathBuf>,
        /// Component for project/generalize, counted from 1.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Decision procedures.
    Decide { kind: DecideName, file: PathBuf, other: Option<PathBuf> },
    /// Convert an s-synchronized one-way machine to synchronous form.
    Synchronize { file: PathBuf, #[arg(long)] s: usize },
    /// Check s-synchrony, or find the least s when --s is omitted.
    CheckSync { file: PathBuf, #[arg(long)] s: Option<usize> },
    /// Bounded intersection of two one-way machines; report on stderr.
    IntersectAsync {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1000)]
        max_states: usize,
        #[arg(long, default_value_t = 8)]
        max_delay: usize,
    },
    /// Catalog of witness languages.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Search a PCP instance through the bounded intersection. Pairs are
    /// written `x/y`.
    Pcp {
        pairs: Vec<String>,
        #[arg(long, default_value_t = 5000)]
        max_states: usize,
        #[arg(long, default_value_t = 6)]
        max_delay: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ZooAction {
    List,
    Emit {
        name: String,
        /// Emit the taped form.
        #[arg(long)]
        taped: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OpName {
    Complement,
    Union,
    Intersect,
    Concat,
    Star,
    Reverse,
    Project,
    Generalize,
    Determinize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DecideName {
    Empty,
    Universal,
    Finite,
    Disjoint,
    Subset,
    Equiv,
}

/// A failure carrying its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotOneWay | Error::NotDeterministic | Error::NotSynchronous(_) => EXIT_INAPPLICABLE,
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

fn inapplicable(msg: impl Into<String>) -> Fail {
    Fail(EXIT_INAPPLICABLE, msg.into())
}

type Out<'a> = &'a mut dyn Write;

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let sink: Out = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "mta: {msg}");
            code
        }
    }
}

fn load(path: &Path) -> Result<Machine, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse_automaton(&text).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_def1(path: &Path) -> Result<MultiTapeAutomaton, Fail> {
    Ok(match load(path)? {
        Machine::Def1(m) => m,
        Machine::Taped(t) => from_taped_model(&t),
    })
}

fn load_taped(path: &Path) -> Result<TapedAutomaton, Fail> {
    match load(path)? {
        Machine::Taped(t) => Ok(t),
        Machine::Def1(m) => {
            if !m.is_one_way() {
                return Err(inapplicable("the bounded intersection needs one-way machines"));
            }
            Ok(to_taped_model(&m, &default_tape_ids(m.tapes()))?)
        }
    }
}

fn word(parts: &[String]) -> NWord {
    NWord::from_strs(parts)
}

fn emit(out: Out, m: impl Into<Machine>) -> Result<i32, Fail> {
    let _ = write!(out, "{}", serialize_automaton(&m.into()));
    Ok(EXIT_TRUE)
}

fn verdict(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

fn require_sync(m: &MultiTapeAutomaton, what: &str) -> Result<(), Fail> {
    if is_synchronous(m) {
        Ok(())
    } else {
        Err(inapplicable(format!(
            "{what} needs synchronous machines; this one is not certified synchronous"
        )))
    }
}

fn component(k: Option<usize>, n: usize) -> Result<usize, Fail> {
    match k {
        Some(k) if (1..=n).contains(&k) => Ok(k - 1),
        Some(k) => Err(Fail(EXIT_USAGE, format!("--k must be in 1..={n}, got {k}"))),
        None => Err(Fail(EXIT_USAGE, "--k is required".into())),
    }
}

fn dispatch(cmd: Command, out: Out, err: Out) -> Result<i32, Fail> {
    match cmd {
        Command::Run { file, word: w } => {
            let m = load_def1(&file)?;
            let v = simulate(&m, &word(&w))?;
            let _ = writeln!(out, "{}", if v.accepted { "accept" } else { "reject" });
            Ok(verdict(v.accepted))
        }
        Command::Accepts { file, word: w } => {
            let m = load_def1(&file)?;
            Ok(verdict(simulate(&m, &word(&w))?.accepted))
        }
        Command::Trace { file, word: w } => {
            let m = load_def1(&file)?;
            let v = simulate(&m, &word(&w))?;
            match v.trace {
                Some(run) => {
                    for c in run {
                        let heads: Vec<String> = c.heads.iter().map(usize::to_string).collect();
                        let _ = writeln!(out, "{} [{}]", c.state, heads.join(","));
                    }
                    Ok(EXIT_TRUE)
                }
                None => {
                    let _ = writeln!(out, "reject");
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Validate { file } => {
            match load(&file)? {
                Machine::Def1(m) => {
                    let _ = writeln!(out, "valid def1 machine: {} states, {} tapes", m.states().len(), m.tapes());
                    let _ = writeln!(out, "one-way: {}", m.is_one_way());
                    let _ = writeln!(out, "deterministic: {}", m.is_deterministic());
                    let _ = writeln!(out, "synchronous: {}", is_synchronous(&m));
                }
                Machine::Taped(t) => {
                    let _ = writeln!(out, "valid taped machine: {} states, {} tapes", t.states().len(), t.tapes().len());
                }
            }
            Ok(EXIT_TRUE)
        }
        Command::Convolve { word: w } => {
            let _ = writeln!(out, "{}", convolve(&word(&w)));
            Ok(EXIT_TRUE)
        }
        Command::Deconvolve { tapes, columns } => {
            let p = PaddedWord::parse(tapes, &columns.join(" "))?;
            let x = deconvolve(&p)?;
            for c in x.to_strings() {
                let _ = writeln!(out, "{c}");
            }
            Ok(EXIT_TRUE)
        }
        Command::Op { op, file, other, k } => run_op(op, &file, other.as_deref(), k, out),
        Command::Decide { kind, file, other } => run_decide(kind, &file, other.as_deref(), out),
        Command::Synchronize { file, s } => {
            let m = load_def1(&file)?;
            if !m.is_one_way() {
                return Err(inapplicable("synchronize needs a one-way machine"));
            }
            if !check_synchronized(&m, s)?.synchronized {
                return Err(inapplicable(format!("the machine is not {s}-synchronized")));
            }
            emit(out, synchronize(&m, s)?)
        }
        Command::CheckSync { file, s } => {
            let m = load_def1(&file)?;
            match s {
                Some(s) => {
                    let r = check_synchronized(&m, s)?;
                    let _ = writeln!(out, "{}", r.synchronized);
                    if let Some(w) = r.witness {
                        let _ = writeln!(out, "witness input: {}", w.input);
                        for c in &w.run {
                            let heads: Vec<String> = c.heads.iter().map(usize::to_string).collect();
                            let _ = writeln!(out, "  {} [{}]", c.state, heads.join(","));
                        }
                    }
                    Ok(verdict(r.synchronized))
                }
                None => match check_synchronized_det(&m)? {
                    Some(s) => {
                        let _ = writeln!(out, "{s}");
                        Ok(EXIT_TRUE)
                    }
                    None => {
                        let _ = writeln!(out, "asynchronous");
                        Ok(EXIT_FALSE)
                    }
                },
            }
        }
        Command::IntersectAsync { a, b, max_states, max_delay } => {
            let a = load_taped(&a)?;
            let b = load_taped(&b)?;
            let r = intersect(&a, &b, max_states, max_delay)?;
            let _ = write!(out, "{}", serialize_automaton(&Machine::Taped(r.automaton.clone())));
            let _ = write!(err, "{}", intersect_report(&r));
            Ok(EXIT_TRUE)
        }
        Command::Zoo { action } => match action {
            ZooAction::List => {
                for e in CATALOG {
                    let class = if e.synchronous {
                        "synchronous"
                    } else if e.one_way {
                        "one-way"
                    } else {
                        "two-way"
                    };
                    let _ = writeln!(out, "{:<12} {:<12} {}", e.name, class, e.language);
                }
                Ok(EXIT_TRUE)
            }
            ZooAction::Emit { name, taped } => {
                if taped {
                    emit(out, zoo_taped(&name)?)
                } else {
                    emit(out, zoo_build(&name)?)
                }
            }
        },
        Command::Pcp { pairs, max_states, max_delay } => {
            let mut inst = Vec::new();
            for p in &pairs {
                let Some((x, y)) = p.split_once('/') else {
                    return Err(Fail(EXIT_USAGE, format!("pair {p:?} is not of the form x/y")));
                };
                inst.push((x.to_string(), y.to_string()));
            }
            let (xs, ys) = pcp_encode(&inst)?;
            let r = intersect(&xs, &ys, max_states, max_delay)?;
            let _ = writeln!(out, "intersection status: {}", r.status);
            match taped_witness(&r.automaton) {
                Some(w) => {
                    let s = w.to_strings();
                    let _ = writeln!(out, "solution: word {} indices {}", s[0], s[1]);
                    Ok(EXIT_TRUE)
                }
                None => {
                    let _ = writeln!(out, "no solution found within the bounds");
                    if let Some(seq) = pcp_solve_bounded(&inst, 8) {
                        let seq: Vec<String> = seq.iter().map(usize::to_string).collect();
                        let _ = writeln!(out, "index search finds {}", seq.join(""));
                    }
                    Ok(EXIT_FALSE)
                }
            }
        }
    }
}

fn run_op(op: OpName, file: &Path, other: Option<&Path>, k: Option<usize>, out: Out) -> Result<i32, Fail> {
    let a = load_def1(file)?;
    let b = other.map(load_def1).transpose()?;
    let binary = matches!(op, OpName::Union | OpName::Intersect | OpName::Concat);
    if binary != b.is_some() {
        let need = if binary { "needs two machines" } else { "takes one machine" };
        return Err(Fail(EXIT_USAGE, format!("{op:?} {need}")));
    }
    let all_sync = is_synchronous(&a) && b.as_ref().is_none_or(is_synchronous);
    let one_way = a.is_one_way() && b.as_ref().is_none_or(MultiTapeAutomaton::is_one_way);
    let result = match op {
        OpName::Complement if all_sync => sync_boolean(BoolOp::Complement, &a, None)?,
        OpName::Complement if one_way && a.is_deterministic() => complement_det(&a)?,
        OpName::Complement => {
            return Err(inapplicable("complement needs a synchronous or a deterministic one-way machine"))
        }
        OpName::Intersect => {
            if !all_sync {
                return Err(inapplicable(
                    "one-way machines are not closed under intersection; use intersect-async",
                ));
            }
            sync_boolean(BoolOp::Intersect, &a, b.as_ref())?
        }
        OpName::Union | OpName::Concat | OpName::Star | OpName::Reverse => {
            if all_sync && op != OpName::Union {
                let r = match op {
                    OpName::Concat => RegularOp::Concat,
                    OpName::Star => RegularOp::Star,
                    _ => RegularOp::Reverse,
                };
                sync_regular(r, &a, b.as_ref())?
            } else if all_sync {
                sync_boolean(BoolOp::Union, &a, b.as_ref())?
            } else if one_way {
                let c = match op {
                    OpName::Union => ClosureOp::Union,
                    OpName::Concat => ClosureOp::Concat,
                    OpName::Star => ClosureOp::Star,
                    _ => ClosureOp::Reverse,
                };
                async_closure(c, &a, b.as_ref())?
            } else {
                return Err(inapplicable("closure operations need one-way machines"));
            }
        }
        OpName::Project => {
            let k = component(k, a.tapes())?;
            if all_sync {
                sync_regular(RegularOp::Project(k), &a, None)?
            } else if one_way {
                project_tape(&a, k)?
            } else {
                return Err(inapplicable("projection needs a one-way machine"));
            }
        }
        OpName::Generalize => {
            let k = component(k, a.tapes())?;
            require_sync(&a, "generalization")?;
            sync_regular(RegularOp::Generalize(k), &a, None)?
        }
        OpName::Determinize => {
            require_sync(&a, "determinization")?;
            determinize_sync(&a)?
        }
    };
    emit(out, result)
}

fn run_decide(kind: DecideName, file: &Path, other: Option<&Path>, out: Out) -> Result<i32, Fail> {
    let kind = match kind {
        DecideName::Empty => DecisionKind::Empty,
        DecideName::Universal => DecisionKind::Universal,
        DecideName::Finite => DecisionKind::Finite,
        DecideName::Disjoint => DecisionKind::Disjoint,
        DecideName::Subset => DecisionKind::Subset,
        DecideName::Equiv => DecisionKind::Equiv,
    };
    let a = load_def1(file)?;
    let b = other.map(load_def1).transpose()?;
    if kind.binary() != b.is_some() {
        return Err(Fail(EXIT_USAGE, format!("{kind} takes {} machine(s)", if kind.binary() { 2 } else { 1 })));
    }
    let all_sync = is_synchronous(&a) && b.as_ref().is_none_or(is_synchronous);
    let (holds, witness) = if all_sync {
        let d = decide(kind, &a, b.as_ref())?;
        (d.holds, d.witness)
    } else {
        match kind {
            DecisionKind::Empty | DecisionKind::Finite if a.is_one_way() => {
                if kind == DecisionKind::Empty {
                    let d = decide_empty_async(&a)?;
                    (d.holds, d.witness)
                } else {
                    (decide_finite_async(&a)?, None)
                }
            }
            DecisionKind::Empty | DecisionKind::Finite => {
                return Err(inapplicable(format!("{kind} is undecidable for two-way machines")))
            }
            _ => {
                return Err(inapplicable(format!(
                    "{kind} is undecidable for machines that are not synchronous; refusing"
                )))
            }
        }
    };
    let _ = writeln!(out, "{holds}");
    if let Some(w) = witness {
        let _ = writeln!(out, "witness: {w}");
    }
    Ok(verdict(holds))
}
