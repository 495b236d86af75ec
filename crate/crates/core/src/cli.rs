//! The `ovc` command line: solve, gen, verify, winners and play.
//!
//! Exit codes: 0 success, 1 disagreement or aborted play, 2 invalid input,
//! 3 resource cap exceeded.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::corpus::{random_instance, RandomParams};
use crate::fast::{fast_decide, FastError};
use crate::formula::Formula;
use crate::game::{ChairAction, ControlInstance, ControlType, GameState, GoalMode, Phase};
use crate::io::{instance_to_json, load_instance, ElectionFile, IoError};
use crate::model::{CandidateSet, ElectionSystem};
use crate::reductions::{
    reduce_hitting_set, reduce_qbf, reduce_sat_1cand, reduce_taut, HittingSetInstance, HsVariant, QbfFamily,
    QbfPrimeInstance,
};
use crate::solver::{adversary_best_reply, best_action_at, solve, SolveError, SolverConfig, DEFAULT_MAX_CANDIDATES};
use crate::systems::SystemId;
use crate::verify::{run_suite, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ovc", version, about = "Online voter control: solve, generate and verify instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Exact,
    Fast,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the chair can guarantee the goal.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Exact)]
        engine: Engine,
        #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
        max_candidates: usize,
    },
    /// Write a generated instance as JSON.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        /// Write here instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run an equivalence suite and report every case.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        limit: Option<usize>,
        /// Also dump the full report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the winner set of an election.
    Winners {
        #[arg(long)]
        system: SystemId,
        #[arg(long)]
        election: PathBuf,
    },
    /// Play the chair against the engine.
    Play {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
        max_candidates: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Qbf {
        #[arg(long)]
        family: QbfFamily,
        #[arg(long)]
        formula: String,
    },
    Sat1c {
        #[arg(long)]
        formula: String,
    },
    Taut {
        #[arg(long)]
        formula: String,
    },
    Hs {
        #[arg(long)]
        sets_file: PathBuf,
        /// Overrides the bound given in the file.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "cc")]
        variant: HsVariant,
    },
    Random {
        #[arg(long)]
        control: ControlType,
        #[arg(long)]
        mode: GoalMode,
        #[arg(long, default_value_t = 3)]
        candidates: usize,
        #[arg(long, default_value_t = 2)]
        past: usize,
        #[arg(long, default_value_t = 2)]
        future: usize,
        #[arg(long, default_value_t = 1)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code plus a message for the error stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure(pub i32, pub String);

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        };
        Failure(code, e.to_string())
    }
}

impl From<FastError> for Failure {
    fn from(e: FastError) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

fn invalid(msg: impl ToString) -> Failure {
    Failure(EXIT_INVALID, msg.to_string())
}

/// Parses `args` (program name first) and runs the command. Play reads the
/// chair's moves from `input`.
pub fn run_command<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, input, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Solve {
            instance,
            engine,
            max_candidates,
        } => cmd_solve(&instance, engine, max_candidates, out),
        Command::Gen { what, out: path } => {
            let inst = generate(what)?;
            let text = instance_to_json(&inst);
            match path {
                Some(p) => fs::write(&p, text + "\n").map_err(|e| invalid(format!("{}: {e}", p.display())))?,
                None => writeln!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            seed,
            limit,
            json,
        } => {
            let report = run_suite(suite, &VerifyOptions { seed, limit });
            out.write_all(report.to_text().as_bytes())?;
            if let Some(p) = json {
                fs::write(&p, report.to_json() + "\n").map_err(|e| invalid(format!("{}: {e}", p.display())))?;
            }
            Ok(if report.is_clean() { EXIT_OK } else { EXIT_DISAGREE })
        }
        Command::Winners { system, election } => {
            let e = ElectionFile::load(&election)?;
            let c: CandidateSet = e.candidates.iter().cloned().collect();
            writeln!(out, "{}", render_set(&system.winners(&c, &e.ballots)))?;
            Ok(EXIT_OK)
        }
        Command::Play {
            instance,
            max_candidates,
        } => {
            let inst = load_instance(&instance)?;
            let cfg = SolverConfig::auto_for(inst.control, &inst.system).with_max_candidates(max_candidates);
            play_loop(&inst, &cfg, input, out)
        }
    }
}

fn cmd_solve(path: &Path, engine: Engine, max_candidates: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = load_instance(path)?;
    match engine {
        Engine::Exact => {
            let cfg = SolverConfig::auto_for(inst.control, &inst.system).with_max_candidates(max_candidates);
            let v = solve(&inst, &cfg)?;
            writeln!(out, "{}", v.answer)?;
            if let Some(a) = v.witness {
                writeln!(out, "witness: {a}")?;
            }
            writeln!(out, "nodes: {}", v.stats.nodes)?;
        }
        Engine::Fast => {
            let d = fast_decide(&inst)?;
            writeln!(out, "{}", if d.chair_wins { "chair-wins" } else { "chair-loses" })?;
            if d.chair_wins {
                writeln!(out, "witness: {}", d.action)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn parse_formula(s: &str) -> Result<Formula, Failure> {
    Formula::parse(s).map_err(invalid)
}

/// Builds the instance a `gen` subcommand describes.
pub fn generate(what: GenCommand) -> Result<ControlInstance, Failure> {
    Ok(match what {
        GenCommand::Qbf { family, formula } => {
            let q = QbfPrimeInstance::new(parse_formula(&formula)?).map_err(invalid)?;
            reduce_qbf(&q, family)
        }
        GenCommand::Sat1c { formula } => reduce_sat_1cand(&parse_formula(&formula)?).map_err(invalid)?,
        GenCommand::Taut { formula } => reduce_taut(&parse_formula(&formula)?),
        GenCommand::Hs { sets_file, k, variant } => {
            let text = fs::read_to_string(&sets_file).map_err(|e| invalid(format!("{}: {e}", sets_file.display())))?;
            let h = HittingSetInstance::parse_sets_file(&text, k).map_err(invalid)?;
            reduce_hitting_set(&h, variant)
        }
        GenCommand::Random {
            control,
            mode,
            candidates,
            past,
            future,
            budget,
            seed,
        } => {
            if candidates == 0 {
                return Err(invalid("--candidates must be at least 1"));
            }
            random_instance(
                RandomParams {
                    control,
                    mode,
                    candidates,
                    past,
                    future,
                    budget,
                },
                seed,
            )
        }
    })
}

fn render_set(s: &CandidateSet) -> String {
    let names: Vec<&str> = s.iter().map(|c| c.as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Text-mode game: the chair's moves come from `input`, one action name per
/// line; `hint` repeats the suggestion and `quit` abandons the game.
pub fn play_loop(
    inst: &ControlInstance,
    cfg: &SolverConfig,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut state = GameState::new(inst).map_err(invalid)?;
    let goal = inst.goal();
    writeln!(
        out,
        "{} {} control under {}, candidates {}, sigma {}, distinguished {}",
        inst.mode,
        inst.control,
        inst.system,
        render_set(&inst.candidate_set()),
        render_order(&inst.sigma),
        inst.distinguished
    )?;
    writeln!(out, "goal: {}", describe_goal(inst.mode, &goal.up, &goal.down))?;
    loop {
        match state.phase().clone() {
            Phase::Decide { voter, order } => {
                let legal = state.legal_actions();
                let names: Vec<&str> = legal.iter().map(|a| a.name()).collect();
                let hint = match best_action_at(&state, cfg) {
                    Ok(a) => a.name().to_string(),
                    Err(SolveError::ChairLoses) => "none (the goal can no longer be forced)".to_string(),
                    Err(e) => return Err(e.into()),
                };
                writeln!(
                    out,
                    "voter {voter} votes {}; budget used {}/{}",
                    render_order(&order),
                    state.budget_used(),
                    inst.budget_or_zero()
                )?;
                writeln!(out, "hint: {hint}")?;
                let action = loop {
                    writeln!(out, "choose [{}]:", names.join(" "))?;
                    let mut line = String::new();
                    if input.read_line(&mut line)? == 0 {
                        writeln!(out, "aborted at end of input")?;
                        return finish_partial(&state, out);
                    }
                    match line.trim() {
                        "quit" | "q" => {
                            writeln!(out, "quit")?;
                            return finish_partial(&state, out);
                        }
                        "hint" => writeln!(out, "hint: {hint}")?,
                        word => match word.parse::<ChairAction>() {
                            Ok(a) if legal.contains(&a) => break a,
                            _ => writeln!(out, "illegal action {word:?}")?,
                        },
                    }
                };
                state.apply(action).map_err(invalid)?;
                writeln!(out, "{}", state.history().last().expect("move recorded"))?;
            }
            Phase::Reveal { .. } => {
                let order = adversary_best_reply(&state, cfg)?;
                state.reveal(order).map_err(invalid)?;
                writeln!(out, "{}", state.history().last().expect("move recorded"))?;
            }
            Phase::Done => break,
        }
    }
    let winners = state.finalize_and_evaluate().map_err(invalid)?;
    let met = goal.holds(&winners);
    if let Some(p) = state.partition_outcome() {
        writeln!(out, "first round: left {} right {}", render_set(&p.w1), render_set(&p.w2))?;
    }
    writeln!(out, "winners: {}", render_set(&winners))?;
    writeln!(out, "goal {}", if met { "met" } else { "not met" })?;
    write_transcript(&state, out)?;
    Ok(EXIT_OK)
}

fn finish_partial(state: &GameState<'_>, out: &mut dyn Write) -> Result<i32, Failure> {
    write_transcript(state, out)?;
    Ok(EXIT_DISAGREE)
}

fn write_transcript(state: &GameState<'_>, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "transcript:")?;
    for m in state.history() {
        writeln!(out, "  {m}")?;
    }
    Ok(())
}

fn render_order(o: &crate::model::PreferenceOrder) -> String {
    o.to_string()
}

fn describe_goal(mode: GoalMode, up: &CandidateSet, down: &CandidateSet) -> String {
    match mode {
        GoalMode::Constructive => format!("some winner in {}", render_set(up)),
        GoalMode::Destructive => format!("no winner in {}", render_set(down)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["ovc"];
        argv.extend_from_slice(args);
        let code = run_command(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bad_arguments_exit_two() {
        assert_eq!(run(&["solve"], "").0, EXIT_INVALID);
        assert_eq!(run(&["verify", "--suite", "nope"], "").0, EXIT_INVALID);
        assert_eq!(run(&["--help"], "").0, EXIT_OK);
    }

    #[test]
    fn gen_bad_formula_exit_two() {
        let (code, _, err) = run(&["gen", "sat1c", "--formula", "(x1|"], "");
        assert_eq!(code, EXIT_INVALID);
        assert!(err.starts_with("error:"));
        let (code, _, _) = run(&["gen", "qbf", "--family", "ccdv", "--formula", "x1"], "");
        assert_eq!(code, EXIT_INVALID);
    }

    #[test]
    fn gen_to_stdout_is_json() {
        let (code, out, _) = run(&["gen", "taut", "--formula", "(x1|!x1)"], "");
        assert_eq!(code, 0);
        assert!(crate::io::instance_from_json(&out).is_ok());
    }
}
