//! The `sig` command line. Everything goes through [`run_command`], which
//! returns the rendered output and the exit code instead of printing, so
//! the tests can drive it directly.
//!
//! Exit codes: 0 for true or pass, 1 for false or violations found, 2 for
//! bad input or usage.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dot::{export_dot, DotSource};
use crate::error::{Error, Result};
use crate::etl::EtlModel;
use crate::format::{parse_etl, parse_game, parse_model, parse_observation, render_etl, render_model};
use crate::gen::random_formula;
use crate::ids::WorldId;
use crate::logic::{
    axiom_soundness_suite, check_invariance, eval_del, eval_etl, largest_g_bisimulation, parse_formula,
    AxiomConfig, Formula,
};
use crate::normality::check_normality;
use crate::rules::{EpistemicModel, GameStructure, ObservationModel};
use crate::structure::{check_isomorphism, check_non_informative, generate_game_tree, tracking_map};
use crate::update::{generate_run, product};

#[derive(Debug, Parser)]
#[command(name = "sig", version, about = "Game runs from rules and player assumptions")]
pub struct Cli {
    /// Worker threads for the parallel checks.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Inputs {
    pub game: PathBuf,
    pub model: PathBuf,
    pub obs: PathBuf,
}

#[derive(Debug, Args)]
pub struct Sampling {
    #[arg(long, env = "SIG_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Semantics {
    Del,
    Etl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a game file, and optionally a model and an observation file
    /// against it.
    Validate {
        game: PathBuf,
        model: Option<PathBuf>,
        obs: Option<PathBuf>,
    },
    /// Print the update product M ⊗ U as a model file.
    Product {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        name: Option<String>,
    },
    /// Generate the run model up to a depth.
    Run {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        etl: Option<PathBuf>,
        /// Write the frontier-trimmed model to `--etl` instead.
        #[arg(long)]
        trimmed: bool,
    },
    /// Evaluate a formula.
    Eval {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        formula: String,
        /// Defaults to the model's point; all worlds when there is none.
        #[arg(long)]
        world: Option<String>,
        #[arg(long, value_enum, default_value_t = Semantics::Del)]
        semantics: Semantics,
        /// Run depth for `--semantics etl`.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check normality of an ETL file (`normal model.etl obs.o`) or of a
    /// generated run (`normal game.g model.m obs.o --depth k`).
    Normal {
        #[arg(num_args = 2..=3, required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Check the frontier-trimmed run with no exemptions.
        #[arg(long)]
        trimmed: bool,
    },
    /// Largest G-bisimulation between two models over one game.
    Bisim {
        game: PathBuf,
        left: PathBuf,
        right: PathBuf,
        /// Check `w,u` and, with `--obs`, formula invariance on it.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        obs: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// The epistemic game tree generated from a state.
    Tree {
        game: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Tracking map, non-informative check and isomorphism check for a
    /// certainty model.
    Trackiso {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Axiom soundness suite on a model.
    Axioms {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long, default_value_t = 2)]
        formula_depth: usize,
    },
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, verdict: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: if verdict { 0 } else { 1 },
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                },
            };
        }
    };
    let run = || dispatch(cli.command);
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => {
                return Outcome {
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                    code: 2,
                }
            }
        },
        None => run(),
    };
    match result {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn load_game(path: &Path) -> Result<Arc<GameStructure>> {
    Ok(Arc::new(parse_game(&read(path)?)?))
}

fn load_inputs(inputs: &Inputs) -> Result<(EpistemicModel, ObservationModel)> {
    let game = load_game(&inputs.game)?;
    let model = parse_model(&read(&inputs.model)?, &game)?;
    let obs = parse_observation(&read(&inputs.obs)?, game.signature())?;
    Ok((model, obs))
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate { game, model, obs } => validate(&game, model.as_deref(), obs.as_deref()),
        Command::Product { inputs, name } => {
            let (m, u) = load_inputs(&inputs)?;
            let p = product(&m, &u)?;
            if p.is_empty() {
                return Ok(Outcome::ok("# the product is empty: no world enables any action\n".into(), true));
            }
            Ok(Outcome::ok(render_model(p.model(), name.as_deref().unwrap_or("product")), true))
        }
        Command::Run {
            inputs,
            depth,
            dot,
            etl,
            trimmed,
        } => {
            let (m, u) = load_inputs(&inputs)?;
            let run = generate_run(&m, &u, depth)?;
            let n = run.etl();
            let mut out = String::new();
            writeln!(out, "worlds\t{}", run.world_count()).unwrap();
            let sizes: Vec<String> = (0..=depth).map(|k| run.layer_size(k).to_string()).collect();
            writeln!(out, "layers\t{}", sizes.join(" ")).unwrap();
            writeln!(out, "action_edges\t{}", n.transition_count()).unwrap();
            writeln!(out, "epistemic_edges\t{}", n.proper_epistemic_edge_count()).unwrap();
            for (i, w, v) in n.proper_epistemic_edges() {
                writeln!(
                    out,
                    "edge\t{}\t{}\t{}",
                    n.signature().player_name(i),
                    n.world_name(w),
                    n.world_name(v)
                )
                .unwrap();
            }
            if let Some(path) = dot {
                export_dot(DotSource::Run(&run), path)?;
            }
            if let Some(path) = etl {
                let text = if trimmed {
                    render_etl(&run.frontier_trimmed())
                } else {
                    render_etl(n)
                };
                std::fs::write(path, text)?;
            }
            Ok(Outcome::ok(out, true))
        }
        Command::Eval {
            inputs,
            formula,
            world,
            semantics,
            depth,
        } => {
            let (m, u) = load_inputs(&inputs)?;
            let f = parse_formula(&formula, m.signature())?;
            let worlds: Vec<WorldId> = match (world, m.point()) {
                (Some(name), _) => vec![m.require_world(&name)?],
                (None, Some(p)) => vec![p],
                (None, None) => m.worlds().collect(),
            };
            let needed = f.action_depth();
            let etl = match semantics {
                Semantics::Del => None,
                Semantics::Etl => {
                    let depth = depth.unwrap_or(needed.max(2));
                    if depth < needed {
                        return Err(Error::DepthTooSmall { depth, needed });
                    }
                    Some(generate_run(&m, &u, depth)?)
                }
            };
            let mut out = String::new();
            let mut all = true;
            for w in worlds {
                let value = match &etl {
                    None => eval_del(&m, w, &u, &f)?,
                    // root worlds come first in the run, in model order
                    Some(run) => eval_etl(run.etl(), w, &f)?,
                };
                all &= value;
                writeln!(out, "{}\t{value}", m.world_name(w)).unwrap();
            }
            Ok(Outcome::ok(out, all))
        }
        Command::Normal { files, depth, trimmed } => normal(&files, depth, trimmed),
        Command::Bisim {
            game,
            left,
            right,
            pair,
            obs,
            sampling,
        } => {
            let g = load_game(&game)?;
            let m = parse_model(&read(&left)?, &g)?;
            let n = parse_model(&read(&right)?, &g)?;
            let z = largest_g_bisimulation(&m, &n)?;
            let mut out = String::new();
            for &(w, u) in z.pairs() {
                writeln!(out, "pair\t{}\t{}", m.world_name(w), n.world_name(u)).unwrap();
            }
            let Some(pair) = pair else {
                return Ok(Outcome::ok(out, true));
            };
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| Error::parse(1, 1, "expected `--pair w,u`"))?;
            let (w, u) = (m.require_world(a.trim())?, n.require_world(b.trim())?);
            if !z.contains(w, u) {
                writeln!(out, "bisimilar\tfalse").unwrap();
                return Ok(Outcome::ok(out, false));
            }
            writeln!(out, "bisimilar\ttrue").unwrap();
            let Some(obs) = obs else {
                return Ok(Outcome::ok(out, true));
            };
            let u_model = parse_observation(&read(&obs)?, g.signature())?;
            let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
            let corpus: Vec<Formula> = (0..sampling.samples)
                .map(|_| random_formula(&mut rng, g.signature(), 2, 8))
                .collect();
            let report = check_invariance(&m, w, &n, u, &u_model, &corpus)?;
            writeln!(out, "invariance\t{}\t{}", report.checked, report.disagreements.len()).unwrap();
            for k in &report.disagreements {
                writeln!(out, "disagree\t{}", corpus[*k].display(g.signature())).unwrap();
            }
            Ok(Outcome::ok(out, report.passed()))
        }
        Command::Tree { game, root, depth, dot } => {
            let g = load_game(&game)?;
            let tree = generate_game_tree(&g, g.require_state(&root)?, depth)?;
            let n = tree.etl();
            let mut out = String::new();
            writeln!(out, "nodes\t{}", tree.node_count()).unwrap();
            for (i, x, y) in n.proper_epistemic_edges() {
                writeln!(
                    out,
                    "frown\t{}\t{}\t{}",
                    n.signature().player_name(i),
                    n.world_name(x),
                    n.world_name(y)
                )
                .unwrap();
            }
            if let Some(path) = dot {
                export_dot(DotSource::Tree(&tree), path)?;
            }
            Ok(Outcome::ok(out, true))
        }
        Command::Trackiso { inputs, depth } => {
            let (m, u) = load_inputs(&inputs)?;
            if !m.is_certainty() {
                return Err(Error::NotCertainty(m.world_count()));
            }
            let run = generate_run(&m, &u, depth)?;
            let tree = generate_game_tree(m.game(), m.assign(WorldId(0)), depth)?;
            let g = tracking_map(&run, &tree);
            let ni = check_non_informative(&u, &run);
            let iso = check_isomorphism(&g, &run, &tree)?;
            let mut out = String::new();
            for (k, x) in g.iter().enumerate() {
                let image = x.map_or("-", |x| tree.etl().world_name(x));
                writeln!(out, "track\t{}\t{image}", run.world_name(WorldId::new(k))).unwrap();
            }
            writeln!(out, "NONINFORMATIVE\t{}\t{}", ni.non_informative(), ni.total).unwrap();
            writeln!(out, "ISOMORPHISM\t{}\t{}", iso.isomorphic(), iso.total).unwrap();
            let agree = ni.non_informative() == iso.isomorphic();
            writeln!(out, "AGREE\t{agree}").unwrap();
            out.push_str(&ni.render(&run));
            out.push_str(&iso.render(&run, &tree));
            Ok(Outcome::ok(out, agree && iso.isomorphic()))
        }
        Command::Axioms {
            inputs,
            sampling,
            levels,
            formula_depth,
        } => {
            let (m, u) = load_inputs(&inputs)?;
            let config = AxiomConfig {
                seed: sampling.seed,
                samples: sampling.samples,
                formula_depth,
                levels,
                ..Default::default()
            };
            let report = axiom_soundness_suite(&m, &u, &config)?;
            let mut out = report.render();
            writeln!(out, "TOTAL\t{}\t{}", report.total_instances(), report.total_violations()).unwrap();
            Ok(Outcome::ok(out, report.passed()))
        }
    }
}

fn validate(game: &Path, model: Option<&Path>, obs: Option<&Path>) -> Result<Outcome> {
    let g = load_game(game)?;
    let sig = g.signature();
    let mut out = String::new();
    writeln!(
        out,
        "game\t{}\t{} players\t{} actions\t{} states\t{} transitions",
        g.name(),
        sig.player_count(),
        sig.action_count(),
        g.state_count(),
        g.transition_count()
    )
    .unwrap();
    if let Some(path) = model {
        let m = parse_model(&read(path)?, &g)?;
        writeln!(out, "model\t{} worlds", m.world_count()).unwrap();
    }
    if let Some(path) = obs {
        let u = parse_observation(&read(path)?, sig)?;
        writeln!(out, "obsmodel\t{}", u.name()).unwrap();
    }
    Ok(Outcome::ok(out, true))
}

fn normal(files: &[PathBuf], depth: usize, trimmed: bool) -> Result<Outcome> {
    let (n, obs, frontier): (EtlModel, ObservationModel, _) = match files {
        [etl, obs] => {
            let n = parse_etl(&read(etl)?)?;
            let u = parse_observation(&read(obs)?, n.signature())?;
            (n, u, None)
        }
        [game, model, obs] => {
            let (m, u) = load_inputs(&Inputs {
                game: game.clone(),
                model: model.clone(),
                obs: obs.clone(),
            })?;
            let run = generate_run(&m, &u, depth)?;
            if trimmed {
                (run.frontier_trimmed(), u, None)
            } else {
                let f = run.frontier();
                (run.into_etl(), u, Some(f))
            }
        }
        _ => unreachable!("clap enforces two or three files"),
    };
    let report = check_normality(&n, &obs, frontier.as_ref())?;
    let mut out = report.to_kv();
    for c in &report.conditions {
        for w in &c.witnesses {
            writeln!(out, "{}\twitness\t{}", c.condition.name(), w.describe(&n)).unwrap();
        }
        if c.total > c.witnesses.len() {
            writeln!(out, "{}\twitness\t... {} more", c.condition.name(), c.total - c.witnesses.len()).unwrap();
        }
    }
    Ok(Outcome::ok(out, report.passed()))
}
