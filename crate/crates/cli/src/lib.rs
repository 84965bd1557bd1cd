//! Command-line front end: parses brace notation, runs engine operations and
//! renders thermographs.

pub mod render;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thermocalc::selftest::{self, Bounds, Report};
use thermocalc::{
    canonicalize, compare, parse_game, set_cache_limit, BigEngine, Dyadic, DyadicInt, Engine,
    Engine64, Game, ParseError, ThermoError,
};

use render::SvgStyle;

#[derive(Debug, Parser)]
#[command(name = "thermocalc", version, about = "Cooling, temperature and thermographs of short games")]
pub struct Cli {
    /// Print games as given instead of in canonical form.
    #[arg(long, global = true)]
    pub raw: bool,

    /// Use arbitrary-precision numerators.
    #[arg(long, global = true)]
    pub wide: bool,

    /// Bound on each memo table; a full table is flushed.
    #[arg(long, global = true, value_name = "ENTRIES")]
    pub cache_limit: Option<usize>,

    /// TOML file with `svg_scale`, `svg_margin` and `cache_limit`.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the canonical form.
    Canonical {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Compare two games: >, <, = or ||.
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Left and right stops.
    Stops {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Temperature.
    Temp {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Mean value.
    Mean {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Cool by t >= -1.
    Cool {
        #[arg(short, long, allow_hyphen_values = true)]
        t: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Render the thermograph.
    Thermo {
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Multi-line JSON.
        #[arg(long)]
        pretty: bool,
        /// SVG pixels per unit.
        #[arg(long, env = "THERMOCALC_SVG_SCALE")]
        scale: Option<u64>,
        /// SVG margin in pixels.
        #[arg(long, env = "THERMOCALC_SVG_MARGIN")]
        margin: Option<u64>,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide integer equality from the options' thermographs.
    IsInt {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run the property suites.
    Selftest {
        #[arg(long, default_value_t = Bounds::default().random_trees)]
        trees: usize,
        #[arg(long, default_value_t = Bounds::default().pairs)]
        pairs: usize,
        #[arg(long, default_value_t = Bounds::default().deep)]
        deep: usize,
        #[arg(long, default_value_t = Bounds::default().seed)]
        seed: u64,
        /// Print every failure instead of the first few.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub svg_scale: Option<u64>,
    pub svg_margin: Option<u64>,
    pub cache_limit: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Exit status for an error: 2 for bad input, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    let bad_input = err.chain().any(|e| {
        e.is::<ParseError>()
            || matches!(
                e.downcast_ref::<ThermoError>(),
                Some(ThermoError::BelowDomain(_))
            )
            || e.is::<thermocalc::DyadicError>()
    });
    if bad_input {
        2
    } else {
        1
    }
}

fn parse(text: &str) -> Result<Game> {
    parse_game(text).with_context(|| format!("cannot parse {text:?}"))
}

/// Runs one command, writing its output; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(limit) = cli.cache_limit.or(config.cache_limit) {
        set_cache_limit(Some(limit));
    }
    if let Command::Selftest {
        trees,
        pairs,
        deep,
        seed,
        verbose,
    } = &cli.command
    {
        let bounds = Bounds {
            random_trees: *trees,
            pairs: *pairs,
            deep: *deep,
            seed: *seed,
            ..Bounds::default()
        };
        return run_selftest(&bounds, *verbose, out);
    }
    if cli.wide {
        execute(&BigEngine::new(), cli, &config, out)
    } else {
        execute(&Engine64::new(), cli, &config, out)
    }
}

fn show(g: &Game, raw: bool) -> String {
    if raw {
        g.to_string()
    } else {
        canonicalize(g).to_string()
    }
}

fn execute<I: DyadicInt>(e: &Engine<I>, cli: &Cli, config: &Config, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Eval { expr } => writeln!(out, "{}", show(&parse(expr)?, cli.raw))?,
        Command::Canonical { expr } => writeln!(out, "{}", canonicalize(&parse(expr)?))?,
        Command::Compare { a, b } => writeln!(out, "{}", compare(&parse(a)?, &parse(b)?))?,
        Command::Stops { expr } => {
            let s = e.stops(&parse(expr)?);
            writeln!(out, "{} {}", s.left, s.right)?;
        }
        Command::Temp { expr } => writeln!(out, "{}", e.temperature(&parse(expr)?)?)?,
        Command::Mean { expr } => writeln!(out, "{}", e.mean_value(&parse(expr)?)?)?,
        Command::Cool { t, expr } => {
            let g = parse(expr)?;
            let t: Dyadic<I> = t.trim().parse().with_context(|| format!("bad temperature {t:?}"))?;
            writeln!(out, "{}", show(&e.cooled(&g, &t)?, cli.raw))?;
        }
        Command::Thermo {
            format,
            pretty,
            scale,
            margin,
            expr,
        } => {
            let g = parse(expr)?;
            let tg = e.thermograph(&g)?;
            match format {
                Format::Json => writeln!(out, "{}", render::json(&tg, *pretty))?,
                Format::Ascii => write!(out, "{}", render::ascii(&tg))?,
                Format::Svg => {
                    let defaults = SvgStyle::default();
                    let style = SvgStyle {
                        scale: scale.or(config.svg_scale).unwrap_or(defaults.scale),
                        margin: margin.or(config.svg_margin).unwrap_or(defaults.margin),
                    };
                    write!(out, "{}", render::svg(&tg, &show(&g, cli.raw), style))?;
                }
            }
        }
        Command::IsInt { expr } => match e.integer_decision(&parse(expr)?)? {
            Some(n) => writeln!(out, "{n}")?,
            None => writeln!(out, "not-an-integer")?,
        },
        Command::Selftest { .. } => unreachable!("handled before engine selection"),
    }
    Ok(0)
}

fn run_selftest(bounds: &Bounds, verbose: bool, out: &mut dyn Write) -> Result<i32> {
    let e = Engine64::new();
    let reports = selftest::run_all(&e, bounds);
    let total = Report::merge("selftest", reports.iter().cloned());
    for r in &reports {
        writeln!(out, "{r}")?;
        let shown = if verbose { r.failures.len() } else { 5 };
        for f in r.failures.iter().take(shown) {
            writeln!(out, "  {f}")?;
        }
    }
    writeln!(out, "{total}")?;
    Ok(if total.passed() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("thermocalc").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = match run(&cli, &mut out) {
            Ok(code) => code,
            Err(e) => exit_code(&e),
        };
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn verbs() {
        assert_eq!(run_args(&["temp", "{2|0}"]), (0, "1\n".into()));
        assert_eq!(run_args(&["is-int", "{0|3}"]), (0, "1\n".into()));
        assert_eq!(run_args(&["compare", "*", "0"]), (0, "||\n".into()));
        assert_eq!(run_args(&["is-int", "{1|0}"]), (0, "not-an-integer\n".into()));
        assert_eq!(run_args(&["temp", "5"]), (0, "-inf\n".into()));
        assert_eq!(run_args(&["mean", "{3|{2|-1}}"]), (0, "2\n".into()));
        assert_eq!(run_args(&["stops", "{2|0}"]), (0, "2 0\n".into()));
        assert_eq!(run_args(&["eval", "{0|2}"]), (0, "1\n".into()));
        assert_eq!(run_args(&["--raw", "eval", "{0|2}"]), (0, "{0|2}\n".into()));
        assert_eq!(run_args(&["canonical", "* + *"]), (0, "0\n".into()));
        assert_eq!(run_args(&["cool", "-t", "1/2", "{2|0}"]), (0, "{3/2|1/2}\n".into()));
        assert_eq!(run_args(&["cool", "-t", "-1/2", "1/2"]), (0, "{1/2|1/2}\n".into()));
        assert_eq!(run_args(&["--wide", "temp", "{2|0}"]), (0, "1\n".into()));
        assert_eq!(run_args(&["mean", "-1/2"]), (0, "-1/2\n".into()));
        assert_eq!(run_args(&["compare", "-1", "-1/2"]), (0, "<\n".into()));
    }

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(run_args(&["temp", "{2|"]).0, 2);
        assert_eq!(run_args(&["temp", "1/3"]).0, 2);
        assert_eq!(run_args(&["cool", "-t", "-2", "{2|0}"]).0, 2);
        assert_eq!(run_args(&["cool", "-t", "1/3", "{2|0}"]).0, 2);
    }

    #[test]
    fn config_file_sets_svg_scale() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("thermocalc.toml");
        std::fs::write(&path, "svg_scale = 10\nsvg_margin = 0\n").unwrap();
        let p = path.to_str().unwrap();
        let (code, svg) = run_args(&["--config", p, "thermo", "--format", "svg", "{2|0}"]);
        assert_eq!(code, 0);
        assert!(svg.contains(r#"width="40" height="30""#), "{svg}");
        let (_, svg) = run_args(&["--config", p, "thermo", "--format", "svg", "--scale", "20", "{2|0}"]);
        assert!(svg.contains(r#"width="80" height="60""#), "{svg}");
    }
}
