//! Command-line parsing merged with an optional key=value file. File entries are placed
//! before the command-line flags, so flags win.

use std::path::Path;

use clap::{CommandFactory, Parser};

use crate::{Cli, Command};

const GLOBAL_KEYS: [&str; 3] = ["threads", "cache-dir", "output"];
const VALUE_FLAGS: [&str; 5] = ["--config", "--threads", "--cache-dir", "--output", "-o"];

pub enum ParseError {
    Clap(clap::Error),
    Config(String),
}

impl From<clap::Error> for ParseError {
    fn from(e: clap::Error) -> Self {
        ParseError::Clap(e)
    }
}

pub fn parse(argv: &[String]) -> Result<Cli, ParseError> {
    let merged = match (config_path(argv), subcommand_position(argv)) {
        (Some(path), Some(pos)) if Cli::command().find_subcommand(&argv[pos]).is_some() => {
            let entries = read_entries(Path::new(&path))?;
            let (globals, locals) = to_flags(&entries, &argv[pos])?;
            let mut merged = vec![argv[0].clone()];
            merged.extend(globals);
            merged.extend_from_slice(&argv[1..=pos]);
            merged.extend(locals);
            merged.extend_from_slice(&argv[pos + 1..]);
            merged
        }
        _ => argv.to_vec(),
    };
    let cli = Cli::try_parse_from(merged)?;
    validate(&cli.command).map_err(ParseError::Config)?;
    Ok(cli)
}

/// The value of the last `--config` flag, read before clap so that the file can supply
/// required flags.
fn config_path(argv: &[String]) -> Option<String> {
    let mut found = None;
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            found = it.next().cloned();
        } else if let Some(v) = a.strip_prefix("--config=") {
            found = Some(v.to_string());
        }
    }
    found
}

fn read_entries(path: &Path) -> Result<Vec<(usize, String, String)>, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ParseError::Config(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        out.push((i + 1, k.trim().replace('_', "-"), v.trim().to_string()));
    }
    Ok(out)
}

fn to_flags(entries: &[(usize, String, String)], sub: &str) -> Result<(Vec<String>, Vec<String>), ParseError> {
    let cmd = Cli::command();
    let sc = cmd.find_subcommand(sub).expect("parsed subcommand exists");
    let local: Vec<String> = sc
        .get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .filter(|l| !GLOBAL_KEYS.contains(&l.as_str()) && l != "config" && l != "help")
        .collect();
    let (mut globals, mut locals) = (Vec::new(), Vec::new());
    for (line, key, value) in entries {
        if let Some(name) = key.strip_prefix("tolerance.") {
            if !local.iter().any(|l| l == "tolerance") {
                return Err(ParseError::Config(format!("line {line}: `{sub}` takes no tolerances")));
            }
            locals.extend(["--tolerance".to_string(), format!("{name}={value}")]);
        } else if GLOBAL_KEYS.contains(&key.as_str()) {
            globals.extend([format!("--{key}"), value.clone()]);
        } else if local.contains(key) {
            locals.extend([format!("--{key}"), value.clone()]);
        } else {
            return Err(ParseError::Config(format!("line {line}: unknown key `{key}` for `{sub}`")));
        }
    }
    Ok((globals, locals))
}

fn subcommand_position(argv: &[String]) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let a = argv[i].as_str();
        if VALUE_FLAGS.contains(&a) {
            i += 2;
        } else if a == "--" {
            return None;
        } else if a.starts_with('-') {
            i += 1;
        } else {
            return Some(i);
        }
    }
    None
}

fn positive(name: &str, xs: &[f64]) -> Result<(), String> {
    match xs.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        Some(x) => Err(format!("--{name} must be positive, got {x}")),
        None => Ok(()),
    }
}

fn validate(c: &Command) -> Result<(), String> {
    let as_f = |v: &[u64]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
    match c {
        Command::Eigen(a) => positive("n", &[a.n as f64]),
        Command::Norms(a) => positive("p", &a.p),
        Command::Geodesic(a) => positive("y0", &a.y0),
        Command::Cusp(a) => positive("y0", &a.y0),
        Command::Shifted(a) => positive("l-max", &[a.l_max as f64]).and(positive("n", &as_f(&a.n))),
        Command::Lvalues(a) => {
            positive("c-w", &[a.c_w]).and(positive("r", &a.r.iter().map(|&r| r as f64).collect::<Vec<_>>()))
        }
        Command::Check(a) => positive("c-w", &[a.c_w]),
        Command::Statphase(a) => positive("lambda", &a.lambda).and(positive("tol", &[a.tol])),
        Command::FourthMoment(a) => {
            if a.k_min > a.k_max {
                Err(format!("--k-min {} exceeds --k-max {}", a.k_min, a.k_max))
            } else {
                Ok(())
            }
        }
    }
}
