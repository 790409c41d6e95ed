use std::collections::BTreeMap;
use std::path::Path;

use postulate::algorithms::{
    deutsch_jozsa, dj_distribution, gf2::format_bits, gf2::parse_bits, grover, grover_iterations,
    grover_state, simon, simon_distribution, BooleanOracle, DjKind, DjOracle, SimonOracle,
};
use postulate::hilbert::{Observable, StateVector, C64};
use postulate::measurement::{born_distribution, measure, PROB_FLOOR};
use postulate::protocols::{bell_basis_observable, BellKind, DegeneracyReport, Teleporter, FIDELITY_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{CommandConfig, RunConfig};
use crate::report::{RunReport, Trial};
use crate::CliError;

/// Stream reserved for oracle generation, disjoint from every trial stream.
const ORACLE_STREAM: u64 = u64::MAX;

/// Independent generator for trial `index`, so results do not depend on the
/// order trials are run in.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn run(config: &RunConfig) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(config.clone());
    match &config.command {
        CommandConfig::Teleport { alpha, beta } => run_teleport(config, *alpha, *beta, &mut report)?,
        CommandConfig::Dj { n, kind, oracle } => run_dj(config, *n, *kind, oracle.as_deref(), &mut report)?,
        CommandConfig::Simon {
            n,
            oracle,
            period,
            max_samples,
        } => run_simon(config, *n, oracle.as_deref(), period.as_deref(), *max_samples, &mut report)?,
        CommandConfig::Grover { n, marked } => run_grover(config, *n, marked, &mut report)?,
        CommandConfig::Measure { observable, state } => run_measure(config, observable, state, &mut report)?,
    }
    Ok(report)
}

fn c64([re, im]: [f64; 2]) -> C64 {
    C64::new(re, im)
}

fn pairs(psi: &StateVector) -> Vec<[f64; 2]> {
    psi.amplitudes().iter().map(|z| [z.re, z.im]).collect()
}

fn frequencies<'a>(keys: impl IntoIterator<Item = &'a str>) -> BTreeMap<String, f64> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut total = 0usize;
    for k in keys {
        *counts.entry(k.to_string()).or_default() += 1;
        total += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| (k, c as f64 / total as f64))
        .collect()
}

fn support(probs: &[f64], label: impl Fn(usize) -> String) -> BTreeMap<String, f64> {
    probs
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > PROB_FLOOR)
        .map(|(i, &p)| (label(i), p))
        .collect()
}

fn run_teleport(
    config: &RunConfig,
    alpha: [f64; 2],
    beta: [f64; 2],
    report: &mut RunReport,
) -> Result<(), CliError> {
    let psi = StateVector::normalized(vec![c64(alpha), c64(beta)], vec![2])?;
    let teleporter = Teleporter::new();
    let probs = teleporter.outcome_probabilities(&psi)?;
    report.born_probabilities = support(&probs, |i| BellKind::ALL[i].name().to_string());

    for trial in 0..config.trials {
        let result = teleporter.run(&psi, config.mode, &mut trial_rng(config.seed, trial as u64))?;
        if result.fidelity.is_some_and(|f| f >= 1.0 - FIDELITY_TOL) {
            report.successes += 1;
        }
        if result.blocked.is_some() {
            report.blocked = result.blocked.clone();
        }
        report.outcomes.push(Trial::Teleport {
            trial,
            outcome: result.outcome_kind,
            bits: result.outcome_kind.bit_string(),
            probability: result.probability,
            correction: result.correction,
            bob_state: result.bob_state_after_correction.as_ref().map(pairs),
            fidelity: result.fidelity,
        });
    }
    report.frequencies = frequencies(report.outcomes.iter().map(|t| match t {
        Trial::Teleport { outcome, .. } => outcome.name(),
        _ => unreachable!(),
    }));
    Ok(())
}

fn load_table(path: &str) -> Result<BooleanOracle, CliError> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    Ok(BooleanOracle::parse(&text)?)
}

fn check_width(declared: Option<usize>, actual: usize) -> Result<(), CliError> {
    match declared {
        Some(n) if n != actual => Err(CliError::Usage(format!(
            "--n {n} does not match the oracle's input width {actual}"
        ))),
        _ => Ok(()),
    }
}

fn run_dj(
    config: &RunConfig,
    n: Option<usize>,
    kind: Option<DjKind>,
    oracle: Option<&str>,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let oracle = match (oracle, n) {
        (Some(path), _) => {
            let oracle = DjOracle::new(load_table(path)?)?;
            check_width(n, oracle.n())?;
            if kind.is_some_and(|k| k != oracle.kind()) {
                return Err(CliError::Usage("--kind contradicts the oracle file".into()));
            }
            oracle
        }
        (None, Some(n)) => {
            let mut rng = trial_rng(config.seed, ORACLE_STREAM);
            match kind.unwrap_or(DjKind::Balanced) {
                DjKind::Constant => DjOracle::constant(n, rng.random_bool(0.5))?,
                DjKind::Balanced => DjOracle::random_balanced(n, &mut rng)?,
            }
        }
        (None, None) => return Err(CliError::Usage("dj needs --n or --oracle".into())),
    };
    let n = oracle.n();
    report.born_probabilities = support(&dj_distribution(&oracle)?, |z| format_bits(z as u64, n));

    for trial in 0..config.trials {
        let result = deutsch_jozsa(&oracle, config.mode, &mut trial_rng(config.seed, trial as u64))?;
        if result.verdict == oracle.kind() {
            report.successes += 1;
        }
        report.outcomes.push(Trial::Dj {
            trial,
            measured: format_bits(result.measured, n),
            verdict: result.verdict,
            determined: result.determined,
        });
    }
    report.frequencies = frequencies(report.outcomes.iter().map(|t| match t {
        Trial::Dj { measured, .. } => measured.as_str(),
        _ => unreachable!(),
    }));
    Ok(())
}

fn parse_period(s: &str, n: usize) -> Result<u64, CliError> {
    match parse_bits(s) {
        Some(v) if s.len() == n => Ok(v),
        _ => Err(CliError::Usage(format!("--period must be a {n}-bit string, got {s:?}"))),
    }
}

fn run_simon(
    config: &RunConfig,
    n: Option<usize>,
    oracle: Option<&str>,
    period: Option<&str>,
    max_samples: usize,
    report: &mut RunReport,
) -> Result<(), CliError> {
    let oracle = match (oracle, n, period) {
        (Some(path), _, _) => {
            let table = load_table(path)?;
            check_width(n, table.n())?;
            match period {
                Some(p) => SimonOracle::with_period(table.clone(), parse_period(p, table.n())?)?,
                None => SimonOracle::new(table)?,
            }
        }
        (None, Some(n), Some(p)) => {
            SimonOracle::random(n, parse_period(p, n)?, &mut trial_rng(config.seed, ORACLE_STREAM))?
        }
        _ => return Err(CliError::Usage("simon needs --oracle, or --n with --period".into())),
    };
    let n = oracle.n();
    report.born_probabilities = support(&simon_distribution(&oracle)?, |j| format_bits(j as u64, n));

    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, trial as u64);
        let (samples, period) = match simon(&oracle, config.mode, &mut rng, max_samples) {
            Ok(r) => (r.samples, Some(r.period)),
            Err(postulate::Error::RankDeficient { .. }) => (Vec::new(), None),
            Err(e) => return Err(e.into()),
        };
        if period == Some(oracle.period()) {
            report.successes += 1;
        }
        report.outcomes.push(Trial::Simon {
            trial,
            samples: samples.iter().map(|&j| format_bits(j, n)).collect(),
            period: period.map(|s| format_bits(s, n)),
        });
    }
    report.frequencies = frequencies(report.outcomes.iter().flat_map(|t| match t {
        Trial::Simon { samples, .. } => samples.iter().map(String::as_str),
        _ => unreachable!(),
    }));
    Ok(())
}

fn run_grover(config: &RunConfig, n: usize, marked: &[u64], report: &mut RunReport) -> Result<(), CliError> {
    let psi = grover_state(n, marked, grover_iterations(n, marked.len()))?;
    let probs: Vec<f64> = psi.amplitudes().iter().map(|z| z.norm_sqr()).collect();
    report.born_probabilities = support(&probs, |i| format_bits(i as u64, n));

    for trial in 0..config.trials {
        let result = grover(n, marked, config.mode, &mut trial_rng(config.seed, trial as u64))?;
        if result.found_is_marked {
            report.successes += 1;
        }
        report.outcomes.push(Trial::Grover {
            trial,
            found: format_bits(result.found, n),
            marked: result.found_is_marked,
        });
    }
    report.frequencies = frequencies(report.outcomes.iter().map(|t| match t {
        Trial::Grover { found, .. } => found.as_str(),
        _ => unreachable!(),
    }));
    Ok(())
}

/// Parses `sigma1`, `sigma2`, `sigma3`, `bell` or `diag:v0,v1,...`.
pub fn parse_observable(text: &str) -> Result<Observable, CliError> {
    match text.trim() {
        "sigma1" => Ok(Observable::sigma1()),
        "sigma2" => Ok(Observable::sigma2()),
        "sigma3" => Ok(Observable::sigma3()),
        "bell" => Ok(bell_basis_observable()),
        other => {
            let values = other
                .strip_prefix("diag:")
                .ok_or_else(|| CliError::Usage(format!("unknown observable {other:?}")))?
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("bad diagonal entry: {e}")))?;
            let d = values.len();
            Ok(Observable::diagonal(values, vec![d])?)
        }
    }
}

fn run_measure(
    config: &RunConfig,
    observable: &str,
    state: &[[f64; 2]],
    report: &mut RunReport,
) -> Result<(), CliError> {
    let a = parse_observable(observable)?;
    if state.len() != a.dim() {
        return Err(CliError::Usage(format!(
            "state has {} amplitudes but the observable acts on dimension {}",
            state.len(),
            a.dim()
        )));
    }
    let psi = StateVector::normalized(state.iter().copied().map(c64).collect(), a.dims().to_vec())?;
    let values = a.spectrum().eigenvalues();
    report.born_probabilities = support(&born_distribution(&a, &psi)?, |i| values[i].to_string());

    for trial in 0..config.trials {
        let outcome = measure(&a, &psi, config.mode, &mut trial_rng(config.seed, trial as u64))?;
        if outcome.determined {
            report.successes += 1;
        } else {
            report.blocked = Some(DegeneracyReport::of(&a));
        }
        report.outcomes.push(Trial::Measure {
            trial,
            index: outcome.index,
            eigenvalue: outcome.eigenvalue,
            probability: outcome.probability,
            determined: outcome.determined,
            post_state: outcome.post_state.as_ref().map(pairs),
        });
    }
    let keys: Vec<String> = report
        .outcomes
        .iter()
        .map(|t| match t {
            Trial::Measure { eigenvalue, .. } => eigenvalue.to_string(),
            _ => unreachable!(),
        })
        .collect();
    report.frequencies = frequencies(keys.iter().map(String::as_str));
    Ok(())
}
