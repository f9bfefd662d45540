use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cayley_spectra::algebra::{
    atom_partition, elementary_gcd_sets, in_boolean_algebra, is_gcd_set,
};
use cayley_spectra::graph::{
    distance_power_shift, distance_profile, dm_spectrum, generalized_distance_matrix,
    parse_distance_set, CayleyGraph, DistanceWeights,
};
use cayley_spectra::group::{GroupSpec, GroupSubset};
use cayley_spectra::spectral::{format_float, integrality_verdict, spectrum, Spectrum};
use cayley_spectra::verify::{cross_check_suite, numeric_eigenvalues, Budget};
use serde_json::json;

use crate::{Cli, Command, Output};

/// Largest atom count `enumerate-integral` will stream (2^k lines).
const MAX_ENUMERATED_ATOMS: usize = 24;

const VIOLATION: u8 = 1;

/// Splits positionals into the group and the remaining named arguments.
fn resolve(cli: &Cli, args: &[String], names: &[&str]) -> Result<(GroupSpec, Vec<String>)> {
    let (group_text, rest) = match &cli.group {
        Some(g) => (g.as_str(), args),
        None => match args.split_first() {
            Some((g, rest)) => (g.as_str(), rest),
            None => bail!("missing GROUP argument"),
        },
    };
    if rest.len() != names.len() {
        bail!(
            "expected {} argument(s) after the group ({}), got {}",
            names.len(),
            names.join(" "),
            rest.len()
        );
    }
    let group: GroupSpec = group_text.parse()?;
    Ok((group, rest.to_vec()))
}

fn symmetric_graph(group: &GroupSpec, text: &str) -> Result<CayleyGraph> {
    let subset = GroupSubset::parse(group, text)?;
    Ok(CayleyGraph::new(subset)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        bail!("--tol must be positive");
    }
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Atoms { args } => {
            let (g, _) = resolve(cli, args, &[])?;
            let atoms = atom_partition(&g).describe();
            match cli.output {
                Output::Json => {
                    writeln!(out, "{}", json!({ "group": g.label(), "atoms": atoms }))?;
                }
                Output::Table => {
                    writeln!(
                        out,
                        "{:<14} {:>6} {:>6}  elements",
                        "representative", "order", "size"
                    )?;
                    for a in &atoms {
                        writeln!(
                            out,
                            "{:<14} {:>6} {:>6}  {}",
                            a.representative.to_string(),
                            a.order,
                            a.size,
                            a.elements
                        )?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { args, dm, check } => {
            let (g, rest) = resolve(cli, args, &["SUBSET"])?;
            let graph = symmetric_graph(&g, &rest[0])?;
            match dm {
                Some(k) => print_dm_spectrum(cli, &mut out, &graph, k, *check),
                None => print_spectrum(cli, &mut out, &graph, *check),
            }
        }
        Command::DmSpectrum { args, check } => {
            let (g, rest) = resolve(cli, args, &["SUBSET", "K"])?;
            let graph = symmetric_graph(&g, &rest[0])?;
            print_dm_spectrum(cli, &mut out, &graph, &rest[1], *check)
        }
        Command::IsIntegral { args } => {
            let (g, rest) = resolve(cli, args, &["SUBSET"])?;
            let graph = symmetric_graph(&g, &rest[0])?;
            let verdict = integrality_verdict(graph.shift(), cli.tol);
            match cli.output {
                Output::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "group": g.label(),
                        "subset": graph.shift(),
                        "structural": verdict.structural,
                        "spectral": verdict.spectral,
                        "agree": verdict.agrees(),
                    })
                )?,
                Output::Table => {
                    writeln!(
                        out,
                        "structural (union of atoms): {}",
                        yes_no(verdict.structural)
                    )?;
                    writeln!(
                        out,
                        "spectral (tol {:e}): {}",
                        cli.tol,
                        yes_no(verdict.spectral)
                    )?;
                }
            }
            if verdict.agrees() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("verdicts disagree");
                Ok(ExitCode::from(VIOLATION))
            }
        }
        Command::DistancePower { args } => {
            let (g, rest) = resolve(cli, args, &["SUBSET", "D"])?;
            let graph = symmetric_graph(&g, &rest[0])?;
            let d = parse_distance_set(&rest[1])?;
            let shift = distance_power_shift(&graph, &d);
            let in_b = in_boolean_algebra(&shift);
            let gcd = is_gcd_set(&shift);
            match cli.output {
                Output::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "group": g.label(),
                        "subset": graph.shift(),
                        "distances": d,
                        "shift": shift,
                        "in_boolean_algebra": in_b,
                        "is_gcd_set": gcd,
                    })
                )?,
                Output::Table => {
                    writeln!(out, "S^(D) = {shift}")?;
                    writeln!(out, "in B(G): {}", yes_no(in_b))?;
                    writeln!(out, "gcd-set: {}", yes_no(gcd))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EnumerateIntegral { args, gcd_only } => {
            let (g, _) = resolve(cli, args, &[])?;
            let blocks: Vec<GroupSubset> = if *gcd_only {
                elementary_gcd_sets(&g)
                    .into_iter()
                    .map(|(_, s)| s)
                    .collect()
            } else {
                atom_partition(&g).atoms().to_vec()
            };
            if blocks.len() > MAX_ENUMERATED_ATOMS {
                bail!(
                    "{} blocks would give 2^{} sets; refusing to enumerate",
                    blocks.len(),
                    blocks.len()
                );
            }
            for bits in 0u64..(1u64 << blocks.len()) {
                let s = blocks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .fold(GroupSubset::empty(&g), |acc, (_, b)| {
                        acc.union(b).expect("same group")
                    });
                let spec = spectrum(&s)?;
                let eigenvalues = spec.rounded(cli.tol);
                if eigenvalues.is_none() {
                    eprintln!("non-integral spectrum for {s}");
                    return Ok(ExitCode::from(VIOLATION));
                }
                match cli.output {
                    Output::Json => writeln!(
                        out,
                        "{}",
                        json!({ "subset": s, "eigenvalues": eigenvalues })
                    )?,
                    Output::Table => writeln!(out, "{s}\t{:?}", eigenvalues.unwrap_or_default())?,
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GcdSets { args } => {
            let (g, _) = resolve(cli, args, &[])?;
            let sets = elementary_gcd_sets(&g);
            match cli.output {
                Output::Json => {
                    let rows: Vec<_> = sets
                        .iter()
                        .map(|(d, s)| json!({ "divisors": d, "elements": s }))
                        .collect();
                    writeln!(out, "{}", json!({ "group": g.label(), "gcd_sets": rows }))?;
                }
                Output::Table => {
                    for (d, s) in &sets {
                        writeln!(out, "{:?}\t{s}", d.divisors())?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { args, budget } => {
            let (g, _) = resolve(cli, args, &[])?;
            let budget = Budget {
                random_subsets: *budget,
                seed: cli.seed,
                ..Budget::default()
            };
            let report = cross_check_suite(&g, &budget);
            match cli.output {
                Output::Json => writeln!(out, "{}", report.to_json())?,
                Output::Table => {
                    writeln!(
                        out,
                        "{}: {} checks, {} failures (seed {})",
                        report.group,
                        report.checks_run,
                        report.failures.len(),
                        report.seed
                    )?;
                    for f in &report.failures {
                        writeln!(
                            out,
                            "  {}: {} expected {} got {}",
                            f.check, f.input, f.expected, f.actual
                        )?;
                    }
                }
            }
            Ok(if report.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(VIOLATION)
            })
        }
    }
}

fn write_spectrum(cli: &Cli, out: &mut impl Write, spec: &Spectrum) -> Result<()> {
    match cli.output {
        Output::Json => writeln!(out, "{}", spec.to_json())?,
        Output::Table => {
            for e in spec.entries() {
                writeln!(
                    out,
                    "{:<12} {:>24} {:>24}",
                    e.alpha.to_string(),
                    format_float(e.value.re),
                    format_float(e.value.im)
                )?;
            }
        }
    }
    Ok(())
}

/// Compares the spectrum against eigenvalues of `matrix`; reports on stderr.
fn check_against(cli: &Cli, spec: &Spectrum, matrix: Vec<Vec<f64>>) -> Result<bool> {
    let numeric = numeric_eigenvalues(&matrix)?;
    let reals = spec.sorted_real_parts();
    let gap = numeric
        .iter()
        .zip(&reals)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let matches = gap <= cli.tol;
    eprintln!(
        "check: eigensolver {} (max gap {gap:.1e}); integral: {}",
        if matches { "agrees" } else { "DISAGREES" },
        yes_no(spec.is_integral(cli.tol)),
    );
    Ok(matches)
}

fn print_spectrum(
    cli: &Cli,
    out: &mut impl Write,
    graph: &CayleyGraph,
    check: bool,
) -> Result<ExitCode> {
    let spec = spectrum(graph.shift())?;
    write_spectrum(cli, out, &spec)?;
    if check {
        let adj = graph
            .adjacency()
            .into_iter()
            .map(|r| r.into_iter().map(f64::from).collect())
            .collect();
        if !check_against(cli, &spec, adj)? {
            return Ok(ExitCode::from(VIOLATION));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_dm_spectrum(
    cli: &Cli,
    out: &mut impl Write,
    graph: &CayleyGraph,
    weights: &str,
    check: bool,
) -> Result<ExitCode> {
    let weights = DistanceWeights::parse(weights)?;
    let spec = dm_spectrum(graph, &weights).with_context(|| {
        let profile: Vec<String> = distance_profile(graph)
            .distances()
            .iter()
            .map(ToString::to_string)
            .collect();
        format!("distance profile is ({})", profile.join(", "))
    })?;
    write_spectrum(cli, out, &spec)?;
    if check {
        let dm = generalized_distance_matrix(graph, &weights)?
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as f64).collect())
            .collect();
        if !check_against(cli, &spec, dm)? {
            return Ok(ExitCode::from(VIOLATION));
        }
    }
    Ok(ExitCode::SUCCESS)
}
