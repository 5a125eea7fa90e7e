//! Command line surface over the Stallings graph library.
//!
//! Boolean verbs exit 0 for true and 1 for false; usage and parse errors
//! exit 2. Output is deterministic byte-for-byte (timings only appear behind
//! `--timings`).

mod export;
mod input;
mod sweep;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::{parse_batch, split_list, Alphabet};
use stallings::f2::{self, EnumMode, Seed};
use stallings::subgroup::{self, Cover, Subgroup};
use stallings::verify;
use stallings::words::Word;

#[derive(Parser)]
#[command(
    name = "stallings",
    version,
    about = "Stallings core graphs of subgroups of free groups, and the basis toolkit for F2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Ambient rank; inferred from the highest letter used when omitted
    #[arg(long, global = true)]
    rank: Option<u32>,

    /// Letter-to-generator mapping by position (e.g. `xyz` reads x,y,z as
    /// the first three generators)
    #[arg(long, global = true, default_value = "abcdefghijklmnopqrstuvwxyz")]
    alphabet: String,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    /// Worker threads for sweeps; the output does not depend on the count
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Append wall-clock timing lines to reports
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Brute,
    Structural,
}

impl From<ModeArg> for EnumMode {
    fn from(m: ModeArg) -> EnumMode {
        match m {
            ModeArg::Brute => EnumMode::Brute,
            ModeArg::Structural => EnumMode::Structural,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Core graph of the subgroup generated by the given words
    Core {
        /// Generator words (each argument may hold a comma/space separated list)
        generators: Vec<String>,
    },
    /// Is the word an element of the subgroup? Exit 0 yes, 1 no
    Member {
        word: String,
        /// Generators of the subgroup, comma separated
        #[arg(long = "in", value_name = "GENERATORS")]
        subgroup: String,
    },
    /// Does the word appear in the subgroup's core graph? Prints the witness
    Appears {
        word: String,
        #[arg(long = "in", value_name = "GENERATORS")]
        subgroup: String,
    },
    /// Does the first subgroup X-cover the second? Exit 0 covers, 1 otherwise
    Covers {
        h: String,
        j: String,
    },
    /// Do the two words form a basis of F2? Exit 0 yes, 1 no
    Basis {
        u: String,
        v: String,
    },
    /// Is the word a primitive element of F2? Exit 0 yes, 1 no
    Primitive {
        word: String,
    },
    /// Build the cyclically reduced basis for a coprime length pair
    GenBasis {
        p: u64,
        q: u64,
        /// Seed basis, e.g. `a,b` or `A,b` (capital = inverse)
        #[arg(long, default_value = "a,b")]
        seed: String,
    },
    /// List bases of F2 with total length up to the bound, one per line
    EnumBases {
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Brute)]
        mode: ModeArg,
        /// Only bases with both elements cyclically reduced
        #[arg(long)]
        cr_only: bool,
    },
    /// Principal overgroups of a subgroup (all vertex-partition quotients)
    Overgroups {
        generators: String,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
    },
    /// Sweep all bases up to a length bound and verify the covering claims
    VerifyCounterexample {
        #[arg(long, default_value_t = 9)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Brute)]
        mode: ModeArg,
        /// Include one line per ordered basis in the report
        #[arg(long)]
        per_basis: bool,
    },
    /// Check the rank-3 example in which the analogous cover fails
    VerifyF3,
    /// Export a core graph in record or DOT form
    Export {
        generators: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            let outcome = match &cli.output {
                Some(path) => fs::write(path, text.as_bytes()).map_err(|e| e.to_string()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match outcome {
                Ok(()) => code,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(String, ExitCode), String> {
    let alphabet = Alphabet::new(&cli.alphabet)?;
    let ok = ExitCode::SUCCESS;
    let no = ExitCode::from(1);
    match &cli.command {
        Command::Core { generators } => {
            if generators.is_empty() {
                return Err("core needs at least one generator word".into());
            }
            let tokens: Vec<&str> = generators.iter().flat_map(|g| split_list(g)).collect();
            let (rank, groups) = parse_batch(&alphabet, cli.rank, &[tokens])?;
            let core = subgroup_from(rank, &groups[0])?.core_graph();
            Ok((render_graph(&core, cli.format, &alphabet), ok))
        }
        Command::Member { word, subgroup } => {
            let (rank, groups) =
                parse_batch(&alphabet, cli.rank, &[vec![word], split_list(subgroup)])?;
            let core = subgroup_from(rank, &groups[1])?.core_graph();
            let member = subgroup::is_member(&core, &groups[0][0]).map_err(|e| e.to_string())?;
            Ok((format!("{member}\n"), if member { ok } else { no }))
        }
        Command::Appears { word, subgroup } => {
            let (rank, groups) =
                parse_batch(&alphabet, cli.rank, &[vec![word], split_list(subgroup)])?;
            let core = subgroup_from(rank, &groups[1])?.core_graph();
            let witness =
                subgroup::appears(&groups[0][0], &core).map_err(|e| e.to_string())?;
            match witness {
                Some(w) => {
                    let mut s = String::new();
                    if cli.format == Format::Human {
                        s.push_str("appears\n");
                    }
                    s.push_str(&format!("split {}\n", w.split));
                    for (name, path) in [("p1", &w.prefix_path), ("p2", &w.suffix_path)] {
                        for step in path {
                            s.push_str(&format!(
                                "{name} {} {} {}\n",
                                step.from,
                                alphabet.letter_text(step.letter),
                                step.to
                            ));
                        }
                    }
                    Ok((s, ok))
                }
                None => Ok((String::from("does not appear\n"), no)),
            }
        }
        Command::Covers { h, j } => {
            let (rank, groups) =
                parse_batch(&alphabet, cli.rank, &[split_list(h), split_list(j)])?;
            let hs = subgroup_from(rank, &groups[0])?;
            let js = subgroup_from(rank, &groups[1])?;
            let verdict = subgroup::x_covers(&hs, &js).map_err(|e| e.to_string())?;
            let (text, code) = match verdict {
                Cover::Covers => ("covers", ok),
                Cover::NotCovers => ("not-covers", no),
                Cover::NotSubgroup => ("not-subgroup", no),
            };
            Ok((format!("{text}\n"), code))
        }
        Command::Basis { u, v } => {
            let (_, groups) = parse_batch(&alphabet, Some(2), &[vec![u], vec![v]])?;
            let yes =
                f2::is_basis(&groups[0][0], &groups[1][0]).map_err(|e| e.to_string())?;
            Ok((format!("{yes}\n"), if yes { ok } else { no }))
        }
        Command::Primitive { word } => {
            let (_, groups) = parse_batch(&alphabet, Some(2), &[vec![word]])?;
            let yes = f2::is_primitive(&groups[0][0]).map_err(|e| e.to_string())?;
            Ok((format!("{yes}\n"), if yes { ok } else { no }))
        }
        Command::GenBasis { p, q, seed } => {
            let basis = f2::generate_cr_basis(*p, *q, parse_seed(&alphabet, seed)?)
                .map_err(|e| e.to_string())?;
            Ok((
                format!(
                    "{} {}\n",
                    alphabet.word_to_text(basis.u()),
                    alphabet.word_to_text(basis.v())
                ),
                ok,
            ))
        }
        Command::EnumBases { max_len, mode, cr_only } => {
            let bases = if *cr_only {
                if *max_len > f2::STRUCTURAL_CAP {
                    return Err(format!(
                        "enumeration up to length {max_len} exceeds the cap {}",
                        f2::STRUCTURAL_CAP
                    ));
                }
                f2::enumerate_cr_bases(*max_len)
            } else {
                f2::enumerate_bases(*max_len, (*mode).into()).map_err(|e| e.to_string())?
            };
            let mut s = String::new();
            for b in &bases {
                s.push_str(&format!(
                    "{} {}\n",
                    alphabet.word_to_text(b.u()),
                    alphabet.word_to_text(b.v())
                ));
            }
            if cli.format == Format::Human {
                s.push_str(&format!("count {}\n", bases.len()));
            }
            Ok((s, ok))
        }
        Command::Overgroups { generators, max_vertices } => {
            let (rank, groups) =
                parse_batch(&alphabet, cli.rank, &[split_list(generators)])?;
            let h = subgroup_from(rank, &groups[0])?;
            let overs = subgroup::principal_overgroups(&h, *max_vertices)
                .map_err(|e| e.to_string())?;
            let mut s = String::new();
            if cli.format == Format::Human {
                s.push_str(&format!("{} principal overgroups\n", overs.len()));
            }
            for (i, g) in overs.iter().enumerate() {
                if i > 0 || cli.format == Format::Human {
                    s.push('\n');
                }
                s.push_str(export::records(g).as_str());
            }
            Ok((s, ok))
        }
        Command::VerifyCounterexample { max_len, mode, per_basis } => {
            let report = sweep::run_verify(*max_len, (*mode).into(), *per_basis, cli.jobs)
                .map_err(|e| e.to_string())?;
            let text = sweep::render_report(
                &report,
                &alphabet,
                cli.format == Format::Records,
                cli.timings,
            );
            Ok((text, if report.passed() { ok } else { no }))
        }
        Command::VerifyF3 => {
            let report = verify::verify_f3_example().map_err(|e| e.to_string())?;
            let verdict = if report.as_expected() { "PASS" } else { "FAIL" };
            let text = format!(
                "appears: {}\nmembership sanity: {}\nsubstitution check: {}\ncover: {}\nresult: {verdict}\n",
                report.appears_in_h,
                report.membership_sanity,
                report.substitution_matches,
                match report.cover {
                    Cover::Covers => "covers",
                    Cover::NotCovers => "not-covers",
                    Cover::NotSubgroup => "not-subgroup",
                },
            );
            Ok((text, if report.as_expected() { ok } else { no }))
        }
        Command::Export { generators } => {
            let (rank, groups) =
                parse_batch(&alphabet, cli.rank, &[split_list(generators)])?;
            let core = subgroup_from(rank, &groups[0])?.core_graph();
            let text = match cli.format {
                Format::Dot => export::dot(&core, &alphabet),
                _ => export::records(&core),
            };
            Ok((text, ok))
        }
    }
}

fn subgroup_from(rank: u32, words: &[Word]) -> Result<Subgroup, String> {
    Subgroup::new(rank, words.to_vec()).map_err(|e| e.to_string())
}

fn render_graph(core: &stallings::graph::CoreGraph, format: Format, alphabet: &Alphabet) -> String {
    match format {
        Format::Human => export::human(core),
        Format::Records => export::records(core),
        Format::Dot => export::dot(core, alphabet),
    }
}

/// Seed syntax: two single-letter words separated by a comma, denoting the
/// first and second generators with optional inversion, e.g. `a,B`.
fn parse_seed(alphabet: &Alphabet, spec: &str) -> Result<Seed, String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("seed must be two comma separated letters, got {spec:?}"));
    }
    let (_, groups) = parse_batch(alphabet, Some(2), &[vec![parts[0]], vec![parts[1]]])?;
    let (first, second) = (&groups[0][0], &groups[1][0]);
    match (first.letters(), second.letters()) {
        ([a], [b]) if a.generator() == 1 && b.generator() == 2 => Ok(Seed {
            a_positive: a.is_positive(),
            b_positive: b.is_positive(),
        }),
        _ => Err(format!(
            "seed must name the first and second generators (like `a,b`), got {spec:?}"
        )),
    }
}
