use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kirkman_core::audio::synth::wav_bytes;
use kirkman_core::dictionary::{lookup, DictionaryKey};
use kirkman_core::tables::{commutator_grid, dictionary_table, resolution_grid};
use kirkman_core::{
    build_cps_scale, chord_sequence, render_diagram, render_tiling, resolve, spectral_report, synthesize,
    verify_algebra, verify_design, ChordOrder, Design, DesignDocument, DayMatching, Error, Layout, PauliLabel,
    PitchOrder, Resolution, Seeds, SynthConfig, TilingLayout, TilingSpec, WindowParams,
};

#[derive(Parser)]
#[command(name = "kirkman", version, about = "Pauli-operator block designs, Kirkman weeks, colors and chords")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand seed operators into a design document.
    Generate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition a 15-point design into seven days and print the week.
    Resolve {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = MatchingArg::Lex)]
        matching: MatchingArg,
        /// Write the design document with its resolution here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a tiling, a diagram or an audio rendering.
    Render(RenderArgs),
    /// Run the oracle checks on a document (or on the seeds given).
    Verify {
        #[command(flatten)]
        source: Source,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print reference tables.
    Tables {
        #[arg(long)]
        dictionary: bool,
        #[arg(long)]
        commutators: bool,
        #[arg(long)]
        scale: bool,
        #[arg(long, default_value_t = kirkman_core::audio::DEFAULT_TONIC)]
        tonic: f64,
        #[arg(long, value_delimiter = ',', default_values_t = kirkman_core::audio::DEFAULT_PRIMES)]
        primes: Vec<u64>,
    },
    /// Look up one operator by Q12, O5, G2 or D#.
    Dictionary { key: String },
}

#[derive(Args)]
struct Source {
    /// Design document produced by `generate` or `resolve`.
    #[arg(long = "in", conflicts_with = "seeds")]
    input: Option<PathBuf>,
    /// Comma-separated seed operators.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<String>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatchingArg {
    Lex,
    Table4,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    ColorTiling,
    Diagram,
    Audio,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    FanoRows,
    KirkmanDays,
    Triangle,
    Cube,
    Tetrahedron,
}

#[derive(Clone, Copy, ValueEnum)]
enum PitchArg {
    Dictionary,
    OIndex,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_enum)]
    layout: Option<LayoutArg>,
    /// Omit text labels from images.
    #[arg(long)]
    no_labels: bool,
    #[arg(long, default_value_t = kirkman_core::audio::DEFAULT_TONIC)]
    tonic: f64,
    #[arg(long, value_delimiter = ',', default_values_t = kirkman_core::audio::DEFAULT_PRIMES)]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 0.8)]
    hop: f64,
    #[arg(long, default_value_t = 0.12)]
    sigma: f64,
    #[arg(long, default_value_t = 44100)]
    sample_rate: u32,
    #[arg(long, value_enum, default_value_t = PitchArg::Dictionary)]
    pitch_order: PitchArg,
    /// Also check each chord slot's spectrum and print the report.
    #[arg(long)]
    report: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

const DEFAULT_SEEDS: [u32; 4] = kirkman_core::RUNNING_EXAMPLE;

enum Failure {
    Validation(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_seed(s: &str) -> Result<PauliLabel, Failure> {
    let t = s.trim();
    let digits = t.strip_prefix(['Q', 'q']).unwrap_or(t).trim_start_matches('_');
    let n: u32 = digits.parse().map_err(|_| Failure::Usage(format!("bad seed `{s}` (expected Q1..Q15)")))?;
    PauliLabel::q(n).map_err(|e| Failure::Usage(e.to_string()))
}

/// The design and optional resolution named by `--in` or `--seeds`.
fn load(source: &Source) -> Result<(Design, Option<Resolution>), Failure> {
    if let Some(path) = &source.input {
        let text = fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
        let doc = DesignDocument::from_json(&text)?;
        return Ok(doc.to_design()?);
    }
    let seeds = match &source.seeds {
        Some(list) => list.iter().map(|s| parse_seed(s)).collect::<Result<Vec<_>, _>>()?,
        None => DEFAULT_SEEDS.iter().map(|&q| PauliLabel::q(q).expect("default seeds")).collect(),
    };
    Ok((kirkman_core::expand_seeds(&Seeds::new(seeds)?), None))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Outcome {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::Validation(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes).map_err(|e| Failure::Validation(e.to_string()))
        }
    }
}

fn summary(design: &Design) -> String {
    let (c, y) = design.kind_counts();
    format!("{}  {}  commuting={c} cyclic={y}", design.notation(), design.params())
}

fn generate(source: &Source, out: &Option<PathBuf>) -> Outcome {
    let (design, res) = load(source)?;
    let doc = DesignDocument::from_design(&design, res.as_ref())?;
    emit(out, doc.to_json().as_bytes())?;
    if out.is_some() {
        println!("{}", summary(&design));
    } else {
        eprintln!("{}", summary(&design));
    }
    Ok(())
}

fn resolve_cmd(source: &Source, matching: MatchingArg, out: &Option<PathBuf>) -> Outcome {
    let (design, _) = load(source)?;
    let preset = match matching {
        MatchingArg::Lex => None,
        MatchingArg::Table4 => Some(DayMatching::table4()),
    };
    let res = resolve(&design, preset.as_ref())?;
    let report = kirkman_core::validate_resolution(&design, &res);
    if !report.passed() {
        return Err(Failure::Validation(report.to_string()));
    }
    if let Some(path) = out {
        let doc = DesignDocument::from_design(&design, Some(&res))?;
        emit(&Some(path.clone()), doc.to_json().as_bytes())?;
    }
    print!("{}", resolution_grid(&design, &res)?);
    Ok(())
}

fn render(args: &RenderArgs) -> Outcome {
    let (design, res) = load(&args.source)?;
    match args.kind {
        Kind::ColorTiling => {
            let layout = match args.layout {
                None if res.is_some() && design.m() == 4 => TilingLayout::KirkmanDays,
                None | Some(LayoutArg::FanoRows) => TilingLayout::FanoRows,
                Some(LayoutArg::KirkmanDays) => TilingLayout::KirkmanDays,
                Some(_) => return Err(Failure::Usage("color tilings take --layout fano-rows or kirkman-days".into())),
            };
            let mut spec = TilingSpec::new(layout);
            spec.labels = !args.no_labels;
            emit(&args.out, render_tiling(&design, res.as_ref(), &spec)?.as_bytes())
        }
        Kind::Diagram => {
            let layout = match args.layout {
                None => Layout::for_m(design.m())?,
                Some(LayoutArg::Triangle) => Layout::Triangle,
                Some(LayoutArg::Cube) => Layout::Cube,
                Some(LayoutArg::Tetrahedron) => Layout::Tetrahedron,
                Some(_) => return Err(Failure::Usage("diagrams take --layout triangle, cube or tetrahedron".into())),
            };
            emit(&args.out, render_diagram(&design, layout, !args.no_labels)?.as_bytes())
        }
        Kind::Audio => {
            let Some(out) = &args.out else {
                return Err(Failure::Usage("audio rendering needs --out".into()));
            };
            let order = match &res {
                Some(r) => ChordOrder::Resolution(r),
                None => ChordOrder::Blocks,
            };
            let chords = chord_sequence(&design, order)?;
            let scale = build_cps_scale(&args.primes, args.tonic)?;
            let window = WindowParams { hop: args.hop, sigma: args.sigma };
            let config = SynthConfig {
                sample_rate: args.sample_rate,
                pitch_order: match args.pitch_order {
                    PitchArg::Dictionary => PitchOrder::Dictionary,
                    PitchArg::OIndex => PitchOrder::OIndex,
                },
                ..SynthConfig::default()
            };
            let buffer = synthesize(&chords, &scale, &window, &config)?;
            emit(&Some(out.clone()), &wav_bytes(&buffer, &config)?)?;
            println!("{} chords, {} samples, {:.3} s, peak {:.3}", chords.len(), buffer.samples.len(), buffer.duration(), buffer.peak());
            if args.report {
                let report = spectral_report(&buffer, &chords, &scale, &window, &config)?;
                println!("{report}");
                if !report.passed() {
                    return Err(Failure::Validation("spectral check failed".into()));
                }
            }
            Ok(())
        }
    }
}

fn verify(source: &Source, json: bool) -> Outcome {
    let mut report = verify_algebra(2)?;
    match &source.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
            report.merge(DesignDocument::from_json(&text)?.check()?);
        }
        None => {
            let (design, _) = load(source)?;
            report.merge(verify_design(&design));
        }
    }
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Validation("verification failed".into()))
    }
}

fn tables(dictionary: bool, commutators: bool, scale: bool, tonic: f64, primes: &[u64]) -> Outcome {
    if !(dictionary || commutators || scale) {
        return Err(Failure::Usage("choose --dictionary, --commutators or --scale".into()));
    }
    if dictionary {
        print!("{}", dictionary_table());
    }
    if commutators {
        print!("{}", commutator_grid()?);
    }
    if scale {
        print!("{}", build_cps_scale(primes, tonic)?.to_text());
    }
    Ok(())
}

fn dictionary_cmd(key: &str) -> Outcome {
    let key: DictionaryKey = key.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let e = lookup(key).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("Q_{} | {} | {} | {} | {} | {} | {}", e.q, e.label(), e.o, e.tensor, e.color, e.note, e.gamma);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Generate { source, out } => generate(source, out),
        Command::Resolve { source, matching, out } => resolve_cmd(source, *matching, out),
        Command::Render(args) => render(args),
        Command::Verify { source, json } => verify(source, *json),
        Command::Tables { dictionary, commutators, scale, tonic, primes } => {
            tables(*dictionary, *commutators, *scale, *tonic, primes)
        }
        Command::Dictionary { key } => dictionary_cmd(key),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
