use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quad_incenters::report::{self, InputError, Mode, TriangleInput};
use quad_incenters::svg;
use quad_incenters::verify::{self, Bound, Suite};

#[derive(Parser)]
#[command(
    name = "quadinc",
    version,
    about = "Two-incenter geometry of convex quadrilaterals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze quadrilaterals read from a JSON file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Write a figure of the (first) quadrilateral.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Write one CSV row per quadrilateral.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Complete an inscribed triangle to a bicentric quadrilateral.
    Construct(ConstructArgs),
    /// Run the seeded verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Samples per suite; each suite's default when omitted.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: Option<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum, default_value = "both")]
    mode: Mode,
    /// JSON file with `{"points": [[x,y]×3]}` or `{"radius": R, "angles_deg": [α,β,γ]}`.
    #[arg(long, conflicts_with_all = ["points", "radius"])]
    input: Option<PathBuf>,
    /// Triangle vertices as x1,y1,x2,y2,x3,y3.
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        conflicts_with = "radius"
    )]
    points: Option<Vec<f64>>,
    #[arg(long, requires = "angles")]
    radius: Option<f64>,
    /// Arc angles of A, B, C in degrees, e.g. 0,100,200.
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        requires = "radius"
    )]
    angles: Option<Vec<f64>>,
    /// Circle center as x,y.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    center: Option<Vec<f64>>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum SuiteArg {
    Area,
    Anne,
    Tangential,
    Cyclic,
    Bicentric,
    Theorem8,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Area => vec![Suite::Area],
            SuiteArg::Anne => vec![Suite::Anne],
            SuiteArg::Tangential => vec![Suite::Tangential],
            SuiteArg::Cyclic => vec![Suite::Cyclic],
            SuiteArg::Bicentric => vec![Suite::Bicentric],
            SuiteArg::Theorem8 => vec![Suite::Theorem8],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            input,
            svg,
            json,
            csv,
        } => analyze(&input, svg.as_deref(), json, csv.as_deref()),
        Command::Construct(args) => construct(&args),
        Command::Verify {
            suite,
            samples,
            seed,
            csv,
        } => return verify(suite, samples, seed, csv.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), InputError> {
    std::fs::write(path, contents).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn analyze(
    input: &Path,
    svg_path: Option<&Path>,
    json: bool,
    csv_path: Option<&Path>,
) -> Result<(), InputError> {
    let quads = report::parse_quads(&report::read_to_string(input)?)?;
    let mut reports = Vec::with_capacity(quads.len());
    for (i, q) in quads.iter().enumerate() {
        let analyzed = report::analyze(q).map_err(|e| {
            if quads.len() > 1 {
                InputError::Invalid(format!("quadrilateral {i}: {e}"))
            } else {
                e.into()
            }
        })?;
        reports.push(analyzed);
    }
    if let Some(path) = svg_path {
        let (q, r) = &reports[0];
        write_file(path, &svg::analysis_figure(q, r))?;
    }
    if let Some(path) = csv_path {
        write_file(path, &analysis_csv(reports.iter().map(|(_, r)| r))?)?;
    }
    if json {
        let out: Vec<_> = reports.iter().map(|(_, r)| r).collect();
        let text = if out.len() == 1 {
            serde_json::to_string_pretty(out[0])?
        } else {
            serde_json::to_string_pretty(&out)?
        };
        println!("{text}");
    } else {
        for (i, (_, r)) in reports.iter().enumerate() {
            if i > 0 {
                println!();
            }
            println!("{r}");
        }
    }
    Ok(())
}

fn analysis_csv<'a>(
    reports: impl Iterator<Item = &'a report::AnalysisReport>,
) -> Result<String, InputError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "index",
        "ax",
        "ay",
        "bx",
        "by",
        "cx",
        "cy",
        "dx",
        "dy",
        "area",
        "perimeter",
        "i1x",
        "i1y",
        "r1",
        "i2x",
        "i2y",
        "r2",
        "r_harmonic",
        "label",
        "tangential_residual",
        "cyclic_residual",
        "incenter_gap",
        "area_identity_residual",
    ];
    let to_io = |e: csv::Error| InputError::Invalid(e.to_string());
    w.write_record(header).map_err(to_io)?;
    for (i, r) in reports.enumerate() {
        let v = r.input.vertices;
        let p = &r.incenters;
        let c = &r.classification;
        let mut row = vec![i.to_string()];
        row.extend(v.iter().flatten().map(|x| format!("{x:e}")));
        row.extend(
            [
                r.metrics.area,
                r.metrics.perimeter,
                p.i1.x,
                p.i1.y,
                p.r1,
                p.i2.x,
                p.i2.y,
                p.r2,
                p.r_harmonic,
            ]
            .map(|x| format!("{x:e}")),
        );
        row.push(c.label.to_string());
        row.extend(
            [
                c.tangential_residual,
                c.cyclic_residual,
                c.incenter_gap,
                r.area_identity.residual,
            ]
            .map(|x| format!("{x:e}")),
        );
        w.write_record(&row).map_err(to_io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| InputError::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII fields"))
}

fn expect_len(name: &str, v: &[f64], n: usize) -> Result<(), InputError> {
    if v.len() == n {
        Ok(())
    } else {
        Err(InputError::Invalid(format!(
            "--{name} takes {n} comma-separated numbers, got {}",
            v.len()
        )))
    }
}

fn triangle_input(args: &ConstructArgs) -> Result<TriangleInput, InputError> {
    if let Some(path) = &args.input {
        return Ok(serde_json::from_str(&report::read_to_string(path)?)?);
    }
    if let Some(p) = &args.points {
        expect_len("points", p, 6)?;
        return Ok(TriangleInput::Points {
            points: [[p[0], p[1]], [p[2], p[3]], [p[4], p[5]]],
        });
    }
    match (args.radius, &args.angles) {
        (Some(radius), Some(a)) => {
            expect_len("angles", a, 3)?;
            if let Some(c) = &args.center {
                expect_len("center", c, 2)?;
            }
            Ok(TriangleInput::Angles {
                radius,
                angles_deg: [a[0], a[1], a[2]],
                center: args.center.as_ref().map_or([0.0, 0.0], |c| [c[0], c[1]]),
            })
        }
        _ => Err(InputError::Invalid(
            "give the triangle with --input, --points or --radius with --angles".into(),
        )),
    }
}

fn construct(args: &ConstructArgs) -> Result<(), InputError> {
    let t = triangle_input(args)?.triangle()?;
    let r = report::construct(&t, args.mode)?;
    if let Some(path) = &args.svg {
        write_file(path, &svg::construction_figure(&t, &r))?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&r)?);
    } else {
        println!("{r}");
    }
    Ok(())
}

fn verify(suite: SuiteArg, samples: Option<u64>, seed: u64, csv_path: Option<&Path>) -> ExitCode {
    let outcomes: Vec<_> = suite
        .suites()
        .into_iter()
        .map(|s| verify::run_suite(s, samples.unwrap_or(s.default_samples()), seed))
        .collect();
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {} ({} of {} records pass, seed {})",
            o.suite,
            o.passed_count(),
            o.records.len(),
            seed
        );
        for s in o.summaries() {
            let bound = match s.bound {
                Bound::AtMost(t) => format!("max {:e} <= {t:e}", s.worst),
                Bound::AtLeast(t) => format!("min {:e} >= {t:e}", s.worst),
                Bound::Info => format!("max {:e}", s.worst),
            };
            let fails = if s.failures > 0 {
                format!("  [{} failing]", s.failures)
            } else {
                String::new()
            };
            println!("  {:<28} {bound}{fails}", s.name);
        }
    }
    if let Some(path) = csv_path {
        let written = File::create(path)
            .map_err(csv::Error::from)
            .and_then(|f| verify::write_csv(&outcomes, BufWriter::new(f)));
        if let Err(e) = written {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    let _ = io::Write::flush(&mut io::stdout());
    if outcomes.iter().all(|o| o.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}
