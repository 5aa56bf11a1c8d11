//! `cuboid` — batch front end for the triple table, gnomon calculus, brick
//! construction, and the perfect-cuboid scan.
//!
//! Every number printed here comes straight from the library and its
//! validators; the CLI adds no arithmetic of its own. Data sections are a
//! pure function of the flags, so outputs can be used as golden files.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 validator or
//! cross-check failure.

use clap::{Parser, Subcommand, ValueEnum};
use cuboid_core::brick::{
    alternative_brick, build_bricks_for, family_alternative, parametric_family,
};
use cuboid_core::gnomon::{connected_gnomons, format_terms, GnomonDescriptor};
use cuboid_core::oracle::{brute_force_bricks, classical_ppt_enum};
use cuboid_core::ppt::{
    enumerate_ordered, from_mn, ordinal_of, representations_of_even_leg,
    representations_of_odd_leg, triple_from, write_table_csv, GeneratingSquare, MnParams,
    PrimitiveTriple,
};
use cuboid_core::scan::{scan, FoundBrick, ScanConfig};
use cuboid_core::Error;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_INPUT: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

/// Environment variable that anchors relative checkpoint paths.
const CHECKPOINT_DIR_VAR: &str = "CUBOID_CHECKPOINT_DIR";

#[derive(Parser)]
#[command(
    name = "cuboid",
    version,
    about = "Primitive Pythagorean triples, Euler bricks, and the perfect-cuboid scan"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Plain,
    Csv,
    StructuredText,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the ordered triple table for S = 2, 4, …, s-max.
    Table {
        #[arg(long)]
        s_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// One table row, addressed by (S, t) or by classical (m, n).
    Triple {
        #[arg(long, requires = "t", conflicts_with_all = ["m", "n"])]
        s: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, requires = "n")]
        m: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// All table rows sharing a given leg.
    Reps {
        /// Even leg to look up.
        #[arg(long, conflicts_with = "odd")]
        even: Option<u64>,
        /// Odd leg to look up.
        #[arg(long)]
        odd: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump the connected gnomon pair of a row as odd-number progressions.
    Gnomon {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Construct the Euler bricks reachable from a row, with alternatives.
    Brick {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The parametric family and its reduced alternative for r = 1..=r-max.
    Family {
        #[arg(long, default_value_t = 10)]
        r_max: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep the table, build bricks, and test each for a perfect cuboid.
    Scan {
        #[arg(long)]
        s_max: u64,
        /// Drop bricks with any edge above this bound.
        #[arg(long)]
        max_edge: Option<u64>,
        /// Checkpoint file; relative paths resolve under $CUBOID_CHECKPOINT_DIR.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Commit a checkpoint every this many values of S.
        #[arg(long, default_value_t = 100)]
        stride: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Stop after committing the block containing this S (staged runs).
        #[arg(long)]
        stop_after: Option<u64>,
        /// Continue from the checkpoint instead of starting over.
        #[arg(long, default_value_t = false)]
        resume: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-check the constructive pipeline against the brute-force oracles.
    OracleVerify {
        /// Hypotenuse bound for the triple set-equality check.
        #[arg(long, default_value_t = 2000)]
        a_max: u64,
        /// Edge bound for the brick completeness check.
        #[arg(long, default_value_t = 500)]
        max_edge: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Table { s_max, format, output } => {
            let text = render_table(s_max, format)?;
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Triple { s, t, m, n, format, output } => {
            let gen = resolve_gen(s, t, m, n)?;
            let text = render_rows(std::iter::once(gen), format);
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Reps { even, odd, format, output } => {
            let gens = match (even, odd) {
                (Some(y), None) => representations_of_even_leg(y)?,
                (None, Some(x)) => representations_of_odd_leg(x)?,
                _ => return Err(Error::InvalidInput("pass exactly one of --even or --odd".into())),
            };
            let text = render_rows(gens.into_iter(), format);
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gnomon { s, t, output } => {
            let gen = resolve_gen(Some(s), Some(t), None, None)?;
            let text = render_gnomons(gen);
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Brick { s, t, output } => {
            let gen = resolve_gen(Some(s), Some(t), None, None)?;
            let text = render_bricks(triple_from(gen))?;
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { r_max, output } => {
            if r_max < 1 {
                return Err(Error::InvalidInput("r-max must be at least 1".into()));
            }
            let mut text = String::new();
            for r in 1..=r_max {
                let f = parametric_family(r);
                let _ = writeln!(
                    text,
                    "family r={} legA={} legB={} z={} diagA={} diagB={} third-face-square={}",
                    f.r, f.leg_a, f.leg_b, f.z, f.diag_a, f.diag_b, f.third_face_square
                );
                let f = family_alternative(r);
                let _ = writeln!(
                    text,
                    "family-alternative r={} legA={} legB={} z={} diagA={} diagB={} third-face-square={}",
                    f.r, f.leg_a, f.leg_b, f.z, f.diag_a, f.diag_b, f.third_face_square
                );
            }
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            s_max,
            max_edge,
            checkpoint,
            stride,
            workers,
            stop_after,
            resume,
            output,
        } => {
            let config = ScanConfig {
                s_max,
                max_edge,
                checkpoint_path: checkpoint.map(resolve_checkpoint_path),
                stride,
                workers,
                stop_after,
                resume,
            };
            let report = scan(&config)?;
            for finding in &report.findings {
                eprintln!("FINDING: integer space diagonal — {}", finding.to_line());
            }
            if !report.completed() {
                eprintln!(
                    "stopped early at S={} (of {}); resume with --resume",
                    report.last_completed_s, report.s_max
                );
            }
            emit(output, &report.render())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleVerify { a_max, max_edge } => {
            let ok = oracle_verify(a_max, max_edge)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK_FAILED) })
        }
    }
}

fn emit(output: Option<PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn resolve_checkpoint_path(path: PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = std::env::var_os(CHECKPOINT_DIR_VAR) {
            return PathBuf::from(dir).join(path);
        }
    }
    path
}

fn resolve_gen(
    s: Option<u64>,
    t: Option<u64>,
    m: Option<u64>,
    n: Option<u64>,
) -> Result<GeneratingSquare, Error> {
    match (s, t, m, n) {
        (Some(s), Some(t), None, None) => {
            if t == 0 || s % (2 * t) != 0 {
                return Err(Error::InvalidInput(format!("no row at S={s}, t={t}: t must divide S/2")));
            }
            GeneratingSquare::new(t, s / (2 * t))
        }
        (None, None, Some(m), Some(n)) => Ok(from_mn(MnParams::new(m, n)?)),
        _ => Err(Error::InvalidInput("pass either --s with --t, or --m with --n".into())),
    }
}

fn render_table(s_max: u64, format: Format) -> Result<String, Error> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_table_csv(s_max, &mut buf)?;
            Ok(String::from_utf8(buf).expect("table rows are ASCII"))
        }
        Format::Plain | Format::StructuredText => {
            let rows: Vec<GeneratingSquare> =
                enumerate_ordered(s_max)?.map(|(_, tr)| tr.gen()).collect();
            Ok(render_rows(rows.into_iter(), format))
        }
    }
}

fn render_rows(gens: impl Iterator<Item = GeneratingSquare>, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("N,n,S,t,l,x,y,a\n");
            for gen in gens {
                let (idx, tr) = (ordinal_of(gen), triple_from(gen));
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    idx.major, idx.minor, gen.side(), gen.t(), gen.l(), tr.x(), tr.y(), tr.a()
                );
            }
        }
        Format::Plain => {
            out.push_str("N.n S t l x y a\n");
            for gen in gens {
                let (idx, tr) = (ordinal_of(gen), triple_from(gen));
                let _ = writeln!(
                    out,
                    "{} {} {} {} {} {} {}",
                    idx, gen.side(), gen.t(), gen.l(), tr.x(), tr.y(), tr.a()
                );
            }
        }
        Format::StructuredText => {
            for gen in gens {
                let (idx, tr) = (ordinal_of(gen), triple_from(gen));
                let _ = writeln!(
                    out,
                    "row N={} n={} S={} t={} l={} x={} y={} a={}",
                    idx.major, idx.minor, gen.side(), gen.t(), gen.l(), tr.x(), tr.y(), tr.a()
                );
            }
        }
    }
    out
}

fn render_one_gnomon(out: &mut String, name: &str, g: &GnomonDescriptor) {
    let _ = writeln!(
        out,
        "{name} area={} thickness={} first={} middle={} last={} base={}{}",
        g.area(),
        g.thickness(),
        g.first(),
        g.middle(),
        g.last(),
        g.base(),
        if g.is_full_square() { " full-square" } else { "" }
    );
    if g.thickness() <= 400 {
        out.push_str(&format_terms(g, 10));
    } else {
        let _ = writeln!(out, "(terms omitted: thickness {} > 400)", g.thickness());
    }
}

fn render_gnomons(gen: GeneratingSquare) -> String {
    let tr = triple_from(gen);
    let idx = ordinal_of(gen);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "triple {idx} S={} t={} l={} x={} y={} a={}",
        gen.side(), gen.t(), gen.l(), tr.x(), tr.y(), tr.a()
    );
    let pair = connected_gnomons(&tr);
    render_one_gnomon(&mut out, "G_x", &pair.g_x);
    render_one_gnomon(&mut out, "G_y", &pair.g_y);
    out
}

fn render_bricks(tr: PrimitiveTriple) -> Result<String, Error> {
    let mut out = String::new();
    let bricks = build_bricks_for(&tr);
    if bricks.is_empty() {
        let _ = writeln!(
            out,
            "no bricks constructible from row {} (x={} y={})",
            ordinal_of(tr.gen()), tr.x(), tr.y()
        );
        return Ok(out);
    }
    for brick in bricks {
        let source = brick.meta().expect("constructed bricks carry meta").source;
        let found = FoundBrick { brick, sources: vec![source] };
        let _ = writeln!(out, "{}", found.to_line());
        let alt = alternative_brick(&brick)?;
        let _ = writeln!(
            out,
            "alternative x={} y={} z={} a={} b={} c={} primitive={}",
            alt.x(), alt.y(), alt.z(), alt.a(), alt.b(), alt.c(), alt.is_primitive()
        );
    }
    Ok(out)
}

/// Runs both oracle comparisons, printing one PASS/FAIL line each plus
/// structured findings for any discrepancy. Returns overall success.
fn oracle_verify(a_max: u64, max_edge: u64) -> Result<bool, Error> {
    if a_max < 5 {
        return Err(Error::InvalidInput("a-max must be at least 5".into()));
    }
    if max_edge < 3 {
        return Err(Error::InvalidInput("max-edge must be at least 3".into()));
    }
    let mut all_ok = true;

    // triples: ordered enumeration vs classical formulas
    let s_max = ((a_max - 3) / 2) * 2;
    let ours: BTreeSet<(u64, u64, u64)> = enumerate_ordered(s_max.max(2))?
        .map(|(_, tr)| (tr.x(), tr.y(), tr.a()))
        .filter(|&(_, _, a)| a <= a_max)
        .collect();
    let classical = classical_ppt_enum(a_max);
    if ours == classical {
        println!("PASS triples: {} primitive triples with a <= {a_max} match the classical enumeration", ours.len());
    } else {
        all_ok = false;
        println!("FAIL triples: enumeration disagrees with the classical formulas");
        for missing in classical.difference(&ours).take(10) {
            println!("finding triple-missing x={} y={} a={}", missing.0, missing.1, missing.2);
        }
        for extra in ours.difference(&classical).take(10) {
            println!("finding triple-extra x={} y={} a={}", extra.0, extra.1, extra.2);
        }
    }

    // bricks: construction completeness against the exhaustive search
    let brute: Vec<_> = brute_force_bricks(max_edge).into_iter().filter(|b| b.is_primitive()).collect();
    let mut needed_s = 2u64;
    let mut unreachable = Vec::new();
    for b in &brute {
        // the construction starts from a coprime face; S = x + y − a for it
        let faces = [
            (b.x(), b.y(), b.a()),
            (b.y(), b.z(), b.b()),
            (b.x(), b.z(), b.c()),
        ];
        let primitive_face = faces.iter().copied().find(|&(p, q, _)| gcd(p, q) == 1);
        match primitive_face {
            Some((p, q, h)) => needed_s = needed_s.max(p + q - h),
            None => unreachable.push(b),
        }
    }
    let mut cfg = ScanConfig::new(needed_s.max(2));
    cfg.max_edge = Some(max_edge);
    let report = scan(&cfg)?;
    let scanned: BTreeSet<[u64; 3]> = report.primitive_edge_sets().into_iter().collect();
    let brute_sets: BTreeSet<[u64; 3]> = brute.iter().map(|b| b.sorted_edges()).collect();

    if scanned == brute_sets && unreachable.is_empty() {
        println!(
            "PASS bricks: scan to S={} reproduces all {} primitive bricks with edges <= {max_edge}",
            cfg.s_max,
            brute_sets.len()
        );
    } else {
        all_ok = false;
        println!("FAIL bricks: construction does not cover the brute-force set at max-edge {max_edge}");
        for b in &unreachable {
            let [p, q, r] = b.sorted_edges();
            println!("finding brick-unreachable x={p} y={q} z={r} (no coprime face pair)");
        }
        for missing in brute_sets.difference(&scanned) {
            println!("finding brick-missing x={} y={} z={}", missing[0], missing[1], missing[2]);
        }
        for extra in scanned.difference(&brute_sets) {
            println!("finding brick-extra x={} y={} z={}", extra[0], extra[1], extra[2]);
        }
    }

    println!("{}", if all_ok { "oracle-verify: all checks passed" } else { "oracle-verify: FAILURES above" });
    Ok(all_ok)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
