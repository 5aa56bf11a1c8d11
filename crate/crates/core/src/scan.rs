//! Long-running sweep over the triple table with the space-diagonal test.
//!
//! The scan walks S blocks in table order, builds every brick reachable from
//! each row, deduplicates bricks by their edge multiset (accumulating source
//! rows), and runs the perfect-cuboid test x² + y² + z² = d² on each brick.
//! Work fans out per S inside a stride-aligned group of blocks; groups are
//! merged strictly in order, so the output is byte-identical for any worker
//! count. Checkpoints commit at group boundaries and a corrupted checkpoint
//! is refused, never silently restarted.
//!
//! File formats (both versioned):
//!
//! ```text
//! scan-report-version 1            scan-checkpoint-version 1
//! s-max 500                        max-edge none
//! max-edge none                    last-completed-s 240
//! brick x=… y=… z=… a=… b=… c=…    rows-processed 411
//!   primitive=… source=N.n[,N.n…]  bricks-found 1
//!   [k1=… m1=… m3=… k2=… m2=…      primitive-bricks-found 1
//!    m4=… q=…]                     perfect-cuboids-found 0
//! finding perfect-cuboid …         brick-digest f00…
//! summary last-completed-s=… …     brick …
//!                                  end
//! ```

use crate::brick::{build_bricks_for, BrickMeta, EulerBrick};
use crate::error::{Error, Result};
use crate::factor::sq;
use crate::oracle::isqrt_exact;
use crate::ppt::{partitions_of, triple_from, OrdinalIndex};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const REPORT_VERSION: u32 = 1;
pub const CHECKPOINT_VERSION: u32 = 1;

/// x² + y² + z² without overflow.
pub fn diagonal_square(x: u64, y: u64, z: u64) -> u128 {
    sq(x) + sq(y) + sq(z)
}

/// The integer space diagonal of an edge triple, if it exists.
pub fn diagonal_of(x: u64, y: u64, z: u64) -> Option<u64> {
    isqrt_exact(diagonal_square(x, y, z)).map(|d| d as u64)
}

/// Outcome of the perfect-cuboid test on one brick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuboidTestResult {
    pub brick: EulerBrick,
    pub diagonal_square: u128,
    /// Present iff `diagonal_square` is a perfect square.
    pub d: Option<u64>,
}

/// Tests a brick for an integer space diagonal. The three equivalent
/// groupings x² + b², y² + c², a² + z² are evaluated and must agree with the
/// direct sum.
pub fn space_diagonal_check(brick: &EulerBrick) -> CuboidTestResult {
    let dsq = diagonal_square(brick.x(), brick.y(), brick.z());
    assert_eq!(sq(brick.x()) + sq(brick.b()), dsq, "x^2 + b^2 grouping disagrees");
    assert_eq!(sq(brick.y()) + sq(brick.c()), dsq, "y^2 + c^2 grouping disagrees");
    assert_eq!(sq(brick.a()) + sq(brick.z()), dsq, "a^2 + z^2 grouping disagrees");
    CuboidTestResult { brick: *brick, diagonal_square: dsq, d: isqrt_exact(dsq).map(|d| d as u64) }
}

/// A brick in a scan result, with every table row it was reached from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundBrick {
    pub brick: EulerBrick,
    /// Ascending, deduplicated source rows.
    pub sources: Vec<OrdinalIndex>,
}

impl FoundBrick {
    /// Renders the fixed-order line format:
    /// `brick x= y= z= a= b= c= primitive= source= [k1= m1= m3= k2= m2= m4= q=]`.
    pub fn to_line(&self) -> String {
        let b = &self.brick;
        let mut line = format!(
            "brick x={} y={} z={} a={} b={} c={} primitive={}",
            b.x(),
            b.y(),
            b.z(),
            b.a(),
            b.b(),
            b.c(),
            b.is_primitive()
        );
        if self.sources.is_empty() {
            line.push_str(" source=-");
        } else {
            let list: Vec<String> = self.sources.iter().map(|s| s.to_string()).collect();
            let _ = write!(line, " source={}", list.join(","));
        }
        if let Some(m) = b.meta() {
            let _ = write!(
                line,
                " k1={} m1={} m3={} k2={} m2={} m4={} q={}",
                m.k1, m.m1, m.m3, m.k2, m.m2, m.m4, m.q
            );
        }
        line
    }

    /// Parses and revalidates a line produced by [`FoundBrick::to_line`].
    pub fn from_line(line: &str) -> Result<FoundBrick> {
        let bad = |why: &str| Error::Checkpoint(format!("{why} in brick line {line:?}"));
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("brick") {
            return Err(bad("missing brick prefix"));
        }
        let mut fields: Vec<(&str, &str)> = Vec::new();
        for tok in tokens {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad("token without ="))?;
            fields.push((k, v));
        }
        let expect_num = |i: usize, key: &str| -> Result<u64> {
            let (k, v) = fields.get(i).ok_or_else(|| bad("missing field"))?;
            if *k != key {
                return Err(bad(&format!("expected field {key}, got {k}")));
            }
            v.parse().map_err(|_| bad(&format!("bad number in {key}")))
        };
        let x = expect_num(0, "x")?;
        let y = expect_num(1, "y")?;
        let z = expect_num(2, "z")?;
        let a = expect_num(3, "a")?;
        let b = expect_num(4, "b")?;
        let c = expect_num(5, "c")?;
        let (k, v) = fields.get(6).ok_or_else(|| bad("missing primitive flag"))?;
        if *k != "primitive" {
            return Err(bad("expected field primitive"));
        }
        let primitive: bool = v.parse().map_err(|_| bad("bad primitive flag"))?;
        let (k, v) = fields.get(7).ok_or_else(|| bad("missing source field"))?;
        if *k != "source" {
            return Err(bad("expected field source"));
        }
        let sources: Vec<OrdinalIndex> = if *v == "-" {
            Vec::new()
        } else {
            v.split(',')
                .map(|s| s.parse().map_err(|_| bad("bad source row")))
                .collect::<Result<_>>()?
        };

        let mut brick = EulerBrick::from_edges(x, y, z).ok_or_else(|| bad("faces are not square"))?;
        if (brick.a(), brick.b(), brick.c()) != (a, b, c) {
            return Err(bad("stored diagonals disagree with the edges"));
        }
        if brick.is_primitive() != primitive {
            return Err(bad("stored primitive flag disagrees with the edges"));
        }

        match fields.len() {
            8 => {}
            15 => {
                let k1 = expect_num(8, "k1")?;
                let m1 = expect_num(9, "m1")?;
                let m3 = expect_num(10, "m3")?;
                let k2 = expect_num(11, "k2")?;
                let m2 = expect_num(12, "m2")?;
                let m4 = expect_num(13, "m4")?;
                let q = expect_num(14, "q")?;
                let source = *sources.first().ok_or_else(|| bad("meta without source row"))?;
                brick = brick
                    .with_meta(BrickMeta { k1, m1, m3, k2, m2, m4, q, source })
                    .map_err(|e| bad(&format!("inconsistent meta ({e})")))?;
            }
            n => return Err(bad(&format!("unexpected field count {n}"))),
        }
        Ok(FoundBrick { brick, sources })
    }
}

/// A brick whose space diagonal came out integral. Expected never to occur;
/// reported as a structured finding, not an assertion failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuboidFinding {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub d: u64,
}

impl CuboidFinding {
    pub fn to_line(&self) -> String {
        format!("finding perfect-cuboid x={} y={} z={} d={}", self.x, self.y, self.z, self.d)
    }

    pub fn from_line(line: &str) -> Result<CuboidFinding> {
        let bad = || Error::Checkpoint(format!("malformed finding line {line:?}"));
        let rest = line.strip_prefix("finding perfect-cuboid ").ok_or_else(bad)?;
        let mut vals = [0u64; 4];
        let keys = ["x", "y", "z", "d"];
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(bad());
        }
        for (i, tok) in toks.iter().enumerate() {
            let (k, v) = tok.split_once('=').ok_or_else(bad)?;
            if k != keys[i] {
                return Err(bad());
            }
            vals[i] = v.parse().map_err(|_| bad())?;
        }
        let f = CuboidFinding { x: vals[0], y: vals[1], z: vals[2], d: vals[3] };
        if diagonal_of(f.x, f.y, f.z) != Some(f.d) {
            return Err(bad());
        }
        Ok(f)
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Order-independent checksum of a brick set: XOR of per-brick hashes of the
/// sorted edge multiset.
pub fn brick_set_digest<'a>(bricks: impl IntoIterator<Item = &'a EulerBrick>) -> u64 {
    let mut digest = 0u64;
    for b in bricks {
        let [p, q, r] = b.sorted_edges();
        digest ^= fnv1a64(format!("{p},{q},{r}").as_bytes());
    }
    digest
}

/// Scan parameters.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    /// Inclusive upper bound on the generating-square side (even, ≥ 2).
    pub s_max: u64,
    /// Discard bricks with any edge above this bound.
    pub max_edge: Option<u64>,
    /// Where to commit checkpoints; in-memory only when absent.
    pub checkpoint_path: Option<PathBuf>,
    /// Checkpoint every `stride` values of S (boundaries at S % stride == 0).
    pub stride: u64,
    /// Worker threads for the per-group fan-out.
    pub workers: usize,
    /// Stop after committing the group containing this S (for staged runs).
    pub stop_after: Option<u64>,
    /// Resume from `checkpoint_path` instead of starting fresh.
    pub resume: bool,
}

impl ScanConfig {
    pub fn new(s_max: u64) -> Self {
        ScanConfig {
            s_max,
            max_edge: None,
            checkpoint_path: None,
            stride: 100,
            workers: 1,
            stop_after: None,
            resume: false,
        }
    }
}

/// Result of a scan (complete or stopped early).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub s_max: u64,
    pub max_edge: Option<u64>,
    pub last_completed_s: u64,
    pub rows_processed: u64,
    /// Sorted by (first source row, z).
    pub bricks: Vec<FoundBrick>,
    pub findings: Vec<CuboidFinding>,
}

impl ScanReport {
    pub fn completed(&self) -> bool {
        self.last_completed_s >= self.s_max
    }

    pub fn bricks_found(&self) -> u64 {
        self.bricks.len() as u64
    }

    pub fn primitive_bricks_found(&self) -> u64 {
        self.bricks.iter().filter(|fb| fb.brick.is_primitive()).count() as u64
    }

    pub fn perfect_cuboids_found(&self) -> u64 {
        self.findings.len() as u64
    }

    pub fn brick_digest(&self) -> u64 {
        brick_set_digest(self.bricks.iter().map(|fb| &fb.brick))
    }

    /// Sorted edge multisets of the primitive bricks.
    pub fn primitive_edge_sets(&self) -> Vec<[u64; 3]> {
        let mut out: Vec<[u64; 3]> = self
            .bricks
            .iter()
            .filter(|fb| fb.brick.is_primitive())
            .map(|fb| fb.brick.sorted_edges())
            .collect();
        out.sort_unstable();
        out
    }

    fn max_edge_text(max_edge: Option<u64>) -> String {
        max_edge.map_or_else(|| "none".to_string(), |m| m.to_string())
    }

    /// Deterministic text rendering: brick lines, finding lines, then the
    /// summary block. No timestamps, no worker count.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scan-report-version {REPORT_VERSION}");
        let _ = writeln!(out, "s-max {}", self.s_max);
        let _ = writeln!(out, "max-edge {}", Self::max_edge_text(self.max_edge));
        for fb in &self.bricks {
            let _ = writeln!(out, "{}", fb.to_line());
        }
        for f in &self.findings {
            let _ = writeln!(out, "{}", f.to_line());
        }
        let _ = writeln!(
            out,
            "summary last-completed-s={} rows-processed={} bricks-found={} \
             primitive-bricks-found={} perfect-cuboids-found={} brick-digest={:016x}",
            self.last_completed_s,
            self.rows_processed,
            self.bricks_found(),
            self.primitive_bricks_found(),
            self.perfect_cuboids_found(),
            self.brick_digest()
        );
        out
    }
}

/// Resumable scan state, as stored in the checkpoint file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanCheckpoint {
    pub max_edge: Option<u64>,
    pub last_completed_s: u64,
    pub rows_processed: u64,
    pub bricks_found: u64,
    pub primitive_bricks_found: u64,
    pub perfect_cuboids_found: u64,
    pub brick_digest: u64,
    pub bricks: Vec<FoundBrick>,
    pub findings: Vec<CuboidFinding>,
}

impl ScanCheckpoint {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scan-checkpoint-version {CHECKPOINT_VERSION}");
        let _ = writeln!(out, "max-edge {}", ScanReport::max_edge_text(self.max_edge));
        let _ = writeln!(out, "last-completed-s {}", self.last_completed_s);
        let _ = writeln!(out, "rows-processed {}", self.rows_processed);
        let _ = writeln!(out, "bricks-found {}", self.bricks_found);
        let _ = writeln!(out, "primitive-bricks-found {}", self.primitive_bricks_found);
        let _ = writeln!(out, "perfect-cuboids-found {}", self.perfect_cuboids_found);
        let _ = writeln!(out, "brick-digest {:016x}", self.brick_digest);
        for fb in &self.bricks {
            let _ = writeln!(out, "{}", fb.to_line());
        }
        for f in &self.findings {
            let _ = writeln!(out, "{}", f.to_line());
        }
        let _ = writeln!(out, "end");
        out
    }

    /// Strict parse; any inconsistency is a refusal to resume.
    pub fn parse(text: &str) -> Result<ScanCheckpoint> {
        let bad = |why: String| Error::Checkpoint(why);
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty checkpoint file".into()))?;
        match header.strip_prefix("scan-checkpoint-version ") {
            Some(v) if v.trim() == CHECKPOINT_VERSION.to_string() => {}
            Some(v) => return Err(bad(format!("unsupported checkpoint version {v}"))),
            None => return Err(bad(format!("bad checkpoint header {header:?}"))),
        }

        let mut field = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad(format!("missing field {key}")))?;
            line.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(|v| v.to_string())
                .ok_or_else(|| bad(format!("expected field {key}, got {line:?}")))
        };
        let max_edge_text = field("max-edge")?;
        let max_edge = if max_edge_text == "none" {
            None
        } else {
            Some(max_edge_text.parse().map_err(|_| bad("bad max-edge".into()))?)
        };
        let num = |v: String, key: &str| -> Result<u64> {
            v.parse().map_err(|_| bad(format!("bad number in {key}")))
        };
        let last_completed_s = num(field("last-completed-s")?, "last-completed-s")?;
        let rows_processed = num(field("rows-processed")?, "rows-processed")?;
        let bricks_found = num(field("bricks-found")?, "bricks-found")?;
        let primitive_bricks_found = num(field("primitive-bricks-found")?, "primitive-bricks-found")?;
        let perfect_cuboids_found = num(field("perfect-cuboids-found")?, "perfect-cuboids-found")?;
        let digest_text = field("brick-digest")?;
        let brick_digest =
            u64::from_str_radix(&digest_text, 16).map_err(|_| bad("bad brick-digest".into()))?;

        let mut bricks = Vec::new();
        let mut findings = Vec::new();
        let mut saw_end = false;
        for line in lines {
            if line == "end" {
                saw_end = true;
                break;
            }
            if line.starts_with("brick ") {
                bricks.push(FoundBrick::from_line(line)?);
            } else if line.starts_with("finding ") {
                findings.push(CuboidFinding::from_line(line)?);
            } else {
                return Err(bad(format!("unexpected checkpoint line {line:?}")));
            }
        }
        if !saw_end {
            return Err(bad("checkpoint file is truncated (no end marker)".into()));
        }

        if bricks.len() as u64 != bricks_found {
            return Err(bad("brick count disagrees with brick lines".into()));
        }
        let primitive = bricks.iter().filter(|fb| fb.brick.is_primitive()).count() as u64;
        if primitive != primitive_bricks_found {
            return Err(bad("primitive brick count disagrees with brick lines".into()));
        }
        if findings.len() as u64 != perfect_cuboids_found {
            return Err(bad("finding count disagrees with finding lines".into()));
        }
        let recomputed = brick_set_digest(bricks.iter().map(|fb| &fb.brick));
        if recomputed != brick_digest {
            return Err(bad(format!(
                "brick digest mismatch (stored {brick_digest:016x}, recomputed {recomputed:016x})"
            )));
        }
        Ok(ScanCheckpoint {
            max_edge,
            last_completed_s,
            rows_processed,
            bricks_found,
            primitive_bricks_found,
            perfect_cuboids_found,
            brick_digest,
            bricks,
            findings,
        })
    }

    pub fn load(path: &Path) -> Result<ScanCheckpoint> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Checkpoint(format!("cannot read {}: {e}", path.display())))?;
        ScanCheckpoint::parse(&text)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.render())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

struct ScanState {
    rows_processed: u64,
    last_completed_s: u64,
    bricks: BTreeMap<[u64; 3], FoundBrick>,
    findings: Vec<CuboidFinding>,
}

impl ScanState {
    fn fresh() -> Self {
        ScanState {
            rows_processed: 0,
            last_completed_s: 0,
            bricks: BTreeMap::new(),
            findings: Vec::new(),
        }
    }

    fn from_checkpoint(cp: ScanCheckpoint) -> Self {
        let mut bricks = BTreeMap::new();
        for fb in cp.bricks {
            bricks.insert(fb.brick.sorted_edges(), fb);
        }
        ScanState {
            rows_processed: cp.rows_processed,
            last_completed_s: cp.last_completed_s,
            bricks,
            findings: cp.findings,
        }
    }

    fn absorb(&mut self, brick: EulerBrick) {
        let key = brick.sorted_edges();
        let source = brick.meta().expect("scan bricks carry meta").source;
        match self.bricks.get_mut(&key) {
            Some(found) => {
                if !found.sources.contains(&source) {
                    found.sources.push(source);
                    found.sources.sort_unstable();
                }
            }
            None => {
                let test = space_diagonal_check(&brick);
                if let Some(d) = test.d {
                    self.findings.push(CuboidFinding {
                        x: brick.x(),
                        y: brick.y(),
                        z: brick.z(),
                        d,
                    });
                }
                self.bricks.insert(key, FoundBrick { brick, sources: vec![source] });
            }
        }
    }

    fn checkpoint(&self, max_edge: Option<u64>) -> ScanCheckpoint {
        let bricks: Vec<FoundBrick> = self.bricks.values().cloned().collect();
        ScanCheckpoint {
            max_edge,
            last_completed_s: self.last_completed_s,
            rows_processed: self.rows_processed,
            bricks_found: bricks.len() as u64,
            primitive_bricks_found: bricks.iter().filter(|fb| fb.brick.is_primitive()).count()
                as u64,
            perfect_cuboids_found: self.findings.len() as u64,
            brick_digest: brick_set_digest(bricks.iter().map(|fb| &fb.brick)),
            bricks,
            findings: self.findings.clone(),
        }
    }

    fn report(&self, s_max: u64, max_edge: Option<u64>) -> ScanReport {
        let mut bricks: Vec<FoundBrick> = self.bricks.values().cloned().collect();
        bricks.sort_by_key(|fb| (fb.sources[0], fb.brick.z(), fb.brick.sorted_edges()));
        ScanReport {
            s_max,
            max_edge,
            last_completed_s: self.last_completed_s,
            rows_processed: self.rows_processed,
            bricks,
            findings: self.findings.clone(),
        }
    }
}

/// Bricks reachable from one S block, in row order.
fn process_block(s: u64, max_edge: Option<u64>) -> (u64, Vec<EulerBrick>) {
    let gens = partitions_of(s).expect("scan walks even S only");
    let rows = gens.len() as u64;
    let mut bricks = Vec::new();
    for gen in gens {
        let tr = triple_from(gen);
        for brick in build_bricks_for(&tr) {
            if max_edge.is_some_and(|limit| brick.max_edge() > limit) {
                continue;
            }
            bricks.push(brick);
        }
    }
    (rows, bricks)
}

/// Runs the sweep described by `config`.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    if config.s_max < 2 || config.s_max % 2 != 0 {
        return Err(Error::invalid(format!("s_max must be even and >= 2 (got {})", config.s_max)));
    }
    if config.stride == 0 {
        return Err(Error::invalid("stride must be positive"));
    }
    if config.workers == 0 {
        return Err(Error::invalid("workers must be at least 1"));
    }

    let mut state = if config.resume {
        let path = config
            .checkpoint_path
            .as_ref()
            .ok_or_else(|| Error::invalid("resume requires a checkpoint path"))?;
        let cp = ScanCheckpoint::load(path)?;
        if cp.max_edge != config.max_edge {
            return Err(Error::Checkpoint(format!(
                "checkpoint was written with max-edge {:?}, scan asked for {:?}",
                cp.max_edge, config.max_edge
            )));
        }
        ScanState::from_checkpoint(cp)
    } else {
        ScanState::fresh()
    };

    let pool = (config.workers > 1)
        .then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers)
                .build()
                .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))
        })
        .transpose()?;

    // stride-aligned groups of S values; boundaries at S % stride == 0 are
    // absolute, so a resumed scan commits at the same points
    let mut start = state.last_completed_s + 2;
    if start < 2 {
        start = 2;
    }
    let mut group: Vec<u64> = Vec::new();
    let mut s = start;
    while s <= config.s_max {
        group.push(s);
        let boundary = s % config.stride == 0 || s == config.s_max;
        if boundary {
            let results: Vec<(u64, Vec<EulerBrick>)> = match &pool {
                Some(pool) => pool.install(|| {
                    group.par_iter().map(|&s| process_block(s, config.max_edge)).collect()
                }),
                None => group.iter().map(|&s| process_block(s, config.max_edge)).collect(),
            };
            for (rows, bricks) in results {
                state.rows_processed += rows;
                for brick in bricks {
                    state.absorb(brick);
                }
            }
            state.last_completed_s = s;
            if let Some(path) = &config.checkpoint_path {
                state.checkpoint(config.max_edge).store(path)?;
            }
            if config.stop_after.is_some_and(|limit| s >= limit) {
                return Ok(state.report(config.s_max, config.max_edge));
            }
            group.clear();
        }
        s += 2;
    }
    debug_assert!(group.is_empty());
    Ok(state.report(config.s_max, config.max_edge))
}
