//! The `circtop` command line: classify one graph, run a census, compare
//! against the shipped table of well-covered circulants, verify a shelling
//! certificate. Census results are cached in an append-only JSONL file.

use std::collections::{BTreeMap, HashMap};
use std::ffi::OsString;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::circulant::{
    build_circulant, canonical_representative, enumerate_connection_sets, ConnectionSet, GraphError,
};
use crate::classify::{
    classify_with, merge_isomorphic, ClassificationRecord, ClassifyError, ClassifyOptions, Label,
    Status,
};
use crate::decomp::{check_shelling, DecompError, ShellingCertificate, ShellingCheck, DEFAULT_SHELLING_BUDGET};
use crate::homology::Field;
use crate::simplex::{format_set, independence_complex};

pub const EXIT_OK: i32 = 0;
/// Table differences, or an invalid certificate.
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET_UNKNOWN: i32 = 3;
pub const EXIT_GOLDEN_MISSING: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_INTERNAL: i32 = 6;

/// Overrides the default cache directory.
pub const CACHE_DIR_ENV: &str = "CIRCTOP_CACHE_DIR";
const CACHE_FILE: &str = "census-v1.jsonl";

/// Rows of the reference table: `n:S`, `*` for disconnected, label, `1` if
/// 1-well-covered (`-` for an empty cell).
pub const GOLDEN_TABLE: &str = include_str!("../data/table1.tsv");

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("golden file {0} not found")]
    GoldenMissing(PathBuf),
    #[error("golden file line {line}: {reason}")]
    Golden { line: usize, reason: String },
    #[error("invalid range: need 3 <= n-min <= n-max <= 64, got {0}..={1}")]
    Range(usize, usize),
    #[error("cannot build thread pool: {0}")]
    Pool(String),
}

impl CliError {
    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::GoldenMissing(_) | CliError::Golden { .. } => EXIT_GOLDEN_MISSING,
            CliError::Classify(_) | CliError::Pool(_) => EXIT_INTERNAL,
            CliError::Graph(_) | CliError::Decomp(_) | CliError::Range(..) => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "circtop", version, about = "Topology of independence complexes of circulant graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one circulant graph given as "n:a1,a2,...".
    Classify {
        spec: String,
        #[arg(long)]
        json: bool,
        /// Homology coefficients: QQ or a prime p.
        #[arg(long, default_value = "QQ")]
        field: Field,
        /// Node budget for the shelling search.
        #[arg(long, default_value_t = DEFAULT_SHELLING_BUDGET)]
        budget: u64,
    },
    /// Classify one graph per multiplier class for each n in a range.
    Census {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        well_covered_only: bool,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = "QQ")]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_SHELLING_BUDGET)]
        budget: u64,
        /// Recompute even when a cached record exists.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, conflicts_with = "cache_dir")]
        no_cache: bool,
    },
    /// Compare the census against the reference table of well-covered
    /// circulants.
    Table {
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        /// Reference file to use instead of the built-in one.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Check a shelling order of Ind(G) read from a file.
    VerifyShelling { spec: String, file: PathBuf },
}

/// Parses `args` (program name first) and runs the command, writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Classify {
            spec,
            json,
            field,
            budget,
        } => cmd_classify(&spec, json, ClassifyOptions { field, shelling_budget: budget }, out),
        Command::Census {
            n_min,
            n_max,
            well_covered_only,
            jobs,
            json,
            field,
            budget,
            force,
            cache_dir,
            no_cache,
        } => {
            let mut cache = if no_cache {
                None
            } else {
                let dir = cache_dir.unwrap_or_else(default_cache_dir);
                let (cache, warnings) = CensusCache::open(&dir)?;
                for w in warnings {
                    writeln!(err, "warning: {w}").map_err(|e| CliError::io(Path::new("<stderr>"), e))?;
                }
                Some(cache)
            };
            let params = CensusParams {
                n_min,
                n_max,
                well_covered_only,
                jobs,
                options: ClassifyOptions {
                    field,
                    shelling_budget: budget,
                },
                force,
            };
            let records = run_census(&params, cache.as_mut())?;
            write_census(&records, json, out).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            let unknown = records.iter().filter(|r| r.status == Status::UnknownBudget).count();
            if unknown > 0 {
                writeln!(err, "warning: {unknown} record(s) hit the shelling budget")
                    .map_err(|e| CliError::io(Path::new("<stderr>"), e))?;
                return Ok(EXIT_BUDGET_UNKNOWN);
            }
            Ok(EXIT_OK)
        }
        Command::Table { n_max, golden, jobs } => cmd_table(n_max, golden.as_deref(), jobs, out),
        Command::VerifyShelling { spec, file } => cmd_verify_shelling(&spec, &file, out),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

pub fn cmd_classify(
    spec: &str,
    json: bool,
    options: ClassifyOptions,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let spec: ConnectionSet = spec.parse()?;
    let record = classify_with(&build_circulant(spec), &options)?;
    if json {
        writeln!(out, "{}", render_json(&record)).map_err(stdout_err)?;
    } else {
        write!(out, "{}", render_text(&record)).map_err(stdout_err)?;
    }
    Ok(if record.status == Status::UnknownBudget {
        EXIT_BUDGET_UNKNOWN
    } else {
        EXIT_OK
    })
}

pub fn render_json(record: &ClassificationRecord) -> String {
    serde_json::to_string(record).expect("records serialize")
}

pub fn parse_json(line: &str) -> Result<ClassificationRecord, serde_json::Error> {
    serde_json::from_str(line)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tuple<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn render_text(r: &ClassificationRecord) -> String {
    let gens: Vec<String> = r.spec.generators().iter().map(|s| s.to_string()).collect();
    let mut s = format!("C_{}({})\n", r.spec.n(), gens.join(","));
    let rows = [
        ("connected", yes_no(r.connected).to_string()),
        ("well-covered", yes_no(r.well_covered).to_string()),
        ("alpha", r.alpha.to_string()),
        ("omega", r.omega.to_string()),
        ("label", r.label.to_string()),
        ("1-well-covered", yes_no(r.one_well_covered).to_string()),
        ("CIS", yes_no(r.cis).to_string()),
        ("f", tuple(&r.f.0)),
        ("h", tuple(&r.h.0)),
        ("field", r.field.to_string()),
        ("status", status_str(r.status).to_string()),
    ];
    for (k, v) in rows {
        s.push_str(&format!("  {k:<15}{v}\n"));
    }
    s
}

fn status_str(status: Status) -> &'static str {
    match status {
        Status::Ok => "ok",
        Status::UnknownBudget => "unknown-budget",
    }
}

pub fn write_census(
    records: &[ClassificationRecord],
    json: bool,
    out: &mut dyn Write,
) -> io::Result<()> {
    if json {
        for r in records {
            writeln!(out, "{}", render_json(r))?;
        }
        return Ok(());
    }
    writeln!(out, "spec\tconnected\twell_covered\talpha\tomega\tlabel\tone_wc\tcis\tstatus")?;
    for r in records {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.spec,
            yes_no(r.connected),
            yes_no(r.well_covered),
            r.alpha,
            r.omega,
            r.label,
            yes_no(r.one_well_covered),
            yes_no(r.cis),
            status_str(r.status)
        )?;
    }
    Ok(())
}

/// Flag, then environment, then the user cache directory, then `./.circtop-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("circtop");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("circtop");
    }
    PathBuf::from(".circtop-cache")
}

/// Append-only store of census records keyed by `(n, canonical S, field)`.
/// Each line is `<checksum>\t<json>`, the checksum being the first 8 bytes
/// of SHA-256 of the JSON text in hex.
#[derive(Debug)]
pub struct CensusCache {
    path: PathBuf,
    entries: HashMap<(ConnectionSet, Field), ClassificationRecord>,
    writer: Option<File>,
}

fn checksum(json: &str) -> String {
    let digest = Sha256::digest(json.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

impl CensusCache {
    /// Loads every valid line under `dir`, creating the directory if needed.
    /// Lines failing the checksum or the JSON parse are skipped and
    /// described in the returned warnings.
    pub fn open(dir: &Path) -> Result<(Self, Vec<String>), CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(CACHE_FILE);
        let mut entries = HashMap::new();
        let mut warnings = Vec::new();
        match File::open(&path) {
            Ok(file) => {
                for (i, line) in BufReader::new(file).lines().enumerate() {
                    let line = line.map_err(|e| CliError::io(&path, e))?;
                    if line.is_empty() {
                        continue;
                    }
                    match Self::decode(&line) {
                        Some(record) => {
                            entries.insert(Self::key(&record.spec, record.field), record);
                        }
                        None => warnings.push(format!(
                            "{}:{}: corrupt cache line discarded",
                            path.display(),
                            i + 1
                        )),
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(CliError::io(&path, e)),
        }
        Ok((
            Self {
                path,
                entries,
                writer: None,
            },
            warnings,
        ))
    }

    fn decode(line: &str) -> Option<ClassificationRecord> {
        let (sum, json) = line.split_once('\t')?;
        if sum != checksum(json) {
            return None;
        }
        parse_json(json).ok()
    }

    fn key(spec: &ConnectionSet, field: Field) -> (ConnectionSet, Field) {
        (canonical_representative(spec), field)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Records that ran out of shelling budget are never served, so a rerun
    /// with a bigger budget gets another try.
    pub fn get(&self, spec: &ConnectionSet, field: Field) -> Option<&ClassificationRecord> {
        self.entries
            .get(&Self::key(spec, field))
            .filter(|r| r.status == Status::Ok)
    }

    /// Appends and flushes one record.
    pub fn insert(&mut self, record: &ClassificationRecord) -> Result<(), CliError> {
        if self.writer.is_none() {
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)
                .map_err(|e| CliError::io(&self.path, e))?;
            self.writer = Some(file);
        }
        let json = render_json(record);
        let writer = self.writer.as_mut().expect("opened above");
        writeln!(writer, "{}\t{}", checksum(&json), json)
            .and_then(|_| writer.flush())
            .map_err(|e| CliError::io(&self.path, e))?;
        self.entries
            .insert(Self::key(&record.spec, record.field), record.clone());
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CensusParams {
    pub n_min: usize,
    pub n_max: usize,
    pub well_covered_only: bool,
    /// 0 means one thread per core.
    pub jobs: usize,
    pub options: ClassifyOptions,
    pub force: bool,
}

/// Cached records are read before the workers start; workers send finished
/// records over a channel to this thread, the only writer of the cache.
pub fn run_census(
    params: &CensusParams,
    mut cache: Option<&mut CensusCache>,
) -> Result<Vec<ClassificationRecord>, CliError> {
    if params.n_min < 3 || params.n_min > params.n_max || params.n_max > 64 {
        return Err(CliError::Range(params.n_min, params.n_max));
    }
    let specs: Vec<ConnectionSet> = (params.n_min..=params.n_max)
        .flat_map(enumerate_connection_sets)
        .collect();
    let mut records = Vec::with_capacity(specs.len());
    let mut todo = Vec::new();
    for spec in specs {
        let hit = match (&cache, params.force) {
            (Some(c), false) => c.get(&spec, params.options.field).cloned(),
            _ => None,
        };
        match hit {
            Some(r) => records.push(r),
            None => todo.push(spec),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.jobs)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    let options = params.options;
    let (tx, rx) = mpsc::channel::<Result<ClassificationRecord, ClassifyError>>();
    let mut failure = None;
    std::thread::scope(|scope| {
        scope.spawn(move || {
            pool.install(|| {
                todo.into_par_iter().for_each_with(tx, |tx, spec| {
                    let _ = tx.send(classify_with(&build_circulant(spec), &options));
                });
            });
        });
        for result in rx {
            match result {
                Ok(record) => {
                    if let Some(c) = cache.as_deref_mut() {
                        if let Err(e) = c.insert(&record) {
                            failure.get_or_insert(e);
                        }
                    }
                    records.push(record);
                }
                Err(e) => {
                    failure.get_or_insert(e.into());
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    if params.well_covered_only {
        records.retain(|r| r.well_covered);
    }
    records.sort_by(|a, b| a.spec.census_cmp(&b.spec));
    Ok(records)
}

/// One row of the reference table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub spec: ConnectionSet,
    pub disconnected: bool,
    pub label: Label,
    pub one_well_covered: bool,
}

impl TableRow {
    pub fn from_record(r: &ClassificationRecord) -> Self {
        Self {
            spec: r.spec.clone(),
            disconnected: !r.connected,
            label: r.label,
            one_well_covered: r.one_well_covered,
        }
    }

    fn render(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.spec,
            if self.disconnected { "*" } else { "-" },
            self.label,
            if self.one_well_covered { "1" } else { "-" }
        )
    }

    fn same_verdict(&self, other: &Self) -> bool {
        (self.disconnected, self.label, self.one_well_covered)
            == (other.disconnected, other.label, other.one_well_covered)
    }
}

pub fn parse_golden(text: &str) -> Result<Vec<TableRow>, CliError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| CliError::Golden { line: i + 1, reason };
        let cells: Vec<&str> = line.split('\t').collect();
        let [spec, mark, label, one] = cells[..] else {
            return Err(bad(format!("expected 4 tab-separated cells, got {}", cells.len())));
        };
        rows.push(TableRow {
            spec: spec.parse().map_err(|e: GraphError| bad(e.to_string()))?,
            disconnected: match mark {
                "*" => true,
                "-" | "" => false,
                _ => return Err(bad(format!("bad connectivity mark {mark:?}"))),
            },
            label: label.parse().map_err(bad)?,
            one_well_covered: match one {
                "1" => true,
                "-" | "" => false,
                _ => return Err(bad(format!("bad 1-well-covered cell {one:?}"))),
            },
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Default)]
pub struct TableReport {
    pub compared: usize,
    /// Unified-diff style lines, `-` for the reference, `+` for computed.
    pub diff: Vec<String>,
    /// `(dropped, kept)` census rows merged as isomorphic.
    pub merged: Vec<(ConnectionSet, ConnectionSet)>,
    /// Rows that differ, plus isomorphic pairs classified differently.
    pub differences: usize,
}

/// Diffs the well-covered census for `3..=n_max` against `golden`, matching
/// rows by multiplier class after merging census rows that are isomorphic
/// by other maps.
pub fn compare_table(golden: &[TableRow], n_max: usize, jobs: usize) -> Result<TableReport, CliError> {
    let params = CensusParams {
        n_min: 3,
        n_max,
        well_covered_only: true,
        jobs,
        options: ClassifyOptions::default(),
        force: true,
    };
    let merge = merge_isomorphic(run_census(&params, None)?);
    let mut report = TableReport {
        merged: merge.merged,
        ..TableReport::default()
    };
    for (a, b) in &merge.conflicts {
        report.diff.push(format!("! {a} is isomorphic to {b} but classified differently"));
        report.differences += 1;
    }
    let mut computed: BTreeMap<(usize, usize, Vec<usize>), TableRow> = BTreeMap::new();
    for r in &merge.kept {
        let key = census_key(&r.spec);
        computed.insert(key, TableRow::from_record(r));
    }
    let mut expected = BTreeMap::new();
    for row in golden.iter().filter(|r| r.spec.n() <= n_max) {
        expected.insert(census_key(&canonical_representative(&row.spec)), row.clone());
    }
    let keys: std::collections::BTreeSet<_> = computed.keys().chain(expected.keys()).cloned().collect();
    for key in keys {
        report.compared += 1;
        match (expected.get(&key), computed.get(&key)) {
            (Some(e), Some(c)) if e.same_verdict(c) => {}
            (Some(e), Some(c)) => {
                report.differences += 1;
                let shown = TableRow {
                    spec: e.spec.clone(),
                    ..c.clone()
                };
                report.diff.push(format!("-{}", e.render()));
                report.diff.push(format!("+{}", shown.render()));
            }
            (Some(e), None) => {
                report.differences += 1;
                report.diff.push(format!("-{}", e.render()));
            }
            (None, Some(c)) => {
                report.differences += 1;
                report.diff.push(format!("+{}", c.render()));
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(report)
}

fn census_key(spec: &ConnectionSet) -> (usize, usize, Vec<usize>) {
    (spec.n(), spec.generators().len(), spec.generators().to_vec())
}

pub fn cmd_table(
    n_max: usize,
    golden: Option<&Path>,
    jobs: usize,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (label, text) = match golden {
        Some(path) => match fs::read_to_string(path) {
            Ok(t) => (path.display().to_string(), t),
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(CliError::GoldenMissing(path.to_path_buf()))
            }
            Err(e) => return Err(CliError::io(path, e)),
        },
        None => ("built-in table".to_string(), GOLDEN_TABLE.to_string()),
    };
    let rows = parse_golden(&text)?;
    let report = compare_table(&rows, n_max, jobs)?;
    for (dropped, kept) in &report.merged {
        writeln!(out, "note: {dropped} merged into {kept} (isomorphic, not by a multiplier)")
            .map_err(stdout_err)?;
    }
    if !report.diff.is_empty() {
        writeln!(out, "--- {label}\n+++ computed").map_err(stdout_err)?;
        for line in &report.diff {
            writeln!(out, "{line}").map_err(stdout_err)?;
        }
    }
    let n = report.differences;
    let noun = if n == 1 { "difference" } else { "differences" };
    writeln!(out, "{} rows compared, {n} {noun}", report.compared).map_err(stdout_err)?;
    Ok(if report.diff.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn cmd_verify_shelling(spec: &str, file: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let spec: ConnectionSet = spec.parse()?;
    let ind = independence_complex(&build_circulant(spec));
    ind.require_pure().map_err(DecompError::from)?;
    let text = fs::read_to_string(file).map_err(|e| CliError::io(file, e))?;
    let facet_size = (ind.dim() + 1) as usize;
    let cert = ShellingCertificate::parse(&text, facet_size)?;
    let verdict = match check_shelling(&ind, &cert) {
        Ok(v) => v,
        Err(e) => {
            writeln!(out, "FAIL: {e}").map_err(stdout_err)?;
            return Ok(EXIT_MISMATCH);
        }
    };
    match verdict {
        ShellingCheck::Valid => {
            writeln!(out, "PASS: valid shelling order of {} facets", cert.order.len()).map_err(stdout_err)?;
            Ok(EXIT_OK)
        }
        ShellingCheck::Violation { i, j } => {
            writeln!(
                out,
                "FAIL: facet {i} {} violates the shelling condition against facet {j} {}",
                format_set(cert.order[i - 1]),
                format_set(cert.order[j - 1])
            )
            .map_err(stdout_err)?;
            Ok(EXIT_MISMATCH)
        }
    }
}
