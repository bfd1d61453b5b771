//! Verification suites and their reports.
//!
//! Every suite returns a [`SuiteReport`]: an ordered list of checks, each with
//! a status of `pass`, `fail` or `observed`. Reports serialize to JSON with
//! sorted keys and are byte-stable for a fixed suite, field order and seed,
//! independent of the number of worker threads.

mod census;
mod conjecture;
mod coverage;
mod examples;
mod inversion;
mod q3q4;
mod q5;
mod sample;

use std::collections::BTreeMap;
use std::io;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub use census::{census_export, CensusExport, CensusReport, CliqueRecord};
pub use conjecture::{suite_conjecture, ConjectureMode, ConjectureResult, LineRef};
pub use coverage::CLAIMS;
pub use examples::{suite_example_q11, suite_example_q7};
pub use inversion::suite_inversion_props;
pub use q3q4::suite_q3q4;
pub use q5::suite_q5;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Overrides the rayon worker count for suites run through [`with_env_threads`].
pub const THREADS_ENV: &str = "SIMPLEX_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Observed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub q: u32,
    pub seed: u64,
    pub version: String,
    pub checks: Vec<Check>,
    /// Claim name to the check ids of this report that establish it.
    pub coverage: BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub results: Option<Vec<ConjectureResult>>,
}

impl SuiteReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Concatenates reports run for the same field order.
    pub fn merge(suite: &str, parts: Vec<SuiteReport>) -> SuiteReport {
        let q = parts.first().map_or(0, |r| r.q);
        let seed = parts.first().map_or(0, |r| r.seed);
        let checks: Vec<Check> = parts.into_iter().flat_map(|r| r.checks).collect();
        let coverage = coverage::for_checks(&checks);
        SuiteReport {
            suite: suite.into(),
            q,
            seed,
            version: VERSION.into(),
            checks,
            coverage,
            results: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    /// Record `elapsed_ms` per check. Off by default so reports stay byte-stable.
    pub timings: bool,
}

impl RunOptions {
    pub fn with_seed(seed: u64) -> Self {
        RunOptions {
            seed,
            timings: false,
        }
    }
}

/// Suites selectable from `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Q3q4,
    Q5,
    Inversion,
    All,
}

impl std::str::FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q3q4" => Ok(SuiteName::Q3q4),
            "q5" => Ok(SuiteName::Q5),
            "inversion" => Ok(SuiteName::Inversion),
            "all" => Ok(SuiteName::All),
            _ => Err(Error::Usage(format!("unknown suite {s:?}"))),
        }
    }
}

/// Runs a named suite. `all` runs every suite that applies to `q`.
pub fn verify(q: u32, suite: SuiteName, opts: &RunOptions) -> Result<SuiteReport> {
    match suite {
        SuiteName::Q3q4 => suite_q3q4(q, opts),
        SuiteName::Q5 if q != 5 => Err(Error::Usage(format!("suite q5 needs --q 5, got {q}"))),
        SuiteName::Q5 => suite_q5(opts),
        SuiteName::Inversion => suite_inversion_props(q, opts),
        SuiteName::All => {
            let mut parts = Vec::new();
            match q {
                3 | 4 => parts.push(suite_q3q4(q, opts)?),
                5 => parts.push(suite_q5(opts)?),
                _ => {}
            }
            parts.push(suite_inversion_props(q, opts)?);
            Ok(SuiteReport::merge("all", parts))
        }
    }
}

/// Serializes with sorted keys. The top two levels are spread over lines and
/// anything deeper stays on one line, so each check is a single line.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, DepthFormatter::new(2));
    value.serialize(&mut ser).expect("writing to memory");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

struct DepthFormatter {
    depth: usize,
    pretty_depth: usize,
    has_value: bool,
}

impl DepthFormatter {
    fn new(pretty_depth: usize) -> Self {
        DepthFormatter {
            depth: 0,
            pretty_depth,
            has_value: false,
        }
    }

    fn pretty(&self) -> bool {
        self.depth <= self.pretty_depth
    }

    fn newline<W: ?Sized + io::Write>(&self, w: &mut W, depth: usize) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..depth {
            w.write_all(b"  ")?;
        }
        Ok(())
    }

    fn begin<W: ?Sized + io::Write>(&mut self, w: &mut W, open: &[u8]) -> io::Result<()> {
        self.depth += 1;
        self.has_value = false;
        w.write_all(open)
    }

    fn end<W: ?Sized + io::Write>(&mut self, w: &mut W, close: &[u8]) -> io::Result<()> {
        let pretty = self.pretty();
        self.depth -= 1;
        if pretty && self.has_value {
            self.newline(w, self.depth)?;
        }
        w.write_all(close)
    }

    fn item<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        if self.pretty() {
            self.newline(w, self.depth)?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for DepthFormatter {
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.begin(w, b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.end(w, b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.item(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.begin(w, b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.end(w, b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.item(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(if self.pretty() { b": " } else { b":" })
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

/// A generator for one check: ChaCha8 seeded with the run seed, on a stream
/// chosen by hashing the check id (FNV-1a), so checks draw independently.
pub fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    let stream = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Parses [`THREADS_ENV`]; `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Runs `op` on a dedicated pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, op: impl FnOnce() -> T + Send) -> T {
    match threads {
        None => op(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(op),
    }
}

/// [`with_threads`] with the worker count taken from [`THREADS_ENV`].
pub fn with_env_threads<T: Send>(op: impl FnOnce() -> T + Send) -> Result<T> {
    Ok(with_threads(threads_from_env()?, op))
}

pub(crate) enum Outcome {
    Compared {
        expected: Value,
        actual: Value,
        ok: bool,
    },
    Observed(Value),
}

/// Passes when both sides serialize to the same JSON.
pub(crate) fn expect<E: Serialize, A: Serialize>(expected: E, actual: A) -> Outcome {
    let expected = serde_json::to_value(expected).expect("serializable");
    let actual = serde_json::to_value(actual).expect("serializable");
    let ok = expected == actual;
    Outcome::Compared {
        expected,
        actual,
        ok,
    }
}

/// Passes when `ok`; `expected` describes the requirement.
pub(crate) fn holds<E: Serialize, A: Serialize>(ok: bool, expected: E, actual: A) -> Outcome {
    Outcome::Compared {
        expected: serde_json::to_value(expected).expect("serializable"),
        actual: serde_json::to_value(actual).expect("serializable"),
        ok,
    }
}

pub(crate) fn observed<A: Serialize>(actual: A) -> Outcome {
    Outcome::Observed(serde_json::to_value(actual).expect("serializable"))
}

pub(crate) struct Runner {
    suite: String,
    q: u32,
    opts: RunOptions,
    checks: Vec<Check>,
}

impl Runner {
    pub(crate) fn new(suite: &str, q: u32, opts: &RunOptions) -> Self {
        Runner {
            suite: suite.into(),
            q,
            opts: *opts,
            checks: Vec::new(),
        }
    }

    pub(crate) fn check<F>(&mut self, id: &str, description: &str, body: F)
    where
        F: FnOnce(&mut ChaCha8Rng) -> Result<Outcome>,
    {
        let mut rng = check_rng(self.opts.seed, id);
        let start = Instant::now();
        let outcome = body(&mut rng);
        let elapsed_ms = self
            .opts
            .timings
            .then(|| start.elapsed().as_millis() as u64);
        let (status, expected, actual) = match outcome {
            Ok(Outcome::Compared {
                expected,
                actual,
                ok,
            }) => (
                if ok { Status::Pass } else { Status::Fail },
                expected,
                actual,
            ),
            Ok(Outcome::Observed(actual)) => (Status::Observed, Value::Null, actual),
            Err(e) => (
                Status::Fail,
                Value::Null,
                serde_json::json!({ "error": e.to_string() }),
            ),
        };
        self.checks.push(Check {
            id: id.into(),
            description: description.into(),
            status,
            expected,
            actual,
            elapsed_ms,
        });
    }

    pub(crate) fn finish(self, results: Option<Vec<ConjectureResult>>) -> SuiteReport {
        let coverage = coverage::for_checks(&self.checks);
        SuiteReport {
            suite: self.suite,
            q: self.q,
            seed: self.opts.seed,
            version: VERSION.into(),
            checks: self.checks,
            coverage,
            results,
        }
    }
}

/// Histogram key of a clique: `"<size>/<kind>"`.
pub(crate) fn clique_key(c: &crate::graph::Clique) -> String {
    let kind = serde_json::to_value(c.kind()).expect("serializable");
    format!("{}/{}", c.len(), kind.as_str().expect("string"))
}

pub(crate) fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
