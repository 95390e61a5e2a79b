//! Benchmark suites.
//!
//! `closure`: for random generator sets `A` and `X`, time enumerating `<A>`
//! (t1), the closure by `X` (t2, producing `M` elements) and a fresh
//! enumeration of `<A, X>` up to `M` elements (t3).
//!
//! `fragments`: enumerate one semigroup with the concurrent engine for several
//! fragment counts.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use fropin::closure::closure;
use fropin::concurrent::{concurrent_froidure_pin, ConcurrentOptions};
use fropin::{Element, Snapshot, UNLIMITED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{read_generators, CliError, CliResult};

pub const CLOSURE_HEADER: [&str; 9] = [
    "a_size", "x_size", "s_size", "m", "t1_ms", "t2_ms", "t3_ms", "t2_over_t3", "t1t2_over_t3",
];
pub const FRAGMENTS_HEADER: [&str; 4] = ["k", "size", "products", "wall_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Closure,
    Fragments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Transformation,
    Bmat,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Timed repetitions per row; times are averaged.
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Generator file for the fragments suite.
    #[arg(long, required_if_eq("suite", "fragments"))]
    pub gens: Option<PathBuf>,
    /// Fragment counts for the fragments suite.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
    pub fragments: Vec<usize>,

    #[arg(long, value_enum, default_value_t = KindArg::Transformation)]
    pub kind: KindArg,
    /// Degree of the transformations or dimension of the matrices.
    #[arg(long, default_value_t = 5)]
    pub size: usize,
    #[arg(long, default_value_t = 2)]
    pub a_min: usize,
    #[arg(long, default_value_t = 4)]
    pub a_max: usize,
    #[arg(long, default_value_t = 1)]
    pub x_min: usize,
    #[arg(long, default_value_t = 1)]
    pub x_max: usize,
    /// Number of rows for the closure suite.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    /// Samples whose t1 is below this many milliseconds are redrawn.
    #[arg(long, default_value_t = 10.0)]
    pub min_t1_ms: f64,
    /// Give up after this many rejected samples.
    #[arg(long, default_value_t = 1000)]
    pub max_rejects: usize,
}

#[derive(Debug, Clone)]
pub struct ClosureConfig {
    pub kind: KindArg,
    pub size: usize,
    pub a_range: (usize, usize),
    pub x_range: (usize, usize),
    pub samples: usize,
    pub trials: usize,
    pub seed: u64,
    pub min_t1_ms: f64,
    pub max_rejects: usize,
}

#[derive(Debug, Clone)]
pub struct ClosureRow {
    pub a: Vec<Element>,
    pub x: Vec<Element>,
    pub s_size: usize,
    pub m: usize,
    pub t1_ms: f64,
    pub t2_ms: f64,
    pub t3_ms: f64,
    pub t2_over_t3: f64,
    pub t1t2_over_t3: f64,
}

impl ClosureRow {
    fn record(&self) -> [String; 9] {
        [
            self.a.len().to_string(),
            self.x.len().to_string(),
            self.s_size.to_string(),
            self.m.to_string(),
            ms(self.t1_ms),
            ms(self.t2_ms),
            ms(self.t3_ms),
            ratio(self.t2_over_t3),
            ratio(self.t1t2_over_t3),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FragmentRow {
    pub k: usize,
    pub size: usize,
    pub products: u64,
    pub wall_ms: f64,
}

fn ms(v: f64) -> String {
    format!("{v:.3}")
}

fn ratio(v: f64) -> String {
    format!("{v:.4}")
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CliResult<()> {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let mut sink: Box<dyn Write + '_> = match &a.out {
        Some(path) => Box::new(File::create(path).map_err(crate::file_error(path))?),
        None => Box::new(out),
    };
    let mut w = csv::Writer::from_writer(&mut sink);
    match a.suite {
        Suite::Fragments => {
            let gens = read_generators(a.gens.as_deref().expect("clap requires --gens"))?;
            w.write_record(FRAGMENTS_HEADER).map_err(csv_error)?;
            for row in fragments_suite(&gens, &a.fragments, a.trials, a.seed)? {
                w.write_record([
                    row.k.to_string(),
                    row.size.to_string(),
                    row.products.to_string(),
                    ms(row.wall_ms),
                ])
                .map_err(csv_error)?;
            }
        }
        Suite::Closure => {
            let cfg = ClosureConfig {
                kind: a.kind,
                size: a.size,
                a_range: (a.a_min, a.a_max),
                x_range: (a.x_min, a.x_max),
                samples: a.samples,
                trials: a.trials,
                seed: a.seed,
                min_t1_ms: a.min_t1_ms,
                max_rejects: a.max_rejects,
            };
            w.write_record(CLOSURE_HEADER).map_err(csv_error)?;
            for row in closure_suite(&cfg)? {
                w.write_record(row.record()).map_err(csv_error)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => CliError::Io(e),
        other => CliError::Internal(format!("{other:?}")),
    }
}

pub fn fragments_suite(gens: &[Element], ks: &[usize], trials: usize, seed: u64) -> CliResult<Vec<FragmentRow>> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(CliError::Usage("fragment counts must be positive".into()));
    }
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let opts = ConcurrentOptions {
            fragments: k,
            seed,
            ..Default::default()
        };
        let mut total = Duration::ZERO;
        let mut seen: Option<(usize, u64)> = None;
        for _ in 0..trials {
            let start = Instant::now();
            let run = concurrent_froidure_pin(gens.to_vec(), opts).map_err(CliError::input("enumeration"))?;
            total += start.elapsed();
            let got = (run.snapshot.len(), run.snapshot.products());
            if seen.is_some_and(|s| s != got) {
                return Err(CliError::Internal(format!("k={k}: repeated runs disagree")));
            }
            seen = Some(got);
        }
        let (size, products) = seen.expect("at least one trial");
        rows.push(FragmentRow {
            k,
            size,
            products,
            wall_ms: millis(total) / trials as f64,
        });
    }
    Ok(rows)
}

fn universe_size(kind: KindArg, size: usize) -> Option<usize> {
    match kind {
        KindArg::Transformation => size.checked_pow(size as u32),
        KindArg::Bmat => 1usize.checked_shl((size * size) as u32).filter(|&v| v > 0),
    }
}

fn validate(cfg: &ClosureConfig) -> CliResult<()> {
    let bad = |msg: &str| Err(CliError::Usage(msg.into()));
    let max_size = match cfg.kind {
        KindArg::Transformation => u32::MAX as usize,
        KindArg::Bmat => 64,
    };
    if cfg.size == 0 || cfg.size > max_size {
        return bad("--size is out of range");
    }
    let (a0, a1) = cfg.a_range;
    let (x0, x1) = cfg.x_range;
    if a0 == 0 || a0 > a1 || x0 == 0 || x0 > x1 {
        return bad("generator count ranges must be nonempty and positive");
    }
    if universe_size(cfg.kind, cfg.size).is_some_and(|n| n < a1) {
        return bad("--a-max exceeds the number of distinct elements");
    }
    if cfg.trials == 0 {
        return bad("--trials must be positive");
    }
    Ok(())
}

fn random_element(rng: &mut ChaCha8Rng, kind: KindArg, size: usize) -> Element {
    match kind {
        KindArg::Transformation => {
            Element::transformation((0..size).map(|_| rng.gen_range(0..size as u32)).collect())
                .expect("images in range")
        }
        KindArg::Bmat => {
            let rows: Vec<Vec<u8>> = (0..size).map(|_| (0..size).map(|_| rng.gen_range(0..2u8)).collect()).collect();
            Element::bmat(&rows).expect("square matrix")
        }
    }
}

fn sample(rng: &mut ChaCha8Rng, cfg: &ClosureConfig) -> (Vec<Element>, Vec<Element>) {
    let na = rng.gen_range(cfg.a_range.0..=cfg.a_range.1);
    let nx = rng.gen_range(cfg.x_range.0..=cfg.x_range.1);
    let mut a: Vec<Element> = Vec::with_capacity(na);
    while a.len() < na {
        let x = random_element(rng, cfg.kind, cfg.size);
        if !a.contains(&x) {
            a.push(x);
        }
    }
    let x = (0..nx).map(|_| random_element(rng, cfg.kind, cfg.size)).collect();
    (a, x)
}

struct Timing {
    s_size: usize,
    m: usize,
    t1: f64,
    t2: f64,
    t3: f64,
}

fn time_once(a: &[Element], x: &[Element]) -> CliResult<Timing> {
    let start = Instant::now();
    let mut s = Snapshot::minimal(a.to_vec()).map_err(CliError::input("generators"))?;
    s.froidure_pin(UNLIMITED).map_err(CliError::input("enumeration"))?;
    let t1 = millis(start.elapsed());

    let start = Instant::now();
    let outcome = closure(&s, x).map_err(CliError::input("closure"))?;
    let t2 = millis(start.elapsed());
    let m = outcome.snapshot.len();

    let mut all = a.to_vec();
    all.extend(outcome.added.iter().cloned());
    let start = Instant::now();
    let mut fresh = Snapshot::minimal(all).map_err(CliError::input("generators"))?;
    fresh.froidure_pin(m).map_err(CliError::input("enumeration"))?;
    let t3 = millis(start.elapsed());
    Ok(Timing { s_size: s.len(), m, t1, t2, t3 })
}

pub fn closure_suite(cfg: &ClosureConfig) -> CliResult<Vec<ClosureRow>> {
    validate(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.samples);
    let mut rejects = 0;
    while rows.len() < cfg.samples {
        let (a, x) = sample(&mut rng, cfg);
        let first = time_once(&a, &x)?;
        if first.t1 < cfg.min_t1_ms {
            rejects += 1;
            if rejects > cfg.max_rejects {
                return Err(CliError::Usage(format!(
                    "{rejects} samples had t1 below {} ms; use larger generators or a lower floor",
                    cfg.min_t1_ms
                )));
            }
            continue;
        }
        let mut runs = vec![first];
        for _ in 1..cfg.trials {
            runs.push(time_once(&a, &x)?);
        }
        let n = runs.len() as f64;
        let mean = |f: &dyn Fn(&Timing) -> f64| runs.iter().map(f).sum::<f64>() / n;
        let floor = |t: f64| t.max(1e-6);
        rows.push(ClosureRow {
            s_size: runs[0].s_size,
            m: runs[0].m,
            t1_ms: mean(&|r| r.t1),
            t2_ms: mean(&|r| r.t2),
            t3_ms: mean(&|r| r.t3),
            t2_over_t3: mean(&|r| r.t2 / floor(r.t3)),
            t1t2_over_t3: mean(&|r| (r.t1 + r.t2) / floor(r.t3)),
            a,
            x,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ClosureConfig {
        ClosureConfig {
            kind: KindArg::Transformation,
            size: 4,
            a_range: (2, 3),
            x_range: (1, 1),
            samples: 3,
            trials: 1,
            seed: 1,
            min_t1_ms: 0.0,
            max_rejects: 10,
        }
    }

    #[test]
    fn rows_are_reproducible_in_their_counts() {
        let a: Vec<_> = closure_suite(&cfg()).unwrap().into_iter().map(|r| (r.s_size, r.m)).collect();
        let b: Vec<_> = closure_suite(&cfg()).unwrap().into_iter().map(|r| (r.s_size, r.m)).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn bad_bounds_are_usage_errors() {
        let mut c = cfg();
        c.a_range = (3, 2);
        assert!(matches!(closure_suite(&c), Err(CliError::Usage(_))));
        let mut c = cfg();
        c.kind = KindArg::Bmat;
        c.size = 1;
        c.a_range = (2, 3);
        assert!(matches!(closure_suite(&c), Err(CliError::Usage(_))));
        let mut c = cfg();
        c.min_t1_ms = 1e9;
        c.max_rejects = 2;
        assert!(matches!(closure_suite(&c), Err(CliError::Usage(_))));
    }
}
