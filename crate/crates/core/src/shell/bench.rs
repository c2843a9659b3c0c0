//! Wall-clock comparison of the staged pipeline with naive trial division.
//!
//! Both loops are single-threaded over the same range. The report only
//! records what was measured.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::error::{check_resource, Error, Result};
use crate::oracle;
use crate::pipeline::{self, FilterStage, SearchStrategy};

pub const BENCH_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub limit: u64,
    pub pipeline_seconds: f64,
    pub trial_division_seconds: f64,
    /// Primes found in `[2, limit]` by each method; always equal.
    pub primes_found: u64,
    pub survivors: u64,
    pub survivor_fraction: f64,
    pub per_stage_rejections: BTreeMap<FilterStage, u64>,
    pub notes: String,
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "bench over [2, {}]", self.limit);
        let _ = writeln!(s, "  staged pipeline : {:.6} s", self.pipeline_seconds);
        let _ = writeln!(
            s,
            "  trial division  : {:.6} s",
            self.trial_division_seconds
        );
        let _ = writeln!(s, "  primes found    : {}", self.primes_found);
        let _ = writeln!(
            s,
            "  survivors       : {} ({:.6} of [1, {}])",
            self.survivors, self.survivor_fraction, self.limit
        );
        for (stage, n) in &self.per_stage_rejections {
            let _ = writeln!(s, "  rejected {:<16}: {n}", format!("{stage:?}"));
        }
        let _ = writeln!(s, "  note: {}", self.notes);
        s
    }
}

pub fn bench(limit: u64) -> Result<BenchReport> {
    check_resource("bench limit", limit, BENCH_CAP)?;
    // Stage counts come from the same routine the density command uses.
    let density = pipeline::survivor_density(limit)?;

    let start = Instant::now();
    let mut pipeline_primes = 0u64;
    for n in 2..=limit {
        let v = pipeline::is_prime(black_box(n), SearchStrategy::AscendingScan)?;
        pipeline_primes += u64::from(v.kind.is_prime());
    }
    let pipeline_seconds = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let mut trial_primes = 0u64;
    for n in 2..=limit {
        trial_primes += u64::from(oracle::trial_is_prime(black_box(n)));
    }
    let trial_division_seconds = start.elapsed().as_secs_f64();

    if pipeline_primes != trial_primes {
        return Err(Error::Internal(format!(
            "prime counts differ: pipeline {pipeline_primes}, trial division {trial_primes}"
        )));
    }
    Ok(BenchReport {
        limit,
        pipeline_seconds,
        trial_division_seconds,
        primes_found: pipeline_primes,
        survivors: density.survivors,
        survivor_fraction: density.fraction,
        per_stage_rejections: density.per_stage_rejections,
        notes: "single-threaded wall-clock timings on this machine; no speedup is claimed".into(),
    })
}
