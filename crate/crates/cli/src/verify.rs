//! Property suites behind `stabent verify`.

use std::path::Path;

use clap::ValueEnum;
use rand::Rng;
use serde_json::{json, Value};
use stabent::graphstate::{amplitude_transform, AmplitudeRecurrence};
use stabent::oracle::{self, dense_pauli, minimize_entropy_sum, SearchConfig, SearchTarget};
use stabent::random::{
    random_graph, random_group_pair, random_pauli, random_pure_state, random_stabilizer_group,
    seeded,
};
use stabent::urelations::{
    anticommutation_count, anticommutation_count_exhaustive, anticommuting_bound, check_tightness,
    group_ur_verify, meta_check, ObservableSet,
};
use stabent::{Dyadic, EntropySpec, Graph, PauliOperator};

use crate::output::{emit, json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pauli,
    Overlap,
    Tightness,
    Anticommuting,
    Matching,
    Recurrence,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Pauli => "pauli",
            Suite::Overlap => "overlap",
            Suite::Tightness => "tightness",
            Suite::Anticommuting => "anticommuting",
            Suite::Matching => "matching",
            Suite::Recurrence => "recurrence",
            Suite::All => "all",
        }
    }
}

pub struct Config {
    pub seed: u64,
    pub samples: usize,
    pub restarts: usize,
    pub max_n: usize,
}

#[derive(Default)]
struct Log {
    checks: Vec<Value>,
    passed: bool,
}

impl Log {
    fn check(
        &mut self,
        name: String,
        measured: impl Into<Value>,
        expected: impl Into<Value>,
        pass: bool,
    ) {
        self.passed &= pass;
        self.checks.push(json!({
            "name": name,
            "measured": measured.into(),
            "expected": expected.into(),
            "pass": pass,
        }));
    }
}

type SuiteResult = stabent::Result<()>;
type SuiteFn = fn(&Config, &mut Log) -> SuiteResult;

fn pauli(cfg: &Config, log: &mut Log) -> SuiteResult {
    let mut rng = seeded(cfg.seed);
    for n in 1..=cfg.max_n.min(4) {
        let (mut product_dev, mut commute_miss, mut trace_dev) = (0.0f64, 0usize, 0.0f64);
        for _ in 0..cfg.samples {
            let (a, b) = (random_pauli(n, &mut rng), random_pauli(n, &mut rng));
            let (ma, mb) = (dense_pauli(&a)?, dense_pauli(&b)?);
            let ab = ma.matmul(&mb);
            product_dev = product_dev.max(dense_pauli(&a.multiply(&b)?)?.max_abs_diff(&ab));
            let ba = mb.matmul(&ma);
            if a.commutes(&b)? != (ab.max_abs_diff(&ba) < 1e-12) {
                commute_miss += 1;
            }
            let tr = a.trace_inner(&b)?;
            trace_dev =
                trace_dev.max((ab.trace().re - tr.re as f64).hypot(ab.trace().im - tr.im as f64));
        }
        log.check(
            format!("multiply vs dense product, n={n}"),
            product_dev,
            "<= 1e-12",
            product_dev <= 1e-12,
        );
        log.check(
            format!("commutation vs dense commutator, n={n}"),
            commute_miss,
            0,
            commute_miss == 0,
        );
        log.check(
            format!("trace inner product vs dense trace, n={n}"),
            trace_dev,
            "<= 1e-9",
            trace_dev <= 1e-9,
        );
    }
    Ok(())
}

fn overlap(cfg: &Config, log: &mut Log) -> SuiteResult {
    let mut rng = seeded(cfg.seed);
    for n in 2..=cfg.max_n.min(5) {
        let (mut dev, mut enum_miss) = (0.0f64, 0usize);
        for _ in 0..cfg.samples {
            let (s, t) = random_group_pair(n, &mut rng)?;
            let exact = s.overlap_squared(&t)?;
            if s.overlap_squared_by_enumeration(&t)? != exact {
                enum_miss += 1;
            }
            let (a, b) = (
                oracle::stabilizer_state_dense(&s)?,
                oracle::stabilizer_state_dense(&t)?,
            );
            let dense = oracle::inner(a.vector().unwrap(), b.vector().unwrap()).norm_sqr();
            dev = dev.max((exact.overlap_squared.to_f64() - dense).abs());
        }
        log.check(
            format!("intersection vs dense overlap, n={n}"),
            dev,
            "<= 1e-12",
            dev <= 1e-12,
        );
        log.check(
            format!("intersection vs enumerated overlap, n={n}"),
            enum_miss,
            0,
            enum_miss == 0,
        );
    }
    Ok(())
}

fn tightness(cfg: &Config, log: &mut Log) -> SuiteResult {
    let mut rng = seeded(cfg.seed);
    for n in 2..=cfg.max_n.min(4) {
        let trials = cfg.samples.min(50);
        let mut attained = 0;
        for _ in 0..trials {
            let (s, t) = random_group_pair(n, &mut rng)?;
            let rep = check_tightness(&s, &t, cfg.max_n)?;
            if rep.all_attain && rep.oracle_agreement {
                attained += 1;
            }
        }
        log.check(
            format!("every basis state attains the bound, n={n}"),
            attained,
            trials,
            attained == trials,
        );
    }
    Ok(())
}

fn anticommuting(cfg: &Config, log: &mut Log) -> SuiteResult {
    let ops = |names: &[&str]| {
        names
            .iter()
            .map(|s| s.parse())
            .collect::<stabent::Result<Vec<PauliOperator>>>()
    };
    let search = SearchConfig {
        restarts: cfg.restarts.max(1),
        seed: cfg.seed,
        ..Default::default()
    };
    let t2 = EntropySpec::tsallis(2.0)?;
    for (names, spec) in [
        (&["X", "Y", "Z"][..], EntropySpec::Shannon),
        (&["X", "Z"][..], t2),
    ] {
        let bound = anticommuting_bound(names.len(), &spec)?;
        let found = minimize_entropy_sum(&SearchTarget::Observables(ops(names)?), &spec, &search)?;
        let pass = (found.min_value - bound).abs() <= 1e-6 && found.min_value >= bound - 1e-9;
        log.check(
            format!("searched minimum for {{{}}}, {spec}", names.join(",")),
            found.min_value,
            bound,
            pass,
        );
    }

    let mut rng = seeded(cfg.seed);
    let set = ObservableSet::from_strs(&["XXI", "ZXI", "YXX", "YXZ", "YXY"])?;
    set.require_anticommuting()?;
    let mut largest = 0.0f64;
    for _ in 0..cfg.samples {
        largest = largest.max(meta_check(&set, &random_pure_state(3, &mut rng)?)?.sum_sq);
    }
    log.check(
        "sum of squared expectations, 5 anticommuting observables".into(),
        largest,
        "<= 1",
        largest <= 1.0 + 1e-9,
    );

    for n in 2..=6 {
        let mut miss = 0;
        for _ in 0..cfg.samples.min(50) {
            let g = random_stabilizer_group(n, &mut rng)?;
            let p = random_pauli(n, &mut rng);
            let count = anticommutation_count_exhaustive(&g, &p)?;
            let ok =
                (count == 0 || count == 1 << (n - 1)) && count == anticommutation_count(&g, &p)?;
            miss += usize::from(!ok);
        }
        log.check(
            format!("anticommuting elements are none or half, n={n}"),
            miss,
            0,
            miss == 0,
        );
    }
    Ok(())
}

fn matching(cfg: &Config, log: &mut Log) -> SuiteResult {
    let mut rng = seeded(cfg.seed);
    let t2 = EntropySpec::tsallis(2.0)?;
    for n in 2..=cfg.max_n.min(5) {
        let mut failures = 0;
        let mut margin = f64::INFINITY;
        let mut done = 0;
        while done < 10 {
            let (s, t) = random_group_pair(n, &mut rng)?;
            if s.intersect(&t)?.c == n {
                continue;
            }
            for spec in [EntropySpec::Shannon, t2] {
                let rep = group_ur_verify(&s, &t, &spec, cfg.samples, rng.gen())?;
                failures += usize::from(!rep.report.tight);
                margin = margin.min(rep.random_min - rep.report.bound);
            }
            done += 1;
        }
        log.check(
            format!("symmetric-difference relation holds and is attained, n={n}"),
            failures,
            0,
            failures == 0,
        );
        if cfg.samples > 0 {
            log.check(
                format!("smallest random-state margin, n={n}"),
                margin,
                ">= -1e-9",
                margin >= -1e-9,
            );
        }
    }
    Ok(())
}

fn recurrence(cfg: &Config, log: &mut Log) -> SuiteResult {
    for n in 2..=9 {
        let want = Dyadic::pow2(-((n / 2) as i32));
        for (kind, g) in [("complete", Graph::complete(n)?), ("path", Graph::path(n)?)] {
            let r = AmplitudeRecurrence::new(&g).table()?.r_max();
            let t = amplitude_transform(&g)?.r_max();
            log.check(
                format!("{kind} graph r, n={n}"),
                r.to_string(),
                want.to_string(),
                r == want && t == want,
            );
        }
    }
    let mut rng = seeded(cfg.seed);
    let mut miss = 0;
    let mut dense_dev = 0.0f64;
    for i in 0..cfg.samples {
        let n = 1 + i % 8;
        let g = random_graph(n, rng.gen_range(0.0..=1.0), &mut rng)?;
        let rec = AmplitudeRecurrence::new(&g).table()?;
        miss += usize::from(rec.values() != amplitude_transform(&g)?.values());
        if n <= cfg.max_n {
            let v = oracle::graph_state_dense(&g)?;
            let v = v.vector().unwrap();
            for y in 0..1u64 << n {
                let sum: f64 = (0..1u64 << n)
                    .map(|x| {
                        let a = v[oracle::qubit_mask_to_index(x, n)].re;
                        if (x & y).count_ones() % 2 == 1 {
                            -a
                        } else {
                            a
                        }
                    })
                    .sum();
                let dense = sum / ((1u64 << n) as f64).sqrt();
                dense_dev = dense_dev.max((dense - rec.value(y).to_f64()).abs());
            }
        }
    }
    log.check(
        "recurrence vs transform on random graphs".into(),
        miss,
        0,
        miss == 0,
    );
    log.check(
        "recurrence vs dense amplitudes".into(),
        dense_dev,
        "<= 1e-12",
        dense_dev <= 1e-12,
    );
    Ok(())
}

pub fn run(suite: Suite, cfg: &Config, out: Option<&Path>) -> Result<bool, String> {
    let suites: &[(Suite, SuiteFn)] = &[
        (Suite::Pauli, pauli),
        (Suite::Overlap, overlap),
        (Suite::Tightness, tightness),
        (Suite::Anticommuting, anticommuting),
        (Suite::Matching, matching),
        (Suite::Recurrence, recurrence),
    ];
    let mut log = Log {
        passed: true,
        ..Default::default()
    };
    for (which, body) in suites {
        if suite == Suite::All || suite == *which {
            if let Err(e) = body(cfg, &mut log) {
                log.check(
                    format!("{} suite ran", which.name()),
                    e.to_string(),
                    "no error",
                    false,
                );
            }
        }
    }
    let report = json!({
        "suite": suite.name(),
        "seed": cfg.seed,
        "samples": cfg.samples,
        "passed": log.passed,
        "checks": log.checks,
    });
    emit(&json(report), out)?;
    Ok(log.passed)
}
