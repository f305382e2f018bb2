//! Exit criteria. Runs every check, prints one PASS/FAIL line each and exits
//! non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use fcac::config::ExperimentConfig;
use fcac::experiments::{run_benchmark, run_continual, run_privacy_sweep, RunOptions};
use fcac::wire;
use fcac_core::clusterer::EdgeSet;
use fcac_core::data::{gen_gaussian_mixture, ContinualSubsets, GaussianComponent};
use fcac_core::eval::wasserstein1;
use fcac_core::federation::{fcac_round, RoundOutcome, run_client, run_server, sort_nodes, SortedStream};
use fcac_core::kernel::cim;
use fcac_core::matrix::determinant;
use fcac_core::privacy::{privatize_dataset, PrivacyParams};
use fcac_core::stats::{iqr, percentile};
use fcac_core::{Bandwidth, ClientResult, ClusterLabeling, Clusterer, Epsilon, FederationConfig, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail }
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn median(values: &[f64]) -> f64 {
    percentile(values, 50.0).expect("non-empty")
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

// 1. Math properties against independent oracles.

fn cofactor_det(m: usize, a: &[f64]) -> f64 {
    if m == 1 {
        return a[0];
    }
    (0..m)
        .map(|col| {
            let minor: Vec<f64> = (1..m)
                .flat_map(|r| (0..m).filter(move |&c| c != col).map(move |c| (r, c)))
                .map(|(r, c)| a[r * m + c])
                .collect();
            let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
            sign * a[col] * cofactor_det(m - 1, &minor)
        })
        .sum()
}

fn sort_percentile(values: &[f64], p: f64) -> f64 {
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    let rank = p / 100.0 * (s.len() - 1) as f64;
    let (lo, hi) = (rank.floor() as usize, rank.ceil() as usize);
    s[lo] * (1.0 - (rank - lo as f64)) + s[hi] * (rank - lo as f64)
}

fn bfs_components(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    label
}

fn permutation_w1(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    fn go(k: usize, perm: &mut [usize], a: &[Vec<f64>], b: &[Vec<f64>], best: &mut f64) {
        if k == perm.len() {
            let cost: f64 = perm
                .iter()
                .enumerate()
                .map(|(i, &j)| a[i].iter().zip(&b[j]).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt())
                .sum();
            *best = best.min(cost);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, a, b, best);
            perm.swap(k, i);
        }
    }
    let mut best = f64::INFINITY;
    go(0, &mut (0..a.len()).collect::<Vec<_>>(), a, b, &mut best);
    best / a.len() as f64
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = Vec::new();

    for _ in 0..10_000 {
        let d = rng.random_range(1..=6);
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-5.0..5.0)).collect();
        let y: Vec<f64> = (0..d).map(|_| rng.random_range(-5.0..5.0)).collect();
        let sigma = Bandwidth::new(rng.random_range(0.01..3.0)).unwrap();
        let xy = cim(&x, &y, sigma).unwrap();
        let yx = cim(&y, &x, sigma).unwrap();
        if !(0.0..=1.0).contains(&xy) || cim(&x, &x, sigma).unwrap() != 0.0 || xy != yx {
            failures.push("cim");
            break;
        }
    }

    for _ in 0..2_000 {
        let m = rng.random_range(1..=6);
        let a: Vec<f64> = (0..m * m).map(|_| rng.random_range(-1.0..1.0)).collect();
        if (determinant(m, &a) - cofactor_det(m, &a)).abs() > 1e-9 {
            failures.push("determinant");
            break;
        }
    }

    for _ in 0..2_000 {
        let n = rng.random_range(1..=50);
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
        let p = rng.random_range(0.0..=100.0);
        let iqr_oracle = sort_percentile(&v, 75.0) - sort_percentile(&v, 25.0);
        if (percentile(&v, p).unwrap() - sort_percentile(&v, p)).abs() > 1e-12
            || (iqr(&v).unwrap() - iqr_oracle).abs() > 1e-12
        {
            failures.push("percentile/iqr");
            break;
        }
    }

    for _ in 0..1_000 {
        let n = rng.random_range(1..=25);
        let mut pairs = Vec::new();
        let mut edges = EdgeSet::new();
        for _ in 0..rng.random_range(0..=n) {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            if a != b {
                pairs.push((a, b));
                edges.connect(NodeId(a as u64), NodeId(b as u64), 1);
            }
        }
        let ids: Vec<NodeId> = (0..n as u64).map(NodeId).collect();
        let labeling = ClusterLabeling::from_components(&ids, &edges);
        let oracle = bfs_components(n, &pairs);
        let got: Vec<usize> = ids.iter().map(|&id| labeling.cluster_of(id).unwrap()).collect();
        if got != oracle {
            failures.push("components");
            break;
        }
    }

    for _ in 0..300 {
        let n = rng.random_range(1..=8);
        let cloud = |rng: &mut ChaCha8Rng| -> Vec<Vec<f64>> {
            (0..n).map(|_| (0..2).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
        };
        let (a, b) = (cloud(&mut rng), cloud(&mut rng));
        if (wasserstein1(&a, &b).unwrap() - permutation_w1(&a, &b)).abs() > 1e-9 {
            failures.push("wasserstein1");
            break;
        }
    }

    let elapsed = start.elapsed();
    let pass = failures.is_empty() && within(elapsed, 30);
    Outcome::new(
        pass,
        format!(
            "cim 1e4 cases, det m<=6 tol 1e-9, percentile/iqr, components, w1 n<=8; failures {:?}; {:.1?} (limit 30s)",
            failures, elapsed
        ),
    )
}

// 2. Laplace mechanism.

fn laplace_samples(mu: f64, delta_f: f64, eps: f64, n: usize, seed: u64) -> Vec<f64> {
    let params = PrivacyParams::with_sensitivities(Epsilon::new(eps).unwrap(), vec![delta_f]).unwrap();
    let data = vec![[mu]; n];
    privatize_dataset(&data, &params, seed).unwrap().into_iter().map(|r| r[0]).collect()
}

/// Largest excess of the binned probability ratio between neighbouring
/// inputs over `e^ε`, after allowing four standard errors per bin.
/// Bins with fewer than 1000 samples on either side are skipped.
fn dp_violation(a: &[f64], b: &[f64], lo: f64, hi: f64, bins: usize, eps: f64) -> (f64, f64) {
    let hist = |s: &[f64]| {
        let mut h = vec![0u64; bins];
        for &x in s {
            if x >= lo && x < hi {
                h[((x - lo) / (hi - lo) * bins as f64) as usize] += 1;
            }
        }
        h
    };
    let (ha, hb) = (hist(a), hist(b));
    let mut worst_excess = f64::NEG_INFINITY;
    let mut max_ratio: f64 = 0.0;
    for (&ca, &cb) in ha.iter().zip(&hb) {
        if ca < 1000 || cb < 1000 {
            continue;
        }
        let (ca, cb) = (ca as f64, cb as f64);
        let se = (1.0 / ca + 1.0 / cb).sqrt();
        for ratio in [ca / cb, cb / ca] {
            max_ratio = max_ratio.max(ratio);
            worst_excess = worst_excess.max(ratio - eps.exp() * (1.0 + 4.0 * se));
        }
    }
    (worst_excess, max_ratio)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    const N: usize = 1_000_000;
    let mut pass = true;
    let mut parts = Vec::new();

    let (mu, delta_f, eps) = (0.3, 1.0, 1.0);
    let scale = delta_f / eps;
    let s = laplace_samples(mu, delta_f, eps, N, 11);
    let mean = s.iter().sum::<f64>() / N as f64;
    let var = s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (N - 1) as f64;
    let target_var = 2.0 * scale * scale;
    let mean_err = (mean - mu).abs() / scale;
    let var_err = (var - target_var).abs() / target_var;
    pass &= mean_err <= 0.05 && var_err <= 0.05;
    parts.push(format!("mean err {:.4}b, var rel err {:.4}", mean_err, var_err));

    for eps in [1.0, 2.0] {
        for delta_f in [1.0, 2.0] {
            let b = delta_f / eps;
            let x = laplace_samples(0.0, delta_f, eps, N, 21);
            let y = laplace_samples(delta_f, delta_f, eps, N, 22);
            let (excess, ratio) = dp_violation(&x, &y, -4.0 * b, delta_f + 4.0 * b, 40, eps);
            pass &= excess <= 0.0;
            parts.push(format!("(eps {eps}, df {delta_f}) max ratio {:.3} vs e^eps {:.3}", ratio, f64::exp(eps)));
        }
    }
    // The check must be able to fail: halving the noise breaks the bound.
    let x = laplace_samples(0.0, 0.5, 1.0, N, 31);
    let y = laplace_samples(1.0, 0.5, 1.0, N, 32);
    let (excess, _) = dp_violation(&x, &y, -2.0, 3.0, 40, 1.0);
    pass &= excess > 0.0;
    parts.push("under-noised control rejected".to_owned());

    let elapsed = start.elapsed();
    pass &= within(elapsed, 60);
    Outcome::new(pass, format!("{}; {:.1?} (limit 60s)", parts.join("; "), elapsed))
}

// 3. Privatized-data distance versus budget.

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let reference = [(15.0, 0.0416), (25.0, 0.0177), (50.0, 0.0060), (75.0, 0.0040)];
    let config = ExperimentConfig::from_json(
        r#"{
            "kind": "privacy-sweep",
            "dataset": { "type": "gaussian", "components": [{ "mean": [0, 0], "cov": [[1, 0], [0, 1]], "n": 1000 }] },
            "scale": [-1, 1],
            "clients": 1,
            "epsilons": [15, 25, 50, 75],
            "seeds": [0, 1, 2, 3, 4, 5, 6, 7, 8, 9]
        }"#,
    )
    .unwrap();
    let (_, summary) = run_privacy_sweep(&config, &RunOptions::default()).unwrap();
    let means: Vec<f64> = summary.iter().map(|s| s.dws.mean).collect();
    let mut pass = means.windows(2).all(|w| w[1] < w[0]);
    let mut parts = Vec::new();
    for ((eps, expected), (got, s)) in reference.iter().zip(means.iter().zip(&summary)) {
        let rel = (got - expected) / expected;
        pass &= rel.abs() <= 0.5;
        parts.push(format!("eps {eps}: {got:.4} vs {expected:.4} ({:+.0}%, exact OT {:.4})", rel * 100.0, s.dws_exact.mean));
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, 120);
    Outcome::new(pass, format!("{}; strictly decreasing; {:.1?} (limit 120s)", parts.join("; "), elapsed))
}

// 4. Node economy on a single Gaussian stream.

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut counts: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for seed in 0..10u64 {
        let ds = gen_gaussian_mixture(&[GaussianComponent::isotropic(vec![0.0, 0.0], 1.0, 16_000)], (0.0, 1.0), seed).unwrap();
        for (name, mut c) in [("cae", Clusterer::cae()), ("cae_fc", Clusterer::cae_fc()), ("ca_plus", Clusterer::ca_plus())] {
            c.train(&ds.points).unwrap();
            counts.entry(name).or_default().push(c.len() as f64);
        }
    }
    let (cae, fc, plus) = (median(&counts["cae"]), median(&counts["cae_fc"]), median(&counts["ca_plus"]));
    let elapsed = start.elapsed();
    let pass = fc < 0.3 * cae && plus >= fc && within(elapsed, 180);
    Outcome::new(
        pass,
        format!(
            "median nodes CAE {cae} CAE_FC {fc} CA+ {plus}; CAE_FC/CAE {:.3} (need < 0.3); CA+ >= CAE_FC {}; {:.1?} (limit 180s)",
            fc / cae,
            plus >= fc,
            elapsed
        ),
    )
}

// 5. Continual learning across three rounds.

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let config = ExperimentConfig::from_path(&configs_dir().join("continual.json")).unwrap();
    let reports = match run_continual(&config, &RunOptions::default()) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, format!("run failed: {e:#}")),
    };
    let mut ari_ok = 0;
    let mut changes = Vec::new();
    let mut audit_ok = true;
    let mut aris = Vec::new();
    for r in &reports {
        let [r1, r2, r3] = r.rounds.as_slice() else {
            return Outcome::new(false, format!("seed {} has {} rounds", r.seed, r.rounds.len()));
        };
        aris.push(r3.server.ari);
        if r3.server.ari >= 0.6 {
            ari_ok += 1;
        }
        let (n2, n3) = (r2.server.nodes as f64, r3.server.nodes as f64);
        changes.push((n3 - n2).abs() / n2);

        // Cumulative counters only grow by what each round presented.
        let mut received = 0u64;
        let mut presented = [0u64; 2];
        for round in [r1, r2, r3] {
            received += round.server.received as u64;
            audit_ok &= round.server.inputs_seen == received;
            for c in &round.per_client {
                presented[c.client] += c.points as u64;
                audit_ok &= c.inputs_seen == presented[c.client];
            }
        }
    }
    let change = median(&changes);
    let elapsed = start.elapsed();
    let pass = reports.len() == 10 && ari_ok >= 8 && change <= 0.25 && audit_ok && within(elapsed, 120);
    Outcome::new(
        pass,
        format!(
            "final ARI >= 0.6 on {ari_ok}/10 (min {:.3}); median round 2->3 node change {:.3} (need <= 0.25); no-reset audit {}; {:.1?} (limit 120s)",
            aris.iter().copied().fold(f64::INFINITY, f64::min),
            change,
            audit_ok,
            elapsed
        ),
    )
}

// 6. Pendigits spot check.

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut config = ExperimentConfig::from_path(&configs_dir().join("pendigits_iid.json")).unwrap();
    config.epsilons.retain(|e| e.0.is_infinite());
    let out = match run_benchmark(&config, &RunOptions::default()) {
        Ok(o) => o,
        Err(e) => return Outcome::new(false, format!("run failed: {e:#}")),
    };
    let nmis: Vec<f64> = out.reports.iter().map(|r| r.rounds[0].server.nmi).collect();
    let mean = nmis.iter().sum::<f64>() / nmis.len() as f64;
    let elapsed = start.elapsed();
    let pass = nmis.len() == 10 && (0.55..=0.85).contains(&mean) && within(elapsed, 600);
    Outcome::new(pass, format!("mean NMI {mean:.4} over {} seeds (band [0.55, 0.85]); {:.1?} (limit 600s)", nmis.len(), elapsed))
}

// 7. What crosses the client/server boundary.

fn envelope_keys_ok(json: &str) -> bool {
    let value: serde_json::Value = serde_json::from_str(json).unwrap();
    let top: BTreeSet<&str> = ["client_id", "d", "nodes"].into();
    let node: BTreeSet<&str> = ["m", "w"].into();
    value.as_array().unwrap().iter().all(|env| {
        let obj = env.as_object().unwrap();
        obj.keys().map(String::as_str).collect::<BTreeSet<_>>() == top
            && obj["nodes"].as_array().unwrap().iter().all(|n| {
                n.as_object().unwrap().keys().map(String::as_str).collect::<BTreeSet<_>>() == node
            })
    })
}

fn criterion_7() -> Outcome {
    // The server consumes only client summaries; raw data has no path to it.
    let _: fn(&mut Clusterer, &SortedStream) -> fcac_core::Result<()> = run_server;
    let _: fn(&[ClientResult], u64) -> fcac_core::Result<SortedStream> = sort_nodes;

    let mut pass = true;
    let mut rounds_checked = 0;
    for seed in 0..3u64 {
        let subsets = ContinualSubsets::generate(1000, seed).unwrap();
        let config = FederationConfig::new(2, Epsilon::new(25.0).unwrap(), seed, 3).unwrap();
        let (mut clients, mut server) = config.initial_states();
        let raw: BTreeSet<Vec<u64>> = subsets.data.points.iter().map(|p| p.iter().map(|x| x.to_bits()).collect()).collect();
        for (r, parts) in subsets.schedule().iter().enumerate() {
            let data: Vec<Vec<Vec<f64>>> = parts.iter().map(|ix| subsets.data.subset(ix).points).collect();
            let out = fcac_round(&data, &config, r + 1, &mut clients, &mut server).unwrap();
            let scalars: usize = out.transfers.iter().map(|t| t.len() * (t.dim().unwrap_or(0) + 1)).sum();
            pass &= out.audit.messages == 2 && out.transfers.len() == 2 && out.audit.downlink == 0;
            pass &= out.audit.scalars == scalars;
            pass &= out.transfers.iter().map(ClientResult::client_id).collect::<Vec<_>>() == vec![0, 1];
            pass &= out
                .transfers
                .iter()
                .flat_map(|t| t.nodes())
                .all(|w| !raw.contains(&w.iter().map(|x| x.to_bits()).collect::<Vec<_>>()));
            pass &= envelope_keys_ok(&wire::to_json(&out.transfers).unwrap());
            rounds_checked += 1;
        }
    }

    // A single-client pass at a finite budget sends no raw point either.
    let ds = gen_gaussian_mixture(&[GaussianComponent::isotropic(vec![0.0; 3], 1.0, 2000)], (0.0, 1.0), 5).unwrap();
    let mut client = Clusterer::ca_plus();
    let result = run_client(0, &ds.points, Epsilon::new(50.0).unwrap(), &mut client, 9).unwrap();
    pass &= result.nodes().iter().all(|w| !ds.points.contains(w));

    Outcome::new(pass, format!("{rounds_checked} rounds: C messages each, no downlink, envelopes carry only node weights and counts, no raw point sent"))
}

// 8. No tuning knobs on the entry points.

fn criterion_8() -> Outcome {
    let _: fn() -> Clusterer = Clusterer::cae;
    let _: fn() -> Clusterer = Clusterer::cae_fc;
    let _: fn() -> Clusterer = Clusterer::ca_plus;
    let _: fn(usize, Epsilon, u64, usize) -> fcac_core::Result<FederationConfig> = FederationConfig::new;
    type RoundFn = fn(&[Vec<Vec<f64>>], &FederationConfig, usize, &mut [Clusterer], &mut Clusterer) -> fcac_core::Result<RoundOutcome>;
    let _: RoundFn = fcac_round::<Vec<f64>>;

    let ds = gen_gaussian_mixture(
        &[
            GaussianComponent::isotropic(vec![0.0, 0.0], 1.0, 600),
            GaussianComponent::isotropic(vec![12.0, 12.0], 1.0, 600),
        ],
        (0.0, 1.0),
        3,
    )
    .unwrap();
    let config = FederationConfig::new(3, Epsilon::INFINITE, 3, 1).unwrap();
    let (mut clients, mut server) = config.initial_states();
    let parts: Vec<Vec<Vec<f64>>> = (0..3).map(|c| ds.points.iter().skip(c).step_by(3).cloned().collect()).collect();
    let out = fcac_round(&parts, &config, 1, &mut clients, &mut server).unwrap();
    let clusters = out.labeling.count_clusters();
    Outcome::new(
        clusters >= 2,
        format!("constructors and round entry take data, budget, seed and round only; two clouds -> {clusters} clusters"),
    )
}

// 9. Reproducibility.

fn strip_timing(path: &Path) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn run_cli(args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_fcac")).args(args).output().map(|o| o.status.success()).unwrap_or(false)
}

fn criterion_9() -> Outcome {
    let mut pass = true;

    let sweep = ExperimentConfig::from_path(&configs_dir().join("privacy_sweep.json")).unwrap();
    let a = run_privacy_sweep(&sweep, &RunOptions::default()).unwrap();
    let b = run_privacy_sweep(&sweep, &RunOptions::default()).unwrap();
    pass &= a.0.iter().map(|r| r.metrics_json()).eq(b.0.iter().map(|r| r.metrics_json()));

    let mut bench = ExperimentConfig::from_path(&configs_dir().join("pendigits_dirichlet.json")).unwrap();
    bench.seeds = vec![4, 5];
    bench.max_points = Some(3000);
    let threaded = |threads| RunOptions { threads: Some(threads), ..RunOptions::default() };
    let a = run_benchmark(&bench, &threaded(1)).unwrap();
    let b = run_benchmark(&bench, &threaded(4)).unwrap();
    pass &= a.reports.iter().map(|r| r.metrics_json()).eq(b.reports.iter().map(|r| r.metrics_json()));

    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let config = configs_dir().join("continual.json");
    for d in &dirs {
        pass &= run_cli(&["continual", "--config", config.to_str().unwrap(), "--seed", "3", "--out", d.path().to_str().unwrap()]);
    }
    let report = |d: &tempfile::TempDir| d.path().join("seed_3").join("eps_inf").join("report.json");
    let compared = report(&dirs[0]).exists() && report(&dirs[1]).exists();
    pass &= compared && strip_timing(&report(&dirs[0])) == strip_timing(&report(&dirs[1]));

    Outcome::new(pass, "privacy sweep, benchmark (1 vs 4 threads) and CLI continual re-runs give identical metric fields".to_owned())
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("math property suite", criterion_1),
        ("laplace mechanism", criterion_2),
        ("privatized distance vs budget", criterion_3),
        ("CAE vs CAE_FC node economy", criterion_4),
        ("continual learning", criterion_5),
        ("pendigits NMI spot check", criterion_6),
        ("privacy boundary and one-shot", criterion_7),
        ("parameter-free entry points", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{verdict}] {name}: {}", i + 1, outcome.detail);
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
