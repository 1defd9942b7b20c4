//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints its own PASS/FAIL line; the process fails if any criterion does.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monocls::ae_game::{ae_game, Bob};
use monocls::coreset::{approx_classifier, build_coreset, relative_comparison_1d, CoresetParams};
use monocls::instances::{
    flip_labels, gen_alternating, gen_boxes_nonrealizable, gen_boxes_realizable, gen_lone_positive,
    gen_noisy_boxes, gen_noisy_monotone, gen_pairs_family, gen_two_location, random_thresholds,
};
use monocls::rng::derive_seed;
use monocls::rpe::{run_rpe, test_monotonicity, Verdict};
use monocls::solver::{brute_force_optimal, optimal_error, optimal_mincut};
use monocls::stats::{sample_size, Summary};
use monocls::{err, width, Label, LabeledPointSet, ProbeOracle, WeightedLabeledPoint};

/// Constant in the documented coreset shape `(w/eps^2) log2(1+n/w) ln(n/delta)`.
const CORESET_SHAPE_CONSTANT: f64 = 16.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rpe_error(set: &LabeledPointSet, seed: u64) -> (usize, usize) {
    let mut oracle = ProbeOracle::from_labeled(set);
    let r = run_rpe(set.unlabeled(), &mut oracle, seed).unwrap();
    (err(&r.classifier, set).unwrap(), r.cost)
}

fn solver_equivalence() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    for seed in 0..200u64 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(1..=12);
        let d = r.gen_range(1..=3);
        let coords = (0..n).map(|_| (0..d).map(|_| r.gen_range(0..4) as f64).collect()).collect();
        let labels = (0..n).map(|_| if r.gen_bool(0.5) { Label::Pos } else { Label::Neg }).collect();
        let set = LabeledPointSet::from_coords(d, coords, labels).unwrap();
        let unit: Vec<WeightedLabeledPoint> = set
            .elements()
            .map(|e| WeightedLabeledPoint { id: e.id, point: e.point, label: e.label, weight: 1.0 })
            .collect();
        let cut = optimal_mincut(d, &unit).unwrap().1;
        let brute = brute_force_optimal(&set).unwrap();
        if cut != brute as f64 || optimal_error(&set).unwrap() != brute {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(mismatches == 0 && secs < 60.0, format!("{mismatches} mismatches in 200 instances, {secs:.2}s"))
}

fn rpe_realizable() -> Outcome {
    let set = gen_boxes_realizable(512, 8, &random_thresholds(512, 8, 2)).unwrap();
    assert_eq!(optimal_error(&set).unwrap(), 0);
    let bad = (0..1000).filter(|&s| rpe_error(&set, s).0 != 0).count();
    outcome(bad == 0, format!("{bad}/1000 runs with nonzero error"))
}

fn rpe_lone_positive() -> Outcome {
    let set = gen_lone_positive(10).unwrap();
    let total: usize = (0..100_000).map(|s| rpe_error(&set, s).0).sum();
    let mean = total as f64 / 1e5;
    outcome((1.78..=1.82).contains(&mean), format!("mean error {mean:.4} (expected 1.8)"))
}

fn rpe_twice_optimal() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut fails = 0;
    for i in 0..20 {
        let set = gen_noisy_monotone(500, 2, 0.1, derive_seed(4, i)).unwrap().set;
        let kstar = optimal_error(&set).unwrap() as f64;
        let errors: Vec<f64> = (0..10_000).map(|s| rpe_error(&set, s).0 as f64).collect();
        let s = Summary::of(&errors);
        let slack = s.mean - (2.0 * kstar + 3.0 * s.sem());
        worst = worst.max(slack);
        if slack > 0.0 {
            fails += 1;
        }
    }
    outcome(fails == 0, format!("{fails}/20 instances over 2k* + 3SE; max(mean - bound) = {worst:.2}"))
}

fn rpe_cost_shape() -> Outcome {
    let mut worst: f64 = 0.0;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for w in [1usize, 2, 4, 8, 16] {
        for per_box in [16usize, 64, 256, 1024] {
            let n = w * per_box;
            let set = gen_boxes_realizable(n, w, &random_thresholds(n, w, (w * per_box) as u64)).unwrap();
            assert_eq!(width(set.unlabeled()).unwrap(), w);
            let total: usize = (0..200).map(|s| rpe_error(&set, s).1).sum();
            let mean = total as f64 / 200.0;
            let shape = w as f64 * (1.0 + n as f64 / w as f64).log2();
            worst = worst.max(mean / shape);
            sxy += mean * shape;
            sxx += shape * shape;
        }
    }
    let fitted = sxy / sxx;
    outcome(worst <= 8.0, format!("max cost/(w log2(1+n/w)) = {worst:.3}, least-squares constant = {fitted:.3}"))
}

fn noisy_line(n: usize, seed: u64) -> LabeledPointSet {
    let values: Vec<f64> = (1..=n).map(|v| v as f64).collect();
    let clean: Vec<Label> = (1..=n).map(|v| if v > n / 2 { Label::Pos } else { Label::Neg }).collect();
    flip_labels(&LabeledPointSet::from_values(&values, &clean).unwrap(), 0.1, seed).unwrap().0
}

fn coreset_relative_comparison() -> Outcome {
    let set = noisy_line(4096, 6);
    let mut good = 0;
    for seed in 0..100 {
        let params = CoresetParams::new(0.5, 0.1, seed).unwrap();
        let mut oracle = ProbeOracle::from_labeled(&set);
        let z = build_coreset(set.unlabeled(), &params, &mut oracle).unwrap();
        if relative_comparison_1d(&set, &z, 0.5).unwrap().holds() {
            good += 1;
        }
    }
    outcome(good >= 90, format!("{good}/100 trials admit a shift within the bound"))
}

fn coreset_end_to_end() -> Outcome {
    let (eps, delta) = (0.5, 0.1);
    let cases = [("line", noisy_line(4096, 7)), ("4 boxes", gen_noisy_boxes(4096, 4, 0.1, 7).unwrap())];
    let mut pass = true;
    let mut details = Vec::new();
    for (name, set) in &cases {
        let kstar = optimal_error(set).unwrap() as f64;
        let n = set.len() as f64;
        let w = width(set.unlabeled()).unwrap() as f64;
        let bound = CORESET_SHAPE_CONSTANT * (w / (eps * eps)) * (1.0 + n / w).log2() * (n / delta).ln();
        let (mut good, mut max_size, mut max_probes) = (0, 0, 0);
        for seed in 0..100 {
            let mut oracle = ProbeOracle::from_labeled(set);
            let z = build_coreset(set.unlabeled(), &CoresetParams::new(eps, delta, seed).unwrap(), &mut oracle).unwrap();
            let e = err(&approx_classifier(&z).unwrap(), set).unwrap() as f64;
            if e <= (1.0 + eps) * kstar {
                good += 1;
            }
            max_size = max_size.max(z.len());
            max_probes = max_probes.max(z.probes);
        }
        let ok = good >= 90 && (max_size.max(max_probes) as f64) <= bound;
        pass &= ok;
        details.push(format!("{name}: k*={kstar} {good}/100 within (1+eps)k*, |Z|<={max_size}, probes<={max_probes}, shape bound {bound:.0}"));
    }
    outcome(pass, details.join("; "))
}

fn tester() -> Outcome {
    let monotone = gen_boxes_realizable(400, 4, &random_thresholds(400, 4, 8)).unwrap();
    let yes = (0..1000)
        .filter(|&s| {
            let mut o = ProbeOracle::from_labeled(&monotone);
            test_monotonicity(monotone.unlabeled(), 0.1, &mut o, s).unwrap() == Verdict::Yes
        })
        .count();
    let alt = gen_alternating(100).unwrap();
    let kstar = optimal_error(&alt).unwrap();
    let no = (0..1000)
        .filter(|&s| {
            let mut o = ProbeOracle::from_labeled(&alt);
            test_monotonicity(alt.unlabeled(), 0.2, &mut o, s).unwrap() == Verdict::No
        })
        .count();
    outcome(yes == 1000 && kstar >= 20 && no >= 667, format!("monotone: {yes}/1000 yes; alternating (k*={kstar}): {no}/1000 no"))
}

fn generators() -> Outcome {
    let pairs = gen_pairs_family(8).unwrap();
    let pairs_ok = pairs.len() == 8 && pairs.iter().all(|p| optimal_error(p).unwrap() == 3);
    let dummy = gen_boxes_nonrealizable(64, 4, 2, 2, &random_thresholds(64, 4, 9)).unwrap();
    let (dn, dw, dk) = (dummy.len(), width(dummy.unlabeled()).unwrap(), optimal_error(&dummy).unwrap());
    let two = gen_two_location(1000, 10, 0.1, 3).unwrap();
    let mu_ok = two.mu.iter().all(|m| (m - 0.05).abs() < 1e-12 || (m - 0.95).abs() < 1e-12);
    outcome(
        pairs_ok && (dn, dw, dk) == (580, 5, 2) && mu_ok,
        format!("pairs k* all 3: {pairs_ok}; dummy boxes n={dn} w={dw} k*={dk}; two-location mu {:?}", two.mu),
    )
}

fn chernoff_sample_size() -> Outcome {
    let (phi, delta) = (0.1, 0.05);
    let t = sample_size(phi, delta).unwrap();
    let reps = 10_000;
    let allowed = delta * reps as f64 + 3.0 * (reps as f64 * delta * (1.0 - delta)).sqrt();
    let mut worst = 0;
    for (i, mu) in [0.05, 0.5].into_iter().enumerate() {
        let mut r = ChaCha8Rng::seed_from_u64(10 + i as u64);
        let misses = (0..reps)
            .filter(|_| {
                let hits = (0..t).filter(|_| r.gen_bool(mu)).count();
                (hits as f64 / t as f64 - mu).abs() >= phi
            })
            .count();
        worst = worst.max(misses);
    }
    outcome(worst as f64 <= allowed, format!("t={t}, worst miss count {worst} (allowed {allowed:.1})"))
}

fn attrition_game() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut rows = Vec::new();
    for m in [16usize, 64, 256, 1024, 4096] {
        let bound = 2.0 * (1.0 + m as f64).log2() + 2.0;
        for (name, bob) in [("noop", Bob::NoOp), ("halver", Bob::Halver), ("scripted", Bob::staircase(m))] {
            let total: usize = (0..10_000).map(|s| ae_game(m, &bob, s).unwrap()).sum();
            let mean = total as f64 / 1e4;
            worst = worst.max(mean - bound);
            rows.push(format!("m={m} {name} {mean:.2}"));
        }
    }
    outcome(worst <= 0.0, format!("max(mean - bound) = {worst:.2}; {}", rows.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("1 exact solver matches brute force", solver_equivalence),
        ("2 RPE exact on realizable boxes", rpe_realizable),
        ("3 RPE mean error on the lone-positive line", rpe_lone_positive),
        ("4 RPE mean error within 2k*", rpe_twice_optimal),
        ("5 RPE cost shape w log(n/w)", rpe_cost_shape),
        ("6 coreset relative comparison", coreset_relative_comparison),
        ("7 coreset approximate classifier", coreset_end_to_end),
        ("8 monotonicity tester", tester),
        ("9 generator arithmetic", generators),
        ("10 sample size lemma", chernoff_sample_size),
        ("11 attrition-and-elimination rounds", attrition_game),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {name}: {} [{:.1}s]", o.detail, start.elapsed().as_secs_f64());
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
