//! Acceptance suite: nine criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use joint_spectra::decomp::decompose;
use joint_spectra::homology::homology_dims;
use joint_spectra::homology::{build_d0, build_d1};
use joint_spectra::liepair::{generate_chain, generate_chain_with, InstanceFile, WeightMode};
use joint_spectra::numkit::eigenvalues;
use joint_spectra::oracle::exact::{ExactMatrix, GaussianRational};
use joint_spectra::oracle::{brute_spectra, candidates_with, exact_profiles, flags_of, verify_vanishing_with};
use joint_spectra::spectra::{
    set_compare, slodkowski_from_decomposition, sp_joint, sp_triangular, sp_y2zero, SpectrumSet,
};
use joint_spectra::{LiePair, Tolerances};
use num_complex::Complex64;

// Pinned tolerances and sizes.
const CORPUS_SIZE: usize = 200;
const CORPUS_SEED: u64 = 2024;
const LAMBDA_SAMPLES: usize = 20;
const CHAIN_FACTOR: f64 = 1e-10;
const MATCH_TOL: f64 = 1e-8;
const EIG_TOL: f64 = 1e-8;
const SNAP_TOL: f64 = 1e-6;
const Y2ZERO_COUNT: usize = 50;
const INTEGER_COUNT: usize = 30;
const TRANSLATION_COUNT: usize = 20;
const CHAIN_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn tol() -> Tolerances {
    Tolerances::default().with_match_tol(MATCH_TOL)
}

fn first_failures(failures: &[String]) -> String {
    let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
    format!("{} failure(s): {}", failures.len(), shown.join("; "))
}

fn chain_identity(corpus: &[common::Instance]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (k, inst) in corpus.iter().enumerate() {
        let p = &inst.pair;
        let (xn, yn) = (p.x_norm(), p.y_norm());
        for lambda in common::lambda_samples(k as u64, LAMBDA_SAMPLES, xn + yn + 2.0) {
            let residual = (&build_d0(p, lambda) * &build_d1(p, lambda)).norm();
            let bound = CHAIN_FACTOR * (1.0 + xn + yn + lambda.norm()).powi(2);
            worst = worst.max(residual / bound);
            if residual > bound {
                failures.push(format!("{} at {lambda}: {residual:e} > {bound:e}", inst.label));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < CHAIN_BUDGET;
    Outcome {
        id: 1,
        name: "chain identity |d0 d1| on corpus x 20 points",
        pass,
        detail: if failures.is_empty() {
            format!("worst residual/bound {worst:.2e}, {elapsed:.2?}")
        } else {
            first_failures(&failures)
        },
    }
}

/// Criteria 2 and 3 share one sweep.
fn theorem_vs_oracle(corpus: &[common::Instance]) -> (Outcome, Outcome) {
    let t = tol();
    let start = Instant::now();
    let (mut sp_fail, mut full_fail) = (Vec::new(), Vec::new());
    for inst in corpus {
        let p = &inst.pair;
        let outcome = decompose(p, &t).and_then(|d| {
            let theorem = slodkowski_from_decomposition(&d, &t)?;
            let oracle = brute_spectra(p, &candidates_with(p, &d, &t)?, &t)?;
            Ok((theorem, oracle, sp_joint(p, &t)?))
        });
        let (theorem, oracle, sp) = match outcome {
            Ok(v) => v,
            Err(e) => {
                sp_fail.push(format!("{}: {e}", inst.label));
                full_fail.push(format!("{}: {e}", inst.label));
                continue;
            }
        };
        if !set_compare(&sp, &oracle.sp, MATCH_TOL).matched {
            sp_fail.push(format!(
                "{}: sp {:?} vs oracle {:?}",
                inst.label,
                sp.points(),
                oracle.sp.points()
            ));
        }
        for (name, m) in theorem.compare(&oracle, MATCH_TOL) {
            if !m.matched {
                full_fail.push(format!("{}: {name} {m:?}", inst.label));
            }
        }
        for (who, r) in [("theorem", &theorem), ("oracle", &oracle)] {
            for v in r.invariant_violations() {
                full_fail.push(format!("{} ({who}): {v}", inst.label));
            }
        }
    }
    let elapsed = start.elapsed();
    let two = Outcome {
        id: 2,
        name: "sp from the reduction equals oracle sp",
        pass: sp_fail.is_empty() && elapsed < ORACLE_BUDGET,
        detail: if sp_fail.is_empty() {
            format!("{} instances, {elapsed:.2?}", corpus.len())
        } else {
            first_failures(&sp_fail)
        },
    };
    let three = Outcome {
        id: 3,
        name: "all six Slodkowski sets equal oracle; invariants hold",
        pass: full_fail.is_empty(),
        detail: if full_fail.is_empty() {
            format!("{} instances x 7 sets, 2 reports each", corpus.len())
        } else {
            first_failures(&full_fail)
        },
    };
    (two, three)
}

fn vanishing_criteria(corpus: &[common::Instance]) -> Outcome {
    let t = tol();
    let mut failures = Vec::new();
    let mut checked = 0;
    for inst in corpus {
        let p = &inst.pair;
        let run = decompose(p, &t).and_then(|d| {
            let cands = candidates_with(p, &d, &t)?;
            let mut bad = Vec::new();
            for l in cands.lambdas() {
                let r = verify_vanishing_with(p, &d, l, &t)?;
                if !r.pass() {
                    bad.push(format!("{} at {l}", inst.label));
                }
            }
            Ok((cands.len(), bad))
        });
        match run {
            Ok((n, bad)) => {
                checked += n;
                failures.extend(bad);
            }
            Err(e) => failures.push(format!("{}: {e}", inst.label)),
        }
    }

    // The shifted-variant clause fails on the golden instance, the corrected one holds.
    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/vanishing_counterexample.json");
    let golden: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(golden_path).unwrap()).unwrap();
    let file: InstanceFile = serde_json::from_value(golden["instance"].clone()).unwrap();
    let p = file.to_pair(&t).unwrap();
    let l = c(
        golden["lambda"][0].as_f64().unwrap(),
        golden["lambda"][1].as_f64().unwrap(),
    );
    let r = verify_vanishing_with(&p, &decompose(&p, &t).unwrap(), l, &t).unwrap();
    let e = &golden["expected"];
    let golden_ok = r.profile.h0 as u64 == e["h0"].as_u64().unwrap()
        && r.profile.h1 as u64 == e["h1"].as_u64().unwrap()
        && r.profile.h2 as u64 == e["h2"].as_u64().unwrap()
        && r.h1_clause.pass() == e["corrected_clause_holds"].as_bool().unwrap()
        && r.h1_shifted_variant.pass() == e["shifted_clause_holds"].as_bool().unwrap()
        && r.h1_clause.pass()
        && !r.h1_shifted_variant.pass();
    if !golden_ok {
        failures.push(format!("golden counterexample not reproduced: {r:?}"));
    }
    Outcome {
        id: 4,
        name: "three homology/operator equivalences; shifted-variant counterexample",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checked} (instance, point) pairs; golden file: shifted variant fails, corrected clause holds")
        } else {
            first_failures(&failures)
        },
    }
}

/// Greedy multiset match within `tol`.
fn multiset_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|z| {
        let hit = (0..b.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (b[i] - z).norm().total_cmp(&(b[j] - z).norm()));
        match hit {
            Some(j) if (b[j] - z).norm() <= tol => {
                used[j] = true;
                true
            }
            _ => false,
        }
    })
}

fn y2zero_specialization() -> Outcome {
    let t = tol();
    let mut failures = Vec::new();
    for k in 0..Y2ZERO_COUNT as u64 {
        let p = common::random_y2zero(9000 + k, common::MAX_N);
        let label = format!("y2zero seed {} (n={})", 9000 + k, p.n());
        let run = (|| -> joint_spectra::Result<_> {
            let a = sp_y2zero(&p, &t)?;
            let b = sp_triangular(&p, &t)?;
            let j = sp_joint(&p, &t)?;
            let blocks = decompose(&p, &t)?.blocks.expect("y^2 = 0 blocks");
            let e11: Vec<Complex64> = eigenvalues(&blocks.x11)?.iter().map(|z| z + 1.0).collect();
            let e33 = eigenvalues(&blocks.x33)?;
            Ok((a, b, j, e11, e33))
        })();
        match run {
            Ok((a, b, j, e11, e33)) => {
                if !set_compare(&a, &b, MATCH_TOL).matched || !set_compare(&a, &j, MATCH_TOL).matched {
                    failures.push(format!("{label}: sp paths disagree"));
                }
                if !multiset_match(&e11, &e33, EIG_TOL) {
                    failures.push(format!("{label}: eig(x33) != eig(x11) + 1"));
                }
            }
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    Outcome {
        id: 5,
        name: "y^2 = 0: three sp paths agree; eig(x33) = eig(x11) + 1",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{Y2ZERO_COUNT} instances")
        } else {
            first_failures(&failures)
        },
    }
}

fn exact_vs_float() -> Outcome {
    let t = tol();
    let mut failures = Vec::new();
    let mut decisions = 0;
    for inst in common::integer_corpus(INTEGER_COUNT, 77) {
        let p = &inst.pair;
        assert!(p.n() <= 8);
        let cands = candidates_with(p, &decompose(p, &t).unwrap(), &t).unwrap();
        let exact_points: Vec<GaussianRational> = cands
            .lambdas()
            .map(|l| GaussianRational::from_complex_snapped(l, SNAP_TOL).unwrap())
            .collect();
        let x = ExactMatrix::from_cmatrix(p.x()).unwrap();
        let y = ExactMatrix::from_cmatrix(p.y()).unwrap();
        let exact = match exact_profiles(&x, &y, &exact_points) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{}: {e}", inst.label));
                continue;
            }
        };
        for (point, ex) in exact_points.iter().zip(&exact) {
            decisions += 1;
            match homology_dims(p, point.to_complex(), &t) {
                Ok(h) if flags_of(&h) == ex.flags() => {}
                Ok(h) => failures.push(format!(
                    "{} at {point}: float {:?} exact {:?}",
                    inst.label,
                    flags_of(&h),
                    ex.flags()
                )),
                Err(e) => failures.push(format!("{} at {point}: {e}", inst.label)),
            }
        }
    }
    Outcome {
        id: 6,
        name: "exact and floating-point membership decisions agree",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{INTEGER_COUNT} integer instances, {decisions} candidate decisions")
        } else {
            first_failures(&failures)
        },
    }
}

fn chain_family() -> Outcome {
    let t = tol();
    let mut failures = Vec::new();
    for len in 1..=5usize {
        for mu in [c(0.0, 0.0), c(2.0, -3.0)] {
            let expected = SpectrumSet::from_points([mu - 1.0, mu + (len as f64 - 1.0)], MATCH_TOL);
            for (mode, p) in [
                (
                    "unit",
                    generate_chain_with(len as u64, &[len], &[mu], WeightMode::Unit).unwrap(),
                ),
                ("random", generate_chain(len as u64, &[len], &[mu]).unwrap()),
            ] {
                let sp = sp_joint(&p, &t).unwrap();
                let oracle =
                    brute_spectra(&p, &candidates_with(&p, &decompose(&p, &t).unwrap(), &t).unwrap(), &t).unwrap();
                for (who, s) in [("theorem", &sp), ("oracle", &oracle.sp)] {
                    if !set_compare(s, &expected, MATCH_TOL).matched {
                        failures.push(format!("len {len}, mu {mu}, {mode} weights, {who}: {:?}", s.points()));
                    }
                }
            }
        }
    }
    Outcome {
        id: 7,
        name: "chains: sp = {mu - 1, mu + len - 1}",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "len 1..5, mu in {0, 2-3i}, unit and random weights, theorem and oracle".into()
        } else {
            first_failures(&failures)
        },
    }
}

fn translation(corpus: &[common::Instance]) -> Outcome {
    let t = tol();
    let shift = c(1.0, 2.0);
    let mut failures = Vec::new();
    for inst in corpus.iter().take(TRANSLATION_COUNT) {
        let p: &LiePair = &inst.pair;
        let base = slodkowski_from_decomposition(&decompose(p, &t).unwrap(), &t).unwrap();
        let q = p.translated(shift);
        let moved = slodkowski_from_decomposition(&decompose(&q, &t).unwrap(), &t).unwrap();
        for ((name, a), (_, b)) in base.translated(shift).sets().iter().zip(moved.sets().iter()) {
            if a.len() != b.len() || !set_compare(a, b, MATCH_TOL).matched {
                failures.push(format!("{}: {name}", inst.label));
            }
        }
    }
    Outcome {
        id: 8,
        name: "translation x -> x + (1+2i) shifts all sets",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{TRANSLATION_COUNT} instances x 7 sets")
        } else {
            first_failures(&failures)
        },
    }
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_joint-spectra"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    let configs: [&[&str]; 3] = [
        &["--chain", "3,2", "--base", "0,2-3i", "--seed", "11"],
        &["--y2zero", "2,1", "--seed", "5"],
        &["--y2zero", "2,2", "--seed", "6", "--integral"],
    ];
    for (k, gen) in configs.iter().enumerate() {
        let mut reports = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("inst{k}_{run}.json"));
            let path = path.to_str().unwrap();
            let mut args = vec!["generate", "--out", path, "--no-timestamp"];
            args.extend_from_slice(gen);
            let (code, _) = cli(&args);
            let mut bytes = std::fs::read(path).unwrap();
            for cmd in ["spectra", "oracle", "compare", "check"] {
                for format in ["json", "csv", "text"] {
                    let (c2, out) = cli(&[cmd, path, "--format", format, "--no-timestamp"]);
                    bytes.extend_from_slice(format!("{cmd}/{format}/{code}/{c2}\n").as_bytes());
                    // Reports carry the instance hash, not its path.
                    bytes.extend_from_slice(&out);
                }
            }
            reports.push(bytes);
        }
        if reports[0] != reports[1] {
            failures.push(format!("config {gen:?} produced different bytes"));
        }
    }
    Outcome {
        id: 9,
        name: "repeated CLI runs are byte-identical",
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "3 generator configs x 4 commands x 3 formats, run twice".into()
        } else {
            first_failures(&failures)
        },
    }
}

fn main() {
    let corpus = common::corpus(CORPUS_SIZE, CORPUS_SEED);
    assert!(corpus.iter().all(|i| (1..=common::MAX_N).contains(&i.pair.n())));
    let (two, three) = theorem_vs_oracle(&corpus);
    let outcomes = [
        chain_identity(&corpus),
        two,
        three,
        vanishing_criteria(&corpus),
        y2zero_specialization(),
        exact_vs_float(),
        chain_family(),
        translation(&corpus),
        determinism(),
    ];
    for o in &outcomes {
        println!(
            "criterion {} {}: {} ({})",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", outcomes.len());
}
