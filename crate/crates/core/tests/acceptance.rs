//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use serde_json::{json, Value};
use simplexgraph::harness::ConjectureMode;
use simplexgraph::harness::{
    self, census_export, suite_conjecture, suite_example_q11, suite_example_q7,
    suite_inversion_props, Status, SuiteName, THREADS_ENV,
};
use simplexgraph::{RunOptions, SuiteReport};

type Verdict = (bool, String);
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn status(r: &SuiteReport, id: &str) -> Option<Status> {
    r.check(id).map(|c| c.status)
}

fn passed(r: &SuiteReport, id: &str) -> bool {
    status(r, id) == Some(Status::Pass)
}

fn actual(r: &SuiteReport, id: &str) -> Value {
    r.check(id).map_or(Value::Null, |c| c.actual.clone())
}

fn all_passed(r: &SuiteReport, ids: &[&str]) -> Verdict {
    let bad: Vec<&str> = ids.iter().copied().filter(|id| !passed(r, id)).collect();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} checks pass", ids.len())
        } else {
            format!("not passing: {bad:?}")
        },
    )
}

fn one_thread<T: Send>(op: impl FnOnce() -> T + Send) -> T {
    harness::with_threads(Some(1), op)
}

fn opts() -> RunOptions {
    RunOptions::with_seed(0)
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Simplex points: q + 1 positions for the zero, (q - 1)^q non-zero fillings, up to scalars.
fn simplex_points(q: u64) -> u64 {
    (q + 1) * (q - 1).pow(q as u32 - 1)
}

/// Each point lies on (q - 1)! simplex lines and each line has q + 1 points.
fn simplex_lines(q: u64) -> u64 {
    simplex_points(q) * factorial(q - 1) / (q + 1)
}

fn criterion_1(q5: &SuiteReport) -> Verdict {
    let points = simplex_points(5);
    let lines = simplex_lines(5);
    // One star per point; 20 tops through each line, 4 lines per top.
    let tops = lines * 20 / 4;
    let census = json!({"24/star": points, "4/top": tops});
    let ok = actual(q5, "q5.census") == census
        && passed(q5, "q5.census")
        && passed(q5, "q5.census_structural")
        && passed(q5, "q5.census_maximality")
        && actual(q5, "q5.counts")["lines"] == json!(lines);
    (
        ok,
        format!("census {} vs oracle {census}", actual(q5, "q5.census")),
    )
}

fn criterion_2(q5: &SuiteReport) -> Verdict {
    let a = actual(q5, "q5.tops_per_line");
    let ok = passed(q5, "q5.tops_per_line")
        && a["lines"] == json!(simplex_lines(5))
        && a["tops_per_line"] == json!([20])
        && a["matches_triples"] == json!(true);
    (ok, format!("{a}"))
}

fn criterion_3(q5: &SuiteReport) -> Verdict {
    let reference = json!([
        [1, 1, 3, 4, 0, 2],
        [1, 2, 4, 1, 3, 0],
        [1, 3, 2, 0, 1, 4],
        [1, 4, 0, 3, 2, 1]
    ]);
    let a = actual(q5, "q5.common_collinear");
    let r = actual(q5, "q5.common_collinear_reference");
    let pairs = simplex_lines(5) * 15;
    let ok = passed(q5, "q5.common_collinear")
        && a["pairs"] == json!(pairs)
        && a["sizes"] == json!([4])
        && r["scan"] == reference
        && r["candidates"] == reference
        && passed(q5, "inversion.candidate_set");
    (ok, format!("{a}, reference pair {}", r["scan"]))
}

fn criterion_4(q5: &SuiteReport) -> Verdict {
    let subsets = simplex_lines(5) * 15;
    let a = actual(q5, "q5.four_point_span");
    (
        passed(q5, "q5.four_point_span") && a == json!({"4": subsets}),
        format!("ranks {a}, oracle {subsets} subsets"),
    )
}

fn criterion_5(q5: &SuiteReport) -> Verdict {
    let a = actual(q5, "q5.top_transitivity");
    (
        passed(q5, "q5.top_transitivity") && a["verified"] == json!(100),
        format!("{} of 100 verified", a["verified"]),
    )
}

fn criterion_6() -> Verdict {
    let census = one_thread(|| census_export(4, false)).expect("census q = 4");
    let t = &census.report.totals;
    let sizes: Vec<usize> = census.report.sizes.keys().copied().collect();
    let census_ok = t["cliques"] == 135
        && t["stars"] == 135
        && t["tops"] == 0
        && t["star_and_top"] == 0
        && sizes == [6];
    let r = one_thread(|| harness::verify(4, SuiteName::All, &opts())).expect("verify q = 4");
    let rank_ok = passed(&r, "q3q4.plane_span_fails")
        && actual(&r, "q3q4.plane_span_fails")["ranks"] == json!([2]);
    let iff = actual(&r, "q3q4.collinear_iff_hyperplane");
    let iff_ok = passed(&r, "q3q4.collinear_iff_hyperplane");
    (
        census_ok && rank_ok && iff_ok,
        format!(
            "census ok {census_ok}, plane span rank 2 {rank_ok}, collinear iff in H(P): {iff}, \
             restricted to Q with its zero elsewhere: {}",
            actual(&r, "inversion.hyperplane_iff_collinear")
        ),
    )
}

fn criterion_7() -> Verdict {
    // 5x + y over GF(7) for x = (0,1,1,1,1,1,1,1), y = (1,0,1,3,2,6,4,5).
    let x = [0u32, 1, 1, 1, 1, 1, 1, 1];
    let y = [1u32, 0, 1, 3, 2, 6, 4, 5];
    let meet: Vec<u32> = x.iter().zip(&y).map(|(a, b)| (5 * a + b) % 7).collect();
    let r = one_thread(|| suite_example_q7(&opts())).expect("q = 7 example");
    let (mut ok, detail) = all_passed(
        &r,
        &[
            "q7.pair_collinear",
            "q7.common_collinear",
            "q7.candidate_set",
            "q7.fourth_point",
            "q7.tops",
            "q7.tops_distinct",
            "q7.full_scan",
        ],
    );
    let cand = actual(&r, "q7.candidate_set");
    let tops = actual(&r, "q7.tops");
    let scan = actual(&r, "q7.full_scan");
    let scanned = actual(&r, "q7.common_collinear_count")["scanned"].clone();
    ok &= meet == [1, 5, 6, 1, 0, 4, 2, 3]
        && cand["contains_T"] == json!(true)
        && cand["contains_T'"] == json!(false)
        && ["T", "T'"].iter().all(|k| {
            tops[k]["fourth_line_meets_pq"] == json!(meet)
                && tops[k]["maximal"] == json!(true)
                && tops[k]["lines"] == json!(4)
        })
        && scan["contains_T'"] == json!(true)
        && scan["candidates_contain_T'"] == json!(false)
        && scanned == json!(simplex_points(7));
    (ok, format!("{detail}, scanned {scanned}"))
}

fn criterion_8() -> Verdict {
    let r = one_thread(|| suite_example_q11(&opts())).expect("q = 11 example");
    let (mut ok, detail) = all_passed(
        &r,
        &[
            "q11.pair_collinear",
            "q11.common_collinear",
            "q11.candidate_set",
            "q11.tops",
            "q11.tops_distinct",
        ],
    );
    let tops = actual(&r, "q11.tops");
    let cand = actual(&r, "q11.candidate_set");
    ok &= ["T", "T'"]
        .iter()
        .all(|k| tops[k]["lines"] == json!(3) && tops[k]["maximal"] == json!(true))
        && cand["contains_T"] == json!(true)
        && cand["contains_T'"] == json!(false);
    (ok, detail)
}

fn criterion_9() -> Verdict {
    let mut notes = Vec::new();
    let ex = one_thread(|| suite_conjecture(5, ConjectureMode::Exhaustive, 0, &opts()))
        .expect("q = 5 exhaustive");
    let q5 = actual(&ex, "conjecture.summary");
    let mut ok = passed(&ex, "conjecture.summary") && q5["holding"] == json!(simplex_lines(5) * 15);
    notes.push(format!("q=5 {} of {}", q5["holding"], q5["subsets"]));
    let rep = one_thread(|| suite_conjecture(7, ConjectureMode::Representative, 0, &opts()))
        .expect("q = 7 representative");
    let det = actual(&rep, "conjecture.determinants");
    // C(5, 3) choices of a, b, c outside {0, 1}.
    ok &= passed(&rep, "conjecture.determinants")
        && det["nonzero"] == json!(10)
        && det["determinants"] == json!(10);
    notes.push(format!(
        "q=7 {}/{} non-zero",
        det["nonzero"], det["determinants"]
    ));
    for q in [8, 9, 11, 13] {
        match one_thread(|| suite_conjecture(q, ConjectureMode::Sampled, 1000, &opts())) {
            Ok(r) => {
                let ranks = actual(&r, "conjecture.summary")["ranks"].clone();
                ok &= status(&r, "conjecture.summary") == Some(Status::Observed)
                    && r.results.as_ref().map(Vec::len) == Some(1000);
                notes.push(format!("q={q} ranks {ranks}"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("q={q} error {e}"));
            }
        }
    }
    (ok, notes.join(", "))
}

fn criterion_10(q5: &SuiteReport) -> Verdict {
    let ids = [
        "inversion.collinearity",
        "inversion.hyperplane",
        "inversion.conjugation",
        "inversion.off_line",
    ];
    let mut bad = Vec::new();
    let mut check = |q: u32, r: &SuiteReport| {
        for id in ids {
            let exhaustive = q <= 5;
            let ok = match status(r, id) {
                None => id == "inversion.off_line" && q < 5,
                Some(Status::Pass) => true,
                Some(Status::Observed) => {
                    !exhaustive && r.check(id).unwrap().actual["fails"] == json!(0)
                }
                Some(Status::Fail) => false,
            };
            if !ok {
                bad.push(format!("{id}@q={q}"));
            }
        }
    };
    check(5, q5);
    for q in [3, 4, 7, 8, 9, 11] {
        let r = one_thread(|| suite_inversion_props(q, &opts())).expect("inversion suite");
        check(q, &r);
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "q in {3,4,5,7,8,9,11}".into()
        } else {
            format!("failing {bad:?}")
        },
    )
}

fn every_suite() -> Vec<String> {
    let o = opts();
    let mut out = Vec::new();
    for q in [3, 4, 5, 7] {
        out.push(harness::verify(q, SuiteName::All, &o).unwrap().to_json());
    }
    out.push(suite_example_q7(&o).unwrap().to_json());
    out.push(suite_example_q11(&o).unwrap().to_json());
    out.push(
        suite_conjecture(5, ConjectureMode::Exhaustive, 0, &o)
            .unwrap()
            .to_json(),
    );
    out.push(
        suite_conjecture(7, ConjectureMode::Representative, 0, &o)
            .unwrap()
            .to_json(),
    );
    out.push(
        suite_conjecture(9, ConjectureMode::Sampled, 200, &o)
            .unwrap()
            .to_json(),
    );
    out.push(
        census_export(3, true)
            .map(|c| c.report.to_json() + &c.dot.unwrap())
            .unwrap(),
    );
    out.push(census_export(5, false).unwrap().report.to_json());
    out
}

fn criterion_11() -> Verdict {
    let runs: Vec<Vec<String>> = ["1", "1", "4"]
        .iter()
        .map(|n| {
            std::env::set_var(THREADS_ENV, n);
            harness::with_env_threads(every_suite).expect("thread count")
        })
        .collect();
    std::env::remove_var(THREADS_ENV);
    let consecutive = runs[0] == runs[1];
    let threads = runs[0] == runs[2];
    (
        consecutive && threads,
        format!(
            "{} reports, repeat identical {consecutive}, 1 vs 4 threads identical {threads}",
            runs[0].len()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let q5 = one_thread(|| harness::verify(5, SuiteName::All, &opts())).expect("verify q = 5");
    let q5_secs = start.elapsed().as_secs_f64();
    println!("q = 5 suites ran in {q5_secs:.1}s");

    let criteria: Vec<Criterion> = vec![
        (
            "q=5 census: 1536 stars of size 24, 30720 tops of size 4, nothing else",
            Box::new(|| criterion_1(&q5)),
        ),
        (
            "q=5: 20 tops through every simplex line",
            Box::new(|| criterion_2(&q5)),
        ),
        (
            "q=5: 4 common collinear points per pair, equal to the candidate set",
            Box::new(|| criterion_3(&q5)),
        ),
        (
            "q=5: every 4 points of a simplex line have I-image rank 4",
            Box::new(|| criterion_4(&q5)),
        ),
        (
            "q=5: monomial maps carry tops onto tops",
            Box::new(|| criterion_5(&q5)),
        ),
        (
            "q=4: 135 stars, no tops, collinear iff in H(P), plane span rank 2",
            Box::new(criterion_6),
        ),
        ("q=7 worked example", Box::new(criterion_7)),
        ("q=11 worked example", Box::new(criterion_8)),
        ("conjecture sweep", Box::new(criterion_9)),
        ("inversion property suites", Box::new(|| criterion_10(&q5))),
        (
            "determinism across runs and thread counts",
            Box::new(criterion_11),
        ),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = run();
        failed += !ok as usize;
        println!(
            "{} {:>2} {name} ({:.1}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
