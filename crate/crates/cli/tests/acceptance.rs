//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thermocalc::corpus;
use thermocalc::selftest::{self, Bounds, Report};
use thermocalc::{Dyadic64, Engine64, Game};

struct Outcome {
    report: Report,
    budget: Option<Duration>,
    elapsed: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.report.passed() && self.report.checked > 0 && self.budget.is_none_or(|b| self.elapsed <= b)
    }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Report) -> Outcome {
    let start = Instant::now();
    let report = f();
    Outcome {
        report,
        budget,
        elapsed: start.elapsed(),
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thermocalc"))
}

/// The three documented invocations print exactly their expected lines.
fn cli_examples(r: &mut Report) {
    let cases: [(&[&str], &str); 3] = [
        (&["temp", "{2|0}"], "1\n"),
        (&["is-int", "{0|3}"], "1\n"),
        (&["compare", "*", "0"], "||\n"),
    ];
    for (args, expected) in cases {
        r.checked += 1;
        match bin().args(args).output() {
            Ok(o) if o.status.success() && o.stdout == expected.as_bytes() => {}
            Ok(o) => r.failures.push(format!(
                "{args:?}: status {}, stdout {:?}",
                o.status,
                String::from_utf8_lossy(&o.stdout)
            )),
            Err(e) => r.failures.push(format!("{args:?}: {e}")),
        }
    }
}

/// SVG output of the binary parses as XML with an `svg` root.
fn svg_well_formed(r: &mut Report, games: &[Game]) {
    let results: Vec<Option<String>> = games
        .par_iter()
        .map(|g| {
            let text = g.to_string();
            let o = match bin().args(["thermo", "--format", "svg", &text]).output() {
                Ok(o) => o,
                Err(e) => return Some(format!("{text}: {e}")),
            };
            if !o.status.success() {
                return Some(format!("{text}: status {}", o.status));
            }
            let svg = String::from_utf8_lossy(&o.stdout);
            match roxmltree::Document::parse(&svg) {
                Ok(doc) if doc.root_element().tag_name().name() == "svg" => None,
                Ok(_) => Some(format!("{text}: root is not svg")),
                Err(e) => Some(format!("{text}: {e}")),
            }
        })
        .collect();
    for res in results {
        r.checked += 1;
        if let Some(f) = res {
            r.failures.push(f);
        }
    }
}

fn selftest_exits_zero(r: &mut Report) {
    r.checked += 1;
    match bin().arg("selftest").output() {
        Ok(o) if o.status.success() => {}
        Ok(o) => r.failures.push(format!(
            "selftest status {}: {}",
            o.status,
            String::from_utf8_lossy(&o.stdout)
        )),
        Err(e) => r.failures.push(format!("selftest: {e}")),
    }
}

/// Integer decision agreement, plus evidence that both the empty candidate
/// set and the least-magnitude choice among several candidates occur.
fn integer_decision(e: &Engine64, games: &[Game]) -> Report {
    let mut r = selftest::integer_decision(e, games);
    let (mut empty, mut several) = (0usize, 0usize);
    for g in games {
        let Ok((l, r)) = e.integer_decision_interval(g) else {
            continue;
        };
        let lo = l.finite().map(|x| x.ceil());
        let hi = r.finite().map(|x| x.floor());
        match (lo, hi) {
            (Some(a), Some(b)) if a > b => empty += 1,
            (Some(a), Some(b)) if a < b => several += 1,
            (None, _) | (_, None) => several += 1,
            _ => {}
        }
    }
    r.checked += 2;
    if empty == 0 {
        r.failures.push("no game with an empty candidate set".into());
    }
    if several == 0 {
        r.failures.push("no game with several candidates".into());
    }
    r.name = format!("{} ({empty} empty, {several} with several candidates)", r.name);
    r
}

fn main() -> ExitCode {
    let bounds = Bounds::default();
    let e = Engine64::new();
    let suite = selftest::unary_suite(&bounds);
    let young: Vec<Game> = suite.iter().filter(|g| g.birthday() <= 4).cloned().collect();
    let pairs = selftest::pairs(&bounds);
    let pair_games: Vec<Game> = pairs.iter().flat_map(|(g, h)| [g.clone(), h.clone()]).collect();
    let hom_ts: Vec<Dyadic64> = ["-1/2", "0", "1/2", "1", "2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();

    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "dyadic-number thermographs",
            timed(secs(1), || selftest::dyadic_numbers(&e)),
        ),
        (
            "existence suite",
            timed(secs(60), || selftest::existence(&e, &suite)),
        ),
        (
            "identity and homomorphism",
            timed(secs(120), || {
                Report::merge(
                    "identity and homomorphism",
                    [
                        selftest::identity(&e, &suite),
                        selftest::homomorphism(&e, &pairs, &hom_ts),
                    ],
                )
            }),
        ),
        (
            "order preservation",
            timed(None, || {
                Report::merge(
                    "order preservation",
                    [
                        selftest::order_preservation(&e, &selftest::ordered_pairs(&bounds)),
                        selftest::strict_order(&e, &selftest::not_below_pairs(&bounds)),
                    ],
                )
            }),
        ),
        (
            "composition and sum temperature",
            timed(None, || {
                Report::merge(
                    "composition and sum temperature",
                    [
                        selftest::composition(&e, &pair_games),
                        selftest::sum_temperature(&e, &pairs),
                    ],
                )
            }),
        ),
        (
            "mean-value bound",
            timed(secs(30), || {
                selftest::mean_bound(&e, &selftest::mean_bound_games(), 8)
            }),
        ),
        (
            "integer decision agreement",
            timed(None, || integer_decision(&e, &suite)),
        ),
        (
            "integer-stop and comparison suites",
            timed(None, || {
                Report::merge(
                    "integer stop and comparison",
                    [
                        selftest::integer_stop(&e, &young),
                        selftest::comparison(&e, &young),
                    ],
                )
            }),
        ),
        (
            "CLI contract",
            timed(None, || {
                let mut r = Report {
                    name: "cli".into(),
                    ..Report::default()
                };
                cli_examples(&mut r);
                svg_well_formed(&mut r, &corpus::random_games(100, 5, 0x5e6));
                selftest_exits_zero(&mut r);
                r
            }),
        ),
    ];

    let mut all = true;
    for (i, (name, o)) in criteria.iter().enumerate() {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        all &= o.passed();
        let budget = o
            .budget
            .map(|b| format!(", budget {} s", b.as_secs()))
            .unwrap_or_default();
        println!(
            "criterion {}: {status} {name} [{}]: {} checks, {} failures, {:.2} s{budget}",
            i + 1,
            o.report.name,
            o.report.checked,
            o.report.failures.len(),
            o.elapsed.as_secs_f64()
        );
        for f in o.report.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
