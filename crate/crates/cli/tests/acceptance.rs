//! Acceptance criteria 1–11, one line each. Runs without the test harness so
//! the lines show up in `cargo test` output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use smorph::corpus::{bundled_dir, load_dir, Instance};
use smorph::mutate_entry;
use smorph::suite::{run_corpus_check, run_instance, CheckResult, Status};
use smorph_core::residuated::{check_axioms, AlgebraClass};
use smorph_core::Caps;

struct Line {
    pass: bool,
    summary: String,
}

fn line(pass: bool, summary: impl Into<String>) -> Line {
    Line {
        pass,
        summary: summary.into(),
    }
}

fn instance_results(corpus: &[Instance], ids: &[&str]) -> Vec<CheckResult> {
    let only: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    corpus
        .iter()
        .flat_map(|i| run_instance(i, &Caps::default(), Some(&only)))
        .collect()
}

fn first_failure(results: &[CheckResult]) -> Option<String> {
    results.iter().find(|r| !r.passed()).map(|r| r.to_string())
}

fn sum(results: &[CheckResult], key: &str) -> usize {
    results.iter().filter_map(|r| r.get(key)?.parse::<usize>().ok()).sum()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn is_chain(name: &str) -> bool {
    (name.starts_with("luk-") || name.starts_with("goedel-") || name.starts_with("sum-")) && !name.contains("tau")
}

fn criterion_1(corpus: &[Instance]) -> Line {
    let (res, t) = timed(|| {
        let chains: Vec<&Instance> = corpus.iter().filter(|i| is_chain(&i.name)).collect();
        let mut problems = Vec::new();
        for c in &chains {
            let alg = &c.doc.algebra;
            if !check_axioms(alg, AlgebraClass::Bl).unwrap().holds() {
                problems.push(format!("{} not BL", c.name));
            }
            if c.name.starts_with("luk-") && !check_axioms(alg, AlgebraClass::Mv).unwrap().holds() {
                problems.push(format!("{} not MV", c.name));
            }
        }
        let g3 = chains.iter().find(|c| c.name == "goedel-2").expect("goedel 3-chain");
        let mv = check_axioms(&g3.doc.algebra, AlgebraClass::Mv).unwrap();
        match &mv.violation {
            Some(v) if v.axiom == "involution" => {
                let a = v.witness[0];
                let view = smorph_core::residuated::ResiduatedView::new(&g3.doc.algebra).unwrap();
                if view.neg(view.neg(a)) == a {
                    problems.push("involution witness does not fail".into());
                }
            }
            other => problems.push(format!("goedel 3-chain MV verdict {other:?}")),
        }
        (chains.len(), mv.violation, problems)
    });
    let (count, viol, problems) = res;
    line(
        problems.is_empty() && count == 14 && t < Duration::from_secs(1),
        format!(
            "{count} chains BL, Łukasiewicz MV, Gödel 3-chain fails MV at {} ({t:.2?}) {}",
            viol.map(|v| v.to_string()).unwrap_or_default(),
            problems.join("; ")
        ),
    )
}

fn criterion_2(corpus: &[Instance]) -> Line {
    let (results, t) = timed(|| instance_results(corpus, &["congruence-oracle"]));
    let small = corpus.iter().filter(|i| i.doc.algebra.size() <= 6).count();
    line(
        first_failure(&results).is_none() && results.len() == small && t < Duration::from_secs(30),
        format!(
            "{} algebras with |A| ≤ 6, {} generated congruences match the partition oracle ({t:.2?}) {}",
            results.len(),
            sum(&results, "generated"),
            first_failure(&results).unwrap_or_default()
        ),
    )
}

fn criterion_3(corpus: &[Instance]) -> Line {
    let results = instance_results(corpus, &["malcev-replay"]);
    let samples = sum(&results, "samples");
    line(
        first_failure(&results).is_none() && samples >= 200,
        format!("{samples} memberships replayed {}", first_failure(&results).unwrap_or_default()),
    )
}

fn criterion_4(corpus: &[Instance]) -> Line {
    let ids = ["lift-congruence", "kernel-compatibility", "image-generation", "faithful-lift"];
    let results = instance_results(corpus, &ids);
    let states = results
        .iter()
        .filter(|r| r.check == "lift-congruence")
        .filter_map(|r| r.get("states")?.parse::<usize>().ok())
        .sum::<usize>();
    line(
        first_failure(&results).is_none() && states > 0,
        format!(
            "{} suite runs over {states} state-morphism algebras {}",
            results.len(),
            first_failure(&results).unwrap_or_default()
        ),
    )
}

fn criterion_5(corpus: &[Instance]) -> Line {
    let (results, t) = timed(|| instance_results(corpus, &["subdiagonal-embedding"]));
    let si = sum(&results, "si");
    line(
        first_failure(&results).is_none() && si > 0 && t < Duration::from_secs(300),
        format!("{si} SI expansions embedded into diagonal algebras ({t:.2?}) {}", first_failure(&results).unwrap_or_default()),
    )
}

fn criterion_6(corpus: &[Instance]) -> Line {
    let results = instance_results(corpus, &["si-transfer"]);
    let si_bases = results.iter().filter(|r| r.get("base-si").is_none()).count();
    line(
        first_failure(&results).is_none() && si_bases > 0,
        format!(
            "{si_bases} SI bases, {} expansions all SI {}",
            sum(&results, "states"),
            first_failure(&results).unwrap_or_default()
        ),
    )
}

fn criterion_7(corpus: &[Instance]) -> Line {
    let results = instance_results(corpus, &["state-si-characterization"]);
    line(
        first_failure(&results).is_none() && !results.is_empty(),
        format!(
            "{} state operators on {} BL-algebras, conditions agree with monolith detection ({} SI) {}",
            sum(&results, "operators"),
            results.len(),
            sum(&results, "si"),
            first_failure(&results).unwrap_or_default()
        ),
    )
}

fn criterion_8(corpus: &[Instance]) -> Line {
    let caps = Caps::default();
    let mut results: Vec<CheckResult> = ["swap-isomorphism", "tau-h-recovery", "radical-square"]
        .iter()
        .filter_map(|id| run_corpus_check(id, corpus, &caps))
        .collect();
    let tagged = instance_results(corpus, &["trichotomy"]);
    let summary: Vec<String> = results.iter().map(|r| format!("{} {}", r.check, r.detail.join(" "))).collect();
    results.extend(tagged.iter().cloned());
    line(
        first_failure(&results).is_none() && results.len() == 3 + tagged.len(),
        format!(
            "{}; {} instances tagged {}",
            summary.join("; "),
            tagged.len(),
            first_failure(&results).unwrap_or_default()
        ),
    )
}

fn criterion_9(corpus: &[Instance]) -> Line {
    let (results, t) = timed(|| instance_results(corpus, &["cep"]));
    line(
        first_failure(&results).is_none() && !results.is_empty() && t < Duration::from_secs(300),
        format!(
            "{} extensions, {} τ-subalgebra extensions ({t:.2?}) {}",
            sum(&results, "extensions"),
            sum(&results, "tau-extensions"),
            first_failure(&results).unwrap_or_default()
        ),
    )
}

fn criterion_10(corpus: &[Instance]) -> Line {
    let r = run_corpus_check("generator-spot-check", corpus, &Caps::default()).expect("registered check");
    line(r.passed(), format!("{}", r.detail.join(" ")))
}

fn criterion_11(corpus: &[Instance]) -> Line {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let bl: Vec<&Instance> = corpus
        .iter()
        .filter(|i| matches!(i.doc.declared(), Some(AlgebraClass::Bl | AlgebraClass::Mv)))
        .collect();
    let mut detected = 0;
    let mut misses = Vec::new();
    for _ in 0..10 {
        let inst = bl[rng.gen_range(0..bl.len())];
        let alg = &inst.doc.algebra;
        let op = rng.gen_range(0..alg.signature().len());
        let position = rng.gen_range(0..alg.table(op).len());
        let old = alg.table(op)[position];
        let value = (old + rng.gen_range(1..alg.size())) % alg.size();
        let doc = mutate_entry(&inst.doc, op, position, value).unwrap();
        let mutated = Instance {
            name: format!("{}-mutated", inst.name),
            doc,
        };
        let results = run_instance(&mutated, &Caps::default(), None);
        let caught = results
            .iter()
            .any(|r| r.status == Status::Fail && !r.detail.is_empty());
        if caught {
            detected += 1;
        } else {
            misses.push(format!("{} {}[{position}]={value}", inst.name, alg.signature().name(op)));
        }
    }
    line(detected == 10, format!("{detected}/10 single-entry mutations detected {}", misses.join(" ")))
}

fn main() -> ExitCode {
    let corpus = load_dir(&bundled_dir()).expect("bundled corpus parses");
    let criteria: [(usize, fn(&[Instance]) -> Line); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let l = run(&corpus);
        if !l.pass {
            failed += 1;
        }
        println!("criterion {n:>2}: {} {}", if l.pass { "PASS" } else { "FAIL" }, l.summary.trim_end());
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
