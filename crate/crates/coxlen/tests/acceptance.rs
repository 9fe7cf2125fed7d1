//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed. Criteria listed in [`KNOWN_FAILURES`] still run in full and print
//! FAIL; the exit status is nonzero for any other failure, or if a known
//! failure starts passing. `COXLEN_ACCEPTANCE_STRICT=1` makes every FAIL
//! fatal. `COXLEN_EXTENDED=1` adds the slower powers-table rows.

use std::process::ExitCode;
use std::time::Instant;

use coxlen::commands::{TABLE1, TABLE1_EXTENDED};
use coxlen::parallel::Engine;
use coxlen_core::formulas::{self, BoundParams};
use coxlen_core::geom::{self, Matrix};
use coxlen_core::reflength::{self, universal_reflection_length, DeletionSet, Oracle};
use coxlen_core::rewriting;
use coxlen_core::{CoxeterSystem, Label, Lcg64, SearchLimits, Word};

/// Criteria the computation contradicts: 5b has strict cells in single(3,3),
/// and 8 has twisted palindromes whose center deletion raises l_Rn.
const KNOWN_FAILURES: &[&str] = &["5b", "8"];

struct Runner {
    engine: Engine,
    limits: SearchLimits,
    failed: Vec<String>,
    unexpected: Vec<String>,
}

impl Runner {
    fn report(&mut self, id: &str, title: &str, start: Instant, outcome: Result<String, String>) {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => {
                println!("PASS  {id:<3} {title}: {detail} [{secs:.2} s]");
                if KNOWN_FAILURES.contains(&id) {
                    self.unexpected.push(format!("{id} passed"));
                }
            }
            Err(detail) => {
                let known = KNOWN_FAILURES.contains(&id);
                let tag = if known { " [known failure]" } else { "" };
                println!("FAIL  {id:<3} {title}: {detail} [{secs:.2} s]{tag}");
                self.failed.push(id.to_string());
                if !known {
                    self.unexpected.push(format!("{id} failed"));
                }
            }
        }
    }

    fn l_r(&self, w: &Word, sys: &CoxeterSystem) -> usize {
        self.engine.reflection_length(w, sys, Oracle::Matrix).expect("within budget").length
    }
}

fn sys(spec: &str) -> CoxeterSystem {
    spec.parse().expect("valid group")
}

fn word(letters: &[usize], n: usize) -> Word {
    Word::from_one_based(letters, n).expect("valid word")
}

fn check(failures: &[String], ok: String) -> Result<String, String> {
    if failures.is_empty() {
        Ok(ok)
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Err(format!("{} failures; {}", failures.len(), shown.join("; ")))
    }
}

fn table1(r: &mut Runner, id: &str, rows: &[(usize, usize)]) {
    let start = Instant::now();
    let g = sys("triangle:3:3:4");
    let mut failures = Vec::new();
    for &(lambda, expected) in rows {
        let got = r.l_r(&Word::coxeter_power(&g, lambda, 0).unwrap(), &g);
        if got != expected {
            failures.push(format!("λ = {lambda}: got {got}, expected {expected}"));
        }
    }
    let title = if id == "1" { "powers of s1 s2 s3 in triangle(3,3,4), λ = 2..8" } else { "extended powers, λ = 9..12, 15" };
    r.report(id, title, start, check(&failures, format!("{} of {} exact", rows.len(), rows.len())));
}

fn drake_peters(r: &mut Runner) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cells = 0;
    for n in 3..=5 {
        for lambda in 0..=4 {
            for rr in 1..=n {
                cells += 1;
                let w = Word::coxeter_power_rank(n, lambda, rr).unwrap();
                let expected = lambda * (n - 2) + rr;
                let computed = universal_reflection_length(&w);
                let closed = formulas::universal_power_length(n, lambda, rr).unwrap();
                if computed != expected || closed != expected {
                    failures.push(format!("n = {n}, λ = {lambda}, r = {rr}: {computed}/{closed} vs {expected}"));
                }
            }
        }
    }
    r.report("2", "Drake–Peters grid", start, check(&failures, format!("{cells} cells")));
}

fn worked_examples(r: &mut Runner) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let t333 = sys("triangle:3:3:3");
    let got = r.l_r(&Word::coxeter_power(&t333, 4, 2).unwrap(), &t333);
    if got != 2 {
        failures.push(format!("triangle(3,3,3) (s1s2s3)^4 s1s2: {got}"));
    }
    let s34 = sys("single:3:4");
    let w = Word::coxeter_power(&s34, 5, 2).unwrap();
    let got = r.l_r(&w, &s34);
    let (_, sets, _) = r.engine.deletion_sets(&w, &s34, 5).unwrap();
    if got != 5 || sets.len() < 2 {
        failures.push(format!("single(3,4) (s1s2s3)^5 s1s2: {got} with {} deletion sets", sets.len()));
    }
    let s33 = sys("single:3:3");
    let rw = word(&[1, 2, 1, 3, 1, 3, 2, 1, 2], 3);
    let (lr, lrn) = (r.l_r(&rw, &s33), universal_reflection_length(&rw));
    if (lr, lrn) != (1, 3) {
        failures.push(format!("single(3,3) s1s2s1s3s1s3s2s1s2: l_R = {lr}, l_Rn = {lrn}"));
    }
    r.report("3", "worked examples", start, check(&failures, format!("3 examples; {} deletion sets for single(3,4)", sets.len())));
}

fn lower_bounds(r: &mut Runner) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let s33 = sys("single:3:3");
    let rw = word(&[1, 2, 1, 3, 1, 3, 2, 1, 2], 3);
    let lb = reflength::lower_bound_theorem2(&rw, &s33, &DeletionSet::from_unsorted(vec![4]), &r.limits).unwrap();
    let lr = r.l_r(&rw, &s33);
    if lb.bound != 1 || lr != 1 {
        failures.push(format!("reflection word: bound {} vs l_R {lr}", lb.bound));
    }
    let g = CoxeterSystem::triangle(Label::Finite(3), Label::Infinity, Label::Infinity).unwrap();
    let t = word(&[3, 1, 2, 1, 3, 2, 1, 2], 3);
    for (set, expected) in [(vec![0, 4], 0), (vec![2, 6], 2)] {
        let lb = reflength::lower_bound_theorem2(&t, &g, &DeletionSet::from_unsorted(set.clone()), &r.limits).unwrap();
        if lb.bound != expected {
            failures.push(format!("t with {set:?}: bound {} vs {expected}", lb.bound));
        }
    }
    if r.l_r(&t, &g) != 2 {
        failures.push("l_R(t) ≠ 2".into());
    }
    r.report("4", "lower bound examples", start, check(&failures, "sharp 1 ≤ 1; set-dependent 0 and 2".into()));
}

fn upper_bounds(r: &mut Runner) {
    let start = Instant::now();
    let mut over = Vec::new();
    let mut strict = Vec::new();
    let mut cells = 0;
    for (spec, max_lambda) in [("single:3:3", 5), ("single:3:4", 5), ("single:3:5", 5), ("single:4:3", 3)] {
        let g = sys(spec);
        let n = g.rank();
        let k = g.single_label().unwrap();
        for lambda in 0..=max_lambda {
            for rr in 1..=n {
                cells += 1;
                let rep = formulas::bounds(BoundParams { n, k, lambda, r: rr }).unwrap();
                let l = r.l_r(&Word::coxeter_power(&g, lambda, rr).unwrap(), &g);
                if l > rep.upper || (l as i64) < rep.lower {
                    over.push(format!("{spec} λ = {lambda} r = {rr}: {l} outside [{}, {}]", rep.lower, rep.upper));
                }
                if l != rep.upper {
                    strict.push(format!("{spec} λ = {lambda} r = {rr}: {l} < {}", rep.upper));
                }
            }
        }
    }
    let bound_start = start;
    r.report("5a", "upper bounds respected", bound_start, check(&over, format!("{cells} cells")));
    for s in &strict {
        println!("      strict cell: {s}");
    }
    r.report("5b", "upper bounds attained", Instant::now(), check(&strict, format!("{cells} cells")));
}

fn commuting(r: &mut Runner) {
    let start = Instant::now();
    let g = sys("triangle:4:2:4");
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for lambda in 1..=7 {
        let l = r.l_r(&Word::coxeter_power(&g, lambda, 0).unwrap(), &g);
        values.push(l);
        let allowed = formulas::commuting_rank3_length(lambda).unwrap();
        let expected_ok = if lambda % 2 == 0 { l == 2 } else { l == 1 || l == 3 };
        if !allowed.contains(&l) || !expected_ok {
            failures.push(format!("λ = {lambda}: {l}"));
        }
    }
    r.report("6", "commuting generators", start, check(&failures, format!("λ = 1..7 → {values:?}")));
}

const PROPERTY_SYSTEMS: &[&str] =
    &["triangle:3:3:4", "single:3:3", "single:3:4", "single:3:5", "universal:3", "triangle:4:2:4", "single:4:3"];
const CASES: usize = 500;

fn random_word(rng: &mut Lcg64, rank: usize, max_len: usize) -> Word {
    let len = rng.below(max_len as u32 + 1) as usize;
    Word::from_letters((0..len).map(|_| rng.below(rank as u32) as u8).collect())
}

fn properties(r: &mut Runner) {
    let mut parity = Vec::new();
    let mut universal = Vec::new();
    let mut conjugation = Vec::new();
    let mut dyer = Vec::new();
    let mut moves = Vec::new();
    let mut move_checks = 0usize;
    let start = Instant::now();
    for (s, spec) in PROPERTY_SYSTEMS.iter().enumerate() {
        let g = sys(spec);
        let n = g.rank();
        let max_len = if n == 3 { 10 } else { 8 };
        let exact = geom::build_representation(&g).exact_generators();
        let mut rng = Lcg64::new(1000 + s as u64);
        for _ in 0..CASES {
            let w = random_word(&mut rng, n, max_len);
            let res = r.engine.reflection_length(&w, &g, Oracle::Matrix).unwrap();
            if res.length % 2 != res.reduced.len() % 2 || res.length > res.reduced.len() {
                parity.push(format!("{spec} {w}"));
            }
            if res.length > universal_reflection_length(&res.reduced) {
                universal.push(format!("{spec} {w}"));
            }
            let u = random_word(&mut rng, n, 4);
            if r.l_r(&u.concat(&w).concat(&u.inverse()), &g) != res.length {
                conjugation.push(format!("{spec} {w} by {u}"));
            }
            if !reflength::verify_after_dyer(&res.reduced, &res.witness, &g, &r.limits).unwrap() {
                dyer.push(format!("{spec} {w}"));
            }
            if let Some(gens) = &exact {
                let image = |v: &Word| {
                    v.iter().fold(Matrix::identity(n), |m, &a| m.checked_mul(&gens[a as usize]).expect("bigint"))
                };
                let before = image(&w);
                for mv in rewriting::applicable_moves(&w, &g) {
                    move_checks += 1;
                    let after = rewriting::apply_move(&w, &mv, &g).unwrap();
                    if image(&after) != before {
                        moves.push(format!("{spec} {w} {mv}"));
                    }
                }
            }
        }
    }
    let systems = PROPERTY_SYSTEMS.len();
    let summary = format!("{CASES} cases × {systems} systems");
    r.report("7a", "parity and l_R ≤ l_S", start, check(&parity, summary.clone()));
    r.report("7b", "l_R ≤ l_Rn", start, check(&universal, summary.clone()));
    r.report("7c", "conjugation invariance", start, check(&conjugation, summary.clone()));
    r.report("7d", "after-Dyer on every witness", start, check(&dyer, summary.clone()));
    r.report("7e", "move invariance of the matrix image", start, check(&moves, format!("{move_checks} moves")));
    oracle_agreement(r);
    relation_lemma(r);
}

/// Every word of length `0..=max_len`, visited depth-first with its matrix.
fn each_word(n: usize, max_len: usize, gens: &[Matrix<f64>], mut visit: impl FnMut(&[u8], &Matrix<f64>)) {
    fn go(
        n: usize,
        max_len: usize,
        gens: &[Matrix<f64>],
        prefix: &mut Vec<u8>,
        m: &Matrix<f64>,
        visit: &mut dyn FnMut(&[u8], &Matrix<f64>),
    ) {
        visit(prefix, m);
        if prefix.len() == max_len {
            return;
        }
        for a in 0..n {
            prefix.push(a as u8);
            let next = m.checked_mul(&gens[a]).expect("float");
            go(n, max_len, gens, prefix, &next, visit);
            prefix.pop();
        }
    }
    go(n, max_len, gens, &mut Vec::new(), &Matrix::identity(n), &mut visit);
}

fn oracle_agreement(r: &mut Runner) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut words = 0usize;
    let mut inconclusive = 0usize;
    for spec in ["triangle:3:3:4", "single:3:3", "single:3:4", "single:3:5", "universal:3", "triangle:4:2:4", "single:2:5"] {
        let g = sys(spec);
        let rep = geom::build_representation(&g);
        let n = g.rank();
        let mut all = Vec::new();
        each_word(n, 10, &rep.float_generators(), |letters, _| all.push(Word::from_letters(letters.to_vec())));
        for w in all {
            words += 1;
            let by_rewriting = rewriting::is_identity(&w, &g, &r.limits).unwrap();
            match rep.is_identity(w.letters()) {
                Ok(by_matrix) if by_matrix != by_rewriting => failures.push(format!("{spec} {w}")),
                Ok(_) => {}
                Err(_) => inconclusive += 1,
            }
        }
    }
    r.report(
        "7f",
        "matrix vs rewriting, all words ≤ 10",
        start,
        check(&failures, format!("{words} words, {inconclusive} deferred to rewriting")),
    );
}

fn relation_lemma(r: &mut Runner) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut identities = 0usize;
    let mut with_braids = 0usize;
    for spec in ["single:2:2", "single:2:3", "single:2:4", "single:2:5", "single:2:6", "triangle:3:3:4", "single:3:3", "single:3:4", "triangle:2:3:3"] {
        let g = sys(spec);
        let n = g.rank();
        let m12 = g.finite_label(0, 1).unwrap() as usize;
        let gens = geom::build_representation(&g).float_generators();
        let mut candidates = Vec::new();
        each_word(n, 2 * m12 + 4, &gens, |letters, m| {
            if letters.len() % 2 == 0 && m.distance(&Matrix::identity(n)) < 1e-6 {
                candidates.push(Word::from_letters(letters.to_vec()));
            }
        });
        for w in candidates {
            if !rewriting::is_identity(&w, &g, &r.limits).unwrap() {
                continue;
            }
            identities += 1;
            if rewriting::free_reduce(&w).is_empty() {
                continue;
            }
            if rewriting::minimal_braid_moves_to_identity(&w, &g, &r.limits).unwrap() >= 1 {
                with_braids += 1;
                if rewriting::contains_braid_power_subword(&w, &g).is_none() {
                    failures.push(format!("{spec} {w}"));
                }
            }
        }
    }
    r.report(
        "7g",
        "relation-subword lemma, identity words ≤ 2·m12 + 4",
        start,
        check(&failures, format!("{identities} identity words, {with_braids} needing braid-moves")),
    );
}

fn twisted(r: &mut Runner) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for rank in [3, 4] {
        for depth in 1..=4 {
            let seed = 100 * rank as u64 + depth as u64;
            for tp in reflength::generate_twisted_palindrome_decompositions(rank, depth, seed, 125).unwrap() {
                total += 1;
                if !reflength::verify_middle_deletion(&tp) {
                    let w = tp.word();
                    let center = tp.center_position();
                    let after = universal_reflection_length(&w.without_positions(&[center]));
                    failures.push(format!("rank {rank}: {w} l_Rn {} → {after}", universal_reflection_length(&w)));
                }
            }
        }
    }
    r.report("8", "twisted palindromes lose one under center deletion", start, check(&failures, format!("{total} words")));
}

fn thresholds(r: &mut Runner) {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 3..=8 {
        for k in 3..=12u32 {
            let expected = if n == 3 { k >= 5 } else { true };
            if formulas::unbounded_condition(k, n) != expected {
                failures.push(format!("n = {n}, k = {k}"));
            }
        }
    }
    r.report("9", "unboundedness thresholds", start, check(&failures, "n ≤ 8, k ≤ 12".into()));
}

fn main() -> ExitCode {
    let limits = SearchLimits::default();
    let mut r = Runner { engine: Engine::new(limits, 4).expect("thread pool"), limits, failed: Vec::new(), unexpected: Vec::new() };
    table1(&mut r, "1", TABLE1);
    if std::env::var_os("COXLEN_EXTENDED").is_some_and(|v| v == "1") {
        table1(&mut r, "1x", TABLE1_EXTENDED);
    } else {
        println!("SKIP  1x  extended powers: set COXLEN_EXTENDED=1");
    }
    drake_peters(&mut r);
    worked_examples(&mut r);
    lower_bounds(&mut r);
    upper_bounds(&mut r);
    commuting(&mut r);
    properties(&mut r);
    twisted(&mut r);
    thresholds(&mut r);
    let strict = std::env::var_os("COXLEN_ACCEPTANCE_STRICT").is_some_and(|v| v == "1");
    if r.failed.is_empty() {
        println!("all criteria passed");
    } else {
        println!("failed: {}", r.failed.join(", "));
    }
    if !r.unexpected.is_empty() {
        println!("unexpected: {}", r.unexpected.join(", "));
        ExitCode::FAILURE
    } else if strict && !r.failed.is_empty() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
