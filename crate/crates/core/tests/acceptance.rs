//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use tolrec::geometry::Trapezoid;
use tolrec::oracles::fixtures::{closure_counterexample_rep, unsat_formula, Running};
use tolrec::oracles::lemmas::{check_lemmas, check_split_realization};
use tolrec::oracles::random::rng;
use tolrec::oracles::{
    assignment_to_flips, check_equivalence, random_bounded_tolerance_rep, random_formula, random_parallelogram_rep,
    Assignment, EquivalenceReport,
};
use tolrec::orientation::acyclic_wrt_pairs;
use tolrec::reduction::{build_gphi, build_hphi, build_pphi, sample_formula, MonotoneCnf};
use tolrec::structure::ComponentFamily;
use tolrec::Execution;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn counts() -> tolrec::Result<Outcome> {
    let start = Instant::now();
    let art = build_pphi(&sample_formula())?;
    let gphi = build_gphi(&art)?;
    let hphi = build_hphi(&gphi.rep)?;
    let got = (art.pphi.n(), art.connectors, art.m(), hphi.graph.n());
    let elapsed = start.elapsed();
    let pass = got == (28, 10, 14, 98) && within(elapsed, Duration::from_secs(1));
    Ok(Outcome::new(pass, format!("(P, connectors, m, H) = {got:?} in {elapsed:.2?}")))
}

fn certificate() -> tolrec::Result<Outcome> {
    let f = sample_formula();
    let a = Assignment::from_bits(&[1, 1, 0, 0]);
    let satisfied = f.nae_satisfied_by(&a.0)?;
    let art = build_pphi(&f)?;
    let acyclic = acyclic_wrt_pairs(&art.flip_blocks(&[3, 4])?, &art.merge_pairs)?;
    let derived = assignment_to_flips(&f, &a)?;
    Ok(Outcome::new(
        satisfied && acyclic,
        format!("(1,1,0,0) satisfies: {satisfied}, flip {{x3,x4}} acyclic: {acyclic}, derived flips {derived:?}"),
    ))
}

fn sweep_formulas() -> Vec<MonotoneCnf> {
    let mut out: Vec<MonotoneCnf> = (0..200).map(random_formula).collect();
    out.push(unsat_formula());
    out
}

fn equivalence(reports: &[EquivalenceReport], elapsed: Duration) -> Outcome {
    let discrepancies = reports.iter().filter(|r| !r.flip_restricted_converse).count();
    let sat: Vec<_> = reports.iter().filter(|r| r.sat).collect();
    let bad_cert = sat.iter().filter(|r| r.certificate_acyclic != Some(true)).count();
    let bad_para = sat.iter().filter(|r| r.parallelogram_verified != Some(true)).count();
    let pass = discrepancies == 0 && bad_cert == 0 && bad_para == 0 && within(elapsed, Duration::from_secs(300));
    Outcome::new(
        pass,
        format!(
            "{} formulas ({} sat), {discrepancies} discrepancies, {bad_cert} bad certificates, {bad_para} failed straightenings, {elapsed:.1?}",
            reports.len(),
            sat.len()
        ),
    )
}

fn split_recovery(reports: &[EquivalenceReport]) -> Outcome {
    let mismatches = reports.iter().filter(|r| !r.split_recovers_pphi).count();
    Outcome::new(mismatches == 0, format!("{} instances, {mismatches} mismatches", reports.len()))
}

fn lemmas() -> tolrec::Result<Outcome> {
    let start = Instant::now();
    let (mut violations, mut first) = (0, None);
    for seed in 0..1000u64 {
        let n = 3 + (seed % 8) as usize;
        let report = check_lemmas(&random_parallelogram_rep(n, seed))?;
        if report.violations() > 0 {
            violations += report.violations();
            first.get_or_insert(format!("seed {seed}: {:?}", report.example));
        }
    }
    let elapsed = start.elapsed();
    let pass = violations == 0 && within(elapsed, Duration::from_secs(120));
    let mut detail = format!("1000 reps, {violations} violations, {elapsed:.1?}");
    if let Some(f) = first {
        detail.push_str(&format!("; first: {f}"));
    }
    Ok(Outcome::new(pass, detail))
}

fn acyclicity_preservation() -> tolrec::Result<Outcome> {
    let (mut checked, mut violations, mut draws, mut first) = (0usize, 0usize, 0u64, None);
    let (mut standard, mut standard_violations, mut split_claim_violations) = (0usize, 0usize, 0usize);
    while checked < 200 && draws < 20_000 {
        let seed = draws;
        draws += 1;
        let mut r = rng(seed ^ 0x5eed);
        let n = r.gen_range(4..=9);
        let rep = random_parallelogram_rep(n, seed);
        let size = r.gen_range(1..=3.min(n));
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(&mut r);
        ids.truncate(size);
        let Some(check) = check_split_realization(rep.as_trapezoid(), &ids)? else { continue };
        checked += 1;
        standard += usize::from(check.standard);
        standard_violations += usize::from(check.standard && !check.ok());
        split_claim_violations += usize::from(!check.permutation || check.acyclic_rep_exists != Some(true));
        if !check.ok() {
            violations += 1;
            first.get_or_insert(format!("seed {seed}, U = {ids:?}: {check:?}"));
        }
    }
    let mut detail = format!(
        "{checked} admissible instances from {draws} draws, {violations} violations; \
         {standard} reps standard w.r.t. U with {standard_violations} violations; \
         exhaustive search finds an acyclic permutation rep of the output in all but {split_claim_violations}"
    );
    if let Some(f) = first {
        detail.push_str(&format!("; first: {f}"));
    }
    Ok(Outcome::new(checked == 200 && violations == 0, detail))
}

fn closure_counterexample() -> tolrec::Result<Outcome> {
    let r = closure_counterexample_rep();
    let g = r.graph();
    let family = ComponentFamily::new(&g, Running::U)?;
    let i = family.components.iter().position(|c| c.contains(Running::V2)).expect("V2 is far from u");
    let master = family.masters()?.contains(&i);
    let left = r.set_left_of(family.components[i].iter(), Running::U);
    let closure = family.closure(i)?;
    let members: Vec<usize> = closure.iter().flat_map(|&p| family.components[p].iter()).collect();
    let claim_holds = r.set_left_of(members.iter().copied(), Running::U);
    let right_member = members.iter().any(|&v| r.left_of(Running::U, v));
    Ok(Outcome::new(
        master && left && right_member && !claim_holds,
        format!("master V2: {master}, R(V2) left of T_u: {left}, some D_u(V2) member right of T_u: {right_member}"),
    ))
}

fn roundtrips() -> tolrec::Result<Outcome> {
    let (mut violations, mut first) = (0, None);
    for seed in 0..100u64 {
        let n = 1 + (seed % 12) as usize;
        let t = random_bounded_tolerance_rep(n, seed);
        let p = t.to_parallelogram()?;
        let invariant = p.as_trapezoid().traps().iter().all(Trapezoid::is_parallelogram);
        let back = p.to_tolerance();
        let ok = invariant && p.graph() == t.graph() && back.graph() == t.graph() && back.is_bounded();
        if !ok {
            violations += 1;
            first.get_or_insert(seed);
        }
    }
    Ok(Outcome::new(violations == 0, format!("100 reps, {violations} violations, first seed {first:?}")))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let formulas = sweep_formulas();
    let sweep = Instant::now();
    let reports: tolrec::Result<Vec<EquivalenceReport>> =
        formulas.iter().map(|f| check_equivalence(f, Execution::Parallel)).collect();
    let sweep_time = sweep.elapsed();

    let text = |r: tolrec::Result<Outcome>| r.map_err(|e| e.to_string());
    let results: Vec<(&str, Result<Outcome, String>)> = vec![
        ("1 reduction counts", text(counts())),
        ("2 worked certificate", text(certificate())),
        ("3 equivalence sweep", reports.as_ref().map(|r| equivalence(r, sweep_time)).map_err(|e| e.to_string())),
        ("4 split-u recovery", reports.as_ref().map(|r| split_recovery(r)).map_err(|e| e.to_string())),
        ("5 lemma suites", text(lemmas())),
        ("6 acyclicity preservation", text(acyclicity_preservation())),
        ("7 closure counterexample", text(closure_counterexample())),
        ("8 tolerance round trips", text(roundtrips())),
    ];

    let mut failed = 0;
    for (name, result) in results {
        let outcome = result.unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        failed += usize::from(!outcome.pass);
        println!("{} criterion {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.detail);
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
