//! Batch runs over a set of groups: per-group invariants, the identity
//! pipeline, and every theorem check on each compatible pair.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::report::{GroupEcho, Report};
use super::spec::{load_spec_file, SpecError};
use crate::builtin;
use crate::center::CenterData;
use crate::class_algebra::{ClassAlgebra, RepChoice};
use crate::cyclotomic::CycNum;
use crate::group::FiniteGroup;
use crate::iso::{
    candidate_checks, compatible, search_integral_isomorphisms, verify_c4, verify_csc, verify_nilpotent_theorem, Check,
    IsoError, IsoProblem, SearchOptions,
};

/// The identity `σ` is found, and its candidate is integral, monomial,
/// normalized, degree and trace preserving.
pub fn identity_pipeline(g: &CenterData, options: &SearchOptions) -> Result<Vec<Check>, IsoError> {
    let problem = IsoProblem::new(g, g)?;
    let outcome = search_integral_isomorphisms(&problem, options)?;
    let h = problem.dim();
    let identity: Vec<usize> = (0..h).collect();
    let name = |s: &str| format!("{s} [{}]", g.name);
    let mut checks = Vec::new();
    let found = outcome.candidates.iter().find(|c| c.sigma == identity);
    checks.push(Check::from_bool(
        name("identity candidate found"),
        found.is_some(),
        || json!({ "candidates": outcome.candidates.len() }),
    ));
    if let Some(c) = found {
        let flags_ok = c.integral
            && c.unimodular
            && c.monomial.is_some()
            && c.degree_preserving
            && c.trace_preserving
            && problem
                .normalize(c)
                .is_ok_and(|n| n.normalized && n.is_permutation_matrix());
        checks.push(Check::from_bool(name("identity candidate flags"), flags_ok, || {
            json!({
                "integral": c.integral,
                "monomial": c.monomial.is_some(),
                "normalized": c.normalized,
                "degree_preserving": c.degree_preserving,
                "trace_preserving": c.trace_preserving,
            })
        }));
    }
    candidate_checks(&problem, &outcome.candidates, &mut checks);
    Ok(checks)
}

fn budget_note(name: String, e: &IsoError) -> Check {
    Check::not_met(name, e.to_string())
}

/// All pair checks for one ordered pair.
pub fn pair_checks(a: &CenterData, b: &CenterData, options: &SearchOptions) -> (Vec<Check>, Value) {
    let label = format!("{} / {}", a.name, b.name);
    let nilpotent = a.group.is_nilpotent() && b.group.is_nilpotent();
    let result = if nilpotent {
        verify_nilpotent_theorem(a, b, options).and_then(|mut v| {
            let c4 = verify_c4(a, b, options)?;
            v.checks.extend(c4.checks);
            Ok(v)
        })
    } else {
        verify_csc(a, b, options)
    };
    match result {
        Ok(v) => {
            let summary = json!({
                "pair": label,
                "nilpotent": nilpotent,
                "search_space": v.space_size,
                "candidates": v.candidates.len(),
            });
            let checks = v
                .checks
                .into_iter()
                .map(|mut c| {
                    c.name = format!("{} [{label}]", c.name);
                    c
                })
                .collect();
            (checks, summary)
        }
        Err(e) => (
            vec![budget_note(format!("pair checks [{label}]"), &e)],
            json!({ "pair": label, "skipped": e.to_string() }),
        ),
    }
}

/// Checks applied to one group on its own.
pub fn group_checks(g: &CenterData, options: &SearchOptions) -> Vec<Check> {
    let mut checks = Vec::new();
    let name = |s: &str| format!("{s} [{}]", g.name);
    let axioms = g.table.check_axioms(&g.algebra);
    checks.push(Check::from_bool(
        name("character table axioms"),
        axioms.is_ok(),
        || json!({ "error": axioms.as_ref().err().map(ToString::to_string) }),
    ));
    match identity_pipeline(g, options) {
        Ok(c) => checks.extend(c),
        Err(e) => checks.push(budget_note(name("identity pipeline"), &e)),
    }
    checks
}

/// Runs every group check and every pair check over `groups`.
pub fn run_corpus(command: &str, groups: &[CenterData], options: &SearchOptions) -> Report {
    let mut report = Report::new(command);
    report.groups = groups.iter().map(GroupEcho::of).collect();
    let mut pairs = Vec::new();
    for g in groups {
        report.checks.extend(group_checks(g, options));
    }
    for (i, a) in groups.iter().enumerate() {
        for b in &groups[i + 1..] {
            if compatible(a, b) {
                let (checks, summary) = pair_checks(a, b, options);
                report.checks.extend(checks);
                pairs.push(summary);
            }
        }
    }
    report.data = Some(json!({ "pairs": pairs }));
    report
}

/// Loads every `*.json` file of `dir` in name order, and those of
/// `dir/extended` too when asked.
pub fn load_corpus_dir(dir: &Path, extended: bool) -> Result<Vec<(String, FiniteGroup)>, SpecError> {
    let mut dirs = vec![dir.to_path_buf()];
    if extended {
        dirs.push(dir.join("extended"));
    }
    let mut out = Vec::new();
    for d in dirs {
        let entries = std::fs::read_dir(&d).map_err(|e| SpecError::Io {
            path: d.display().to_string(),
            msg: e.to_string(),
        })?;
        let mut files: Vec<_> = entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        for f in files {
            out.push(load_spec_file(&f)?);
        }
    }
    Ok(out)
}

/// Central elements with small integer coefficients multiplied through the
/// structure constants and by convolution in the group ring.
fn convolution_check(g: &CenterData, rng: &mut ChaCha8Rng, trials: usize) -> bool {
    let alg = &g.algebra;
    let grp = &g.group;
    let n = grp.order();
    let h = alg.dim();
    let conductor = alg.conductor();
    let random = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..h).map(|_| rng.random_range(-3..=3)).collect() };
    (0..trials).all(|_| {
        let (u, v) = (random(rng), random(rng));
        let spread = |c: &[i64]| -> Vec<i64> { (0..n).map(|x| c[g.classes.class_of(x)]).collect() };
        let (fu, fv) = (spread(&u), spread(&v));
        let mut conv = vec![0i64; n];
        for x in 0..n {
            if fu[x] == 0 {
                continue;
            }
            for y in 0..n {
                conv[grp.mul(x, y)] += fu[x] * fv[y];
            }
        }
        let lift = |c: &[i64]| alg.element(c.iter().map(|&k| CycNum::from_int(conductor, k)).collect());
        let prod = alg.multiply(&lift(&u), &lift(&v));
        (0..h).all(|k| prod.coeff(k) == &CycNum::from_int(conductor, conv[g.classes.representative(k)]))
    })
}

fn kronecker_sweep(max_conductor: u32) -> Option<(u32, Vec<i64>)> {
    for n in 1..=max_conductor {
        let total = 3usize.pow(n);
        for code in 0..total {
            let coeffs: Vec<i64> = (0..n).map(|k| (code / 3usize.pow(k) % 3) as i64 - 1).collect();
            let big: Vec<_> = coeffs.iter().map(|&c| c.into()).collect();
            let z = CycNum::from_exponent_coeffs(n, &big, 1.into());
            if z.abs_squared().is_one() != z.is_root_of_unity().is_some() {
                return Some((n, coeffs));
            }
        }
    }
    None
}

/// The full invariant suite on the builtin corpus.
pub fn selftest(options: &SearchOptions) -> Report {
    let mut groups = Vec::new();
    let mut report = Report::new("selftest");
    for name in builtin::CORPUS {
        let g = builtin::named(name).expect("builtin corpus names resolve");
        match CenterData::new(*name, g) {
            Ok(c) => groups.push(c),
            Err(e) => report.checks.push(Check::fail(
                format!("character table [{name}]"),
                json!({ "error": e.to_string() }),
            )),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for g in &groups {
        let name = |s: &str| format!("{s} [{}]", g.name);
        if g.order() <= 16 {
            report.checks.push(Check::from_bool(
                name("structure constants agree with convolution"),
                convolution_check(g, &mut rng, 20),
                || json!({ "group": g.name }),
            ));
        }
        let maximal = ClassAlgebra::with_representatives(&g.group, &g.classes, RepChoice::Maximal);
        let same = (0..g.class_count()).all(|i| {
            (0..g.class_count()).all(|j| (0..g.class_count()).all(|k| g.algebra.c(i, j, k) == maximal.c(i, j, k)))
        });
        report.checks.push(Check::from_bool(
            name("structure constants independent of representatives"),
            same,
            || json!({ "group": g.name }),
        ));
        let n = g.table.conductor() as u64;
        let stable = (1..=n)
            .filter(|&t| num_integer::gcd(t, n) == 1)
            .all(|t| g.table.is_galois_stable(&g.classes, t));
        report.checks.push(Check::from_bool(
            name("table is Galois stable"),
            stable,
            || json!({ "group": g.name }),
        ));
        let one_sum = (0..g.class_count())
            .map(|i| g.table.block_idempotent(&g.algebra, i))
            .fold(g.algebra.zero(), |acc, e| g.algebra.add(&acc, &e));
        report.checks.push(Check::from_bool(
            name("block idempotents sum to one"),
            one_sum == g.algebra.unit(),
            || json!({ "group": g.name }),
        ));
    }
    let sweep = kronecker_sweep(8);
    report.checks.push(Check::from_bool(
        "unit modulus iff root of unity on {-1,0,1} coefficients up to conductor 8",
        sweep.is_none(),
        || json!({ "counterexample": sweep }),
    ));
    let corpus = run_corpus("selftest", &groups, options);
    report.groups = corpus.groups;
    report.data = corpus.data;
    report.checks.extend(corpus.checks);
    report
}
