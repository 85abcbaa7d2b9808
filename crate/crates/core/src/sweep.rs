//! Exhaustive checks behind `graceful sweep`.
//!
//! Each suite walks every tree of the relevant orders and records how many
//! cases it checked and the first failure, if any.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{
    delta, delta_plus_one, label_lobster_apm_with, label_tree_pm_strong, rosa_caterpillar, AttachmentPlan,
    CompositionInput,
};
use crate::error::Error;
use crate::labeling::{complement, verify_graceful, verify_strongly_graceful, Labeling};
use crate::matching::{matching_missing, max_matching};
use crate::oracle::{self, Constraint, Family, GeneratorSpec, SearchMode, SearchOptions, MAX_ENUMERATION_ORDER};
use crate::tree::Tree;

/// Number of unlabeled trees on 1, 2, ... vertices.
pub const TREE_COUNTS: [usize; 13] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301];

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    /// Largest odd order for the matching sweeps; even sweeps go one higher.
    pub max_n: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    /// Cases outside the suite's population, e.g. trees whose contrees are
    /// never caterpillars.
    pub skipped: usize,
    pub first_failure: Option<String>,
}

struct Suite {
    report: SuiteReport,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { report: SuiteReport { name, passed: true, checked: 0, failures: 0, skipped: 0, first_failure: None } }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.checked += 1;
        if !ok {
            self.report.failures += 1;
            self.report.passed = false;
            if self.report.first_failure.is_none() {
                self.report.first_failure = Some(what());
            }
        }
    }

    fn done(self) -> SuiteReport {
        self.report
    }
}

fn trees(n: usize) -> Vec<Tree> {
    oracle::enumerate_trees(n).expect("order within enumeration bounds")
}

fn cap(n: usize) -> usize {
    n.min(MAX_ENUMERATION_ORDER)
}

pub fn apm_labeling(max_n: usize) -> SuiteReport {
    let mut s = Suite::new("apm_labeling");
    for n in (1..=cap(max_n)).step_by(2) {
        for t in trees(n) {
            if max_matching(&t).len() != n / 2 {
                continue;
            }
            match label_lobster_apm_with(&t, true) {
                Ok(r) => {
                    let ok = verify_graceful(&t, &r.labeling).ok && r.labeling.get(r.uncovered) == n - 1;
                    s.check(ok, || format!("bad output on {t}"));
                }
                Err(Error::ContreeNotCaterpillar | Error::NoUsableMatching) => s.report.skipped += 1,
                Err(e) => s.check(false, || format!("{t}: {e}")),
            }
        }
    }
    s.done()
}

pub fn matching_missing_endpoints(max_n: usize) -> SuiteReport {
    let mut s = Suite::new("matching_missing");
    for n in (1..=cap(max_n)).step_by(2) {
        for t in trees(n) {
            if max_matching(&t).len() != n / 2 {
                continue;
            }
            for v in t.longest_path_endpoints() {
                let r = matching_missing(&t, v);
                let ok = r.as_ref().is_ok_and(|m| m.uncovered(n) == vec![v]);
                s.check(ok, || format!("{t} missing {v}: {}", r.err().map_or("wrong matching".into(), |e| e.to_string())));
            }
        }
    }
    s.done()
}

pub fn rosa(max_n: usize) -> SuiteReport {
    let mut s = Suite::new("rosa");
    for n in 1..=cap(max_n) {
        for t in trees(n) {
            if !t.classify().is_caterpillar_or_path() {
                continue;
            }
            for start in t.longest_path_endpoints() {
                let r = rosa_caterpillar(&t, start);
                let ok = r.as_ref().is_ok_and(|f| verify_graceful(&t, f).ok && f.get(start) == 0);
                s.check(ok, || format!("{t} from {start}"));
            }
        }
    }
    s.done()
}

pub fn strongly_graceful(max_n: usize) -> SuiteReport {
    let mut s = Suite::new("strongly_graceful");
    for n in (2..=cap(max_n)).step_by(2) {
        for t in trees(n) {
            if !max_matching(&t).is_perfect(n) {
                continue;
            }
            match label_tree_pm_strong(&t) {
                Ok((f, m)) => {
                    let ok = verify_strongly_graceful(&t, &f, &m).is_ok_and(|r| r.ok);
                    s.check(ok, || format!("bad output on {t}"));
                }
                Err(Error::ContreeNotCaterpillar) => s.report.skipped += 1,
                Err(e) => s.check(false, || format!("{t}: {e}")),
            }
        }
    }
    s.done()
}

pub fn enumeration(max_n: usize) -> SuiteReport {
    let mut s = Suite::new("enumeration");
    for n in 1..=cap(max_n) {
        let got = trees(n).len();
        s.check(got == TREE_COUNTS[n - 1], || format!("n = {n}: {got} trees"));
    }
    s.done()
}

/// Every pair of graceful labelings of trees up to `max_order` vertices
/// (at most `per_tree` each), composed under all constant plans and
/// `random_plans` random ones.
pub fn compositions(max_order: usize, per_tree: usize, random_plans: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("compositions");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labeled: Vec<(Tree, Labeling)> = Vec::new();
    for n in 1..=max_order {
        for t in trees(n) {
            let opts = SearchOptions::new(SearchMode::All, Constraint::Graceful).with_limit(per_tree);
            for f in oracle::brute_force(&t, &opts).expect("small search").labelings {
                labeled.push((t.clone(), f));
            }
        }
    }
    for (st, f) in &labeled {
        for (tt, g) in &labeled {
            let nt = tt.order();
            let u = f.vertex_with(st.order() - 1).expect("graceful");
            let v = g.vertex_with(0).expect("graceful");
            let mut plans: Vec<(AttachmentPlan, AttachmentPlan)> = (0..nt)
                .map(|x| (AttachmentPlan::constant(st, x, None), AttachmentPlan::constant(st, x, Some(u))))
                .collect();
            for _ in 0..random_plans {
                plans.push((
                    AttachmentPlan::random(st, nt, None, &mut rng),
                    AttachmentPlan::random(st, nt, Some(u), &mut rng),
                ));
            }
            for (p, q) in plans {
                let d = delta(&CompositionInput::delta(st.clone(), f.clone(), tt.clone(), g.clone(), p));
                s.check(d.as_ref().is_ok_and(|(c, h)| verify_graceful(c, h).ok), || format!("delta {st} {f} / {tt} {g}"));
                let inp = CompositionInput::delta_plus_one(st.clone(), f.clone(), u, tt.clone(), g.clone(), v, q);
                let d1 = delta_plus_one(&inp);
                s.check(d1.as_ref().is_ok_and(|(c, h)| verify_graceful(c, h).ok), || {
                    format!("delta+1 {st} {f} / {tt} {g}")
                });
            }
        }
    }
    s.done()
}

/// Complements of `draws` oracle labelings of random trees.
pub fn complements(draws: u64, max_n: usize, seed: u64) -> SuiteReport {
    let mut s = Suite::new("complement");
    for i in 0..draws {
        let n = 1 + (i as usize % max_n.max(1));
        let t = oracle::generate(&GeneratorSpec::new(Family::RandomTree, n, seed.wrapping_add(i))).expect("valid spec");
        let Some(f) = oracle::find_graceful(&t, None).expect("small search") else {
            s.check(false, || format!("no graceful labeling of {t}"));
            continue;
        };
        let c = complement(&f).expect("labels in range");
        let ok = verify_graceful(&t, &c).ok && complement(&c).as_ref() == Ok(&f);
        s.check(ok, || format!("{t} {f}"));
    }
    s.done()
}

pub fn run_all(cfg: &SweepConfig) -> Vec<SuiteReport> {
    let odd = cfg.max_n;
    vec![
        apm_labeling(odd),
        matching_missing_endpoints(odd),
        rosa(odd + 1),
        strongly_graceful(odd + 1),
        enumeration(odd + 1),
        compositions(4, 20, 5, cfg.seed),
        complements(200, odd.min(10), cfg.seed),
    ]
}

/// One line per suite.
pub fn table(reports: &[SuiteReport]) -> Vec<String> {
    reports
        .iter()
        .map(|r| {
            let mut line = format!(
                "{:<5} {:<18} checked {:>7}  failed {:>5}  skipped {:>4}",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.checked,
                r.failures,
                r.skipped
            );
            if let Some(f) = &r.first_failure {
                line.push_str(&format!("  first: {f}"));
            }
            line
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        for r in [apm_labeling(5), rosa(6), strongly_graceful(6), enumeration(8), complements(30, 6, 1)] {
            assert!(r.passed, "{r:?}");
            assert!(r.checked > 0);
        }
        assert!(compositions(3, 4, 2, 0).passed);
    }

    #[test]
    fn matching_missing_fails_from_five() {
        assert!(matching_missing_endpoints(3).passed);
        let r = matching_missing_endpoints(5);
        assert!(!r.passed);
        assert!(r.first_failure.unwrap().contains("missing"));
    }
}
