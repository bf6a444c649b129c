//! Necessary conditions for a ribbon concordance `J ≤ K`.
//!
//! Every check here is an obstruction: a failed check rules out `J ≤ K`,
//! while a report with no failures only means the pair is *not
//! obstructed*. None of these checks can certify a concordance. The same
//! filters apply verbatim to strong homotopy-ribbon concordance.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{admissible, bigint_divides, fox_order, skp_set};
use crate::knot::{Knot, KnotTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        })
    }
}

/// One named check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            verdict,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    /// `(J, K)` for the candidate `J ≤ K`.
    pub candidate: (String, String),
    pub checks: Vec<Check>,
    /// `Pass` iff no check failed.
    pub overall: Verdict,
}

impl ObstructionReport {
    fn from_checks(j: &Knot, k: &Knot, checks: Vec<Check>) -> Self {
        let overall = if checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        Self {
            candidate: (j.name.clone(), k.name.clone()),
            checks,
            overall,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .map(|c| c.id.as_str())
            .collect()
    }

    /// Human wording for the overall verdict.
    pub fn summary(&self) -> &'static str {
        if self.passed() {
            "not obstructed"
        } else {
            "obstructed"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructParams {
    pub primes: Vec<u64>,
    pub max_n: u64,
}

impl Default for ObstructParams {
    fn default() -> Self {
        Self {
            primes: vec![2, 3, 5],
            max_n: 30,
        }
    }
}

/// Whether `Δ_J` divides `Δ_K` in `Z[t^±1]`.
pub fn alexander_divides(j: &Knot, k: &Knot) -> bool {
    j.tilde().divides(&k.tilde())
}

fn alex_div_check(j: &Knot, k: &Knot) -> Check {
    if alexander_divides(j, k) {
        Check::new("alex_div", Verdict::Pass, format!("Δ_{} divides Δ_{}", j.name, k.name))
    } else {
        Check::new(
            "alex_div",
            Verdict::Fail,
            format!("Δ_{} = {} does not divide Δ_{} = {}", j.name, j.alexander, k.name, k.alexander),
        )
    }
}

/// For fibered `J`, `g(J) = deg Δ_J` must not exceed `g(K)`.
pub fn fibered_genus_check(j: &Knot, k: &Knot) -> Check {
    const ID: &str = "fib_genus";
    if !j.fibered {
        return Check::new(ID, Verdict::Skipped, format!("{} is not fibered", j.name));
    }
    let Some(gk) = k.genus else {
        return Check::new(ID, Verdict::Skipped, format!("genus of {} unknown", k.name));
    };
    let gj = j.half_degree();
    if gj <= gk as usize {
        Check::new(ID, Verdict::Pass, format!("g({}) = {gj} <= g({}) = {gk}", j.name, k.name))
    } else {
        Check::new(ID, Verdict::Fail, format!("g({}) = {gj} > g({}) = {gk}", j.name, k.name))
    }
}

/// `S_{J,p} ⊆ S_{K,p}`.
pub fn skp_containment(j: &Knot, k: &Knot, p: u64) -> Check {
    let id = format!("skp_subset:{p}");
    let sets = skp_set(j, p).and_then(|sj| Ok((sj, skp_set(k, p)?)));
    match sets {
        Err(e) => Check::new(id, Verdict::Skipped, e.to_string()),
        Ok((sj, sk)) if sj.is_subset(&sk) => {
            Check::new(id, Verdict::Pass, format!("S_{{{},{p}}} = {sj} ⊆ {sk}", j.name))
        }
        Ok((sj, sk)) => Check::new(
            id,
            Verdict::Fail,
            format!("S_{{{},{p}}} = {sj} ⊄ S_{{{},{p}}} = {sk}", j.name, k.name),
        ),
    }
}

/// `|H_1(Σ_n(J))|` divides `|H_1(Σ_n(K))|` when `Δ_J | Δ_K` and both are finite.
pub fn h1_order_divisibility(j: &Knot, k: &Knot, n: u64) -> Check {
    let id = format!("h1_div:{n}");
    if !alexander_divides(j, k) {
        return Check::new(id, Verdict::Skipped, "Alexander polynomials do not divide");
    }
    let (oj, ok) = match (fox_order(j, n), fox_order(k, n)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Check::new(id, Verdict::Skipped, e.to_string()),
    };
    if oj.is_infinite() || ok.is_infinite() {
        return Check::new(id, Verdict::Skipped, "infinite first homology");
    }
    if bigint_divides(&oj.order, &ok.order) {
        Check::new(id, Verdict::Pass, format!("{} | {}", oj.order, ok.order))
    } else {
        Check::new(id, Verdict::Fail, format!("{} does not divide {}", oj.order, ok.order))
    }
}

/// Cover degrees `n <= max_n` with `Σ_n(K)` guaranteed to be a
/// `Z/p`-homology sphere for at least one `p` in `primes`.
fn admissible_degrees(k: &Knot, params: &ObstructParams) -> Vec<u64> {
    let sets: Vec<_> = params
        .primes
        .iter()
        .filter_map(|&p| skp_set(k, p).ok())
        .collect();
    (1..=params.max_n)
        .filter(|&n| sets.is_empty() || sets.iter().any(|s| admissible(n, s)))
        .collect()
}

/// Runs every check for the candidate `J ≤ K`.
pub fn obstruct(j: &Knot, k: &Knot, params: &ObstructParams) -> ObstructionReport {
    let mut checks = vec![alex_div_check(j, k), fibered_genus_check(j, k)];
    checks.extend(params.primes.iter().map(|&p| skp_containment(j, k, p)));
    for n in admissible_degrees(k, params) {
        checks.push(h1_order_divisibility(j, k, n));
    }
    ObstructionReport::from_checks(j, k, checks)
}

/// Names of table entries `J` whose candidacy `J ≤ K` is not obstructed,
/// in table order. `K` itself is always included.
pub fn filter_predecessors(k: &Knot, table: &KnotTable, params: &ObstructParams) -> Vec<String> {
    let mut names: Vec<String> = table
        .entries()
        .par_iter()
        .filter(|j| obstruct(j, k, params).passed())
        .map(|j| j.name.clone())
        .collect();
    if !names.iter().any(|n| n == &k.name) {
        names.push(k.name.clone());
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> KnotTable {
        KnotTable::bundled()
    }

    #[test]
    fn divisibility_examples() {
        let t = table();
        let k = |n| t.lookup(n).unwrap();
        assert!(alexander_divides(k("3_1"), k("granny")));
        assert!(!alexander_divides(k("4_1"), k("3_1")));
        for other in &t {
            assert!(alexander_divides(k("unknot"), other));
        }
    }

    #[test]
    fn fibered_genus_examples() {
        let t = table();
        let k = |n| t.lookup(n).unwrap();
        assert_eq!(fibered_genus_check(k("3_1"), k("granny")).verdict, Verdict::Pass);
        assert_eq!(fibered_genus_check(k("granny"), k("3_1")).verdict, Verdict::Fail);
        assert_eq!(fibered_genus_check(k("5_2"), k("3_1")).verdict, Verdict::Skipped);
        let mut no_genus = k("granny").clone();
        no_genus.genus = None;
        assert_eq!(fibered_genus_check(k("3_1"), &no_genus).verdict, Verdict::Skipped);
    }

    #[test]
    fn skp_containment_examples() {
        let t = table();
        let k = |n| t.lookup(n).unwrap();
        assert_eq!(skp_containment(k("3_1"), k("granny"), 2).verdict, Verdict::Pass);
        assert_eq!(skp_containment(k("3_1"), k("4_1"), 2).verdict, Verdict::Pass);
        for p in [2, 3, 5, 7] {
            assert_eq!(skp_containment(k("unknot"), k("6_3"), p).verdict, Verdict::Pass);
        }
        // S_{6_3,5} = {2,3,13} is not inside S_{3_1,5} = {2,3}
        assert_eq!(skp_containment(k("6_3"), k("3_1"), 5).verdict, Verdict::Fail);
        assert_eq!(skp_containment(k("3_1"), k("3_1"), 4).verdict, Verdict::Skipped);
    }

    #[test]
    fn h1_examples() {
        let t = table();
        let k = |n| t.lookup(n).unwrap();
        let c = h1_order_divisibility(k("3_1"), k("granny"), 2);
        assert_eq!((c.verdict, c.detail.as_str()), (Verdict::Pass, "3 | 9"));
        let c = h1_order_divisibility(k("3_1"), k("3_1#6_1"), 2);
        assert_eq!((c.verdict, c.detail.as_str()), (Verdict::Pass, "3 | 27"));
        assert_eq!(h1_order_divisibility(k("unknot"), k("5_1"), 7).verdict, Verdict::Pass);
        assert_eq!(h1_order_divisibility(k("3_1"), k("granny"), 6).verdict, Verdict::Skipped);
        assert_eq!(h1_order_divisibility(k("4_1"), k("3_1"), 2).verdict, Verdict::Skipped);
    }

    #[test]
    fn obstruct_examples() {
        let t = table();
        let k = |n| t.lookup(n).unwrap();
        let p = ObstructParams::default();
        assert!(obstruct(k("3_1"), k("3_1#6_1"), &p).passed());
        let r = obstruct(k("4_1"), k("3_1"), &p);
        assert!(!r.passed());
        assert_eq!(r.failed_ids(), vec!["alex_div"]);
        assert_eq!(r.summary(), "obstructed");
        for j in &t {
            let r = obstruct(j, j, &p);
            assert!(r.passed(), "{}", j.name);
            assert_eq!(r.summary(), "not obstructed");
        }
    }

    #[test]
    fn report_check_ids_are_stable() {
        let t = table();
        let r = obstruct(
            t.lookup("3_1").unwrap(),
            t.lookup("granny").unwrap(),
            &ObstructParams::default(),
        );
        let ids: Vec<_> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(&ids[..5], ["alex_div", "fib_genus", "skp_subset:2", "skp_subset:3", "skp_subset:5"]);
        assert!(ids[5..].iter().all(|id| id.starts_with("h1_div:")));
        assert!(ids.contains(&"h1_div:1"));
        // 6 is a multiple of 3 and 2, excluded for every p in {2,3,5}
        assert!(!ids.contains(&"h1_div:6"));
    }

    #[test]
    fn filter_examples() {
        let t = table();
        let p = ObstructParams::default();
        let f = |n| filter_predecessors(t.lookup(n).unwrap(), &t, &p);
        assert_eq!(f("granny"), vec!["unknot", "3_1", "granny"]);
        assert_eq!(f("unknot"), vec!["unknot"]);
        assert_eq!(f("3_1#6_1"), vec!["unknot", "3_1", "6_1", "3_1#6_1"]);
    }

    #[test]
    fn filter_includes_knot_outside_table() {
        let t = table();
        let mut k = t.lookup("4_1").unwrap().clone();
        k.name = "fig8-copy".into();
        let names = filter_predecessors(&k, &t, &ObstructParams::default());
        assert_eq!(names, vec!["unknot", "4_1", "fig8-copy"]);
    }

    #[test]
    fn report_json_shape() {
        let t = table();
        let r = obstruct(
            t.lookup("4_1").unwrap(),
            t.lookup("3_1").unwrap(),
            &ObstructParams::default(),
        );
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["candidate"], serde_json::json!(["4_1", "3_1"]));
        assert_eq!(v["overall"], "fail");
        assert_eq!(v["checks"][0]["id"], "alex_div");
        assert_eq!(v["checks"][0]["verdict"], "fail");
        let back: ObstructionReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
