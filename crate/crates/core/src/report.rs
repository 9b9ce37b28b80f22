use serde::{Deserialize, Serialize};

/// How many violations a report keeps in full; the rest are only counted.
pub const MAX_STORED_VIOLATIONS: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub s: Option<u32>,
    pub lhs: i64,
    pub rhs: i64,
    pub context: String,
}

/// Outcome of one verification suite.
///
/// Merging is associative and commutative: counters add, wall time takes
/// the maximum, stored violations are the smallest
/// [`MAX_STORED_VIOLATIONS`] in sort order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub graphs_tested: u64,
    /// Individual inequalities or identities evaluated.
    pub checks: u64,
    /// Inputs left unchecked because a computation exceeded its budget.
    pub skipped: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    /// Non-fatal observations, e.g. a family that is not closed.
    pub notes: Vec<String>,
    pub wall_time_ms: u64,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            graphs_tested: 0,
            checks: 0,
            skipped: 0,
            violation_count: 0,
            violations: Vec::new(),
            notes: Vec::new(),
            wall_time_ms: 0,
            pass: true,
        }
    }

    pub fn check(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.checks += 1;
        if !ok {
            self.record(violation());
        }
    }

    pub fn record(&mut self, v: Violation) {
        self.violation_count += 1;
        self.pass = false;
        if self.violations.len() < MAX_STORED_VIOLATIONS || Some(&v) < self.violations.last() {
            let pos = self.violations.binary_search(&v).unwrap_or_else(|p| p);
            self.violations.insert(pos, v);
            self.violations.truncate(MAX_STORED_VIOLATIONS);
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if let Err(pos) = self.notes.binary_search(&text) {
            self.notes.insert(pos, text);
            self.notes.truncate(MAX_STORED_VIOLATIONS);
        }
    }

    pub fn merge(mut self, other: SuiteReport) -> SuiteReport {
        debug_assert_eq!(self.suite, other.suite);
        self.graphs_tested += other.graphs_tested;
        self.checks += other.checks;
        self.skipped += other.skipped;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort();
        self.violations.truncate(MAX_STORED_VIOLATIONS);
        self.notes.extend(other.notes);
        self.notes.sort();
        self.notes.dedup();
        self.notes.truncate(MAX_STORED_VIOLATIONS);
        self.wall_time_ms = self.wall_time_ms.max(other.wall_time_ms);
        self.pass = self.violation_count == 0;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn report(items: &[(u8, u32)]) -> SuiteReport {
        let mut r = SuiteReport::new("t");
        r.graphs_tested = items.len() as u64;
        for &(g, s) in items {
            r.check(s % 3 != 0, || Violation {
                graph6: format!("{}", (63 + g % 60) as char),
                s: Some(s),
                lhs: s as i64,
                rhs: 0,
                context: String::new(),
            });
        }
        r.wall_time_ms = items.len() as u64;
        r
    }

    proptest! {
        #[test]
        fn merge_is_associative_and_commutative(
            a in prop::collection::vec((any::<u8>(), 0u32..200), 0..80),
            b in prop::collection::vec((any::<u8>(), 0u32..200), 0..80),
            c in prop::collection::vec((any::<u8>(), 0u32..200), 0..80),
        ) {
            let (ra, rb, rc) = (report(&a), report(&b), report(&c));
            let left = ra.clone().merge(rb.clone()).merge(rc.clone());
            let right = ra.clone().merge(rb.clone().merge(rc.clone()));
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(ra.clone().merge(rb.clone()), rb.merge(ra));
            prop_assert_eq!(left.pass, left.violation_count == 0);
        }
    }

    #[test]
    fn storage_is_bounded() {
        let mut r = SuiteReport::new("t");
        for k in 0..200 {
            r.check(false, || Violation {
                graph6: "A_".into(),
                s: Some(k),
                lhs: 0,
                rhs: 0,
                context: String::new(),
            });
        }
        assert_eq!(r.violation_count, 200);
        assert_eq!(r.violations.len(), MAX_STORED_VIOLATIONS);
        assert!(!r.pass);
    }
}
