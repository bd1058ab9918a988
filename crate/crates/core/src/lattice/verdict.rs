use serde::{Deserialize, Serialize};

use super::exponent::{rat, Rational};

/// Decision of a region predicate with a per-condition trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub bounded: bool,
    /// Identifiers of violated conditions, e.g. `"cd3[i=1]"`.
    #[serde(rename = "failed")]
    pub failed_conditions: Vec<String>,
    /// Some satisfied non-strict inequality holds with slack below epsilon.
    pub boundary: bool,
}

impl Verdict {
    pub fn failed(&self, id: &str) -> bool {
        self.failed_conditions.iter().any(|c| c == id)
    }

    /// Condition families that failed, with any `[i=..]` suffix removed.
    pub fn failed_families(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .failed_conditions
            .iter()
            .map(|c| c.split('[').next().unwrap_or(c).to_string())
            .collect();
        out.dedup();
        out
    }
}

/// Default boundary epsilon `10⁻⁹` in reciprocal units.
pub fn default_epsilon() -> Rational {
    rat(1, 1_000_000_000)
}

/// Accumulates exact inequality checks into a [`Verdict`].
#[derive(Debug, Clone)]
pub struct ConditionTrace {
    epsilon: Rational,
    failed: Vec<String>,
    boundary: bool,
}

impl Default for ConditionTrace {
    fn default() -> Self {
        Self::new(default_epsilon())
    }
}

impl ConditionTrace {
    pub fn new(epsilon: Rational) -> Self {
        Self {
            epsilon,
            failed: Vec::new(),
            boundary: false,
        }
    }

    /// Records `lhs ≤ rhs`.
    pub fn le(&mut self, id: impl Into<String>, lhs: Rational, rhs: Rational) -> bool {
        if lhs <= rhs {
            if rhs - lhs < self.epsilon {
                self.boundary = true;
            }
            true
        } else {
            self.fail(id)
        }
    }

    /// Records `lhs < rhs`.
    pub fn lt(&mut self, id: impl Into<String>, lhs: Rational, rhs: Rational) -> bool {
        if lhs < rhs {
            true
        } else {
            self.fail(id)
        }
    }

    fn fail(&mut self, id: impl Into<String>) -> bool {
        let id = id.into();
        if !self.failed.contains(&id) {
            self.failed.push(id);
        }
        false
    }

    pub fn finish(self) -> Verdict {
        Verdict {
            bounded: self.failed.is_empty(),
            failed_conditions: self.failed,
            boundary: self.boundary,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_collects_failures_once() {
        let mut t = ConditionTrace::default();
        assert!(t.le("a", rat(1, 2), rat(1, 2)));
        assert!(!t.le("b", rat(1, 1), rat(1, 2)));
        assert!(!t.le("b", rat(1, 1), rat(1, 2)));
        assert!(!t.lt("c", rat(1, 2), rat(1, 2)));
        let v = t.finish();
        assert!(!v.bounded);
        assert!(v.boundary);
        assert_eq!(v.failed_conditions, vec!["b", "c"]);
    }

    #[test]
    fn slack_controls_boundary_flag() {
        let mut t = ConditionTrace::default();
        t.le("a", rat(0, 1), rat(1, 10));
        let v = t.finish();
        assert!(v.bounded && !v.boundary);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"bounded":true,"failed":[],"boundary":false}"#);
    }

    #[test]
    fn families_strip_indices() {
        let v = Verdict {
            bounded: false,
            failed_conditions: vec!["cd1[i=0]".into(), "cd1[i=1]".into(), "cd4".into()],
            boundary: false,
        };
        assert_eq!(v.failed_families(), vec!["cd1", "cd4"]);
        assert!(v.failed("cd4"));
    }
}
