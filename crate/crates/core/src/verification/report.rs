use serde::{Deserialize, Serialize};

/// One named verification result.
///
/// `pass` is decided when the report is built. Absolute and relative reports
/// pass iff |value - expected| <= tolerance (times |expected| when relative);
/// bound reports pass iff value lies strictly on the stated side of
/// `expected`. `details` names the mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub details: String,
}

impl CheckReport {
    pub fn absolute(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            expected,
            tolerance,
            pass: (value - expected).abs() <= tolerance,
            details: "absolute".into(),
        }
    }

    pub fn relative(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            expected,
            tolerance,
            pass: (value - expected).abs() <= tolerance * expected.abs(),
            details: "relative".into(),
        }
    }

    /// Passes iff lo <= value <= hi; stored as center ± half-width.
    pub fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        let mut r = Self::absolute(name, value, 0.5 * (lo + hi), 0.5 * (hi - lo));
        r.pass = (lo..=hi).contains(&value);
        r.details = format!("absolute; interval [{lo}, {hi}]");
        r
    }

    /// Passes iff center - half_width <= value <= center + half_width.
    pub fn centered(name: impl Into<String>, value: f64, center: f64, half_width: f64) -> Self {
        let (lo, hi) = (center - half_width, center + half_width);
        let mut r = Self::absolute(name, value, center, half_width);
        r.pass = (lo..=hi).contains(&value);
        r.details = format!("absolute; interval [{lo}, {hi}]");
        r
    }

    /// Passes iff value > bound.
    pub fn above(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            expected: bound,
            tolerance: 0.0,
            pass: value > bound,
            details: "strict lower bound".into(),
        }
    }

    /// Passes iff value < bound.
    pub fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            expected: bound,
            tolerance: 0.0,
            pass: value < bound,
            details: "strict upper bound".into(),
        }
    }

    /// A check that could not be computed.
    pub fn failed(name: impl Into<String>, reason: impl std::fmt::Display) -> Self {
        Self {
            name: name.into(),
            value: f64::NAN,
            expected: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
            details: format!("error: {reason}"),
        }
    }

    pub fn note(mut self, extra: impl std::fmt::Display) -> Self {
        self.details = format!("{}; {extra}", self.details);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes() {
        assert!(CheckReport::absolute("a", 1.0, 1.5, 0.5).pass);
        assert!(!CheckReport::absolute("a", 1.0, 1.5, 0.49).pass);
        assert!(CheckReport::relative("r", 99.0, 100.0, 0.01).pass);
        assert!(!CheckReport::relative("r", 98.9, 100.0, 0.01).pass);
        let w = CheckReport::within("w", 0.9, 0.85, 1.15);
        assert!(w.pass && (w.expected - 1.0).abs() < 1e-15);
        assert!(!CheckReport::within("w", 1.2, 0.85, 1.15).pass);
        assert!(CheckReport::above("b", 0.51, 0.5).pass);
        assert!(!CheckReport::above("b", 0.5, 0.5).pass);
        assert!(CheckReport::below("b", 0.4, 0.5).pass);
        assert!(!CheckReport::absolute("nan", f64::NAN, 0.0, 1.0).pass);
        let f = CheckReport::failed("f", "boom");
        assert!(!f.pass && f.details.contains("boom"));
    }
}
