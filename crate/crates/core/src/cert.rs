//! Named numeric checkpoints compared against fixed bounds.

use serde::Serialize;

/// The relation a computed value must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum Bound {
    AtMost { bound: f64 },
    LessThan { bound: f64 },
    AtLeast { bound: f64 },
    Within { lo: f64, hi: f64 },
}

impl Bound {
    pub fn holds(&self, x: f64) -> bool {
        match *self {
            Bound::AtMost { bound } => x <= bound,
            Bound::LessThan { bound } => x < bound,
            Bound::AtLeast { bound } => x >= bound,
            Bound::Within { lo, hi } => lo <= x && x <= hi,
        }
    }

    /// Distance from `x` to the boundary, positive when the relation holds.
    pub fn margin(&self, x: f64) -> f64 {
        match *self {
            Bound::AtMost { bound } | Bound::LessThan { bound } => bound - x,
            Bound::AtLeast { bound } => x - bound,
            Bound::Within { lo, hi } => (x - lo).min(hi - x),
        }
    }

    fn symbol(&self) -> String {
        match *self {
            Bound::AtMost { bound } => format!("<= {bound}"),
            Bound::LessThan { bound } => format!("< {bound}"),
            Bound::AtLeast { bound } => format!(">= {bound}"),
            Bound::Within { lo, hi } => format!("in [{lo}, {hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Waypoint {
    pub name: String,
    pub computed: f64,
    #[serde(flatten)]
    pub bound: Bound,
    pub margin: f64,
    pub pass: bool,
}

impl Waypoint {
    pub fn new(name: impl Into<String>, computed: f64, bound: Bound) -> Self {
        Waypoint {
            name: name.into(),
            computed,
            margin: bound.margin(computed),
            pass: computed.is_finite() && bound.holds(computed),
            bound,
        }
    }

    pub fn at_most(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        Self::new(name, computed, Bound::AtMost { bound })
    }

    pub fn less_than(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        Self::new(name, computed, Bound::LessThan { bound })
    }

    pub fn at_least(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        Self::new(name, computed, Bound::AtLeast { bound })
    }

    pub fn within(name: impl Into<String>, computed: f64, lo: f64, hi: f64) -> Self {
        Self::new(name, computed, Bound::Within { lo, hi })
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let x = self.computed;
        let value = if x != 0.0 && x.abs() < 1e-4 {
            format!("{x:>18.6e}")
        } else {
            format!("{x:>18.10}")
        };
        format!(
            "[{}] {:<40} {value} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.bound.symbol()
        )
    }
}

/// Conjunction of waypoint passes.
pub fn all_pass(waypoints: &[Waypoint]) -> bool {
    waypoints.iter().all(|w| w.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_and_margins() {
        let w = Waypoint::at_most("x", -0.8417, -0.84);
        assert!(w.pass);
        assert!((w.margin - 0.0017).abs() < 1e-12);
        assert!(!Waypoint::less_than("y", 153.0, 153.0).pass);
        assert!(Waypoint::within("z", 12.6236, 12.62, 12.63).pass);
        assert!(!Waypoint::at_least("nan", f64::NAN, 0.0).pass);
        assert!(Waypoint::at_least("b", 0.9919, 0.99)
            .line()
            .starts_with("[PASS]"));
    }
}
