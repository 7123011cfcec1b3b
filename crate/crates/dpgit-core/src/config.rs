//! Working-precision policy for power-series computations.

/// Environment variable overriding the starting truncation order.
pub const TRUNCATION_ENV: &str = "DPGIT_TRUNCATION";

pub const DEFAULT_START: u32 = 24;
pub const DEFAULT_MAX: u32 = 192;

/// Curve germs start at `start` and double on demand up to `max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub start: u32,
    pub max: u32,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            start: DEFAULT_START,
            max: DEFAULT_MAX,
        }
    }
}

impl TruncationPolicy {
    /// Explicit value first, then the environment, then the default.
    pub fn resolve(explicit: Option<u32>) -> TruncationPolicy {
        let start = explicit
            .or_else(|| std::env::var(TRUNCATION_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .unwrap_or(DEFAULT_START)
            .max(4);
        TruncationPolicy {
            start,
            max: DEFAULT_MAX.max(start),
        }
    }

    /// Orders tried in sequence.
    pub fn schedule(&self) -> Vec<u32> {
        let mut out = vec![self.start];
        let mut n = self.start;
        while n < self.max {
            n = (n * 2).min(self.max);
            out.push(n);
        }
        out
    }

    /// Surface germs: a smaller window since their series live in three variables.
    pub fn surface() -> TruncationPolicy {
        TruncationPolicy { start: 8, max: 64 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_doubles_to_cap() {
        let p = TruncationPolicy::default();
        assert_eq!(p.schedule(), vec![24, 48, 96, 192]);
        let q = TruncationPolicy { start: 100, max: 192 };
        assert_eq!(q.schedule(), vec![100, 192]);
    }
}
