//! Wall-clock limits layered on the core's node budgets.

use std::time::{Duration, Instant};

pub const BUDGET_ENV: &str = "CAPACITY_BUDGET_MS";

#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    end: Option<Instant>,
}

impl Deadline {
    pub fn none() -> Self {
        Deadline { end: None }
    }

    pub fn after(ms: u64) -> Self {
        Deadline { end: Some(Instant::now() + Duration::from_millis(ms)) }
    }

    /// `explicit` wins over `CAPACITY_BUDGET_MS`; neither means no deadline.
    pub fn from_env_or(explicit: Option<u64>) -> anyhow::Result<Self> {
        if let Some(ms) = explicit {
            return Ok(Deadline::after(ms));
        }
        match std::env::var(BUDGET_ENV) {
            Ok(s) => {
                let ms: u64 = s.trim().parse().map_err(|_| anyhow::anyhow!("{BUDGET_ENV} must be milliseconds, got {s:?}"))?;
                Ok(Deadline::after(ms))
            }
            Err(_) => Ok(Deadline::none()),
        }
    }

    pub fn expired(&self) -> bool {
        self.end.is_some_and(|t| Instant::now() >= t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hfrac_core::Budget;

    #[test]
    fn zero_deadline_stops_a_budget() {
        let d = Deadline::after(0);
        let stop = || d.expired();
        let mut b = Budget::default().with_stop(&stop);
        let mut ticks = 0;
        while b.tick() {
            ticks += 1;
        }
        assert!(ticks <= 1024);
        assert!(b.exhausted());
        assert!(!Deadline::none().expired());
    }
}
