/// Search budget: a node limit plus an optional external stop signal.
///
/// The callback is polled every 1024 nodes, so a wall-clock deadline can be
/// layered on top by a `std` caller.
pub struct Budget<'a> {
    node_limit: u64,
    nodes: u64,
    stop: Option<&'a dyn Fn() -> bool>,
    exhausted: bool,
}

impl<'a> Budget<'a> {
    pub const DEFAULT_NODES: u64 = 1 << 30;

    pub fn new(node_limit: u64) -> Self {
        Budget { node_limit, nodes: 0, stop: None, exhausted: false }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn with_stop(mut self, stop: &'a dyn Fn() -> bool) -> Self {
        self.stop = Some(stop);
        self
    }

    /// Counts one search node. Returns `false` once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.exhausted = true;
        } else if self.nodes & 1023 == 0 {
            if let Some(stop) = self.stop {
                self.exhausted = stop();
            }
        }
        !self.exhausted
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}

impl Default for Budget<'_> {
    fn default() -> Self {
        Self::new(Self::DEFAULT_NODES)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit_trips() {
        let mut b = Budget::new(3);
        assert!(b.tick() && b.tick() && b.tick());
        assert!(!b.tick());
        assert!(b.exhausted());
        assert!(!b.tick());
    }

    #[test]
    fn stop_callback_is_polled() {
        let stop = || true;
        let mut b = Budget::unlimited().with_stop(&stop);
        let mut n = 0;
        while b.tick() {
            n += 1;
        }
        assert_eq!(n, 1023);
    }
}
