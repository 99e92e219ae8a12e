/// Work counters reported alongside a computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkCounters {
    /// Arcs examined by graph searches.
    pub relaxations: u64,
    /// Dense matrix products of any kind.
    pub products: u64,
    /// Iterations of the forward-pass product loop.
    pub forward_iterations: u64,
    /// Sampling rounds of the randomized forward pass.
    pub rounds: u64,
}

impl WorkCounters {
    pub fn merge(&mut self, other: WorkCounters) {
        self.relaxations += other.relaxations;
        self.products += other.products;
        self.forward_iterations += other.forward_iterations;
        self.rounds += other.rounds;
    }
}
