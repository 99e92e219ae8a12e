use std::fmt;

/// A shortest-path distance: a non-negative integer or infinity.
///
/// Infinity is a dedicated sentinel that is absorbed by addition; it never
/// takes part in arithmetic as a number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Dist(u64);

impl Dist {
    pub const ZERO: Dist = Dist(0);
    pub const INFINITY: Dist = Dist(u64::MAX);

    /// Panics if `value` collides with the infinity sentinel.
    #[inline]
    pub fn finite(value: u64) -> Dist {
        assert!(value != u64::MAX, "distance {value} collides with the infinity sentinel");
        Dist(value)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0 == u64::MAX
    }

    #[inline]
    pub fn get(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }

    /// Adds two distances; infinity absorbs. Finite sums that would reach the
    /// sentinel saturate to infinity, which cannot happen for weights in
    /// `1..=M` on graphs that fit in memory.
    #[inline]
    pub fn plus(self, other: Dist) -> Dist {
        if self.is_infinite() || other.is_infinite() {
            return Dist::INFINITY;
        }
        Dist(self.0.saturating_add(other.0))
    }

    #[inline]
    pub fn plus_weight(self, w: u64) -> Dist {
        self.plus(Dist::finite(w))
    }
}

impl From<u64> for Dist {
    fn from(value: u64) -> Self {
        Dist::finite(value)
    }
}

impl fmt::Debug for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
