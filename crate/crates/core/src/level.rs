use std::fmt;

/// Hard ceiling on configurable hierarchies.
pub const LEVEL_CAP: u8 = 8;

/// Top universe index used unless configured otherwise: `U0 : U1`.
pub const DEFAULT_MAX_LEVEL: Level = Level(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Level(u8);

impl Level {
    pub const ZERO: Level = Level(0);
    pub const ONE: Level = Level(1);

    pub fn new(index: u8) -> Option<Level> {
        (index <= LEVEL_CAP).then_some(Level(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn max(self, other: Level) -> Level {
        Level(self.0.max(other.0))
    }

    /// `None` past the hard cap; callers compare against their own bound.
    pub fn succ(self) -> Option<Level> {
        Level::new(self.0 + 1)
    }

    /// Level of a Π-type whose components live at `self`.
    pub fn pi(self) -> Level {
        Level::ONE.max(self)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
