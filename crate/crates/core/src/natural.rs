use std::cmp::Ordering;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision natural with an allocation-free small case.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Natural {
    Small(u64),
    Big(Rc<BigUint>),
}

impl Natural {
    pub const ZERO: Natural = Natural::Small(0);

    fn norm(b: BigUint) -> Natural {
        match b.to_u64() {
            Some(n) => Natural::Small(n),
            None => Natural::Big(Rc::new(b)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Natural::Small(0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Natural::Small(n) => Some(*n),
            Natural::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Natural::Small(n) => BigUint::from(*n),
            Natural::Big(b) => (**b).clone(),
        }
    }

    pub fn succ(&self) -> Natural {
        self.add_u64(1)
    }

    pub fn add_u64(&self, k: u64) -> Natural {
        match self {
            Natural::Small(n) => match n.checked_add(k) {
                Some(m) => Natural::Small(m),
                None => Natural::Big(Rc::new(BigUint::from(*n) + k)),
            },
            Natural::Big(b) => Natural::Big(Rc::new(&**b + k)),
        }
    }

    pub fn add(&self, other: &Natural) -> Natural {
        match (self, other) {
            (Natural::Small(a), Natural::Small(b)) => match a.checked_add(*b) {
                Some(m) => Natural::Small(m),
                None => Natural::Big(Rc::new(BigUint::from(*a) + *b)),
            },
            _ => Natural::norm(self.to_biguint() + other.to_biguint()),
        }
    }

    /// `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Natural) -> Option<Natural> {
        match (self, other) {
            (Natural::Small(a), Natural::Small(b)) => a.checked_sub(*b).map(Natural::Small),
            _ => {
                let (a, b) = (self.to_biguint(), other.to_biguint());
                (a >= b).then(|| Natural::norm(a - b))
            }
        }
    }

    pub fn pred(&self) -> Option<Natural> {
        self.checked_sub(&Natural::Small(1))
    }

    pub fn bits(&self) -> u64 {
        match self {
            Natural::Small(n) => 64 - u64::from(n.leading_zeros()),
            Natural::Big(b) => b.bits(),
        }
    }
}

impl Default for Natural {
    fn default() -> Self {
        Natural::ZERO
    }
}

impl From<u64> for Natural {
    fn from(n: u64) -> Self {
        Natural::Small(n)
    }
}

impl From<BigUint> for Natural {
    fn from(b: BigUint) -> Self {
        Natural::norm(b)
    }
}

impl From<&Natural> for BigUint {
    fn from(n: &Natural) -> Self {
        n.to_biguint()
    }
}

impl Ord for Natural {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Natural::Small(a), Natural::Small(b)) => a.cmp(b),
            (Natural::Small(_), Natural::Big(_)) => Ordering::Less,
            (Natural::Big(_), Natural::Small(_)) => Ordering::Greater,
            (Natural::Big(a), Natural::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Natural {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Natural::Small(n) => write!(f, "{n}"),
            Natural::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for Natural {
    fn zero() -> Self {
        Natural::ZERO
    }
    fn is_zero(&self) -> bool {
        Natural::is_zero(self)
    }
}

impl std::ops::Add for Natural {
    type Output = Natural;
    fn add(self, rhs: Natural) -> Natural {
        Natural::add(&self, &rhs)
    }
}

impl One for Natural {
    fn one() -> Self {
        Natural::Small(1)
    }
}

impl std::ops::Mul for Natural {
    type Output = Natural;
    fn mul(self, rhs: Natural) -> Natural {
        match (&self, &rhs) {
            (Natural::Small(a), Natural::Small(b)) => match a.checked_mul(*b) {
                Some(m) => Natural::Small(m),
                None => Natural::norm(BigUint::from(*a) * *b),
            },
            _ => Natural::norm(self.to_biguint() * rhs.to_biguint()),
        }
    }
}

impl std::str::FromStr for Natural {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<u64>() {
            Ok(v) => Ok(Natural::from(v)),
            Err(_) => s.parse::<BigUint>().map(Natural::from),
        }
    }
}
