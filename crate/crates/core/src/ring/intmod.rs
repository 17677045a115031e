use std::fmt;

use num_integer::Integer as _;

use super::scalar::{RingDescriptor, Scalar};

/// Residue class modulo the compile-time modulus `N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMod<const N: u64> {
    residue: u64,
}

impl<const N: u64> IntMod<N> {
    const NONZERO_MODULUS: () = assert!(N > 0, "modulus must be positive");

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::NONZERO_MODULUS;
        let m = N as i128;
        IntMod { residue: (n as i128).rem_euclid(m) as u64 }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub const fn modulus() -> u64 {
        N
    }

    fn reduce(x: u128) -> Self {
        IntMod { residue: (x % N as u128) as u64 }
    }
}

impl<const N: u64> fmt::Display for IntMod<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl<const N: u64> fmt::Debug for IntMod<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, N)
    }
}

impl<const N: u64> Scalar for IntMod<N> {
    fn zero() -> Self {
        Self::new(0)
    }
    fn one() -> Self {
        Self::new(1)
    }
    fn is_zero(&self) -> bool {
        self.residue == 0
    }
    fn plus(&self, other: &Self) -> Self {
        Self::reduce(self.residue as u128 + other.residue as u128)
    }
    fn minus(&self, other: &Self) -> Self {
        Self::reduce(self.residue as u128 + N as u128 - other.residue as u128)
    }
    fn times(&self, other: &Self) -> Self {
        Self::reduce(self.residue as u128 * other.residue as u128)
    }
    fn negate(&self) -> Self {
        Self::reduce(N as u128 - self.residue as u128)
    }
    fn from_int(n: i64) -> Self {
        Self::new(n)
    }
    fn try_inverse(&self) -> Option<Self> {
        let g = (self.residue as i128).extended_gcd(&(N as i128));
        (g.gcd == 1).then(|| Self::reduce(g.x.rem_euclid(N as i128) as u128))
    }
    fn descriptor() -> RingDescriptor {
        RingDescriptor::IntMod(N)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_wrap() {
        assert_eq!(IntMod::<6>::new(-1).residue(), 5);
        assert_eq!(IntMod::<6>::new(4).plus(&IntMod::new(5)).residue(), 3);
        assert_eq!(IntMod::<6>::new(2).minus(&IntMod::new(5)).residue(), 3);
        assert_eq!(IntMod::<6>::new(3).times(&IntMod::new(4)), IntMod::zero());
    }

    #[test]
    fn inverses() {
        assert_eq!(IntMod::<7>::new(3).try_inverse(), Some(IntMod::new(5)));
        assert_eq!(IntMod::<6>::new(2).try_inverse(), None);
        assert_eq!(IntMod::<6>::new(5).try_inverse(), Some(IntMod::new(5)));
    }
}
