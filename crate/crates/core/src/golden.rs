//! Exact arithmetic in the ring Z[φ], φ = (1 + √5)/2.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

/// The number `a + b·φ` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Golden {
    pub a: i64,
    pub b: i64,
}

impl Golden {
    pub const ZERO: Golden = Golden { a: 0, b: 0 };
    pub const ONE: Golden = Golden { a: 1, b: 0 };
    pub const PHI: Golden = Golden { a: 0, b: 1 };
    /// φ⁻¹ = φ − 1.
    pub const PHI_INV: Golden = Golden { a: -1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Golden { a, b }
    }

    pub const fn int(a: i64) -> Self {
        Golden { a, b: 0 }
    }

    /// Sign of `a + bφ`, computed exactly: 2(a + bφ) = (2a + b) + b√5.
    pub fn signum(self) -> i64 {
        let p = 2 * self.a + self.b;
        let q = self.b;
        let sp = p.signum();
        let sq = q.signum();
        if sp == 0 {
            return sq;
        }
        if sq == 0 || sp == sq {
            return sp;
        }
        // opposite signs: compare p² with 5q²
        match (p * p).cmp(&(5 * q * q)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(self) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        self.a as f64 + self.b as f64 * phi
    }
}

impl Add for Golden {
    type Output = Golden;
    fn add(self, o: Golden) -> Golden {
        Golden::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Golden {
    type Output = Golden;
    fn sub(self, o: Golden) -> Golden {
        Golden::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden::new(-self.a, -self.b)
    }
}

impl Mul for Golden {
    type Output = Golden;
    // φ² = φ + 1
    fn mul(self, o: Golden) -> Golden {
        let bd = self.b * o.b;
        Golden::new(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)
    }
}

impl PartialOrd for Golden {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Golden {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_squared_is_phi_plus_one() {
        assert_eq!(Golden::PHI * Golden::PHI, Golden::PHI + Golden::ONE);
        assert_eq!(Golden::PHI * Golden::PHI_INV, Golden::ONE);
    }

    #[test]
    fn ordering_matches_floats() {
        let samples = [
            Golden::new(3, -2),
            Golden::new(-5, 3),
            Golden::new(8, -5),
            Golden::new(-13, 8),
            Golden::new(1, 0),
            Golden::new(0, 0),
            Golden::new(-1, 1),
            Golden::new(2, -1),
        ];
        for x in samples {
            for y in samples {
                let exact = x.cmp(&y);
                let approx = x.to_f64().partial_cmp(&y.to_f64()).unwrap();
                assert_eq!(exact, approx, "{x:?} vs {y:?}");
            }
        }
    }
}
