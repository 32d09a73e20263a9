//! Exact dyadic rationals `num / 2^log2_den`.
//!
//! Overlaps and graph-state amplitudes in this crate are always of this form,
//! so they are carried exactly and only converted to floats for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A dyadic rational in lowest terms: `num` is odd unless `log2_den == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dyadic {
    pub num: i64,
    pub log2_den: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic {
        num: 0,
        log2_den: 0,
    };
    pub const ONE: Dyadic = Dyadic {
        num: 1,
        log2_den: 0,
    };

    pub fn new(num: i64, log2_den: u32) -> Self {
        let mut d = Dyadic { num, log2_den };
        d.normalize();
        d
    }

    /// `2^exp` for any integer exponent.
    pub fn pow2(exp: i32) -> Self {
        if exp >= 0 {
            Dyadic {
                num: 1i64 << exp,
                log2_den: 0,
            }
        } else {
            Dyadic {
                num: 1,
                log2_den: (-exp) as u32,
            }
        }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.log2_den = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.log2_den);
        self.num >>= tz;
        self.log2_den -= tz;
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn abs(self) -> Self {
        Dyadic {
            num: self.num.abs(),
            ..self
        }
    }

    pub fn signum(self) -> i64 {
        self.num.signum()
    }

    /// Multiply by `2^-k`.
    pub fn scale_down(self, k: u32) -> Self {
        Dyadic::new(self.num, self.log2_den + k)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 * (-(self.log2_den as f64)).exp2()
    }

    /// Exact `log2` when the value is a positive power of two.
    pub fn exact_log2(self) -> Option<i32> {
        if self.num > 0 && self.num.count_ones() == 1 {
            Some(self.num.trailing_zeros() as i32 - self.log2_den as i32)
        } else {
            None
        }
    }

    /// True when `self` is an integer multiple of `2^exp`.
    pub fn is_multiple_of_pow2(self, exp: i32) -> bool {
        if self.num == 0 {
            return true;
        }
        // self / 2^exp = num * 2^(-log2_den - exp)
        let shift = -(self.log2_den as i64) - exp as i64;
        shift >= 0
    }

    fn aligned(self, other: Self) -> (i64, i64, u32) {
        let k = self.log2_den.max(other.log2_den);
        (
            self.num << (k - self.log2_den),
            other.num << (k - other.log2_den),
            k,
        )
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, k) = self.aligned(rhs);
        Dyadic::new(a + b, k)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            ..self
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.log2_den)
        }
    }
}
