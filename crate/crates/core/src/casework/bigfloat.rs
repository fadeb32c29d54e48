//! Fixed-point high-precision arithmetic for the surd-valued branch checks.
//!
//! Values are stored as big integers scaled by 2^256 (roughly 77 decimal
//! digits), enough to compare branch constants at 10⁻³⁰ with a wide margin.
//! Only the operations the checks need are provided: field arithmetic,
//! square roots of nonnegative values, and complex products.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Binary scale: values are mant / 2^SCALE_BITS.
const SCALE_BITS: u32 = 256;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Hp {
    mant: BigInt,
}

impl Hp {
    pub fn from_i64(v: i64) -> Self {
        Hp {
            mant: BigInt::from(v) << SCALE_BITS,
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Hp {
            mant: (BigInt::from(num) << SCALE_BITS) / BigInt::from(den),
        }
    }

    /// Exact conversion of a finite f64 through its bit decomposition.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "from_f64 requires a finite value");
        if v == 0.0 {
            return Hp::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        // value = mantissa × 2^(exponent - 1075), with the implicit leading
        // bit for normal numbers.
        let (mantissa, exp) = if exponent == 0 {
            (BigInt::from(fraction), -1074i64)
        } else {
            (BigInt::from(fraction | (1u64 << 52)), exponent - 1075)
        };
        let shift = exp + SCALE_BITS as i64;
        let mant = if shift >= 0 {
            mantissa << shift
        } else {
            mantissa >> (-shift)
        };
        Hp { mant: mant * sign }
    }

    pub fn zero() -> Self {
        Hp {
            mant: BigInt::zero(),
        }
    }

    pub fn add(&self, other: &Hp) -> Hp {
        Hp {
            mant: &self.mant + &other.mant,
        }
    }

    pub fn sub(&self, other: &Hp) -> Hp {
        Hp {
            mant: &self.mant - &other.mant,
        }
    }

    pub fn neg(&self) -> Hp {
        Hp { mant: -&self.mant }
    }

    pub fn mul(&self, other: &Hp) -> Hp {
        Hp {
            mant: (&self.mant * &other.mant) >> SCALE_BITS,
        }
    }

    pub fn div(&self, other: &Hp) -> Hp {
        Hp {
            mant: (&self.mant << SCALE_BITS) / &other.mant,
        }
    }

    /// Integer-Newton square root of a nonnegative value.
    pub fn sqrt(&self) -> Hp {
        assert!(!self.mant.is_negative(), "sqrt of negative value");
        Hp {
            mant: (&self.mant << SCALE_BITS).sqrt(),
        }
    }

    pub fn sqrt_of_i64(v: i64) -> Hp {
        Hp::from_i64(v).sqrt()
    }

    pub fn abs(&self) -> Hp {
        Hp {
            mant: self.mant.abs(),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        // Split into high and low parts to stay in range; work on the
        // absolute value so the shift/mask split is exact.
        let neg = self.mant.is_negative();
        let mag = self.mant.abs();
        let hi: BigInt = &mag >> SCALE_BITS;
        let lo: BigInt = &mag & ((BigInt::from(1) << SCALE_BITS) - 1);
        let frac = lo.to_f64().unwrap_or(0.0) / 2.0_f64.powi(SCALE_BITS as i32);
        let v = hi.to_f64().unwrap_or(f64::NAN) + frac;
        if neg {
            -v
        } else {
            v
        }
    }

    /// 2^(−k) as an Hp, for tolerance thresholds like 10⁻³⁰ < 2⁻⁹⁹.
    pub fn pow2_neg(k: u32) -> Hp {
        Hp {
            mant: BigInt::from(1) << (SCALE_BITS - k),
        }
    }

    /// 10^(−k) built by repeated division.
    pub fn pow10_neg(k: u32) -> Hp {
        let mut v = Hp::from_i64(1);
        let ten = Hp::from_i64(10);
        for _ in 0..k {
            v = v.div(&ten);
        }
        v
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct HpComplex {
    pub re: Hp,
    pub im: Hp,
}

impl HpComplex {
    pub fn new(re: Hp, im: Hp) -> Self {
        HpComplex { re, im }
    }

    pub fn real(re: Hp) -> Self {
        HpComplex { re, im: Hp::zero() }
    }

    pub fn add(&self, other: &HpComplex) -> HpComplex {
        HpComplex::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub(&self, other: &HpComplex) -> HpComplex {
        HpComplex::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }

    pub fn mul(&self, other: &HpComplex) -> HpComplex {
        HpComplex::new(
            self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        )
    }

    pub fn neg(&self) -> HpComplex {
        HpComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn norm_sqr(&self) -> Hp {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}
