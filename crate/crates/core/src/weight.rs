//! Exact rational arithmetic for biases, couplings, and energies.
//!
//! Every finite `f64` is a rational with a power-of-two denominator, so
//! converting file values through [`weight_from_f64`] loses nothing. Keeping
//! weights rational lets the solver and the reduction bookkeeping make exact
//! equality claims instead of tolerance-based ones.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Bias, coupling, and energy value: an exact rational.
pub type Weight = Ratio<i64>;

/// Convert a finite `f64` to the rational it denotes, exactly.
///
/// Fails for non-finite input and for values whose exact numerator or
/// denominator does not fit in `i64` (magnitudes beyond ~9.2e18 or finer
/// than 2^-62).
pub fn weight_from_f64(v: f64) -> Result<Weight> {
    if !v.is_finite() {
        return Err(Error::ValueRange(format!("{v} is not finite")));
    }
    if v == 0.0 {
        return Ok(Weight::zero());
    }
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let biased_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mantissa, mut exp) = if biased_exp == 0 {
        (frac as i64, -1074i64)
    } else {
        ((frac | (1 << 52)) as i64, biased_exp - 1075)
    };
    while mantissa & 1 == 0 && exp < 0 {
        mantissa >>= 1;
        exp += 1;
    }
    if negative {
        mantissa = -mantissa;
    }
    if exp >= 0 {
        if exp > 62 {
            return Err(Error::ValueRange(format!("{v} is too large for exact form")));
        }
        let numer = mantissa
            .checked_shl(exp as u32)
            .filter(|n| n >> exp == mantissa)
            .ok_or_else(|| Error::ValueRange(format!("{v} is too large for exact form")))?;
        Ok(Weight::from_integer(numer))
    } else {
        let shift = -exp;
        if shift > 62 {
            return Err(Error::ValueRange(format!("{v} is too fine for exact form")));
        }
        Ok(Weight::new(mantissa, 1i64 << shift))
    }
}

/// Nearest `f64` to the rational; exact whenever the denominator is a
/// power of two (in particular for every weight parsed from a file).
pub fn weight_to_f64(w: &Weight) -> f64 {
    w.to_f64().unwrap_or(f64::NAN)
}

pub fn weight_from_int(v: i64) -> Weight {
    Weight::from_integer(v)
}

pub fn is_integer(w: &Weight) -> bool {
    w.is_integer()
}

/// Integer weights print without a decimal point (`-7`), everything else in
/// shortest round-trip decimal form.
pub fn display_weight(w: &Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}", weight_to_f64(w))
    }
}

/// Exact rational accumulator over `i128`, with overflow reported as an
/// error instead of a panic.
#[derive(Debug, Clone, Copy)]
pub struct ExactSum {
    numer: i128,
    denom: i128,
}

impl ExactSum {
    pub fn zero() -> Self {
        Self { numer: 0, denom: 1 }
    }

    pub fn add(&mut self, w: &Weight) -> Result<()> {
        self.add_scaled(w, 1)
    }

    /// Accumulate `w * factor`.
    pub fn add_scaled(&mut self, w: &Weight, factor: i64) -> Result<()> {
        let num = (*w.numer() as i128)
            .checked_mul(factor as i128)
            .ok_or_else(overflow)?;
        let den = *w.denom() as i128;
        let g = self.denom.gcd(&den);
        let lcm = self.denom.checked_mul(den / g).ok_or_else(overflow)?;
        let a = self.numer.checked_mul(lcm / self.denom).ok_or_else(overflow)?;
        let b = num.checked_mul(lcm / den).ok_or_else(overflow)?;
        self.numer = a.checked_add(b).ok_or_else(overflow)?;
        self.denom = lcm;
        let g = self.numer.gcd(&self.denom);
        if g > 1 {
            self.numer /= g;
            self.denom /= g;
        }
        Ok(())
    }

    pub fn into_weight(self) -> Result<Weight> {
        let numer = i64::try_from(self.numer).map_err(|_| overflow())?;
        let denom = i64::try_from(self.denom).map_err(|_| overflow())?;
        Ok(Weight::new(numer, denom))
    }
}

fn overflow() -> Error {
    Error::ValueRange("exact arithmetic overflow".into())
}

/// Least common multiple of the denominators of `weights`, or an error when
/// it leaves `i64` range.
pub fn common_denominator<'a>(weights: impl Iterator<Item = &'a Weight>) -> Result<i64> {
    let mut lcm: i128 = 1;
    for w in weights {
        let d = *w.denom() as i128;
        let g = lcm.gcd(&d);
        lcm = lcm.checked_mul(d / g).ok_or_else(overflow)?;
        if lcm > i64::MAX as i128 {
            return Err(overflow());
        }
    }
    Ok(lcm as i64)
}

/// `w` scaled by denominator `d` as an integer; `d` must be a multiple of
/// the denominator of `w`.
pub fn scale_to_int(w: &Weight, d: i64) -> Result<i64> {
    debug_assert_eq!(d % w.denom(), 0);
    w.numer().checked_mul(d / w.denom()).ok_or_else(overflow)
}

/// Sum of `|w| * d` over weights, used to bound solver energies.
pub fn scaled_abs_sum<'a>(weights: impl Iterator<Item = &'a Weight>, d: i64) -> Result<i64> {
    let mut total: i64 = 0;
    for w in weights {
        let s = scale_to_int(w, d)?.abs();
        total = total.checked_add(s).ok_or_else(overflow)?;
    }
    Ok(total)
}
