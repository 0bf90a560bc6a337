use std::fmt;
use std::str::FromStr;

use super::{PresentationError, Word};

/// Surgery slope `μ^a · λ'^b`: the meridian enters with power `a`
/// (`meridian_power`) and the Lagrangian push-off with power `b`.
///
/// A `1/k` Luttinger surgery is `a = 1, b = k`; the `+m/q` torus surgeries
/// have `a = m, b = q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurgeryCoefficient {
    pub meridian_power: i64,
    pub push_off_power: i64,
}

impl SurgeryCoefficient {
    pub fn luttinger(k: i64) -> Self {
        SurgeryCoefficient {
            meridian_power: 1,
            push_off_power: k,
        }
    }

    /// `sign · m/q` with `m, q ≥ 1`.
    pub fn signed(sign: i64, m: i64, q: i64) -> Self {
        SurgeryCoefficient {
            meridian_power: m,
            push_off_power: sign.signum() * q,
        }
    }

    /// Luttinger surgeries keep the symplectic structure.
    pub fn is_luttinger(&self) -> bool {
        self.meridian_power == 1
    }
}

impl fmt::Display for SurgeryCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.push_off_power < 0 { '-' } else { '+' };
        let q = self.push_off_power.unsigned_abs();
        match (self.meridian_power, q) {
            (m, 1) => write!(f, "{sign}{m}"),
            (m, q) => write!(f, "{sign}{m}/{q}"),
        }
    }
}

impl FromStr for SurgeryCoefficient {
    type Err = PresentationError;

    /// Accepts `-1`, `+1`, `+1/p`, `+m/q`, `+m`, and `0` for a meridian filling.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PresentationError::Coefficient(s.to_string());
        let t = s.trim();
        if t == "0" {
            return Ok(SurgeryCoefficient::luttinger(0));
        }
        let (sign, body) = match t.as_bytes().first() {
            Some(b'+') => (1, &t[1..]),
            Some(b'-') => (-1, &t[1..]),
            _ => (1, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, d),
            None => (body, "1"),
        };
        let m: i64 = num.parse().map_err(|_| bad())?;
        let q: i64 = den.parse().map_err(|_| bad())?;
        if m < 1 || q < 1 {
            return Err(bad());
        }
        Ok(SurgeryCoefficient::signed(sign, m, q))
    }
}

/// Meridian `μ` of the surgery torus, push-off `λ'` of the surgery curve,
/// and the slope. The added relator is `μ^a · λ'^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryDatum {
    pub label: String,
    pub meridian: Word,
    pub push_off: Word,
    pub coefficient: SurgeryCoefficient,
}

impl SurgeryDatum {
    pub fn new(label: &str, meridian: Word, push_off: Word, coefficient: SurgeryCoefficient) -> Self {
        SurgeryDatum {
            label: label.to_string(),
            meridian,
            push_off,
            coefficient,
        }
    }

    pub fn relator(&self) -> Word {
        self.meridian
            .pow(self.coefficient.meridian_power)
            .concat(&self.push_off.pow(self.coefficient.push_off_power))
    }
}
