//! Truncated power series in `q` with arbitrary-precision integer
//! coefficients. A series with truncation `D` stores `c_0..=c_D` and means
//! `sum c_d q^d + O(q^{D+1})`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
    truncation: usize,
}

impl QSeries {
    pub fn zero(truncation: usize) -> Self {
        QSeries { coeffs: vec![BigInt::zero(); truncation + 1], truncation }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(0, 1, truncation)
    }

    /// `c q^d`, or zero when `d` exceeds the truncation.
    pub fn monomial(d: usize, c: i64, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if d <= truncation {
            s.coeffs[d] = BigInt::from(c);
        }
        s
    }

    /// Coefficients from `c_0` upward; missing ones are zero and those past
    /// the truncation are dropped.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        for (d, c) in coeffs.into_iter().enumerate().take(truncation + 1) {
            s.coeffs[d] = c.into();
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn add_to_coeff(&mut self, d: usize, c: impl Into<BigInt>) {
        if d <= self.truncation {
            self.coeffs[d] += c.into();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowers the truncation; a no-op when `d` is not smaller.
    pub fn truncate(&self, d: usize) -> Self {
        let d = d.min(self.truncation);
        QSeries { coeffs: self.coeffs[..=d].to_vec(), truncation: d }
    }

    /// Coefficients as `i64`, `None` if any does not fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    fn zip_with(&self, other: &QSeries, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> QSeries {
        let truncation = self.truncation.min(other.truncation);
        let coeffs = (0..=truncation).map(|d| f(&self.coeffs[d], &other.coeffs[d])).collect();
        QSeries { coeffs, truncation }
    }
}

/// Cauchy product truncated at the smaller truncation.
pub fn mul(a: &QSeries, b: &QSeries) -> QSeries {
    let truncation = a.truncation.min(b.truncation);
    let mut out = QSeries::zero(truncation);
    for (i, x) in a.coeffs.iter().enumerate().take(truncation + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate().take(truncation + 1 - i) {
            if !y.is_zero() {
                out.coeffs[i + j] += x * y;
            }
        }
    }
    out
}

/// `prod_{i >= 1} (1 - q^{k i})` up to `q^truncation`.
pub fn euler_factor(k: usize, truncation: usize) -> QSeries {
    assert!(k >= 1, "k must be positive");
    euler_factor_finite(k, truncation / k, truncation)
}

/// `prod_{i = 1}^{factors} (1 - q^{k i})` up to `q^truncation`.
pub fn euler_factor_finite(k: usize, factors: usize, truncation: usize) -> QSeries {
    assert!(k >= 1, "k must be positive");
    let mut out = QSeries::one(truncation);
    for i in 1..=factors {
        let step = k * i;
        if step > truncation {
            break;
        }
        // multiply in place by (1 - q^step), high degrees first
        for d in (step..=truncation).rev() {
            let shifted = out.coeffs[d - step].clone();
            out.coeffs[d] -= shifted;
        }
    }
    out
}

/// `sum_{delta} q^{k |delta|}`: the coefficient of `q^{k m}` is `p(m)`.
pub fn partition_series(k: usize, truncation: usize) -> QSeries {
    assert!(k >= 1, "k must be positive");
    let m_max = truncation / k;
    // coin-change count of partitions of m
    let mut counts = vec![BigInt::zero(); m_max + 1];
    counts[0] = BigInt::one();
    for part in 1..=m_max {
        for m in part..=m_max {
            let prev = counts[m - part].clone();
            counts[m] += prev;
        }
    }
    let mut out = QSeries::zero(truncation);
    for (m, c) in counts.into_iter().enumerate() {
        out.coeffs[k * m] = c;
    }
    out
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), truncation: self.truncation }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{d}")?,
                (_, false) => write!(f, "{mag}q^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

/// Coefficients that fit in 64 bits are written as JSON numbers, larger
/// ones as decimal strings.
fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self.coeffs.iter().map(coeff_to_json).collect();
        let mut st = serializer.serialize_struct("QSeries", 2)?;
        st.serialize_field("truncation", &self.truncation)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            truncation: usize,
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.truncation + 1 {
            return Err(de::Error::custom("coeffs must have truncation + 1 entries"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| de::Error::custom("coefficient is not an integer")),
                serde_json::Value::String(s) => s.parse::<BigInt>().map_err(de::Error::custom),
                _ => Err(de::Error::custom("coefficient must be a number or string")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries { coeffs, truncation: raw.truncation })
    }
}
