use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A rational power series `numerator / denominator`, coefficients in
/// ascending powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: Vec<i64>,
    denominator: Vec<i64>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Result<Self> {
        match denominator.first() {
            Some(&d) if d != 0 => Ok(RationalSeries { numerator, denominator }),
            _ => invalid("denominator needs a nonzero constant term"),
        }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[i64] {
        &self.denominator
    }
}

impl FromStr for RationalSeries {
    type Err = Error;

    /// `"1,-1,1 / 1,-2,1"`: comma-separated ascending coefficients.
    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected `num / den`, got `{s}`")))?;
        let parse = |part: &str| -> Result<Vec<i64>> {
            part.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient `{c}`"))))
                .collect()
        };
        RationalSeries::new(parse(num)?, parse(den)?)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{} / {}", join(&self.numerator), join(&self.denominator))
    }
}

/// Product of two coefficient lists.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 - x + x^2 - x^10 + x^11) / ((1 - x)^2 (1 - x^5))`.
pub fn conjectured_ogf() -> RationalSeries {
    let mut numerator = vec![0; 12];
    numerator[..3].copy_from_slice(&[1, -1, 1]);
    numerator[10] = -1;
    numerator[11] = 1;
    let mut one_minus_x5 = vec![0; 6];
    one_minus_x5[0] = 1;
    one_minus_x5[5] = -1;
    let denominator = poly_mul(&poly_mul(&[1, -1], &[1, -1]), &one_minus_x5);
    RationalSeries::new(numerator, denominator).expect("unit constant term")
}

/// First `count` Maclaurin coefficients, computed exactly through the
/// recurrence `sum_i den[i] * c[k - i] = num[k]`. The denominator's constant
/// term must be a unit.
pub fn ogf_coefficients(series: &RationalSeries, count: usize) -> Result<Vec<i64>> {
    let lead = series.denominator[0];
    if lead.abs() != 1 {
        return invalid(format!("denominator constant term {lead} is not +-1"));
    }
    let overflow = || Error::Range("series coefficient overflows 64-bit arithmetic".into());
    let mut out: Vec<i64> = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = series.numerator.get(k).copied().unwrap_or(0);
        for (i, &d) in series.denominator.iter().enumerate().skip(1).take(k) {
            let term = d.checked_mul(out[k - i]).ok_or_else(overflow)?;
            acc = acc.checked_sub(term).ok_or_else(overflow)?;
        }
        out.push(acc * lead);
    }
    Ok(out)
}
