use crate::error::{invalid, Error, Result};

/// Maximum size of a constant-weight-2 code of length `n + 1` correcting one
/// adjacent transposition, for `n = 1..=18` (index 0 is `n = 1`).
pub const KNOWN_VALUES: [i64; 18] = [1, 1, 2, 3, 4, 6, 7, 9, 11, 13, 15, 17, 20, 23, 26, 29, 32, 36];

pub fn known_value(n: i64) -> Option<i64> {
    usize::try_from(n).ok().and_then(|n| n.checked_sub(1)).and_then(|i| KNOWN_VALUES.get(i).copied())
}

/// `(n^2 + n + c) / 10` with `c = 20, 18, 14, 18, 20` for `n mod 5 = 0..4`.
///
/// Exact in 64 bits up to roughly `n = 3 * 10^9`; beyond that the squaring
/// overflows and a range error is returned.
pub fn a_closed(n: i64) -> Result<i64> {
    if n < 1 {
        return invalid(format!("a(n) is defined for n >= 1, got {n}"));
    }
    let c = match n % 5 {
        0 | 4 => 20,
        1 | 3 => 18,
        _ => 14,
    };
    let numerator = n
        .checked_mul(n)
        .and_then(|sq| sq.checked_add(n))
        .and_then(|v| v.checked_add(c))
        .ok_or_else(|| Error::Range(format!("a({n}) overflows 64-bit arithmetic")))?;
    debug_assert_eq!(numerator % 10, 0);
    Ok(numerator / 10)
}

const BASE: [i64; 5] = [2, 2, 3, 4, 5];

/// `a(n) = a(n - 5) + n - 2` from the five base values, iterated upward.
pub fn a_recursive(n: i64) -> Result<i64> {
    if n < 1 {
        return invalid(format!("a(n) is defined for n >= 1, got {n}"));
    }
    let start = (n - 1) % 5 + 1;
    let mut value = BASE[(start - 1) as usize];
    let mut k = start + 5;
    while k <= n {
        value = value
            .checked_add(k - 2)
            .ok_or_else(|| Error::Range(format!("a({n}) overflows 64-bit arithmetic")))?;
        k += 5;
    }
    Ok(value)
}

/// `a(1..=up_to)` by the recurrence; element `i` is `a(i + 1)`.
pub fn a_recursive_table(up_to: usize) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = Vec::with_capacity(up_to);
    for n in 1..=up_to {
        let v = if n <= 5 {
            BASE[n - 1]
        } else {
            out[n - 6]
                .checked_add(n as i64 - 2)
                .ok_or_else(|| Error::Range(format!("a({n}) overflows 64-bit arithmetic")))?
        };
        out.push(v);
    }
    Ok(out)
}
