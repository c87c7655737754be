use crate::error::{invalid, Result};

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Packing number of the `p x q` grid by the known closed form. Arguments
/// may come in either order; the smaller one is the row count.
pub fn fisher_rho(p: u64, q: u64) -> Result<u64> {
    if p == 0 || q == 0 {
        return invalid(format!("grid dimensions {p}x{q} must be positive"));
    }
    let (p, q) = (p.min(q), p.max(q));
    Ok(match (p, q) {
        (1..=3, _) => ceil_div((p + 1) * q, 6),
        (4, _) if q % 7 == 1 => ceil_div(6 * q, 7) + 1,
        (4, _) => ceil_div(6 * q, 7),
        (7, 7) => 10,
        (5..=7, _) => ceil_div(p * q + 2, 5),
        (8, 10) => 17,
        _ => ceil_div(p * q, 5),
    })
}
