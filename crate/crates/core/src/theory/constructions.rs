use std::collections::BTreeSet;

use super::coloring::{chromatic_class, color, ColorValue};
use crate::error::{invalid, Result};
use crate::graphs::{Cell, PackingSet, WindowSpec};

fn cells(list: &[(i64, i64)]) -> impl Iterator<Item = Cell> + '_ {
    list.iter().map(|&(x, y)| Cell::new(x, y))
}

/// Color class used by the construction for `n mod 5`, with the cells
/// removed from it and the cells added to it.
fn recipe(n: i64) -> (u8, Vec<Cell>, Vec<Cell>) {
    match n % 5 {
        1 => (4, vec![], cells(&[(1, 1), (n, n)]).collect()),
        2 => (0, cells(&[(1, 2), (2, 4)]).collect(), cells(&[(1, 1), (1, 4), (3, 3)]).collect()),
        3 => (
            0,
            cells(&[(1, 2), (2, 4)]).collect(),
            cells(&[(1, 1), (1, 4), (3, 3), (n, n)]).collect(),
        ),
        4 => (
            0,
            cells(&[(1, 2), (2, 4), (n - 2, n), (n - 3, n - 2)]).collect(),
            cells(&[(1, 1), (1, 4), (3, 3), (n - 3, n), (n - 2, n - 2), (n, n)]).collect(),
        ),
        _ => (
            1,
            cells(&[(1, 5), (2, 2), (2, 7), (3, 4), (4, 6)]).collect(),
            cells(&[(1, 1), (1, 4), (1, 7), (3, 3), (3, 6), (5, 5), (n, n)]).collect(),
        ),
    }
}

/// The explicit packing of `T(n)` of size `a(n)`, for `n >= 11`: a color
/// class of the triangle with a few cells near the two acute corners swapped.
pub fn construction_a(n: i64) -> Result<PackingSet> {
    if n < 11 {
        return invalid(format!("construction is defined for n >= 11, got {n}"));
    }
    let t = WindowSpec::full(n)?;
    let (class, removed, added) = recipe(n);
    let mut set: BTreeSet<Cell> = chromatic_class(&t, ColorValue::new(class.into())?).cells;
    for c in removed {
        let present = set.remove(&c);
        debug_assert!(present, "removed cell ({c}) must belong to the class");
    }
    set.extend(added);
    PackingSet::new(t, set)
}

/// One five-row band in the cardinality count of [`construction_a`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandTerm {
    pub band: WindowSpec,
    /// Cells of the band in the construction's color class.
    pub class_count: usize,
    /// The closed-form summand for this band.
    pub summand: i64,
}

/// Splits the size of `construction_a(n)` into a leading constant and one
/// term per five-row band `rows 5i+t-4 ..= 5i+t`.
pub fn construction_band_terms(n: i64) -> Result<(i64, Vec<BandTerm>)> {
    if n < 11 {
        return invalid(format!("construction is defined for n >= 11, got {n}"));
    }
    let t = n % 5;
    let (constant, first, summand): (i64, i64, fn(i64) -> i64) = match t {
        1 => (2, 1, |i| 5 * i - 1),
        2 => (2, 1, |i| 5 * i),
        3 => (3, 1, |i| 5 * i + 1),
        4 => (4, 1, |i| 5 * i + 2),
        _ => (5, 2, |i| 5 * i - 2),
    };
    let (class, _, _) = recipe(n);
    let class = ColorValue::new(class.into())?;
    let last = (n - t) / 5;
    let terms = (first..=last)
        .map(|i| {
            let top = 5 * i + t;
            let band = WindowSpec::rows(n, top - 4, top)?;
            let class_count = band.cells().into_iter().filter(|c| color(c.x, c.y) == class).count();
            Ok(BandTerm { band, class_count, summand: summand(i) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((constant, terms))
}

/// Packing of the strip `T^ell(r)` (`ell` = 5 or 10): the color class
/// `(3r - 4) mod 5` plus the corner `(r, r)`. Sizes are `r - 1` and
/// `2r - 8` respectively.
pub fn strip_construction(r: i64, ell: i64) -> Result<PackingSet> {
    let min_r = match ell {
        5 => 5,
        10 => 12,
        _ => return invalid(format!("strip height must be 5 or 10, got {ell}")),
    };
    if r < min_r {
        return invalid(format!("strip construction for height {ell} needs r >= {min_r}, got {r}"));
    }
    let strip = WindowSpec::strip(r, ell)?;
    let mut s = chromatic_class(&strip, ColorValue::reduce(3 * r - 4));
    s.cells.insert(Cell::new(r, r));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::a_closed;

    #[test]
    fn domain() {
        assert!(construction_a(10).is_err());
        assert!(strip_construction(4, 5).is_err());
        assert!(strip_construction(11, 10).is_err());
        assert!(strip_construction(20, 7).is_err());
    }

    #[test]
    fn small_sizes() {
        assert_eq!(construction_a(11).unwrap().len(), 15);
        assert_eq!(construction_a(12).unwrap().len(), 17);
        assert_eq!(construction_a(13).unwrap().len(), 20);
    }

    #[test]
    fn case_four_corner_cells() {
        let n = 14;
        let a = construction_a(n).unwrap();
        for c in [(1, 1), (1, 4), (3, 3), (n - 3, n), (n - 2, n - 2), (n, n)] {
            assert!(a.contains(c.into()), "{c:?}");
        }
        for c in [(1, 2), (2, 4), (n - 2, n), (n - 3, n - 2)] {
            assert_eq!(color(c.0, c.1).value(), 0);
            assert!(!a.contains(c.into()), "{c:?}");
        }
    }

    #[test]
    fn valid_with_closed_form_size() {
        for n in 11..=60 {
            let a = construction_a(n).unwrap();
            assert!(a.is_valid().unwrap(), "n={n}");
            assert_eq!(a.len() as i64, a_closed(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn band_sums() {
        for n in 11..=60 {
            let (constant, terms) = construction_band_terms(n).unwrap();
            for term in &terms {
                assert_eq!(term.class_count as i64, term.summand, "n={n} band {}", term.band);
            }
            let total: i64 = constant + terms.iter().map(|t| t.summand).sum::<i64>();
            assert_eq!(total, construction_a(n).unwrap().len() as i64, "n={n}");
        }
    }

    #[test]
    fn strips() {
        assert_eq!(strip_construction(5, 5).unwrap().len(), 4);
        assert_eq!(strip_construction(12, 10).unwrap().len(), 16);
        for r in 5..=60 {
            let s = strip_construction(r, 5).unwrap();
            assert_eq!(s.len() as i64, r - 1);
            assert!(s.is_valid().unwrap());
            assert_eq!(s.len() - 1, chromatic_class(&WindowSpec::strip(r, 5).unwrap(), ColorValue::reduce(3 * r - 4)).len());
        }
        for r in 12..=40 {
            let s = strip_construction(r, 10).unwrap();
            assert_eq!(s.len() as i64, 2 * r - 8);
            assert!(s.is_valid().unwrap());
        }
    }
}
