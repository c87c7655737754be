use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graphs::{PackingSet, WindowSpec};

/// An element of Z_5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColorValue(u8);

impl ColorValue {
    pub fn new(value: i64) -> Result<Self> {
        if !(0..5).contains(&value) {
            return invalid(format!("color {value} is not in 0..5"));
        }
        Ok(ColorValue(value as u8))
    }

    /// Reduces any integer modulo 5.
    pub fn reduce(value: i64) -> Self {
        ColorValue(value.rem_euclid(5) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = ColorValue> {
        (0..5).map(ColorValue)
    }
}

impl std::ops::Add for ColorValue {
    type Output = ColorValue;
    fn add(self, rhs: Self) -> Self {
        ColorValue((self.0 + rhs.0) % 5)
    }
}

impl fmt::Display for ColorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(i + 2j) mod 5`, non-negative for every integer input.
pub fn color(i: i64, j: i64) -> ColorValue {
    ColorValue::reduce(i + 2 * j)
}

/// The `t`-translation of [`color`]: `color(i - t, j)`.
pub fn color_translated(t: u64, i: i64, j: i64) -> ColorValue {
    color(i - (t % 5) as i64, j)
}

/// All cells of `w` with color `m`.
pub fn chromatic_class(w: &WindowSpec, m: ColorValue) -> PackingSet {
    PackingSet::new(*w, w.cells().into_iter().filter(|c| color(c.x, c.y) == m))
        .expect("window cells lie in the window")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{is_packing_cells, triangle_window, Cell};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(color(1, 1).value(), 3);
        assert_eq!(color(0, 0).value(), 0);
        assert_eq!(color(-1, 0).value(), 4);
        assert_eq!(color_translated(1, 1, 0).value(), 0);
        assert!(ColorValue::new(5).is_err());
        for (i, j) in [(3, 4), (-7, 2), (0, -9)] {
            assert_eq!(color_translated(5, i, j), color(i, j));
        }
    }

    #[test]
    fn band_counts() {
        for n in 5..=30 {
            for i in 5..=n {
                let band = WindowSpec::rows(n, i - 4, i).unwrap();
                for m in ColorValue::all() {
                    assert_eq!(chromatic_class(&band, m).len() as i64, i - 2, "n={n} i={i} m={m}");
                }
            }
        }
        let band = WindowSpec::rows(9, 1, 5).unwrap();
        assert_eq!(chromatic_class(&band, ColorValue::new(2).unwrap()).len(), 3);
    }

    #[test]
    fn class_three_of_t7() {
        let t7 = WindowSpec::full(7).unwrap();
        let class = chromatic_class(&t7, ColorValue::new(3).unwrap());
        let expected: Vec<Cell> = t7.cells().into_iter().filter(|c| (c.x + 2 * c.y) % 5 == 3).collect();
        assert_eq!(class.cell_vec(), expected);
        assert!(class.cell_vec().contains(&Cell::new(1, 1)));
        assert!(class.is_valid().unwrap());
    }

    #[test]
    fn adjacent_cells_differ() {
        for i in -50..=50 {
            for j in -50..=50 {
                let c = color(i, j);
                assert_ne!(c, color(i + 1, j));
                assert_ne!(c, color(i, j + 1));
            }
        }
    }

    #[test]
    fn class_is_packing_of_the_plane() {
        // every pair of equal-colored cells at L1 distance <= 2 would be a counterexample
        let offsets = [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (1, -1)];
        for i in -50..=50 {
            for j in -50..=50 {
                for (di, dj) in offsets {
                    assert_ne!(color(i, j), color(i + di, j + dj));
                }
            }
        }
    }

    #[test]
    fn classes_pack_every_window() {
        for n in 1..=14 {
            for x_lo in 1..=n {
                for y_hi in x_lo..=n {
                    let w = WindowSpec::new(n, x_lo, n, 1, y_hi).unwrap();
                    let g = triangle_window(&w).unwrap();
                    for m in ColorValue::all() {
                        assert!(is_packing_cells(&g, &chromatic_class(&w, m).cell_vec()).unwrap());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn same_column_period(i in -50i64..=50, j in -50i64..=50, j2 in -50i64..=50) {
            prop_assert_eq!(color(i, j) == color(i, j2), (j - j2) % 5 == 0);
        }

        #[test]
        fn same_row_period(i in -50i64..=50, i2 in -50i64..=50, j in -50i64..=50) {
            prop_assert_eq!(color(i, j) == color(i2, j), (i - i2) % 5 == 0);
        }

        #[test]
        fn subdiagonal_period(i in -50i64..=50, j in -50i64..=50) {
            prop_assert_eq!(color(i + 1, i) == color(j + 1, j), (i - j) % 5 == 0);
        }

        #[test]
        fn translation_preserves_classes(t in 1u64..=20, i in -50i64..=50, j in -50i64..=50) {
            // f^{-1}(f(i,j)) == f_t^{-1}(f(i - t, j)) on the sampled square
            let target = color(i, j);
            let shifted = color(i - t as i64, j);
            for a in -50i64..=50 {
                for b in [-50i64, -13, 0, 7, 50] {
                    prop_assert_eq!(color(a, b) == target, color_translated(t, a, b) == shifted);
                }
            }
        }
    }
}
