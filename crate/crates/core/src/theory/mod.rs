//! Closed forms and explicit constructions: the sequence `a(n)`, the modular
//! coloring of the grid, packing constructions for triangles and strips,
//! the grid packing formula, and rational generating functions.

mod coloring;
mod constructions;
mod fisher;
mod sequence;
mod series;

pub use coloring::{chromatic_class, color, color_translated, ColorValue};
pub use constructions::{construction_a, construction_band_terms, strip_construction, BandTerm};
pub use fisher::fisher_rho;
pub use sequence::{a_closed, a_recursive, a_recursive_table, known_value, KNOWN_VALUES};
pub use series::{conjectured_ogf, ogf_coefficients, poly_mul, RationalSeries};
