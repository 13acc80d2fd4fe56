//! Exact Conway-Coxeter friezes of triangulated polygons.
//!
//! A frieze is built from a triangulation in two independent ways: from its
//! quiddity sequence by the continuant recurrence, and entry by entry as the
//! number of submodules of the string module sitting at each diagonal. Flipping
//! a diagonal is carried out directly on the frieze through the difference
//! formulas in [`mutation`]. Every count is an arbitrary-precision integer.
//!
//! ```
//! use frieze_core::{frieze_from_cc, mutate_frieze, Chord, Triangulation};
//!
//! let t = Triangulation::parse("6; 1-5, 2-5, 3-5").unwrap();
//! let f = frieze_from_cc(&t);
//! let a = Chord::new(6, 2, 5).unwrap();
//! let (g, flipped) = mutate_frieze(&f, &t, &a).unwrap();
//! assert_eq!(g, frieze_from_cc(&flipped));
//! ```

pub mod ar;
pub mod error;
pub mod frieze;
pub mod mutation;
pub mod polygon;
pub mod quiver;
pub mod string_count;

pub use ar::{hom_nonzero, module_of, shape_via_construction, tau, tau_inv, ModuleDescriptor};
pub use error::{Error, Result};
pub use frieze::{
    decode, decode_unchecked, encode, frieze_from_cc, frieze_from_quiddity, matching_number, render_ascii, validate_frieze, Frieze,
    FriezeReport, RenderOptions,
};
pub use mutation::{
    classify, delta, delta_map, delta_report, mutate_frieze, project, rays, DeltaReport, Projection, Ray, RegionTag,
};
pub use polygon::{all_triangulations, chord_crosses, Chord, Quadrilateral, Triangulation};
pub use quiver::{quiver_of, Label, Quiver, QuiverData};
pub use string_count::{
    admissible_subsets, s_bruteforce, s_formula, s_recursive, shape_of, Dir, StringShape, StringWalk,
};
