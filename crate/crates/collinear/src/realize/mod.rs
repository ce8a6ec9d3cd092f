//! Exact straight-line drawings.

mod drawing;
mod pipeline;
mod place;
mod straighten;
mod tutte;

pub use drawing::{clockwise_neighbors, collinear, float_coords, parse_drawing, verify_drawing, Drawing, DrawingError, DrawingReport};
pub use pipeline::{curve_to_drawing, labeling_from_curve, RealizeError};
pub use place::{place_free, place_with_mode, Element, Label, LabelingOrder, PlaceError, PlaceMode};
pub use straighten::{straighten_preserving_y, Polyline, StraightenError};
pub use tutte::{barycentric_exact, barycentric_float, tutte_convex, TutteError, EXACT_LIMIT};
