pub mod expr;
pub mod function;
pub mod number;
pub mod places;
pub mod presentation;

pub use places::{AbsValue, Place, PlaceKind, PlaceSet};
pub use presentation::{parse_presentation, Backend, FieldElement, Presentation};
