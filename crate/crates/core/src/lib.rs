//! Knot invariants from braids and planar diagrams.

pub mod anyon;
pub mod braid;
pub mod burau;
pub mod diagram;
pub mod laurent;
pub mod skein;

pub use anyon::{AnyonError, AnyonState, Calibration, Charge, Estimate, FusionPath, FusionSpace, QubitLayout};
pub use braid::{BraidError, BraidWord, Permutation};
pub use burau::{BurauError, PolyMatrix, RelationMode};
pub use diagram::{Crossing, DiagramError, GaussCode, PDDiagram, Pass};
pub use laurent::{LaurentError, LaurentPoly1, LaurentPoly2};
pub use skein::{SkeinBudget, SkeinEngine, SkeinError, SkeinStats};
