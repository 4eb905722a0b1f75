//! Exact algebra of formal group laws over graded GF(2)-algebras.
//!
//! The crate is layered bottom-up:
//!
//! - [`ring`], [`hom`], [`tensor`]: truncated polynomial rings over GF(2),
//!   ring maps between them and tensor products.
//! - [`series`]: truncated reduced power series in one to three variables,
//!   with composition `f ∘ g` and reversion.
//! - [`fgl`]: formal group laws certified up to a degree, n-series,
//!   twisting and transport by strict series, and the degreewise solver
//!   for strict isomorphisms to the additive law.
//! - [`steenrod`]: strict automorphisms of the additive law and the Hopf
//!   algebra they corepresent, derived by generic composition.
//! - [`bordism`]: the polynomial model of the unoriented cooperation ring,
//!   its coaction on the orientation class and the evaluation map.

pub mod bordism;
pub mod error;
pub mod fgl;
pub mod hom;
pub mod linalg;
pub mod parse;
pub mod random;
pub mod ring;
pub mod series;
pub mod steenrod;
pub mod tensor;

pub use error::{Error, Result};
pub use hom::{apply_hom, RingHom};
pub use ring::{element_add, element_mul, graded_basis, GeneratorSpec, Monomial, Ring, RingDescriptor, RingElement};
pub use series::{compose1, revert, series_add, series_mul, subst2, Series, Series1, Series2, Series3, StrictSeries1};
pub use tensor::{tensor_add, tensor_mul, TensorElement, TensorRing};
pub use fgl::{check_axioms, is_endomorphism, n_series, solve_iso_to_additive, transport, twist_additive, Axiom, FormalGroupLaw, Obstruction};
pub use steenrod::{compose_aut, invert_aut, make_additive, verify_hopf, AdditiveStrictSeries, DualSteenrodPresentation, HopfReport};
pub use bordism::{build_model, coaction, cooperation_coproduct, ev, gamma_transport, internal_compose, pair_to_ring_map, BordismModel, EvaluatedPoint};
