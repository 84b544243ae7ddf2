//! Finite partial algebraic structures and their representations by
//! partial transformations.
//!
//! - [`table`]: partial magmas given by Cayley tables.
//! - [`maps`]: prefunctions, partial functions and magmas of them.
//! - [`classify`]: axiom checkers from semigroupoids up to groups, and the
//!   one-sided hierarchy of right poloids.
//! - [`represent`]: left-translation representations of poloids and normal
//!   right poloids.
//! - [`morphisms`]: homomorphisms, isomorphisms, subpoloids and actions.
//! - [`enumerate`]: exhaustive enumeration of small tables.
//! - [`corpus`]: hand-built example structures.

pub mod classify;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod maps;
pub mod morphisms;
pub mod represent;
pub mod table;

pub use classify::{classify, Class, ClassReport, Poloid, RightPoloid};
pub use error::{Error, Result};
pub use maps::{MapMagma, Mode, PartialFn, PartialMap, PointSet, Prefunction};
pub use morphisms::{find_isomorphism, ActionSpec, Morphism};
pub use represent::{cayley, embed_right_poloid, Embedding};
pub use table::{Elem, PartialMagma, Verdict, Witness, WitnessKind};
