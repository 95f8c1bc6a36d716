//! Homotopy limits and colimits of finite diagrams of finite categories.
//!
//! Categories are explicit composition tables ([`FinCat`]). Diagrams of
//! categories are strict functors into such tables ([`CatDiagram`],
//! [`BiDiagram`]). [`hocolim`] is the Grothendieck construction and
//! [`holim_explicit`] the category of compatible families; [`interchange`]
//! compares the two orders of taking them over a product index.

pub mod corpus;
pub mod diagnostics;
pub mod diagram;
pub mod error;
pub mod export;
pub mod fincat;
pub mod functor;
pub mod functor_category;
pub mod hocolim;
pub mod holim;
pub mod interchange;
pub mod padic;
mod presented;
pub mod product;

pub use diagram::{BiDiagram, CatDiagram, Curry, DiagramMap};
pub use error::{Error, Result};
pub use fincat::{find_pseudo_finals, FinCat, Limits, Mor, Ob, PseudoFinal};
pub use functor::{Functor, NatTrans};
pub use hocolim::hocolim;
pub use holim::{canonical_iso, holim_explicit, holim_pullback};
pub use interchange::{inner_outer, verify_retract, InterchangePair, RetractReport};
pub use presented::Presented;
