//! Exact decision procedures for betting on many-valued events.
//!
//! The crate decides whether a rational-valued book on events of the
//! infinite-valued calculus admits a Dutch book, using exact rational
//! arithmetic end to end. Every verdict carries a finite certificate that
//! can be replayed independently: a discrete state that reproduces the
//! odds, or a stake vector that wins against every valuation.
//!
//! Module layout:
//!
//! * [`formula`] — events: syntax, parser, printer, semantics;
//! * [`geometry`] — exact rational geometry: simplexes, hulls, linear
//!   programming with certificates;
//! * [`complex`] — regular (unimodular) triangulations of the unit cube
//!   that linearize a finite set of events;
//! * [`coherence`] — the book trichotomy and its certificates;
//! * [`states`] — discrete states, Lebesgue state, one-step extension;
//! * [`logic`] — syntactic counterparts: theory synthesis and provability
//!   reductions.

pub mod coherence;
pub mod complex;
pub mod error;
pub mod formula;
pub mod geometry;
pub mod logic;
pub mod rat;
pub mod states;

pub use error::{Error, Result};
