//! Synthetic dialect generation and dialect-to-HRL word swapping.
//!
//! Two directions are supported:
//!
//! * **M→D**: sample an [`ArtificialLanguage`](noisers::ArtificialLanguage) (a frozen map of
//!   phoneme, suffix, function-word and content-word changes) from a high-resource language and
//!   apply it to bitext, either at a single radius (`shell`) or at graded radii (`cloud`).
//! * **D→M**: swap words of a closely related language for their HRL equivalents using a
//!   bilingual lexicon, restricted to function words, content words, or both.
//!
//! The supporting resource builders (CoNLL-U ingestion, suffix mining, character n-gram models),
//! lexicon tooling (merging, IBM Model 1 induction, function-word projection) and diagnostics
//! (chrF, noise-rate reports) live in their own modules.

pub mod dtm;
pub mod error;
pub mod langgen;
pub mod lexicon;
pub mod metrics;
pub mod noisers;
pub mod phonology;
pub mod resources;
pub mod seed;
pub mod text;

pub use error::{Error, Result};
