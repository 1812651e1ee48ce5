//! Systematic error-correcting codes for synchronization channels, built
//! from local graph coloring.
//!
//! A channel (k edits, a burst of deletions, k substring edits) defines a
//! confusion graph on all length-n inputs: two inputs are adjacent when
//! they can produce the same output. Any proper coloring of that graph
//! yields a systematic code — send x together with its color, and the
//! decoder keeps the unique preimage of the received word that carries the
//! color. The colorings here are computed per string from its radius-2
//! neighborhood through cover-free set families, so nothing exponential is
//! ever materialized, and the color fits in roughly twice the log of the
//! maximum degree.
//!
//! The same machinery generalizes in three directions:
//! - labelings of the confusion hypergraph give list-decodable codes with
//!   constant list size ([`codes::ListCode`]);
//! - coloring a graph restricted to one syndrome fiber gives a cheap
//!   second-stage syndrome for incremental synchronization
//!   ([`sync::SyncSession`]);
//! - pairing the coloring with an erasure syndrome handles bursts and long
//!   substring edits ([`burst::BurstCode`], [`burst::SseCode`]).
//!
//! Everything is deterministic: the randomized set families behind list
//! decoding are keyed by explicit seeds, and all verification suites are
//! exhaustive at small block lengths.

pub mod burst;
pub mod channel;
pub mod codes;
pub mod coloring;
pub mod coverfree;
pub mod error;
pub mod field;
pub mod rng;
pub mod sync;
pub mod wire;

pub use channel::{ChannelKind, ChannelModel, EditRepertoire, QaryString};
pub use coloring::Syndrome;
pub use error::{Error, Result};
