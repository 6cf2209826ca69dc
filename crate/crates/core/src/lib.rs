//! Weighted-Hamming metric toolkit for codes over parallel q-ary symmetric
//! channels.
//!
//! The crate provides:
//!
//! * the block-weighted metric itself ([`metric`]), with the exact and
//!   integer-approximated decoding weights of a parallel channel,
//! * exact sphere/ball counting ([`ball`]),
//! * linear codes over prime fields with exact minimum-distance and
//!   guaranteed-correction-radius computations ([`code`]),
//! * five dimension bounds, including an exact-rational linear-programming
//!   bound via the T-weight MacWilliams transform ([`bounds`]),
//! * a two-block code construction with a syndrome decoder
//!   ([`construction`]),
//! * a channel simulator tying maximum-likelihood decoding to
//!   minimum-weighted-distance decoding ([`channel`]),
//! * a JSON code-file format ([`codefile`]) and the `wham` CLI ([`cli`]).

pub mod ball;
pub mod bounds;
pub mod channel;
pub mod cli;
pub mod code;
pub mod codefile;
pub mod construction;
pub mod error;
pub mod field;
pub mod metric;

pub use error::{Error, Result};
