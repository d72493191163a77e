//! Trivial source modules and their ordinary characters for blocks with
//! cyclic defect groups.
//!
//! A block is described by a [`tree::BlockDescriptor`]: the prime `p`, the
//! defect `n`, the inertial index `e`, a signed Brauer tree with planar
//! embedding and the endo-permutation parameter `W`. The pipeline runs from
//! exact arithmetic over `C_(p^n)` ([`cyclotomic`], [`local`]) through the
//! exceptional-orbit bookkeeping ([`characters`]) to enumeration of the
//! trivial source modules with a given vertex ([`classification`]).
//! [`oracle`] recomputes the same quantities by brute force.

pub mod arith;
pub mod characters;
pub mod classification;
pub mod cyclotomic;
pub mod local;
pub mod oracle;
pub mod report;
pub mod tree;
