//! Partial commutative monoids, PCM-categories and the categorical Cauchy
//! product, with brute-force law checkers for all of them.

pub mod family;
pub mod fincat;
pub mod pcm;
pub mod pcmcat;
pub mod report;
pub mod cauchy;
pub mod universal;
pub mod laws;
pub mod cli;
