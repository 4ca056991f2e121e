//! The chapters of `book/` as modules, so `cargo test` runs their snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/coefficients.md")]
pub mod coefficients {}
#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}
#[doc = include_str!("../../../book/src/isocrystals.md")]
pub mod isocrystals {}
#[doc = include_str!("../../../book/src/weyl.md")]
pub mod weyl {}
#[doc = include_str!("../../../book/src/braids.md")]
pub mod braids {}
#[doc = include_str!("../../../book/src/points.md")]
pub mod points {}
#[doc = include_str!("../../../book/src/special.md")]
pub mod special {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
