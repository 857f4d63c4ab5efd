//! The guide in `book/` as doc-tests: every Rust block in a chapter is
//! compiled and run by `cargo test --doc`. One module per chapter, so a
//! failure names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/quasivarieties.md")]
pub mod quasivarieties {}
#[doc = include_str!("../../../book/src/demorgan.md")]
pub mod demorgan {}
#[doc = include_str!("../../../book/src/brouwer.md")]
pub mod brouwer {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/reports.md")]
pub mod reports {}
