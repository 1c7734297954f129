// The guide in book/ is written for mdbook, which cannot compile snippets that
// depend on workspace crates. Each chapter is pulled in here as the docs of an
// empty module so that `cargo test --doc` runs every snippet against the
// current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/field.md")]
pub mod field {}
#[doc = include_str!("../../../book/src/root-systems.md")]
pub mod root_systems {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/classes.md")]
pub mod classes {}
#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}
#[doc = include_str!("../../../book/src/models.md")]
pub mod models {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
