//! Output records shared by the `hodge-degrees` binary and its tests.

pub mod output;
