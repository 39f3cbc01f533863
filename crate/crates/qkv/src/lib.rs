//! Exact computer algebra for quaternionic-Kähler pointwise identities.

pub mod curvature;
pub mod killing;
pub mod linalg;
pub mod linspaces;
pub mod multilinear;
pub mod operator;
pub mod scalars;
pub mod spinors;
pub mod verify;

/// The guide in `book/`, compiled so its examples run as doc-tests.
pub mod guide {
    #[doc = include_str!("../../../book/src/overview.md")]
    pub mod overview {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    pub mod scalars {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    pub mod spaces {}
    #[doc = include_str!("../../../book/src/spinors.md")]
    pub mod spinors {}
    #[doc = include_str!("../../../book/src/killing.md")]
    pub mod killing {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    pub mod curvature {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
