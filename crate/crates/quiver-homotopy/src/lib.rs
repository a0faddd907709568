pub mod cluster;
pub mod covering;
pub mod error;
pub mod io;
pub mod mutation;
pub mod oracle;
pub mod quiver;
pub mod surface;
pub mod walk;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod chapter0 {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    pub mod chapter1 {}
    #[doc = include_str!("../../../book/src/mutation.md")]
    pub mod chapter2 {}
    #[doc = include_str!("../../../book/src/coverings.md")]
    pub mod chapter3 {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    pub mod chapter4 {}
    #[doc = include_str!("../../../book/src/cluster.md")]
    pub mod chapter5 {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod chapter6 {}
}
