pub mod error;
pub mod exact;
pub mod lambda;
pub mod report;
pub mod suites;
pub mod symfun;
pub mod tower;
pub mod wittm;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/symmetric.md")]
    mod symmetric {}
    #[doc = include_str!("../../../book/src/lambda.md")]
    mod lambda {}
    #[doc = include_str!("../../../book/src/tower.md")]
    mod tower {}
    #[doc = include_str!("../../../book/src/module-m.md")]
    mod module_m {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
