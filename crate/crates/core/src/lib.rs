//! Strictification of finitely presented SMC-categories.
//!
//! An SMC-category is a bicategory whose hom-categories are symmetric
//! monoidal and whose composition distributes over sums up to coherent
//! isomorphism. This crate works with free SMC-categories given by a finite
//! [`SmcSignature`] and computes their strictification: every 1-cell
//! expression reduces to a [`NormalForm`], an ordered sum of composable
//! generator strings, and every structural 2-cell acts on normal forms as a
//! [`MonomialBijection`] of monomial positions.
//!
//! ```
//! use smcstrict::{normalize, OneCellExpr as E, SmcSignature};
//!
//! let sig = SmcSignature::standard();
//! let e = E::hcomp(E::sum(E::gen("g"), E::gen("g'")), E::sum(E::gen("f"), E::gen("f'")));
//! assert_eq!(normalize(&e, &sig)?.to_text(), "g.f + g.f' + g'.f + g'.f'");
//! # Ok::<(), smcstrict::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod expr;
pub mod instances;
pub mod normalize;
pub mod signature;
pub mod symbol;
pub mod syntax;
pub mod twocell;
pub mod verify;

pub use error::{Error, ExprPath, Result};
pub use expr::{expr_equal, OneCellExpr};
pub use normalize::{
    canonical_iso, embed, normalize, strict_compose, strict_sum, Monomial, NormalForm,
};
pub use signature::{Gen1Cell, Gen2Cell, SmcSignature, ZeroCellId};
pub use symbol::Symbol;
pub use twocell::{
    boundary, check_diagram, invert, perm_of, CheckReport, MonomialBijection, TwoCellExpr,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/expressions.md")]
    struct Expressions;
    #[doc = include_str!("../../../book/src/two-cells.md")]
    struct TwoCells;
    #[doc = include_str!("../../../book/src/models.md")]
    struct Models;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
