//! A rewriting engine and decision procedure for the simply typed and
//! second-order λ-calculus with products, surjective pairing and a
//! terminal type `Top`.
//!
//! ```
//! use topcalc::{normal_form, parse_context, parse_term_in, RewriteSystem, SystemId};
//!
//! let ctx = parse_context("y: A -> Top").unwrap();
//! let t = parse_term_in("\\x:A. y x", &ctx, SystemId::Cd).unwrap();
//! let nf = normal_form(&t, &RewriteSystem::new(SystemId::Cd)).unwrap();
//! assert_eq!(nf.to_string(), "\\x:A. *");
//! ```

pub mod canon;
pub mod frontend;
pub mod gen;
pub mod metatheory;
pub mod normalize;
pub mod rewrite;
pub mod syntax;
pub mod typing;

pub use canon::{is_canonical, is_iso_top, is_star_free, star, SystemId};
pub use frontend::{parse_context, parse_term, parse_term_in, parse_type, print_term, print_type};
pub use metatheory::{build_graph, GraphCaps, ReductionGraph, Verdict};
pub use normalize::{eq_decide, normal_form, normalize, Strategy};
pub use rewrite::{redexes, RewriteSystem, RuleId, RuleSet};
pub use syntax::{Position, Term, Type};
pub use typing::type_of;
