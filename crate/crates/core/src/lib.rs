//! Exact tools for multivariate distance-regular graphs and multivariate
//! P-polynomial association schemes.

#![allow(clippy::needless_range_loop, clippy::result_large_err)]

pub mod certificate;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lemmas;
pub mod linalg;
pub mod multiindex;
pub mod order;
pub mod poly;
pub mod ppoly;
pub mod rational;
pub mod region;
pub mod scheme;

pub use certificate::{Certificate, Check, Verdict, Witness};
pub use error::{Error, Result};
pub use graph::{
    check_precompat_graph, count_walks_by_type, m_distance_from, m_distance_table, ColoredGraph, DistanceTable,
};
pub use multiindex::MultiIndex;
pub use order::{
    check_domain, compare_monomial, compare_partial, downset_enum, validate_monomial_order, validate_pair_compat,
    AlphaBeta, DomainMode, MonomialOrder, PartialCmp, PartialOrder,
};
pub use poly::{Polynomial, PolynomialExpansion};
pub use ppoly::{
    ab_region_for_scheme, boundary_check, certify_ppoly, certify_ppoly_refined, certify_type_ab, discover_labelings,
    extract_polynomials, union_graph, verify_recurrences, Discovered, Dominance, Labeling,
};
pub use rational::Rational;
pub use region::{ab_feasible_region, AbConstraints, AbRegion, Interval, Rect};
pub use scheme::{
    distance_matrices, index_labels, intersection_tensor, mdrg_check, monomial_coeffs, regular_representation,
    verify_scheme_axioms, ClassLabel, Generators, IntersectionTensor, MdrgReport, SchemeClasses,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/orders.md")]
    mod orders {}
    #[doc = include_str!("../../../book/src/m-distance.md")]
    mod m_distance {}
    #[doc = include_str!("../../../book/src/schemes.md")]
    mod schemes {}
    #[doc = include_str!("../../../book/src/ppoly.md")]
    mod ppoly {}
    #[doc = include_str!("../../../book/src/type-ab.md")]
    mod type_ab {}
    #[doc = include_str!("../../../book/src/examples.md")]
    mod examples {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
