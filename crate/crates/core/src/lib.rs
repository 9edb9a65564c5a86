//! Stanley depth of squarefree monomial ideals.
//!
//! The crate builds the edge ideals of complete k-partite graphs and of
//! s-uniform complete bipartite hypergraphs, evaluates closed-form Stanley
//! depth bounds for them in exact rational arithmetic, computes the exact
//! Stanley depth of small ideals by searching interval partitions of the
//! characteristic poset, and checks associated primes, big size and depth.

pub mod algebra;
pub mod arith;
pub mod bounds;
pub mod combin;
pub mod error;
pub mod families;
pub mod ideal;
pub mod poset;
pub mod sdepth;

pub use arith::{binomial, Rational};
pub use error::{Error, Result};
pub use families::{
    extend_with_variables, kpartite_edge_ideal, uniform_bipartite_hypergraph_ideal, HypergraphSpec, KPartiteSpec,
};
pub use ideal::{intersect_ideals, minimalize, Monomial, SqfreeIdeal};
pub use poset::{
    build_poset, build_poset_with_cap, decomposition_from_partition, validate_partition, CharacteristicPoset, Interval,
    IntervalPartition, StanleyDecomposition, Violation,
};
pub use sdepth::{exact_sdepth, partition_exists, Feasibility, SdepthResult, SearchOptions};
