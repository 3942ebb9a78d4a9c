//! Combinatorics of unicellular maps on closed orientable surfaces.
//!
//! A unicellular map is a graph embedded in a closed surface whose complement
//! is a single disk. The crate covers
//!
//! * [`coding`]: the cyclic boundary word of the complementary polygon, its
//!   canonical form, vertex recovery, enumeration and curve decomposition;
//! * [`surgery`]: the intertwined test, the block-swap surgery rewrite and
//!   the combinatorial surgery graph;
//! * [`homology`]: rotation systems, tree contraction, the mod-2
//!   intersection form and the surgery invariant `[G]`;
//! * [`symplectic`]: transvections over `Z` and `GF(2)`, brute-force group
//!   closures, orbit and stabilizer checks, and the reduction of a primitive
//!   vector congruent to `x1` back to `x1`.

pub mod coding;
pub mod error;
pub mod homology;
pub mod surgery;
pub mod symplectic;

pub use coding::{
    analyze, canonical_form, chain_collection, constituent_curves, enumerate_maps, equivalent,
    find_map, parse_coding, Coding, CurveDecomposition, Letter, MapSummary, ENUMERATION_CAP,
};
pub use error::{Error, Result};
pub use homology::{
    contract_to_one_vertex, graph_class, intersection_form, pair_classes, ribbon_from_coding,
    CycleVector, Mod2Form, OneVertexMap, RibbonGraph,
};
pub use surgery::{
    all_surgeries, build_surgery_graph, do_surgery, double_surgery_identity, graph_metrics,
    intertwined, GraphMetrics, GraphMode, OrientedEdge, SurgeryGraph, Witness,
};
pub use symplectic::{
    apply_move_word, format_bits, full_span_classes, group_bfs, humphries_classes, orbit_of,
    pair_mod2, sp_order, stabilizer_check, standard_classes, standard_generators, transvection,
    transvection_gf2, transvection_z, vector_reduce, Field, GF2Matrix, GroupClosure, IntVector,
    MoveTag, MoveWord, StabilizerReport, SymplecticMatrix, TransvectionMove, ZMatrix, GROUP_BUDGET,
    ORBIT_BUDGET,
};
