"""Exact positroid combinatorics: necklaces, plabic graphs, quivers, seeds, cell points."""

from positroids.cluster import (
    IceQuiver,
    LaurentPoly,
    Seed,
    initial_seed,
    mutate_seed,
    mutation_class,
)
from positroids.cm import (
    ext1_vanishes,
    gp_b_rank_one_list,
    in_cm_b,
    in_gp_b,
    is_cluster_tilting_collection,
    k2_generator_decomposition,
    maximal_noncrossing_collections,
)
from positroids.combinatorics import (
    DecoratedPermutation,
    GrassmannNecklace,
    KSet,
    Positroid,
    alignments,
    connected_components,
    in_positroid,
    necklace_from_permutation,
    noncrossing,
    permutation_from_necklace,
    positroid_members,
    reverse_necklace,
    shifted_leq,
)
from positroids.numeric import (
    CellPoint,
    RationalMatrix,
    gauge_rescale,
    minor,
    pluecker_relation_check,
    sample_cell_point,
    verify_identities,
)
from positroids.plabic import (
    PlabicGraph,
    bridge_graph_from_permutation,
    face_labels,
    graph_mutation_class,
    quiver_from_graph,
    square_move,
    trip_permutation,
    trips,
    validate_reduced,
)

__all__ = [
    "CellPoint",
    "DecoratedPermutation",
    "GrassmannNecklace",
    "IceQuiver",
    "KSet",
    "LaurentPoly",
    "PlabicGraph",
    "Positroid",
    "RationalMatrix",
    "Seed",
    "alignments",
    "bridge_graph_from_permutation",
    "connected_components",
    "ext1_vanishes",
    "face_labels",
    "gauge_rescale",
    "gp_b_rank_one_list",
    "graph_mutation_class",
    "in_cm_b",
    "in_gp_b",
    "in_positroid",
    "initial_seed",
    "is_cluster_tilting_collection",
    "k2_generator_decomposition",
    "maximal_noncrossing_collections",
    "minor",
    "mutate_seed",
    "mutation_class",
    "necklace_from_permutation",
    "noncrossing",
    "permutation_from_necklace",
    "pluecker_relation_check",
    "positroid_members",
    "quiver_from_graph",
    "reverse_necklace",
    "sample_cell_point",
    "shifted_leq",
    "square_move",
    "trip_permutation",
    "trips",
    "validate_reduced",
    "verify_identities",
]
