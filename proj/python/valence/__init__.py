"""Valence automata over graph monoids."""

from ._valence import (
    Automaton,
    Grammar,
    Graph,
    PetriNet,
    PriorityMachine,
    ValenceError,
    accepts,
    b2_member,
    b2_witness,
    build_G_ell,
    build_simulator,
    classify,
    decompose_dec,
    derive_bounded,
    dispatch,
    emptiness,
    enumerate,
    expr_to_graph,
    gcheck,
    grammar_to_valence,
    intersection_parikh,
    is_identity,
    is_identity_oracle,
    is_ppn_free,
    is_transitive_forest,
    parikh,
    product_intersection,
    simulator_parikh,
)

__all__ = [
    "Automaton",
    "Grammar",
    "Graph",
    "PetriNet",
    "PriorityMachine",
    "ValenceError",
    "accepts",
    "b2_member",
    "b2_witness",
    "build_G_ell",
    "build_simulator",
    "classify",
    "decompose_dec",
    "derive_bounded",
    "dispatch",
    "emptiness",
    "enumerate",
    "expr_to_graph",
    "gcheck",
    "grammar_to_valence",
    "intersection_parikh",
    "is_identity",
    "is_identity_oracle",
    "is_ppn_free",
    "is_transitive_forest",
    "parikh",
    "product_intersection",
    "simulator_parikh",
]
