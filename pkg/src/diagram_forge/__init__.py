"""Finite index categories, positive nerves, and diagram-type signatures."""
from .builtins import load_category, load_reedy, load_spec
from .fincat import (
    CategoryError,
    CategorySpec,
    FinCategory,
    IllFormedRelation,
    IllFormedSpec,
    NotComposable,
    SaturationBound,
    UnknownObject,
    build_category,
    compose,
    hom,
    terminal_category,
)
from .inverse import (
    Violation,
    check_inverse,
    coslice,
    downward_closed,
    matching_index,
    synthesize_degrees,
)
from .nerve import (
    NotInverse,
    Seq,
    nerve_elements_truncated,
    positive_nerve_elements,
    seq_morphism,
    shape,
    to_dot,
)
from .reedy import (
    NotReedy,
    NotSurjective,
    ReedyCategory,
    check_degree_monotone,
    check_no_infinite_chains,
    check_reedy,
    d_construction,
    delta_reedy,
    frak_d,
    frak_d_degree,
    list_of_surjection,
    surjection_of_list,
)
from .simplex import SimplexMap, compose_simplex, epi_mono_factor, monotone_maps
from .strictify import (
    extend_with_iota,
    fibrant_replacement_schema,
    sp_schema,
    strict_components,
    verify_matching_claim,
)

__version__ = "0.1.0"
