"""Exact face lattices, f-vectors, and generating-function identities of
Gelfand-Cetlin polytopes, computed through their ladder diagrams."""

from .genfunc import (
    DiffOperator,
    PdeReport,
    TPoly,
    TruncatedSeries,
    f_polynomial,
    f_vector,
    fpolynomial_egf,
    interaction_product,
    pde_operator,
    restrict_to_zero,
    verify_generating_pde,
    verify_vertex_pde,
    vertex_count_egf,
    vertex_pde_operator,
    word_operator,
)
from .ladder import (
    BOTTOM,
    DiagramFace,
    LadderDiagram,
    assignment_of_face,
    brute_force_faces,
    build_diagram,
    compose_face,
    compositions_of,
    compositions_with_edge_bound,
    decompose_face,
    enumerate_faces,
    face_census,
    face_dimension,
    is_face,
    is_face_local,
    join,
    meet,
    transpose_face,
)
from .polytope import (
    GCSystem,
    IsoReport,
    PolytopeFace,
    Spectrum,
    build_system,
    canonical_spectrum,
    face_lattice,
    phi,
    polytope_vertices,
    psi,
    representative_point,
    representative_strictness,
    verify_isomorphism,
)
from .words import (
    BOTH,
    RIGHT,
    UP,
    all_words,
    d_transform,
    interleave,
    r_transform,
    reduce_composition,
    word_tilde,
    word_transforms,
    word_weight,
)

__version__ = "1.0.0"
