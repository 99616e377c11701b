"""Meaning-space encoding and comparison on a simulated quantum register."""

from .codes import (
    BasisSet,
    CyclicCode,
    assign_codes,
    basis_for_tokens,
    generate_cyclic_code,
    min_hamiltonian_cycle,
)
from .corpus import (
    CorpusModel,
    PreprocessParams,
    ProjectionMap,
    SentencePattern,
    TokenOccurrence,
    build_model,
    build_model_bases,
    form_sentences,
    pairwise_token_distance,
    project_tokens,
    select_basis,
    tokenize_and_tag,
)
from .encoder import (
    EncodedMemory,
    PatternSet,
    carve_matrix,
    encode,
    load_pattern_file,
    save_pattern_file,
)
from .errors import (
    CapacityError,
    QMeaningError,
    TaggedLineError,
    TokenResolutionError,
    ZeroNormError,
)
from .overlap import OverlapResult, analytic_overlap, swap_test_overlap
from .representer import (
    WeightedDistribution,
    apply_distance_rotations,
    distance_weights,
    load_test_pattern,
    oracle_distribution,
    project_and_normalize,
    represent,
)
from .simulator import GateCounter, RegisterLayout, StateVector

__version__ = "0.1.0"

__all__ = [
    "BasisSet",
    "CapacityError",
    "CorpusModel",
    "CyclicCode",
    "EncodedMemory",
    "GateCounter",
    "OverlapResult",
    "PatternSet",
    "PreprocessParams",
    "ProjectionMap",
    "QMeaningError",
    "RegisterLayout",
    "SentencePattern",
    "StateVector",
    "TaggedLineError",
    "TokenOccurrence",
    "TokenResolutionError",
    "WeightedDistribution",
    "ZeroNormError",
    "analytic_overlap",
    "apply_distance_rotations",
    "assign_codes",
    "basis_for_tokens",
    "build_model",
    "build_model_bases",
    "carve_matrix",
    "distance_weights",
    "encode",
    "form_sentences",
    "generate_cyclic_code",
    "load_pattern_file",
    "load_test_pattern",
    "min_hamiltonian_cycle",
    "oracle_distribution",
    "pairwise_token_distance",
    "project_and_normalize",
    "project_tokens",
    "represent",
    "save_pattern_file",
    "select_basis",
    "swap_test_overlap",
    "tokenize_and_tag",
]
