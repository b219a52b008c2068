"""Exact combinatorics of the resonance arrangement.

The arrangement in R^n whose normals are all nonzero 0/1 vectors:
characteristic polynomials by independent methods, Betti numbers
through the broken-circuit complex, Stirling-number closed forms, the
four-element circuit census, and a compiler embedding any rational
matrix's matroid as a minor of a large enough resonance matroid.
"""

from .arrangement import (
    Arrangement,
    CharPoly,
    build_arrangement,
    count_points_avoiding,
    default_primes,
    enumerate_chambers_bruteforce,
    finite_field_charpoly,
    region_count,
    whitney_charpoly,
)
from .circuits import (
    CircuitTag,
    CircuitType,
    SideMidpointTuple,
    b3_via_circuits,
    classify_relevant_4circuit,
    count_intersecting_triples,
    count_rectangle_circuits,
    count_tetrahedron_circuits,
    rectangle_from_sides,
    sides_from_rectangle,
)
from .errors import GuardExceeded, InternalCheckError
from .linalg import (
    EchelonBasis,
    ExactMatrix,
    closure,
    fundamental_circuit,
    is_independent,
    mask_rank,
)
from .masks import format_mask, mask_elements, mask_from_elements, mask_vector
from .nbc import (
    NbcSet,
    betti_via_nbc,
    charpoly_via_nbc,
    is_broken_circuit,
    is_nbc,
    nbc_extend,
)
from .prototypes import (
    Partition,
    Prototype,
    PrototypeClass,
    betti_via_prototypes,
    classify,
    coefficients,
    enumerate_prototypes,
    realize,
    tuple_prototype,
)
from .stirling import (
    StirlingCombination,
    betti2_closed,
    betti3_closed,
    betti_bound_holds,
    betti_upper_bound,
    fit_stirling_coefficients,
    region_log2_bound,
    stirling2,
    stirling2_altsum,
)
from .universality import (
    ColumnDecomposition,
    Embedding,
    decompose_column,
    embed,
    minor_matroid_check,
    parse_matrix_text,
    read_matrix_file,
    verify_embedding,
)

__version__ = "0.1.0"
