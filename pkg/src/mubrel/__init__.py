"""Mutually unbiased bases in the category of finite sets and relations.

Classical structures on a finite set are partitions with an abelian group
on each block; two are complementary exactly when their partitions are,
and families of mutually complementary partitions of ``d*d`` points
correspond to mutually orthogonal Latin squares of order ``d``.
"""

from .complementarity import (
    GridArrangement,
    MccsFamily,
    are_complementary,
    are_complementary_structures,
    has_complement,
    is_square,
    is_uniform,
    transpose_partition,
    verify_mccs,
)
from .mols import (
    FieldSpec,
    LatinSquare,
    are_orthogonal,
    canonicalize,
    field_ops,
    gf_mols,
    is_latin,
    mccs_to_mols,
    mols_to_mccs,
)
from .reproduce import reproduce_paper
from .rel import Rel, compose, dagger, identity, is_unitary, tensor
from .search import (
    enumerate_reduced,
    find_orthogonal_mate,
    max_mccs,
    max_mols,
    transversals,
)
from .structures import (
    ClassicalStructure,
    GroupTable,
    Partition,
    Point,
    build_delta,
    build_epsilon,
    classical_points,
    is_classical_point,
    is_unbiased_point,
    lambda_map,
    set_partitions,
    unbiased_points,
    verify_frobenius,
)

__version__ = "0.1.0"
