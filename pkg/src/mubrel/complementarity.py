"""Complementary partitions and families of mutually complementary structures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FormatError, MubrelError
from .structures import (
    ClassicalStructure,
    Partition,
    classical_points,
    partition_from_json,
    unbiased_points,
)


def is_uniform(p: Partition) -> bool:
    return len(set(p.sizes)) <= 1


def is_square(p: Partition) -> bool:
    return is_uniform(p) and len(p.blocks) > 0 and len(p.blocks) == len(p.blocks[0])


def _check_same_ground(a: Partition, b: Partition):
    if a.n != b.n:
        raise MubrelError(f"partitions live on different sets (n={a.n} vs n={b.n})")


def are_complementary(a: Partition, b: Partition) -> bool:
    """Every block of ``a`` meets every block of ``b`` in exactly one element."""
    _check_same_ground(a, b)
    bmasks = b.masks()
    for am in a.masks():
        for bm in bmasks:
            x = am & bm
            if x == 0 or x & (x - 1):
                return False
    return True


@dataclass(frozen=True)
class GridArrangement:
    """Blocks of a uniform partition laid out as the rows of a grid."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(r) for r in self.cells)
        object.__setattr__(self, "cells", cells)
        if len({len(r) for r in cells}) > 1:
            raise MubrelError("grid rows must have equal length")
        flat = sorted(x for r in cells for x in r)
        if flat != list(range(len(flat))):
            raise MubrelError("grid cells must be exactly 0..n-1, each once")

    @classmethod
    def from_partition(cls, p: Partition) -> GridArrangement:
        if not is_uniform(p):
            raise MubrelError(f"partition {p} is not uniform, sizes {p.sizes}")
        return cls(p.blocks)

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    @property
    def n(self) -> int:
        return self.rows * self.cols

    def row_partition(self) -> Partition:
        return Partition(self.n, self.cells)


def transpose_partition(g: GridArrangement) -> Partition:
    return Partition(g.n, tuple(zip(*g.cells)))


def are_complementary_structures(
    a: ClassicalStructure, b: ClassicalStructure, mode: str = "fast"
) -> bool:
    """Complementarity of two structures.

    ``oracle`` checks the point-level definition: every classical point of
    one is an unbiased point of the other, both computed by subset scans.
    """
    _check_same_ground(a.partition, b.partition)
    if mode == "fast":
        return are_complementary(a.partition, b.partition)
    if mode != "oracle":
        raise MubrelError(f"unknown mode {mode!r}")
    ca = set(classical_points(a, "oracle"))
    cb = set(classical_points(b, "oracle"))
    ua = set(unbiased_points(a, "oracle"))
    ub = set(unbiased_points(b, "oracle"))
    return ca <= ub and cb <= ua


def has_complement(cs: ClassicalStructure) -> bool:
    return is_uniform(cs.partition)


def complement_witness(cs: ClassicalStructure) -> ClassicalStructure:
    """A structure complementary to ``cs``: transpose partition, cyclic groups."""
    if not has_complement(cs):
        raise MubrelError(f"partition {cs.partition} is not uniform; no complement exists")
    return ClassicalStructure.from_partition(
        transpose_partition(GridArrangement.from_partition(cs.partition))
    )


@dataclass(frozen=True)
class MccsFamily:
    """An ordered list of partitions of one ground set, meant to be pairwise complementary."""

    n: int
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        object.__setattr__(self, "partitions", tuple(self.partitions))
        for p in self.partitions:
            if p.n != self.n:
                raise MubrelError(f"partition {p} is on n={p.n}, family is on n={self.n}")

    def __len__(self):
        return len(self.partitions)

    def to_json(self):
        return {"n": self.n, "partitions": [p.to_json() for p in self.partitions]}


def first_failing_pair(f: MccsFamily):
    """Indices of the first non-complementary pair, or ``None``."""
    for i, j in itertools.combinations(range(len(f)), 2):
        if not are_complementary(f.partitions[i], f.partitions[j]):
            return i, j
    return None


def verify_mccs(f: MccsFamily) -> bool:
    return first_failing_pair(f) is None


def family_from_json(obj) -> MccsFamily:
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("expected a non-negative integer", "n")
    parts = obj.get("partitions")
    if not isinstance(parts, list):
        raise FormatError("expected a list of partitions", "partitions")
    return MccsFamily(
        n, tuple(partition_from_json(p, n, f"partitions[{k}]") for k, p in enumerate(parts))
    )
