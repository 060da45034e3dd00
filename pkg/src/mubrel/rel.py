"""Finite relations as dense boolean matrices.

Objects are the sets ``{0, ..., n-1}``; a :class:`Rel` from a set of size
``m`` to a set of size ``n`` is an ``m x n`` boolean matrix whose entry
``(x, y)`` is true when ``x`` is related to ``y``.

Conventions used throughout the package:

* ``compose(r, s)`` applies ``r`` first and then ``s`` (diagrammatic order).
* The product ``X (x) Y`` is the cartesian product with the pair ``(x, y)``
  stored at index ``x * |Y| + y``; :func:`tensor` is the Kronecker product.
* The monoidal unit is the one-element set, so the unitors are identities
  and a point of ``X`` is a ``1 x |X|`` relation.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .errors import FormatError, MubrelError

__all__ = [
    "Rel",
    "identity",
    "compose",
    "dagger",
    "tensor",
    "swap",
    "is_unitary",
    "is_bijective_function",
    "parse_rel",
    "format_rel",
]


class Rel:
    """An immutable relation between ``{0..dom_size-1}`` and ``{0..cod_size-1}``."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        arr = np.array(entries, dtype=bool)
        if arr.ndim != 2:
            raise MubrelError(f"relation matrix must be 2-dimensional, got shape {arr.shape}")
        arr.flags.writeable = False
        self.entries = arr

    @classmethod
    def from_pairs(cls, dom_size: int, cod_size: int, pairs: Iterable[tuple[int, int]]) -> Rel:
        arr = np.zeros((dom_size, cod_size), dtype=bool)
        for x, y in pairs:
            if not (0 <= x < dom_size and 0 <= y < cod_size):
                raise MubrelError(f"pair ({x}, {y}) outside {dom_size} x {cod_size}")
            arr[x, y] = True
        return cls(arr)

    @classmethod
    def empty(cls, dom_size: int, cod_size: int) -> Rel:
        return cls(np.zeros((dom_size, cod_size), dtype=bool))

    @property
    def dom_size(self) -> int:
        return self.entries.shape[0]

    @property
    def cod_size(self) -> int:
        return self.entries.shape[1]

    def pairs(self) -> list[tuple[int, int]]:
        """Related pairs in row-major order."""
        return [(int(x), int(y)) for x, y in np.argwhere(self.entries)]

    def image(self, x: int) -> list[int]:
        return [int(y) for y in np.flatnonzero(self.entries[x])]

    def __eq__(self, other):
        if not isinstance(other, Rel):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(
            np.array_equal(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"Rel({self.dom_size}x{self.cod_size}, {self.pairs()})"


def identity(n: int) -> Rel:
    if n < 0:
        raise MubrelError(f"set size must be non-negative, got {n}")
    return Rel(np.eye(n, dtype=bool))


def compose(first: Rel, then: Rel) -> Rel:
    """Relational composite: ``x`` relates to ``z`` iff ``x first y`` and ``y then z``."""
    if first.cod_size != then.dom_size:
        raise MubrelError(
            f"cannot compose {first.dom_size}x{first.cod_size} with "
            f"{then.dom_size}x{then.cod_size}: inner sizes {first.cod_size} != {then.dom_size}"
        )
    # boolean matmul is the (or, and) semiring product
    return Rel(first.entries @ then.entries)


def dagger(r: Rel) -> Rel:
    return Rel(r.entries.T)


def tensor(a: Rel, b: Rel) -> Rel:
    return Rel(np.kron(a.entries, b.entries))


def swap(m: int, n: int) -> Rel:
    """The symmetry ``X (x) Y -> Y (x) X`` sending ``(x, y)`` to ``(y, x)``."""
    arr = np.zeros((m * n, n * m), dtype=bool)
    for x in range(m):
        for y in range(n):
            arr[x * n + y, y * m + x] = True
    return Rel(arr)


def is_unitary(r: Rel) -> bool:
    """True iff ``r ; r^dagger`` and ``r^dagger ; r`` are both identities."""
    if r.dom_size != r.cod_size:
        return False
    rd = dagger(r)
    return compose(r, rd) == identity(r.dom_size) and compose(rd, r) == identity(r.cod_size)


def is_bijective_function(r: Rel) -> bool:
    """Direct test: square, with exactly one entry in every row and column."""
    e = r.entries
    return (
        r.dom_size == r.cod_size
        and bool(np.all(e.sum(axis=1) == 1))
        and bool(np.all(e.sum(axis=0) == 1))
    )


def parse_rel(text: str) -> Rel:
    """Parse the text format: a ``"dom cod"`` header, then one ``"x y"`` line per pair."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise FormatError("empty relation file")

    def ints(lineno, ln):
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"expected two integers, got {ln!r}", f"line {lineno}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"expected two integers, got {ln!r}", f"line {lineno}") from None

    dom, cod = ints(*lines[0])
    if dom < 0 or cod < 0:
        raise FormatError("sizes must be non-negative", f"line {lines[0][0]}")
    arr = np.zeros((dom, cod), dtype=bool)
    for lineno, ln in lines[1:]:
        x, y = ints(lineno, ln)
        if not (0 <= x < dom and 0 <= y < cod):
            raise FormatError(f"pair ({x}, {y}) outside {dom} x {cod}", f"line {lineno}")
        arr[x, y] = True
    return Rel(arr)


def format_rel(r: Rel) -> str:
    out = [f"{r.dom_size} {r.cod_size}"]
    out.extend(f"{x} {y}" for x, y in r.pairs())
    return "\n".join(out) + "\n"
