"""Classical structures on finite sets.

A classical structure on ``{0..n-1}`` is a partition of the set together
with an abelian group on every block.  The copying map ``delta`` relates
``x`` to each pair ``(y, z)`` from a common block with ``x = y * z``, and
the deletion map ``epsilon`` marks the group identities.

Classical and unbiased points can be computed two ways.  ``mode="oracle"``
scans every nonempty subset against the defining equations;
``mode="fast"`` reads them off the partition (blocks and transversals).
The two must agree, which the test-suite checks exhaustively.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, FormatError, MubrelError
from .rel import Rel, compose, dagger, identity, is_unitary, swap, tensor

# Size caps for the exponential routines.
ORACLE_SUBSET_LIMIT = 12
FROBENIUS_LIMIT = 8
UNBIASED_ENUMERATION_CAP = 1 << 20


@dataclass(frozen=True)
class Partition:
    """A partition of ``{0..n-1}`` in canonical form.

    Blocks are sorted internally and ordered by least element, whatever
    order they were given in.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        seen = [b for block in blocks for b in block]
        if any(len(b) == 0 for b in blocks):
            raise MubrelError("partition blocks must be nonempty")
        if sorted(seen) != list(range(self.n)):
            raise MubrelError(
                f"blocks {[list(b) for b in blocks]} do not partition {{0..{self.n - 1}}}"
            )

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(n, tuple((i,) for i in range(n)))

    @classmethod
    def whole(cls, n: int) -> Partition:
        return cls(n, (tuple(range(n)),) if n else ())

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_of(self) -> list[int]:
        """``block_of()[x]`` is the index of the block holding ``x``."""
        out = [0] * self.n
        for k, block in enumerate(self.blocks):
            for x in block:
                out[x] = k
        return out

    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in b) for b in self.blocks)

    def to_json(self):
        return [list(b) for b in self.blocks]

    def __str__(self):
        return " | ".join(" ".join(map(str, b)) for b in self.blocks)


def set_partitions(n: int):
    """Yield every partition of ``{0..n-1}`` (restricted growth strings)."""
    if n == 0:
        yield Partition(0, ())
        return
    labels = [0] * n

    def rec(i, top):
        if i == n:
            blocks = [[] for _ in range(top + 1)]
            for x, lab in enumerate(labels):
                blocks[lab].append(x)
            yield Partition(n, tuple(map(tuple, blocks)))
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    labels[0] = 0
    yield from rec(1, 0)


def uniform_partitions(n: int, size: int):
    """Yield every partition of ``{0..n-1}`` into blocks of ``size`` elements."""
    if size <= 0 or n % size:
        return

    def rec(remaining):
        if not remaining:
            yield ()
            return
        head, rest = remaining[0], remaining[1:]
        for others in itertools.combinations(rest, size - 1):
            left = tuple(x for x in rest if x not in others)
            for tail in rec(left):
                yield ((head, *others),) + tail

    for blocks in rec(tuple(range(n))):
        yield Partition(n, blocks)


@dataclass(frozen=True)
class GroupTable:
    """A Cayley table on one block.

    ``table[i][j]`` is the position (inside ``elements``) of the product of
    the ``i``-th and ``j``-th elements.  Construction only checks shape and
    range; the group axioms are reported by :meth:`violations` so that
    deliberately broken tables can still be fed to the verifiers.
    """

    elements: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    identity_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        m = len(self.elements)
        if len(self.table) != m or any(len(r) != m for r in self.table):
            raise MubrelError(f"group table must be {m}x{m}")
        if any(not 0 <= v < m for r in self.table for v in r):
            raise MubrelError(f"group table entries must lie in 0..{m - 1}")
        if not 0 <= self.identity_index < max(m, 1):
            raise MubrelError(f"identity index {self.identity_index} out of range")

    @classmethod
    def cyclic(cls, elements) -> GroupTable:
        """``Z_m`` on ``elements`` in ascending order, least element the identity."""
        elements = tuple(sorted(elements))
        m = len(elements)
        return cls(elements, tuple(tuple((i + j) % m for j in range(m)) for i in range(m)), 0)

    @classmethod
    def product_of_cyclic(cls, elements, orders) -> GroupTable:
        """``Z_{o1} x Z_{o2} x ...``; element ``i`` has mixed-radix digits in ``orders``."""
        elements = tuple(sorted(elements))
        if math.prod(orders) != len(elements):
            raise MubrelError(f"orders {orders} do not multiply to block size {len(elements)}")
        digits = list(itertools.product(*(range(o) for o in orders)))
        index = {d: i for i, d in enumerate(digits)}
        table = tuple(
            tuple(index[tuple((a + b) % o for a, b, o in zip(da, db, orders))] for db in digits)
            for da in digits
        )
        return cls(elements, table, 0)

    @property
    def order(self) -> int:
        return len(self.elements)

    def violations(self) -> list[str]:
        """Names of the abelian-group axioms this table fails."""
        t, e, r = self.table, self.identity_index, range(self.order)
        bad = []
        for i in r:
            if sorted(t[i]) != list(r) or sorted(t[j][i] for j in r) != list(r):
                bad.append("latin")
                break
        if any(t[t[i][j]][k] != t[i][t[j][k]] for i in r for j in r for k in r):
            bad.append("associative")
        if any(t[i][j] != t[j][i] for i in r for j in r):
            bad.append("commutative")
        if any(t[e][i] != i for i in r):
            bad.append("identity")
        if any(e not in t[i] for i in r):
            bad.append("inverses")
        return bad

    def is_valid(self) -> bool:
        return not self.violations()

    def multiply(self, x: int, y: int) -> int:
        """Product of two block elements, as ground-set labels."""
        pos = {v: i for i, v in enumerate(self.elements)}
        return self.elements[self.table[pos[x]][pos[y]]]


@dataclass(frozen=True)
class ClassicalStructure:
    partition: Partition
    groups: tuple[GroupTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        if len(self.groups) != len(self.partition.blocks):
            raise MubrelError(
                f"{len(self.partition.blocks)} blocks but {len(self.groups)} group tables"
            )
        for k, (block, g) in enumerate(zip(self.partition.blocks, self.groups)):
            if g.elements != block:
                raise MubrelError(f"group {k} lives on {list(g.elements)}, block is {list(block)}")

    @classmethod
    def from_partition(cls, partition: Partition, groups=None) -> ClassicalStructure:
        """Attach ``groups`` (default: cyclic on every block) to ``partition``."""
        if groups is None:
            groups = [GroupTable.cyclic(b) for b in partition.blocks]
        return cls(partition, tuple(groups))

    @classmethod
    def from_blocks(cls, n: int, blocks) -> ClassicalStructure:
        return cls.from_partition(Partition(n, tuple(map(tuple, blocks))))

    @property
    def n(self) -> int:
        return self.partition.n

    def validate(self) -> None:
        for k, g in enumerate(self.groups):
            bad = g.violations()
            if bad:
                raise MubrelError(f"group {k} on {list(g.elements)} fails: {', '.join(bad)}")


@dataclass(frozen=True)
class Point:
    """A subset of ``{0..n-1}``, viewed as a relation from the one-element set."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(self.members))
        object.__setattr__(self, "members", members)
        if len(set(members)) != len(members):
            raise MubrelError(f"duplicate members in point {list(members)}")
        if any(not 0 <= m < self.n for m in members):
            raise MubrelError(f"point {list(members)} not inside {{0..{self.n - 1}}}")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Point:
        return cls(n, tuple(i for i in range(n) if mask >> i & 1))

    def to_rel(self) -> Rel:
        arr = np.zeros((1, self.n), dtype=bool)
        arr[0, list(self.members)] = True
        return Rel(arr)

    def __len__(self):
        return len(self.members)


def build_delta(cs: ClassicalStructure) -> Rel:
    n = cs.n
    arr = np.zeros((n, n * n), dtype=bool)
    for g in cs.groups:
        el = g.elements
        for i, y in enumerate(el):
            for j, z in enumerate(el):
                arr[el[g.table[i][j]], y * n + z] = True
    return Rel(arr)


def build_epsilon(cs: ClassicalStructure) -> Rel:
    arr = np.zeros((cs.n, 1), dtype=bool)
    for g in cs.groups:
        if g.elements:
            arr[g.elements[g.identity_index], 0] = True
    return Rel(arr)


def frobenius_report(cs: ClassicalStructure) -> dict[str, bool]:
    """Evaluate each commutative special Frobenius equation separately."""
    n = cs.n
    if n > FROBENIUS_LIMIT:
        raise CapExceeded(
            f"Frobenius check on n={n} exceeds limit {FROBENIUS_LIMIT}; "
            f"it needs {n * n}x{n ** 3} matrices (~{n ** 5} bytes each)"
        )
    d, e, i = build_delta(cs), build_epsilon(cs), identity(n)
    dd = dagger(d)
    return {
        "coassociative": compose(d, tensor(d, i)) == compose(d, tensor(i, d)),
        "counit_left": compose(d, tensor(e, i)) == i,
        "counit_right": compose(d, tensor(i, e)) == i,
        "cocommutative": compose(d, swap(n, n)) == d,
        "frobenius": compose(tensor(d, i), tensor(i, dd)) == compose(dd, d),
        "special": compose(d, dd) == i,
    }


def verify_frobenius(cs: ClassicalStructure) -> bool:
    return all(frobenius_report(cs).values())


def is_classical_point(cs: ClassicalStructure, p: Point) -> bool:
    if not p.members:
        raise MubrelError("the empty point is degenerate and never classical")
    pr = p.to_rel()
    return compose(pr, build_delta(cs)) == tensor(pr, pr)


def _subsets(n: int, include_empty=False):
    if n > ORACLE_SUBSET_LIMIT:
        raise CapExceeded(
            f"oracle scans 2^{n} - 1 subsets; limit is n <= {ORACLE_SUBSET_LIMIT}"
        )
    for mask in range(0 if include_empty else 1, 1 << n):
        yield Point.from_mask(n, mask)


def _sorted(points):
    return sorted(points, key=lambda p: p.members)


def classical_points(cs: ClassicalStructure, mode: str = "fast") -> list[Point]:
    if mode == "fast":
        return [Point(cs.n, b) for b in cs.partition.blocks]
    if mode == "oracle":
        return list(_classical_oracle(cs))
    raise MubrelError(f"unknown mode {mode!r}")


@lru_cache(maxsize=4096)
def _classical_oracle(cs):
    delta = build_delta(cs)
    out = []
    for p in _subsets(cs.n):
        pr = p.to_rel()
        if compose(pr, delta) == tensor(pr, pr):
            out.append(p)
    return tuple(_sorted(out))


def lambda_map(cs: ClassicalStructure, p: Point) -> Rel:
    """The translation relation of ``p``: ``y`` maps to ``x`` when ``x = y * z`` for some ``z`` in ``p``.

    Rows index the input and columns the output, matching the composite
    returned by :func:`lambda_map_categorical`.
    """
    n = cs.n
    arr = np.zeros((n, n), dtype=bool)
    members = set(p.members)
    for g in cs.groups:
        el = g.elements
        for j, z in enumerate(el):
            if z not in members:
                continue
            for i, y in enumerate(el):
                arr[y, el[g.table[i][j]]] = True
    return Rel(arr)


def lambda_map_categorical(cs: ClassicalStructure, p: Point) -> Rel:
    """``delta^dagger . (p (x) id)`` assembled from relation arrows."""
    return compose(tensor(p.to_rel(), identity(cs.n)), dagger(build_delta(cs)))


def is_unbiased_point(cs: ClassicalStructure, p: Point) -> bool:
    return is_unitary(lambda_map(cs, p))


def unbiased_points(cs: ClassicalStructure, mode: str = "fast") -> list[Point]:
    if mode == "fast":
        count = math.prod(cs.partition.sizes)
        if count > UNBIASED_ENUMERATION_CAP:
            raise CapExceeded(
                f"{count} unbiased points exceeds cap {UNBIASED_ENUMERATION_CAP}"
            )
        return _sorted(Point(cs.n, t) for t in itertools.product(*cs.partition.blocks))
    if mode == "oracle":
        return list(_unbiased_oracle(cs))
    raise MubrelError(f"unknown mode {mode!r}")


@lru_cache(maxsize=4096)
def _unbiased_oracle(cs):
    # the empty subset only qualifies on the empty set, as the empty transversal
    return tuple(_sorted(p for p in _subsets(cs.n, True) if is_unbiased_point(cs, p)))


def unbiased_cardinality_check(cs: ClassicalStructure) -> bool:
    sizes = {len(p) for p in unbiased_points(cs)}
    return sizes == {len(cs.partition.blocks)}


# JSON -----------------------------------------------------------------------


def _int_list(value, where):
    if not isinstance(value, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        raise FormatError("expected a list of integers", where)
    return value


def partition_from_json(blocks, n, where="blocks") -> Partition:
    if not isinstance(blocks, list):
        raise FormatError("expected a list of blocks", where)
    parsed = [tuple(_int_list(b, f"{where}[{k}]")) for k, b in enumerate(blocks)]
    try:
        return Partition(n, tuple(parsed))
    except MubrelError as exc:
        raise FormatError(str(exc), where) from None


def structure_from_json(obj) -> ClassicalStructure:
    """Parse ``{"n": .., "blocks": [..], "groups": [..]}``; ``groups`` may be omitted."""
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("expected a non-negative integer", "n")
    raw_blocks = obj.get("blocks")
    if not isinstance(raw_blocks, list):
        raise FormatError("expected a list of blocks", "blocks")
    for k, b in enumerate(raw_blocks):
        _int_list(b, f"blocks[{k}]")
    partition = partition_from_json(raw_blocks, n)
    raw_groups = obj.get("groups", ["cyclic"] * len(raw_blocks))
    if not isinstance(raw_groups, list) or len(raw_groups) != len(raw_blocks):
        raise FormatError("expected one group entry per block", "groups")
    # groups align with the blocks as written; map them onto canonical order
    canon = {tuple(sorted(b)): k for k, b in enumerate(partition.blocks)}
    groups = [None] * len(raw_blocks)
    for k, (block, g) in enumerate(zip(raw_blocks, raw_groups)):
        where = f"groups[{k}]"
        elements = tuple(sorted(block))
        if g == "cyclic":
            table = GroupTable.cyclic(elements)
        elif isinstance(g, dict):
            rows = g.get("table")
            if not isinstance(rows, list):
                raise FormatError("expected a table", f"{where}.table")
            for r, row in enumerate(rows):
                _int_list(row, f"{where}.table[{r}]")
            ident = g.get("identity", 0)
            if not isinstance(ident, int):
                raise FormatError("expected an integer", f"{where}.identity")
            try:
                table = GroupTable(elements, rows, ident)
            except MubrelError as exc:
                raise FormatError(str(exc), where) from None
            bad = table.violations()
            if bad:
                raise FormatError(f"not an abelian group table ({', '.join(bad)})", where)
        else:
            raise FormatError('expected "cyclic" or {"table": .., "identity": ..}', where)
        groups[canon[elements]] = table
    return ClassicalStructure(partition, tuple(groups))


def structure_to_json(cs: ClassicalStructure) -> dict:
    groups = []
    for g in cs.groups:
        if g == GroupTable.cyclic(g.elements):
            groups.append("cyclic")
        else:
            groups.append({"table": [list(r) for r in g.table], "identity": g.identity_index})
    return {"n": cs.n, "blocks": cs.partition.to_json(), "groups": groups}


def points_to_json(points) -> list[list[int]]:
    return [list(p.members) for p in points]
