"""Exhaustive searches over small Latin squares and partition families.

The headline computation is the order-6 sweep: every reduced Latin square
of order 6 is enumerated and shown to have no orthogonal mate, so at most
one Latin square of order 6 can be in any orthogonal set, and 36 points
carry at most three mutually complementary structures.

A square has an orthogonal mate iff its cells split into ``d`` disjoint
transversals; the mate then gives symbol ``t`` to the transversal through
cell ``(0, t)``.  Mate existence is unchanged by permuting rows, columns
or symbols, so reduced squares suffice.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from .complementarity import MccsFamily, are_complementary, is_uniform, verify_mccs
from .errors import CapExceeded, MubrelError
from .exact_cover import exact_cover
from .mols import (
    GF_MOLS_CAP,
    LatinSquare,
    are_orthogonal,
    first_non_orthogonal,
    gf_mols,
    mols_to_mccs,
    prime_power,
)
from .structures import Partition, partition_from_json, set_partitions

EXHAUSTIVE_ORDER_CAP = 7
EXTENSION_CHECK_CAP = 5
DIRECT_MCCS_CAP = 9
MAX_MCCS_N = 49


@dataclass(frozen=True)
class Transversal:
    """One cell per row, ``cols[i]`` in row ``i``, covering every column and symbol once."""

    order: int
    cols: tuple[int, ...]
    symbols: tuple[int, ...]

    def __post_init__(self):
        r = list(range(self.order))
        if sorted(self.cols) != r or sorted(self.symbols) != r:
            raise MubrelError(f"not a transversal: cols {self.cols}, symbols {self.symbols}")

    @property
    def mask(self) -> int:
        return sum(1 << (i * self.order + c) for i, c in enumerate(self.cols))


@dataclass
class SearchCertificate:
    kind: str  # "mate-found" | "no-mate" | "max-count" | "degenerate"
    order: int | None = None
    n: int | None = None
    count: int | None = None
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    bound: str | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.order is not None:
            out["order"] = self.order
        if self.n is not None:
            out["n"] = self.n
        out["count"] = self.count
        out["witnesses"] = [w.to_json() if hasattr(w, "to_json") else w for w in self.witnesses]
        out["stats"] = dict(self.stats)
        if self.bound is not None:
            out["bound"] = self.bound
        return out


def _stats(enumerated=0, nodes=0, transversals=0, start=None):
    elapsed = 0 if start is None else int((time.perf_counter() - start) * 1000)
    return {
        "enumerated": enumerated,
        "nodes": nodes,
        "transversals": transversals,
        "elapsed_ms": elapsed,
    }


# Reduced squares ------------------------------------------------------------


def _check_order(d):
    if d < 1:
        raise MubrelError(f"order must be positive, got {d}")
    if d > EXHAUSTIVE_ORDER_CAP:
        raise CapExceeded(f"exhaustive search at order {d} exceeds cap {EXHAUSTIVE_ORDER_CAP}")


def enumerate_reduced(d: int):
    """Yield every reduced Latin square of order ``d`` in lexicographic row-major order."""
    _check_order(d)
    grid = [[0] * d for _ in range(d)]
    rows = [0] * d
    cols = [0] * d
    for k in range(d):
        grid[0][k] = grid[k][0] = k
        rows[0] |= 1 << k
        cols[k] |= 1 << k
        if k:
            rows[k] |= 1 << k
            cols[0] |= 1 << k
    cells = [(i, j) for i in range(1, d) for j in range(1, d)]
    if d == 1:
        yield LatinSquare(((0,),))
        return

    def rec(c):
        if c == len(cells):
            yield LatinSquare(tuple(map(tuple, grid)))
            return
        i, j = cells[c]
        used = rows[i] | cols[j]
        for s in range(d):
            bit = 1 << s
            if used & bit:
                continue
            grid[i][j] = s
            rows[i] |= bit
            cols[j] |= bit
            yield from rec(c + 1)
            rows[i] ^= bit
            cols[j] ^= bit

    yield from rec(0)


def count_reduced(d: int) -> int:
    return sum(1 for _ in enumerate_reduced(d))


def count_reduced_rowwise(d: int) -> int:
    """Independent count: build squares a whole row at a time from permutations."""
    if d < 1:
        raise MubrelError(f"order must be positive, got {d}")
    if d == 1:
        return 1
    perms = {
        i: [p for p in itertools.permutations(range(d)) if p[0] == i] for i in range(1, d)
    }
    first = tuple(range(d))

    def rec(i, placed):
        if i == d:
            return 1
        total = 0
        for p in perms[i]:
            if all(all(p[c] != q[c] for c in range(d)) for q in placed):
                total += rec(i + 1, placed + [p])
        return total

    return rec(1, [first])


# Transversals and mates -----------------------------------------------------


def transversals(sq: LatinSquare) -> list[Transversal]:
    d = sq.d
    g = sq.grid
    out = []
    cols = [0] * d
    syms = [0] * d

    def rec(i, colmask, symmask):
        if i == d:
            out.append(Transversal(d, tuple(cols), tuple(syms)))
            return
        row = g[i]
        for c in range(d):
            s = row[c]
            if colmask >> c & 1 or symmask >> s & 1:
                continue
            cols[i], syms[i] = c, s
            rec(i + 1, colmask | 1 << c, symmask | 1 << s)

    rec(0, 0, 0)
    return out


def _mate_search(sq: LatinSquare):
    """``(mate or None, transversal count, solver nodes)``."""
    d = sq.d
    ts = transversals(sq)
    solution, nodes = exact_cover(d * d, [t.mask for t in ts])
    if solution is None:
        return None, len(ts), nodes
    grid = [[0] * d for _ in range(d)]
    for idx in solution:
        t = ts[idx]
        symbol = t.cols[0]
        for i, c in enumerate(t.cols):
            grid[i][c] = symbol
    return LatinSquare(grid), len(ts), nodes


def find_orthogonal_mate(sq: LatinSquare) -> SearchCertificate:
    _check_order(sq.d)
    start = time.perf_counter()
    mate, nt, nodes = _mate_search(sq)
    stats = _stats(1, nodes, nt, start)
    if mate is None:
        return SearchCertificate("no-mate", order=sq.d, count=0, witnesses=[sq], stats=stats)
    if not are_orthogonal(sq, mate):
        raise AssertionError("mate search returned a non-orthogonal square")
    return SearchCertificate("mate-found", order=sq.d, count=1, witnesses=[sq, mate], stats=stats)


def sweep_reduced(d: int) -> SearchCertificate:
    """Run the mate search on every reduced square of order ``d``.

    ``no-mate`` means none of them has a mate; otherwise the certificate is
    ``mate-found`` with the first mated square and its mate.
    """
    start = time.perf_counter()
    enumerated = nodes = total_t = 0
    first = None
    for sq in enumerate_reduced(d):
        mate, nt, nn = _mate_search(sq)
        enumerated += 1
        nodes += nn
        total_t += nt
        if mate is not None and first is None:
            first = (sq, mate)
    stats = _stats(enumerated, nodes, total_t, start)
    if first is None:
        return SearchCertificate("no-mate", order=d, count=0, stats=stats)
    sq, mate = first
    if not are_orthogonal(sq, mate):
        raise AssertionError("mate search returned a non-orthogonal square")
    return SearchCertificate("mate-found", order=d, count=1, witnesses=[sq, mate], stats=stats)


def extension_candidates(d: int):
    """Every Latin square of order ``d`` whose first row is ``0 1 .. d-1``."""
    for red in enumerate_reduced(d):
        for perm in itertools.permutations(red.grid[1:]):
            yield LatinSquare((red.grid[0],) + perm)


def find_extension(squares, d: int):
    """A square orthogonal to all of ``squares``, or ``None``, with the candidate count.

    Any such square can be relabelled to have first row ``0 .. d-1`` without
    losing orthogonality, so only those candidates are tried.
    """
    seen = 0
    for cand in extension_candidates(d):
        seen += 1
        if all(are_orthogonal(cand, s) for s in squares):
            return cand, seen
    return None, seen


def max_mols(d: int) -> SearchCertificate:
    """Largest set of mutually orthogonal Latin squares of order ``d``, with witnesses.

    The upper bound is ``d - 1`` in general (the squares can be normalised
    to share a first row, and then the entries at cell ``(1, 0)`` must be
    distinct and avoid the symbol ``0``).  For small prime powers the bound
    is additionally confirmed by showing no square extends the witness set.
    """
    if d < 2:
        raise MubrelError(f"order {d} is degenerate; need d >= 2")
    pk = prime_power(d)
    if pk is not None and d <= GF_MOLS_CAP:
        start = time.perf_counter()
        squares = gf_mols(d)
        seen, bound = 0, "d-1"
        if d <= EXTENSION_CHECK_CAP:
            ext, seen = find_extension(squares, d)
            if ext is not None:
                raise AssertionError(f"order {d}: a square extends a set of d-1 MOLS")
            bound = "d-1; maximality confirmed by exhaustive extension search"
        stats = _stats(enumerated=seen, start=start)
        return SearchCertificate(
            "max-count", order=d, count=len(squares), witnesses=squares, stats=stats, bound=bound
        )
    _check_order(d)
    sweep = sweep_reduced(d)
    if sweep.kind != "no-mate":
        # only order 6 reaches here under the order cap
        raise AssertionError(f"order {d}: mated squares found; deeper search not implemented")
    witness = next(enumerate_reduced(d))
    return SearchCertificate(
        "max-count",
        order=d,
        count=1,
        witnesses=[witness],
        stats=sweep.stats,
        bound="no reduced square has an orthogonal mate",
    )


# Partition families ---------------------------------------------------------


def _max_clique(adj: list[int]):
    """Largest clique in a graph given as neighbour bitmasks."""
    best: list[int] = []
    nodes = 0

    def rec(clique, cand):
        nonlocal best, nodes
        nodes += 1
        if len(clique) > len(best):
            best = list(clique)
        if len(clique) + bin(cand).count("1") <= len(best):
            return
        while cand:
            if len(clique) + bin(cand).count("1") <= len(best):
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            rec(clique, cand & adj[v])
            clique.pop()

    rec([], (1 << len(adj)) - 1)
    return best, nodes


def direct_mccs_search(n: int):
    """Largest family of pairwise complementary partitions of ``n`` points, by clique search.

    Candidates are all uniform partitions (a non-uniform partition has no
    complement at all).  Returns ``(family, stats)``.
    """
    if n < 2:
        raise MubrelError(f"n={n} is degenerate")
    if n > DIRECT_MCCS_CAP:
        raise CapExceeded(f"direct family search on n={n} exceeds cap {DIRECT_MCCS_CAP}")
    start = time.perf_counter()
    cands = [p for p in set_partitions(n) if is_uniform(p)]
    adj = [0] * len(cands)
    for i, j in itertools.combinations(range(len(cands)), 2):
        if are_complementary(cands[i], cands[j]):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    clique, nodes = _max_clique(adj)
    family = MccsFamily(n, tuple(cands[i] for i in clique))
    return family, _stats(len(cands), nodes, 0, start)


def complementary_partitions(p: Partition):
    """Every partition complementary to the uniform partition ``p``."""
    if not is_uniform(p) or not p.blocks:
        return
    first, rest = p.blocks[0], p.blocks[1:]
    for choice in itertools.product(*(itertools.permutations(b) for b in rest)):
        blocks = [(x,) + tuple(perm[k] for perm in choice) for k, x in enumerate(first)]
        yield Partition(p.n, tuple(blocks))


def find_complementary_triple(p: Partition):
    """Two partitions forming, with ``p``, three mutually complementary ones; or ``None``."""
    comps = list(complementary_partitions(p))
    masks = [c.masks() for c in comps]
    for i, j in itertools.combinations(range(len(comps)), 2):
        if all(
            (x := a & b) and not x & (x - 1) for a in masks[i] for b in masks[j]
        ):
            return comps[i], comps[j]
    return None


def _shape_pair(n: int):
    """Rows/columns of the most balanced nontrivial grid, or singletons/whole set."""
    a = max((k for k in range(2, math.isqrt(n) + 1) if n % k == 0), default=None)
    if a is None:
        return Partition.singletons(n), Partition.whole(n)
    b = n // a
    rows = Partition(n, tuple(tuple(i * b + j for j in range(b)) for i in range(a)))
    cols = Partition(n, tuple(tuple(i * b + j for i in range(a)) for j in range(b)))
    return rows, cols


def max_mccs(n: int, cross_check: bool | None = None) -> SearchCertificate:
    """Largest family of mutually complementary structures on ``n`` points.

    Square ``n = d*d`` reduces to :func:`max_mols`; any other ``n`` admits
    exactly two.  Families up to ``n = 9`` are also recomputed by direct
    clique search unless ``cross_check`` is false.
    """
    if n < 1:
        raise MubrelError(f"n must be positive, got {n}")
    if n == 1:
        return SearchCertificate(
            "degenerate",
            n=1,
            count=None,
            witnesses=[Partition.whole(1).to_json()],
            stats=_stats(),
            bound="the one partition of a point is complementary to itself",
        )
    d = math.isqrt(n)
    square = d * d == n
    gf_ok = square and prime_power(d) is not None and d <= GF_MOLS_CAP
    if n > MAX_MCCS_N and not gf_ok:
        raise CapExceeded(f"max_mccs on n={n} exceeds cap {MAX_MCCS_N}")
    if square:
        mols = max_mols(d)
        family = mols_to_mccs(mols.witnesses, d)
        stats, bound = dict(mols.stats), f"{mols.bound} (as MOLS of order {d})"
    else:
        family = MccsFamily(n, _shape_pair(n))
        stats, bound = _stats(), "n is not a perfect square: no three are mutually complementary"
    if not verify_mccs(family):
        raise AssertionError("witness family failed re-verification")
    if cross_check is None:
        cross_check = n <= DIRECT_MCCS_CAP
    if cross_check:
        direct, dstats = direct_mccs_search(n)
        if len(direct) != len(family) or not verify_mccs(direct):
            raise AssertionError(
                f"n={n}: reduction gives {len(family)}, direct search gives {len(direct)}"
            )
        stats["direct_search_nodes"] = dstats["nodes"]
    return SearchCertificate(
        "max-count",
        n=n,
        count=len(family),
        witnesses=[p.to_json() for p in family.partitions],
        stats=stats,
        bound=bound,
    )


def certificate_family(cert: SearchCertificate) -> MccsFamily:
    return MccsFamily(cert.n, tuple(partition_from_json(w, cert.n) for w in cert.witnesses))


def certificate_squares(cert: SearchCertificate) -> list[LatinSquare]:
    squares = list(cert.witnesses)
    if first_non_orthogonal(squares) is not None:
        raise MubrelError("certificate witnesses are not mutually orthogonal")
    return squares
