"""Latin squares, orthogonality, and their correspondence with complementary partitions.

A family of ``k + 2`` mutually complementary partitions of ``d*d`` points
is the same thing as ``k`` mutually orthogonal Latin squares of order
``d``: the first two partitions give the rows and columns of a table, and
each further partition colours the table's cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complementarity import GridArrangement, MccsFamily, first_failing_pair, is_square
from .errors import CapExceeded, FormatError, MubrelError
from .structures import Partition

GF_MOLS_CAP = 16


def is_latin(grid) -> bool:
    grid = [list(r) for r in grid]
    d = len(grid)
    if any(len(r) != d for r in grid):
        raise MubrelError(f"grid is not square: row lengths {[len(r) for r in grid]}")
    for r in grid:
        for v in r:
            if not isinstance(v, int) or not 0 <= v < d:
                raise MubrelError(f"symbol {v!r} outside 0..{d - 1}")
    full = list(range(d))
    return all(sorted(r) == full for r in grid) and all(sorted(c) == full for c in zip(*grid))


@dataclass(frozen=True)
class LatinSquare:
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(r) for r in self.grid)
        object.__setattr__(self, "grid", grid)
        if not is_latin(grid):
            raise MubrelError(f"not a Latin square: {[list(r) for r in grid]}")

    @property
    def d(self) -> int:
        return len(self.grid)

    def __getitem__(self, ij):
        i, j = ij
        return self.grid[i][j]

    def to_json(self):
        return [list(r) for r in self.grid]

    def __str__(self):
        return "\n".join(" ".join(map(str, r)) for r in self.grid)


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    if a.d != b.d:
        raise MubrelError(f"orders differ: {a.d} vs {b.d}")
    pairs = {(x, y) for ra, rb in zip(a.grid, b.grid) for x, y in zip(ra, rb)}
    return len(pairs) == a.d * a.d


def first_non_orthogonal(squares):
    for i, j in itertools.combinations(range(len(squares)), 2):
        if not are_orthogonal(squares[i], squares[j]):
            return i, j
    return None


def normalize_symbols(sq: LatinSquare) -> LatinSquare:
    """Relabel symbols so the first row reads ``0 1 .. d-1``."""
    relabel = {s: k for k, s in enumerate(sq.grid[0])}
    return LatinSquare(tuple(tuple(relabel[v] for v in r) for r in sq.grid))


def canonicalize(sq: LatinSquare) -> LatinSquare:
    """Reduced form: symbols relabelled by the first row, then rows sorted by first column."""
    norm = normalize_symbols(sq)
    return LatinSquare(tuple(sorted(norm.grid, key=lambda r: r[0])))


# Finite fields --------------------------------------------------------------

DEFAULT_MODULI = {
    (2, 2): (1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0),  # x^4 + x + 1
    (3, 2): (1, 0),  # x^2 + 1
}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def prime_power(d: int):
    """``(p, k)`` with ``d == p**k``, or ``None`` when ``d`` is not a prime power."""
    if d < 2:
        return None
    p = next(q for q in range(2, d + 1) if d % q == 0)
    k, rest = 0, d
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 else None


def _poly_divides(divisor, poly, p) -> bool:
    """Whether monic ``divisor`` divides ``poly`` over Z_p (coefficients low-first)."""
    rem = list(poly)
    dd = len(divisor) - 1
    for top in range(len(rem) - 1, dd - 1, -1):
        c = rem[top] % p
        if c:
            for i, a in enumerate(divisor):
                rem[top - dd + i] = (rem[top - dd + i] - c * a) % p
    return not any(v % p for v in rem[:dd])


def is_irreducible(p: int, modulus) -> bool:
    """Exhaustive factor test of the monic polynomial ``x^k + modulus`` over Z_p."""
    k = len(modulus)
    poly = list(modulus) + [1]
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divides(list(low) + [1], poly, p):
                return False
    return True


def default_modulus(p: int, k: int):
    if k == 1:
        return None
    if (p, k) in DEFAULT_MODULI:
        return DEFAULT_MODULI[(p, k)]
    for cand in itertools.product(range(p), repeat=k):
        if cand[0] and is_irreducible(p, cand):
            return cand
    raise MubrelError(f"no irreducible polynomial of degree {k} over Z_{p}")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise MubrelError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise MubrelError(f"exponent must be >= 1, got {self.k}")
        if self.k == 1:
            object.__setattr__(self, "modulus", None)
            return
        mod = self.modulus
        if mod is None:
            mod = default_modulus(self.p, self.k)
        mod = tuple(int(c) % self.p for c in mod)
        if len(mod) != self.k:
            raise MubrelError(f"modulus needs {self.k} coefficients, got {len(mod)}")
        if not is_irreducible(self.p, mod):
            raise MubrelError(f"modulus {mod} is reducible over Z_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def order(self) -> int:
        return self.p**self.k


def field_ops(spec: FieldSpec):
    """Addition and multiplication tables of GF(p^k).

    Element ``e`` encodes the polynomial whose coefficient of ``x^i`` is the
    ``i``-th base-``p`` digit of ``e``.
    """
    p, k, q = spec.p, spec.k, spec.order

    def digits(e):
        return [(e // p**i) % p for i in range(k)]

    def encode(coeffs):
        return sum(c * p**i for i, c in enumerate(coeffs))

    def mul(a, b):
        da, db = digits(a), digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for i, m in enumerate(spec.modulus):
                    prod[top - k + i] = (prod[top - k + i] - c * m) % p
        return encode(prod[:k])

    add = tuple(
        tuple(encode([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q))
        for a in range(q)
    )
    mult = tuple(tuple(mul(a, b) for b in range(q)) for a in range(q))
    return add, mult


def gf_mols(d: int, field: FieldSpec | None = None) -> list[LatinSquare]:
    """The ``d - 1`` squares ``L_a(i, j) = a*i + j`` over GF(d), one per nonzero ``a``.

    ``field`` overrides the default modulus; its order must equal ``d``.
    """
    pk = prime_power(d)
    if pk is None:
        raise MubrelError(f"{d} is not a prime power")
    if d > GF_MOLS_CAP:
        raise CapExceeded(f"gf_mols order {d} exceeds cap {GF_MOLS_CAP}")
    if field is None:
        field = FieldSpec(*pk)
    elif field.order != d:
        raise MubrelError(f"field has order {field.order}, expected {d}")
    add, mul = field_ops(field)
    squares = [
        LatinSquare(tuple(tuple(add[mul[a][i]][j] for j in range(d)) for i in range(d)))
        for a in range(1, d)
    ]
    if first_non_orthogonal(squares) is not None:
        raise AssertionError(f"GF({d}) construction produced a non-orthogonal pair")
    return squares


# Conversions ----------------------------------------------------------------


def mccs_to_mols(f: MccsFamily):
    """Table from the first two partitions, one Latin square per further partition.

    Symbol ``s`` marks the ``s``-th block (by least element) of its partition.
    """
    if len(f) < 2:
        raise MubrelError("need at least two partitions to build the table")
    for k, p in enumerate(f.partitions):
        if not is_square(p):
            raise MubrelError(f"partition {k} ({p}) is not square")
    bad = first_failing_pair(f)
    if bad is not None:
        raise MubrelError(f"partitions {bad[0]} and {bad[1]} are not complementary")
    rows, cols = f.partitions[0].masks(), f.partitions[1].masks()
    table = tuple(tuple((r & c).bit_length() - 1 for c in cols) for r in rows)
    squares = []
    for p in f.partitions[2:]:
        where = p.block_of()
        squares.append(LatinSquare(tuple(tuple(where[x] for x in row) for row in table)))
    return GridArrangement(table), squares


def mols_to_mccs(squares, d: int) -> MccsFamily:
    """Rows, columns, then one symbol-class partition per square; cell ``(j, k)`` holds ``j*d + k``."""
    squares = list(squares)
    for i, sq in enumerate(squares):
        if sq.d != d:
            raise MubrelError(f"square {i} has order {sq.d}, expected {d}")
    bad = first_non_orthogonal(squares)
    if bad is not None:
        raise MubrelError(f"squares {bad[0]} and {bad[1]} are not orthogonal")
    n = d * d
    parts = [
        Partition(n, tuple(tuple(j * d + k for k in range(d)) for j in range(d))),
        Partition(n, tuple(tuple(j * d + k for j in range(d)) for k in range(d))),
    ]
    for sq in squares:
        classes = [[] for _ in range(d)]
        for j in range(d):
            for k in range(d):
                classes[sq.grid[j][k]].append(j * d + k)
        parts.append(Partition(n, tuple(map(tuple, classes))))
    return MccsFamily(n, tuple(parts))


# Text formats ---------------------------------------------------------------


def format_square(sq: LatinSquare) -> str:
    return f"{sq.d}\n{sq}\n"


def format_mols(squares) -> str:
    return "\n".join(format_square(sq) for sq in squares)


def _parse_chunk(lines):
    (first_no, first), rest = lines[0], lines[1:]
    try:
        d = int(first)
    except ValueError:
        raise FormatError(f"expected the order, got {first!r}", f"line {first_no}") from None
    if len(rest) != d:
        raise FormatError(f"expected {d} rows after the order, got {len(rest)}", f"line {first_no}")
    grid = []
    for lineno, ln in rest:
        try:
            row = [int(v) for v in ln.split()]
        except ValueError:
            raise FormatError(f"non-integer symbol in {ln!r}", f"line {lineno}") from None
        if len(row) != d or any(not 0 <= v < d for v in row):
            raise FormatError(f"expected {d} symbols in 0..{d - 1}", f"line {lineno}")
        grid.append(row)
    try:
        return LatinSquare(grid)
    except MubrelError as exc:
        raise FormatError(str(exc), f"line {first_no}") from None


def parse_mols(text: str) -> list[LatinSquare]:
    chunks, cur = [], []
    for lineno, ln in enumerate(text.splitlines(), 1):
        if ln.strip():
            cur.append((lineno, ln.strip()))
        elif cur:
            chunks.append(cur)
            cur = []
    if cur:
        chunks.append(cur)
    if not chunks:
        raise FormatError("no squares found")
    return [_parse_chunk(c) for c in chunks]


def parse_square(text: str) -> LatinSquare:
    squares = parse_mols(text)
    if len(squares) != 1:
        raise FormatError(f"expected one square, found {len(squares)}")
    return squares[0]
