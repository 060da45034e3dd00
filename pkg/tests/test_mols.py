import itertools
import random

import pytest
from hypothesis import given, strategies as st

from mubrel.complementarity import MccsFamily, are_complementary, verify_mccs
from mubrel.errors import CapExceeded, FormatError, MubrelError
from mubrel.mols import (
    FieldSpec,
    LatinSquare,
    are_orthogonal,
    canonicalize,
    field_ops,
    format_mols,
    gf_mols,
    is_irreducible,
    is_latin,
    mccs_to_mols,
    mols_to_mccs,
    normalize_symbols,
    parse_mols,
    parse_square,
    prime_power,
)
from mubrel.reproduce import fixture_text, load_family
from mubrel.search import complementary_partitions
from mubrel.structures import Partition, set_partitions

# After subtracting 1 from every label of the published 3x3 pair.
EXAMPLE_A = LatinSquare(((0, 1, 2), (1, 2, 0), (2, 0, 1)))
EXAMPLE_B = LatinSquare(((0, 2, 1), (1, 0, 2), (2, 1, 0)))


def all_latin(d):
    """Every Latin square of order d, by filtering all row-permutation tuples."""
    perms = list(itertools.permutations(range(d)))
    out = []
    for rows in itertools.product(perms, repeat=d):
        if all(len(set(col)) == d for col in zip(*rows)):
            out.append(LatinSquare(rows))
    return out


def rows_cols(d):
    n = d * d
    rows = Partition(n, tuple(tuple(j * d + k for k in range(d)) for j in range(d)))
    cols = Partition(n, tuple(tuple(j * d + k for j in range(d)) for k in range(d)))
    return rows, cols


def induced_square(p, d):
    where = p.block_of()
    return LatinSquare(tuple(tuple(where[j * d + k] for k in range(d)) for j in range(d)))


def test_is_latin_examples():
    assert is_latin(EXAMPLE_A.grid)
    assert is_latin([[0, 1], [1, 0]])
    assert not is_latin([[0, 1], [0, 1]])
    with pytest.raises(MubrelError):
        is_latin([[0, 2], [2, 0]])
    with pytest.raises(MubrelError):
        is_latin([[0, 1]])


def test_latin_count_order_4():
    assert len(all_latin(3)) == 12
    assert len(all_latin(4)) == 576


def test_orthogonal_examples():
    assert are_orthogonal(EXAMPLE_A, EXAMPLE_B)
    for d in (2, 3, 4):
        for sq in all_latin(d):
            assert not are_orthogonal(sq, sq)
    two = all_latin(2)
    assert len(two) == 2
    assert not any(are_orthogonal(a, b) for a in two for b in two)
    with pytest.raises(MubrelError):
        are_orthogonal(EXAMPLE_A, two[0])


def test_mccs_to_mols_published_family():
    table, squares = mccs_to_mols(load_family("family9.json"))
    assert table.cells == ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    assert [normalize_symbols(s) for s in squares] == [normalize_symbols(EXAMPLE_A), normalize_symbols(EXAMPLE_B)]
    assert are_orthogonal(*squares)


def test_mccs_to_mols_small():
    table, squares = mccs_to_mols(load_family("family4.json"))
    assert table.cells == ((0, 1), (2, 3))
    assert squares == [LatinSquare(((0, 1), (1, 0)))]
    f2 = MccsFamily(4, load_family("family4.json").partitions[:2])
    assert mccs_to_mols(f2)[1] == []


def test_mccs_to_mols_rejects_bad_families():
    f9 = load_family("family9.json")
    with pytest.raises(MubrelError, match="not complementary"):
        mccs_to_mols(MccsFamily(9, f9.partitions[:3] + (f9.partitions[2],)))
    with pytest.raises(MubrelError, match="not square"):
        mccs_to_mols(MccsFamily(2, (Partition.singletons(2), Partition.whole(2))))
    with pytest.raises(MubrelError):
        mccs_to_mols(MccsFamily(9, f9.partitions[:1]))


def test_mols_to_mccs_examples():
    assert mols_to_mccs([EXAMPLE_A, EXAMPLE_B], 3) == load_family("family9.json")
    base = mols_to_mccs([], 2)
    assert base.partitions == (Partition(4, ((0, 1), (2, 3))), Partition(4, ((0, 2), (1, 3))))
    f = mols_to_mccs([LatinSquare(((0, 1), (1, 0)))], 2)
    assert f == load_family("family4.json")
    assert f.partitions[2] == Partition(4, ((0, 3), (1, 2)))


def test_mols_to_mccs_rejects_non_orthogonal():
    with pytest.raises(MubrelError, match="squares 0 and 1"):
        mols_to_mccs([EXAMPLE_A, EXAMPLE_A], 3)
    with pytest.raises(MubrelError, match="order"):
        mols_to_mccs([EXAMPLE_A], 4)


# fields -------------------------------------------------------------------


def test_small_fields():
    add, mul = field_ops(FieldSpec(2))
    assert add == ((0, 1), (1, 0)) and mul == ((0, 0), (0, 1))
    add, mul = field_ops(FieldSpec(3))
    assert add == tuple(tuple((a + b) % 3 for b in range(3)) for a in range(3))
    assert mul == tuple(tuple(a * b % 3 for b in range(3)) for a in range(3))
    add, mul = field_ops(FieldSpec(2, 2, (1, 1)))
    assert mul[2][2] == 3


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_field_axioms(d):
    add, mul = field_ops(FieldSpec(*prime_power(d)))
    r = range(d)
    for a, b in itertools.product(r, repeat=2):
        assert add[a][b] == add[b][a] and mul[a][b] == mul[b][a]
    for a, b, c in itertools.product(r, repeat=3):
        assert add[add[a][b]][c] == add[a][add[b][c]]
        assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
        assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]
    for a in r:
        assert add[0][a] == a and mul[1][a] == a
        assert 0 in add[a]
        if a:
            assert 1 in mul[a]


def _has_root(p, coeffs):
    poly = list(coeffs) + [1]
    return any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))


@pytest.mark.parametrize("p, k", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_irreducible_matches_root_test_for_low_degree(p, k):
    for coeffs in itertools.product(range(p), repeat=k):
        assert is_irreducible(p, coeffs) == (not _has_root(p, coeffs))


def test_degree_four_irreducibles_over_z2():
    # the degree-4 irreducibles over GF(2): x^4+x+1, x^4+x^3+1, x^4+x^3+x^2+x+1
    found = {c for c in itertools.product(range(2), repeat=4) if is_irreducible(2, c)}
    assert found == {(1, 1, 0, 0), (1, 0, 0, 1), (1, 1, 1, 1)}


def test_field_spec_rejections():
    with pytest.raises(MubrelError, match="not prime"):
        FieldSpec(4)
    with pytest.raises(MubrelError, match="reducible"):
        FieldSpec(2, 2, (1, 0))
    with pytest.raises(MubrelError, match="coefficients"):
        FieldSpec(2, 3, (1, 1))
    assert FieldSpec(5, 2).modulus is not None


def test_prime_power():
    assert [d for d in range(1, 30) if prime_power(d)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29
    ]
    assert prime_power(27) == (3, 3)


# finite-field MOLS -----------------------------------------------------------


def test_gf_mols_two():
    assert gf_mols(2) == [LatinSquare(((0, 1), (1, 0)))]


def test_gf_mols_three_matches_published_pair():
    got = gf_mols(3)
    assert {normalize_symbols(s) for s in got} == {normalize_symbols(EXAMPLE_A), normalize_symbols(EXAMPLE_B)}
    assert {canonicalize(s) for s in got} == {canonicalize(EXAMPLE_A), canonicalize(EXAMPLE_B)}


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_gf_mols_pairwise_orthogonal(d):
    squares = gf_mols(d)
    assert len(squares) == d - 1
    assert len(set(squares)) == d - 1
    for a, b in itertools.combinations(squares, 2):
        assert are_orthogonal(a, b)


def test_gf_mols_with_explicit_modulus():
    alt = gf_mols(16, FieldSpec(2, 4, (1, 0, 0, 1)))
    assert len(alt) == 15
    assert all(are_orthogonal(a, b) for a, b in itertools.combinations(alt, 2))


def test_gf_mols_rejections():
    with pytest.raises(MubrelError):
        gf_mols(6)
    with pytest.raises(CapExceeded):
        gf_mols(17)
    with pytest.raises(MubrelError):
        gf_mols(4, FieldSpec(3))


# canonical forms ---------------------------------------------------------------


def test_canonicalize_examples():
    reduced = LatinSquare(((0, 1, 2), (1, 2, 0), (2, 0, 1)))
    assert canonicalize(reduced) == reduced
    c = canonicalize(EXAMPLE_B)
    assert c.grid[0] == (0, 1, 2)
    assert [r[0] for r in c.grid] == [0, 1, 2]


@st.composite
def square_and_relabel(draw):
    d = draw(st.integers(2, 5))
    base = random.Random(draw(st.integers(0, 10**6)))
    sq = [[(i + j) % d for j in range(d)] for i in range(d)]
    for perm_rows in (True, False):
        perm = list(range(d))
        base.shuffle(perm)
        sq = [sq[p] for p in perm] if perm_rows else [[r[p] for p in perm] for r in sq]
    sigma = draw(st.permutations(range(d)))
    relabelled = [[sigma[v] for v in r] for r in sq]
    return LatinSquare(sq), LatinSquare(relabelled)


@given(square_and_relabel())
def test_canonicalize_symbol_relabelling_invariant(pair):
    sq, relabelled = pair
    c = canonicalize(sq)
    assert c == canonicalize(relabelled)
    assert canonicalize(c) == c


# round trips and the lemma -----------------------------------------------------


def _gf_families():
    for d in (2, 3, 4, 5, 7, 8):
        squares = gf_mols(d)
        for k in range(len(squares) + 1):
            yield d, squares[:k]


def test_round_trip_exact_from_mols():
    for d, squares in _gf_families():
        f = mols_to_mccs(squares, d)
        assert verify_mccs(f)
        table, back = mccs_to_mols(f)
        assert mols_to_mccs(back, d) == f
        assert back == squares


def test_round_trip_up_to_table_relabelling():
    rng = random.Random(3)
    for d, squares in _gf_families():
        if d > 4:
            continue
        n = d * d
        perm = list(range(n))
        rng.shuffle(perm)
        f = mols_to_mccs(squares, d)
        moved = MccsFamily(
            n, tuple(Partition(n, tuple(tuple(perm[x] for x in b) for b in p.blocks)) for p in f.partitions)
        )
        table, back = mccs_to_mols(moved)
        cell = {x: j * d + k for j, row in enumerate(table.cells) for k, x in enumerate(row)}
        relabelled = MccsFamily(
            n, tuple(Partition(n, tuple(tuple(cell[x] for x in b) for b in p.blocks)) for p in moved.partitions)
        )
        assert mols_to_mccs(back, d) == relabelled


def test_lemma_equivalence_order_3():
    rows, cols = rows_cols(3)
    third = [p for p in set_partitions(9) if are_complementary(p, rows) and are_complementary(p, cols)]
    # partitions are unlabelled: one per Latin square up to its d! symbol relabellings
    assert len(third) == len(all_latin(3)) // 6
    for s, t in itertools.product(third, repeat=2):
        assert are_orthogonal(induced_square(s, 3), induced_square(t, 3)) == are_complementary(s, t)


def test_lemma_equivalence_order_4():
    rows, cols = rows_cols(4)
    third = [p for p in complementary_partitions(rows) if are_complementary(p, cols)]
    assert len(third) == len(all_latin(4)) // 24
    squares = [induced_square(p, 4) for p in third]
    orth = 0
    for i, j in itertools.combinations(range(len(third)), 2):
        o = are_orthogonal(squares[i], squares[j])
        assert o == are_complementary(third[i], third[j])
        orth += o
    assert orth > 0


# text formats ----------------------------------------------------------------


def test_text_round_trip():
    squares = gf_mols(5)
    assert parse_mols(format_mols(squares)) == squares
    assert parse_mols(fixture_text("mols3.txt")) == [EXAMPLE_A, EXAMPLE_B]
    assert parse_square("2\n0 1\n1 0\n") == LatinSquare(((0, 1), (1, 0)))


@pytest.mark.parametrize(
    "text, where",
    [
        ("x\n0 1\n", "line 1"),
        ("2\n0 1\n", "line 1"),
        ("2\n0 1\n1 5\n", "line 3"),
        ("2\n0 1\n0 1\n", "line 1"),
        ("", None),
    ],
)
def test_text_errors(text, where):
    with pytest.raises(FormatError) as exc:
        parse_mols(text)
    assert exc.value.where == where
