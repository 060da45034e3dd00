import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mubrel.errors import FormatError, MubrelError
from mubrel.rel import (
    Rel,
    compose,
    dagger,
    format_rel,
    identity,
    is_bijective_function,
    is_unitary,
    parse_rel,
    swap,
    tensor,
)


def rels(max_dim=4, dom=None, cod=None):
    dims = st.integers(0, max_dim)

    @st.composite
    def build(draw):
        m = draw(dims) if dom is None else dom
        n = draw(dims) if cod is None else cod
        bits = draw(st.lists(st.booleans(), min_size=m * n, max_size=m * n))
        return Rel(np.array(bits, dtype=bool).reshape(m, n))

    return build()


def compose_by_pairs(r, s):
    """Composite read straight off the definition, on sets of pairs."""
    return {(x, z) for x, y in r.pairs() for y2, z in s.pairs() if y == y2}


def test_identity_examples():
    assert identity(0).entries.shape == (0, 0)
    assert identity(1).pairs() == [(0, 0)]
    assert identity(3).pairs() == [(0, 0), (1, 1), (2, 2)]
    with pytest.raises(MubrelError):
        identity(-1)


def test_compose_examples():
    r = Rel.from_pairs(2, 2, [(0, 1)])
    s = Rel.from_pairs(2, 2, [(1, 0)])
    assert compose(r, s).pairs() == [(0, 0)]
    a = Rel.from_pairs(1, 2, [(0, 0), (0, 1)])
    b = Rel.from_pairs(2, 1, [(0, 0), (1, 0)])
    assert compose(a, b) == Rel.from_pairs(1, 1, [(0, 0)])


def test_compose_mismatch_names_sizes():
    with pytest.raises(MubrelError, match="3 != 2"):
        compose(Rel.empty(2, 3), Rel.empty(2, 2))


def test_dagger_examples():
    assert dagger(identity(3)) == identity(3)
    r = Rel.from_pairs(2, 3, [(0, 1)])
    assert dagger(r) == Rel.from_pairs(3, 2, [(1, 0)])


def test_tensor_examples():
    assert tensor(identity(2), identity(3)) == identity(6)
    flip = Rel.from_pairs(2, 2, [(0, 1), (1, 0)])
    one = Rel.from_pairs(1, 1, [(0, 0)])
    assert tensor(flip, one) == flip
    assert tensor(one, flip) == flip


def test_tensor_pair_encoding():
    a = Rel.from_pairs(2, 3, [(1, 2)])
    b = Rel.from_pairs(3, 2, [(0, 1), (2, 0)])
    # ((x, x'), (y, y')) -> (x*|dom b| + x', y*|cod b| + y')
    assert tensor(a, b).pairs() == [(1 * 3 + 0, 2 * 2 + 1), (1 * 3 + 2, 2 * 2 + 0)]


def test_unitary_examples():
    assert is_unitary(identity(4))
    assert is_unitary(Rel.from_pairs(2, 2, [(0, 1), (1, 0)]))
    assert not is_unitary(Rel.from_pairs(2, 2, [(0, 0), (0, 1)]))
    assert not is_unitary(Rel.empty(2, 3))
    assert is_unitary(identity(0))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_unitary_matches_bijection_exhaustively(n):
    for bits in itertools.product([False, True], repeat=n * n):
        r = Rel(np.array(bits, dtype=bool).reshape(n, n))
        assert is_unitary(r) == is_bijective_function(r)


def test_unitary_rejects_rectangular_exhaustively():
    for m, n in [(1, 2), (2, 3), (3, 2)]:
        for bits in itertools.product([False, True], repeat=m * n):
            assert not is_unitary(Rel(np.array(bits, dtype=bool).reshape(m, n)))


def test_swap_is_involutive_and_unitary():
    s = swap(2, 3)
    assert is_unitary(s)
    assert compose(s, swap(3, 2)) == identity(6)


@given(rels())
def test_dagger_involution(r):
    assert dagger(dagger(r)) == r


@given(st.data())
def test_compose_agrees_with_pair_definition(data):
    m, k, n = (data.draw(st.integers(0, 4)) for _ in range(3))
    r, s = data.draw(rels(dom=m, cod=k)), data.draw(rels(dom=k, cod=n))
    assert set(compose(r, s).pairs()) == compose_by_pairs(r, s)


@given(st.data())
def test_dagger_reverses_composition(data):
    m, k, n = (data.draw(st.integers(0, 4)) for _ in range(3))
    r, s = data.draw(rels(dom=m, cod=k)), data.draw(rels(dom=k, cod=n))
    assert dagger(compose(r, s)) == compose(dagger(s), dagger(r))


@given(st.data())
def test_compose_associative(data):
    a, b, c, d = (data.draw(st.integers(0, 4)) for _ in range(4))
    r, s, t = data.draw(rels(dom=a, cod=b)), data.draw(rels(dom=b, cod=c)), data.draw(rels(dom=c, cod=d))
    assert compose(compose(r, s), t) == compose(r, compose(s, t))


@given(rels(3), rels(3), rels(3))
def test_tensor_associative(a, b, c):
    assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


@given(st.data())
def test_interchange_law(data):
    a1, a2, a3, b1, b2, b3 = (data.draw(st.integers(0, 3)) for _ in range(6))
    A, C = data.draw(rels(dom=a1, cod=a2)), data.draw(rels(dom=a2, cod=a3))
    B, D = data.draw(rels(dom=b1, cod=b2)), data.draw(rels(dom=b2, cod=b3))
    assert compose(tensor(A, B), tensor(C, D)) == tensor(compose(A, C), compose(B, D))


@given(rels())
def test_identity_laws(r):
    assert compose(r, identity(r.cod_size)) == r
    assert compose(identity(r.dom_size), r) == r


@given(rels())
def test_text_round_trip(r):
    assert parse_rel(format_rel(r)) == r


def test_rel_is_immutable_and_hashable():
    r = Rel.from_pairs(2, 2, [(0, 1)])
    with pytest.raises(ValueError):
        r.entries[0, 0] = True
    assert {r, Rel.from_pairs(2, 2, [(0, 1)])} == {r}


@pytest.mark.parametrize(
    "text, where",
    [("", None), ("2\n", "line 1"), ("2 2\n0 5\n", "line 2"), ("2 2\n\n0 x\n", "line 3")],
)
def test_parse_rel_errors(text, where):
    with pytest.raises(FormatError) as exc:
        parse_rel(text)
    assert exc.value.where == where
