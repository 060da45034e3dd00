"""The worked examples, rerun from the bundled fixture files.

Element labels are 0-based: the published examples number points from 1,
so every label here is one less.
"""

from __future__ import annotations

import json
from importlib import resources

from .complementarity import (
    are_complementary_structures,
    family_from_json,
    has_complement,
    verify_mccs,
)
from .mols import are_orthogonal, mccs_to_mols, mols_to_mccs, normalize_symbols, parse_mols
from .structures import classical_points, structure_from_json, unbiased_points

# (fixture, classical points, unbiased points)
POINT_CLAIMS = [
    ("pair_singletons.json", [[0], [1]], [[0, 1]]),
    ("pair_whole.json", [[0, 1]], [[0], [1]]),
    ("nonuniform.json", [[0, 2], [1]], [[0, 1], [1, 2]]),
]


def fixture_text(name: str) -> str:
    return resources.files("mubrel").joinpath("fixtures", name).read_text()


def load_structure(name):
    return structure_from_json(json.loads(fixture_text(name)))


def load_family(name):
    return family_from_json(json.loads(fixture_text(name)))


def _members(points):
    return [list(p.members) for p in points]


def checks():
    """Yield ``(name, passed, detail)`` for every reproduced example."""
    for name, classical, unbiased in POINT_CLAIMS:
        cs = load_structure(name)
        for mode in ("fast", "oracle"):
            got_c = _members(classical_points(cs, mode))
            got_u = _members(unbiased_points(cs, mode))
            yield (
                f"{name} points ({mode})",
                got_c == classical and got_u == unbiased,
                f"classical {got_c}, unbiased {got_u}",
            )

    a, b = load_structure("pair_singletons.json"), load_structure("pair_whole.json")
    for mode in ("fast", "oracle"):
        ok = are_complementary_structures(a, b, mode)
        yield f"two-point pair complementary ({mode})", ok, str(ok)

    nu = load_structure("nonuniform.json")
    yield "nonuniform structure has no complement", not has_complement(nu), "sizes 2 and 1"

    fam4, fam9 = load_family("family4.json"), load_family("family9.json")
    yield "4-point family is MCCS", verify_mccs(fam4) and len(fam4) == 3, f"{len(fam4)} members"
    yield "9-point family is MCCS", verify_mccs(fam9) and len(fam9) == 4, f"{len(fam9)} members"

    squares = parse_mols(fixture_text("mols3.txt"))
    yield "3x3 squares orthogonal", are_orthogonal(*squares), "2 squares of order 3"

    built = mols_to_mccs(squares, 3)
    yield (
        "3x3 squares -> 9-point family",
        built.partitions == fam9.partitions,
        "; ".join(str(p) for p in built.partitions),
    )

    table, back = mccs_to_mols(fam9)
    same = [normalize_symbols(s) for s in back] == [normalize_symbols(s) for s in squares]
    yield (
        "9-point family -> 3x3 squares",
        table.cells == ((0, 1, 2), (3, 4, 5), (6, 7, 8)) and same,
        f"table {[list(r) for r in table.cells]}",
    )


def reproduce_paper():
    return list(checks())
