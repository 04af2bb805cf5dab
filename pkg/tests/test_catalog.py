import json
import math
from itertools import permutations

import pytest

from permquot.catalog import (CatalogError, all_subgroups_direct, enumerate_subgroup_classes, export_catalog,
                              outer_automorphism_checks, primitive_groups_of_degree, simple_group_cross_checks,
                              simple_group_table, subgroup_lattice)
from permquot.group import PermGroup, is_nilpotent, is_solvable
from permquot.perm import Permutation
from permquot.structure import is_primitive, is_transitive

# classes / subgroups of S_n, from the independent direct enumeration below
COUNTS = {1: (1, 1), 2: (2, 2), 3: (4, 6), 4: (11, 30), 5: (19, 156), 6: (56, 1455)}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_class_and_subgroup_counts(n):
    lattice = subgroup_lattice(n)
    classes, total = COUNTS[n]
    assert len(lattice.classes) == classes
    assert sum(c.class_size for c in lattice.classes) == total == len(lattice.class_of)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_completeness_against_direct_enumeration(n):
    direct = all_subgroups_direct(n)
    assert set(subgroup_lattice(n).class_of) == direct
    assert sum(c.class_size for c in enumerate_subgroup_classes(n)) == len(direct)


def test_s3_classes():
    assert [c.order for c in enumerate_subgroup_classes(3)] == [1, 2, 3, 6]


def test_range_errors():
    with pytest.raises(CatalogError):
        enumerate_subgroup_classes(7)
    with pytest.raises(CatalogError):
        enumerate_subgroup_classes(0)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_flags_recompute(n):
    for c in enumerate_subgroup_classes(n):
        G = PermGroup(list(c.representative.generators), n)
        assert G.order() == c.order == len(c.elements)
        assert (is_transitive(G), is_primitive(G), is_nilpotent(G), is_solvable(G)) == \
            (c.transitive, c.primitive, c.nilpotent, c.solvable)


@pytest.mark.parametrize("n", [4, 5])
def test_class_size_times_normalizer(n):
    # normalizer by sifting all of S_n against the representative's chain
    for c in enumerate_subgroup_classes(n)[::3]:
        G = c.representative
        norm = 0
        for s in permutations(range(n)):
            sigma = Permutation(s)
            if all(G.contains(~sigma * g * sigma) for g in G.generators):
                norm += 1
        assert norm * c.class_size == math.factorial(n) == c.normalizer_order * c.class_size


def test_normal_subgroups():
    lattice = subgroup_lattice(4)
    S4 = lattice.classes[-1]
    assert [len(N) for N in lattice.normal_subgroups_of(S4)] == [1, 4, 12, 24]


@pytest.mark.parametrize("n, orders", [
    (2, [2]), (3, [3, 6]), (4, [12, 24]), (5, [5, 10, 20, 60, 120]), (6, [60, 120, 360, 720]),
])
def test_primitive_rosters(n, orders):
    roster = primitive_groups_of_degree(n)
    assert roster.complete
    assert sorted(G.order() for _, G in roster.groups) == orders


def test_named_roster_beyond_exhaustive_range():
    roster = primitive_groups_of_degree(7)
    assert not roster.complete
    assert sorted(G.order() for _, G in roster.groups) == [7, 14, 42, 2520, 5040]
    roster = primitive_groups_of_degree(10)
    assert {name for name, _ in roster.groups} >= {"PSL2:9", "PGL2:9", "PGammaL2:9"}
    assert all(is_primitive(G) for _, G in roster.groups)


def test_export_schema():
    data = json.loads(export_catalog(3))
    assert [d["order"] for d in data] == ["1", "2", "3", "6"]
    assert set(data[0]) == {"generators", "degree", "order", "class_size", "flags"}
    assert data[3]["flags"] == {"transitive": True, "primitive": True, "nilpotent": False, "solvable": True}


def test_simple_group_table_rows():
    names = [d.name for d in simple_group_table()]
    assert names == ["A5", "A6", "A7", "A8", "PSL(2,7)", "PSL(2,8)", "PSL(2,11)", "PSL(3,3)"]
    for datum in simple_group_table():
        checks = simple_group_cross_checks(datum)
        assert checks and all(c.holds for c in checks), datum.name


def test_outer_automorphism_rows():
    for datum in simple_group_table():
        checks = outer_automorphism_checks(datum)
        assert all(c.holds for c in checks), [c for c in checks if not c.holds]
    a6 = next(d for d in simple_group_table() if d.name == "A6")
    first = outer_automorphism_checks(a6)[0]
    assert "excluded" in first.description and first.detail.startswith("8 >= 6")
