import json
import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from pargroupoid.fixtures import fixture, random_groupoid
from pargroupoid.groupoid import (
    FiniteGroupoid,
    GroupoidAxiomError,
    GroupoidError,
    GroupoidFormatError,
    build_cyclic,
    build_ex1,
    build_from_group_table,
    build_pair_groupoid,
    compose,
    connected_components,
    disjoint_union,
    groupoid_to_json,
    mutate_groupoid,
    parse_groupoid,
    serialize_groupoid,
    validate,
)


def brute_force_is_groupoid(G):
    """Independent axiom scan written directly from the definitions."""
    n = G.n_arrows
    for g, h in product(range(n), repeat=2):
        defined = G.table[g][h] is not None
        if defined != (G.dom[g] == G.ran[h]):
            return False
    for g, h, k in product(range(n), repeat=3):
        if G.dom[g] == G.ran[h] and G.dom[h] == G.ran[k]:
            if G.table[G.table[g][h]][k] != G.table[g][G.table[h][k]]:
                return False
    for g in range(n):
        if G.table[G.identity[G.ran[g]]][g] != g or G.table[g][G.identity[G.dom[g]]] != g:
            return False
        if G.table[g][G.inv[g]] != G.identity[G.ran[g]] or G.table[G.inv[g]][g] != G.identity[G.dom[g]]:
            return False
    return True


def test_ex1_shape(ex1):
    assert ex1.n_arrows == 6
    assert ex1.n_objects == 3
    assert validate(ex1).ok
    assert brute_force_is_groupoid(ex1)


def test_ex1_products(ex1):
    e, f, g, gi, u, h = range(6)
    assert compose(ex1, g, gi) == e
    assert compose(ex1, g, g) is None
    assert compose(ex1, h, h) == u
    assert compose(ex1, gi, g) == f


def test_ex1_corrupted_inverse_law(ex1):
    table = [list(r) for r in ex1.table]
    table[2][3] = 1  # g g^-1 := f
    bad = FiniteGroupoid(ex1.n_objects, ex1.dom, ex1.ran, ex1.inv, ex1.identity,
                         tuple(map(tuple, table)), ex1.names)
    report = validate(bad)
    assert ("inverse", ("g",)) in {(v.axiom, v.witnesses) for v in report.violations}


def test_malformed_is_reported_not_raised(ex1):
    bad = FiniteGroupoid(ex1.n_objects, ex1.dom, ex1.ran, (0, 1, 9, 2, 4, 5), ex1.identity,
                         ex1.table, ex1.names)
    report = validate(bad)
    assert report.axioms() == {"malformed"}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pair_groupoid(n):
    G = build_pair_groupoid(n)
    assert G.n_arrows == n * n
    assert len(G.identity) == n
    assert validate(G).ok and brute_force_is_groupoid(G)
    assert len(connected_components(G)) == 1


def test_pair_groupoid_rejects_zero():
    with pytest.raises(GroupoidError):
        build_pair_groupoid(0)


def test_group_tables():
    Z2 = build_from_group_table([[0, 1], [1, 0]])
    assert (Z2.n_objects, Z2.n_arrows) == (1, 2)
    Z3 = build_cyclic(3)
    assert (Z3.n_objects, Z3.n_arrows) == (1, 3)
    with pytest.raises(GroupoidError, match="inverse|associative"):
        build_from_group_table([[0, 1], [1, 1]])
    with pytest.raises(GroupoidError, match="identity"):
        build_from_group_table([[0, 0], [0, 0]])


def test_components(ex1):
    comps = connected_components(ex1)
    assert [sorted(ex1.name(a) for a in c.arrows) for c in comps] == [
        ["e", "f", "g", "g^-1"], ["h", "u"]]
    assert len(connected_components(disjoint_union(build_cyclic(2), build_cyclic(2)))) == 2


def test_roundtrip(named_groupoid):
    _, G = named_groupoid
    assert parse_groupoid(serialize_groupoid(G)) == G


def test_parse_errors(ex1):
    data = groupoid_to_json(ex1)
    missing = dict(data, comp=[t for t in data["comp"] if t[:2] != [2, 3]])
    with pytest.raises(GroupoidAxiomError):
        parse_groupoid(json.dumps(missing))

    dangling = dict(data, comp=data["comp"] + [[0, 17, 0]])
    with pytest.raises(GroupoidFormatError, match="17"):
        parse_groupoid(json.dumps(dangling))

    with pytest.raises(GroupoidFormatError, match="unknown"):
        parse_groupoid(json.dumps(dict(data, extra=1)))

    with pytest.raises(GroupoidFormatError, match="line 1"):
        parse_groupoid('{"objects": 3,')


def test_parse_without_check_returns_invalid(ex1):
    data = groupoid_to_json(ex1)
    data["comp"] = [t for t in data["comp"] if t[:2] != [2, 3]]
    G = parse_groupoid(json.dumps(data), check=False)
    assert not validate(G).ok


seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_random_groupoids_valid(seed):
    G = random_groupoid(random.Random(seed))
    assert validate(G).ok
    assert brute_force_is_groupoid(G)
    comps = connected_components(G)
    assert sum(len(c.arrows) for c in comps) == G.n_arrows
    assert sum(len(c.objects) for c in comps) == G.n_objects
    for g, h in G.composable_pairs():
        gh = G.table[g][h]
        assert G.dom[gh] == G.dom[h] and G.ran[gh] == G.ran[g]
    for g in G.arrows:
        assert compose(G, G.inv[g], g) == G.identity[G.dom[g]]
        assert compose(G, g, G.inv[g]) == G.identity[G.ran[g]]


@pytest.mark.parametrize("name", ["ex1", "z2", "z3", "pair2", "pair3", "z2-disjoint-z2"])
def test_mutations_rejected(name):
    G = fixture(name)
    rng = random.Random(name)
    for _ in range(30):
        M, what = mutate_groupoid(G, rng)
        assert not brute_force_is_groupoid(M), what
        assert not validate(M).ok, what
