import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pargroupoid.br import x_set
from pargroupoid.fields import GF, QQ
from pargroupoid.fixtures import fixture
from pargroupoid.groupoid import serialize_groupoid
from pargroupoid.kpar import images_via_extraction
from pargroupoid.linalg import ExactMatrix
from pargroupoid.partial_rep import (
    PartialRep,
    RepresentationError,
    check_epsilon_relations,
    check_factorization,
    check_partial_rep,
    check_ps_partition,
    default_trivial_rep,
    epsilon,
    mutate_rep,
    p_subset,
    parse_rep,
    pi_tilde,
    rep_from_regular,
    rep_to_json,
    serialize_rep,
    subsets,
    trivial_rep,
)

E, F, G_, GI, U, H = range(6)
SMALL = ["ex1", "z2", "z3", "pair2", "z2-disjoint-z2"]


# --- independent oracle: plain nested lists --------------------------------

def mm(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if a[i][k]:
                aik, bk, row = a[i][k], b[k], out[i]
                for j in range(n):
                    row[j] += aik * bk[j]
    return out


def naive_is_partial_rep(G, mats):
    """Axioms checked on list-of-lists matrices, no shared linear algebra."""
    n = len(mats[0])
    inv, t = G.inv, G.table
    for g in G.arrows:
        for h in G.arrows:
            if G.dom[g] != G.ran[h]:
                continue
            gh = t[g][h]
            if mm(mm(mats[g], mats[h]), mats[inv[h]]) != mm(mats[gh], mats[inv[h]]):
                return False
            if mm(mats[inv[g]], mm(mats[g], mats[h])) != mm(mats[inv[g]], mats[gh]):
                return False
    for g in G.arrows:
        if mm(mm(mats[g], mats[inv[g]]), mats[g]) != mats[g]:
            return False
    total = [[sum(mats[e][i][j] for e in G.identity) for j in range(n)] for i in range(n)]
    if total != [[int(i == j) for j in range(n)] for i in range(n)]:
        return False
    zero = [[0] * n for _ in range(n)]
    return all(mm(mats[e], mats[f]) == zero for e in G.identity for f in G.identity if e != f)


def as_lists(rep):
    return [[list(r) for r in M.rows] for M in rep.images]


def matrix_unit_rep(G, field=QQ):
    """pi(g) = E_{r(g), d(g)}: a global representation, hence partial."""
    n = G.n_objects
    images = []
    for g in G.arrows:
        rows = [[0] * n for _ in range(n)]
        rows[G.ran[g]][G.dom[g]] = 1
        images.append(ExactMatrix.from_rows(rows, field))
    return PartialRep(G, n, tuple(images), field)


def valid_reps(name, field=QQ):
    G = fixture(name)
    return [default_trivial_rep(G, field), matrix_unit_rep(G, field), rep_from_regular(G, field)]


# --- examples ---------------------------------------------------------------

def test_trivial_rep_examples(ex1):
    rep = trivial_rep(ex1, {0: {0, 1}, 1: {2}, 2: set()})
    assert rep.dim == 3
    assert rep(E) == ExactMatrix.diagonal([1, 1, 0])
    assert rep(G_).is_zero()
    assert check_partial_rep(rep).ok
    with pytest.raises(RepresentationError, match="overlap"):
        trivial_rep(ex1, {0: {0, 1}, 1: {1}, 2: {2}})
    with pytest.raises(RepresentationError, match="cover"):
        trivial_rep(ex1, {0: {0}, 1: {2}})
    with pytest.raises(RepresentationError, match="unknown"):
        trivial_rep(ex1, {7: {0}})


def test_regular_rep_z2():
    rep = rep_from_regular(fixture("z2"))
    t = rep(1)
    assert rep.dim == 3
    assert t @ t == ExactMatrix.diagonal([0, 1, 1])
    assert t @ t @ t @ t == t @ t
    assert t @ t != ExactMatrix.identity(3)
    assert check_partial_rep(rep).ok


def test_epsilon_and_p_subset(ex1):
    rep = rep_from_regular(ex1)
    assert epsilon(rep, E) == rep(E)
    eps_g = epsilon(rep, G_)
    assert eps_g @ eps_g == eps_g
    assert p_subset(rep, E, {E, G_}) == eps_g
    assert p_subset(rep, E, {E}) == rep(E) - eps_g
    assert p_subset(rep, E, set()).is_zero()
    with pytest.raises(RepresentationError, match="identity"):
        p_subset(rep, G_, set())
    with pytest.raises(RepresentationError):
        p_subset(rep, E, {H})


def test_pi_tilde_trivial_values(ex1):
    rep = default_trivial_rep(ex1)
    hom = pi_tilde(rep)
    br = hom.source
    assert hom.images[br.arrow_of({E}, E)] == rep(E)
    assert hom.images[br.arrow_of({E, G_}, E)].is_zero()
    assert hom.images[br.arrow_of({F, GI}, G_)].is_zero()


def test_pi_tilde_rejects_invalid(ex1):
    rep = default_trivial_rep(ex1)
    bad = rep.replace(E, ExactMatrix.zeros(3))
    with pytest.raises(RepresentationError):
        pi_tilde(bad)
    assert not check_partial_rep(bad).ok


def test_shape_errors(ex1):
    rep = default_trivial_rep(ex1)
    with pytest.raises(RepresentationError, match="shape"):
        check_partial_rep(rep.replace(G_, ExactMatrix.zeros(2)))
    with pytest.raises(RepresentationError, match="over"):
        check_partial_rep(rep.replace(G_, ExactMatrix.zeros(3, field=GF(3))))


# --- properties over the valid reps ------------------------------------------

@pytest.mark.parametrize("name", SMALL)
def test_valid_reps_pass(name):
    for rep in valid_reps(name):
        report = check_partial_rep(rep)
        assert report.ok and not report.warnings
        assert naive_is_partial_rep(rep.groupoid, as_lists(rep))
        assert check_epsilon_relations(rep).ok


@pytest.mark.parametrize("name", SMALL)
def test_ps_partition_orthogonal_covariant(name):
    G = fixture(name)
    for rep in valid_reps(name):
        for e in G.identity:
            assert check_ps_partition(rep, e)
            ps = {S: p_subset(rep, e, S) for S in subsets(x_set(G, e))}
            for S, P in ps.items():
                assert P @ P == P
                for T, Q in ps.items():
                    if S != T:
                        assert (P @ Q).is_zero()
        for l in G.arrows:
            d, r = G.identity[G.dom[l]], G.identity[G.ran[l]]
            for S in subsets(x_set(G, d)):
                lS = {G.table[l][h] for h in S}
                assert rep(l) @ p_subset(rep, d, S) == p_subset(rep, r, lS) @ rep(l)


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("field", [QQ, GF(2), GF(3)], ids=str)
def test_pi_tilde_homomorphism(name, field):
    for rep in valid_reps(name, field):
        hom = pi_tilde(rep)
        assert hom.check_multiplicative().ok
        assert hom.check_unital()
        assert check_factorization(rep, hom=hom)


@pytest.mark.parametrize("name", SMALL)
def test_lift_is_unique(name):
    for rep in valid_reps(name):
        assert images_via_extraction(rep) == list(pi_tilde(rep).images)


# --- negative controls ---------------------------------------------------------

@pytest.mark.parametrize("name", SMALL)
def test_designed_mutants_rejected(name):
    rng = random.Random(name)
    for rep in valid_reps(name):
        for _ in range(20):
            bad, what = mutate_rep(rep, rng)
            assert not check_partial_rep(bad).ok, what
            assert not naive_is_partial_rep(bad.groupoid, as_lists(bad)), what


@given(st.sampled_from(SMALL), st.integers(0, 2), st.randoms(use_true_random=False),
       st.sampled_from([-1, 1, 2, Fraction(1, 2)]))
@settings(max_examples=150, deadline=None)
def test_arbitrary_entry_changes_agree_with_oracle(name, which, rnd, delta):
    rep = valid_reps(name)[which]
    g = rnd.randrange(rep.groupoid.n_arrows)
    i, j = rnd.randrange(rep.dim), rnd.randrange(rep.dim)
    M = rep(g)
    changed = rep.replace(g, M.with_entry(i, j, M[i, j] + delta))
    assert check_partial_rep(changed).ok == naive_is_partial_rep(changed.groupoid, as_lists(changed))


# --- interchange ----------------------------------------------------------------

@pytest.mark.parametrize("field", [QQ, GF(5)], ids=str)
def test_json_roundtrip(ex1, field):
    rep = rep_from_regular(ex1, field)
    back = parse_rep(serialize_rep(rep))
    assert back.field == field and back.dim == rep.dim
    assert back.images == rep.images and back.groupoid == ex1


def test_json_groupoid_by_path(tmp_path, ex1):
    (tmp_path / "g.json").write_text(serialize_groupoid(ex1))
    data = rep_to_json(default_trivial_rep(ex1), groupoid_ref="g.json")
    rep = parse_rep(json.dumps(data), base_dir=tmp_path)
    assert check_partial_rep(rep).ok


def test_json_errors(ex1):
    data = rep_to_json(default_trivial_rep(ex1))
    with pytest.raises(RepresentationError, match="unknown"):
        parse_rep(json.dumps(dict(data, colour="red")))
    with pytest.raises(RepresentationError, match="images"):
        parse_rep(json.dumps(dict(data, images=data["images"][:-1])))
    with pytest.raises(RepresentationError, match="missing"):
        parse_rep(json.dumps({k: v for k, v in data.items() if k != "dim"}))
