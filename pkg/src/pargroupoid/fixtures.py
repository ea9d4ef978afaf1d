"""Named example groupoids and a random small-groupoid generator."""

import random

from .groupoid import (
    build_cyclic,
    build_ex1,
    build_from_group_table,
    build_pair_groupoid,
    disjoint_union,
    product_with_group,
)


def _z2_disjoint_z2():
    z2 = [[0, 1], [1, 0]]
    return disjoint_union(
        build_from_group_table(z2, ["1", "s"]),
        build_from_group_table(z2, ["1'", "t"]),
    )


FIXTURES = {
    "ex1": build_ex1,
    "z2": lambda: build_cyclic(2),
    "z3": lambda: build_cyclic(3, "a"),
    "pair2": lambda: build_pair_groupoid(2),
    "pair3": lambda: build_pair_groupoid(3),
    "z2-disjoint-z2": _z2_disjoint_z2,
}


def fixture(name):
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None


def all_fixtures():
    return {name: build() for name, build in FIXTURES.items()}


# small groups, as tables on 0..n-1 with 0 the identity
def _s3_table():
    from itertools import permutations
    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]


def _klein_table():
    return [[a ^ b for b in range(4)] for a in range(4)]


def _relabel(table, rng):
    """Conjugate a group table by a random permutation of its elements."""
    n = len(table)
    perm = list(range(n))
    rng.shuffle(perm)
    back = {p: i for i, p in enumerate(perm)}
    return [[perm[table[back[a]][back[b]]] for b in range(n)] for a in range(n)]


def random_group_table(rng, max_order=4):
    choices = [[[0]]]
    for n in range(2, max_order + 1):
        choices.append([[(a + b) % n for b in range(n)] for a in range(n)])
    if max_order >= 4:
        choices.append(_klein_table())
    if max_order >= 6:
        choices.append(_s3_table())
    return _relabel(rng.choice(choices), rng)


def random_groupoid(rng=None, max_components=2, max_objects=3, max_order=3):
    """
    A disjoint union of groupoids pair(n) x H with H a randomly relabelled
    small group. Every finite groupoid is of this shape up to isomorphism.
    """
    rng = rng or random.Random()
    G = None
    for _ in range(rng.randint(1, max_components)):
        n = rng.randint(1, max_objects)
        table = random_group_table(rng, max_order)
        part = product_with_group(build_pair_groupoid(n), table)
        G = part if G is None else disjoint_union(G, part)
    return G
