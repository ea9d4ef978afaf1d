"""
Finite groupoids as explicit partial composition tables.

Arrows and objects are dense integer indices. Identities are ordinary arrows;
``identity[x]`` is the identity arrow of object ``x``. Composition is
category-style: ``compose(g, h)`` is "g after h" and is defined exactly when
``dom[g] == ran[h]``. An undefined product is ``None``, never an exception.

A FiniteGroupoid is plain data and may be invalid; ``validate`` decides.
Every builder and the parser validate before returning.
"""

import json
from dataclasses import dataclass
from itertools import product

from .report import ValidationReport


class GroupoidError(ValueError):
    pass


class GroupoidFormatError(GroupoidError):
    """Interchange text that cannot be read as a table at all."""


class GroupoidAxiomError(GroupoidError):
    """A well-formed table that fails the groupoid axioms."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class FiniteGroupoid:
    n_objects: int
    dom: tuple
    ran: tuple
    inv: tuple
    identity: tuple
    table: tuple  # table[g][h] = gh or None
    names: tuple = None

    @property
    def n_arrows(self):
        return len(self.dom)

    @property
    def arrows(self):
        return range(len(self.dom))

    @property
    def objects(self):
        return range(self.n_objects)

    def compose(self, g, h):
        return self.table[g][h]

    def is_identity(self, g):
        return self.identity[self.dom[g]] == g

    def name(self, g):
        if self.names is None:
            return str(g)
        return self.names[g]

    def object_name(self, x):
        return self.name(self.identity[x])

    def identities(self):
        return list(self.identity)

    def composable_pairs(self):
        t = self.table
        return [(g, h) for g in self.arrows for h in self.arrows if t[g][h] is not None]

    def index_of(self, name):
        if self.names is None:
            return int(name)
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no arrow named {name!r}") from None

    def __repr__(self):
        return f"<FiniteGroupoid: {self.n_objects} objects, {self.n_arrows} arrows>"


def compose(G, g, h):
    """``gh`` if ``d(g) = r(h)``, else ``None``."""
    return G.table[g][h]


def _structural_problems(G, report):
    n, m = G.n_arrows, G.n_objects
    for attr in ("ran", "inv"):
        if len(getattr(G, attr)) != n:
            report.add("malformed", (attr,), f"{attr} has length {len(getattr(G, attr))}, expected {n}")
    if len(G.identity) != m:
        report.add("malformed", ("identity",), f"identity has length {len(G.identity)}, expected {m}")
    if len(G.table) != n or any(len(row) != n for row in G.table):
        report.add("malformed", ("table",), f"composition table is not {n}x{n}")
    if G.names is not None and len(G.names) != n:
        report.add("malformed", ("names",), "one name per arrow required")
    if report.violations:
        return
    for g in range(n):
        for attr, bound in (("dom", m), ("ran", m), ("inv", n)):
            v = getattr(G, attr)[g]
            if not (isinstance(v, int) and 0 <= v < bound):
                report.add("malformed", (g,), f"{attr}[{g}] = {v!r} out of range")
        for h in range(n):
            v = G.table[g][h]
            if v is not None and not (isinstance(v, int) and 0 <= v < n):
                report.add("malformed", (g, h), f"comp[{g}][{h}] = {v!r} out of range")
    for x in range(m):
        v = G.identity[x]
        if not (isinstance(v, int) and 0 <= v < n):
            report.add("malformed", (x,), f"identity[{x}] = {v!r} out of range")


def validate(G):
    """
    Check every groupoid axiom instance. Returns a ValidationReport whose
    violations name the axiom and the witnessing arrows; empty means valid.
    Malformed tables (bad lengths, out-of-range indices) are reported under
    the ``malformed`` class and stop further checking.
    """
    report = ValidationReport()
    _structural_problems(G, report)
    if report.violations:
        return report

    nm = G.name
    dom, ran, inv, t = G.dom, G.ran, G.inv, G.table

    for x in G.objects:
        e = G.identity[x]
        if dom[e] != x or ran[e] != x:
            report.add("identity", (nm(e),), f"identity of object {x} has endpoints {dom[e]}->{ran[e]}")
    if len(set(G.identity)) != len(G.identity):
        report.add("identity", tuple(nm(e) for e in G.identity), "objects share an identity arrow")

    for g, h in product(G.arrows, G.arrows):
        gh = t[g][h]
        if (gh is not None) != (dom[g] == ran[h]):
            report.add("composability", (nm(g), nm(h)),
                       "product defined" if gh is not None else "composable pair has no product")
            continue
        if gh is not None and (dom[gh] != dom[h] or ran[gh] != ran[g]):
            report.add("endpoints", (nm(g), nm(h)), f"product {nm(gh)} has wrong domain or range")

    for g in G.arrows:
        er, ed = G.identity[ran[g]], G.identity[dom[g]]
        if t[er][g] != g or t[g][ed] != g:
            report.add("identity", (nm(g),), "identity law fails")

    for g in G.arrows:
        gi = inv[g]
        if inv[gi] != g:
            report.add("inverse", (nm(g),), "inverse is not an involution")
        if t[g][gi] != G.identity[ran[g]]:
            report.add("inverse", (nm(g),), "g g^-1 is not r(g)")
        if t[gi][g] != G.identity[dom[g]]:
            report.add("inverse", (nm(g),), "g^-1 g is not d(g)")

    n = G.n_arrows
    for g, h in product(G.arrows, G.arrows):
        gh = t[g][h]
        if gh is None:
            continue
        row_gh, row_h, row_g = t[gh], t[h], t[g]
        for k in range(n):
            left = row_gh[k]
            hk = row_h[k]
            right = None if hk is None else row_g[hk]
            if left != right:
                report.add("associativity", (nm(g), nm(h), nm(k)), "(gh)k != g(hk)")
    return report


def is_valid(G):
    return not validate(G).violations


def _checked(G):
    report = validate(G)
    if report.violations:
        first = report.violations[0]
        raise GroupoidAxiomError(f"{first.axiom} violated at {first.witnesses}: {first.message}", report)
    return G


def from_products(n_objects, dom, ran, identity, products, names=None):
    """
    Assemble a groupoid from endpoint data and an explicit product rule
    ``products(g, h) -> gh`` called on composable pairs only. Inverses are
    found by search. The result is validated.
    """
    n = len(dom)
    table = []
    for g in range(n):
        row = []
        for h in range(n):
            row.append(products(g, h) if dom[g] == ran[h] else None)
        table.append(tuple(row))
    inv = []
    for g in range(n):
        cands = [k for k in range(n) if table[g][k] is not None and table[g][k] == identity[ran[g]]
                 and table[k][g] == identity[dom[g]]]
        if not cands:
            raise GroupoidAxiomError(f"arrow {g} has no inverse")
        inv.append(cands[0])
    G = FiniteGroupoid(n_objects, tuple(dom), tuple(ran), tuple(inv), tuple(identity), tuple(table),
                       None if names is None else tuple(names))
    return _checked(G)


def _group_problem(table):
    n = len(table)
    if n == 0:
        return "empty table"
    for i, row in enumerate(table):
        if len(row) != n:
            return f"row {i} has length {len(row)}"
        for v in row:
            if not (isinstance(v, int) and 0 <= v < n):
                return f"entry {v!r} in row {i} out of range"
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return f"not associative at ({a}, {b}, {c})"
    units = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
    if not units:
        return "no identity element"
    e = units[0]
    for a in range(n):
        if not any(table[a][b] == e == table[b][a] for b in range(n)):
            return f"element {a} has no inverse"
    return None


def build_from_group_table(table, names=None):
    """One-object groupoid from an n x n group multiplication table."""
    table = [list(row) for row in table]
    problem = _group_problem(table)
    if problem:
        raise GroupoidError(f"not a group table: {problem}")
    n = len(table)
    e = next(e for e in range(n) if all(table[e][x] == x for x in range(n)))
    if names is None:
        names = ["1" if a == e else f"a{a}" for a in range(n)]
    return from_products(1, [0] * n, [0] * n, [e], lambda g, h: table[g][h], names)


def cyclic_group_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def build_cyclic(n, generator_name="t"):
    names = ["1"] + [generator_name if k == 1 else f"{generator_name}^{k}" for k in range(1, n)]
    return build_from_group_table(cyclic_group_table(n), names)


def build_pair_groupoid(n):
    """Arrows (x, y) from y to x for all objects x, y; (x,y)(y,z) = (x,z)."""
    if n < 1:
        raise GroupoidError("pair groupoid needs at least one object")
    pairs = [(x, y) for x in range(n) for y in range(n)]
    dom = [y for x, y in pairs]
    ran = [x for x, y in pairs]
    identity = [x * n + x for x in range(n)]
    names = [f"({x},{y})" for x, y in pairs]
    return from_products(n, dom, ran, identity,
                         lambda g, h: pairs[g][0] * n + pairs[h][1], names)


def build_ex1():
    """
    The two-component example: G1 = {e, f, g, g^-1} with g: f -> e, and
    G2 = {u, h} with h = h^-1 a loop at u.
    """
    names = ["e", "f", "g", "g^-1", "u", "h"]
    E, F, g, gi, U, h = range(6)
    dom = [0, 1, 1, 0, 2, 2]
    ran = [0, 1, 0, 1, 2, 2]
    rule = {
        (E, E): E, (E, g): g, (g, F): g, (F, F): F, (F, gi): gi, (gi, E): gi,
        (g, gi): E, (gi, g): F,
        (U, U): U, (U, h): h, (h, U): h, (h, h): U,
    }
    return from_products(3, dom, ran, [E, F, U], lambda a, b: rule[a, b], names)


def disjoint_union(G, H):
    n, m = G.n_arrows, G.n_objects
    shift = lambda row: tuple(None if v is None else v + n for v in row)
    table = [tuple(row) + (None,) * H.n_arrows for row in G.table]
    table += [(None,) * n + shift(row) for row in H.table]
    gn = G.names or tuple(str(a) for a in G.arrows)
    hn = H.names or tuple(str(a) for a in H.arrows)
    names = tuple(gn) + tuple(hn)
    if len(set(names)) != len(names):
        names = tuple(f"{a}_1" for a in gn) + tuple(f"{a}_2" for a in hn)
    U = FiniteGroupoid(
        m + H.n_objects,
        G.dom + tuple(x + m for x in H.dom),
        G.ran + tuple(x + m for x in H.ran),
        G.inv + tuple(a + n for a in H.inv),
        G.identity + tuple(a + n for a in H.identity),
        tuple(table),
        names,
    )
    return _checked(U)


def product_with_group(P, table):
    """
    The groupoid P x H for a groupoid P and a group H (given by a table):
    arrows (p, a), composed componentwise. Used to make random test groupoids.
    """
    H = build_from_group_table(table)
    k = H.n_arrows
    arrows = [(p, a) for p in P.arrows for a in range(k)]
    idx = {pa: i for i, pa in enumerate(arrows)}
    dom = [P.dom[p] for p, a in arrows]
    ran = [P.ran[p] for p, a in arrows]
    e = H.identity[0]
    identity = [idx[P.identity[x], e] for x in P.objects]
    names = [f"{P.name(p)}.{H.name(a)}" for p, a in arrows]

    def rule(i, j):
        (p, a), (q, b) = arrows[i], arrows[j]
        return idx[P.table[p][q], H.table[a][b]]

    return from_products(P.n_objects, dom, ran, identity, rule, names)


def subgroupoid(G, arrows):
    """Full sub-groupoid on a set of arrows closed under the structure, reindexed."""
    arrows = sorted(arrows)
    amap = {a: i for i, a in enumerate(arrows)}
    objs = sorted({G.dom[a] for a in arrows} | {G.ran[a] for a in arrows})
    omap = {x: i for i, x in enumerate(objs)}
    table = tuple(
        tuple(None if G.table[g][h] is None else amap[G.table[g][h]] for h in arrows)
        for g in arrows
    )
    S = FiniteGroupoid(
        len(objs),
        tuple(omap[G.dom[a]] for a in arrows),
        tuple(omap[G.ran[a]] for a in arrows),
        tuple(amap[G.inv[a]] for a in arrows),
        tuple(amap[G.identity[x]] for x in objs),
        table,
        None if G.names is None else tuple(G.names[a] for a in arrows),
    )
    return _checked(S)


@dataclass(frozen=True)
class Component:
    objects: tuple
    arrows: tuple
    groupoid: FiniteGroupoid


def connected_components(G):
    """Partition into connected full sub-groupoids, ordered by least object."""
    parent = list(G.objects)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.arrows:
        a, b = find(G.dom[g]), find(G.ran[g])
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks = {}
    for x in G.objects:
        blocks.setdefault(find(x), []).append(x)
    out = []
    for root in sorted(blocks):
        objs = tuple(blocks[root])
        arrs = tuple(g for g in G.arrows if find(G.dom[g]) == root)
        out.append(Component(objs, arrs, subgroupoid(G, arrs)))
    return out


# --- interchange format ------------------------------------------------------

GROUPOID_KEYS = frozenset({"objects", "arrows", "identity", "comp"})


def groupoid_to_json(G):
    return {
        "objects": G.n_objects,
        "arrows": [
            {"name": G.name(g), "dom": G.dom[g], "ran": G.ran[g], "inv": G.inv[g]}
            for g in G.arrows
        ],
        "identity": list(G.identity),
        "comp": [[g, h, G.table[g][h]] for g, h in G.composable_pairs()],
    }


def serialize_groupoid(G):
    return json.dumps(groupoid_to_json(G), indent=1)


def _require_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise GroupoidFormatError(f"{what} must be an integer, got {value!r}")
    return value


def groupoid_from_json(data, extra_keys=(), check=True):
    """
    Build a groupoid from already-decoded interchange JSON. With ``check``
    (the default) the axioms are validated too; ``check=False`` only enforces
    the format, so that invalid tables can be inspected.
    """
    if not isinstance(data, dict):
        raise GroupoidFormatError("top level must be a JSON object")
    unknown = set(data) - GROUPOID_KEYS - set(extra_keys)
    if unknown:
        raise GroupoidFormatError(f"unknown keys: {sorted(unknown)}")
    missing = GROUPOID_KEYS - set(data)
    if missing:
        raise GroupoidFormatError(f"missing keys: {sorted(missing)}")

    m = _require_int(data["objects"], "objects")
    arrows = data["arrows"]
    if not isinstance(arrows, list):
        raise GroupoidFormatError("arrows must be an array")
    n = len(arrows)
    names, dom, ran, inv = [], [], [], []
    for i, a in enumerate(arrows):
        if not isinstance(a, dict):
            raise GroupoidFormatError(f"arrow {i} must be an object")
        extra = set(a) - {"name", "dom", "ran", "inv"}
        if extra:
            raise GroupoidFormatError(f"arrow {i}: unknown keys {sorted(extra)}")
        for key in ("dom", "ran", "inv"):
            if key not in a:
                raise GroupoidFormatError(f"arrow {i}: missing {key!r}")
        d = _require_int(a["dom"], f"arrow {i} dom")
        r = _require_int(a["ran"], f"arrow {i} ran")
        v = _require_int(a["inv"], f"arrow {i} inv")
        if not 0 <= d < m or not 0 <= r < m:
            raise GroupoidFormatError(f"arrow {i}: object index out of range (dom={d}, ran={r})")
        if not 0 <= v < n:
            raise GroupoidFormatError(f"arrow {i}: inverse index {v} out of range")
        names.append(str(a.get("name", i)))
        dom.append(d)
        ran.append(r)
        inv.append(v)
    if len(set(names)) != len(names):
        raise GroupoidFormatError("arrow names must be distinct")

    identity = data["identity"]
    if not isinstance(identity, list) or len(identity) != m:
        raise GroupoidFormatError(f"identity must be an array of length {m}")
    for x, e in enumerate(identity):
        _require_int(e, f"identity[{x}]")
        if not 0 <= e < n:
            raise GroupoidFormatError(f"identity[{x}]: arrow index {e} out of range")

    table = [[None] * n for _ in range(n)]
    comp = data["comp"]
    if not isinstance(comp, list):
        raise GroupoidFormatError("comp must be an array")
    for i, triple in enumerate(comp):
        if not (isinstance(triple, list) and len(triple) == 3):
            raise GroupoidFormatError(f"comp entry {i} must be a [g, h, gh] triple")
        g, h, gh = (_require_int(v, f"comp entry {i}") for v in triple)
        for v in (g, h, gh):
            if not 0 <= v < n:
                raise GroupoidFormatError(f"comp entry {i}: arrow index {v} out of range")
        if table[g][h] is not None and table[g][h] != gh:
            raise GroupoidFormatError(f"comp entry {i}: conflicting product for ({g}, {h})")
        table[g][h] = gh

    G = FiniteGroupoid(m, tuple(dom), tuple(ran), tuple(inv), tuple(identity),
                       tuple(tuple(row) for row in table), tuple(names))
    return _checked(G) if check else G


def load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupoidFormatError(f"JSON syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def parse_groupoid(text, extra_keys=(), check=True):
    return groupoid_from_json(load_json(text), extra_keys, check)


def mutate_groupoid(G, rng):
    """
    Return a copy of G with one entry of the comp or inv table redirected to a
    different arrow, plus a short description. Used for fuzzing ``validate``.
    """
    n = G.n_arrows
    if n < 2:
        raise GroupoidError("need at least two arrows to mutate")
    if rng.random() < 0.75:
        pairs = G.composable_pairs()
        g, h = pairs[rng.randrange(len(pairs))]
        old = G.table[g][h]
        new = rng.choice([a for a in G.arrows if a != old])
        table = [list(row) for row in G.table]
        table[g][h] = new
        M = FiniteGroupoid(G.n_objects, G.dom, G.ran, G.inv, G.identity,
                           tuple(tuple(r) for r in table), G.names)
        return M, f"comp[{G.name(g)}][{G.name(h)}]: {G.name(old)} -> {G.name(new)}"
    g = rng.randrange(n)
    new = rng.choice([a for a in G.arrows if a != G.inv[g]])
    inv = list(G.inv)
    inv[g] = new
    M = FiniteGroupoid(G.n_objects, G.dom, G.ran, tuple(inv), G.identity, G.table, G.names)
    return M, f"inv[{G.name(g)}]: {G.name(G.inv[g])} -> {G.name(new)}"
