"""
The Birget-Rhodes expansion of a finite groupoid.

Its arrows are pairs (A, g) where A is a set of arrows with range d(g) that
contains both d(g) and g^-1. Carriers are stored as int bitmasks over the
arrow indices of the base groupoid. Two pairs compose as

    (A, g) . (B, h) = (B, gh)    when gh exists and A = hB,

and are otherwise not composable. The expansion is itself returned as a
FiniteGroupoid, so everything in ``groupoid`` applies to it.
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .groupoid import FiniteGroupoid, GroupoidFormatError, groupoid_from_json, groupoid_to_json

DEFAULT_CAP = 50_000


class CapExceeded(RuntimeError):
    def __init__(self, predicted, cap):
        super().__init__(f"expansion would have {predicted} arrows, cap is {cap}")
        self.predicted = predicted
        self.cap = cap


class BRPair(NamedTuple):
    carrier: int  # bitmask over base arrows
    arrow: int


def members(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(arrows):
    m = 0
    for a in arrows:
        m |= 1 << a
    return m


def make_pair(carrier, arrow):
    """BRPair from any iterable of arrow indices."""
    return BRPair(mask_of(carrier), arrow)


def y_set(G, g):
    """Arrows h with r(h) = d(g)."""
    return frozenset(h for h in G.arrows if G.ran[h] == G.dom[g])


def x_set(G, g):
    """Arrows h with r(h) = r(g)."""
    return frozenset(h for h in G.arrows if G.ran[h] == G.ran[g])


def br_count(G):
    """Closed-form size of the expansion: 2^(|Y_e|-1) per identity, 2^(|Y_g|-2) otherwise."""
    total = 0
    for g in G.arrows:
        y = sum(1 for h in G.arrows if G.ran[h] == G.dom[g])
        total += 2 ** (y - 1) if G.is_identity(g) else 2 ** (y - 2)
    return total


def is_br_pair(G, p):
    A, g = p
    y = mask_of(y_set(G, g))
    need = (1 << G.identity[G.dom[g]]) | (1 << G.inv[g])
    return A & ~y == 0 and A & need == need


def translate(G, g, mask):
    """The set gA = {ga : a in A}; every a must have range d(g)."""
    row = G.table[g]
    out = 0
    for a in members(mask):
        ga = row[a]
        if ga is None:
            raise ValueError(f"{G.name(g)} does not compose with {G.name(a)}")
        out |= 1 << ga
    return out


def _carrier_key(mask):
    return members(mask)


def enumerate_br(G, cap=DEFAULT_CAP):
    """All valid pairs, arrow-major, carriers in lexicographic order of their sorted members."""
    predicted = br_count(G)
    if predicted > cap:
        raise CapExceeded(predicted, cap)
    out = []
    for g in G.arrows:
        required = {G.identity[G.dom[g]], G.inv[g]}
        optional = sorted(y_set(G, g) - required)
        base = mask_of(required)
        carriers = []
        for bits in range(1 << len(optional)):
            m = base
            for i, a in enumerate(optional):
                if bits >> i & 1:
                    m |= 1 << a
            carriers.append(m)
        carriers.sort(key=_carrier_key)
        out.extend(BRPair(m, g) for m in carriers)
    return out


def br_compose(G, p, q):
    A, g = p
    B, h = q
    gh = G.table[g][h]
    if gh is None or A != translate(G, h, B):
        return None
    return BRPair(B, gh)


def br_inverse(G, p):
    A, g = p
    return BRPair(translate(G, g, A), G.inv[g])


def br_domain(G, p):
    A, g = p
    return BRPair(A, G.identity[G.dom[g]])


def br_range(G, p):
    A, g = p
    return BRPair(translate(G, g, A), G.identity[G.ran[g]])


def pair_label(G, p):
    A, g = p
    return "({" + ",".join(G.name(a) for a in members(A)) + "}," + G.name(g) + ")"


@dataclass(frozen=True, eq=False)
class BRGroupoid:
    source: FiniteGroupoid
    base: FiniteGroupoid
    pairs: tuple
    index: dict

    def pair(self, i):
        return self.pairs[i]

    def arrow_of(self, carrier, arrow):
        """Expansion arrow index of the pair (carrier, arrow); carrier as iterable or mask."""
        m = carrier if isinstance(carrier, int) else mask_of(carrier)
        return self.index[BRPair(m, arrow)]

    def label(self, i):
        return self.base.name(i)

    def __len__(self):
        return len(self.pairs)


def build_br_groupoid(G, cap=DEFAULT_CAP):
    predicted = br_count(G)
    if predicted > cap:
        raise CapExceeded(predicted, cap)
    return _build(G)


@lru_cache(maxsize=64)
def _build(G):
    pairs = enumerate_br(G, cap=float("inf"))
    index = {p: i for i, p in enumerate(pairs)}
    object_pairs = [p for p in pairs if G.is_identity(p.arrow)]
    obj = {p: x for x, p in enumerate(object_pairs)}
    dom = tuple(obj[br_domain(G, p)] for p in pairs)
    ran = tuple(obj[br_range(G, p)] for p in pairs)
    inv = tuple(index[br_inverse(G, p)] for p in pairs)
    identity = tuple(index[p] for p in object_pairs)

    # only pairs with ran(q) = dom(p) can compose
    by_range = {}
    for j, q in enumerate(pairs):
        by_range.setdefault(ran[j], []).append(j)
    n = len(pairs)
    table = []
    for i, p in enumerate(pairs):
        row = [None] * n
        for j in by_range.get(dom[i], ()):
            r = br_compose(G, p, pairs[j])
            if r is not None:
                row[j] = index[r]
        table.append(tuple(row))
    names = tuple(pair_label(G, p) for p in pairs)
    base = FiniteGroupoid(len(object_pairs), dom, ran, inv, identity, tuple(table), names)
    return BRGroupoid(G, base, tuple(pairs), index)


def expansion_to_json(br):
    G = br.source
    data = groupoid_to_json(br.base)
    data["br_labels"] = [
        {"arrow": G.name(p.arrow), "carrier": [G.name(a) for a in members(p.carrier)]}
        for p in br.pairs
    ]
    return data


def serialize_expansion(br):
    return json.dumps(expansion_to_json(br), indent=1)


def parse_expansion(text):
    """Read ``expand`` output back: (expansion groupoid, list of (arrow name, carrier names))."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupoidFormatError(f"JSON syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if "br_labels" not in data:
        raise GroupoidFormatError("missing br_labels")
    base = groupoid_from_json(data, extra_keys=("br_labels",))
    labels = data["br_labels"]
    if not isinstance(labels, list) or len(labels) != base.n_arrows:
        raise GroupoidFormatError("br_labels must have one entry per arrow")
    out = []
    for i, lab in enumerate(labels):
        if not (isinstance(lab, dict) and set(lab) == {"arrow", "carrier"}):
            raise GroupoidFormatError(f"br_labels[{i}] must have exactly 'arrow' and 'carrier'")
        out.append((lab["arrow"], tuple(lab["carrier"])))
    return base, out
