"""
Partial representations of a finite groupoid on a matrix algebra.

A candidate is any assignment of square matrices to arrows; being a partial
representation is a checked property (``check_partial_rep``), so invalid
candidates can be built and used as negative controls.

Products over sets of arrows (in ``p_subset`` and ``pi_tilde``) are taken in
a fixed order: the idempotent factors eps(h) first, h ascending, then the
complementary factors pi(e) - eps(h), h ascending. The factors commute for
valid representations, so the order only matters for reproducibility.
"""

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .algebra import Algebra, left_regular_rep, regular_matrix
from .br import DEFAULT_CAP, build_br_groupoid, members, x_set, y_set
from .fields import QQ, parse_field
from .groupoid import FiniteGroupoid, groupoid_from_json, groupoid_to_json
from .linalg import ExactMatrix, matrix_sum
from .report import ValidationReport


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PartialRep:
    groupoid: FiniteGroupoid
    dim: int
    images: tuple
    field: object = QQ

    def __call__(self, g):
        return self.images[g]

    def replace(self, g, M):
        images = list(self.images)
        images[g] = M
        return PartialRep(self.groupoid, self.dim, tuple(images), self.field)


def _check_shapes(rep):
    G = rep.groupoid
    if len(rep.images) != G.n_arrows:
        raise RepresentationError(f"{len(rep.images)} images for {G.n_arrows} arrows")
    for g, M in enumerate(rep.images):
        if M.shape != (rep.dim, rep.dim):
            raise RepresentationError(f"image of {G.name(g)} has shape {M.shape}, expected {rep.dim}x{rep.dim}")
        if M.field != rep.field:
            raise RepresentationError(f"image of {G.name(g)} is over {M.field!r}, not {rep.field!r}")


def check_partial_rep(rep):
    """
    Check axioms (i)-(iv) of a partial groupoid representation exactly.
    Consequences that must follow from them (pi(g) = pi(r(g)) pi(g) = pi(g) pi(d(g)),
    pi(g) pi(h) = 0 off composable pairs) are recorded as warnings.
    """
    _check_shapes(rep)
    G, pi = rep.groupoid, rep.images
    nm, inv, t = G.name, G.inv, G.table
    report = ValidationReport()
    prod = [[pi[g] @ pi[h] for h in G.arrows] for g in G.arrows]

    for g, h in G.composable_pairs():
        gh, hi, gi = t[g][h], inv[h], inv[g]
        if prod[g][h] @ pi[hi] != prod[gh][hi]:
            report.add("(i)", (nm(g), nm(h)), "pi(g)pi(h)pi(h^-1) != pi(gh)pi(h^-1)")
        if pi[gi] @ prod[g][h] != prod[gi][gh]:
            report.add("(ii)", (nm(g), nm(h)), "pi(g^-1)pi(g)pi(h) != pi(g^-1)pi(gh)")
    for g in G.arrows:
        if prod[g][inv[g]] @ pi[g] != pi[g]:
            report.add("(iii)", (nm(g),), "pi(g)pi(g^-1)pi(g) != pi(g)")

    total = matrix_sum((pi[e] for e in G.identity), rep.dim, rep.field)
    if total != ExactMatrix.identity(rep.dim, rep.field):
        report.add("(iv)", tuple(nm(e) for e in G.identity), "identity images do not sum to 1")
    for e in G.identity:
        for f in G.identity:
            if e != f and not prod[e][f].is_zero():
                report.add("(iv)", (nm(e), nm(f)), "pi(e)pi(f) != 0 for distinct identities")

    for g in G.arrows:
        d, r = G.identity[G.dom[g]], G.identity[G.ran[g]]
        if prod[g][d] != pi[g] or prod[r][g] != pi[g]:
            report.warn("absorption", (nm(g),), "pi(g) != pi(r(g))pi(g) or pi(g)pi(d(g))")
        for h in G.arrows:
            if t[g][h] is None and not prod[g][h].is_zero():
                report.warn("orthogonality", (nm(g), nm(h)), "pi(g)pi(h) != 0 for non-composable pair")
    return report


def trivial_rep(G, partition, field=QQ):
    """
    Identities go to orthogonal diagonal projections given by ``partition``
    (object -> set of 0-based basis indices; the blocks must partition
    range(dim)). Every other arrow goes to 0.
    """
    blocks = {x: set(partition.get(x, ())) for x in G.objects}
    extra = set(partition) - set(G.objects)
    if extra:
        raise RepresentationError(f"partition names unknown objects {sorted(extra)}")
    seen = set()
    for x in G.objects:
        if seen & blocks[x]:
            raise RepresentationError(f"partition blocks overlap at {sorted(seen & blocks[x])}")
        seen |= blocks[x]
    dim = len(seen)
    if seen != set(range(dim)):
        raise RepresentationError(f"partition must cover 0..{dim - 1} exactly, got {sorted(seen)}")
    zero = ExactMatrix.zeros(dim, field=field)
    images = [zero] * G.n_arrows
    for x in G.objects:
        images[G.identity[x]] = ExactMatrix.diagonal([1 if i in blocks[x] else 0 for i in range(dim)], field)
    return PartialRep(G, dim, tuple(images), field)


def default_trivial_rep(G, field=QQ):
    """One basis vector per object."""
    return trivial_rep(G, {x: {x} for x in G.objects}, field)


@lru_cache(maxsize=64)
def _expansion_algebra(G, field):
    br = build_br_groupoid(G, cap=float("inf"))
    return br, Algebra(br.base, field)


def expansion_algebra(G, field=QQ, cap=DEFAULT_CAP):
    """(BRGroupoid, groupoid algebra of the expansion over ``field``), cached."""
    build_br_groupoid(G, cap)  # raises on cap before anything is cached
    return _expansion_algebra(G, field)


def lambda_rep(G, field=QQ, cap=DEFAULT_CAP):
    """lambda(g) = sum of all expansion pairs (A, g) with g^-1 in A."""
    br, A = expansion_algebra(G, field, cap)
    one = field.one
    out = []
    for g in G.arrows:
        gi = 1 << G.inv[g]
        out.append(A.element({i: one for i, p in enumerate(br.pairs)
                              if p.arrow == g and p.carrier & gi}))
    return out


def rep_from_regular(G, field=QQ, cap=DEFAULT_CAP):
    """Compose lambda with the left regular representation of the expansion algebra."""
    br, A = expansion_algebra(G, field, cap)
    reg = left_regular_rep(A)
    images = tuple(regular_matrix(x, reg) for x in lambda_rep(G, field, cap))
    return PartialRep(G, A.dim, images, field)


def epsilon(rep, g):
    return rep.images[g] @ rep.images[rep.groupoid.inv[g]]


def _epsilons(rep):
    return [epsilon(rep, g) for g in rep.groupoid.arrows]


def p_subset(rep, e, S, eps=None):
    """P_S: product of eps(h) over S and of (pi(e) - eps(h)) over X_e minus S."""
    G = rep.groupoid
    if not G.is_identity(e):
        raise RepresentationError(f"{G.name(e)} is not an identity")
    X = x_set(G, e)
    S = frozenset(S)
    if not S <= X:
        raise RepresentationError(f"{sorted(G.name(a) for a in S - X)} not in X_{G.name(e)}")
    unit = rep.images[e]
    eps = eps or _epsilons(rep)
    M = None
    for h in sorted(S):
        M = eps[h] if M is None else M @ eps[h]
    for h in sorted(X - S):
        f = unit - eps[h]
        M = f if M is None else M @ f
    return M


def subsets(xs):
    xs = sorted(xs)
    for k in range(len(xs) + 1):
        yield from (frozenset(c) for c in combinations(xs, k))


def check_ps_partition(rep, e):
    """pi(e) == sum over all S in X_e of P_S."""
    G = rep.groupoid
    eps = _epsilons(rep)
    total = matrix_sum((p_subset(rep, e, S, eps) for S in subsets(x_set(G, e))), rep.dim, rep.field)
    return total == rep.images[e]


def ps_orthogonality_failures(rep, e):
    """Pairs (S, T), S != T, with P_S P_T != 0."""
    eps = _epsilons(rep)
    ps = {S: p_subset(rep, e, S, eps) for S in subsets(x_set(rep.groupoid, e))}
    return [(S, T) for S in ps for T in ps if S != T and not (ps[S] @ ps[T]).is_zero()]


@dataclass(frozen=True, eq=False)
class BRAlgebraHom:
    """Linear map from the expansion algebra to matrices, given on the pair basis."""

    source: object  # BRGroupoid
    algebra: Algebra
    dim: int
    images: tuple
    field: object = QQ

    def apply(self, x):
        M = ExactMatrix.zeros(self.dim, field=self.field)
        for i, c in x.coeffs.items():
            M = M + c * self.images[i]
        return M

    def check_multiplicative(self):
        """Every pair of basis pairs: image(p) image(q) == image(pq), or 0 when pq is undefined."""
        base = self.source.base
        report = ValidationReport()
        for i in base.arrows:
            for j in base.arrows:
                lhs = self.images[i] @ self.images[j]
                k = base.table[i][j]
                ok = lhs.is_zero() if k is None else lhs == self.images[k]
                if not ok:
                    report.add("multiplicative", (base.name(i), base.name(j)),
                               "undefined product not sent to 0" if k is None else "image of product differs")
        return report

    def check_unital(self):
        return self.apply(self.algebra.unit()) == ExactMatrix.identity(self.dim, self.field)


def pi_tilde(rep, cap=DEFAULT_CAP, check=True):
    """
    The algebra homomorphism on the expansion algebra lifting ``rep``:
    (A, g) -> pi(g) prod_{h in A} eps(h) prod_{h in Y_g \\ A} (pi(d(g)) - eps(h)).
    """
    G = rep.groupoid
    if check:
        report = check_partial_rep(rep)
        if report.violations:
            raise RepresentationError(f"not a partial representation: {report.violations[0]}")
    br, A = expansion_algebra(G, rep.field, cap)
    eps = _epsilons(rep)
    ys = {}
    images = []
    for carrier, g in br.pairs:
        if g not in ys:
            ys[g] = y_set(G, g)
        inside = members(carrier)
        outside = ys[g] - set(inside)
        unit = rep.images[G.identity[G.dom[g]]]
        M = rep.images[g]
        for h in inside:
            M = M @ eps[h]
        for h in sorted(outside):
            M = M @ (unit - eps[h])
        images.append(M)
    return BRAlgebraHom(br, A, rep.dim, tuple(images), rep.field)


def check_factorization(rep, cap=DEFAULT_CAP, hom=None):
    """pi_tilde(lambda(g)) == pi(g) for every arrow."""
    hom = hom or pi_tilde(rep, cap)
    lam = lambda_rep(rep.groupoid, rep.field, cap)
    return all(hom.apply(lam[g]) == rep.images[g] for g in rep.groupoid.arrows)


def check_epsilon_relations(rep):
    G, pi = rep.groupoid, rep.images
    nm, inv, t, ran, dom = G.name, G.inv, G.table, G.ran, G.dom
    eps = _epsilons(rep)
    report = ValidationReport()
    for g in G.arrows:
        for h in G.arrows:
            same_range = ran[g] == ran[h]
            ee = eps[g] @ eps[h]
            if same_range:
                if ee != eps[h] @ eps[g]:
                    report.add("eps-commute", (nm(g), nm(h)), "eps(g)eps(h) != eps(h)eps(g)")
                hig = t[inv[h]][g]
                if pi[inv[h]] @ eps[g] != eps[hig] @ pi[inv[h]]:
                    report.add("eps-conjugate", (nm(h), nm(g)), "pi(h^-1)eps(g) != eps(h^-1 g)pi(h^-1)")
                gih = t[inv[g]][h]
                if eps[h] @ pi[g] != pi[g] @ eps[gih]:
                    report.add("eps-right", (nm(h), nm(g)), "eps(h)pi(g) != pi(g)eps(g^-1 h)")
            else:
                if not ee.is_zero():
                    report.add("eps-commute", (nm(g), nm(h)), "eps(g)eps(h) != 0 for different ranges")
                if not (eps[h] @ pi[g]).is_zero():
                    report.add("eps-right", (nm(h), nm(g)), "eps(h)pi(g) != 0 for different ranges")
            if dom[g] == ran[h]:
                if pi[g] @ eps[h] != eps[t[g][h]] @ pi[g]:
                    report.add("eps-left", (nm(g), nm(h)), "pi(g)eps(h) != eps(gh)pi(g)")
            elif not (pi[g] @ eps[h]).is_zero():
                report.add("eps-left", (nm(g), nm(h)), "pi(g)eps(h) != 0 off composable pairs")
    return report


def mutate_rep(rep, rng):
    """
    A single-entry change of ``rep`` that cannot be a partial representation,
    with a description. Either an entry of an identity image moves (breaking
    the sum in (iv)), or a non-identity image gains an entry in a row killed
    by pi(r(g)) or a column killed by pi(d(g)).
    """
    G, pi, n = rep.groupoid, rep.images, rep.dim
    f = rep.field
    options = []
    for g in G.arrows:
        if G.is_identity(g):
            options.extend(("id", g, i, j) for i in range(n) for j in range(n))
            continue
        R, D = pi[G.identity[G.ran[g]]], pi[G.identity[G.dom[g]]]
        dead_rows = [i for i in range(n) if not any(R.rows[i])]
        dead_cols = [j for j in range(n) if not any(D.rows[k][j] for k in range(n))]
        options.extend(("row", g, i, j) for i in dead_rows for j in range(n))
        options.extend(("col", g, i, j) for j in dead_cols for i in range(n))
    kind, g, i, j = rng.choice(options)
    old = pi[g][i, j]
    if kind == "id":
        new = old + f(rng.choice([1, -1]))
    else:
        # old is 0 here for a valid rep; any nonzero value breaks absorption
        new = next(c for c in (f(rng.choice([1, -1])), f.one, -f.one) if c and c != old)
    return rep.replace(g, pi[g].with_entry(i, j, new)), f"{kind} pi({G.name(g)})[{i},{j}]"


# --- interchange -------------------------------------------------------------

def rep_to_json(rep, groupoid_ref=None):
    return {
        "groupoid": groupoid_ref if groupoid_ref is not None else groupoid_to_json(rep.groupoid),
        "dim": rep.dim,
        "field": rep.field.name,
        "images": [M.to_json() for M in rep.images],
    }


def rep_from_json(data, base_dir="."):
    if not isinstance(data, dict):
        raise RepresentationError("representation must be a JSON object")
    unknown = set(data) - {"groupoid", "dim", "field", "images"}
    if unknown:
        raise RepresentationError(f"unknown keys: {sorted(unknown)}")
    for key in ("groupoid", "dim", "images"):
        if key not in data:
            raise RepresentationError(f"missing key {key!r}")
    field = parse_field(data.get("field", "Q"))
    gdata = data["groupoid"]
    if isinstance(gdata, str):
        with open(os.path.join(base_dir, gdata)) as fh:
            gdata = json.load(fh)
    G = groupoid_from_json(gdata)
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise RepresentationError("dim must be a nonnegative integer")
    images = data["images"]
    if not isinstance(images, list) or len(images) != G.n_arrows:
        raise RepresentationError(f"images must list one matrix per arrow ({G.n_arrows})")
    mats = tuple(ExactMatrix.from_json(rows, field) for rows in images)
    rep = PartialRep(G, dim, mats, field)
    _check_shapes(rep)
    return rep


def serialize_rep(rep):
    return json.dumps(rep_to_json(rep), indent=1)


def parse_rep(text, base_dir="."):
    return rep_from_json(json.loads(text), base_dir)
