"""
Groupoid algebras K G over an exact field.

Basis arrows multiply by the groupoid product, and the product of two
non-composable arrows is 0. Elements are sparse dicts arrow -> scalar
with no stored zeros.
"""

from .fields import QQ
from .linalg import EchelonBasis, ExactMatrix


class Algebra:
    def __init__(self, groupoid, field=QQ):
        self.groupoid = groupoid
        self.field = field

    def __eq__(self, other):
        if other is self:
            return True
        return (isinstance(other, Algebra) and other.field == self.field
                and other.groupoid == self.groupoid)

    def __hash__(self):
        return hash((self.groupoid, self.field))

    @property
    def dim(self):
        return self.groupoid.n_arrows

    def zero(self):
        return AlgebraElement(self, {})

    def basis(self, g):
        return AlgebraElement(self, {g: self.field.one})

    def unit(self):
        one = self.field.one
        return AlgebraElement(self, {e: one for e in self.groupoid.identity})

    def element(self, coeffs):
        f = self.field
        return AlgebraElement(self, {g: f(c) for g, c in coeffs.items()})

    def from_vector(self, v):
        return AlgebraElement(self, {g: c for g, c in enumerate(v)})

    def parse(self, text):
        """Inverse of ``AlgebraElement.text``."""
        text = text.strip()
        if text == "0":
            return self.zero()
        coeffs = {}
        for term in text.split(" + "):
            c, _, name = term.partition("*")
            g = self.groupoid.index_of(name)
            coeffs[g] = coeffs.get(g, self.field.zero) + self.field.parse(c)
        return AlgebraElement(self, coeffs)

    def __repr__(self):
        return f"Algebra({self.groupoid!r}, {self.field!r})"


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {g: c for g, c in sorted(coeffs.items()) if c}

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out[g] + c if g in out else c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra, {g: -c for g, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, {g: c * a for g, a in self.coeffs.items()})

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, {g: c * a for g, a in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def coeff(self, g):
        return self.coeffs.get(g, self.algebra.field.zero)

    @property
    def support(self):
        return list(self.coeffs)

    def to_vector(self):
        z = self.algebra.field.zero
        return [self.coeffs.get(g, z) for g in range(self.algebra.dim)]

    def text(self):
        if not self.coeffs:
            return "0"
        fmt, name = self.algebra.field.format, self.algebra.groupoid.name
        return " + ".join(f"{fmt(c)}*{name(g)}" for g, c in self.coeffs.items())

    def __repr__(self):
        return self.text()


def alg_mul(a, b):
    a._same(b)
    t = a.algebra.groupoid.table
    out = {}
    for g, c in a.coeffs.items():
        row = t[g]
        for h, d in b.coeffs.items():
            gh = row[h]
            if gh is not None:
                out[gh] = out[gh] + c * d if gh in out else c * d
    return AlgebraElement(a.algebra, out)


def alg_unit(algebra):
    return algebra.unit()


def left_regular_rep(algebra):
    """M(g)[k, j] = 1 iff g . arrow_j = arrow_k, one matrix per arrow."""
    G, f = algebra.groupoid, algebra.field
    n = G.n_arrows
    z, o = f.zero, f.one
    out = []
    for g in G.arrows:
        rows = [[z] * n for _ in range(n)]
        for j in G.arrows:
            k = G.table[g][j]
            if k is not None:
                rows[k][j] = o
        out.append(ExactMatrix(f, tuple(tuple(r) for r in rows)))
    return out


def regular_matrix(element, regular=None):
    """Image of an element under the left regular representation."""
    A = element.algebra
    regular = regular or left_regular_rep(A)
    M = ExactMatrix.zeros(A.dim, field=A.field)
    for g, c in element.coeffs.items():
        M = M + c * regular[g]
    return M


def _as_vectors(vectors):
    vectors = list(vectors)
    if not vectors:
        return [], 0, QQ
    first = vectors[0]
    if isinstance(first, AlgebraElement):
        for v in vectors:
            first._same(v)
        return [v.to_vector() for v in vectors], first.algebra.dim, first.algebra.field
    if isinstance(first, ExactMatrix):
        for v in vectors:
            first._check(v)
            if v.shape != first.shape:
                raise ValueError(f"dimension mismatch {v.shape} vs {first.shape}")
        n, m = first.shape
        return [v.flat() for v in vectors], n * m, first.field
    vs = [list(v) for v in vectors]
    if any(len(v) != len(vs[0]) for v in vs):
        raise ValueError("dimension mismatch")
    return vs, len(vs[0]), QQ


def rank_of_span(vectors, field=None):
    vs, dim, f = _as_vectors(vectors)
    E = EchelonBasis(dim, field or f)
    for v in vs:
        E.add(v)
    return len(E)


def subalgebra_closure(algebra, generators, include_unit=False):
    """
    Basis (reduced echelon form) of the subalgebra generated by ``generators``.

    The span of all words in the generators is reached breadth-first by
    multiplying each newly accepted vector on the left by every generator.
    """
    E = EchelonBasis(algebra.dim, algebra.field)
    queue = []
    start = list(generators) + ([algebra.unit()] if include_unit else [])
    for x in start:
        if E.add(x.to_vector()):
            queue.append(x)
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for s in generators:
            y = s * x
            if E.add(y.to_vector()):
                queue.append(y)
    return [algebra.from_vector(r) for r in E.echelon_rows()]


def structure_constants(algebra, basis):
    """c[i][j][k] with basis[i] * basis[j] = sum_k c[i][j][k] basis[k]."""
    E = EchelonBasis(algebra.dim, algebra.field)
    for b in basis:
        if not E.add(b.to_vector()):
            raise ValueError("basis is not linearly independent")
    table = []
    for i, x in enumerate(basis):
        row = []
        for j, y in enumerate(basis):
            c = E.coordinates((x * y).to_vector())
            if c is None:
                raise ValueError(f"basis not closed: product of elements {i} and {j} leaves the span")
            row.append(c)
        table.append(row)
    return table
