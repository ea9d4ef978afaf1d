"""
Exact dense matrices and incremental row reduction over QQ or Z/p.

Matrix products skip zero entries: the representation matrices used here are
mostly zero, and exact scalars are expensive.
"""

from dataclasses import dataclass

from .fields import QQ, FieldError


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    field: object
    rows: tuple

    @classmethod
    def from_rows(cls, rows, field=QQ):
        return cls(field, tuple(tuple(field(x) for x in row) for row in rows))

    @classmethod
    def zeros(cls, n, m=None, field=QQ):
        m = n if m is None else m
        z = field.zero
        return cls(field, tuple((z,) * m for _ in range(n)))

    @classmethod
    def identity(cls, n, field=QQ):
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries, field=QQ):
        n = len(entries)
        z = field.zero
        return cls(field, tuple(tuple(field(entries[i]) if i == j else z for j in range(n))
                                for i in range(n)))

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other):
        if not isinstance(other, ExactMatrix):
            raise TypeError(f"expected ExactMatrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")

    def __matmul__(self, other):
        self._check(other)
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.field.zero
        sparse = [[(j, b) for j, b in enumerate(row) if b] for row in other.rows]
        out = []
        for row in self.rows:
            acc = [z] * m
            for l, a in enumerate(row):
                if a:
                    for j, b in sparse[l]:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return ExactMatrix(self.field, tuple(out))

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return ExactMatrix(self.field, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return ExactMatrix(self.field, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return ExactMatrix(self.field, tuple(tuple(-a for a in r) for r in self.rows))

    def __rmul__(self, c):
        c = self.field(c)
        return ExactMatrix(self.field, tuple(tuple(c * a for a in r) for r in self.rows))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return not any(a for row in self.rows for a in row)

    def flat(self):
        return [a for row in self.rows for a in row]

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self.rows]
        rows[i][j] = self.field(value)
        return ExactMatrix(self.field, tuple(tuple(r) for r in rows))

    def to_json(self):
        fmt = self.field.format
        return [[fmt(a) for a in row] for row in self.rows]

    @classmethod
    def from_json(cls, rows, field=QQ):
        return cls(field, tuple(tuple(field.parse(a) for a in row) for row in rows))

    def __repr__(self):
        return "ExactMatrix(%s)" % (self.to_json(),)


def matrix_sum(matrices, n, field=QQ):
    total = ExactMatrix.zeros(n, field=field)
    for M in matrices:
        total = total + M
    return total


def matrix_product(matrices, n, field=QQ):
    out = ExactMatrix.identity(n, field=field)
    for M in matrices:
        out = out @ M
    return out


class EchelonBasis:
    """
    Incrementally maintained reduced row echelon form of a span.

    Each stored row remembers how it combines the independent vectors that
    were accepted by ``add``, so ``coordinates`` can express any vector of the
    span in terms of those originals. Pivots are the first nonzero column;
    results depend only on the order vectors are offered.
    """

    def __init__(self, dim, field=QQ):
        self.dim = dim
        self.field = field
        self.rows = []  # (pivot, vector, combination over accepted originals)
        self.accepted = []

    def __len__(self):
        return len(self.rows)

    def _reduce(self, v):
        v = list(v)
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} in a space of dimension {self.dim}")
        combo = {}
        for piv, row, rc in self.rows:
            c = v[piv]
            if c:
                for j in range(piv, self.dim):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
                for k, a in rc.items():
                    combo[k] = combo.get(k, self.field.zero) + c * a
        return v, combo

    def reduce(self, v):
        return self._reduce(v)[0]

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Add v to the span; True if it was independent of what is already there."""
        r, combo = self._reduce(v)
        piv = next((j for j, a in enumerate(r) if a), None)
        if piv is None:
            return False
        k = len(self.accepted)
        self.accepted.append(list(v))
        inv = self.field.one / r[piv]
        r = [a * inv for a in r]
        # r = (v - sum combo) * inv
        rc = {j: -a * inv for j, a in combo.items() if a}
        rc[k] = inv
        new_rows = []
        for p, row, c0 in self.rows:
            c = row[piv]
            if c:
                row = [a - c * b for a, b in zip(row, r)]
                c0 = dict(c0)
                for j, a in rc.items():
                    c0[j] = c0.get(j, self.field.zero) - c * a
                c0 = {j: a for j, a in c0.items() if a}
            new_rows.append((p, row, c0))
        new_rows.append((piv, r, rc))
        new_rows.sort(key=lambda t: t[0])
        self.rows = new_rows
        return True

    def coordinates(self, v):
        """Coefficients of v over the accepted vectors, or None if v is not in the span."""
        r, combo = self._reduce(v)
        if any(r):
            return None
        out = [self.field.zero] * len(self.accepted)
        for k, a in combo.items():
            out[k] = out[k] + a
        return out

    def echelon_rows(self):
        return [list(row) for _, row, _ in self.rows]


def rank(vectors, dim=None, field=QQ):
    vectors = [list(v) for v in vectors]
    if dim is None:
        if not vectors:
            return 0
        dim = len(vectors[0])
    E = EchelonBasis(dim, field)
    for v in vectors:
        E.add(v)
    return len(E)
