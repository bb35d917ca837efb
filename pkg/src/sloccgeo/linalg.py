"""Exact dense linear algebra over the rationals and prime fields.

Matrices carry their field with them: ``p is None`` means entries are
``fractions.Fraction``; ``p`` a prime means entries are ints in ``[0, p)``.
Every operation is pure and rounding-free, so reduced row-echelon forms are
canonical and subspaces compare by simple equality.
"""

import random
from fractions import Fraction

from .errors import BadReductionError

#: Primes used by default for finite-field reductions.  Small enough for
#: exhaustive point enumeration, large enough that bad reduction is rare.
DEFAULT_PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31)


def reduce_scalar(x, p):
    """Reduce a Fraction (or int) modulo p.

    Raises BadReductionError when the denominator is divisible by p; the
    caller is expected to move on to another prime.
    """
    x = Fraction(x)
    if x.denominator % p == 0:
        raise BadReductionError(p, x)
    return x.numerator * pow(x.denominator, -1, p) % p


def reduce_mod(x, p):
    """Reduce a scalar, matrix, subspace, tensor or form modulo p."""
    if hasattr(x, "reduce_mod"):
        return x.reduce_mod(p)
    return reduce_scalar(x, p)


class Matrix:
    """Immutable dense matrix over Q (p=None) or F_p."""

    __slots__ = ("rows", "cols", "entries", "p")

    def __init__(self, entries, cols=None, p=None):
        entries = [list(row) for row in entries]
        if entries:
            cols = len(entries[0])
            if any(len(row) != cols for row in entries):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        if p is None:
            norm = [tuple(Fraction(x) for x in row) for row in entries]
        else:
            norm = [tuple(int(x) % p for x in row) for row in entries]
        object.__setattr__(self, "rows", len(norm))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(norm))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n, p=None):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p=p)

    @classmethod
    def zero(cls, rows, cols, p=None):
        return cls([[0] * cols for _ in range(rows)], cols=cols, p=p)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def row(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.p == other.p
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.p, self.entries))

    def __repr__(self):
        field = "Q" if self.p is None else f"F{self.p}"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix[{field}]({self.rows}x{self.cols}: {body})"

    def transpose(self):
        return Matrix(
            [[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)],
            cols=self.rows,
            p=self.p,
        )

    def mul(self, other):
        if self.p != other.p or self.cols != other.rows:
            raise ValueError("incompatible matrices")
        prod = [
            [
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            ]
            for i in range(self.rows)
        ]
        return Matrix(prod, cols=other.cols, p=self.p)

    def apply(self, vector):
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(
            sum(row[k] * vector[k] for k in range(self.cols)) for row in self.entries
        )

    def _inv(self, x):
        return pow(x, -1, self.p) if self.p is not None else 1 / x

    def rref(self):
        """Return (rank, reduced) where reduced is the canonical RREF."""
        m = [list(row) for row in self.entries]
        rank = 0
        for col in range(self.cols):
            pivot = next((i for i in range(rank, self.rows) if m[i][col] != 0), None)
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            inv = self._inv(m[rank][col])
            if self.p is None:
                m[rank] = [x * inv for x in m[rank]]
            else:
                m[rank] = [x * inv % self.p for x in m[rank]]
            for i in range(self.rows):
                if i != rank and m[i][col] != 0:
                    f = m[i][col]
                    if self.p is None:
                        m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
                    else:
                        m[i] = [(a - f * b) % self.p for a, b in zip(m[i], m[rank])]
            rank += 1
            if rank == self.rows:
                break
        return rank, Matrix(m, cols=self.cols, p=self.p)

    def rank(self):
        return self.rref()[0]

    def det(self):
        """Exact determinant by cofactor expansion; meant for small sizes."""
        if self.rows != self.cols:
            raise ValueError("determinant needs a square matrix")
        n = self.rows

        def expand(rows, cols):
            if len(cols) == 1:
                return self.entries[rows[0]][cols[0]]
            total = 0
            sign = 1
            for k, c in enumerate(cols):
                x = self.entries[rows[0]][c]
                if x != 0:
                    rest = cols[:k] + cols[k + 1 :]
                    total += sign * x * expand(rows[1:], rest)
                sign = -sign
            return total

        if n == 0:
            return Fraction(1) if self.p is None else 1
        val = expand(tuple(range(n)), tuple(range(n)))
        return val % self.p if self.p is not None else Fraction(val)

    def kernel(self):
        """Right null space as a canonical Subspace of F^cols."""
        rank, red = self.rref()
        pivots = []
        for r in range(rank):
            pivots.append(next(c for c in range(self.cols) if red.entries[r][c] != 0))
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols if self.p is None else [0] * self.cols
            v[f] = 1
            for r, pc in enumerate(pivots):
                v[pc] = -red.entries[r][f]
                if self.p is not None:
                    v[pc] %= self.p
            basis.append(v)
        return Subspace.from_rows(basis, self.cols, p=self.p)

    def reduce_mod(self, p):
        if self.p is not None:
            raise ValueError("matrix already lives over a prime field")
        return Matrix(
            [[reduce_scalar(x, p) for x in row] for row in self.entries],
            cols=self.cols,
            p=p,
        )


class Subspace:
    """A linear subspace, stored as the unique RREF basis of its row span."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis):
        if basis.cols != ambient_dim:
            raise ValueError("basis width disagrees with ambient dimension")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_rows(cls, vectors, ambient_dim, p=None):
        """Canonicalize a spanning set: RREF, drop zero rows."""
        m = Matrix(vectors, cols=ambient_dim, p=p)
        rank, red = m.rref()
        return cls(ambient_dim, Matrix(red.entries[:rank], cols=ambient_dim, p=p))

    @property
    def dim(self):
        return self.basis.rows

    @property
    def p(self):
        return self.basis.p

    def contains(self, vector):
        rows = list(self.basis.entries) + [vector]
        m = Matrix(rows, cols=self.ambient_dim, p=self.basis.p)
        return m.rank() == self.dim

    def reduce_mod(self, p):
        """Entrywise reduction; an RREF basis over Q stays RREF mod p."""
        return Subspace(self.ambient_dim, self.basis.reduce_mod(p))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kron(a, b):
    """Kronecker product, same field."""
    if a.p != b.p:
        raise ValueError("field mismatch")
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            out.append(
                [
                    a.entries[i][j] * b.entries[k][l]
                    for j in range(a.cols)
                    for l in range(b.cols)
                ]
            )
    return Matrix(out, cols=a.cols * b.cols, p=a.p)


def random_invertible(d, bound, seed):
    """Deterministic d x d integer matrix with nonzero determinant.

    Entries are drawn uniformly from [-bound, bound]; singular draws are
    rejected and redrawn, so the result depends only on (d, bound, seed).
    """
    if d < 1 or bound < 1:
        raise ValueError("need d >= 1 and bound >= 1")
    rng = random.Random(seed)
    while True:
        entries = [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(d)]
        m = Matrix(entries)
        if m.rank() == d:
            return m
