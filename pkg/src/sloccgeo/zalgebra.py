"""Relation spaces and Hilbert functions of the graded algebras attached
to generic curve models, sampled over prime fields.

All computations here need explicit points, so they run over F_p rather
than Q; agreement across several primes is the intended evidence standard.
The expected Hilbert values are not hardcoded: they come from the Euler
characteristics of the two minimal resolution shapes (quadratic and cubic),
evaluated by a plain linear recurrence.
"""

from dataclasses import dataclass
from itertools import product

from .errors import (
    BadReductionError,
    InsufficientPointsError,
    RankDeficientError,
    WrongFormatError,
)
from .linalg import Matrix, Subspace
from .states import flattening_image, reduced_flattening_image
from .geometry import enumerate_points, hasse_window, model_mod_p, variety_from_state


@dataclass(frozen=True)
class RelationSpace:
    """Kernel of the slot-monomial evaluation on the model's F_p-points.

    ``slot_pattern`` lists which variable group feeds each slot, so the
    monomials are products of one coordinate per slot in that order.
    """

    p: int
    slot_pattern: tuple
    slot_dim: int
    basis: Subspace

    @property
    def arity(self):
        return len(self.slot_pattern)

    @property
    def dim(self):
        return self.basis.dim


@dataclass(frozen=True)
class HilbertProfile:
    """Computed vs expected graded dimensions dim A_{i,i+k} for k <= k_max."""

    kind: str            # "quadratic" | "cubic"
    prime: int
    dims: tuple
    expected: tuple

    def matches(self):
        return self.dims == self.expected

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "prime": self.prime,
            "computed": list(self.dims),
            "expected": list(self.expected),
            "matches": self.matches(),
        }


def quadratic_expected_dims(k_max):
    """Euler characteristic of 0 -> P_{i+3} -> P_{i+2}^3 -> P_{i+1}^3 ->
    P_i -> S_i -> 0: h(k) = 3h(k-1) - 3h(k-2) + h(k-3), h(0) = 1."""
    dims = []
    for k in range(k_max + 1):
        val = (1 if k == 0 else 0)
        for coeff, back in ((3, 1), (-3, 2), (1, 3)):
            if k - back >= 0:
                val += coeff * dims[k - back]
        dims.append(val)
    return tuple(dims)


def cubic_expected_dims(k_max):
    """Euler characteristic of 0 -> P_{i+4} -> P_{i+3}^2 -> P_{i+1}^2 ->
    P_i -> S_i -> 0: h(k) = 2h(k-1) - 2h(k-3) + h(k-4), h(0) = 1."""
    dims = []
    for k in range(k_max + 1):
        val = (1 if k == 0 else 0)
        for coeff, back in ((2, 1), (-2, 3), (1, 4)):
            if k - back >= 0:
                val += coeff * dims[k - back]
        dims.append(val)
    return tuple(dims)


def _monomial_rows(points, slot_pattern, d, p):
    """Evaluation matrix: one row per point, one column per slot monomial."""
    k = len(slot_pattern)
    rows = []
    for pt in points:
        coords = [pt.coords[g] for g in slot_pattern]
        row = []
        for idx in product(range(d), repeat=k):
            val = 1
            for s in range(k):
                val = val * coords[s][idx[s]] % p
            row.append(val)
        rows.append(row)
    return Matrix(rows, cols=d**k, p=p)


def relations_from_points(model, p, slot_pattern):
    """Kernel of the slot-monomial evaluation at all F_p-points.

    On a generic curve model the monomials span a space of dimension
    k*d (sections of the product line bundle), leaving a kernel of
    dimension d**k - k*d.  If the evaluation rank falls short of that
    target the kernel would come out too big, so the computation aborts
    with InsufficientPointsError instead of reporting a wrong space.
    """
    slot_pattern = tuple(slot_pattern)
    if any(not 0 <= g < model.groups for g in slot_pattern):
        raise ValueError("slot pattern names a nonexistent group")
    d = model.d
    k = len(slot_pattern)
    reduced = model_mod_p(model, p)
    points = enumerate_points(reduced, p)
    target_rank = min(k * d, d**k)
    matrix = _monomial_rows(points, slot_pattern, d, p)
    rank = matrix.rank()
    if rank < target_rank:
        raise InsufficientPointsError(
            f"evaluation rank {rank} below generic target {target_rank} at p={p}"
        )
    return RelationSpace(p, slot_pattern, d, matrix.kernel())


def _insertion_rank(relation_spaces, k, d, p):
    """Dimension of the span of all degree-k shifts of the relations:
    position j contributes W^j (x) R_j (x) W^(k-arity-j)."""
    arity = relation_spaces[0].arity
    rows = []
    for j in range(k - arity + 1):
        rel = relation_spaces[j % len(relation_spaces)]
        left = d**j
        right = d ** (k - arity - j)
        block = d**arity
        for basis_row in rel.basis.basis.entries:
            for li in range(left):
                for ri in range(right):
                    row = [0] * d**k
                    for m, c in enumerate(basis_row):
                        if c:
                            row[(li * block + m) * right + ri] = c
                    rows.append(row)
    if not rows:
        return 0
    return Matrix(rows, cols=d**k, p=p).rank()


def _hilbert_profile(state, p, k_max, kind, patterns, expected_fn):
    model = variety_from_state(state)
    spaces = [relations_from_points(model, p, pat) for pat in patterns]
    arity = len(patterns[0])
    d = model.d
    dims = []
    for k in range(k_max + 1):
        if k < arity:
            dims.append(d**k)
        else:
            dims.append(d**k - _insertion_rank(spaces, k, d, p))
    return HilbertProfile(kind, p, tuple(dims), expected_fn(k_max))


def quadratic_hilbert(state, p, k_max=4):
    """Graded dimensions of the quadratic algebra of a (3,3) state.

    Degree-2 relations alternate between the (x,y)- and (y,x)-pattern
    kernels; the generic answer is the plane count (k+1)(k+2)/2.
    """
    if (state.n, state.d) != (3, 3):
        raise WrongFormatError("quadratic profiles need format (3,3)")
    return _hilbert_profile(
        state, p, k_max, "quadratic", [(0, 1), (1, 0)], quadratic_expected_dims
    )


def cubic_hilbert(state, p, k_max=5):
    """Graded dimensions of the cubic algebra of a (4,2) state.

    Degree-3 relations cycle through the three period-3 slot patterns.
    """
    if (state.n, state.d) != (4, 2):
        raise WrongFormatError("cubic profiles need format (4,2)")
    return _hilbert_profile(
        state, p, k_max, "cubic",
        [(0, 1, 2), (1, 2, 0), (2, 0, 1)], cubic_expected_dims,
    )


@dataclass(frozen=True)
class ProductMapResult:
    """Rank evidence for the section-product map on one axis pair."""

    p: int
    axis_pair: tuple
    rank: int
    kernel_dim: int
    points_used: int

    @property
    def surjective(self):
        return self.kernel_dim == 0

    def to_json_dict(self):
        return {
            "prime": self.p,
            "axes": list(self.axis_pair),
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "points_used": self.points_used,
            "verdict": "Surjective" if self.surjective else f"KernelDim({self.kernel_dim})",
        }


def multiplication_surjectivity(state, axis_pair, p):
    """Test whether products of sections from two axes span the full
    4-dimensional target, by evaluating the 4 slot monomials at the
    projections of the model's F_p-points.

    Full rank certifies surjectivity (the two degree-2 bundles are not
    isomorphic); a positive kernel is evidence of isomorphic bundles or a
    bad prime.  The number of distinct projected points must be plausible
    for a curve of genus one: a count above the Hasse window certifies a
    degenerate model, and fewer than five points cannot pin the kernel
    down; both abort with InsufficientPointsError.
    """
    if (state.n, state.d) != (4, 2):
        raise WrongFormatError("the section-product test needs format (4,2)")
    axis_pair = tuple(sorted(axis_pair))
    if len(axis_pair) != 2 or not all(0 <= a < 3 for a in axis_pair):
        raise ValueError("axis pair must name two of the groups 0,1,2")
    model = variety_from_state(state)
    reduced = model_mod_p(model, p)
    projected = sorted(
        {tuple(pt.coords[a] for a in axis_pair) for pt in enumerate_points(reduced, p)}
    )
    lo, hi = hasse_window(p)
    if len(projected) > hi:
        raise InsufficientPointsError(
            f"{len(projected)} projected points at p={p} exceed the genus-one "
            f"bound {hi}: degenerate model"
        )
    if len(projected) < max(5, lo):
        raise InsufficientPointsError(
            f"only {len(projected)} projected points at p={p}; kernel not determined"
        )
    rows = [
        [x[i] * y[j] % p for i in range(2) for j in range(2)] for x, y in projected
    ]
    rank = Matrix(rows, cols=4, p=p).rank()
    return ProductMapResult(p, axis_pair, rank, 4 - rank, len(projected))


def roundtrip_check(state, p):
    """Reconstruct the flattening image from the model's F_p-points.

    True when the kernel of the natural slot-monomial evaluation equals
    the state-side reduction of the flattening image, as canonical
    subspaces.  The construction guarantees the kernel contains that
    reduction, so a full evaluation rank forces equality; failures
    therefore surface only as bad reduction or insufficient points, never
    as a wrong kernel.
    """
    sub = flattening_image(state)
    if sub.dim != state.d:
        raise RankDeficientError(sub.dim, state.d)
    model = variety_from_state(state)
    natural = tuple(range(state.n - 1))
    relations = relations_from_points(model, p, natural)
    reduced = reduced_flattening_image(state, p)
    if reduced.dim != state.d:
        raise BadReductionError(p, "flattening rank drops modulo p")
    return relations.basis == reduced
