"""Multiprojective models cut out by a state's flattening image.

A state whose flattening image has full dimension d defines d multilinear
forms on P(V_1) x ... x P(V_{n-1}); their common zero locus is a complete
intersection (a plane-cubic-like curve for (3,3) and (4,2), a surface for
(5,2)).  This module builds those forms, eliminates one factor through
determinants of the linear-form matrix, and gathers finite-field smoothness
evidence by exhaustive point enumeration plus Jacobian ranks.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .errors import (
    AllPrimesBadError,
    BadReductionError,
    NotOnVarietyError,
    RankDeficientError,
    UnsupportedFormatError,
)
from .linalg import DEFAULT_PRIMES, Matrix, reduce_scalar
from .states import flattening_image, state_hash

_GROUP_NAMES = "xyzw"


class MultiForm:
    """Multihomogeneous polynomial in groups of variables.

    Terms map flat exponent tuples (all groups concatenated) to coefficients;
    every term must have the same degree within each variable group.  Over Q
    coefficients are Fractions (p=None); over F_p they are ints in [0, p).
    """

    __slots__ = ("group_dims", "multidegree", "terms", "p")

    def __init__(self, group_dims, terms, p=None):
        group_dims = tuple(group_dims)
        nvars = sum(group_dims)
        cleaned = {}
        multidegree = None
        for exps, coeff in terms.items():
            coeff = Fraction(coeff) if p is None else int(coeff) % p
            if coeff == 0:
                continue
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError("bad exponent vector")
            deg = self._group_degrees(group_dims, exps)
            if multidegree is None:
                multidegree = deg
            elif deg != multidegree:
                raise ValueError(f"mixed multidegrees {multidegree} and {deg}")
            cleaned[exps] = coeff
        if multidegree is None:
            multidegree = (0,) * len(group_dims)
        object.__setattr__(self, "group_dims", group_dims)
        object.__setattr__(self, "multidegree", multidegree)
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("MultiForm is immutable")

    @staticmethod
    def _group_degrees(group_dims, exps):
        degs = []
        pos = 0
        for dim in group_dims:
            degs.append(sum(exps[pos : pos + dim]))
            pos += dim
        return tuple(degs)

    @classmethod
    def zero(cls, group_dims, p=None):
        return cls(group_dims, {}, p=p)

    @classmethod
    def from_multilinear(cls, group_dims, vector, p=None):
        """Read a vector in the tensor product of the groups as a form of
        multidegree (1,...,1); the vector is indexed row-major."""
        nvars = sum(group_dims)
        offsets = []
        pos = 0
        for dim in group_dims:
            offsets.append(pos)
            pos += dim
        terms = {}
        for flat, idx in enumerate(product(*(range(d) for d in group_dims))):
            c = vector[flat]
            if c == 0:
                continue
            exps = [0] * nvars
            for g, i in enumerate(idx):
                exps[offsets[g] + i] = 1
            terms[tuple(exps)] = c
        return cls(group_dims, terms, p=p)

    def is_zero(self):
        return not self.terms

    def _offset(self, group):
        return sum(self.group_dims[:group])

    def add(self, other):
        if self.group_dims != other.group_dims or self.p != other.p:
            raise ValueError("incompatible forms")
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return MultiForm(self.group_dims, terms, p=self.p)

    def scale(self, factor):
        return MultiForm(
            self.group_dims,
            {e: factor * c for e, c in self.terms.items()},
            p=self.p,
        )

    def mul(self, other):
        if self.group_dims != other.group_dims or self.p != other.p:
            raise ValueError("incompatible forms")
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return MultiForm(self.group_dims, terms, p=self.p)

    def partial(self, group, index):
        """Derivative with respect to one variable of one group."""
        v = self._offset(group) + index
        terms = {}
        for exps, c in self.terms.items():
            if exps[v] == 0:
                continue
            key = exps[:v] + (exps[v] - 1,) + exps[v + 1 :]
            terms[key] = terms.get(key, 0) + c * exps[v]
        return MultiForm(self.group_dims, terms, p=self.p)

    def evaluate(self, coords):
        """Evaluate at one coordinate tuple per group."""
        flat = [x for group in coords for x in group]
        if len(flat) != sum(self.group_dims):
            raise ValueError("coordinate arity mismatch")
        total = 0
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(flat, exps):
                if e:
                    term *= x**e
            total += term
        if self.p is not None:
            total %= self.p
        return total if self.p is not None else Fraction(total)

    def substitute(self, group, matrix):
        """Replace the group's variable vector v by matrix @ v."""
        dim = self.group_dims[group]
        if matrix.rows != dim or matrix.cols != dim:
            raise ValueError("substitution matrix has the wrong shape")
        base = self._offset(group)
        result = {}
        for exps, c in self.terms.items():
            # expand prod_i (sum_j m[i][j] v_j)^(e_i) as a dense map on the group
            partial_polys = {(0,) * dim: c}
            for i in range(dim):
                for _ in range(exps[base + i]):
                    nxt = {}
                    for mono, coeff in partial_polys.items():
                        for j in range(dim):
                            mij = matrix.entries[i][j]
                            if mij == 0:
                                continue
                            key = mono[:j] + (mono[j] + 1,) + mono[j + 1 :]
                            nxt[key] = nxt.get(key, 0) + coeff * mij
                    partial_polys = nxt
            for mono, coeff in partial_polys.items():
                key = exps[:base] + mono + exps[base + dim :]
                result[key] = result.get(key, 0) + coeff
        return MultiForm(self.group_dims, result, p=self.p)

    def drop_groups(self, kept):
        """Restrict to a subset of groups; degree elsewhere must be zero."""
        kept = tuple(kept)
        for g, deg in enumerate(self.multidegree):
            if g not in kept and deg != 0:
                raise ValueError(f"nonzero degree in dropped group {g}")
        spans = []
        pos = 0
        for dim in self.group_dims:
            spans.append((pos, pos + dim))
            pos += dim
        terms = {}
        for exps, c in self.terms.items():
            key = tuple(x for g in kept for x in exps[spans[g][0] : spans[g][1]])
            terms[key] = c
        return MultiForm(tuple(self.group_dims[g] for g in kept), terms, p=self.p)

    def reduce_mod(self, p):
        if self.p is not None:
            raise ValueError("form already lives over a prime field")
        return MultiForm(
            self.group_dims,
            {e: reduce_scalar(c, p) for e, c in self.terms.items()},
            p=p,
        )

    def coefficient(self, exps):
        zero = 0 if self.p is not None else Fraction(0)
        return self.terms.get(tuple(exps), zero)

    def __eq__(self, other):
        return (
            isinstance(other, MultiForm)
            and self.group_dims == other.group_dims
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.group_dims, self.p, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "MultiForm(0)"
        bits = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = []
            pos = 0
            for g, dim in enumerate(self.group_dims):
                for i in range(dim):
                    e = exps[pos + i]
                    if e == 1:
                        mono.append(f"{_GROUP_NAMES[g]}{i}")
                    elif e > 1:
                        mono.append(f"{_GROUP_NAMES[g]}{i}^{e}")
                pos += dim
            body = "*".join(mono) if mono else "1"
            bits.append(f"{c}*{body}" if c != 1 or not mono else body)
        return " + ".join(bits)


@dataclass(frozen=True)
class VarietyModel:
    """d multilinear forms whose coefficient rows are the canonical basis
    of the flattening image."""

    n: int
    d: int
    forms: tuple
    source_hash: str
    source: object = None    # source Tensor, when built from one

    @property
    def groups(self):
        return self.n - 1

    @property
    def p(self):
        return self.forms[0].p if self.forms else None

    def reduce_mod(self, p):
        """Entrywise reduction of the rational coefficient rows; raises
        BadReductionError when a basis denominator is divisible by p."""
        return VarietyModel(
            self.n,
            self.d,
            tuple(f.reduce_mod(p) for f in self.forms),
            self.source_hash,
            self.source,
        )


def model_mod_p(model, p):
    """The model over F_p, preferring the state-side (saturated) reduction.

    When the source tensor is available the forms are rebuilt from the
    reduced flattening image, so denominators of the rational canonical
    basis cannot poison the prime; a rank drop of the reduced flattening
    is genuine geometric degeneration and raises BadReductionError.
    """
    from .states import reduced_flattening_image

    if model.p == p:
        return model
    if model.source is None:
        return model.reduce_mod(p)
    sub = reduced_flattening_image(model.source, p)
    if sub.dim < model.d:
        raise BadReductionError(p, "flattening rank drops modulo p")
    dims = (model.d,) * model.groups
    forms = tuple(
        MultiForm.from_multilinear(dims, row, p=p) for row in sub.basis.entries
    )
    return VarietyModel(model.n, model.d, forms, model.source_hash, model.source)


@dataclass(frozen=True)
class ProjPoint:
    """A point of a product of projective spaces over F_p.

    Each coordinate tuple has its first nonzero entry normalized to 1, so
    representatives are unique and comparable.
    """

    p: int
    coords: tuple

    def __str__(self):
        return " x ".join("[" + ":".join(str(x) for x in c) + "]" for c in self.coords)


@dataclass(frozen=True)
class SmoothnessReport:
    """Per-prime point counts and Jacobian-rank evidence.

    A recorded singular witness is strong evidence against smoothness (and
    proof modulo that prime); an empty sweep is probabilistic evidence only.
    ``bad_primes`` divide a denominator; ``excluded_primes`` divide an exact
    curve discriminant, so the reduction degenerates and says nothing about
    the original model.
    """

    primes: tuple
    point_counts: tuple          # (prime, count) pairs, ascending primes
    bad_primes: tuple
    excluded_primes: tuple
    witnesses: tuple             # (prime, ProjPoint, jacobian rank)
    verdict: str                 # "SingularFound" | "NoSingularPointFound"

    def to_json_dict(self):
        return {
            "verdict": self.verdict,
            "primes": list(self.primes),
            "point_counts": [[p, c] for p, c in self.point_counts],
            "bad_primes": list(self.bad_primes),
            "excluded_primes": list(self.excluded_primes),
            "witnesses": [
                {"prime": p, "point": [list(c) for c in pt.coords], "rank": r}
                for p, pt, r in self.witnesses
            ],
        }


def section_count(n, d):
    """Expected dimension of the degree-(1,...,1) section space on the model:
    all multilinear monomials modulo the d defining forms."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    return d ** (n - 1) - d


def variety_from_state(t):
    """Build the model cut out by the flattening image.

    Raises RankDeficientError when the image has dimension below d: such a
    state sits outside the generic locus and has no complete-intersection
    model of the expected codimension.
    """
    sub = flattening_image(t)
    if sub.dim != t.d:
        raise RankDeficientError(sub.dim, t.d)
    dims = (t.d,) * (t.n - 1)
    forms = tuple(
        MultiForm.from_multilinear(dims, row) for row in sub.basis.entries
    )
    return VarietyModel(t.n, t.d, forms, state_hash(t), t)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinantal_projection(model, kept_axes):
    """Eliminate one variable group through the determinant of the matrix
    of linear forms.

    For (3,3) keep one axis and get a ternary cubic; for (4,2) keep two and
    get a form of bidegree (2,2).  The matrix entry (k, j) is the partial
    derivative of form k with respect to variable j of the dropped group.
    """
    kept = tuple(sorted(kept_axes))
    fmt = (model.n, model.d)
    if fmt == (3, 3):
        if len(kept) != 1 or not all(0 <= a < 2 for a in kept):
            raise UnsupportedFormatError("(3,3) projections keep exactly one of axes 0,1")
    elif fmt == (4, 2):
        if len(kept) != 2 or not all(0 <= a < 3 for a in kept):
            raise UnsupportedFormatError("(4,2) projections keep exactly two of axes 0,1,2")
    else:
        raise UnsupportedFormatError(f"no determinantal projection for format {fmt}")
    dropped = next(g for g in range(model.groups) if g not in kept)
    entries = [
        [form.partial(dropped, j) for j in range(model.d)] for form in model.forms
    ]
    det = MultiForm.zero(model.forms[0].group_dims, p=model.forms[0].p)
    for perm in permutations(range(model.d)):
        prod_form = entries[0][perm[0]]
        for k in range(1, model.d):
            prod_form = prod_form.mul(entries[k][perm[k]])
        det = det.add(prod_form.scale(_perm_sign(perm)))
    return det.drop_groups(kept)


def projective_points(dim, p):
    """All normalized representatives of P^(dim-1) over F_p, in a fixed order."""
    for lead in range(dim):
        prefix = (0,) * lead + (1,)
        for tail in product(range(p), repeat=dim - 1 - lead):
            yield prefix + tail


def _normalize_projective(vec, p):
    lead = next((i for i, x in enumerate(vec) if x != 0), None)
    if lead is None:
        return None
    inv = pow(vec[lead], -1, p)
    return tuple(x * inv % p for x in vec)


def _subspace_points(basis_rows, dim, p):
    """Normalized projective points of the row span of an RREF basis."""
    k = len(basis_rows)
    if k == 0:
        return
    for coeff in projective_points(k, p):
        vec = [0] * dim
        for c, row in zip(coeff, basis_rows):
            if c:
                for i, x in enumerate(row):
                    vec[i] = (vec[i] + c * x) % p
        yield _normalize_projective(vec, p)


def enumerate_points(model, p):
    """Exhaustive, duplicate-free list of F_p-points of the model.

    The forms are multilinear, so once every group but the last is fixed
    they become a square linear system in the last group; points over each
    prefix are exactly the projective points of that system's kernel.  This
    keeps the sweep at (number of prefixes) x (small RREF) instead of a
    full product over all groups.
    """
    reduced = model_mod_p(model, p)
    groups = reduced.groups
    d = reduced.d
    points = []
    if groups == 1:
        for x in projective_points(d, p):
            if all(f.evaluate((x,)) == 0 for f in reduced.forms):
                points.append(ProjPoint(p, (x,)))
        return points
    units = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
    prefix_space = [projective_points(d, p) for _ in range(groups - 1)]
    for prefix in product(*prefix_space):
        rows = [
            [f.evaluate(prefix + (units[j],)) for j in range(d)]
            for f in reduced.forms
        ]
        kernel = Matrix(rows, cols=d, p=p).kernel()
        for tail in _subspace_points(kernel.basis.entries, d, p):
            points.append(ProjPoint(p, prefix + (tail,)))
    return points


def _jacobian_rows(partials, pt):
    return [
        [pf.evaluate(pt.coords) for pf in form_partials]
        for form_partials in partials
    ]


def _model_partials(reduced):
    return [
        [
            form.partial(g, i)
            for g in range(reduced.groups)
            for i in range(reduced.d)
        ]
        for form in reduced.forms
    ]


def jacobian_rank_at(model, pt):
    """Rank over F_p of the matrix of partial derivatives at a point.

    The model is smooth at the point exactly when the rank equals d.  The
    point must satisfy every defining form, else NotOnVarietyError.
    """
    reduced = model_mod_p(model, pt.p)
    for f in reduced.forms:
        if f.evaluate(pt.coords) != 0:
            raise NotOnVarietyError(f"form {f!r} does not vanish at {pt}")
    rows = _jacobian_rows(_model_partials(reduced), pt)
    return Matrix(rows, cols=reduced.groups * reduced.d, p=pt.p).rank()


def smoothness_scan(t, primes=None):
    """Sweep primes: enumerate all points and test every Jacobian rank.

    Any rank drop is recorded as a witness and the verdict becomes
    SingularFound; a clean sweep is probabilistic evidence only.  Primes
    where the state itself has a denominator (or where the flattening rank
    drops) are reported bad; for curve formats that are smooth by the exact
    discriminant test, primes where the reduced curve degenerates are
    excluded from the sweep, since rank drops there say nothing about the
    original model.
    """
    from .invariants import curve_singular_mod_p, exact_projection_discriminants

    model = variety_from_state(t)
    if primes is None:
        primes = DEFAULT_PRIMES
    primes = tuple(sorted(set(primes)))
    discs = exact_projection_discriminants(t)
    smooth_curve_over_q = discs is not None and all(d != 0 for d in discs)
    counts = []
    bad = []
    excluded = []
    witnesses = []
    used = []
    for p in primes:
        try:
            reduced = model_mod_p(model, p)
        except BadReductionError:
            bad.append(p)
            continue
        if smooth_curve_over_q and curve_singular_mod_p(reduced):
            excluded.append(p)
            continue
        used.append(p)
        pts = enumerate_points(reduced, p)
        counts.append((p, len(pts)))
        partials = _model_partials(reduced)
        for pt in pts:
            rows = _jacobian_rows(partials, pt)
            rank = Matrix(rows, cols=reduced.groups * reduced.d, p=p).rank()
            if rank < model.d:
                witnesses.append((p, pt, rank))
                break
    if not used and not excluded:
        raise AllPrimesBadError(f"all primes {list(primes)} hit bad reduction")
    verdict = "SingularFound" if witnesses else "NoSingularPointFound"
    return SmoothnessReport(
        primes=tuple(used),
        point_counts=tuple(counts),
        bad_primes=tuple(bad),
        excluded_primes=tuple(excluded),
        witnesses=tuple(witnesses),
        verdict=verdict,
    )


def hasse_window(p):
    """Exact integer point-count window for a genus-one curve over F_p:
    [p + 1 - floor(2*sqrt(p)), p + 1 + floor(2*sqrt(p))].  Used as a
    sanity oracle for the elliptic-curve cases; violations flag bugs."""
    from math import isqrt

    b = isqrt(4 * p)
    return p + 1 - b, p + 1 + b
