"""Classical invariants of the projected curves and the final verdicts.

The plane-cubic invariants S (degree 4) and T (degree 6) are not copied
from any table: they are generated at first use as full epsilon
contractions of the symmetric coefficient tensor, then calibrated on the
Weierstrass family  x1^2*x2 - x0^3 - a*x0*x2^2 - b*x2^3  so that
j = KAPPA * S^3 / (64*S^3 - T^2) reproduces 1728*4a^3/(4a^3 + 27b^2).
Requiring S = -3a and T = 108b on that family pins the scale of both
invariants and forces KAPPA = 110592; the discriminant 64*S^3 - T^2 then
vanishes exactly on singular cubics.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import permutations, product
from math import factorial

from .errors import (
    BadReductionError,
    AllPrimesBadError,
    FormatMismatchError,
    SloccGeoError,
    UnsupportedFormatError,
    WrongDegreeError,
    WrongFormatError,
)
from .linalg import DEFAULT_PRIMES, Matrix
from .states import flattening_image
from .geometry import (
    MultiForm,
    determinantal_projection,
    smoothness_scan,
    variety_from_state,
)

KAPPA = 110592
QUARTIC_J_SCALE = 6912

#: Exponent triples of the ternary-cubic monomials, lexicographically
#: descending: x0^3, x0^2*x1, x0^2*x2, x0*x1^2, x0*x1*x2, x0*x2^2, x1^3,
#: x1^2*x2, x1*x2^2, x2^3.
CUBIC_MONOMIALS = tuple(
    sorted(
        ((i, j, 3 - i - j) for i in range(4) for j in range(4 - i)),
        reverse=True,
    )
)
_CUBIC_INDEX = {m: i for i, m in enumerate(CUBIC_MONOMIALS)}


class TernaryCubic:
    """A cubic form in three variables, stored as 10 exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != 10:
            raise ValueError("a ternary cubic has 10 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("TernaryCubic is immutable")

    @classmethod
    def from_form(cls, form):
        if form.group_dims != (3,) or (not form.is_zero() and form.multidegree != (3,)):
            raise WrongDegreeError("expected a cubic form in one group of 3 variables")
        return cls([form.coefficient(m) for m in CUBIC_MONOMIALS])

    @classmethod
    def from_terms(cls, terms):
        """Build from {exponent triple: coefficient}."""
        coeffs = [Fraction(0)] * 10
        for mono, c in terms.items():
            coeffs[_CUBIC_INDEX[tuple(mono)]] = Fraction(c)
        return cls(coeffs)

    @classmethod
    def weierstrass(cls, alpha, beta):
        """x1^2*x2 - x0^3 - alpha*x0*x2^2 - beta*x2^3."""
        return cls.from_terms(
            {(0, 2, 1): 1, (3, 0, 0): -1, (1, 0, 2): -alpha, (0, 0, 3): -beta}
        )

    def to_form(self):
        return MultiForm((3,), dict(zip(CUBIC_MONOMIALS, self.coeffs)))

    def __eq__(self, other):
        return isinstance(other, TernaryCubic) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TernaryCubic({self.coeffs})"


_PERMS3 = []
for _perm in permutations((0, 1, 2)):
    _sgn = 1
    for _i in range(3):
        for _j in range(_i + 1, 3):
            if _perm[_i] > _perm[_j]:
                _sgn = -_sgn
    _PERMS3.append((_perm, _sgn))


def _scaled_entry(i, j, k):
    """Entry (as coefficient multiple) of six times the symmetric tensor
    of a cubic: w_ijk = 6 * f_ijk where f is the polarized form."""
    counts = [0, 0, 0]
    for t in (i, j, k):
        counts[t] += 1
    perms = 6
    for c in counts:
        perms //= factorial(c)
    return 6 // perms, _CUBIC_INDEX[tuple(counts)]


_W = {
    (i, j, k): _scaled_entry(i, j, k)
    for i in range(3)
    for j in range(3)
    for k in range(3)
}


def _accumulate(poly, key, coeff):
    val = poly.get(key, 0) + coeff
    if val:
        poly[key] = val
    else:
        poly.pop(key, None)


def _contract_degree4():
    """Complete contraction of four copies of the cubic tensor with four
    epsilons; each tensor skips exactly one epsilon, which is the unique
    3-regular pairing at this degree."""
    poly = {}
    for (a, sa), (b, sb), (c, sc), (d, sd) in product(_PERMS3, repeat=4):
        ents = (
            _W[(b[0], c[0], d[0])],
            _W[(a[0], c[1], d[1])],
            _W[(a[1], b[1], d[2])],
            _W[(a[2], b[2], c[2])],
        )
        coeff = sa * sb * sc * sd
        exps = [0] * 10
        for fac, m in ents:
            coeff *= fac
            exps[m] += 1
        _accumulate(poly, tuple(exps), coeff)
    return poly


def _contract_degree6():
    """Cyclic contraction of six copies with six epsilons: tensor i feeds
    slot 0 of epsilon i, slot 1 of epsilon i+1, slot 2 of epsilon i+2."""
    poly = {}
    for perms in product(_PERMS3, repeat=6):
        coeff = 1
        for _, s in perms:
            coeff *= s
        exps = [0] * 10
        for i in range(6):
            fac, m = _W[
                (perms[i][0][0], perms[(i + 1) % 6][0][1], perms[(i + 2) % 6][0][2])
            ]
            coeff *= fac
            exps[m] += 1
        _accumulate(poly, tuple(exps), coeff)
    return poly


def _evaluate_poly(poly, coeffs):
    total = Fraction(0)
    for exps, k in poly.items():
        term = Fraction(k)
        for m, e in enumerate(exps):
            if e:
                term *= coeffs[m] ** e
        total += term
    return total


@cache
def _calibrated_invariant_polys():
    s_raw = _contract_degree4()
    t_raw = _contract_degree6()
    unit_a = TernaryCubic.weierstrass(1, 0).coeffs
    unit_b = TernaryCubic.weierstrass(0, 1).coeffs
    u = _evaluate_poly(s_raw, unit_a)
    v = _evaluate_poly(t_raw, unit_b)
    if u == 0 or v == 0:
        raise SloccGeoError("invariant contraction degenerated; calibration impossible")
    s_scale = Fraction(-3) / u
    t_scale = Fraction(108) / v
    s_poly = {e: s_scale * k for e, k in s_raw.items()}
    t_poly = {e: t_scale * k for e, k in t_raw.items()}
    return s_poly, t_poly


def aronhold_invariants(f):
    """The degree-4 and degree-6 invariants (S, T) of a ternary cubic."""
    s_poly, t_poly = _calibrated_invariant_polys()
    return _evaluate_poly(s_poly, f.coeffs), _evaluate_poly(t_poly, f.coeffs)


def cubic_discriminant(f):
    s, t = aronhold_invariants(f)
    return 64 * s**3 - t**2


def j_plane_cubic(f):
    """j-invariant of a plane cubic; None marks the singular locus."""
    s, t = aronhold_invariants(f)
    disc = 64 * s**3 - t**2
    if disc == 0:
        return None
    return KAPPA * s**3 / disc


@dataclass(frozen=True)
class BinaryQuartic:
    """a*s^4 + b*s^3*t + c*s^2*t^2 + d*s*t^3 + e*t^4 with exact coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    @classmethod
    def of(cls, a, b, c, d, e):
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d), Fraction(e))


def quartic_invariants(g):
    """The classical degree-2 and degree-3 invariants (I, J)."""
    a, b, c, d, e = g.a, g.b, g.c, g.d, g.e
    i_val = 12 * a * e - 3 * b * d + c * c
    j_val = (
        72 * a * c * e
        + 9 * b * c * d
        - 27 * a * d * d
        - 27 * b * b * e
        - 2 * c**3
    )
    return i_val, j_val


def quartic_discriminant(g):
    i_val, j_val = quartic_invariants(g)
    return 4 * i_val**3 - j_val**2


def j_binary_quartic(g):
    """j-invariant of the double cover branched at the quartic's roots."""
    i_val, j_val = quartic_invariants(g)
    disc = 4 * i_val**3 - j_val**2
    if disc == 0:
        return None
    return QUARTIC_J_SCALE * i_val**3 / disc


def _quadratic_in_second_group(m):
    """Split a (2,2)-form as A(x)*y0^2 + B(x)*y0*y1 + C(x)*y1^2, each of
    A, B, C a triple of x-quadratic coefficients (x0^2, x0*x1, x1^2)."""
    zero = 0 if m.p is not None else Fraction(0)
    out = {(2, 0): [zero] * 3, (1, 1): [zero] * 3, (0, 2): [zero] * 3}
    for exps, c in m.terms.items():
        xpart, ypart = (exps[0], exps[1]), (exps[2], exps[3])
        out[ypart][2 - xpart[0]] = c
    return out[(2, 0)], out[(1, 1)], out[(0, 2)]


def _conv3(u, v, zero=Fraction(0)):
    """Product of two binary quadratics as a binary quartic coefficient list."""
    out = [zero] * 5
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] += a * b
    return out


def branch_quartic(m):
    """Discriminant of a (2,2)-form read as a quadratic in the second pair:
    the binary quartic over the first pair whose roots are the branch
    points of the 2:1 projection."""
    if m.group_dims != (2, 2):
        raise WrongDegreeError("expected a form on two groups of 2 variables")
    if not m.is_zero() and m.multidegree != (2, 2):
        raise WrongDegreeError(f"expected bidegree (2,2), got {m.multidegree}")
    a_q, b_q, c_q = _quadratic_in_second_group(m)
    disc = [x - 4 * y for x, y in zip(_conv3(b_q, b_q), _conv3(a_q, c_q))]
    return BinaryQuartic(*disc)


def j_biquadratic(m):
    """j-invariant of a (2,2)-curve via its branch quartic; None if singular.

    The quartic is kept homogeneous throughout, so a vanishing leading
    coefficient needs no special chart handling; a repeated root (equal
    branch points) is exactly the 4*I^3 = J^2 locus.
    """
    return j_binary_quartic(branch_quartic(m))


def _slices_along_last(t):
    """The d slices of a tensor along its distinguished last axis, each a
    coefficient list of an (n-1)-factor tensor."""
    size = len(t.coeffs) // t.d
    return [
        [t.coeffs[m * t.d + k] for m in range(size)] for k in range(t.d)
    ]


def cayley_hyperdet(t):
    """Degree-4 hyperdeterminant of a 2x2x2 tensor.

    Computed as the discriminant of the determinant of the matrix pencil
    spanned by the two slices along the last axis; it vanishes exactly when
    that pencil of bilinear forms is degenerate.
    """
    if (t.n, t.d) != (3, 2):
        raise WrongFormatError(f"Cayley hyperdeterminant needs format 2x2x2, got {(t.n, t.d)}")
    s0, s1 = _slices_along_last(t)
    m0 = Matrix([[s0[0], s0[1]], [s0[2], s0[3]]])
    m1 = Matrix([[s1[0], s1[1]], [s1[2], s1[3]]])
    msum = Matrix([[a + b for a, b in zip(r0, r1)] for r0, r1 in zip(m0.entries, m1.entries)])
    a = m0.det()
    c = m1.det()
    b = msum.det() - a - c
    return b * b - 4 * a * c


def schlaefli_hyperdet(t):
    """Degree-24 hyperdeterminant of a 2x2x2x2 tensor.

    The Cayley hyperdeterminant of the slice pencil s*T0 + u*T1 is a binary
    quartic in (s, u); the value returned is its discriminant normalized as
    (4*I^3 - J^2)/27.
    """
    from .states import Tensor

    if (t.n, t.d) != (4, 2):
        raise WrongFormatError(f"Schlaefli hyperdeterminant needs format 2x2x2x2, got {(t.n, t.d)}")
    s0, s1 = _slices_along_last(t)

    def pencil_value(s, u):
        coeffs = [s * x + u * y for x, y in zip(s0, s1)]
        return cayley_hyperdet(Tensor(3, 2, coeffs))

    a = pencil_value(Fraction(1), Fraction(0))
    e = pencil_value(Fraction(0), Fraction(1))
    f1 = pencil_value(Fraction(1), Fraction(1)) - a - e
    f2 = pencil_value(Fraction(1), Fraction(-1)) - a - e
    f3 = pencil_value(Fraction(1), Fraction(2)) - a - 16 * e
    c = (f1 + f2) / 2
    s1_val = f1 - c                      # b + d
    s2_val = (f3 - 4 * c) / 2            # b + 4 d
    d_coef = (s2_val - s1_val) / 3
    b_coef = s1_val - d_coef
    quartic = BinaryQuartic(a, b_coef, c, d_coef, e)
    return quartic_discriminant(quartic) / 27


def moduli_dimension(n, d):
    """Dimension of the generic orbit-space: d^n - n*d^2 + n - 1."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    return d**n - n * d * d + n - 1


RANK_DEFICIENT = "RankDeficient"
SINGULAR_MODEL = "SingularModel"
SMOOTH_GENERIC = "SmoothGeneric"

PLANE_CUBIC = "plane_cubic"
BIQUADRATIC = "biquadratic"


@dataclass(frozen=True)
class CurveInvariants:
    """Exact invariants of one projected curve.

    ``pair`` is (S, T) for a plane cubic and (I, J) for the branch quartic
    of a biquadratic; ``j`` is None exactly when the discriminant vanishes.
    """

    kind: str
    pair: tuple
    discriminant: Fraction
    j: object

    def to_json_dict(self):
        names = ("S", "T") if self.kind == PLANE_CUBIC else ("I", "J")
        return {
            "kind": self.kind,
            names[0]: _frac_str(self.pair[0]),
            names[1]: _frac_str(self.pair[1]),
            "discriminant": _frac_str(self.discriminant),
            "j": _j_json(self.j),
        }


@dataclass(frozen=True)
class Projection:
    axes: tuple
    invariants: CurveInvariants

    def to_json_dict(self):
        out = {"axes": list(self.axes)}
        out.update(self.invariants.to_json_dict())
        return out


@dataclass(frozen=True)
class Verdict:
    """Classification record for one state."""

    n: int
    d: int
    status: str
    rank: int
    projections: tuple
    j: object                   # Fraction, None (singular/unavailable)
    hyperdeterminant: object    # Fraction or None
    semistable_hint: object     # bool or None
    primes_used: tuple
    singular_witness: object    # (prime, ProjPoint, rank) or None

    def to_json_dict(self):
        if self.status == SMOOTH_GENERIC and self.j is not None:
            j_out = _j_json(self.j)
        elif self.status == SINGULAR_MODEL:
            j_out = "singular"
        else:
            j_out = None
        witness = None
        if self.singular_witness is not None:
            wp, wpt, wrank = self.singular_witness
            witness = {
                "prime": wp,
                "point": [list(c) for c in wpt.coords],
                "rank": wrank,
            }
        return {
            "status": self.status,
            "j": j_out,
            "projections": [pr.to_json_dict() for pr in self.projections],
            "hyperdeterminant": (
                None if self.hyperdeterminant is None else _frac_str(self.hyperdeterminant)
            ),
            "semistable_hint": self.semistable_hint,
            "primes_used": list(self.primes_used),
            "singular_witness": witness,
        }


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _j_json(j):
    if j is None:
        return "singular"
    j = Fraction(j)
    return [str(j.numerator), str(j.denominator)]


def _curve_projections(t):
    fmt = (t.n, t.d)
    model = variety_from_state(t)
    projections = []
    if fmt == (3, 3):
        for axes in ((0,), (1,)):
            cubic = TernaryCubic.from_form(determinantal_projection(model, axes))
            s, tv = aronhold_invariants(cubic)
            disc = 64 * s**3 - tv**2
            j = None if disc == 0 else KAPPA * s**3 / disc
            projections.append(
                Projection(axes, CurveInvariants(PLANE_CUBIC, (s, tv), disc, j))
            )
    else:
        for axes in ((0, 1), (0, 2), (1, 2)):
            quartic = branch_quartic(determinantal_projection(model, axes))
            i_val, j_val = quartic_invariants(quartic)
            disc = 4 * i_val**3 - j_val**2
            j = None if disc == 0 else QUARTIC_J_SCALE * i_val**3 / disc
            projections.append(
                Projection(axes, CurveInvariants(BIQUADRATIC, (i_val, j_val), disc, j))
            )
    return projections


def exact_projection_discriminants(t):
    """Exact discriminants of every projected curve, or None when the
    format has no determinantal projections or the rank is deficient."""
    if (t.n, t.d) not in ((3, 3), (4, 2)):
        return None
    if flattening_image(t).dim != t.d:
        return None
    return tuple(pr.invariants.discriminant for pr in _curve_projections(t))


def _evaluate_poly_mod(poly, coeffs, p):
    total = 0
    for exps, k in poly.items():
        k = Fraction(k)
        term = k.numerator * pow(k.denominator, -1, p) % p
        for m, e in enumerate(exps):
            if e:
                term = term * pow(coeffs[m], e, p) % p
        total = (total + term) % p
    return total


def curve_singular_mod_p(model_p):
    """Whether a curve model over F_p has a vanishing projection
    discriminant; used to recognize primes of bad geometric reduction.
    Requires p > 3 so the invariant denominators stay invertible."""
    p = model_p.forms[0].p
    fmt = (model_p.n, model_p.d)
    if fmt == (3, 3):
        s_poly, t_poly = _calibrated_invariant_polys()
        for axes in ((0,), (1,)):
            proj = determinantal_projection(model_p, axes)
            coeffs = [proj.coefficient(m) for m in CUBIC_MONOMIALS]
            s = _evaluate_poly_mod(s_poly, coeffs, p)
            tv = _evaluate_poly_mod(t_poly, coeffs, p)
            if (64 * pow(s, 3, p) - tv * tv) % p == 0:
                return True
        return False
    if fmt == (4, 2):
        for axes in ((0, 1), (0, 2), (1, 2)):
            proj = determinantal_projection(model_p, axes)
            a_q, b_q, c_q = _quadratic_in_second_group(proj)
            quartic = [
                (x - 4 * y) % p
                for x, y in zip(_conv3(b_q, b_q, 0), _conv3(a_q, c_q, 0))
            ]
            a, b, c, d, e = quartic
            i_val = (12 * a * e - 3 * b * d + c * c) % p
            j_val = (
                72 * a * c * e + 9 * b * c * d - 27 * a * d * d
                - 27 * b * b * e - 2 * pow(c, 3, p)
            ) % p
            if (4 * pow(i_val, 3, p) - j_val * j_val) % p == 0:
                return True
        return False
    raise UnsupportedFormatError(f"no curve discriminants for format {fmt}")


def _format_hyperdet(t):
    if (t.n, t.d) == (3, 2):
        return cayley_hyperdet(t)
    if (t.n, t.d) == (4, 2):
        return schlaefli_hyperdet(t)
    return None


def classify(t, primes=None):
    """Full verdict for a state: rank, exact curve invariants where the
    format supports them, finite-field smoothness evidence elsewhere.

    For (3,3) and (4,2) the smooth/singular split is decided exactly by
    discriminants; the prime sweep only supplies a singular witness.  For
    other formats (notably (5,2)) the verdict rests on the sweep alone.
    """
    if primes is None:
        primes = DEFAULT_PRIMES
    primes = tuple(sorted(set(primes)))
    fmt = (t.n, t.d)
    rank = flattening_image(t).dim
    hyperdet = _format_hyperdet(t)
    hint = None if hyperdet is None else hyperdet != 0

    if rank < t.d:
        return Verdict(t.n, t.d, RANK_DEFICIENT, rank, (), None, hyperdet, hint, (), None)

    if fmt in ((3, 3), (4, 2)):
        projections = tuple(_curve_projections(t))
        if all(pr.invariants.discriminant != 0 for pr in projections):
            js = {pr.invariants.j for pr in projections}
            if len(js) != 1:
                raise SloccGeoError(
                    f"projection j values disagree: {sorted(map(str, js))}"
                )
            return Verdict(
                t.n, t.d, SMOOTH_GENERIC, rank, projections,
                js.pop(), hyperdet, hint, (), None,
            )
        witness = None
        used = ()
        try:
            report = smoothness_scan(t, primes)
            used = report.primes
            if report.witnesses:
                witness = report.witnesses[0]
        except (AllPrimesBadError, BadReductionError):
            pass
        return Verdict(
            t.n, t.d, SINGULAR_MODEL, rank, projections,
            None, hyperdet, hint, used, witness,
        )

    scan_primes = tuple(p for p in primes if p <= 13) if fmt == (5, 2) else primes
    if not scan_primes:
        scan_primes = primes
    report = smoothness_scan(t, scan_primes)
    # No exact discriminant exists here, so a single-prime witness may be
    # bad-reduction noise; only a strict majority of usable primes decides.
    witness_primes = {w[0] for w in report.witnesses}
    if report.primes and 2 * len(witness_primes) > len(report.primes):
        return Verdict(
            t.n, t.d, SINGULAR_MODEL, rank, (), None, hyperdet, hint,
            report.primes, report.witnesses[0],
        )
    return Verdict(
        t.n, t.d, SMOOTH_GENERIC, rank, (), None, hyperdet, hint,
        report.primes, None,
    )


DISTINCT_CERTIFIED = "DistinctCertified"
CONSISTENT_UNKNOWN = "ConsistentUnknown"
BOTH_DEGENERATE = "BothDegenerate"


@dataclass(frozen=True)
class ComparisonResult:
    outcome: str
    detail: str
    left: Verdict
    right: Verdict

    def to_json_dict(self):
        return {
            "outcome": self.outcome,
            "detail": self.detail,
            "left": self.left.to_json_dict(),
            "right": self.right.to_json_dict(),
        }


def slocc_compare(a, b, primes=None):
    """Compare two states of the same format.

    Distinctness can be certified (different statuses, or both smooth with
    different j); agreement never can, because equal j leaves the remaining
    line-bundle data undetermined and the dictionary itself only holds on
    the generic locus.
    """
    if (a.n, a.d) != (b.n, b.d):
        raise FormatMismatchError(f"formats {(a.n, a.d)} and {(b.n, b.d)} differ")
    va = classify(a, primes)
    vb = classify(b, primes)
    if va.status != vb.status:
        return ComparisonResult(
            DISTINCT_CERTIFIED,
            f"statuses differ: {va.status} vs {vb.status}",
            va,
            vb,
        )
    if va.status == SMOOTH_GENERIC:
        if va.j != vb.j:
            return ComparisonResult(
                DISTINCT_CERTIFIED, "exact j values differ", va, vb
            )
        return ComparisonResult(
            CONSISTENT_UNKNOWN,
            "equal j; line-bundle data not compared, equivalence not certified",
            va,
            vb,
        )
    return ComparisonResult(
        BOTH_DEGENERATE,
        f"both states have status {va.status}; j-based separation unavailable",
        va,
        vb,
    )
