import random
from fractions import Fraction

import pytest

from sloccgeo.errors import (
    AllPrimesBadError,
    NotOnVarietyError,
    RankDeficientError,
    UnsupportedFormatError,
)
from sloccgeo.linalg import Matrix
from sloccgeo.geometry import (
    MultiForm,
    ProjPoint,
    VarietyModel,
    determinantal_projection,
    enumerate_points,
    hasse_window,
    jacobian_rank_at,
    model_mod_p,
    projective_points,
    section_count,
    smoothness_scan,
    variety_from_state,
)
from sloccgeo.states import basis_state, random_state


def bilinear(i, j):
    """The (3,3)-group monomial x_i * y_j as an exponent vector."""
    exps = [0] * 6
    exps[i] = 1
    exps[3 + j] = 1
    return tuple(exps)


def test_ghz3_model_forms(ghz3_qutrit):
    model = variety_from_state(ghz3_qutrit)
    assert model.d == 3 and len(model.forms) == 3
    assert [f.terms for f in model.forms] == [
        {bilinear(k, k): Fraction(1)} for k in range(3)
    ]
    assert all(f.multidegree == (1, 1) for f in model.forms)


def test_ghz4_model_forms(ghz4):
    model = variety_from_state(ghz4)
    expected = []
    for k in range(2):
        exps = [0] * 6
        exps[k] = exps[2 + k] = exps[4 + k] = 1
        expected.append({tuple(exps): Fraction(1)})
    assert [f.terms for f in model.forms] == expected


def test_model_rows_are_canonical_basis():
    t = random_state(3, 3, 5, seed=12)
    model = variety_from_state(t)
    rows = []
    for f in model.forms:
        row = [Fraction(0)] * 9
        for exps, c in f.terms.items():
            i = next(v for v in range(3) if exps[v])
            j = next(v - 3 for v in range(3, 6) if exps[v])
            row[i * 3 + j] = c
        rows.append(row)
    m = Matrix(rows, cols=9)
    assert m.rref()[1] == m  # coefficient matrix already in RREF


def test_separable_state_is_rank_deficient():
    with pytest.raises(RankDeficientError) as err:
        variety_from_state(basis_state(3, 3, (0, 0, 0)))
    assert err.value.dim == 1


def test_triangle_projection(ghz3_qutrit):
    model = variety_from_state(ghz3_qutrit)
    cubic = determinantal_projection(model, (0,))
    assert cubic.group_dims == (3,)
    assert cubic.terms == {(1, 1, 1): Fraction(1)}
    other = determinantal_projection(model, (1,))
    assert other.terms == {(1, 1, 1): Fraction(1)}


def test_ghz4_projection(ghz4):
    model = variety_from_state(ghz4)
    form = determinantal_projection(model, (0, 1))
    assert form.group_dims == (2, 2)
    assert form.terms == {(1, 1, 1, 1): Fraction(1)}  # x0*x1*y0*y1


def test_family_projection_is_nondegenerate(family_1235):
    from sloccgeo.invariants import branch_quartic, quartic_discriminant

    model = variety_from_state(family_1235)
    for axes in ((0, 1), (0, 2), (1, 2)):
        form = determinantal_projection(model, axes)
        assert form.multidegree == (2, 2)
        assert quartic_discriminant(branch_quartic(form)) != 0


def test_projection_rejects_bad_axes(ghz3_qutrit, ghz4):
    m33 = variety_from_state(ghz3_qutrit)
    m42 = variety_from_state(ghz4)
    with pytest.raises(UnsupportedFormatError):
        determinantal_projection(m33, (0, 1))
    with pytest.raises(UnsupportedFormatError):
        determinantal_projection(m42, (0,))
    with pytest.raises(UnsupportedFormatError):
        determinantal_projection(variety_from_state(random_state(5, 2, 5, seed=3)), (0, 1))


def test_multiform_algebra():
    dims = (2, 2)
    f = MultiForm(dims, {(1, 0, 1, 0): 2, (0, 1, 0, 1): 3})
    g = MultiForm(dims, {(1, 0, 0, 1): 1})
    prod = f.mul(g)
    assert prod.multidegree == (2, 2)
    assert prod.terms == {(2, 0, 1, 1): Fraction(2), (1, 1, 0, 2): Fraction(3)}
    # Leibniz rule on one variable
    left = prod.partial(0, 0)
    rule = f.partial(0, 0).mul(g).add(f.mul(g.partial(0, 0)))
    assert left == rule
    assert f.evaluate(((1, 2), (3, 4))) == 2 * 1 * 3 + 3 * 2 * 4


def test_multiform_substitute_matches_evaluation():
    rng = random.Random(17)
    dims = (3,)
    cubic = MultiForm(dims, {(3, 0, 0): 1, (1, 1, 1): -2, (0, 2, 1): 5})
    a = Matrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
    sub = cubic.substitute(0, a)
    for _ in range(6):
        x = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        assert sub.evaluate((x,)) == cubic.evaluate((a.apply(x),))


def test_multiform_drop_groups():
    f = MultiForm((2, 2), {(1, 1, 0, 0): 4})
    dropped = f.drop_groups((0,))
    assert dropped.group_dims == (2,)
    assert dropped.terms == {(1, 1): Fraction(4)}
    with pytest.raises(ValueError):
        MultiForm((2, 2), {(1, 0, 1, 0): 1}).drop_groups((0,))


def test_projective_points_count():
    for d, p in ((2, 5), (3, 3)):
        pts = list(projective_points(d, p))
        assert len(pts) == (p**d - 1) // (p - 1)
        assert len(set(pts)) == len(pts)


def test_enumerate_ghz3_points(ghz3_qutrit):
    model = variety_from_state(ghz3_qutrit)
    pts = enumerate_points(model, 5)
    coords = {pt.coords for pt in pts}
    assert len(coords) == len(pts)  # duplicate-free
    assert ((1, 0, 0), (0, 1, 0)) in coords
    reduced = model_mod_p(model, 5)
    for pt in pts:  # membership recheck
        assert all(f.evaluate(pt.coords) == 0 for f in reduced.forms)


def test_enumerate_zero_forms_full_space():
    p = 3
    zero = MultiForm.zero((3, 3), p=p)
    model = VarietyModel(3, 3, (zero,), "none")
    pts = enumerate_points(model, p)
    count = (p * p + p + 1) ** 2
    assert len(pts) == count == 169


def test_hasse_window_example():
    # exact integer window; sits inside the loose ceiling-based [3, 14]
    assert hasse_window(7) == (3, 13)


def test_smooth_curve_count_in_window():
    t = random_state(3, 3, 5, seed=42)  # smooth, good reduction at 7
    model = variety_from_state(t)
    count = len(enumerate_points(model, 7))
    lo, hi = hasse_window(7)
    assert lo <= count <= hi


def test_jacobian_rank_at_singular_point(ghz3_qutrit):
    model = variety_from_state(ghz3_qutrit)
    pt = ProjPoint(5, ((1, 0, 0), (0, 1, 0)))
    assert jacobian_rank_at(model, pt) == 2  # drops below d = 3


def test_jacobian_rank_on_smooth_state():
    t = random_state(3, 3, 5, seed=42)
    model = variety_from_state(t)
    for pt in enumerate_points(model, 11):
        assert jacobian_rank_at(model, pt) == 3


def test_jacobian_rejects_non_point(ghz3_qutrit):
    model = variety_from_state(ghz3_qutrit)
    with pytest.raises(NotOnVarietyError):
        jacobian_rank_at(model, ProjPoint(5, ((1, 1, 0), (1, 0, 0))))


def test_scan_ghz3_finds_witness(ghz3_qutrit):
    report = smoothness_scan(ghz3_qutrit, (5, 7))
    assert report.verdict == "SingularFound"
    p, pt, rank = report.witnesses[0]
    assert rank < 3
    model = variety_from_state(ghz3_qutrit)
    assert jacobian_rank_at(model, pt) == rank  # witness re-verifiable


def test_scan_family_excludes_bad_geometric_primes(family_1235):
    report = smoothness_scan(family_1235, (5, 7, 11))
    assert report.verdict == "NoSingularPointFound"
    assert report.excluded_primes == (5, 7, 11)
    assert report.point_counts == ()


def test_scan_family_good_primes_counts(family_1235):
    report = smoothness_scan(family_1235, (13, 17, 19))
    assert report.verdict == "NoSingularPointFound"
    assert report.excluded_primes == () and report.bad_primes == ()
    for p, count in report.point_counts:
        lo, hi = hasse_window(p)
        assert lo <= count <= hi


def test_scan_all_primes_bad(ghz3_qutrit):
    fifth = ghz3_qutrit.scale(Fraction(1, 5))
    with pytest.raises(AllPrimesBadError):
        smoothness_scan(fifth, (5,))
    # other primes unaffected by the denominator
    assert smoothness_scan(fifth, (5, 7)).verdict == "SingularFound"


def test_scan_report_is_deterministic(family_1235):
    a = smoothness_scan(family_1235, (17, 13))
    b = smoothness_scan(family_1235, (13, 17))
    assert a == b
    assert a.to_json_dict()["point_counts"] == [[13, 16], [17, 24]]


def test_model_mod_p_handles_rational_basis():
    # a state whose canonical basis has denominators at p, but whose
    # saturated reduction is still fine
    t = random_state(3, 3, 5, seed=0)
    model = variety_from_state(t)
    for p in (7, 11, 13):
        reduced = model_mod_p(model, p)
        assert all(f.p == p for f in reduced.forms)
        assert len(enumerate_points(reduced, p)) > 0


def test_section_count_values():
    assert section_count(3, 3) == 6
    assert section_count(4, 2) == 6
    assert section_count(5, 2) == 14
    with pytest.raises(ValueError):
        section_count(1, 3)
