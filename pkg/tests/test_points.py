from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from logk3.points import (
    CertificationError,
    CurveFamily,
    MPoint,
    ModelError,
    SurfaceModel,
    counterexample_model,
    curve_decomposition,
    is_solution,
    naive_search,
    nondensity_certificate,
    quadratic_model,
    ratio_bound,
    search_box,
    trivial_model,
)

small = st.integers(-3, 3)


@settings(max_examples=25, deadline=None)
@given(st.tuples(small, small, small, small, small, small))
def test_bilinear_search_matches_naive(c):
    model = SurfaceModel("bilinear", dict(zip("abcdef", c)))
    assert search_box(model, 1, 3) == naive_search(model, 1, 3)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 5, 6, 7]), small, small, small)
def test_normform_search_matches_naive(a, b, c, d):
    model = SurfaceModel("normform", dict(a=a, b=b, c=c, d=d))
    assert search_box(model, 1, 4) == naive_search(model, 1, 4)


def test_scaled_search_matches_naive():
    assert search_box(trivial_model(), 2, 3) == naive_search(trivial_model(), 2, 3)
    assert search_box(counterexample_model(), 1, 6) == naive_search(counterexample_model(), 1, 6)


def test_known_points():
    pts = search_box(quadratic_model(2), 1, 20)
    assert MPoint(3, 2, 1) in pts
    assert MPoint(11, 8, -1) in pts
    assert all(is_solution(quadratic_model(2), p) for p in pts)


def test_counterexample_box_empty():
    assert search_box(counterexample_model(), 1, 200) == set()


def test_model_validation():
    with pytest.raises(ModelError):
        SurfaceModel("normform", dict(a=4, b=0, c=1, d=-1))
    with pytest.raises(ModelError):
        SurfaceModel("generalD7", dict(a=1, b=1, c=1, d=1, m=1))  # ad - bc = 0
    with pytest.raises(ModelError):
        SurfaceModel("bilinear", dict(a=1))
    assert SurfaceModel.from_json(trivial_model().to_json()) == trivial_model()


def test_mpoint_integrality():
    MPoint(Fraction(1, 2), 0, 0, M=2)
    with pytest.raises(ValueError):
        MPoint(Fraction(1, 3), 0, 0, M=2)


@pytest.mark.parametrize("M", [1, 2, 3, 4])
def test_ratio_bound_is_sharp(M):
    ys = [Fraction(k, M) for k in range(-50 * M, 50 * M + 1) if k]
    assert max(abs((y - 1) / y) for y in ys) == ratio_bound(M)


def test_curve_family_sizes():
    fam = curve_decomposition(2)
    assert len(fam.y_values) == 17  # |y| <= 4 in steps of 1/2
    assert len(fam.x_values) == 25
    assert fam.contains(MPoint(Fraction(7, 2), 9, 0, M=2))


@pytest.mark.parametrize("M,B", [(1, 300), (2, 100), (3, 60)])
def test_nondensity_small_boxes(M, B):
    rep = nondensity_certificate(M, B)
    assert rep["pass"] and rep["on_family"] == rep["count"] > 0


def test_certificate_detects_a_too_small_family(monkeypatch):
    import logk3.points as points

    monkeypatch.setattr(points, "curve_decomposition", lambda M: CurveFamily(M, 0, 0))
    with pytest.raises(CertificationError):
        points.nondensity_certificate(1, 50)
