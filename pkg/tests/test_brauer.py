import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logk3.brauer import (
    REAL,
    BrauerError,
    EvaluationError,
    HilbertPlace,
    LocalPoint,
    QuaternionClass,
    counterexample_report,
    evaluate_A,
    hilbert_symbol,
    hilbert_symbol_oracle,
    inequality_certificate,
    local_solubility_scan,
    local_witness,
    product_over_places,
    relevant_places,
    residue_mod_q_report,
    surjectivity_witnesses,
)
from logk3.points import CertificationError

PLACES = [2, 3, 5, 7, 11, "inf"]
nonzero = st.fractions(min_value=-60, max_value=60, max_denominator=30).filter(lambda q: q != 0)


def test_examples():
    assert hilbert_symbol(-1, -1, "inf") == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(2, 3, 2) == -1
    assert hilbert_symbol(2, 3, 5) == 1
    assert product_over_places(2, 3) == 1


@pytest.mark.parametrize("place", [3, 5, "inf"])
def test_agrees_with_oracle_small(place):
    for a in range(-12, 13):
        for b in range(-12, 13):
            if a and b:
                assert hilbert_symbol(a, b, place) == hilbert_symbol_oracle(a, b, place), (a, b)


def test_oracle_on_rationals():
    for a, b in [(Fraction(15, 4), Fraction(8, 3)), (Fraction(-7, 9), Fraction(5, 2)), (Fraction(1, 6), -3)]:
        for v in PLACES:
            assert hilbert_symbol(a, b, v) == hilbert_symbol_oracle(a, b, v)


@given(nonzero, nonzero, nonzero, st.sampled_from(PLACES))
def test_bimultiplicative_and_symmetric(a, b, c, v):
    assert hilbert_symbol(a * b, c, v) == hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
    assert hilbert_symbol(a, -a, v) == 1
    assert hilbert_symbol(a, b * b, v) == 1


def test_product_formula_random_pairs():
    rng = random.Random(7)
    for _ in range(100):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**4))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 10**6), rng.randint(1, 10**4))
        assert product_over_places(a, b) == 1


def test_symbol_is_trivial_outside_relevant_places():
    places = {v.p for v in relevant_places(6, -35)}
    for p in (11, 13, 17, 19):
        assert p not in places
        assert hilbert_symbol(6, -35, p) == 1


def test_bad_arguments():
    with pytest.raises(BrauerError):
        hilbert_symbol(0, 3, 3)
    with pytest.raises(BrauerError):
        HilbertPlace(9)
    with pytest.raises(BrauerError):
        HilbertPlace.parse("nowhere")
    assert HilbertPlace.parse("∞") == REAL


def test_evaluate_examples():
    q = QuaternionClass.counterexample()
    assert q.delta == -4
    assert q.entries(0, 1) == (Fraction(15, 4), Fraction(8, 3))
    assert evaluate_A(q, LocalPoint(3, 0, 1, Fraction(1, 8), q)) == -1
    assert evaluate_A(q, LocalPoint(3, 0, 2, Fraction(1, 13), q)) == 1


def test_evaluate_refuses_on_vanishing_entry():
    q = QuaternionClass(1, 0, 1, 1, 1)  # a x + b vanishes at x = 0
    P = LocalPoint(5, 0, 3, 1, q)
    with pytest.raises(EvaluationError):
        evaluate_A(q, P)


def test_local_point_certification():
    q = QuaternionClass.counterexample()
    with pytest.raises(CertificationError):
        LocalPoint(3, 0, 1, 1, q)  # not on the surface
    with pytest.raises(CertificationError):
        LocalPoint(2, 0, 1, Fraction(1, 8), q)  # t not 2-integral


def test_evaluation_depends_only_on_y_mod_3():
    q = QuaternionClass.counterexample()
    values = {}
    for x in range(-15, 16):
        for y in range(-15, 16):
            den = (11 * x + 5) * y + 3
            if den == 0:
                continue
            t = Fraction(3 * x + 1, den)
            if t.denominator % 3 == 0 or 0 in q.entries(x, y):
                continue
            values.setdefault(y % 3, set()).add(evaluate_A(q, LocalPoint(3, x, y, t, q)))
    assert values == {1: {-1}, 2: {1}}


def test_residue_report():
    q = QuaternionClass.counterexample()
    rep = residue_mod_q_report(q, 3)
    assert rep["coefficient"] == "-1/4"
    assert rep["coefficient_mod_p"] == 2
    assert rep["by_y_residue"]["1"]["A"] == -1
    assert rep["by_y_residue"]["2"]["A"] == 1
    with pytest.raises(BrauerError):
        residue_mod_q_report(q, 5)


def test_surjectivity_witnesses_are_the_slice_points():
    q = QuaternionClass.counterexample()
    wit = surjectivity_witnesses(q, 3)
    assert [wit[-1].x, wit[-1].y, wit[-1].t] == [0, 1, Fraction(1, 8)]
    assert [wit[1].x, wit[1].y, wit[1].t] == [0, 2, Fraction(1, 13)]


def test_local_witnesses():
    q = QuaternionClass.counterexample()
    w5 = local_witness(q, 5)
    assert (w5.x, w5.y, w5.t) == (3, 0, Fraction(10, 3))
    w3 = local_witness(q, 3)
    assert w3.t == 1
    assert (local_witness(q, "inf").t) == Fraction(1, 3)
    rep = local_solubility_scan(q, 100)
    assert rep["places"] == 26 and rep["all_soluble"]


def test_inequality_certificate():
    rep = inequality_certificate(QuaternionClass.counterexample(), window=500)
    assert rep["pass"]
    assert [t["gap"] for t in rep["tails"]] == ["8*x + 1", "-8*x + -7"]
    # a family where the inequality fails somewhere
    assert not inequality_certificate(QuaternionClass(1, 0, 3, 1, 3), window=50)["pass"]


def test_counterexample_report():
    rep = counterexample_report(box=200, places=50, window=1000)
    assert rep["verdict"] == "BM obstruction trivial; X(ℤ) = ∅"
    assert rep["surjectivity"]["values"] == [-1, 1]
