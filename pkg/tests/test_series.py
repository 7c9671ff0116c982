from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qmapwc import CohClass, CompleteIntersection, ContextError, DomainError, QSeries, SingularError, ZPolyClass
from qmapwc.series import compose, exp, inv, log, plus_part, revert
from oracles import p_compose, p_mul, p_revert

ORDER = 7
coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def series(order=ORDER, constant=None):
    def build(cs):
        if constant is not None:
            cs[0] = F(constant)
        return QSeries(cs, order)
    return st.lists(coeff, min_size=order + 1, max_size=order + 1).map(build)


@settings(max_examples=80, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QSeries([0], ORDER)


@settings(max_examples=80, deadline=None)
@given(series(), series())
def test_product_matches_oracle(a, b):
    assert list((a * b).coeffs) == p_mul(list(a.coeffs), list(b.coeffs), ORDER)


@settings(max_examples=80, deadline=None)
@given(series())
def test_inverse(a):
    if a[0] == 0:
        with pytest.raises(SingularError):
            inv(a)
    else:
        assert a * inv(a) == QSeries.one(ORDER)
        assert a ** -2 * a ** 2 == QSeries.one(ORDER)


@settings(max_examples=60, deadline=None)
@given(series(constant=0))
def test_exp_log_round_trip(a):
    assert log(exp(a)) == a
    assert exp(a + a) == exp(a) * exp(a)


@settings(max_examples=60, deadline=None)
@given(series(constant=1))
def test_log_exp_round_trip(a):
    assert exp(log(a)) == a


@settings(max_examples=50, deadline=None)
@given(st.lists(coeff, min_size=ORDER - 1, max_size=ORDER - 1))
def test_revert_against_coefficient_solver(tail):
    a = QSeries([0, 1] + tail, ORDER)
    b = revert(a)
    assert list(b.coeffs) == p_revert(list(a.coeffs), ORDER)
    q = QSeries.q(ORDER)
    assert compose(a, b) == q
    assert compose(b, a) == q


@settings(max_examples=50, deadline=None)
@given(series(), series(constant=0))
def test_compose_matches_oracle(a, b):
    assert list(compose(a, b).coeffs) == p_compose(list(a.coeffs), list(b.coeffs), ORDER)


def test_known_expansions():
    # [TRIVIAL] Catalan numbers revert q - q^2
    assert revert(QSeries([0, 1, -1], 6)).coeffs == tuple(map(F, (0, 1, 1, 2, 5, 14, 42)))
    # [TRIVIAL] log(1 + q) = q - q^2/2 + q^3/3
    assert log(QSeries([1, 1], 3)).coeffs == (0, 1, F(-1, 2), F(1, 3))
    # [TRIVIAL] exp(q) = sum q^n / n!
    assert exp(QSeries.q(4)).coeffs == (1, 1, F(1, 2), F(1, 6), F(1, 24))
    assert QSeries([1, 2, 3], 4).theta().coeffs == (0, 2, 6, 0, 0)


def test_orders_and_errors():
    a = QSeries([1, 1], 5)
    b = QSeries([1, 1], 3)
    assert (a * b).order == 3
    assert a.truncate(2).order == 2
    with pytest.raises(DomainError):
        b.truncate(5)
    with pytest.raises(IndexError):
        b[4]
    with pytest.raises(DomainError):
        exp(a)
    with pytest.raises(DomainError):
        log(QSeries([2, 1], 3))
    with pytest.raises(DomainError):
        revert(QSeries([0, 2], 3))
    assert a.valuation() == 0 and QSeries([0, 0, 3], 4).valuation() == 2
    assert QSeries([0], 4).valuation() is None


def test_json_round_trip(quintic):
    a = QSeries([1, F(-7, 3), 0, F(5, 2)], 5)
    assert QSeries.from_json(a.to_json()) == a
    c = QSeries([CohClass.one(quintic), CohClass.h_power(quintic, 2, F(1, 3))], 2, zero=CohClass.zero(quintic))
    assert QSeries.from_json(c.to_json(), quintic) == c


def test_class_valued_series(quintic, quadric3):
    h = CohClass.h_power(quintic, 1)
    s = QSeries([CohClass.one(quintic), h], 3, zero=CohClass.zero(quintic))
    t = s * QSeries([2, 1], 3)
    assert t[1] == h * 2 + CohClass.one(quintic)
    assert (inv(s) * s)[3] == CohClass.zero(quintic)
    other = QSeries([CohClass.one(quadric3)], 3)
    with pytest.raises(ContextError):
        s + other
    with pytest.raises(TypeError):
        QSeries([1, CohClass.one(quintic)], 2)


def test_zpoly_class(quintic):
    z = ZPolyClass.monomial(quintic, 1, 0)
    hz = ZPolyClass.monomial(quintic, -1, 1, 3)
    prod = z * hz
    assert prod.component(0, 1) == 3 and prod.exponents() == [0]
    assert plus_part(hz + z) == z
    assert (z + hz).total_degrees() == {1, 0}
    assert ZPolyClass.from_json(quintic, (z + hz).to_json()) == z + hz
    assert not (z - z)
