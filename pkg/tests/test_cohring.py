from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qmapwc import CohClass, CompleteIntersection, DomainError, SingularError, chern, euler_char, integrate, tangent_chern
from qmapwc.cohring import cup
from oracles import cy3_euler_from_hodge, hypersurface_euler, tangent_chern_numbers


def test_parse_and_invariants(quintic):
    assert (quintic.dim, quintic.index, quintic.deg) == (3, 0, 5)
    assert quintic.is_cy3 and quintic.is_semipositive
    x = CompleteIntersection.parse("5:3,3")
    assert x.spec() == "5:3,3" and str(x) == "X(5:3,3)"
    assert CompleteIntersection.from_json(x.to_json()) == x


@pytest.mark.parametrize("text", ["", "a:5", "4:5,", "2:1,1,1", "0:", "4:0", "4:-1"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        CompleteIntersection.parse(text)


def test_quintic_chern_classes(quintic):
    # [DERIVED: oracle long division] c(T) = 1 + 10H^2 - 40H^3
    assert [chern(quintic, k)[k] for k in range(4)] == [1, 0, 10, -40]
    assert integrate(chern(quintic, 2) * CohClass.h_power(quintic, 1)) == 50


@pytest.mark.parametrize("spec,chi", [
    ("4:5", -200),  # [DERIVED: hypersurface formula]
    ("4:2", 4),
    ("3:4", 24),
    ("3:3", 9),
    ("5:3,3", cy3_euler_from_hodge(1, 73)),  # [DERIVED: Hodge numbers]
    ("5:2,4", cy3_euler_from_hodge(1, 89)),
    ("6:2,2,3", cy3_euler_from_hodge(1, 73)),
    ("7:2,2,2,2", cy3_euler_from_hodge(1, 65)),
])
def test_euler_characteristics(spec, chi):
    assert euler_char(CompleteIntersection.parse(spec)) == chi


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 8), l=st.integers(1, 7))
def test_hypersurface_euler_matches_closed_formula(n, l):
    assert euler_char(CompleteIntersection(n, (l,))) == hypersurface_euler(n, l)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, 4), min_size=1, max_size=n - 1))))
def test_tangent_chern_matches_oracle(data):
    n, degrees = data
    x = CompleteIntersection(n, tuple(degrees))
    assert list(tangent_chern(x).coeffs) == tangent_chern_numbers(n, degrees)


def classes(target):
    coeff = st.fractions(min_value=-50, max_value=50, max_denominator=20)
    return st.lists(coeff, min_size=target.dim + 1, max_size=target.dim + 1).map(lambda cs: CohClass(target, tuple(cs)))


X = CompleteIntersection.parse("5:3,3")


@settings(max_examples=80, deadline=None)
@given(classes(X), classes(X), classes(X))
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * CohClass.one(X) == a
    assert cup(a, b) == a * b


@settings(max_examples=80, deadline=None)
@given(classes(X))
def test_inverse(a):
    if a[0] == 0:
        with pytest.raises(SingularError):
            a.inverse()
    else:
        assert a * a.inverse() == CohClass.one(X)


def test_truncation_and_degree(quintic):
    h = CohClass.h_power(quintic, 1)
    assert h * h * h * h == CohClass.zero(quintic)
    assert (h * h).degree() == 2
    assert CohClass.h_power(quintic, 3, 7).div_h() == CohClass.h_power(quintic, 2, 7)
    with pytest.raises(DomainError):
        CohClass.one(quintic).div_h()
    assert integrate(CohClass.h_power(quintic, 3)) == 5
    assert CohClass.from_json(quintic, h.to_json()) == h
    assert h / 2 == CohClass.h_power(quintic, 1, Fraction(1, 2))


def test_targets_do_not_mix(quintic, quadric3):
    from qmapwc import ContextError
    with pytest.raises(ContextError):
        CohClass.one(quintic) + CohClass.one(quadric3)
