from fractions import Fraction as F

import pytest

import qmapwc.genus0 as g0
from qmapwc import CompleteIntersection, DomainError, IdentityCheckError, IntegralityError
from qmapwc.genus0 import (genus0_data, instanton_numbers, instantons_from_yukawa, j_extraction_check, yukawa,
                           yukawa_from_instantons)
from oracles import moebius_instantons

# classical reference values; accepted only after dual-route agreement below
QUINTIC = [2875, 609250, 317206375, 242467530000, 229305888887625]
CUBIC_PAIR = [1053, 52812, 6424326, 1139448384, 249787892583]


@pytest.mark.parametrize("spec,expected", [("4:5", QUINTIC), ("5:3,3", CUBIC_PAIR)])
def test_dual_routes_and_integrality(spec, expected):
    x = CompleteIntersection.parse(spec)
    data = genus0_data(x, 5)
    route_b = j_extraction_check(x, 5)
    assert route_b, route_b.failures
    assert data.three_point == route_b.three_point == [data.yukawa[d] for d in range(1, 6)]
    assert moebius_instantons(data.three_point, x.deg) == expected
    assert data.instantons == expected


def test_yukawa_round_trip():
    k = yukawa_from_instantons(QUINTIC, 5, 5)
    assert k[0] == 5 and k[1] == 2875 and k[2] == 609250 * 8 + 2875
    assert instantons_from_yukawa(k, 5) == QUINTIC


def test_table_convention(quintic):
    t = genus0_data(quintic, 2).table()
    assert t.genus == 0 and t.stability.kind == "infinity"
    assert t.values[1] == 2875 and t.values[2] == F(2875 + 8 * 609250, 8)


def test_non_cy3_rejected():
    for spec in ("4:2", "5:6"):
        with pytest.raises(DomainError):
            yukawa(CompleteIntersection.parse(spec), 3)
        with pytest.raises(DomainError):
            j_extraction_check(CompleteIntersection.parse(spec), 3)


def test_empty_order(quintic):
    assert j_extraction_check(quintic, 0).passed


def test_integrality_failure_is_reported(monkeypatch, quintic):
    real = g0.yukawa
    monkeypatch.setattr(g0, "yukawa", lambda t, order: real(t, order) + g0.QSeries([0, 0, F(1, 2)], order))
    with pytest.raises(IntegralityError):
        instanton_numbers(quintic, 3)


def test_route_disagreement_is_reported(monkeypatch, quintic):
    real = g0.yukawa
    monkeypatch.setattr(g0, "yukawa", lambda t, order: real(t, order) + g0.QSeries([0, 0, 8], order))
    with pytest.raises(IdentityCheckError):
        genus0_data(quintic, 3)
