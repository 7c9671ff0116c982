"""Genus-0 mirror computations for Calabi-Yau threefold complete intersections.

Two independent routes to the three-point invariants N_d = <H,H,H>_{0,3,d}:

* route A: the B-model Yukawa coupling
  deg / ((1 - prod l_i^{l_i} q) I_0^2 (theta t)^3), with t = log Q(q), in the Q coordinate;
* route B: J = I/I_0 e^{-f H/z} at q = q(Q), whose z^{-2} H^2 coefficient is
  sum_d Q^d <H>_{0,1,d} H^2/deg = sum_d Q^d N_d / (d^2 deg) H^2.

Instanton numbers n_d solve N_k = sum_{d | k} d^3 n_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .cohring import CohClass, CompleteIntersection
from .errors import DomainError, IdentityCheckError, IntegralityError
from .gwcalc import InvariantTable
from .ifun import Stability, i_degree_piece, j0_j1, mirror_map
from .series import QSeries, ZPolyClass, compose, exp, inv, revert


def _require_cy3(target: CompleteIntersection):
    if not target.is_cy3:
        raise DomainError(f"genus-0 mirror computations need a Calabi-Yau threefold; got {target}")


def yukawa(target: CompleteIntersection, order: int) -> QSeries:
    """Normalized Yukawa coupling K(Q) = deg + sum_d N_d Q^d."""
    _require_cy3(target)
    i0, i1h = j0_j1(target, Stability.zero_plus(), order, method="extract")
    f = i1h * inv(i0)
    theta_t = f.theta() + 1
    conifold = prod(l ** l for l in target.degrees)
    k_q = inv(QSeries([1, -conifold], order)) * inv(i0) ** 2 * inv(theta_t) ** 3 * target.deg
    return compose(k_q, revert(mirror_map(target, order)))


def instantons_from_yukawa(k: QSeries, deg: int) -> list[Fraction]:
    """n_1..n_D from K(Q) - deg = sum_d n_d d^3 Q^d / (1 - Q^d)."""
    if k[0] != deg:
        raise DomainError(f"constant term {k[0]} of the coupling is not the degree {deg}")
    n: dict[int, Fraction] = {}
    for m in range(1, k.order + 1):
        acc = k[m] - sum((n[d] * d ** 3 for d in range(1, m) if m % d == 0), Fraction(0))
        n[m] = acc / m ** 3
    return [n[m] for m in range(1, k.order + 1)]


def yukawa_from_instantons(ns, deg: int, order: int) -> QSeries:
    cs = [Fraction(deg)] + [Fraction(0)] * order
    for d, nd in enumerate(ns, start=1):
        for m in range(d, order + 1, d):
            cs[m] += Fraction(nd) * d ** 3
    return QSeries(cs, order)


def _assert_integral(ns, target):
    for d, nd in enumerate(ns, start=1):
        if nd.denominator != 1:
            raise IntegralityError(f"instanton number n_{d} = {nd} of {target} is not an integer")


def instanton_numbers(target: CompleteIntersection, order: int) -> list[int]:
    ns = instantons_from_yukawa(yukawa(target, order), target.deg)
    _assert_integral(ns, target)
    return [int(x) for x in ns]


@dataclass
class JExtraction:
    passed: bool
    three_point: list[Fraction]
    failures: list[str]

    def __bool__(self):
        return self.passed


def j_extraction_check(target: CompleteIntersection, order: int) -> JExtraction:
    """Route B: normalize I, strip the mirror-map exponential, and read off N_d.

    Passes when every coefficient of J(Q, z) - 1 other than the z^{-2} H^2 and
    z^{-3} H^3 parts vanishes, and the z^{-3} H^3 part equals -2 N_d / d times
    the z^{-2} H^2 part (the dilaton equation on <psi>_{0,1,d}).
    """
    _require_cy3(target)
    if order == 0:
        return JExtraction(True, [], [])
    zero = ZPolyClass.zero(target)
    pieces = [ZPolyClass.one(target)] + [i_degree_piece(target, d) for d in range(1, order + 1)]
    i_series = QSeries(pieces, order, zero=zero)
    i0, i1h = j0_j1(target, Stability.zero_plus(), order, method="extract")
    f = i1h * inv(i0)
    h_over_z = ZPolyClass.monomial(target, -1, 1)
    strip = exp(QSeries([zero] + [h_over_z * (-c) for c in f.coeffs[1:]], order, zero=zero))
    j_q = i_series * inv(i0) * strip
    j_big_q = compose(j_q, revert(mirror_map(target, order)))

    failures = []
    if j_big_q[0] != ZPolyClass.one(target):
        failures.append("constant term is not 1")
    three_point = []
    for d in range(1, order + 1):
        c = j_big_q[d]
        n_d = c.component(-2, 2) * d ** 2 * target.deg
        three_point.append(n_d)
        for e, cls in c.items():
            for k, a in enumerate(cls.coeffs):
                if a and (e, k) not in ((-2, 2), (-3, 3)):
                    failures.append(f"Q^{d}: unexpected z^{e} H^{k} coefficient {a}")
        psi_part = c.component(-3, 3) * d ** 3 * target.deg
        if psi_part != -2 * n_d:
            failures.append(f"Q^{d}: z^-3 H^3 part {psi_part} is not -2 N_{d} = {-2 * n_d}")
    return JExtraction(not failures, three_point, failures)


@dataclass
class Genus0Data:
    target: CompleteIntersection
    yukawa: QSeries
    three_point: list[Fraction]
    instantons: list[int]

    def table(self) -> InvariantTable:
        """Unpointed genus-0 values N_d / d^3, the divisor-equation bookkeeping convention."""
        vals = {d: n / d ** 3 for d, n in enumerate(self.three_point, start=1)}
        return InvariantTable(self.target, 0, Stability.infinity(), vals)


def genus0_data(target: CompleteIntersection, order: int) -> Genus0Data:
    """Both routes, with agreement and integrality enforced before anything is returned."""
    k = yukawa(target, order)
    route_a = [k[d] for d in range(1, order + 1)]
    route_b = j_extraction_check(target, order)
    if not route_b:
        raise IdentityCheckError("J-function extraction failed: " + "; ".join(route_b.failures[:3]))
    if route_a != route_b.three_point:
        bad = next(d for d, (a, b) in enumerate(zip(route_a, route_b.three_point), start=1) if a != b)
        raise IdentityCheckError(f"routes disagree at degree {bad}: {route_a[bad - 1]} vs {route_b.three_point[bad - 1]}")
    ns = instantons_from_yukawa(k, target.deg)
    _assert_integral(ns, target)
    return Genus0Data(target, k, route_a, [int(x) for x in ns])
