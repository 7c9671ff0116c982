"""Small I-function of a complete intersection, correcting classes, J-functions, mirror map."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from .cohring import CohClass, CompleteIntersection
from .errors import DomainError
from .rational import parse
from .series import QSeries, ZPolyClass, exp, inv, plus_part


@dataclass(frozen=True)
class Stability:
    """A stability parameter: ``infinity`` (stable maps), ``0+``, or a positive rational."""

    kind: str
    eps: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("infinity", "0+", "finite"):
            raise DomainError(f"unknown stability kind {self.kind!r}")
        if self.kind == "finite":
            if self.eps is None or Fraction(self.eps) <= 0:
                raise DomainError("finite stability needs a positive rational epsilon")
            object.__setattr__(self, "eps", Fraction(self.eps))
        elif self.eps is not None:
            raise DomainError(f"{self.kind} stability takes no epsilon")

    @classmethod
    def infinity(cls) -> "Stability":
        return cls("infinity")

    @classmethod
    def zero_plus(cls) -> "Stability":
        return cls("0+")

    @classmethod
    def finite(cls, eps) -> "Stability":
        return cls("finite", Fraction(eps))

    @classmethod
    def parse(cls, text) -> "Stability":
        if isinstance(text, Stability):
            return text
        t = str(text).strip()
        if t in ("inf", "infinity", "oo"):
            return cls.infinity()
        if t == "0+":
            return cls.zero_plus()
        try:
            eps = parse(t)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad stability {text!r}; use inf, 0+ or p/q") from exc
        if eps <= 0:
            raise DomainError(f"stability must be positive, got {text!r}")
        return cls.finite(eps)

    def __str__(self):
        return str(self.eps) if self.kind == "finite" else self.kind

    def dmax(self, order: int) -> int:
        """Largest degree kept in J^eps, capped at ``order``.

        Degrees with d * eps == 1 sit on the wall and are kept.
        """
        if self.kind == "infinity":
            return 0
        if self.kind == "0+":
            return order
        return min(order, int(1 / self.eps))

    def chamber(self) -> int | float:
        if self.kind == "infinity":
            return 0
        if self.kind == "0+":
            return float("inf")
        return int(1 / self.eps)


@dataclass(frozen=True)
class MuClass:
    degree: int
    value: ZPolyClass

    @property
    def expected_degree(self) -> int:
        # 1 + beta(K) with beta(K) = -d * index
        return 1 - self.degree * self.value.target.index

    def is_homogeneous(self) -> bool:
        return self.value.is_homogeneous(self.expected_degree)


def _linear(target: CompleteIntersection, h: int, z: int) -> ZPolyClass:
    return ZPolyClass(target, {0: CohClass.h_power(target, 1, h), 1: CohClass.one(target) * z})


def _inverse_power(target: CompleteIntersection, j: int, p: int) -> ZPolyClass:
    """(H + j z)^{-p} expanded with H nilpotent."""
    terms = {}
    for k in range(target.dim + 1):
        c = Fraction((-1) ** k * comb(p - 1 + k, k), j ** (p + k))
        terms[-p - k] = CohClass.h_power(target, k, c)
    return ZPolyClass(target, terms)


@lru_cache(maxsize=None)
def i_degree_piece(target: CompleteIntersection, d: int) -> ZPolyClass:
    """Exact q^d coefficient of the small I-function."""
    if d < 1:
        raise DomainError(f"degree must be positive, got {d}")
    out = ZPolyClass.one(target)
    for l in target.degrees:
        for j in range(1, l * d + 1):
            out = out * _linear(target, l, j)
    for j in range(1, d + 1):
        out = out * _inverse_power(target, j, target.n + 1)
    return out


@lru_cache(maxsize=None)
def mu(target: CompleteIntersection, d: int) -> MuClass:
    """Correcting class: the q^d coefficient of [zI - z]_+."""
    return MuClass(d, plus_part(i_degree_piece(target, d).shift(1)))


def zj_plus(target: CompleteIntersection, eps: Stability, order: int) -> list[MuClass]:
    return [mu(target, d) for d in range(1, eps.dmax(order) + 1)]


def plus_series(target: CompleteIntersection, eps: Stability, order: int) -> QSeries:
    """[zJ^eps - z]_+ as a q-series with ZPolyClass coefficients."""
    cs = [ZPolyClass.zero(target)] + [m.value for m in zj_plus(target, eps, order)]
    return QSeries(cs, order, zero=ZPolyClass.zero(target))


def j_classes(target: CompleteIntersection, eps: Stability, order: int) -> tuple[QSeries, QSeries]:
    """(J_0^eps, J_1^eps) as class-valued series, read off the plus-truncation."""
    one = CohClass.one(target)
    j0 = [one]
    j1 = [CohClass.zero(target)]
    for m in zj_plus(target, eps, order):
        j0.append(m.value[1])
        j1.append(m.value[0])
    zero = CohClass.zero(target)
    return QSeries(j0, order, zero=zero), QSeries(j1, order, zero=zero)


def _scalar_series(s: QSeries, h_power: int, what: str) -> QSeries:
    out = []
    for d, c in enumerate(s.coeffs):
        for k, a in enumerate(c.coeffs):
            if a and k != h_power:
                raise DomainError(f"{what} has a nonzero H^{k} component at q^{d}")
        out.append(c[h_power])
    return QSeries(out, s.order)


def _cy_weight(target: CompleteIntersection, d: int) -> Fraction:
    return Fraction(prod(factorial(l * d) for l in target.degrees), factorial(d) ** (target.n + 1))


def _harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def j0_j1(target: CompleteIntersection, eps: Stability, order: int, method: str = "closed") -> tuple[QSeries, QSeries]:
    """Rational series (J_0^eps, J_1^eps / H).

    ``method="closed"`` uses the Calabi-Yau hypergeometric closed forms;
    ``method="extract"`` reads both off the I-function degree pieces and works
    whenever J_0 is scalar and J_1 is a multiple of H.
    """
    if method == "extract":
        j0, j1 = j_classes(target, eps, order)
        return _scalar_series(j0, 0, "J_0"), _scalar_series(j1, 1, "J_1")
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    if not target.is_calabi_yau:
        raise DomainError(f"closed forms need a Calabi-Yau target; {target} has index {target.index}")
    dmax = eps.dmax(order)
    j0 = [Fraction(1)]
    j1 = [Fraction(0)]
    for d in range(1, dmax + 1):
        w = _cy_weight(target, d)
        j0.append(w)
        bracket = sum(l * _harmonic(l * d) for l in target.degrees) - (target.n + 1) * _harmonic(d)
        j1.append(w * bracket)
    return QSeries(j0, order), QSeries(j1, order)


def divisor_exponent(target: CompleteIntersection, eps: Stability, order: int) -> QSeries:
    """f = (J_1/H) / J_0, so that the integral of J_1/J_0 over d[line] is d*f."""
    j0, j1h = j0_j1(target, eps, order, method="extract")
    return j1h * inv(j0)


def mirror_map(target: CompleteIntersection, order: int) -> QSeries:
    """Q(q) = q exp((I_1/H)/I_0)."""
    f = divisor_exponent(target, Stability.zero_plus(), order)
    return QSeries.q(order) * exp(f)


def homogeneity_failures(target: CompleteIntersection, max_degree: int) -> list[int]:
    """Degrees d <= max_degree whose correcting class is not homogeneous of degree 1 + d(sum l - n - 1)."""
    return [d for d in range(1, max_degree + 1) if not mu(target, d).is_homogeneous()]
