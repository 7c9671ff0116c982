"""Truncated power series in the Novikov variable q, and finite Laurent objects in z.

A :class:`QSeries` stores coefficients c_0..c_D of q^0..q^D exactly; the
truncation order D is always explicit. Coefficients are rationals, or ring
elements with the same arithmetic surface (:class:`~qmapwc.cohring.CohClass`,
:class:`ZPolyClass`). Rational series act on the other kinds as scalars.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .cohring import CohClass, CompleteIntersection
from .errors import ContextError, DomainError, SingularError
from .rational import parse


class ZPolyClass:
    """Finitely supported map from z-exponents to nonzero ambient classes."""

    __slots__ = ("target", "_terms")

    def __init__(self, target: CompleteIntersection, terms: Mapping[int, CohClass] | None = None):
        self.target = target
        clean = {}
        for e, c in (terms or {}).items():
            if c.target != target:
                raise ContextError(f"term on {c.target} inside a ZPolyClass on {target}")
            if c:
                clean[int(e)] = c
        self._terms = clean

    @classmethod
    def zero(cls, target):
        return cls(target)

    @classmethod
    def one(cls, target):
        return cls(target, {0: CohClass.one(target)})

    @classmethod
    def monomial(cls, target, z_exp: int, h_exp: int, coeff=1):
        return cls(target, {z_exp: CohClass.h_power(target, h_exp, coeff)})

    def __getitem__(self, e: int) -> CohClass:
        return self._terms.get(e) or CohClass.zero(self.target)

    def items(self):
        return sorted(self._terms.items())

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, ZPolyClass):
            return NotImplemented
        return self.target == other.target and self._terms == other._terms

    def __hash__(self):
        return hash((self.target, frozenset(self._terms.items())))

    def __repr__(self):
        inner = ", ".join(f"z^{e}: {c!r}" for e, c in self.items())
        return f"ZPolyClass({{{inner}}})"

    def _check(self, other):
        if self.target != other.target:
            raise ContextError(f"ZPolyClass on {self.target} combined with {other.target}")

    def __add__(self, other):
        if not isinstance(other, ZPolyClass):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return ZPolyClass(self.target, out)

    def __neg__(self):
        return ZPolyClass(self.target, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ZPolyClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZPolyClass(self.target, {e: c * other for e, c in self._terms.items()})
        if isinstance(other, CohClass):
            return ZPolyClass(self.target, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, ZPolyClass):
            return NotImplemented
        self._check(other)
        out: dict[int, CohClass] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                p = c1 * c2
                e = e1 + e2
                out[e] = out[e] + p if e in out else p
        return ZPolyClass(self.target, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZPolyClass(self.target, {e: c / other for e, c in self._terms.items()})
        return NotImplemented

    def shift(self, k: int) -> "ZPolyClass":
        """Multiply by z^k."""
        return ZPolyClass(self.target, {e + k: c for e, c in self._terms.items()})

    def component(self, z_exp: int, h_exp: int) -> Fraction:
        return self[z_exp][h_exp]

    def total_degrees(self) -> set[int]:
        """Degrees e + k of every nonzero z^e H^k term."""
        return {e + k for e, c in self._terms.items() for k, a in enumerate(c.coeffs) if a}

    def is_homogeneous(self, degree: int) -> bool:
        return self.total_degrees() <= {degree}

    def to_json(self) -> dict[str, list[str]]:
        return {str(e): c.to_json() for e, c in self.items()}

    @classmethod
    def from_json(cls, target, data: Mapping[str, Sequence]) -> "ZPolyClass":
        return cls(target, {int(e): CohClass.from_json(target, v) for e, v in data.items()})


def plus_part(a: ZPolyClass) -> ZPolyClass:
    """Keep only the terms with nonnegative z-exponent."""
    return ZPolyClass(a.target, {e: c for e, c in a.items() if e >= 0})


def _kind(c):
    if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
        return ("Q",)
    if isinstance(c, CohClass):
        return ("coh", c.target)
    if isinstance(c, ZPolyClass):
        return ("zpoly", c.target)
    raise TypeError(f"unsupported series coefficient {c!r}")


def _one_like(c):
    k = _kind(c)
    if k[0] == "Q":
        return Fraction(1)
    if k[0] == "coh":
        return CohClass.one(k[1])
    return ZPolyClass.one(k[1])


def _inverse(c):
    if isinstance(c, CohClass):
        return c.inverse()
    if isinstance(c, ZPolyClass):
        raise TypeError("ZPolyClass coefficients have no inverse")
    if not c:
        raise SingularError("constant term is zero; series is not invertible")
    return 1 / Fraction(c)


class QSeries:
    """Exact power series truncated at (and including) q^order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int, zero=None):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = [Fraction(c) if isinstance(c, int) else c for c in list(coeffs)[: order + 1]]
        if zero is None:
            zero = cs[0] * 0 if cs else Fraction(0)
        elif isinstance(zero, int):
            zero = Fraction(zero)
        cs += [zero] * (order + 1 - len(cs))
        kinds = {_kind(c) for c in cs}
        if len(kinds) != 1:
            raise TypeError(f"mixed coefficient types in one series: {kinds}")
        self.coeffs: tuple = tuple(cs)
        self.order = order

    # constructors

    @classmethod
    def constant(cls, c, order: int) -> "QSeries":
        return cls([c], order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def q(cls, order: int) -> "QSeries":
        return cls([0, 1], order)

    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int) -> "QSeries":
        return cls([fn(d) for d in range(order + 1)], order)

    # basic protocol

    @property
    def kind(self):
        return _kind(self.coeffs[0])

    def __getitem__(self, d: int):
        if d < 0 or d > self.order:
            raise IndexError(f"q^{d} is outside the truncation order {self.order}")
        return self.coeffs[d]

    def __len__(self):
        return self.order + 1

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        body = " + ".join(f"({c})q^{d}" for d, c in enumerate(self.coeffs) if c)
        return f"QSeries({body or '0'}; O(q^{self.order + 1}))"

    def zero_coeff(self):
        return self.coeffs[0] * 0

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise DomainError(f"cannot extend a series known to order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1], order)

    def map(self, fn: Callable) -> "QSeries":
        return QSeries([fn(c) for c in self.coeffs], self.order)

    # arithmetic

    def _compatible(self, other: "QSeries"):
        ka, kb = self.kind, other.kind
        if ka == kb or ka == ("Q",) or kb == ("Q",):
            return
        if ka[0] == kb[0]:
            raise ContextError(f"series over {ka[1]} combined with series over {kb[1]}")
        raise TypeError(f"incompatible coefficient types {ka[0]} and {kb[0]}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.kind != other.kind:
            self._compatible(other)
            raise TypeError(f"cannot add {self.kind[0]} and {other.kind[0]} series")
        order = min(self.order, other.order)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(order + 1)], order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.constant(other, self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction, CohClass, ZPolyClass)):
            return QSeries([c * other for c in self.coeffs], self.order)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CohClass, ZPolyClass)):
            return QSeries([other * c for c in self.coeffs], self.order)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c / other for c in self.coeffs], self.order)
        if isinstance(other, QSeries):
            return self * inv(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else inv(self)
        k = abs(k)
        out = QSeries.constant(_one_like(self.coeffs[0]), self.order)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k, keeping the truncation order."""
        if k < 0:
            raise DomainError("negative q-shift")
        return QSeries([self.zero_coeff()] * k + list(self.coeffs), self.order)

    def theta(self) -> "QSeries":
        """The Euler derivative q d/dq."""
        return QSeries([d * c for d, c in enumerate(self.coeffs)], self.order)

    def valuation(self) -> int | None:
        for d, c in enumerate(self.coeffs):
            if c:
                return d
        return None

    def compose(self, inner: "QSeries") -> "QSeries":
        return compose(self, inner)

    # serialization

    def to_json(self) -> dict:
        cs = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                cs.append(str(c))
            elif isinstance(c, (CohClass, ZPolyClass)):
                cs.append(c.to_json())
        return {"order": self.order, "coeffs": cs}

    @classmethod
    def from_json(cls, data: Mapping, target: CompleteIntersection | None = None) -> "QSeries":
        order = int(data["order"])
        raw = data["coeffs"]
        if raw and isinstance(raw[0], list):
            if target is None:
                raise DomainError("class-valued series needs a target to deserialize")
            cs = [CohClass.from_json(target, c) for c in raw]
        elif raw and isinstance(raw[0], dict):
            if target is None:
                raise DomainError("z-valued series needs a target to deserialize")
            cs = [ZPolyClass.from_json(target, c) for c in raw]
        else:
            cs = [parse(c) for c in raw]
        return cls(cs, order)


def add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def scalar_mul(c, a: QSeries) -> QSeries:
    return c * a


def mul(a: QSeries, b: QSeries) -> QSeries:
    a._compatible(b)
    order = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    zero = ac[0] * bc[0] * 0
    out = []
    for n in range(order + 1):
        s = zero
        for i in range(n + 1):
            x = ac[i]
            if x:
                y = bc[n - i]
                if y:
                    s = s + x * y
        out.append(s)
    return QSeries(out, order, zero=zero)


def inv(a: QSeries) -> QSeries:
    c0 = a.coeffs[0]
    b0 = _inverse(c0)
    out = [b0]
    for n in range(1, a.order + 1):
        s = a.coeffs[0] * 0
        for i in range(1, n + 1):
            s = s + a.coeffs[i] * out[n - i]
        out.append(-(b0 * s))
    return QSeries(out, a.order)


def exp(a: QSeries) -> QSeries:
    if a.coeffs[0]:
        raise DomainError("exp needs a series with zero constant term")
    cs = a.coeffs
    out = [_one_like(cs[0])]
    for n in range(1, a.order + 1):
        s = cs[0] * 0
        for k in range(1, n + 1):
            if cs[k]:
                s = s + (cs[k] * k) * out[n - k]
        out.append(s / n)
    return QSeries(out, a.order)


def log(a: QSeries) -> QSeries:
    cs = a.coeffs
    if cs[0] != _one_like(cs[0]):
        raise DomainError("log needs a series with constant term 1")
    out = [cs[0] * 0]
    for n in range(1, a.order + 1):
        s = cs[n] * n
        for k in range(1, n):
            if out[k]:
                s = s - (out[k] * k) * cs[n - k]
        out.append(s / n)
    return QSeries(out, a.order)


def compose(outer: QSeries, inner: QSeries) -> QSeries:
    """outer(inner(q)); ``inner`` must be rational with zero constant term."""
    if inner.kind != ("Q",):
        raise TypeError("only rational series can be substituted for q")
    if inner.coeffs[0]:
        raise DomainError("substituted series must have zero constant term")
    order = min(outer.order, inner.order)
    inner = inner.truncate(order)
    result = QSeries.constant(outer.coeffs[order], order)
    for k in range(order - 1, -1, -1):
        result = result * inner + QSeries.constant(outer.coeffs[k], order)
    return result


def revert(a: QSeries) -> QSeries:
    """Compositional inverse of q + a_2 q^2 + ... by Lagrange inversion."""
    if a.kind != ("Q",):
        raise TypeError("revert needs a rational series")
    if a.order < 1 or a.coeffs[0] != 0 or a.coeffs[1] != 1:
        raise DomainError("revert needs zero constant term and unit linear coefficient")
    D = a.order
    # a(w) = w h(w); [w^n] inverse = (1/n) [w^{n-1}] h(w)^{-n}
    h = QSeries(a.coeffs[1:], D - 1)
    phi = inv(h)
    power = QSeries.one(D - 1)
    out = [Fraction(0)]
    for n in range(1, D + 1):
        power = power * phi
        out.append(power.coeffs[n - 1] / n)
    return QSeries(out, D)
