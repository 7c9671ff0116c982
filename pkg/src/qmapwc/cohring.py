"""The ambient cohomology subring Q[H]/(H^{dim+1}) of a complete intersection in P^n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import prod
from typing import Iterable, Sequence

from .errors import ContextError, DomainError, SingularError


@dataclass(frozen=True)
class CompleteIntersection:
    """Complete intersection of hypersurfaces of degrees ``degrees`` in P^n."""

    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(l) for l in self.degrees))
        if self.n < 1:
            raise DomainError(f"ambient dimension must be positive, got {self.n}")
        if any(l < 1 for l in self.degrees):
            raise DomainError(f"hypersurface degrees must be positive: {self.degrees}")
        if len(self.degrees) > self.n:
            raise DomainError(f"codimension {len(self.degrees)} exceeds n = {self.n}")

    @property
    def dim(self) -> int:
        return self.n - len(self.degrees)

    @property
    def index(self) -> int:
        return self.n + 1 - sum(self.degrees)

    @property
    def deg(self) -> int:
        return prod(self.degrees)

    @property
    def is_calabi_yau(self) -> bool:
        return self.index == 0

    @property
    def is_cy3(self) -> bool:
        return self.index == 0 and self.dim == 3

    @property
    def is_semipositive(self) -> bool:
        return self.index >= 0

    @classmethod
    def parse(cls, text: str) -> "CompleteIntersection":
        """Parse the ``n:l1,l2,...`` grammar, e.g. ``4:5`` or ``5:3,3``."""
        try:
            n_part, _, l_part = text.partition(":")
            degrees = tuple(int(x) for x in l_part.split(",")) if l_part else ()
            return cls(int(n_part), degrees)
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"bad target {text!r}; expected n:l1,l2,...") from exc

    def spec(self) -> str:
        return f"{self.n}:{','.join(map(str, self.degrees))}"

    def to_json(self) -> dict:
        return {"n": self.n, "degrees": list(self.degrees)}

    @classmethod
    def from_json(cls, data: dict) -> "CompleteIntersection":
        return cls(int(data["n"]), tuple(data["degrees"]))

    def __str__(self):
        return f"X({self.spec()})"


@dataclass(frozen=True)
class CohClass:
    """``sum_k coeffs[k] * H^k`` with ``len(coeffs) == dim + 1``."""

    target: CompleteIntersection
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        m = self.target.dim
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) > m + 1:
            if any(cs[m + 1:]):
                raise DomainError("coefficients beyond H^dim must vanish")
            cs = cs[: m + 1]
        cs = cs + (Fraction(0),) * (m + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, target: CompleteIntersection) -> "CohClass":
        return cls(target, ())

    @classmethod
    def one(cls, target: CompleteIntersection) -> "CohClass":
        return cls(target, (1,))

    @classmethod
    def h_power(cls, target: CompleteIntersection, k: int = 1, coeff=1) -> "CohClass":
        if k < 0:
            raise DomainError("negative power of H")
        if k > target.dim:
            return cls.zero(target)
        return cls(target, (0,) * k + (coeff,))

    def _check(self, other: "CohClass"):
        if self.target != other.target:
            raise ContextError(f"classes on {self.target} and {other.target} cannot be combined")

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        self._check(other)
        return CohClass(self.target, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CohClass(self.target, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return cup(self, other)
        if isinstance(other, (int, Fraction)):
            return CohClass(self.target, tuple(a * other for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CohClass(self.target, tuple(a / other for a in self.coeffs))
        return NotImplemented

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*H^{k}")
        return f"CohClass({' + '.join(terms) or '0'})"

    def component(self, k: int) -> "CohClass":
        return CohClass.h_power(self.target, k, self[k])

    def degree(self) -> int | None:
        """Degree of a homogeneous nonzero class, else None."""
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return nz[0] if len(nz) == 1 else None

    def inverse(self) -> "CohClass":
        a0 = self.coeffs[0]
        if not a0:
            raise SingularError(f"{self!r} has no H^0 component and is not invertible")
        # a = a0 (1 + N) with N nilpotent
        nil = self / a0 - CohClass.one(self.target)
        out = CohClass.one(self.target)
        term = CohClass.one(self.target)
        for _ in range(self.target.dim):
            term = -(term * nil)
            out = out + term
        return out / a0

    def div_h(self) -> "CohClass":
        """Divide by H; only defined when the H^0 component vanishes."""
        if self.coeffs[0]:
            raise DomainError(f"{self!r} is not divisible by H")
        return CohClass(self.target, self.coeffs[1:])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, target: CompleteIntersection, data: Sequence) -> "CohClass":
        from .rational import parse

        return cls(target, tuple(parse(x) for x in data))


def cup(a: CohClass, b: CohClass) -> CohClass:
    a._check(b)
    m = a.target.dim
    out = [Fraction(0)] * (m + 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(m + 1 - i):
            out[i + j] += x * b.coeffs[j]
    return CohClass(a.target, tuple(out))


def integrate(a: CohClass) -> Fraction:
    return a.coeffs[a.target.dim] * a.target.deg


def _one_plus(target: CompleteIntersection, c: int) -> CohClass:
    return CohClass(target, (1, c)[: target.dim + 1])


@lru_cache(maxsize=None)
def tangent_chern(target: CompleteIntersection) -> CohClass:
    """Total Chern class (1+H)^{n+1} / prod_i (1 + l_i H)."""
    total = CohClass.one(target)
    for _ in range(target.n + 1):
        total = total * _one_plus(target, 1)
    for l in target.degrees:
        total = total * _one_plus(target, l).inverse()
    return total


def chern(target: CompleteIntersection, k: int) -> CohClass:
    """Component c_k(T_X); zero outside 0..dim."""
    if k < 0 or k > target.dim:
        return CohClass.zero(target)
    return tangent_chern(target).component(k)


def euler_char(target: CompleteIntersection) -> Fraction:
    return integrate(chern(target, target.dim))


def sum_classes(classes: Iterable[CohClass], target: CompleteIntersection) -> CohClass:
    out = CohClass.zero(target)
    for c in classes:
        out = out + c
    return out
