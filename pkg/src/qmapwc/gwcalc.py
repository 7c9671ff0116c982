"""Formal Gromov-Witten bracket calculus.

Brackets carry ambient insertions H^k psi^a. They are reduced with the
string, dilaton and divisor equations plus the degree axiom, until only
unpointed brackets <>_{g,0,d} (d >= 1, looked up in an :class:`InvariantTable`)
or brackets with no value source (deferred) remain. Degree-0 brackets that have
closed values (constant maps, genus-1 one-point, genus-0 classical) are
evaluated directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

from .cohring import CohClass, CompleteIntersection, chern, euler_char, integrate
from .errors import DepthError, DomainError, UnresolvedBracketError
from .ifun import Stability
from .rational import fmt, parse
from .series import QSeries

ONE = (0, 0)
PSI = (0, 1)
DIVISOR = (1, 0)


@dataclass(frozen=True, order=True)
class Bracket:
    """<H^{k_1} psi^{a_1}, ..., H^{k_n} psi^{a_n}>_{g,n,d} with a sorted insertion multiset."""

    genus: int
    degree: int
    insertions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        ins = tuple(sorted((int(k), int(a)) for k, a in self.insertions))
        if self.genus < 0 or self.degree < 0:
            raise DomainError(f"negative genus or degree in bracket ({self.genus}, {self.degree})")
        if any(k < 0 or a < 0 for k, a in ins):
            raise DomainError(f"negative exponent in insertions {ins}")
        object.__setattr__(self, "insertions", ins)

    @property
    def n_points(self) -> int:
        return len(self.insertions)

    @property
    def is_unstable(self) -> bool:
        return self.degree == 0 and 2 * self.genus - 2 + self.n_points <= 0

    @property
    def is_unpointed(self) -> bool:
        return not self.insertions

    def without(self, i: int) -> "Bracket":
        return Bracket(self.genus, self.degree, self.insertions[:i] + self.insertions[i + 1:])

    def replaced(self, i: int, new: tuple[int, int]) -> "Bracket":
        ins = list(self.insertions)
        ins[i] = new
        return Bracket(self.genus, self.degree, tuple(ins))

    def __str__(self):
        def one(k, a):
            parts = []
            if k:
                parts.append("H" if k == 1 else f"H^{k}")
            if a:
                parts.append("psi" if a == 1 else f"psi^{a}")
            return "*".join(parts) or "1"

        inner = ", ".join(one(k, a) for k, a in self.insertions)
        return f"<{inner}>_{{{self.genus},{self.n_points},{self.degree}}}"


class BracketExpression:
    """A rational constant plus a finite rational combination of brackets."""

    __slots__ = ("const", "terms")

    def __init__(self, const=0, terms: Mapping[Bracket, Fraction] | None = None):
        self.const = Fraction(const)
        self.terms = {b: Fraction(c) for b, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, bracket: Bracket, coeff=1) -> "BracketExpression":
        return cls(0, {bracket: coeff})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BracketExpression(other)
        if not isinstance(other, BracketExpression):
            return NotImplemented
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms.get(b, 0) + c
        return BracketExpression(self.const + other.const, terms)

    __radd__ = __add__

    def __neg__(self):
        return BracketExpression(-self.const, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return BracketExpression(self.const * c, {b: v * c for b, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BracketExpression(other)
        if not isinstance(other, BracketExpression):
            return NotImplemented
        return self.const == other.const and self.terms == other.terms

    def __bool__(self):
        return bool(self.const) or bool(self.terms)

    def __repr__(self):
        parts = [str(self.const)] if self.const or not self.terms else []
        parts += [f"{c}*{b}" for b, c in sorted(self.terms.items())]
        return " + ".join(parts)

    def brackets(self) -> list[Bracket]:
        return sorted(self.terms)

    def deferred(self) -> list[Bracket]:
        """Surviving brackets that no invariant table can supply."""
        return [b for b in sorted(self.terms) if not (b.is_unpointed and b.degree >= 1)]


# Invariant tables


@dataclass
class InvariantTable:
    """Unpointed invariants <>_{g,0,d} for d = 1..max_degree at a fixed stability."""

    target: CompleteIntersection
    genus: int
    stability: Stability
    values: dict[int, Fraction]
    header: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {int(d): Fraction(v) for d, v in self.values.items()}
        if sorted(self.values) != list(range(1, len(self.values) + 1)):
            raise DepthError(f"table degrees must be contiguous from 1, got {sorted(self.values)}")

    @property
    def max_degree(self) -> int:
        return len(self.values)

    def value(self, d: int) -> Fraction:
        if d < 1 or d > self.max_degree:
            raise DepthError(f"degree {d} is beyond the table depth {self.max_degree}")
        return self.values[d]

    def require_depth(self, depth: int):
        if depth > self.max_degree:
            raise DepthError(f"need invariants up to degree {depth}, table stops at {self.max_degree}")

    @classmethod
    def zeros(cls, target, genus, stability, depth):
        return cls(target, genus, stability, {d: 0 for d in range(1, depth + 1)})

    def to_json(self) -> dict:
        out = {
            "target": self.target.to_json(),
            "genus": self.genus,
            "stability": str(self.stability),
            "values": [{"d": d, "value": fmt(self.values[d])} for d in sorted(self.values)],
        }
        out.update(self.header)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "InvariantTable":
        header = {k: v for k, v in data.items() if k not in ("target", "genus", "stability", "values")}
        return cls(
            CompleteIntersection.from_json(data["target"]),
            int(data["genus"]),
            Stability.parse(data["stability"]),
            {int(e["d"]): parse(e["value"]) for e in data["values"]},
            header,
        )


# Closed degree-0 values


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """B_m from sum_{k<=m} C(m+1,k) B_k = 0, B_0 = 1 (so B_1 = -1/2)."""
    if m < 0:
        raise DomainError("negative Bernoulli index")
    if m == 0:
        return Fraction(1)
    return -sum((comb(m + 1, k) * bernoulli(k) for k in range(m)), Fraction(0)) / (m + 1)


def constant_map_factor(g: int) -> Fraction:
    """The genus-g constant-map value divided by chi_top."""
    if g < 2:
        raise DomainError(f"constant-map formula needs genus >= 2, got {g}")
    b2g = abs(bernoulli(2 * g))
    b2g2 = abs(bernoulli(2 * g - 2))
    return Fraction((-1) ** g, 2) * b2g / (2 * g) * b2g2 / (2 * g - 2) / factorial(2 * g - 2)


def constant_map_value(target: CompleteIntersection, g: int) -> Fraction:
    """<>_{g,0,0} of a Calabi-Yau threefold."""
    if not target.is_cy3:
        raise DomainError(f"constant-map formula is for Calabi-Yau threefolds; got {target}")
    return euler_char(target) * constant_map_factor(g)


def virtual_dimension(target: CompleteIntersection, genus: int, degree: int, n_points: int) -> int:
    return (1 - genus) * (target.dim - 3) + degree * target.index + n_points


def _closed_value(b: Bracket, target: CompleteIntersection) -> Fraction | None:
    m = target.dim
    if any(k > m for k, _ in b.insertions):
        return Fraction(0)
    if sum(k + a for k, a in b.insertions) != virtual_dimension(target, b.genus, b.degree, b.n_points):
        return Fraction(0)
    if b.degree:
        return None
    if b.genus == 1 and b.n_points == 1:
        # [M_{1,1}(X,0)]^vir = (c_dim - psi c_{dim-1}) on M_{1,1} x X, and int psi = 1/24
        (k, a), = b.insertions
        h = CohClass.h_power(target, k)
        if a == 0:
            return -integrate(h * chern(target, m - 1)) / 24
        if a == 1:
            return integrate(h * chern(target, m)) / 24
        return Fraction(0)
    if b.genus == 0 and b.n_points >= 3:
        # M_{0,n}(X,0) = M_{0,n} x X with its fundamental class
        psi = [a for _, a in b.insertions]
        if sum(psi) != b.n_points - 3:
            return Fraction(0)
        multinomial = Fraction(factorial(b.n_points - 3), prod(factorial(a) for a in psi))
        return multinomial * integrate(CohClass.h_power(target, sum(k for k, _ in b.insertions)))
    if b.genus >= 2 and b.n_points == 0 and target.is_cy3:
        return constant_map_value(target, b.genus)
    return None


# Single rule applications


def _find(b: Bracket, ins: tuple[int, int], index: int | None) -> int:
    if index is None:
        try:
            return b.insertions.index(ins)
        except ValueError:
            raise DomainError(f"{b} has no insertion {ins}") from None
    if b.insertions[index] != ins:
        raise DomainError(f"insertion {index} of {b} is not {ins}")
    return index


def string_reduce(b: Bracket, index: int | None = None) -> BracketExpression:
    """Remove a 1 insertion; each other descendant loses one psi."""
    i = _find(b, ONE, index)
    rest = b.without(i)
    if rest.is_unstable:
        return BracketExpression.of(b)
    out = BracketExpression()
    for j, (k, a) in enumerate(rest.insertions):
        if a:
            out = out + BracketExpression.of(rest.replaced(j, (k, a - 1)))
    return out


def dilaton_reduce(b: Bracket, target: CompleteIntersection | None = None, index: int | None = None) -> BracketExpression:
    """Remove a psi*1 insertion with factor 2g - 2 + (remaining points).

    The exception <psi>_{1,1,0} = chi_top / 24 needs ``target``.
    """
    i = _find(b, PSI, index)
    if b == Bracket(1, 0, (PSI,)):
        if target is None:
            raise DomainError("the genus-1 dilaton anomaly needs a target")
        return BracketExpression(euler_char(target) / 24)
    rest = b.without(i)
    factor = 2 * rest.genus - 2 + rest.n_points
    if factor == 0:
        return BracketExpression()
    if rest.is_unstable:
        return BracketExpression.of(b)
    return BracketExpression.of(rest, factor)


def divisor_reduce(b: Bracket, target: CompleteIntersection, index: int | None = None) -> BracketExpression:
    """Remove an H insertion: d * (rest) plus H multiplied into each descendant."""
    i = _find(b, DIVISOR, index)
    rest = b.without(i)
    if rest.is_unstable:
        return BracketExpression.of(b)
    out = BracketExpression.of(rest, rest.degree)
    for j, (k, a) in enumerate(rest.insertions):
        if a and k + 1 <= target.dim:
            out = out + BracketExpression.of(rest.replaced(j, (k + 1, a - 1)))
    return out


RULES = ("dilaton", "divisor", "string")
_RULE_INSERTION = {"dilaton": PSI, "divisor": DIVISOR, "string": ONE}


def _apply(rule: str, b: Bracket, target, index: int) -> BracketExpression:
    if rule == "dilaton":
        return dilaton_reduce(b, target, index)
    if rule == "divisor":
        return divisor_reduce(b, target, index)
    return string_reduce(b, index)


def _expand(b: Bracket, target, priority, rng) -> BracketExpression:
    v = _closed_value(b, target)
    if v is not None:
        return BracketExpression(v)
    if b.is_unpointed:
        return BracketExpression.of(b)
    for rule in priority:
        idx = [j for j, ins in enumerate(b.insertions) if ins == _RULE_INSERTION[rule]]
        if not idx:
            continue
        j = rng.choice(idx) if rng is not None else idx[0]
        step = _apply(rule, b, target, j)
        if b in step.terms:
            # rule declined: removal would leave an unstable bracket
            continue
        out = BracketExpression(step.const)
        for sub, c in step.terms.items():
            if rng is None:
                out = out + _expand_cached(sub, target, priority) * c
            else:
                out = out + _expand(sub, target, priority, rng) * c
        return out
    return BracketExpression.of(b)


@lru_cache(maxsize=200_000)
def _expand_cached(b: Bracket, target, priority) -> BracketExpression:
    return _expand(b, target, priority, None)


def expand(b: Bracket, target: CompleteIntersection, priority: Sequence[str] = RULES,
           rng: random.Random | None = None) -> BracketExpression:
    """Reduce ``b`` exhaustively.

    ``priority`` orders the rules; ``rng`` picks which matching insertion a rule
    acts on (the default is the first). Any choice gives the same result.
    """
    priority = tuple(priority)
    if sorted(priority) != sorted(RULES):
        raise ValueError(f"priority must be a permutation of {RULES}")
    if rng is None:
        return _expand_cached(b, target, priority)
    return _expand(b, target, priority, rng)


def expand_expression(expr: BracketExpression, target: CompleteIntersection) -> BracketExpression:
    out = BracketExpression(expr.const)
    for b, c in expr.terms.items():
        out = out + expand(b, target) * c
    return out


def evaluate(expr: BracketExpression, table: InvariantTable | None = None,
             extra: Mapping[Bracket, Fraction] | None = None) -> Fraction:
    """Substitute table values (and explicit ``extra`` values) into a reduced expression."""
    total = expr.const
    missing = []
    for b, c in expr.terms.items():
        if extra and b in extra:
            total += c * Fraction(extra[b])
        elif table is not None and b.is_unpointed and b.genus == table.genus and 1 <= b.degree <= table.max_degree:
            total += c * table.values[b.degree]
        else:
            missing.append(b)
    if missing:
        raise UnresolvedBracketError(sorted(missing))
    return total


def reduce(expr: BracketExpression | Bracket, target: CompleteIntersection,
           table: InvariantTable | None = None, extra: Mapping[Bracket, Fraction] | None = None) -> Fraction:
    if isinstance(expr, Bracket):
        expr = BracketExpression.of(expr)
    return evaluate(expand_expression(expr, target), table, extra)


# Generating functions


def _multisets(n_types: int, max_total: int):
    for counts in iproduct(range(max_total + 1), repeat=n_types):
        if sum(counts) <= max_total:
            yield counts


def potential(target: CompleteIntersection, genus: int, insertion: Mapping[tuple[int, int], QSeries],
              order: int) -> list[BracketExpression]:
    """Coefficients of F_g(q, t) = sum_{d,n} q^d/n! <t,...,t>_{g,n,d} up to q^order.

    ``insertion`` maps H^k psi^a to its rational q-series coefficient in t; each
    series must vanish at q = 0, which bounds the number of insertions by
    ``order``. Pairs (d, n) without a moduli space are left out.
    """
    types = sorted(insertion)
    series = [insertion[t].truncate(order) if insertion[t].order >= order else None for t in types]
    for t, s in zip(types, series):
        if s is None:
            raise DepthError(f"insertion series for {t} is shorter than order {order}")
        if s.coeffs[0]:
            raise DomainError(f"insertion series for {t} must vanish at q = 0")
    out = [BracketExpression() for _ in range(order + 1)]
    for counts in _multisets(len(types), order):
        n = sum(counts)
        coeff = QSeries.one(order)
        for s, m in zip(series, counts):
            if m:
                coeff = coeff * s ** m
        denom = prod(factorial(m) for m in counts)
        coeff = coeff / denom
        low = coeff.valuation()
        if low is None:
            continue
        ins = tuple(t for t, m in zip(types, counts) for _ in range(m))
        for d in range(0, order - low + 1):
            b = Bracket(genus, d, ins)
            if b.is_unstable:
                continue
            e = expand(b, target)
            if not e:
                continue
            for j in range(low, order - d + 1):
                if coeff.coeffs[j]:
                    out[d + j] = out[d + j] + e * coeff.coeffs[j]
    return out


def evaluate_series(coeffs: Sequence[BracketExpression], table: InvariantTable | None = None,
                    extra: Mapping[Bracket, Fraction] | None = None) -> QSeries:
    return QSeries([evaluate(e, table, extra) for e in coeffs], len(coeffs) - 1)


def scale_expressions(s: QSeries, coeffs: Sequence[BracketExpression]) -> list[BracketExpression]:
    """Product of a rational series with a series of bracket expressions."""
    order = min(s.order, len(coeffs) - 1)
    out = []
    for n in range(order + 1):
        acc = BracketExpression()
        for i in range(n + 1):
            if s.coeffs[i]:
                acc = acc + coeffs[n - i] * s.coeffs[i]
        out.append(acc)
    return out
