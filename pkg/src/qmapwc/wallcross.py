"""Wall-crossing between Gromov-Witten and epsilon-quasimap unpointed potentials.

For a Calabi-Yau threefold complete intersection, with f = (J_1/H)/J_0 and
C_g the constant-map term,

    genus g >= 2:  J_0^{2g-2} (C_g + sum_d q^d <>^eps_d) = C_g + sum_d q^d e^{d f} <>^inf_d
    genus 1:       (chi/24) log J_0 + sum_d q^d <>^eps_d
                       = -(f/24) int_X H c_2 + sum_d q^d e^{d f} <>^inf_d

Genus 0 uses the genus-g shape with C_0 = 0. The check functions at the bottom
re-run these identities mechanically through the bracket calculus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

from .cohring import CohClass, CompleteIntersection, chern, euler_char, integrate
from .errors import DepthError, DomainError
from .gwcalc import (
    Bracket,
    BracketExpression,
    InvariantTable,
    constant_map_value,
    evaluate_series,
    expand,
    potential,
    scale_expressions,
)
from .ifun import Stability, j0_j1, j_classes, mirror_map, mu, plus_series
from .series import QSeries, compose, exp, inv, log, revert

__all__ = [
    "InvariantTable",
    "CheckReport",
    "wallcross",
    "wallcross_g1",
    "wallcross_g2",
    "gw_from_quasimap",
    "transform",
    "substitution",
    "semipositive_identity_check",
    "bcov_identity_check",
    "fano_independence_check",
]


@dataclass
class CheckReport:
    name: str
    passed: bool
    first_failure: int | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "first_failing_order": self.first_failure,
            "details": self.details,
        }


def _require_cy3_genus(target: CompleteIntersection, genus: int):
    if not target.is_calabi_yau:
        raise DomainError(f"wall-crossing transforms need a Calabi-Yau target; {target} has index {target.index}")
    if target.dim != 3 and not (genus >= 2 and target.dim > 3):
        raise DomainError(f"genus-{genus} transform implemented for threefolds only; {target} has dim {target.dim}")


def _shared_series(target, eps: Stability, depth: int):
    j0, j1h = j0_j1(target, eps, depth, method="extract")
    f = j1h * inv(j0)
    ef = exp(f)
    powers = [QSeries.one(depth)]
    for _ in range(depth):
        powers.append(powers[-1] * ef)
    return j0, f, powers


def _constant(target, genus: int) -> Fraction:
    return constant_map_value(target, genus) if genus >= 2 else Fraction(0)


def _divisor_sum(values, powers, depth) -> QSeries:
    """sum_d q^d e^{d f} v_d."""
    out = QSeries([0], depth)
    for d in range(1, depth + 1):
        if values[d]:
            out = out + powers[d].shift(d) * values[d]
    return out


def _genus1_shift(target, j0, f) -> QSeries:
    """-(f/24) int H c_2 - (chi/24) log J_0: the genus-1 degree-0 corrections."""
    hc = integrate(CohClass.h_power(target, 1) * chern(target, target.dim - 1))
    return f * (-hc / 24) - log(j0) * (euler_char(target) / 24)


def _depth(table: InvariantTable, depth: int | None) -> int:
    if depth is None:
        depth = table.max_degree
    table.require_depth(depth)
    return depth


def _vanishing(table: InvariantTable, eps: Stability, depth: int, name: str) -> InvariantTable:
    # dim >= 4, genus >= 2: the virtual dimension is negative
    if any(table.values[d] for d in range(1, depth + 1)):
        raise DomainError(f"genus-{table.genus} invariants of {table.target} vanish by dimension; got nonzero input")
    return InvariantTable(table.target, table.genus, eps, {d: 0 for d in range(1, depth + 1)},
                          {"transform": name, "epsilon": str(eps), "source_stability": str(table.stability)})


def wallcross_g2(table: InvariantTable, eps: Stability, depth: int | None = None) -> InvariantTable:
    """Quasimap invariants <>^eps_{g,0,d} from Gromov-Witten ones, genus g >= 2 (or g = 0)."""
    if table.stability.kind != "infinity":
        raise DomainError(f"forward transform needs a Gromov-Witten table, got stability {table.stability}")
    g = table.genus
    if g == 1:
        raise DomainError("genus 1 has its own transform; use wallcross_g1")
    target = table.target
    _require_cy3_genus(target, g)
    depth = _depth(table, depth)
    name = f"g{g}-wallcross" if g != 2 else "g2-wallcross"
    if target.dim > 3:
        return _vanishing(table, eps, depth, name)
    j0, _, powers = _shared_series(target, eps, depth)
    c = _constant(target, g)
    rhs = _divisor_sum(table.values, powers, depth) + c
    lhs = rhs * j0 ** (2 - 2 * g) - c
    return InvariantTable(target, g, eps, {d: lhs[d] for d in range(1, depth + 1)},
                          {"transform": name, "epsilon": str(eps), "source_stability": "infinity"})


def wallcross_g1(table: InvariantTable, eps: Stability, depth: int | None = None) -> InvariantTable:
    if table.stability.kind != "infinity":
        raise DomainError(f"forward transform needs a Gromov-Witten table, got stability {table.stability}")
    if table.genus != 1:
        raise DomainError(f"wallcross_g1 got a genus-{table.genus} table")
    target = table.target
    _require_cy3_genus(target, 1)
    depth = _depth(table, depth)
    j0, f, powers = _shared_series(target, eps, depth)
    out = _divisor_sum(table.values, powers, depth) + _genus1_shift(target, j0, f)
    return InvariantTable(target, 1, eps, {d: out[d] for d in range(1, depth + 1)},
                          {"transform": "g1-wallcross", "epsilon": str(eps), "source_stability": "infinity"})


def wallcross(table: InvariantTable, eps: Stability, depth: int | None = None) -> InvariantTable:
    if table.genus == 1:
        return wallcross_g1(table, eps, depth)
    return wallcross_g2(table, eps, depth)


def _solve_divisor_sum(rhs: QSeries, powers, depth) -> dict[int, Fraction]:
    """Invert v -> sum_d q^d e^{d f} v_d degree by degree."""
    values: dict[int, Fraction] = {}
    for n in range(1, depth + 1):
        acc = rhs[n]
        for d in range(1, n):
            acc -= values[d] * powers[d][n - d]
        values[n] = acc  # [q^0] e^{n f} = 1
    return values


def gw_from_quasimap(table: InvariantTable, eps: Stability | None = None, depth: int | None = None) -> InvariantTable:
    """Gromov-Witten invariants from epsilon-quasimap ones: the inverse transform."""
    eps = table.stability if eps is None else eps
    if table.stability != eps:
        raise DomainError(f"table is at stability {table.stability}, not {eps}")
    g = table.genus
    target = table.target
    _require_cy3_genus(target, g)
    depth = _depth(table, depth)
    inf = Stability.infinity()
    name = f"g{g}-inverse-wallcross"
    if eps.kind == "infinity":
        return InvariantTable(target, g, inf, {d: table.values[d] for d in range(1, depth + 1)},
                              {"transform": name, "epsilon": "infinity", "source_stability": "infinity"})
    if target.dim > 3:
        return _vanishing(table, inf, depth, name)
    j0, f, powers = _shared_series(target, eps, depth)
    given = QSeries([0] + [table.values[d] for d in range(1, depth + 1)], depth)
    if g == 1:
        rhs = given - _genus1_shift(target, j0, f)
    else:
        c = _constant(target, g)
        rhs = (given + c) * j0 ** (2 * g - 2) - c
    values = _solve_divisor_sum(rhs, powers, depth)
    return InvariantTable(target, g, inf, values,
                          {"transform": name, "epsilon": "infinity", "source_stability": str(eps)})


def transform(table: InvariantTable, to: Stability, depth: int | None = None) -> InvariantTable:
    """Move a table between any two stabilities, passing through Gromov-Witten theory."""
    gw = table if table.stability.kind == "infinity" else gw_from_quasimap(table, depth=depth)
    if to.kind == "infinity":
        return gw
    return wallcross(gw, to, depth)


# Mechanical identity checks


def substitution(target: CompleteIntersection, eps: Stability, order: int) -> dict[tuple[int, int], QSeries]:
    """[zJ^eps - z]_+ at z = -psi, split into coefficient series of H^k psi^a."""
    plus = plus_series(target, eps, order)
    coeffs: dict[tuple[int, int], list] = {}
    for d, zp in enumerate(plus.coeffs):
        for e, cls in zp.items():
            for k, a in enumerate(cls.coeffs):
                if a:
                    coeffs.setdefault((k, e), [Fraction(0)] * (order + 1))[d] += (-1) ** e * a
    return {key: QSeries(v, order) for key, v in coeffs.items()}


def _class_insertions(s: QSeries) -> dict[tuple[int, int], QSeries]:
    out = {}
    for k in range(len(s.coeffs[0].coeffs)):
        comp = QSeries([c[k] for c in s.coeffs], s.order)
        if comp.valuation() is not None:
            out[(k, 0)] = comp
    return out


def _first_mismatch(a, b) -> int | None:
    for n, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return n
    return None


def random_table(target, genus, depth, seed) -> InvariantTable:
    rng = random.Random(seed)
    vals = {d: Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)) for d in range(1, depth + 1)}
    return InvariantTable(target, genus, Stability.infinity(), vals)


def semipositive_identity_check(target: CompleteIntersection, genus: int, eps: Stability, depth: int,
                                table: InvariantTable | None = None, seed: int = 0) -> CheckReport:
    """Derive the J_0-rescaled wall-crossing from the psi-shifted one through the dilaton engine.

    Route 1 evaluates F^inf(q, J_1 - (J_0 - 1) psi). Route 2 evaluates
    J_0^{2-2g} F^inf(q, J_1/J_0) - delta_{g,1} (chi/24) log J_0. Both are
    symbolic in the unpointed invariants and must agree at every order. For
    Calabi-Yau threefolds route 1 is also evaluated on a table and compared
    with the closed-form transform.
    """
    name = "semipositive"
    if not target.is_semipositive:
        raise DomainError(f"{target} is not semi-positive (index {target.index})")
    shift = substitution(target, eps, depth)
    if any(a > 1 for _, a in shift):
        return CheckReport(name, False, 0, {"reason": "plus-truncation has z^2 or higher terms"})
    route1 = potential(target, genus, shift, depth)

    j0c, j1c = j_classes(target, eps, depth)
    if any(any(c.coeffs[1:]) for c in j0c.coeffs):
        return CheckReport(name, False, 0, {"reason": "J_0 is not scalar"})
    j0 = QSeries([c[0] for c in j0c.coeffs], depth)
    scaled = j1c * inv(j0)
    route2 = scale_expressions(j0 ** (2 - 2 * genus), potential(target, genus, _class_insertions(scaled), depth))
    if genus == 1:
        anomaly = log(j0) * (euler_char(target) / 24)
        route2 = [e - anomaly[n] for n, e in enumerate(route2)]
    bad = _first_mismatch(route1, route2)
    details = {"depth": depth, "genus": genus, "epsilon": str(eps)}
    if bad is not None:
        details["route1"] = repr(route1[bad])
        details["route2"] = repr(route2[bad])
        return CheckReport(name, False, bad, details)

    if target.is_cy3 and genus >= 1:
        table = table or random_table(target, genus, depth, seed)
        closed = wallcross(table, eps, depth)
        engine = evaluate_series(route1, table)
        expected = [_constant(target, genus)] + [closed.values[d] for d in range(1, depth + 1)]
        bad = _first_mismatch(list(engine.coeffs), expected)
        details["closed_form_compared"] = True
        if bad is not None:
            details["engine"] = str(engine.coeffs[bad])
            details["closed_form"] = str(expected[bad])
            return CheckReport(name, False, bad, details)
    return CheckReport(name, True, None, details)


def bcov_identity_check(table: InvariantTable, depth: int | None = None) -> CheckReport:
    """Re-expand the 0+ potential in the mirror coordinate and recover the Gromov-Witten series.

    genus g >= 2:  I_0^{2g-2} F^{0+}_g (q(Q)) = sum_{d>=0} Q^d <>^inf_{g,0,d}
    genus 1:       F^{0+}_1 + (chi/24) log I_0 + (int H c_2 / 24) log(Q/q), at q = q(Q),
                   equals sum_{d>=1} Q^d <>^inf_{1,0,d}
    """
    name = "bcov"
    target, g = table.target, table.genus
    if not target.is_cy3:
        raise DomainError(f"the mirror restatement is for Calabi-Yau threefolds; got {target}")
    if g < 1:
        raise DomainError("the mirror restatement needs genus >= 1")
    depth = _depth(table, depth)
    zero_plus = Stability.zero_plus()
    qmap = wallcross(table, zero_plus, depth)
    i0, _ = j0_j1(target, zero_plus, depth, method="extract")
    big_q = mirror_map(target, depth + 1)
    q_of_big_q = revert(big_q.truncate(depth)) if depth else QSeries([0], 0)
    fq = QSeries([0] + [qmap.values[d] for d in range(1, depth + 1)], depth)
    c = _constant(target, g)
    if g == 1:
        hc = integrate(CohClass.h_power(target, 1) * chern(target, 2))
        q_ratio = QSeries(big_q.coeffs[1:], depth)
        lhs = fq + log(i0) * (euler_char(target) / 24) + log(q_ratio) * (hc / 24)
    else:
        lhs = (fq + c) * i0 ** (2 * g - 2)
    in_big_q = compose(lhs, q_of_big_q)
    expected = [c] + [table.values[d] for d in range(1, depth + 1)]
    bad = _first_mismatch(list(in_big_q.coeffs), expected)
    details = {"genus": g, "depth": depth}
    if bad is not None:
        details["lhs"] = str(in_big_q.coeffs[bad])
        details["rhs"] = str(expected[bad])
    return CheckReport(name, bad is None, bad, details)


def fano_independence_check(target: CompleteIntersection, genus: int, depth: int) -> CheckReport:
    """Fano index >= 2: every correcting class vanishes, so the transform is the identity.

    Fano index 1: the shift is q (prod l_i!) 1 for all eps <= 1, and the string
    equation removes it from every primary bracket outside (g, n) = (0, 1), (0, 2).
    """
    name = "fano"
    if target.index < 1:
        raise DomainError(f"{target} is not Fano (index {target.index})")
    details: dict = {"index": target.index, "depth": depth, "genus": genus}
    chambers = [Stability.zero_plus()] + [Stability.finite(Fraction(1, k)) for k in range(1, depth + 1)]
    if target.index >= 2:
        for d in range(1, depth + 1):
            if mu(target, d).value:
                details["nonzero_mu"] = d
                return CheckReport(name, False, d, details)
        for eps in chambers:
            shifted = potential(target, genus, substitution(target, eps, depth), depth)
            plain = potential(target, genus, {}, depth)
            bad = _first_mismatch(shifted, plain)
            if bad is not None:
                details["epsilon"] = str(eps)
                return CheckReport(name, False, bad, details)
        details["transform"] = "identity"
        return CheckReport(name, True, None, details)

    expected_shift = prod(factorial(l) for l in target.degrees)
    details["shift"] = f"{expected_shift}*q*1"
    for eps in chambers:
        shift = substitution(target, eps, depth)
        want = {(0, 0): QSeries([0, expected_shift], depth)}
        if shift != want:
            details["epsilon"] = str(eps)
            details["got"] = {str(k): v.to_json() for k, v in shift.items()}
            return CheckReport(name, False, 1, details)
    checked = 0
    for n in range(0, 4):
        if genus == 0 and n in (1, 2):
            continue
        for ks in _nondecreasing(n, target.dim):
            for d in range(0, depth + 1):
                for extra in range(1, depth + 1):
                    b = Bracket(genus, d, tuple((k, 0) for k in ks) + ((0, 0),) * extra)
                    if b.is_unstable:
                        continue
                    e = expand(b, target)
                    checked += 1
                    if e:
                        details["survivor"] = f"{b} -> {e!r}"
                        return CheckReport(name, False, d, details)
    details["primary_brackets_checked"] = checked
    return CheckReport(name, True, None, details)


def _nondecreasing(n: int, top: int):
    if n == 0:
        yield ()
        return
    for rest in _nondecreasing(n - 1, top):
        start = rest[-1] if rest else 0
        for k in range(start, top + 1):
            yield rest + (k,)
