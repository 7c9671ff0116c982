"""Independent reference computations used to derive expected values.

Nothing here imports the package under test; each oracle uses a different
algorithm from the production code path.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, prod


def bernoulli_akiyama_tanigawa(m: int) -> Fraction:
    """B_m with the B_1 = +1/2 convention (sign irrelevant for even m)."""
    a = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        a[i] = Fraction(1, i + 1)
        for j in range(i, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def hypersurface_euler(n: int, l: int) -> int:
    """Euler characteristic of a smooth degree-l hypersurface in P^n."""
    return ((1 - l) ** (n + 1) - 1) // l + n + 1


def cy3_euler_from_hodge(h11: int, h21: int) -> int:
    return 2 * (h11 - h21)


def tangent_chern_numbers(n: int, degrees) -> list[Fraction]:
    """Coefficients of (1+H)^{n+1} / prod(1 + l H) by long division on plain integer lists."""
    dim = n - len(degrees)
    num = [comb(n + 1, k) for k in range(dim + 1)]
    den = [1] + [0] * dim
    for l in degrees:
        den = [den[k] + (l * den[k - 1] if k else 0) for k in range(dim + 1)]
    out = []
    for k in range(dim + 1):
        out.append(num[k] - sum(out[i] * den[k - i] for i in range(k)))
    return out


def cy_j0(degrees, n: int, d: int) -> Fraction:
    return Fraction(prod(factorial(l * d) for l in degrees), factorial(d) ** (n + 1))


def cy_f1(degrees, n: int) -> Fraction:
    """q^1 coefficient of (I_1/H)/I_0 for a CY complete intersection, from the log-derivative of the hypergeometric term."""
    h = lambda m: sum(Fraction(1, k) for k in range(1, m + 1))
    return cy_j0(degrees, n, 1) * (sum(l * h(l) for l in degrees) - (n + 1) * h(1))


# truncated rational power series as plain lists


def p_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def p_compose(a, b, order):
    """a(b(q)) by summing powers; b[0] must be 0."""
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    for k in range(order + 1):
        for i in range(order + 1):
            out[i] += a[k] * power[i]
        power = p_mul(power, b, order)
    return out


def p_revert(a, order):
    """Compositional inverse by solving [q^n] a(b(q)) = 0 one coefficient at a time."""
    b = [Fraction(0), Fraction(1)] + [Fraction(0)] * (order - 1)
    for n in range(2, order + 1):
        resid = p_compose(a, b, order)[n]
        b[n] -= resid  # a'(0) = 1, so [q^n] shifts by exactly the change in b_n
    return b


def moebius_instantons(big_n, deg):
    """n_d from N_k = sum_{d | k} d^3 n_d via trial division."""
    ns = {}
    for k in range(1, len(big_n) + 1):
        ns[k] = (Fraction(big_n[k - 1]) - sum(ns[d] * d ** 3 for d in range(1, k) if k % d == 0)) / k ** 3
    return [ns[k] for k in sorted(ns)]
