"""Cohomological oracle: chi^fake = int td(T) ch(W) on CP^{n-1}.

Independent of :func:`qktwist.kring.chi`; used to cross-check it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .kring import KClass
from .series import TruncatedSeries, series_exp


class CohClass(TruncatedSeries):
    """Polynomial in the hyperplane class h modulo h^n, rational coefficients."""

    __slots__ = ()

    def __init__(self, n: int, terms=None):
        super().__init__(("h",), (n - 1,), terms)

    @property
    def n(self):
        return self.orders[0] + 1

    def _new(self, terms):
        return CohClass(self.n, terms)

    def coefficients(self):
        return [self.coeff(i) for i in range(self.n)]


def _h(n):
    return CohClass(n, {(1,): 1})


def ch(a: KClass) -> CohClass:
    """Chern character with c_1(P) = -h, so ch(P) = exp(-h)."""
    n = a.ring.n
    coeffs = []
    for c in a.coeffs:
        if not c.is_rational():
            raise ValueError("the oracle is non-equivariant: coefficients must be rational")
        coeffs.append(c.to_fraction())
    chP = series_exp(-_h(n))
    chx = CohClass(n, {(0,): 1}) - chP
    out = CohClass(n)
    power = CohClass(n, {(0,): 1})
    for c in coeffs:
        out = out + power * c
        power = power * chx
    return out


@lru_cache(maxsize=None)
def td_tangent(n: int) -> CohClass:
    """(h / (1 - exp(-h)))^n, via the Euler sequence."""
    if n < 1:
        raise ValueError("n must be >= 1")
    # (1 - exp(-h))/h = sum_j (-1)^j h^j / (j+1)!
    g = CohClass(n, {(j,): Fraction((-1) ** j, factorial(j + 1)) for j in range(n)})
    return g.inverse() ** n


def chi_fake(a: KClass) -> Fraction:
    """Coefficient of h^{n-1} in td(T) ch(a)."""
    n = a.ring.n
    return (td_tangent(n) * ch(a)).coeff(n - 1)
