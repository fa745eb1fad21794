"""Truncated multivariate power series over Q and the nilpotent exponential."""
from __future__ import annotations

from fractions import Fraction
from math import factorial


class TruncatedSeries:
    """Power series in ``names`` modulo (v_i^(N_i + 1)); rational coefficients.

    ``orders`` gives the N_i.  Terms live in a dict keyed by exponent tuples.
    """

    __slots__ = ("names", "orders", "terms")

    def __init__(self, names, orders, terms=None):
        self.names = tuple(names)
        self.orders = tuple(orders)
        out = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if any(e < 0 for e in m):
                raise ValueError("negative exponent in a power series")
            if any(e > n for e, n in zip(m, self.orders)) or not c:
                continue
            out[m] = Fraction(c)
        self.terms = out

    @classmethod
    def var(cls, names, orders, name):
        i = tuple(names).index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(names)))
        return cls(names, orders, {mono: 1})

    def _new(self, terms):
        return TruncatedSeries(self.names, self.orders, terms)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if (other.names, other.orders) != (self.names, self.orders):
                raise ValueError("mismatched series rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self._new({(0,) * len(self.names): other})
        return NotImplemented

    def constant(self) -> Fraction:
        return self.terms.get((0,) * len(self.names), Fraction(0))

    def is_nilpotent(self) -> bool:
        return self.constant() == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for ma, a in self.terms.items():
            for mb, b in other.terms.items():
                m = tuple(i + j for i, j in zip(ma, mb))
                if any(e > n for e, n in zip(m, self.orders)):
                    continue
                out[m] = out.get(m, 0) + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new({m: c / other for m, c in self.terms.items()})
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self._coerce(1)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        c = self.constant()
        if c == 0:
            raise ZeroDivisionError("series with zero constant term")
        n = self / c - 1
        out, term = self._coerce(1), self._coerce(1)
        for _ in range(sum(self.orders)):
            term = -(term * n)
            out = out + term
        return out / c

    def coeff(self, *mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.names, self.orders, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            mono = "*".join(n if e == 1 else f"{n}^{e}"
                            for n, e in zip(self.names, m) if e)
            parts.append(f"{self.terms[m]}*{mono}" if mono else str(self.terms[m]))
        return " + ".join(parts)


def series_exp(f, order=None):
    """exp(f) = sum f^m / m! for a nilpotent ``f``.

    ``f`` may be any ring element exposing ``is_nilpotent()`` and exact
    division by integers.  With ``order`` the sum stops after that many
    terms; otherwise it runs until the powers of ``f`` vanish.
    """
    if not f.is_nilpotent():
        raise ValueError("exponential of an element with non-nilpotent constant term")
    out = f * 0 + 1
    term = out
    m = 1
    while order is None or m < order:
        term = term * f
        if not term:
            break
        out = out + term / factorial(m)
        m += 1
    return out


def series_log1p(f, order=None):
    """log(1 + f) for nilpotent ``f``; inverse of :func:`series_exp` - 1."""
    if not f.is_nilpotent():
        raise ValueError("log(1 + f) needs a nilpotent f")
    out = f * 0
    term = f * 0 + 1
    m = 1
    while order is None or m < order:
        term = term * f
        if not term:
            break
        out = out + term / (m if m % 2 else -m)
        m += 1
    return out
