"""Cyclotomic fields Q(zeta_m) and the representation ring of Z/r."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    """Division of coefficient lists (ascending) by a monic-led ``b``."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = Fraction(r[i + len(b) - 1]) / lead
        if c.denominator == 1:
            c = int(c)
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Integer coefficients of Phi_m, ascending."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = poly_divmod(num, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


class CycloElem:
    """Element of Q(zeta_m), stored as a polynomial of degree < phi(m)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs=()):
        self.m = m
        phi = cyclotomic_poly(m)
        c = [Fraction(x) for x in coeffs]
        if len(c) >= len(phi):
            _, c = poly_divmod(c, list(phi))
            c = [Fraction(x) for x in c]
        c = _trim(c)
        self.coeffs = tuple(c)

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "CycloElem":
        """zeta_m ** power for any integer power."""
        power %= m
        return cls(m, [0] * power + [1])

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.m != self.m:
                raise ValueError("mismatched conductors")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.m, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, y in enumerate(other.coeffs):
            a[i] += y
        return CycloElem(self.m, a)

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElem(self.m, poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use zeta(m, -j) for inverse powers of zeta")
        out = CycloElem(self.m, [1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return f"CycloElem({self.m}, 0)"
        terms = [f"{c}*z^{i}" if i else str(c)
                 for i, c in enumerate(self.coeffs) if c]
        return f"CycloElem({self.m}, {' + '.join(terms)})"


class CycRep:
    """Virtual representation of Z/r: polynomial in the generator h mod h^r - 1."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r: int, coeffs):
        if r < 1:
            raise ValueError("cyclic order must be positive")
        c = [Fraction(0)] * r
        for i, x in enumerate(coeffs):
            c[i % r] += Fraction(x)
        self.r = r
        self.coeffs = tuple(c)

    def adams(self, k: int) -> "CycRep":
        if k == 0:
            raise ValueError("Adams operation Psi^0 is undefined")
        c = [Fraction(0)] * self.r
        for j, x in enumerate(self.coeffs):
            c[(j * k) % self.r] += x
        return CycRep(self.r, c)

    def dim(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def __add__(self, other):
        return CycRep(self.r, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        c = [Fraction(0)] * self.r
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                c[(i + j) % self.r] += a * b
        return CycRep(self.r, c)

    def __eq__(self, other):
        return isinstance(other, CycRep) and (self.r, self.coeffs) == (other.r, other.coeffs)

    def __hash__(self):
        return hash((self.r, self.coeffs))

    def __repr__(self):
        return f"CycRep({self.r}, {list(self.coeffs)})"


def regular_rep(r: int) -> CycRep:
    """C[Z/r] = 1 + h + ... + h^(r-1)."""
    return CycRep(r, [1] * r)


def trace_generator(v: CycRep) -> CycloElem:
    """Character of ``v`` at the generator, h -> zeta_r."""
    return CycloElem(v.r, v.coeffs)


def primitive_roots(m: int):
    """Exponents t with zeta_m^t primitive."""
    return [t for t in range(1, m + 1) if gcd(t, m) == 1]
