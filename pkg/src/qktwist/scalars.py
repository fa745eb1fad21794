"""Equivariant ground ring: rational functions in named parameters, extended
by nilpotent markers.

Values are stored as ``gmpy2.mpq`` whenever they are parameter-free and
promoted to elements of sympy's sparse rational function field otherwise.
The promotion is invisible to callers; every constant field element is
demoted back to ``mpq`` so that equality and hashing are canonical.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import QQ
from sympy.polys.fields import FracElement, field

MPQ = type(QQ(1))


class ScalarError(ArithmeticError):
    """Raised on division by a non-unit or an ill-formed scalar operation."""


def _demote(v):
    if isinstance(v, FracElement):
        if v.numer.is_ground and v.denom.is_ground:
            return QQ(v.numer.LC) / QQ(v.denom.LC) if v else QQ(0)
        return v
    return v


def _to_value(v):
    if isinstance(v, MPQ):
        return v
    if isinstance(v, bool):
        return QQ(int(v))
    if isinstance(v, int):
        return QQ(v)
    if isinstance(v, Fraction):
        return QQ(v.numerator, v.denominator)
    if isinstance(v, FracElement):
        return _demote(v)
    raise TypeError(f"cannot use {type(v).__name__} as a scalar value")


class ScalarRing:
    """Q(params)[eps_1, ..., eps_j] / (eps_i^(N_i + 1)).

    ``params`` names the equivariant parameters (default a single ``lam``);
    ``eps`` maps marker names to truncation orders N_i.
    """

    def __init__(self, params=("lam",), eps=None):
        params = tuple(params)
        if not params:
            raise ValueError("at least one equivariant parameter is required")
        eps = dict(eps or {})
        for name, order in eps.items():
            if int(order) < 1:
                raise ValueError(f"truncation order of {name} must be >= 1")
        self.params = params
        self.eps_names = tuple(eps)
        self.eps_orders = tuple(int(eps[k]) for k in self.eps_names)
        self.field, *gens = field(",".join(params), QQ)
        self.gens = dict(zip(params, gens))
        self._zero_mono = (0,) * len(self.eps_names)
        # total nilpotency degree of the augmentation ideal
        self.nil_degree = sum(self.eps_orders)

    def _key(self):
        return (self.params, self.eps_names, self.eps_orders)

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        eps = dict(zip(self.eps_names, self.eps_orders))
        return f"ScalarRing(params={self.params!r}, eps={eps!r})"

    # -- constructors ----------------------------------------------------
    def __call__(self, v) -> "EqScalar":
        if isinstance(v, EqScalar):
            if v.ring != self:
                raise ScalarError(f"scalar from {v.ring!r} used in {self!r}")
            return v
        v = _to_value(v)
        if not v:
            return EqScalar(self, {})
        return EqScalar(self, {self._zero_mono: v})

    @property
    def zero(self):
        return EqScalar(self, {})

    @property
    def one(self):
        return self(1)

    def param(self, name=None) -> "EqScalar":
        name = self.params[0] if name is None else name
        return self(self.gens[name])

    def eps(self, name=None) -> "EqScalar":
        if not self.eps_names:
            raise ScalarError("this scalar ring carries no nilpotent markers")
        name = self.eps_names[0] if name is None else name
        i = self.eps_names.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(self.eps_names)))
        return EqScalar(self, {mono: QQ(1)})

    def monomials(self):
        """All eps-monomials that survive truncation."""
        return list(product(*(range(n + 1) for n in self.eps_orders)))

    def from_expr(self, text: str) -> "EqScalar":
        return self(self.field.from_expr(text))

    @lru_cache(maxsize=None)
    def _adams_gen(self, k: int):
        # images of the field generators under lambda -> lambda^k
        return tuple(g**k for g in self.gens.values())


class EqScalar:
    """Element of :class:`ScalarRing`; immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: ScalarRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, EqScalar):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ScalarError("mismatched scalar rings")
            return other
        try:
            return self.ring(other)
        except TypeError:
            return NotImplemented

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, v in other.terms.items():
            s = _demote(out.get(m, 0) + v)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return EqScalar(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return EqScalar(self.ring, {m: -v for m, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        orders = self.ring.eps_orders
        out = {}
        for ma, va in a.items():
            for mb, vb in b.items():
                m = tuple(i + j for i, j in zip(ma, mb))
                if any(e > n for e, n in zip(m, orders)):
                    continue
                out[m] = out.get(m, 0) + va * vb
        out = {m: _demote(v) for m, v in out.items()}
        return EqScalar(self.ring, {m: v for m, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ring(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.ring.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        c = self.constant()
        if not c:
            raise ScalarError(f"{self} is not a unit")
        c_inv = 1 / c
        if len(self.terms) == 1:
            return EqScalar(self.ring, {self.ring._zero_mono: _demote(c_inv)})
        # u = c (1 + n) with n nilpotent
        n = self * self.ring(c_inv) - 1
        out, term = self.ring.one, self.ring.one
        for _ in range(self.ring.nil_degree):
            term = -(term * n)
            if not term:
                break
            out = out + term
        return out * self.ring(c_inv)

    # -- predicates ------------------------------------------------------
    def constant(self):
        """Value of the eps-free part (an ``mpq`` or field element)."""
        return self.terms.get(self.ring._zero_mono, QQ(0))

    def is_unit(self) -> bool:
        return bool(self.constant())

    def is_nilpotent(self) -> bool:
        return not self.constant()

    def is_rational(self) -> bool:
        return not self.terms or (
            set(self.terms) == {self.ring._zero_mono}
            and isinstance(self.constant(), MPQ)
        )

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is not a rational constant")
        c = self.constant()
        return Fraction(int(c.numerator), int(c.denominator))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, EqScalar):
            try:
                other = self.ring(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure maps --------------------------------------------------
    def adams(self, k: int) -> "EqScalar":
        """lam -> lam^k on every parameter; markers are fixed."""
        if k == 0:
            raise ValueError("Adams operation Psi^0 is undefined")
        if k == 1:
            return self
        imgs = self.ring._adams_gen(k)
        out = {}
        for m, v in self.terms.items():
            if isinstance(v, FracElement):
                v = _demote(_poly_at(v.numer, imgs) / _poly_at(v.denom, imgs))
            out[m] = v
        return EqScalar(self.ring, out)

    def subs(self, param: str, value) -> "EqScalar":
        """Substitute a rational value for one parameter.

        Raises :class:`ScalarError` when a denominator vanishes.
        """
        gen = self.ring.gens[param]
        value = _to_value(value)
        out = {}
        for m, v in self.terms.items():
            if isinstance(v, FracElement):
                try:
                    v = _demote(self.ring.field(v.subs(gen, value)))
                except ZeroDivisionError:
                    raise ScalarError(
                        f"{param}={value} is a pole of {v}") from None
            if v:
                out[m] = v
        return EqScalar(self.ring, out)

    def nil_order(self) -> int:
        """Smallest total eps-degree present (0 for units)."""
        if not self.terms:
            return math.inf
        return min(sum(m) for m in self.terms)

    # -- rendering -------------------------------------------------------
    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"EqScalar({self})"


def _poly_at(p, imgs):
    out = 0
    for mono, c in p.terms():
        t = c
        for g, e in zip(imgs, mono):
            if e:
                t = t * g**e
        out = out + t
    return out


def _value_str(v) -> str:
    if isinstance(v, MPQ):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    s = str(v).replace("**", "^")
    return s


def render_scalar(s: EqScalar) -> str:
    if not s.terms:
        return "0"
    names = s.ring.eps_names
    parts = []
    for m in sorted(s.terms, key=lambda m: (sum(m), m)):
        v = s.terms[m]
        mono = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, m) if e)
        vs = _value_str(v)
        if not mono:
            parts.append(vs)
        elif isinstance(v, MPQ) and v == 1:
            parts.append(mono)
        elif isinstance(v, MPQ) and v == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"({vs})*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
