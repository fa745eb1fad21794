"""Rational functions of q with K-ring coefficients.

A :class:`QRat` is a Laurent polynomial numerator over a factored
denominator prod (1 - c q^m)^e with m > 0 and every c a unit, so the
denominator is 1 at q = 0 and (up to a unit monomial) 1 at q = infinity.
Both expansions therefore exist and are computed by plain recurrences;
poles are never located.
"""
from __future__ import annotations

from math import comb

from .kring import KClass, KRing
from .scalars import ScalarError


class LimitError(ArithmeticError):
    """The requested specialization has no limit."""


class LaurentPoly:
    """Finite sum of KClass * q^j; immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: KRing, terms=None):
        self.ring = ring
        self.terms = {j: c for j, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, ring, coeff, j=0):
        return cls(ring, {j: ring(coeff)})

    @classmethod
    def q(cls, ring):
        return cls(ring, {1: ring.one})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, QRat):
            return NotImplemented
        try:
            return LaurentPoly(self.ring, {0: self.ring(other)})
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for j, c in other.terms.items():
            out[j] = out[j] + c if j in out else c
        return LaurentPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {j: -c for j, c in self.terms.items()})

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
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                p = a * b
                out[i + j] = out[i + j] + p if i + j in out else p
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            if len(other.terms) != 1:
                raise ScalarError("only division by a unit monomial is supported")
            (j, c), = other.terms.items()
            inv = c.inverse()
            return LaurentPoly(self.ring, {i - j: a * inv for i, a in self.terms.items()})
        inv = self.ring(other).inverse()
        return LaurentPoly(self.ring, {i: a * inv for i, a in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            return LaurentPoly(self.ring, {0: self.ring.one}) / (self ** (-k))
        out = LaurentPoly(self.ring, {0: self.ring.one})
        for _ in range(k):
            out = out * self
        return out

    def coeff(self, j: int) -> KClass:
        return self.terms.get(j, self.ring.zero)

    def min_exp(self):
        return min(self.terms) if self.terms else None

    def max_exp(self):
        return max(self.terms) if self.terms else None

    def subst_q(self, k: int) -> "LaurentPoly":
        if k == 0:
            raise ValueError("q -> q^0 is not an Adams substitution")
        return LaurentPoly(self.ring, {j * k: c for j, c in self.terms.items()})

    def adams(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.ring, {j * k: c.adams(k) for j, c in self.terms.items()})

    def at_one(self) -> KClass:
        """Value at q = 1."""
        out = self.ring.zero
        for c in self.terms.values():
            out = out + c
        return out

    def scalar_map(self, fn) -> "LaurentPoly":
        return LaurentPoly(self.ring, {j: fn(c) for j, c in self.terms.items()})

    def is_nilpotent(self) -> bool:
        return all(c.is_nilpotent() for c in self.terms.values())

    def divide_binomial(self, c: KClass, m: int):
        """Exact quotient by (1 - c q^m), m > 0, or ``None``."""
        if not self.terms:
            return self
        lo, hi = self.min_exp(), self.max_exp()
        b = {}
        for j in range(lo, hi - m + 1):
            v = self.coeff(j)
            if j - m in b:
                v = v + c * b[j - m]
            if v:
                b[j] = v
        for j in range(max(hi - m + 1, lo), hi + 1):
            v = self.coeff(j)
            if j - m in b:
                v = v + c * b[j - m]
            if v:
                return None
        return LaurentPoly(self.ring, b)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, QRat):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return render_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({self})"


def binomial_power(ring: KRing, c: KClass, m: int, e: int) -> LaurentPoly:
    """(1 - c q^m)^e as a Laurent polynomial, e >= 0."""
    out = {}
    neg_c = -c
    power = ring.one
    for j in range(e + 1):
        if j:
            power = power * neg_c
        out[m * j] = power * comb(e, j)
    return LaurentPoly(ring, out)


def _norm_factor(c: KClass, m: int):
    """(1 - c q^m) = unit * q^s * (1 - c' q^m') with m' > 0.

    Returns (unit, s, c', m').
    """
    if m > 0:
        return c.ring.one, 0, c, m
    if not c.is_unit():
        raise ScalarError(f"factor coefficient {c} is not a unit")
    return -c, m, c.inverse(), -m


def _fkey(item):
    (c, m), _ = item
    return (m, str(c))


class QRat:
    """num / prod (1 - c q^m)^e; immutable."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: KRing, num: LaurentPoly, den=None):
        self.ring = ring
        self.num = num
        den = {k: e for k, e in (den or {}).items() if e}
        for (c, m), e in den.items():
            if m <= 0 or e < 0:
                raise ValueError("denominator factors need m > 0 and e > 0")
            if not c.is_unit():
                raise ScalarError(f"denominator coefficient {c} is not a unit")
        self.den = dict(sorted(den.items(), key=_fkey))

    # -- constructors ----------------------------------------------------
    @classmethod
    def const(cls, ring, value):
        return cls(ring, LaurentPoly(ring, {0: ring(value)}))

    @classmethod
    def laurent(cls, poly: LaurentPoly):
        return cls(poly.ring, poly)

    @classmethod
    def q(cls, ring, power=1):
        return cls(ring, LaurentPoly(ring, {power: ring.one}))

    @classmethod
    def geometric(cls, ring, c=1, m=1, e=1):
        """1 / (1 - c q^m)^e for any nonzero m."""
        return cls.const(ring, 1).mul_factor(ring(c), m, -e)

    def _coerce(self, other):
        if isinstance(other, QRat):
            return other
        if isinstance(other, LaurentPoly):
            return QRat(self.ring, other)
        try:
            return QRat.const(self.ring, other)
        except TypeError:
            return NotImplemented

    # -- factor bookkeeping ---------------------------------------------
    def mul_factor(self, c: KClass, m: int, e: int) -> "QRat":
        """Multiply by (1 - c q^m)^e for any integers m, e."""
        if e == 0:
            return self
        c = self.ring(c)
        if m == 0:
            f = self.ring.one - c
            return QRat(self.ring, self.num * (f ** e), self.den)
        unit, s, c2, m2 = _norm_factor(c, m)
        num = self.num
        if s:
            num = num * LaurentPoly(self.ring, {s * e: unit ** e})
        den = dict(self.den)
        key = (c2, m2)
        if e < 0:
            den[key] = den.get(key, 0) - e
        else:
            have = den.get(key, 0)
            cancel = min(have, e)
            if cancel:
                den[key] = have - cancel
            if e - cancel:
                num = num * binomial_power(self.ring, c2, m2, e - cancel)
        return QRat(self.ring, num, den)

    def den_poly(self) -> LaurentPoly:
        out = LaurentPoly(self.ring, {0: self.ring.one})
        for (c, m), e in self.den.items():
            out = out * binomial_power(self.ring, c, m, e)
        return out

    def _lift(self, target: dict) -> LaurentPoly:
        num = self.num
        for (c, m), e in target.items():
            extra = e - self.den.get((c, m), 0)
            if extra:
                num = num * binomial_power(self.ring, c, m, extra)
        return num

    @staticmethod
    def _common(a: dict, b: dict) -> dict:
        out = dict(a)
        for k, e in b.items():
            out[k] = max(out.get(k, 0), e)
        return out

    def cancel(self) -> "QRat":
        """Remove denominator factors that divide the numerator exactly."""
        num, den = self.num, dict(self.den)
        for (c, m), e in self.den.items():
            while e:
                quo = num.divide_binomial(c, m)
                if quo is None:
                    break
                num, e = quo, e - 1
            den[(c, m)] = e
        return QRat(self.ring, num, den)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = self._common(self.den, other.den)
        return QRat(self.ring, self._lift(den) + other._lift(den), den)

    __radd__ = __add__

    def __neg__(self):
        return QRat(self.ring, -self.num, self.den)

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
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        return QRat(self.ring, self.num * other.num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QRat):
            if other.num and len(other.num.terms) == 1:
                inv = QRat(self.ring, LaurentPoly(self.ring, {0: self.ring.one}) / other.num)
                for (c, m), e in other.den.items():
                    inv = inv.mul_factor(c, m, e)
                return self * inv
            raise ScalarError("divisor must be a unit monomial times factors")
        if isinstance(other, LaurentPoly):
            return self / QRat(self.ring, other)
        return QRat(self.ring, self.num / self.ring(other), self.den)

    def __pow__(self, k: int):
        if k < 0:
            return QRat.const(self.ring, 1) / (self ** (-k))
        out = QRat.const(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = self._common(self.den, other.den)
        return self._lift(den) == other._lift(den)

    __hash__ = None

    # -- structure -------------------------------------------------------
    def is_laurent(self) -> bool:
        return not self.den

    def as_laurent(self) -> LaurentPoly:
        f = self if self.is_laurent() else self.cancel()
        if f.den:
            raise ValueError(f"{self} is not a Laurent polynomial")
        return f.num

    def is_nilpotent(self) -> bool:
        return self.num.is_nilpotent()

    def subst_q(self, k: int) -> "QRat":
        if k == 0:
            raise ValueError("q -> q^0 is not an Adams substitution")
        out = QRat(self.ring, self.num.subst_q(k))
        for (c, m), e in self.den.items():
            out = out.mul_factor(c, m * k, -e)
        return out

    def adams(self, k: int) -> "QRat":
        """Full Adams action: coefficients and q -> q^k."""
        if k == 0:
            raise ValueError("Adams operation Psi^0 is undefined")
        out = QRat(self.ring, self.num.adams(k))
        for (c, m), e in self.den.items():
            out = out.mul_factor(c.adams(k), m * k, -e)
        return out

    def scalar_map(self, fn) -> "QRat":
        out = QRat(self.ring, self.num.scalar_map(fn))
        for (c, m), e in self.den.items():
            out = out.mul_factor(fn(c), m, -e)
        return out

    def __str__(self):
        return render_qrat(self)

    def __repr__(self):
        return f"QRat({self})"


# -- expansions ----------------------------------------------------------

def _inverse_series(den: LaurentPoly, upto: int) -> list:
    """Coefficients b_0..b_upto of 1/den at q = 0 (den(0) = 1)."""
    ring = den.ring
    b = [ring.one]
    for j in range(1, upto + 1):
        v = ring.zero
        for i, d in den.terms.items():
            if 1 <= i <= j:
                v = v - d * b[j - i]
        b.append(v)
    return b


def _expand_zero(f: QRat, lo: int, hi: int) -> dict:
    """Coefficients of the expansion at q = 0 for exponents in [lo, hi]."""
    if not f.num or hi < lo:
        return {}
    nlo = f.num.min_exp()
    if hi < nlo:
        return {}
    inv = _inverse_series(f.den_poly(), hi - nlo)
    out = {}
    for j in range(max(lo, nlo), hi + 1):
        v = f.ring.zero
        for i, a in f.num.terms.items():
            if i <= j:
                v = v + a * inv[j - i]
        if v:
            out[j] = v
    return out


def leading_exponent(f: QRat, point: str) -> int | None:
    if not f.num:
        return None
    if point == "zero":
        return f.num.min_exp()
    if point == "infinity":
        return f.num.max_exp() - sum(m * e for (_, m), e in f.den.items())
    raise ValueError("point must be 'zero' or 'infinity'")


def coefficients_at(f: QRat, point: str, lo: int, hi: int) -> dict:
    """Expansion coefficients at ``point`` for exponents of q in [lo, hi]."""
    if point == "zero":
        return _expand_zero(f, lo, hi)
    if point == "infinity":
        g = f.subst_q(-1)
        return {-j: c for j, c in _expand_zero(g, -hi, -lo).items()}
    raise ValueError("point must be 'zero' or 'infinity'")


def expand_at(f: QRat, point: str, order: int) -> dict:
    """The first ``order`` coefficients of the Laurent expansion at 0 or infinity.

    At zero exponents ascend from the leading one, at infinity they descend.
    Returns {exponent: KClass}, zero coefficients omitted.
    """
    lead = leading_exponent(f, point)
    if lead is None or order <= 0:
        return {}
    if point == "zero":
        return coefficients_at(f, point, lead, lead + order - 1)
    return coefficients_at(f, point, lead - order + 1, lead)


def subst_q(f: QRat, k: int) -> QRat:
    return f.subst_q(k)


def project_plus(f: QRat) -> LaurentPoly:
    """The Laurent polynomial part along K_-: f - f_+ is regular at 0 and vanishes at infinity."""
    terms = {}
    lo = leading_exponent(f, "zero")
    if lo is not None and lo < 0:
        terms.update(coefficients_at(f, "zero", lo, -1))
    hi = leading_exponent(f, "infinity")
    if hi is not None and hi >= 0:
        terms.update(coefficients_at(f, "infinity", 0, hi))
    return LaurentPoly(f.ring, terms)


def project_minus(f: QRat) -> QRat:
    return f - QRat(f.ring, project_plus(f))


def residue_bracket(f: QRat) -> KClass:
    """-[Res_0 + Res_inf] f dq/q = (q^0 coefficient at infinity) - (q^0 coefficient at 0)."""
    a0 = coefficients_at(f, "zero", 0, 0).get(0, f.ring.zero)
    b0 = coefficients_at(f, "infinity", 0, 0).get(0, f.ring.zero)
    return b0 - a0


def in_k_plus(f: QRat) -> bool:
    return not project_minus(f)


def in_k_minus(f: QRat) -> bool:
    return not project_plus(f)


def limit_at_one(f: QRat, param: str | None = None) -> QRat:
    """Specialize an equivariant parameter to 1 after exact cancellation."""
    param = f.ring.scalars.params[0] if param is None else param
    f = f.cancel()

    def sub(c: KClass) -> KClass:
        try:
            return c.subs(param, 1)
        except ScalarError as exc:
            raise LimitError(f"limit does not exist: {exc}") from None

    num = f.num.scalar_map(sub)
    den = {}
    for (c, m), e in f.den.items():
        c1 = sub(c)
        if not c1.is_unit():
            raise LimitError(f"limit does not exist: factor (1 - ({c1})*q^{m}) degenerates")
        den[(c1, m)] = den.get((c1, m), 0) + e
    return QRat(f.ring, num, den)


# -- rendering -----------------------------------------------------------

def _coeff_str(c: KClass) -> str:
    s = str(c)
    if c.is_scalar() and len(c.coeffs[0].terms) <= 1:
        return s
    return f"({s})"


def render_term(c: KClass, j: int, var: str = "q") -> str:
    mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
    if not mono:
        return _coeff_str(c)
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    return f"{_coeff_str(c)}*{mono}"


def render_laurent(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts = [render_term(p.terms[j], j) for j in sorted(p.terms)]
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


def render_qrat(f: QRat) -> str:
    num = render_laurent(f.num)
    if not f.den:
        return num
    dens = []
    for (c, m), e in f.den.items():
        base = f"(1 - {render_term(c, m)})"
        dens.append(base if e == 1 else f"{base}^{e}")
    return f"({num})/({'*'.join(dens)})"
