"""Novikov series, the small J-function of CP^{n-1} and Quantum Lefschetz."""
from __future__ import annotations

from dataclasses import dataclass, field

from .kring import KClass, KRing
from .qcalc import LaurentPoly, QRat, limit_at_one


@dataclass(frozen=True)
class NovSeries:
    """Truncated series sum_d f_d Q^d with QRat coefficients.

    Degrees are integer tuples (Picard rank = tuple length).  Terms with
    total degree above ``bound`` are dropped.
    """

    ring: KRing
    bound: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for d, f in self.terms.items():
            d = (d,) if isinstance(d, int) else tuple(d)
            if any(x < 0 for x in d):
                raise ValueError(f"degree {d} is not effective")
            if sum(d) <= self.bound and f:
                clean[d] = f
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def coeff(self, d) -> QRat:
        d = (d,) if isinstance(d, int) else tuple(d)
        return self.terms.get(d, QRat.const(self.ring, 0))

    def degrees(self):
        return tuple(self.terms)

    def map(self, fn) -> "NovSeries":
        return NovSeries(self.ring, self.bound, {d: fn(d, f) for d, f in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for d, f in other.terms.items():
            out[d] = out[d] + f if d in out else f
        return NovSeries(self.ring, min(self.bound, other.bound), out)

    def __sub__(self, other):
        return self + other.map(lambda d, f: -f)

    def __mul__(self, other):
        bound = min(self.bound, other.bound)
        out = {}
        for d1, f1 in self.terms.items():
            for d2, f2 in other.terms.items():
                d = tuple(a + b for a, b in zip(d1, d2))
                if sum(d) > bound:
                    continue
                out[d] = out[d] + f1 * f2 if d in out else f1 * f2
        return NovSeries(self.ring, bound, out)

    def adams(self, k: int, novikov=None) -> "NovSeries":
        """Psi^k on coefficients and Q^d -> Q^{novikov(k, d)}."""
        novikov = novikov or novikov_adams
        out = {}
        for d, f in self.terms.items():
            d2 = novikov(k, d)
            out[d2] = out[d2] + f.adams(k) if d2 in out else f.adams(k)
        bound = self.bound * abs(k) if k > 0 else self.bound
        return NovSeries(self.ring, bound, out)

    def __eq__(self, other):
        if not isinstance(other, NovSeries):
            return NotImplemented
        bound = min(self.bound, other.bound)
        keys = {d for d in (*self.terms, *other.terms) if sum(d) <= bound}
        return all(self.coeff(d) == other.coeff(d) for d in keys)

    __hash__ = None

    def __str__(self):
        parts = []
        for d, f in self.terms.items():
            deg = ",".join(map(str, d))
            parts.append(f"Q^({deg}): {f}")
        return "\n".join(parts) if parts else "0"


def novikov_adams(k: int, d: tuple) -> tuple:
    """Default action on Novikov degrees: Q^d -> Q^{|k| d}.

    Psi^{-1}(Q^d) = Q^d, and Psi^{-k} = Psi^{-1} o Psi^k for k > 0.
    """
    return tuple(abs(k) * x for x in d)


@dataclass(frozen=True)
class LineSummand:
    """weight * prod_a P_a^{-m_a}; on CP^{n-1} a single exponent m."""

    m: tuple
    weight: object = None

    def __post_init__(self):
        m = (self.m,) if isinstance(self.m, int) else tuple(self.m)
        object.__setattr__(self, "m", m)

    def degree(self, d: tuple) -> int:
        """D(d) = (c_1(E), d) = sum_a m_a d_a."""
        if len(d) != len(self.m):
            raise ValueError("degree and line exponents disagree on Picard rank")
        return sum(a * b for a, b in zip(self.m, d))

    def cls(self, ring: KRing) -> KClass:
        if len(self.m) != 1:
            raise ValueError("CP^{n-1} has Picard rank 1")
        L = ring.P ** (-self.m[0])
        return L * ring(self.weight) if self.weight is not None else L


def _pi_factor(f: QRat, E: KClass, D: int) -> QRat:
    # prod_{l <= D}(1 - E^-1 q^l) / prod_{l <= 0}(1 - E^-1 q^l)
    Einv = E.inverse()
    if D >= 0:
        for l in range(1, D + 1):
            f = f.mul_factor(Einv, l, 1)
    else:
        for l in range(D + 1, 1):
            f = f.mul_factor(Einv, l, -1)
    return f


def _dual_factor(f: QRat, E: KClass, D: int) -> QRat:
    # prod_{l < D}(1 - E q^-l) / prod_{l < 0}(1 - E q^-l)
    if D >= 0:
        for l in range(0, D):
            f = f.mul_factor(E, -l, 1)
    else:
        for l in range(D, 0):
            f = f.mul_factor(E, -l, -1)
    return f


def lefschetz_factor(ring: KRing, d: tuple, bundles, mode: str) -> QRat:
    """The Quantum Lefschetz multiplier of the degree-d coefficient."""
    f = QRat.const(ring, 1)
    for b in bundles:
        E = b.cls(ring)
        D = b.degree(d)
        if mode == "pi":
            f = _pi_factor(f, E, D)
        elif mode == "dual":
            f = _dual_factor(f, E, D)
        else:
            raise ValueError("mode must be 'pi' or 'dual'")
    return f


def lefschetz_transform(f: NovSeries, bundles, mode: str) -> NovSeries:
    """f_d Q^d -> f_d Q^d * prod_i (finite q-hypergeometric factor of E_i)."""
    bundles = list(bundles)
    if not bundles:
        return f
    for b in bundles:
        if not all(isinstance(x, int) for x in b.m):
            raise ValueError("line exponents must be integers")
    return f.map(lambda d, c: c * lefschetz_factor(f.ring, d, bundles, mode))


def _one_minus_q(ring: KRing) -> QRat:
    return QRat(ring, LaurentPoly(ring, {0: ring.one, 1: -ring.one}))


def j_small(n: int, D: int, ring: KRing | None = None) -> NovSeries:
    """J = (1 - q) sum_d Q^d / prod_{l=1}^{d} (1 - P q^l)^n."""
    if n < 1 or D < 0:
        raise ValueError("need n >= 1 and D >= 0")
    ring = ring or KRing(n)
    base = _one_minus_q(ring)
    terms = {}
    f = base
    for d in range(D + 1):
        if d:
            f = f.mul_factor(ring.P, d, -n)
        terms[(d,)] = f
    return NovSeries(ring, D, terms)


def cotangent_bundles(n: int, ring: KRing) -> list:
    """n lambda-weighted copies of P^{-1}: the twisting lines of T*CP^{n-1} (and of E* = nP)."""
    lam = ring.scalars.param()
    return [LineSummand(1, lam) for _ in range(n)]


def i_cotangent(n: int, D: int, ring: KRing | None = None) -> NovSeries:
    """I = (1-q) sum_d Q^d prod_{l=0}^{d-1}(1 - lam P^-1 q^-l)^n / prod_{l=1}^{d}(1 - P q^l)^n.

    The d = 0 term (1 - q) is included.
    """
    if n < 1 or D < 0:
        raise ValueError("need n >= 1 and D >= 0")
    ring = ring or KRing(n)
    c = ring.lam * ring.P.inverse()
    terms = {}
    for d in range(D + 1):
        f = _one_minus_q(ring)
        for l in range(d):
            f = f.mul_factor(c, -l, n)
        for l in range(1, d + 1):
            f = f.mul_factor(ring.P, l, -n)
        terms[(d,)] = f
    return NovSeries(ring, D, terms)


def euler_cotangent_dual(ring: KRing) -> KClass:
    """Eu(E*) for E* = nP with weight: (1 - lam P^-1)^n."""
    return (ring.one - ring.lam * ring.P.inverse()) ** ring.n


def noneq_closed_form(n: int, D: int, ring: KRing | None = None) -> NovSeries:
    """(1-q) sum_{d>0} (-P q^{d/2})^{-n(d-1)} Q^d / (1 - P q^d)^n."""
    ring = ring or KRing(n)
    terms = {}
    for d in range(1, D + 1):
        # (-P q^{d/2})^{-n(d-1)}: d(d-1) is even
        mono = LaurentPoly(ring, {-n * d * (d - 1) // 2: (-ring.P) ** (-n * (d - 1))})
        f = _one_minus_q(ring) * QRat(ring, mono)
        terms[(d,)] = f.mul_factor(ring.P, d, -n)
    return NovSeries(ring, D, terms)


def noneq_limit(n: int, D: int, ring: KRing | None = None, param: str | None = None):
    """lim_{lam -> 1} (I - (1-q)) / Eu(E*), and the closed form, per degree.

    Returns the pair (limit, closed_form) of series over the same ring.
    """
    ring = ring or KRing(n)
    I = i_cotangent(n, D, ring)
    eu_inv = euler_cotangent_dual(ring).inverse()
    lim = {}
    for d, f in I.terms.items():
        if d == (0,):
            continue
        lim[d] = limit_at_one(f * QRat.const(ring, eu_inv), param)
    return NovSeries(ring, D, lim), noneq_closed_form(n, D, ring)


def telescoping_sides(E: KClass, D: int, tail: int | None = None):
    """Both sides of the tail-cancellation identity as finite QRats.

    Left: prod_{l=-T}^{0}(1 - E q^l) / prod_{l=-T}^{-D}(1 - E q^l), the
    infinite products cut at a common tail T and cancelled exactly.
    Right: prod_{l<D}(1 - E q^-l) / prod_{l<0}(1 - E q^-l) in finite form.
    """
    from collections import Counter

    ring = E.ring
    T = tail if tail is not None else abs(D) + 2
    # exponent of (1 - E q^l) in top / bottom, before tail cancellation
    counts = Counter(range(-T, 1))
    counts.subtract(range(-T, -D + 1))
    lhs = QRat.const(ring, 1)
    for l, e in sorted(counts.items()):
        if e:
            lhs = lhs.mul_factor(E, l, e)
    rhs = _dual_factor(QRat.const(ring, 1), E, D)
    return lhs, rhs


def telescoping_check(E: KClass, D: int) -> bool:
    lhs, rhs = telescoping_sides(E, D)
    return lhs == rhs
