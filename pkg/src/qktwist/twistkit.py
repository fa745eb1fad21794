"""Twisting data and the operator identities attached to it.

Exponentials are only ever taken of nilpotent quantities (markers eps) or
in collapsed Eulerian closed forms, so everything here is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .cyclotomic import CycloElem, primitive_roots
from .kring import KClass, KRing
from .qcalc import LaurentPoly, QRat
from .series import series_exp

MODES = ("finite", "infinitesimal", "eulerian_pi", "eulerian_dual")


class TwistError(ValueError):
    """Twisting data used in a mode where the requested object is undefined."""


def _as_laurent(ring: KRing, value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, QRat):
        return value.as_laurent()
    return LaurentPoly(ring, {0: ring(value)})


def _eps_multiple(p: LaurentPoly) -> bool:
    return all(all(c.is_nilpotent() for c in k.coeffs) for k in p.terms.values())


@dataclass(frozen=True)
class TwistData:
    """Finitely supported k -> E^(k), or an Eulerian pattern.

    In the Eulerian modes ``lines`` lists line summands L and the pattern is
    E^(k) = sign * sum(L) for k on ``side`` (-1: k < 0, +1: k > 0) and zero
    otherwise; sign is +1 for ``eulerian_pi`` and -1 for ``eulerian_dual``.
    """

    ring: KRing
    mode: str = "finite"
    entries: dict = field(default_factory=dict)
    lines: tuple = ()
    side: int = -1

    def __post_init__(self):
        if self.mode not in MODES:
            raise TwistError(f"unknown twist mode {self.mode!r}")
        clean = {}
        for k, e in self.entries.items():
            if int(k) == 0:
                raise TwistError("twisting index k = 0 is not allowed")
            e = _as_laurent(self.ring, e)
            if e:
                clean[int(k)] = e
        object.__setattr__(self, "entries", dict(sorted(clean.items())))
        object.__setattr__(self, "lines", tuple(self.ring(L) for L in self.lines))
        if self.mode == "infinitesimal":
            for k, e in clean.items():
                if not _eps_multiple(e):
                    raise TwistError(f"E^({k}) = {e} is not a multiple of the markers")
        if self.eulerian and clean:
            raise TwistError("Eulerian data is given by lines, not entries")

    # -- constructors ----------------------------------------------------
    @classmethod
    def finite(cls, ring, entries):
        return cls(ring, "finite", dict(entries))

    @classmethod
    def infinitesimal(cls, ring, entries):
        return cls(ring, "infinitesimal", dict(entries))

    @classmethod
    def eulerian_pi(cls, ring, lines):
        return cls(ring, "eulerian_pi", lines=tuple(lines))

    @classmethod
    def eulerian_dual(cls, ring, lines):
        return cls(ring, "eulerian_dual", lines=tuple(lines))

    @property
    def eulerian(self) -> bool:
        return self.mode.startswith("eulerian")

    @property
    def sign(self) -> int:
        return -1 if self.mode == "eulerian_dual" else 1

    def entry(self, k: int) -> LaurentPoly:
        if self.eulerian:
            if (k < 0) == (self.side < 0):
                total = self.ring.zero
                for L in self.lines:
                    total = total + L
                return LaurentPoly(self.ring, {0: total * self.sign})
            return LaurentPoly(self.ring)
        return self.entries.get(k, LaurentPoly(self.ring))

    def support(self):
        if self.eulerian:
            raise TwistError("Eulerian data has infinite support")
        return tuple(self.entries)

    def __eq__(self, other):
        if not isinstance(other, TwistData):
            return NotImplemented
        return (self.ring, self.mode, self.entries, self.lines, self.side) == (
            other.ring, other.mode, other.entries, other.lines, other.side)

    def __hash__(self):
        return hash((self.ring, self.mode, tuple(self.entries), self.lines, self.side))


def _rescaled(r: int, data: TwistData):
    """Pairs (k, E^(rk)) over the finite support."""
    if r < 1:
        raise ValueError("component index r must be positive")
    return [(K // r, E) for K, E in data.entries.items() if K % r == 0]


# -- Box operators -------------------------------------------------------

def box_term(k: int, E: LaurentPoly) -> QRat:
    """Psi^k(E) / (k (1 - q^k))."""
    ring = E.ring
    return (QRat(ring, E.adams(k)) / k).mul_factor(ring.one, k, -1)


def box_log(r: int, data: TwistData, at_one: bool = False) -> QRat:
    """X_r(q) = sum_k Psi^k(E^(rk)) / k(1 - q^k)."""
    if data.eulerian:
        raise TwistError("the Box exponent diverges for Eulerian data; use the collapsed forms")
    out = QRat.const(data.ring, 0)
    for k, E in _rescaled(r, data):
        if at_one:
            E = LaurentPoly(data.ring, {0: E.at_one()})
        out = out + box_term(k, E)
    return out


def box(r: int, data: TwistData, at_one: bool = True) -> QRat:
    """Box_r = exp(X_r), available when the exponent is nilpotent."""
    X = box_log(r, data, at_one=at_one)
    if not X.is_nilpotent():
        raise TwistError("Box_r is not materializable: exponent is not nilpotent")
    return series_exp(X)


def box_symmetry_check(r: int, k: int, data: TwistData) -> bool:
    """A/(1-q^k) + A/(1-q^-k) = A with A = Psi^k(E^(rk))/k."""
    if k == 0:
        raise ValueError("k must be nonzero")
    ring = data.ring
    E = data.entry(r * k)
    A = QRat(ring, E.adams(k)) / k
    lhs = A.mul_factor(ring.one, k, -1) + A.mul_factor(ring.one, -k, -1)
    return lhs == A


def box_reflection_check(r: int, data: TwistData) -> bool:
    """X_r(q) + X_r(1/q) equals the q-free sum of Psi^k(E^(rk)(1))/k."""
    X = box_log(r, data, at_one=True)
    const = data.ring.zero
    for k, E in _rescaled(r, data):
        const = const + E.at_one().adams(k) / k
    return X + X.subst_q(-1) == QRat.const(data.ring, const)


# -- pairing twists ------------------------------------------------------

def twist_exponent(r: int, data: TwistData) -> KClass:
    """sum_k Psi^k(E^(rk)(1)) / k over the finite support."""
    out = data.ring.zero
    for k, E in _rescaled(r, data):
        out = out + E.at_one().adams(k) / k
    return out


def pairing_twist(r: int, data: TwistData) -> KClass:
    """Delta_r = exp(sum_k Psi^k(E^(rk))/k), collapsed when Eulerian."""
    ring = data.ring
    if data.eulerian:
        out = ring.one
        for L in data.lines:
            if data.side < 0:
                # exp(sum_{k<0} L^k / k) = 1 - L^-1
                base = ring.one - L.inverse()
                expo = data.sign
            else:
                # exp(sum_{k>0} L^k / k) = (1 - L)^-1
                base = ring.one - L
                expo = -data.sign
            if expo < 0 and not base.is_unit():
                raise TwistError(
                    f"Euler factor {base} is not invertible: equivariant parameter required")
            out = out * base ** expo
        return out
    expo = twist_exponent(r, data)
    if not expo.is_nilpotent():
        raise TwistError("pairing twist needs infinitesimal data or an Eulerian pattern")
    return series_exp(expo)


# -- quantum Serre -------------------------------------------------------

def serre_dual(data: TwistData) -> TwistData:
    """k -> Psi^{-1}(E^(-k))."""
    if data.eulerian:
        return TwistData(data.ring, data.mode,
                         lines=tuple(L.inverse() for L in data.lines),
                         side=-data.side)
    entries = {-k: E.adams(-1) for k, E in data.entries.items()}
    return TwistData(data.ring, data.mode, entries)


def serre_relation_check(r: int, k: int, data: TwistData) -> bool:
    """term_k(data) - term_{-k}(serre_dual(data)) = Psi^k(E^(rk))/k."""
    if k == 0:
        raise ValueError("k must be nonzero")
    if data.eulerian:
        raise TwistError("Serre relation is checked on finite data")
    ring = data.ring
    dual = serre_dual(data)
    lhs = box_term(k, data.entry(r * k)) - box_term(-k, dual.entry(-r * k))
    return lhs == QRat(ring, data.entry(r * k).adams(k)) / k


def serre_multiplier(r: int, data: TwistData) -> KClass:
    """(Box_E)_r / (Box_E*)_r = exp(sum_k Psi^k(E^(rk))/k)."""
    return series_exp(twist_exponent(r, data))


# -- kappa classes and the dilaton shift ---------------------------------

def divide_one_minus_qk(p: LaurentPoly, k: int) -> LaurentPoly:
    """Exact quotient p / (1 - q^k); raises if it does not divide."""
    ring = p.ring
    quo = p.divide_binomial(ring.one, abs(k))
    if quo is None:
        raise ArithmeticError(f"{p} is not divisible by 1 - q^{k}")
    if k < 0:
        # 1 - q^k = -q^k (1 - q^-k)
        quo = quo * LaurentPoly(ring, {-k: -ring.one})
    return quo


def kappa_ratio(k: int, E) -> LaurentPoly:
    """Psi^k(E(q) - E(1)) / (1 - q^k), a Laurent polynomial."""
    if k == 0:
        raise ValueError("k must be nonzero")
    E = _as_laurent(E.ring, E)
    shifted = (E - E.at_one()).adams(k)
    return divide_one_minus_qk(shifted, k)


def dilaton_exponent(r: int, data: TwistData) -> LaurentPoly:
    out = LaurentPoly(data.ring)
    for k, E in _rescaled(r, data):
        out = out + kappa_ratio(k, E) / k
    return out


def dilaton_vector(r: int, data: TwistData) -> QRat:
    """v_r = (1 - q) exp(sum_k Psi^k(E^(kr)(q) - E^(kr)(1)) / k(1 - q^k))."""
    if data.eulerian:
        raise TwistError("dilaton vector needs finitely supported data")
    ring = data.ring
    expo = dilaton_exponent(r, data)
    if not expo.is_nilpotent():
        raise TwistError("q-dependent twisting must be infinitesimal")
    one_minus_q = LaurentPoly(ring, {0: ring.one, 1: -ring.one})
    return QRat(ring, one_minus_q * series_exp(expo))


def psi_dilaton_check(r: int, data: TwistData) -> bool:
    """(1 - q^r) exp(sum_k Psi^{rk}[(E^(rk)(q) - E^(rk)(1))/k(1-q)]) = Psi^r(v_r)."""
    ring = data.ring
    expo = LaurentPoly(ring)
    for k, E in _rescaled(r, data):
        g = divide_one_minus_qk(E - E.at_one(), 1)
        expo = expo + g.adams(r * k) / k
    lhs = LaurentPoly(ring, {0: ring.one, r: -ring.one}) * series_exp(expo)
    rhs = dilaton_vector(r, data).adams(r)
    return QRat(ring, lhs) == rhs


# -- sector identities ---------------------------------------------------

def _zeta_geometric(m: int, c: CycloElem, M: int, order: int) -> dict:
    """1/(1 - c w^M) for M != 0, expanded in powers of w^sign(M).

    Exponents of w with |exponent| <= |M| * order, computed by the
    inverse-series recurrence of the denominator.
    """
    step = abs(M)
    b = {0: CycloElem(m, [1])}
    for j in range(1, step * order + 1):
        # denominator 1 - c t^step in t = w^sign(M)
        b[j] = c * b[j - step] if j >= step else CycloElem(m, [])
    sgn = 1 if M > 0 else -1
    return {sgn * j: v for j, v in b.items() if v}


def sector_geometric_identity(r: int, m: int, kp: int, order: int = 8) -> bool:
    """1 + sum_{a'<m, l>=1} zeta^{k'a'} q^{rk'(l - a'/m)} = sum_N p^{rk'N} zeta^{-k'N}
    = 1/(1 - (p^r/zeta)^{k'}) for every primitive m-th root zeta, p^m = q.

    Compared as truncated series (index N <= order) in p.
    """
    if kp == 0:
        raise ValueError("k' must be nonzero")
    for t in primitive_roots(m):
        zeta = lambda j: CycloElem.zeta(m, t * j)  # noqa: E731
        lhs = {0: CycloElem(m, [1])}
        for a in range(m):
            for l in range(1, order // m + 2):
                N = l * m - a
                if N > order:
                    continue
                e = r * kp * N
                lhs[e] = lhs.get(e, CycloElem(m, [])) + zeta(kp * a)
        mid = {}
        for N in range(order + 1):
            e = r * kp * N
            mid[e] = mid.get(e, CycloElem(m, [])) + zeta(-kp * N)
        closed = _zeta_geometric(m, zeta(-kp), r * kp, order)
        clean = lambda d: {e: v for e, v in d.items() if v}  # noqa: E731
        if not (clean(lhs) == clean(mid) == clean(closed)):
            return False
    return True


def _tensor(c: KClass, w: CycloElem, e: int, out: dict):
    for i, a in enumerate(w.coeffs):
        if a:
            key = (e, i)
            v = c * a
            out[key] = out[key] + v if key in out else v


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def sector_exponent_series(r: int, m: int, s: int, K: int, E: KClass, order: int) -> dict:
    """Character-sum exponent of the sector h^s of Z_M, M = m r, for index K.

    sum_{a=1}^{M} w^{Ka} sum_{l>=1} Psi^K(E)/K * q^{K(l - {as/M})}, with
    q = p^m and w = exp(2 pi i / M); truncated to l m - a'' <= order.
    Keys are (exponent of p, basis index of Q(zeta_M)).
    """
    M = m * r
    coeff = E.adams(K) / K
    out = {}
    for a in range(1, M + 1):
        frac = (a * s) % M            # {as/M} = frac / M, a multiple of 1/m
        a2 = frac // r
        w = CycloElem.zeta(M, K * a)
        for l in range(1, order // m + 2):
            N = l * m - a2
            if 1 <= N <= order:
                _tensor(coeff, w, K * N, out)
    return _clean(out)


def sector_box_relation(r: int, m: int, data: TwistData, order: int = 8) -> bool:
    """Sector Box exponent equals Psi^r of X_r evaluated at p / zeta.

    For every sector s of level r in Z_{mr} and every index K in the support,
    the character sum over the sector vanishes unless r | K and otherwise
    equals Psi^r(Psi^{k'}(E^(rk'))/k') (G - 1), G = 1/(1 - (p^r/zeta)^{k'})
    expanded on the side where the series converges.
    """
    if data.eulerian:
        raise TwistError("sector relation is checked on finite data")
    M = m * r
    for s in range(1, M + 1):
        if gcd(s, M) != r:
            continue
        sp = s // r
        tp = pow(sp, -1, m) if m > 1 else 0
        for K, E in data.entries.items():
            E1 = E.at_one()
            lhs = sector_exponent_series(r, m, s, K, E1, order)
            rhs = {}
            if K % r == 0:
                kp = K // r
                coeff = (E1.adams(kp) / kp).adams(r)
                # zeta = zeta_M^{r t'}; G - 1 = sum_{N>=1} zeta^{-k'N} p^{rk'N}
                c = CycloElem.zeta(M, -r * tp * kp)
                G = _zeta_geometric(M, c, r * kp, order)
                for e, w in G.items():
                    if e != 0:
                        _tensor(coeff, w, e, rhs)
            if _clean(lhs) != _clean(rhs):
                return False
    return True


def box_log_at(r: int, data: TwistData, zeta_power: int, m: int, order: int) -> dict:
    """Psi^r(X_r(p/zeta)) as a truncated series in p over K (x) Q(zeta_m)."""
    out = {}
    for k, E in _rescaled(r, data):
        coeff = (E.at_one().adams(k) / k).adams(r)
        c = CycloElem.zeta(m, -zeta_power * k)
        for e, w in _zeta_geometric(m, c, r * k, order).items():
            _tensor(coeff, w, e, out)
    return _clean(out)


__all__ = [
    "MODES", "TwistData", "TwistError", "box", "box_log", "box_term",
    "box_symmetry_check", "box_reflection_check", "pairing_twist",
    "twist_exponent", "serre_dual", "serre_relation_check", "serre_multiplier",
    "kappa_ratio", "dilaton_vector", "dilaton_exponent", "psi_dilaton_check",
    "sector_geometric_identity", "sector_box_relation", "sector_exponent_series",
    "box_log_at", "divide_one_minus_qk",
]
