"""K^0(CP^{n-1}) tensored with the equivariant ground ring.

Classes are written in the basis x^a, x = 1 - P, where P is the Hopf
bundle; multiplication is reduced modulo x^n.  Each x^a is the structure
sheaf of a codimension-a linear subspace, so chi is the coefficient sum.
"""
from __future__ import annotations

from functools import lru_cache

from .scalars import EqScalar, ScalarError, ScalarRing


class KRing:
    """Target K-ring for CP^{n-1} over a :class:`ScalarRing`."""

    def __init__(self, n: int, scalars: ScalarRing | None = None):
        if n < 1:
            raise ValueError("target rank n must be >= 1")
        self.n = n
        self.scalars = scalars if scalars is not None else ScalarRing()

    def _key(self):
        return (self.n, self.scalars)

    def __eq__(self, other):
        return isinstance(other, KRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"KRing(n={self.n}, scalars={self.scalars!r})"

    def __call__(self, v) -> "KClass":
        if isinstance(v, KClass):
            if v.ring != self:
                raise ScalarError("class from a different K-ring")
            return v
        s = self.scalars(v)
        return KClass(self, (s,) + (self.scalars.zero,) * (self.n - 1))

    def from_coeffs(self, coeffs) -> "KClass":
        coeffs = [self.scalars(c) for c in coeffs]
        # x^n = 0 in K(CP^{n-1})
        coeffs = coeffs[: self.n]
        coeffs += [self.scalars.zero] * (self.n - len(coeffs))
        return KClass(self, tuple(coeffs))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def x(self):
        return self.from_coeffs([0, 1])

    @property
    def P(self):
        return self.from_coeffs([1, -1])

    @property
    def lam(self):
        return self(self.scalars.param())

    @property
    def eps(self):
        return self(self.scalars.eps())

    def line(self, power: int, weight=1) -> "KClass":
        """weight * P^power."""
        return self.P ** power * self(weight)

    @lru_cache(maxsize=None)
    def _adams_x(self, k: int) -> "KClass":
        # Psi^k(x) = 1 - P^k
        return self.one - self.P ** k

    @lru_cache(maxsize=None)
    def _adams_x_powers(self, k: int) -> tuple:
        y = self._adams_x(k)
        out = [self.one]
        for _ in range(1, self.n):
            out.append(out[-1] * y)
        return tuple(out)


class KClass:
    """Immutable element sum c_a x^a of a :class:`KRing`."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: KRing, coeffs: tuple):
        self.ring = ring
        self.coeffs = coeffs
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, KClass):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ScalarError("mismatched K-rings")
            return other
        try:
            return self.ring(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return KClass(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return KClass(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return KClass(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.ring.n
        zero = self.ring.scalars.zero
        a, b = self.coeffs, other.coeffs
        out = [zero] * n
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n - i):
                if b[j]:
                    out[i + j] = out[i + j] + a[i] * b[j]
        return KClass(self.ring, tuple(out))

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

    def is_unit(self) -> bool:
        return self.coeffs[0].is_unit()

    def is_nilpotent(self) -> bool:
        return self.coeffs[0].is_nilpotent()

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])

    def inverse(self) -> "KClass":
        c0 = self.coeffs[0]
        if not c0.is_unit():
            raise ScalarError(f"{self} is not invertible")
        c_inv = c0.inverse()
        if self.is_scalar():
            return self.ring(c_inv)
        # self = c0 (1 - y), y nilpotent
        y = self.ring.one - self * c_inv
        out, term = self.ring.one, self.ring.one
        bound = self.ring.n + self.ring.scalars.nil_degree
        for _ in range(bound):
            term = term * y
            if not term:
                break
            out = out + term
        return out * c_inv

    def adams(self, k: int) -> "KClass":
        """Ring endomorphism P -> P^k, lam -> lam^k, markers fixed."""
        if k == 0:
            raise ValueError("Adams operation Psi^0 is undefined")
        if k == 1:
            return self
        pw = self.ring._adams_x_powers(k)
        out = self.ring.zero
        for a, c in enumerate(self.coeffs):
            if c:
                out = out + pw[a] * c.adams(k)
        return out

    def subs(self, param: str, value) -> "KClass":
        return KClass(self.ring, tuple(c.subs(param, value) for c in self.coeffs))

    def scalar_map(self, fn) -> "KClass":
        return KClass(self.ring, tuple(fn(c) for c in self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, KClass):
            try:
                other = self.ring(other)
            except (TypeError, ScalarError):
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __str__(self):
        return render_kclass(self)

    def __repr__(self):
        return f"KClass({self})"


def render_kclass(a: KClass) -> str:
    """Ascending polynomial in x with parenthesized scalar coefficients."""
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        parts.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts) if parts else "0"


# -- operations ----------------------------------------------------------

def adams(k: int, a: KClass) -> KClass:
    return a.adams(k)


def euler_class(ring: KRing, lines) -> KClass:
    """Product of 1 - L^{-1} over line entries.

    Each entry is a :class:`KClass` line monomial or a pair
    ``(line, weight)`` meaning ``weight * line``.
    """
    out = ring.one
    for entry in lines:
        if isinstance(entry, tuple):
            line, weight = entry
            line = ring(line) * ring(weight)
        else:
            line = ring(entry)
        if not line.is_unit():
            raise ScalarError(f"line entry {line} is not invertible")
        out = out * (ring.one - line.inverse())
    return out


def chi(a: KClass) -> EqScalar:
    """Holomorphic Euler characteristic on CP^{n-1}."""
    out = a.ring.scalars.zero
    for c in a.coeffs:
        out = out + c
    return out


def pair_twisted(a: KClass, b: KClass, twist: KClass | None = None) -> EqScalar:
    """(a, b)_twist = chi(a b twist)."""
    prod = a * b
    if twist is not None:
        prod = prod * twist
    return chi(prod)


def gram_matrix(basis, twist=None):
    return [[pair_twisted(u, v, twist) for v in basis] for u in basis]


def invert_matrix(m):
    """Gauss-Jordan over a local ring; pivots must be units."""
    size = len(m)
    if not size:
        return []
    sr = m[0][0].ring
    a = [list(row) + [sr.one if i == j else sr.zero for j in range(size)]
         for i, row in enumerate(m)]
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col].is_unit()), None)
        if piv is None:
            raise ScalarError("Gram matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[size:] for row in a]


def dual_basis(basis, twist=None):
    """Basis phi^b with (phi_a, phi^b) = delta_ab for the given pairing."""
    basis = list(basis)
    if not basis:
        return []
    ring = basis[0].ring
    if len(basis) != ring.n:
        raise ValueError(f"a basis of K(CP^{ring.n - 1}) has {ring.n} elements")
    inv = invert_matrix(gram_matrix(basis, twist))
    # Gram matrix is symmetric, so phi^b = sum_c (G^-1)_{bc} phi_c
    out = []
    for row in inv:
        v = ring.zero
        for coef, phi in zip(row, basis):
            v = v + phi * coef
        out.append(v)
    return out
