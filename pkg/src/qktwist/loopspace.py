"""The symplectic loop space: residue forms and the action of Box operators."""
from __future__ import annotations

from dataclasses import dataclass, field

from .kring import KClass, chi
from .qcalc import QRat, in_k_minus, in_k_plus, residue_bracket
from .scalars import EqScalar
from .twistkit import TwistData, box


@dataclass(frozen=True)
class LoopPoint:
    """Finitely supported sequence r -> f_r of rational functions in q."""

    components: dict = field(default_factory=dict)

    def __post_init__(self):
        for r in self.components:
            if int(r) < 1:
                raise ValueError("loop components are indexed by r >= 1")
        object.__setattr__(self, "components", dict(sorted(self.components.items())))

    def __getitem__(self, r):
        return self.components[r]

    def support(self):
        return tuple(self.components)

    def in_k_plus(self) -> bool:
        return all(in_k_plus(f) for f in self.components.values())

    def in_k_minus(self) -> bool:
        return all(in_k_minus(f) for f in self.components.values())

    def __eq__(self, other):
        if not isinstance(other, LoopPoint):
            return NotImplemented
        if set(self.components) != set(other.components):
            return False
        return all(self[r] == other[r] for r in self.components)

    __hash__ = None


def omega_r(f: QRat, g: QRat, r: int = 1, twist: KClass | None = None) -> EqScalar:
    """-[Res_0 + Res_inf] (f(1/q), g(q))_twist dq/q."""
    if r < 1:
        raise ValueError("component index r must be positive")
    h = f.subst_q(-1) * g
    if twist is not None:
        h = h * QRat.const(f.ring, twist)
    return chi(residue_bracket(h))


def omega_inf(f: LoopPoint, g: LoopPoint, twists=None) -> EqScalar:
    """sum_r Psi^r(Omega^(r)(f_r, g_r)) / r over the common support.

    ``twists`` maps r to the pairing twist Delta_r (default 1).
    """
    twists = twists or {}
    common = sorted(set(f.components) & set(g.components))
    total = None
    for r in common:
        val = omega_r(f[r], g[r], r, twists.get(r)).adams(r) / r
        total = val if total is None else total + val
    if total is None:
        ring = next(iter(f.components.values()), None) or next(iter(g.components.values()), None)
        return ring.ring.scalars.zero if ring is not None else 0
    return total


def apply_box(f: LoopPoint, data: TwistData) -> LoopPoint:
    """Component-wise multiplication f_r -> Box_r(q) f_r."""
    if not data.eulerian and not data.entries:
        return f
    return LoopPoint({r: box(r, data) * v for r, v in f.components.items()})


def box_transform_check(f: QRat, g: QRat, r: int, data: TwistData) -> bool:
    """Omega^(r) with the twisted pairing equals the untwisted form after Box_r."""
    from .twistkit import pairing_twist
    delta = pairing_twist(r, data)
    B = box(r, data)
    return omega_r(f, g, r, delta) == omega_r(B * f, B * g, r)
