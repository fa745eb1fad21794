"""Named verification suites.

Each suite returns a list of :class:`CheckResult`; randomized inputs come
from a seeded :class:`random.Random`, so runs are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycloElem, regular_rep, trace_generator
from .hrr import ch, chi_fake
from .kring import KRing, chi
from .lefschetz import (
    LineSummand, cotangent_bundles, i_cotangent, j_small, lefschetz_transform,
    noneq_limit, telescoping_check,
)
from .loopspace import LoopPoint, apply_box, omega_inf, omega_r
from .qcalc import LaurentPoly, QRat, in_k_minus, project_plus
from .scalars import ScalarRing
from .series import TruncatedSeries, series_exp
from .twistkit import (
    TwistData, box, box_reflection_check, box_symmetry_check, dilaton_vector,
    pairing_twist, psi_dilaton_check, sector_box_relation, sector_geometric_identity,
    serre_dual, serre_relation_check,
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.suite}: {self.name}"


# -- random inputs ---------------------------------------------------------

def random_scalar(ring: KRing, rng: random.Random, lam: bool = True):
    lam_s = ring.scalars.param()
    c = rng.randint(-3, 3)
    if lam and rng.random() < 0.5:
        c = c + rng.randint(-2, 2) * lam_s ** rng.choice((-1, 1, 2))
    return ring.scalars(c)


def random_class(ring: KRing, rng: random.Random, lam: bool = True):
    return ring.from_coeffs([random_scalar(ring, rng, lam) for _ in range(ring.n)])


def random_unit_class(ring: KRing, rng: random.Random):
    """A line-like unit: +-lam^a P^j."""
    c = ring.P ** rng.randint(-2, 2) * rng.choice((1, -1))
    a = rng.randint(-1, 1)
    return c * ring(ring.scalars.param() ** a) if a else c


def random_laurent(ring: KRing, rng: random.Random, lo: int = -2, hi: int = 2, lam=True):
    terms = {}
    for j in range(lo, hi + 1):
        if rng.random() < 0.6:
            terms[j] = random_class(ring, rng, lam)
    return LaurentPoly(ring, terms)


def random_k_minus(ring: KRing, rng: random.Random, lam: bool = True) -> QRat:
    """Proper rational function: regular at 0, vanishing at infinity."""
    f = QRat.const(ring, 1)
    deg = 0
    for _ in range(rng.randint(1, 2)):
        m, e = rng.randint(1, 3), rng.randint(1, 2)
        c = random_unit_class(ring, rng) if lam else ring.P ** rng.randint(-2, 2)
        f = f.mul_factor(c, m, -e)
        deg += m * e
    num = random_laurent(ring, rng, 0, deg - 1, lam)
    return QRat(ring, num) * f


def random_k_plus(ring: KRing, rng: random.Random, lam: bool = True) -> QRat:
    return QRat(ring, random_laurent(ring, rng, -3, 3, lam))


def random_finite_data(ring: KRing, rng: random.Random, kmax: int = 6) -> TwistData:
    entries = {}
    for k in range(-kmax, kmax + 1):
        if k and rng.random() < 0.5:
            entries[k] = random_laurent(ring, rng, -1, 1)
    return TwistData.finite(ring, entries)


def random_infinitesimal_data(ring: KRing, rng: random.Random, kmax: int = 4,
                              q_dependent: bool = True, lam: bool = True) -> TwistData:
    eps = ring.eps
    entries = {}
    for k in range(-kmax, kmax + 1):
        if k and rng.random() < 0.5:
            if q_dependent:
                E = random_laurent(ring, rng, -1, 1, lam)
            else:
                E = LaurentPoly(ring, {0: random_class(ring, rng, lam)})
            entries[k] = E * eps
    return TwistData.infinitesimal(ring, entries)


def _rng(seed):
    return random.Random(seed)


# -- suites ----------------------------------------------------------------

def suite_lemma(seed=0):
    out = []
    for r in range(1, 9):
        reg = regular_rep(r)
        for k in range(-12, 13):
            if k == 0:
                continue
            expected = r if k % r == 0 else 0
            ok = trace_generator(reg.adams(k)) == CycloElem(r, [expected])
            out.append(CheckResult("lemma", f"r={r} k={k}", ok))
    return out


def suite_box(seed=0):
    rng = _rng(seed)
    out = []
    ring = KRing(3)
    for trial in range(3):
        data = random_finite_data(ring, rng)
        for r in range(1, 4):
            for k in range(-6, 7):
                if k:
                    ok = box_symmetry_check(r, k, data)
                    out.append(CheckResult("box", f"symmetry trial={trial} r={r} k={k}", ok))
    iring = KRing(2, ScalarRing(eps={"eps": 2}))
    for trial in range(3):
        data = random_infinitesimal_data(iring, rng)
        for r in range(1, 4):
            ok = box_reflection_check(r, data)
            out.append(CheckResult("box", f"reflection trial={trial} r={r}", ok))
    return out


def suite_serre(seed=0):
    rng = _rng(seed + 1)
    out = []
    ring = KRing(3)
    for trial in range(3):
        data = random_finite_data(ring, rng)
        for r in range(1, 4):
            for k in range(-6, 7):
                if k:
                    ok = serre_relation_check(r, k, data)
                    out.append(CheckResult("serre", f"relation trial={trial} r={r} k={k}", ok))
        out.append(CheckResult("serre", f"involution trial={trial}",
                               serre_dual(serre_dual(data)) == data))
    return out


def suite_dilaton(seed=0):
    rng = _rng(seed + 2)
    out = []
    ring = KRing(2, ScalarRing(eps={"eps": 3}))
    one_minus_q = QRat(ring, LaurentPoly(ring, {0: ring.one, 1: -ring.one}))
    for trial in range(3):
        flat = random_infinitesimal_data(ring, rng, q_dependent=False)
        data = random_infinitesimal_data(ring, rng)
        for r in range(1, 5):
            out.append(CheckResult("dilaton", f"q-constant trial={trial} r={r}",
                                   dilaton_vector(r, flat) == one_minus_q))
            out.append(CheckResult("dilaton", f"psi trial={trial} r={r}",
                                   psi_dilaton_check(r, data)))
    return out


def suite_lefschetz(seed=0):
    out = []
    for n in (2, 3, 4):
        J = j_small(n, 6)
        plus = LaurentPoly(J.ring)
        ok = True
        for d, f in J.terms.items():
            plus = plus + project_plus(f)
            if d != (0,) and not in_k_minus(f):
                ok = False
        target = LaurentPoly(J.ring, {0: J.ring.one, 1: -J.ring.one})
        out.append(CheckResult("lefschetz", f"J polarization n={n} D=6", ok and plus == target))
    for n in range(1, 5):
        for D in range(5):
            ring = KRing(n)
            lhs = lefschetz_transform(j_small(n, D, ring), cotangent_bundles(n, ring), "dual")
            out.append(CheckResult("lefschetz", f"cotangent n={n} D={D}",
                                   lhs == i_cotangent(n, D, ring)))
    ring = KRing(3)
    lam = ring.scalars.param()
    for label, E in (("P", ring.P), ("lam*P^-1", ring.lam * ring.P.inverse()),
                     ("P^2", ring.P ** 2)):
        for D in range(-3, 4):
            out.append(CheckResult("lefschetz", f"telescoping E={label} D={D}",
                                   telescoping_check(E, D)))
    J = j_small(3, 4, ring)
    a, b = [LineSummand(2)], [LineSummand(1, lam)]
    both = lefschetz_transform(J, a + b, "pi")
    out.append(CheckResult("lefschetz", "multiplicative over bundle lists",
                           both == lefschetz_transform(lefschetz_transform(J, a, "pi"), b, "pi")))
    for m in (1, 2, -1):
        E = LineSummand(m, lam)
        dual = LineSummand(-m, 1 / lam)
        there = lefschetz_transform(J, [E], "pi")
        back = lefschetz_transform(there, [dual], "dual")
        out.append(CheckResult("lefschetz", f"pi and dual transforms invert m={m}", back == J))
    return out


def suite_limit(seed=0):
    out = []
    for n in range(1, 5):
        lim, closed = noneq_limit(n, 4)
        for d in range(1, 5):
            out.append(CheckResult("limit", f"n={n} d={d}", lim.coeff(d) == closed.coeff(d)))
    return out


def suite_hrr(seed=0):
    rng = _rng(seed + 3)
    out = []
    for n in range(1, 7):
        ring = KRing(n)
        for j in range(-n, n + 1):
            a = ring.P ** j
            out.append(CheckResult("hrr", f"n={n} P^{j}", chi_fake(a) == chi(a)))
        for a in range(n):
            out.append(CheckResult("hrr", f"n={n} x^{a}", chi_fake(ring.x ** a) == 1))
        for _ in range(3):
            a, b = random_class(ring, rng, False), random_class(ring, rng, False)
            ok = ch(a * b) == ch(a) * ch(b) and ch(a + b) == ch(a) + ch(b)
            out.append(CheckResult("hrr", f"n={n} ch ring map", ok))
        for k in (-2, -1, 2, 3):
            for j in (-1, 1, 2):
                out.append(CheckResult("hrr", f"n={n} ch Psi^{k} P^{j}",
                                       ch((ring.P ** j).adams(k)) == ch(ring.P ** (k * j))))
    return out


def suite_loopspace(seed=0, pairs=200):
    rng = _rng(seed + 4)
    out = []
    ring = KRing(2, ScalarRing(eps={"eps": 2}))
    zero = ring.scalars.zero
    ok_plus = ok_minus = True
    for _ in range(pairs):
        delta = random_class(ring, rng)
        r = rng.randint(1, 3)
        if omega_r(random_k_plus(ring, rng), random_k_plus(ring, rng), r, delta) != zero:
            ok_plus = False
        if omega_r(random_k_minus(ring, rng), random_k_minus(ring, rng), r, delta) != zero:
            ok_minus = False
    out.append(CheckResult("loopspace", f"K+ isotropy ({pairs} pairs)", ok_plus))
    out.append(CheckResult("loopspace", f"K- isotropy ({pairs} pairs)", ok_minus))
    # lambda-free inputs here: the identity only involves q and the markers
    for trial in range(6):
        data = random_infinitesimal_data(ring, rng, kmax=3, lam=False)
        for r in (1, 2):
            f = random_k_minus(ring, rng, False) + random_k_plus(ring, rng, False)
            g = random_k_minus(ring, rng, False) + random_k_plus(ring, rng, False)
            B = box(r, data)
            ok = omega_r(f, g, r, pairing_twist(r, data)) == omega_r(B * f, B * g, r)
            out.append(CheckResult("loopspace", f"Box transform trial={trial} r={r}", ok))
        h = random_k_minus(ring, rng, False)
        moved = apply_box(LoopPoint({1: h, 2: h}), data)
        out.append(CheckResult("loopspace", f"Box preserves K- trial={trial}", moved.in_k_minus()))
    for trial in range(10):
        f = random_k_minus(ring, rng) + random_k_plus(ring, rng)
        g = random_k_minus(ring, rng) + random_k_plus(ring, rng)
        tau = ring(random_scalar(ring, rng) * ring.scalars.eps())
        delta = series_exp(tau)
        hodge = omega_r(f, g, 1, delta) == delta.coeffs[0] * omega_r(f, g, 1)
        anti = omega_r(f, g, 1) == -omega_r(g, f, 1)
        out.append(CheckResult("loopspace", f"Hodge scalar twist trial={trial}", hodge))
        out.append(CheckResult("loopspace", f"antisymmetry trial={trial}", anti))
    f = LoopPoint({2: random_k_plus(ring, rng)})
    g = LoopPoint({2: random_k_minus(ring, rng)})
    expected = omega_r(f[2], g[2], 2).adams(2) / 2
    out.append(CheckResult("loopspace", "omega_inf assembles components",
                           omega_inf(f, g) == expected))
    return out


def suite_sector(seed=0):
    rng = _rng(seed + 5)
    out = []
    for m in range(1, 5):
        for r in range(1, 4):
            for kp in range(-3, 4):
                if kp:
                    out.append(CheckResult("sector", f"geometric m={m} r={r} k'={kp}",
                                           sector_geometric_identity(r, m, kp, 8)))
    ring = KRing(2)
    for m in range(1, 5):
        for r in range(1, 4):
            entries = {}
            for kp in range(-3, 4):
                if kp:
                    entries[r * kp] = random_class(ring, rng)
            # indices not divisible by r must drop out of every sector
            if r > 1:
                entries[r + 1] = random_class(ring, rng)
            data = TwistData.finite(ring, entries)
            out.append(CheckResult("sector", f"box relation m={m} r={r}",
                                   sector_box_relation(r, m, data, 8)))
    return out


def euler_product_check(M: int, S: int) -> bool:
    """prod_{l<=S}(1 - u t^l) = exp(-sum_m u^m / m(1 - t^m)) mod (u^(M+1), t^(S+1))."""
    names, orders = ("u", "t"), (M, S)
    u = TruncatedSeries.var(names, orders, "u")
    one = TruncatedSeries(names, orders, {(0, 0): 1})
    lhs = one
    for l in range(S + 1):
        lhs = lhs * (one - u * TruncatedSeries(names, orders, {(0, l): 1}))
    expo = TruncatedSeries(names, orders)
    for m in range(1, M + 1):
        geo = TruncatedSeries(names, orders, {(0, m * j): 1 for j in range(S // m + 1)})
        expo = expo - u ** m * geo * Fraction(1, m)
    return lhs == series_exp(expo)


def suite_qseries(seed=0):
    return [CheckResult("qseries", f"Euler product M={M} S={S}", euler_product_check(M, S))
            for M in range(1, 9) for S in range(0, 9)]


SUITES = {
    "lemma": suite_lemma,
    "box": suite_box,
    "serre": suite_serre,
    "dilaton": suite_dilaton,
    "lefschetz": suite_lefschetz,
    "limit": suite_limit,
    "hrr": suite_hrr,
    "loopspace": suite_loopspace,
    "sector": suite_sector,
    "qseries": suite_qseries,
}


def run_suites(names, seed=0):
    """Run the named suites (``all`` expands to every suite), in order."""
    names = list(SUITES) if "all" in names else list(names)
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        results.extend(SUITES[name](seed=seed))
    return results
