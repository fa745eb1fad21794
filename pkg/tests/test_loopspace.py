import random
from fractions import Fraction

import pytest

from qktwist import KRing, QRat, ScalarRing, TwistData
from qktwist.checks import random_infinitesimal_data, random_k_minus, random_k_plus
from qktwist.expr import parse_qrat
from qktwist.loopspace import LoopPoint, apply_box, box_transform_check, omega_inf, omega_r


def test_omega_r_examples():
    pt = KRing(1)
    assert omega_r(QRat.const(pt, 1), parse_qrat("1/(1-q)", pt)) == -1
    assert omega_r(parse_qrat("q", pt), parse_qrat("q^2", pt)) == 0
    r2 = KRing(2)
    assert omega_r(QRat.const(r2, 1), parse_qrat("1/(1-q)", r2), 1, r2.P ** -1) == -2


def test_omega_inf_examples():
    pt = KRing(1)
    lam = pt.scalars.param()
    f = LoopPoint({2: QRat.const(pt, pt(lam))})
    g = LoopPoint({2: parse_qrat("1/(1-q)", pt)})
    assert omega_inf(f, g) == -lam ** 2 / 2
    assert omega_inf(LoopPoint({1: QRat.const(pt, 1)}), LoopPoint({2: QRat.const(pt, 1)})) == 0
    one = LoopPoint({1: QRat.const(pt, 1)})
    assert omega_inf(one, LoopPoint({1: g[2]})) == omega_r(one[1], g[2])


def test_omega_inf_with_twists():
    r = KRing(2)
    f = LoopPoint({1: QRat.const(r, 1), 3: QRat.const(r, 1)})
    g = LoopPoint({1: parse_qrat("1/(1-q)", r), 3: parse_qrat("1/(1-q)", r)})
    twists = {1: r.P ** -1, 3: r.P ** -1}
    # each component gives -chi(P^-1) = -2
    assert omega_inf(f, g, twists) == Fraction(-8, 3)


def test_apply_box_example():
    r = KRing(2, ScalarRing(eps={"eps": 1}))
    d = TwistData.infinitesimal(r, {-1: r.eps * r.P})
    out = apply_box(LoopPoint({1: QRat.const(r, 1)}), d)
    assert out[1] == parse_qrat("1 + eps*P^-1*q/(1-q)", r)
    same = LoopPoint({1: parse_qrat("q/(1-P*q)", r)})
    assert apply_box(same, TwistData.infinitesimal(r, {})) == same


def test_apply_box_keeps_k_minus():
    r = KRing(2, ScalarRing(eps={"eps": 1}))
    d = TwistData.infinitesimal(r, {-1: r.eps * r.P})
    f = LoopPoint({1: parse_qrat("1/(1-P*q)", r)})
    assert f.in_k_minus()
    assert apply_box(f, d).in_k_minus()


def test_loop_point_support_is_positive():
    with pytest.raises(ValueError):
        LoopPoint({0: QRat.const(KRing(1), 1)})


def test_isotropy_random():
    r = KRing(2)
    rng = random.Random(5)
    for _ in range(15):
        delta = r.P ** rng.randint(-2, 2)
        assert omega_r(random_k_plus(r, rng), random_k_plus(r, rng), 1, delta) == 0
        assert omega_r(random_k_minus(r, rng), random_k_minus(r, rng), 2, delta) == 0


def test_box_transform_random():
    r = KRing(2, ScalarRing(eps={"eps": 2}))
    rng = random.Random(9)
    for _ in range(2):
        d = random_infinitesimal_data(r, rng, kmax=2, lam=False)
        f = random_k_minus(r, rng, False) + random_k_plus(r, rng, False)
        g = random_k_plus(r, rng, False)
        assert box_transform_check(f, g, 1, d)


def test_antisymmetry():
    r = KRing(3)
    f = parse_qrat("(1 + lam*q)/((1-P*q)*(1-q^2))", r)
    g = parse_qrat("q^-1 + 2*P*q", r)
    assert omega_r(f, g) == -omega_r(g, f)
