import random

import pytest
import sympy as sp

from qktwist import KRing, LaurentPoly, QRat, ScalarRing, TwistData, TwistError
from qktwist.expr import parse_qrat
from qktwist.twistkit import (
    box, box_log, box_reflection_check, box_symmetry_check, dilaton_vector,
    kappa_ratio, pairing_twist, psi_dilaton_check, sector_box_relation,
    sector_geometric_identity, serre_dual, serre_relation_check,
)
from qktwist.checks import random_finite_data, random_infinitesimal_data

from oracles import qrat_expr


def ring(n=2, eps=1):
    return KRing(n, ScalarRing(eps={"eps": eps}))


def lp(text, r):
    return parse_qrat(text, r).as_laurent()


def test_box_log_examples():
    r = ring()
    e = r.eps
    d = TwistData.infinitesimal(r, {-1: e * r.P})
    assert box_log(1, d) == parse_qrat("eps*P^-1*q/(1-q)", r)
    d1 = TwistData.infinitesimal(r, {1: e})
    assert box_log(2, d1) == QRat.const(r, 0)
    assert box_log(1, d1) == parse_qrat("eps/(1-q)", r)


def test_box_exponentiates():
    r = ring(eps=2)
    d = TwistData.infinitesimal(r, {1: r.eps})
    X = box_log(1, d)
    assert box(1, d) == QRat.const(r, 1) + X + X * X / 2


def test_box_rejects_non_nilpotent():
    r = ring()
    with pytest.raises(TwistError):
        box(1, TwistData.finite(r, {1: r.P}))
    with pytest.raises(TwistError):
        box_log(1, TwistData.eulerian_pi(r, [r.P]))


def test_box_symmetry_examples():
    r = ring()
    assert box_symmetry_check(1, 1, TwistData.finite(r, {1: r.P}))
    assert box_symmetry_check(1, -3, TwistData.finite(r, {-3: r.lam}))
    assert box_symmetry_check(1, 2, TwistData.finite(r, {}))


def test_box_symmetry_identity_sympy():
    # 1/(1 - q^k) + 1/(1 - q^-k) = 1
    q = sp.Symbol("q")
    for k in range(1, 7):
        assert sp.simplify(1 / (1 - q ** k) + 1 / (1 - q ** -k)) == 1


def test_pairing_twist_examples():
    r = ring()
    assert pairing_twist(1, TwistData.eulerian_pi(r, [r.P])) == r.P - 1
    lam = r.lam
    assert pairing_twist(1, TwistData.eulerian_dual(r, [lam.inverse()])) == (1 - lam).inverse()
    assert pairing_twist(1, TwistData.infinitesimal(r, {1: r.eps})) == 1 + r.eps


def test_pairing_twist_rejects_degenerate_euler_factor():
    r = ring()
    with pytest.raises(TwistError):
        pairing_twist(1, TwistData.eulerian_dual(r, [r.P.inverse()]))


def test_pairing_twist_first_order():
    r = ring(n=3, eps=1)
    rng = random.Random(7)
    for _ in range(5):
        d = random_infinitesimal_data(r, rng, q_dependent=False)
        for rr in (1, 2):
            expected = r.one
            for K, E in d.entries.items():
                if K % rr == 0:
                    expected = expected + E.at_one().adams(K // rr) / (K // rr)
            assert pairing_twist(rr, d) == expected


def test_serre_dual_examples():
    r = ring()
    d = serre_dual(TwistData.finite(r, {-1: r.P}))
    assert d.entries == {1: LaurentPoly(r, {0: 2 - r.P})}
    assert serre_dual(TwistData.finite(r, {})) == TwistData.finite(r, {})
    pi = serre_dual(TwistData.eulerian_pi(r, [r.P]))
    assert pi.side == 1 and pi.lines == (r.P.inverse(),)
    assert pi.entry(3) == LaurentPoly(r, {0: r.P.inverse()})
    assert not pi.entry(-3)


def test_serre_relation_examples():
    r = ring()
    assert serre_relation_check(1, -1, TwistData.finite(r, {-1: r.P}))
    assert serre_relation_check(1, 1, TwistData.finite(r, {1: r.lam * r.P}))
    assert serre_relation_check(1, 5, TwistData.finite(r, {}))


def test_serre_is_involution():
    r = ring(n=3)
    rng = random.Random(3)
    for _ in range(5):
        d = random_finite_data(r, rng)
        assert serre_dual(serre_dual(d)) == d


def test_dilaton_examples():
    r = ring()
    e = r.eps
    d = TwistData.infinitesimal(r, {1: LaurentPoly(r, {1: e * r.P})})
    assert dilaton_vector(1, d) == parse_qrat("(1-q)*(1-eps*P)", r)
    assert dilaton_vector(2, d) == parse_qrat("1-q", r)
    flat = TwistData.infinitesimal(r, {1: e * r.P})
    assert dilaton_vector(1, flat) == parse_qrat("1-q", r)


def test_kappa_ratio_examples():
    r = ring(eps=1)
    for k in (-3, -1, 1, 2, 4):
        assert kappa_ratio(k, lp("P*q", r)) == LaurentPoly(r, {0: -r.P ** k})
        assert kappa_ratio(k, lp("q", r)) == LaurentPoly(r, {0: -r.one})
        assert kappa_ratio(k, lp("q + q^-1", r)) == lp(f"-(1 - q^{-k})", r)


def test_kappa_ratio_times_denominator():
    r = ring(n=3)
    E = lp("lam*P*q^2 - 3*q^-1 + P^2", r)
    for k in (-2, -1, 1, 3):
        one_minus = LaurentPoly(r, {0: r.one, k: -r.one})
        assert kappa_ratio(k, E) * one_minus == (E - E.at_one()).adams(k)


def test_psi_dilaton_examples():
    r = ring()
    d = TwistData.infinitesimal(r, {2: LaurentPoly(r, {1: r.eps * r.P})})
    assert psi_dilaton_check(2, d)
    assert dilaton_vector(2, d).adams(2) == parse_qrat("(1-q^2)*(1-eps*P^2)", r)
    assert psi_dilaton_check(1, d)
    assert psi_dilaton_check(3, TwistData.infinitesimal(r, {}))


def test_box_reflection():
    r = ring(eps=2)
    rng = random.Random(11)
    for _ in range(3):
        d = random_infinitesimal_data(r, rng)
        for rr in (1, 2, 3):
            assert box_reflection_check(rr, d)


def test_box_log_against_sympy():
    r = ring()
    d = TwistData.infinitesimal(r, {1: r.eps * r.P, -2: r.eps * r.lam})
    got = sp.simplify(qrat_expr(box_log(1, d)))
    q, P, lam, eps = sp.symbols("q P lam eps")
    ref = eps * P / (1 - q) + eps * lam ** -2 / (-2 * (1 - q ** -2))
    from oracles import rational_equal
    assert rational_equal(got, ref, 2)


def test_sector_examples():
    r = ring()
    assert sector_box_relation(1, 1, TwistData.finite(r, {1: r.P}))
    assert sector_box_relation(1, 2, TwistData.finite(r, {1: r.eps}))
    assert sector_box_relation(2, 3, TwistData.finite(r, {2: r.eps * r.P}))
    assert sector_geometric_identity(1, 1, 1)
    assert sector_geometric_identity(1, 2, 1, 6)
    assert sector_geometric_identity(2, 3, -1, 6)


def test_twist_data_validation():
    r = ring()
    with pytest.raises(TwistError):
        TwistData.finite(r, {0: r.P})
    with pytest.raises(TwistError):
        TwistData.infinitesimal(r, {1: r.P})
    with pytest.raises(TwistError):
        TwistData(r, "weird")
