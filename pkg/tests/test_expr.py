import pytest

from qktwist import KRing, QRat, ScalarRing
from qktwist.expr import ParseError, parse_kclass, parse_qrat, render, tokenize
from qktwist.lefschetz import i_cotangent, j_small


@pytest.fixture
def r3():
    return KRing(3, ScalarRing(eps={"eps": 2}))


def test_unicode_and_ascii_agree(r3):
    assert parse_qrat("(1−q)/(1−P·q)^2", r3) == parse_qrat("(1-q)/(1-P*q)**2", r3)
    assert parse_qrat("λ*ε", r3) == parse_qrat("lam*eps", r3)


def test_names(r3):
    assert parse_kclass("x", r3) == r3.x
    assert parse_kclass("1 - P", r3) == r3.x
    assert parse_kclass("P^-1", r3) == r3.P.inverse()
    assert parse_kclass("P^(-2)", r3) == r3.P ** -2


def test_factored_denominators(r3):
    f = parse_qrat("1/((1-q)*(2-2*P*q))", r3)
    assert f == QRat.const(r3, 1).mul_factor(r3.one, 1, -1).mul_factor(r3.P, 1, -1) / 2
    g = parse_qrat("1/(q-P)", r3)
    assert g == QRat.const(r3, -r3.P.inverse()).mul_factor(r3.P.inverse(), 1, -1)
    assert parse_qrat("(1-q^2)/(1-q)", r3) == parse_qrat("1+q", r3)


@pytest.mark.parametrize("bad,pos", [
    ("1/(1-q-q^2)", 6),
    ("1/x", 2),
    ("2+", 2),
    ("q^^2", 2),
    ("foo", 0),
    ("(1-q", 4),
    ("1 $ 2", 2),
])
def test_errors_carry_location(r3, bad, pos):
    with pytest.raises(ParseError) as info:
        parse_qrat(bad, r3)
    assert info.value.pos == pos


def test_q_dependent_class_rejected(r3):
    with pytest.raises(ParseError):
        parse_kclass("q", r3)


def test_tokenize_positions():
    toks = tokenize("lam ·q")
    assert [(t[0], t[2]) for t in toks] == [("name", 0), ("op", 4), ("name", 5), ("end", 6)]


def test_render_examples():
    r = KRing(2)
    J = j_small(2, 1, r)
    assert render(J.coeff(0)) == "1-q"
    assert render(J.coeff(1), unicode=True) == "(1−q)/(1−P·q)^2"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_render_round_trip(n):
    I = i_cotangent(n, 3)
    for f in I.terms.values():
        assert parse_qrat(render(f), I.ring) == f
        assert parse_qrat(render(f, unicode=True), I.ring) == f


def test_render_round_trip_markers(r3):
    for text in ("lam*P^-1 + eps*x/(1-lam*q^-2)^3", "-1/(lam-1)", "(q+q^-1)/(1+P*q)",
                 "3/(lam*q^2)", "eps^2*P - eps*q"):
        f = parse_qrat(text, r3)
        assert parse_qrat(render(f), r3) == f
