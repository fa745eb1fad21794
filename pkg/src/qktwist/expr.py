"""A small expression grammar for rational functions in q, and a renderer.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    atom   := INT | NAME | '(' expr ')'
    exponent := ['-'] INT | '(' ['-'] INT ')'

NAME is ``q``, ``P``, ``x``, an equivariant parameter (``lam`` or ``λ`` for
the first one) or a nilpotent marker (``eps`` or ``ε`` for the first one).
``·`` and ``**`` are accepted for ``*`` and ``^``, and U+2212 for ``-``.
Every divisor must be visibly factored: a product of powers of unit
monomials c*q^a and binomials u*q^a*(1 - c*q^m).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from .kring import KClass, KRing
from .qcalc import LaurentPoly, QRat
from .scalars import EqScalar, ScalarError, render_scalar

MAX_EXPONENT = 10_000


class ParseError(ValueError):
    """Malformed expression; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_λε][A-Za-z0-9_]*)|(\*\*|[-+*/^()·−]))")
_NORMALIZE = {"·": "*", "−": "-", "**": "^"}


def tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos].strip() or 'space'!r}",
                             pos + len(text[pos:]) - len(text[pos:].lstrip()), text)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", _NORMALIZE.get(op, op), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


# -- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    kind: str
    args: tuple
    pos: int


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise self.error(f"expected {op!r}", t)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            t = self.take()
            node = Node("add" if t[1] == "+" else "sub", (node, self.term()), t[2])
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            t = self.take()
            node = Node("mul" if t[1] == "*" else "div", (node, self.unary()), t[2])
        return node

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            inner = self.unary()
            return inner if t[1] == "+" else Node("neg", (inner,), t[2])
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            return Node("pow", (base, self.exponent()), t[2])
        return base

    def exponent(self):
        paren = self.peek()[0] == "op" and self.peek()[1] == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        t = self.take()
        if t[0] != "int":
            raise self.error("exponent must be an integer", t)
        if paren:
            self.expect(")")
        return sign * t[1]

    def atom(self):
        t = self.take()
        if t[0] == "int":
            return Node("int", (t[1],), t[2])
        if t[0] == "name":
            return Node("name", (t[1],), t[2])
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise self.error("expected a number, a name or '('", t)


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


# -- evaluation ----------------------------------------------------------

class _Evaluator:
    def __init__(self, ring: KRing, text: str):
        self.ring = ring
        self.text = text
        sc = ring.scalars
        names = {"q": None, "P": ring.P, "x": ring.x}
        for i, p in enumerate(sc.params):
            names[p] = ring(sc.param(p))
            if i == 0:
                names.setdefault("λ", names[p])
        for i, e in enumerate(sc.eps_names):
            names[e] = ring(sc.eps(e))
            if i == 0:
                names.setdefault("ε", names[e])
        self.names = names

    def fail(self, msg, node):
        return ParseError(msg, node.pos, self.text)

    def value(self, node: Node) -> QRat:
        ring = self.ring
        k = node.kind
        if k == "int":
            return QRat.const(ring, node.args[0])
        if k == "name":
            name = node.args[0]
            if name not in self.names:
                raise self.fail(f"unknown name {name!r}", node)
            if name == "q":
                return QRat.q(ring)
            return QRat.const(ring, self.names[name])
        if k == "neg":
            return -self.value(node.args[0])
        if k in ("add", "sub"):
            a, b = (self.value(x) for x in node.args)
            return a + b if k == "add" else a - b
        if k == "mul":
            a, b = (self.value(x) for x in node.args)
            return a * b
        if k == "div":
            return self.divide(self.value(node.args[0]), node.args[1])
        if k == "pow":
            base, e = node.args
            if abs(e) > MAX_EXPONENT:
                raise self.fail("exponent too large", node)
            if e >= 0:
                return self.value(base) ** e
            return self.divide(QRat.const(ring, 1), Node("pow", (base, -e), node.pos))
        raise self.fail(f"unsupported node {k}", node)

    def factors(self, node: Node):
        """node as (unit coefficient, q-shift, {(c, m): e})."""
        k = node.kind
        if k == "neg":
            u, a, fs = self.factors(node.args[0])
            return -u, a, fs
        if k in ("mul", "div"):
            u1, a1, f1 = self.factors(node.args[0])
            u2, a2, f2 = self.factors(node.args[1])
            s = 1 if k == "mul" else -1
            fs = dict(f1)
            for key, e in f2.items():
                fs[key] = fs.get(key, 0) + s * e
            try:
                u = u1 * u2 if s == 1 else u1 * u2.inverse()
            except ScalarError:
                raise self.fail("divisor is not invertible", node) from None
            return u, a1 + s * a2, fs
        if k == "pow":
            base, e = node.args
            if node.args[1] == 0:
                return self.ring.one, 0, {}
            u, a, fs = self.factors(base)
            try:
                u = u ** e
            except ScalarError:
                raise self.fail("negative power of a non-invertible factor", node) from None
            return u, a * e, {key: v * e for key, v in fs.items()}
        v = self.value(node)
        fs = {key: -e for key, e in v.den.items()}
        num = v.num
        terms = sorted(num.terms.items())
        if len(terms) == 1:
            (a, c), = terms
            if not c.is_unit():
                raise self.fail("divisor is not invertible", node)
            return c, a, fs
        if len(terms) == 2:
            (a, c0), (b, c1) = terms
            if c0.is_unit():
                key = (-c1 * c0.inverse(), b - a)
                fs[key] = fs.get(key, 0) + 1
                return c0, a, fs
            if c1.is_unit():
                # c0 q^a + c1 q^b = c1 q^b (1 - (-c0/c1) q^(a-b))
                key = (-c0 * c1.inverse(), a - b)
                fs[key] = fs.get(key, 0) + 1
                return c1, b, fs
        raise self.fail("denominator must be in factored form", node)

    def divide(self, a: QRat, node: Node) -> QRat:
        u, shift, fs = self.factors(node)
        ring = self.ring
        out = a * QRat(ring, LaurentPoly(ring, {-shift: u.inverse()}))
        for (c, m), e in sorted(fs.items(), key=lambda kv: (kv[0][1], str(kv[0][0]))):
            if not e:
                continue
            if m == 0:
                base = ring.one - c
                try:
                    out = out * QRat.const(ring, base ** (-e))
                except ScalarError:
                    raise self.fail("divisor is not invertible", node) from None
            else:
                out = out.mul_factor(c, m, -e)
        return out


def parse_qrat(text: str, ring: KRing) -> QRat:
    """Parse ``text`` into a :class:`QRat` over ``ring``."""
    node = parse_ast(text)
    return _Evaluator(ring, text).value(node)


def parse_kclass(text: str, ring: KRing) -> KClass:
    f = parse_qrat(text, ring)
    if f.den or any(j != 0 for j in f.num.terms):
        raise ParseError("expected a q-independent class", 0, text)
    return f.num.coeff(0)


# -- rendering -------------------------------------------------------------

_SIMPLE = re.compile(r"^-?[A-Za-z0-9_]+(\^-?\d+)?$")


def _compact_scalar(s: EqScalar) -> str:
    return render_scalar(s).replace(" ", "")


def p_basis(a: KClass) -> list:
    """Coefficients of a in the basis 1, P, ..., P^(n-1)."""
    n = a.ring.n
    zero = a.ring.scalars.zero
    out = [zero] * n
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        for j in range(i + 1):
            coef = comb(i, j) * (-1) ** j
            out[j] = out[j] + c * coef
    return out


def _join(parts) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += s if s.startswith("-") else "+" + s
    return out


def _times(coef: str, mono: str) -> str:
    if not mono:
        return coef
    if coef == "1":
        return mono
    if coef == "-1":
        return "-" + mono
    if _SIMPLE.match(coef) or not (_is_sum(coef) or _has_top_div(coef)):
        return f"{coef}*{mono}"
    return f"({coef})*{mono}"


def _has_top_div(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += (ch == "(") - (ch == ")")
        if ch == "/" and depth == 0:
            return True
    return False


def render_class(a: KClass) -> str:
    parts = []
    for j, c in enumerate(p_basis(a)):
        if not c:
            continue
        mono = "" if j == 0 else ("P" if j == 1 else f"P^{j}")
        parts.append(_times(_compact_scalar(c), mono))
    return _join(parts)


def _is_sum(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "^*/(":
            return True
    return False


def _qmono(j: int) -> str:
    return "" if j == 0 else ("q" if j == 1 else f"q^{j}")


def render_poly(p: LaurentPoly) -> str:
    parts = []
    for j in sorted(p.terms):
        coef = render_class(p.terms[j])
        parts.append(_times(coef, _qmono(j)) if j or not _is_sum(coef) else coef)
    return _join(parts)


def render(f, unicode: bool = False) -> str:
    """Compact rendering accepted back by :func:`parse_qrat`."""
    if isinstance(f, KClass):
        s = render_class(f)
    elif isinstance(f, LaurentPoly):
        s = render_poly(f)
    else:
        num = render_poly(f.num)
        if not f.den:
            s = num
        else:
            dens = []
            for (c, m), e in f.den.items():
                cs = render_class(c)
                if _is_sum(cs):
                    base = f"(1-({cs})*{_qmono(m)})"
                elif cs.startswith("-"):
                    base = f"(1+{_times(cs[1:], _qmono(m))})"
                else:
                    base = f"(1-{_times(cs, _qmono(m))})"
                dens.append(base if e == 1 else f"{base}^{e}")
            den = dens[0] if len(dens) == 1 else "(" + "*".join(dens) + ")"
            if _is_sum(num):
                num = f"({num})"
            s = f"{num}/{den}"
    if unicode:
        s = s.replace("-", "−").replace("*", "·")
    return s
