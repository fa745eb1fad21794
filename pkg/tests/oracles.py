"""Independent reference computations in plain sympy.

Nothing here imports the engine's arithmetic: classes are lifted to
sympy expressions in P (with x = 1 - P), and comparisons are made modulo
the relation (1 - P)^n.
"""
from __future__ import annotations

import sympy as sp

P, q, lam, eps, w = sp.symbols("P q lam eps w")


def scalar_expr(s) -> sp.Expr:
    """EqScalar -> sympy expression in lam and the markers."""
    names = [sp.Symbol(n) for n in s.ring.eps_names]
    out = sp.Integer(0)
    for mono, v in s.terms.items():
        if hasattr(v, "as_expr"):
            val = v.as_expr()
            val = val.subs({g: sp.Symbol(str(g)) for g in val.free_symbols})
        else:
            val = sp.Rational(int(v.numerator), int(v.denominator))
        term = val
        for name, e in zip(names, mono):
            term *= name ** e
        out += term
    return out


def class_expr(a) -> sp.Expr:
    """KClass -> polynomial in P."""
    return sp.expand(sum(scalar_expr(c) * (1 - P) ** i for i, c in enumerate(a.coeffs)))


def qrat_expr(f) -> sp.Expr:
    num = sum(class_expr(c) * q ** j for j, c in f.num.terms.items())
    den = sp.Integer(1)
    for (c, m), e in f.den.items():
        den *= (1 - class_expr(c) * q ** m) ** e
    return num / den


def reduce_mod(expr, n: int) -> sp.Expr:
    """Normal form of a Laurent polynomial in P modulo (1 - P)^n, written in x = 1 - P."""
    x = sp.Symbol("x")
    e = sp.together(sp.expand(expr))
    num, den = sp.fraction(e)
    # den is a monomial in P times a scalar: invert it modulo x^n
    num = sp.expand(num.subs(P, 1 - x))
    den = sp.expand(den.subs(P, 1 - x))
    inv = sp.series(1 / den, x, 0, n).removeO() if den.has(x) else 1 / den
    out = sp.expand(num * inv)
    poly = sp.Poly(out, x)
    return sp.expand(sum(c * x ** m[0] for m, c in poly.terms() if m[0] < n))


def classes_equal(a_expr, b_expr, n: int) -> bool:
    return sp.simplify(reduce_mod(a_expr - b_expr, n)) == 0


def rational_equal(e1, e2, n: int) -> bool:
    """Equality of rational functions in q with coefficients in K(CP^(n-1))."""
    num = sp.numer(sp.together(e1 - e2))
    num = sp.expand(num)
    if num == 0:
        return True
    # clear negative powers of q and P, then check each q-coefficient
    num = sp.expand(num * q ** 50 * P ** 50)
    poly = sp.Poly(num, q)
    return all(classes_equal(c, 0, n) for c in poly.coeffs())


def series_zero(expr, order: int):
    """Coefficients of q^0..q^(order-1) at q = 0."""
    s = sp.series(expr, q, 0, order).removeO()
    return [sp.expand(s).coeff(q, j) for j in range(order)]


def laurent_coeff_at_zero(expr, j: int):
    lead = 12
    s = sp.series(expr * q ** lead, q, 0, lead + j + 1).removeO()
    return sp.expand(s).coeff(q, lead + j)


def laurent_coeff_at_infinity(expr, j: int):
    return laurent_coeff_at_zero(expr.subs(q, 1 / q), -j)


def residue_bracket_expr(expr):
    """-[Res_0 + Res_inf] expr dq/q by sympy residues."""
    r0 = sp.residue(expr / q, q, 0)
    rinf = -sp.residue(sp.together(expr.subs(q, 1 / w) / w), w, 0)
    return sp.simplify(-(r0 + rinf))


def chi_line(j: int, n: int) -> sp.Rational:
    """chi(P^j) = chi(O(-j)) on CP^(n-1) = binomial(n-1-j, n-1) as a polynomial."""
    top = n - 1 - j
    out = sp.Integer(1)
    for i in range(n - 1):
        out *= top - i
    return out / sp.factorial(n - 1)


def chi_expr(a_expr, n: int) -> sp.Expr:
    """chi of a Laurent polynomial in P, via the P^j values."""
    e = sp.expand(a_expr)
    total = sp.Integer(0)
    for term in sp.Add.make_args(e):
        coeff, powers = term.as_independent(P)
        j = 0 if powers == 1 else powers.as_base_exp()[1]
        total += coeff * chi_line(int(j), n)
    return sp.simplify(total)
