"""The small J-function of CP^(n-1), the cotangent bundle, and lambda -> 1."""
from qktwist.expr import render
from qktwist.lefschetz import (
    LineSummand, cotangent_bundles, i_cotangent, j_small, lefschetz_transform, noneq_limit,
)
from qktwist.qcalc import project_plus

n, D = 2, 3
J = j_small(n, D)
R = J.ring
for d, f in J.terms.items():
    print(f"J_{d[0]} =", render(f, unicode=True))

# every positive degree lies in K_-, so [J]_+ = 1 - q
print("[J]_+ =", render(sum((project_plus(f) for f in J.terms.values()), project_plus(J.coeff(0)) * 0)))

# a quintic-style pi transform: one summand P^-2
pi = lefschetz_transform(J, [LineSummand(2)], "pi")
print("degree 1 after pi(P^-2):", render(pi.coeff(1)))

# n lambda-weighted copies of P^-1 in dual mode give the cotangent I-series
I = lefschetz_transform(J, cotangent_bundles(n, R), "dual")
print("matches i_cotangent:", I == i_cotangent(n, D, R))
print("I_2 =", render(I.coeff(2)))

lim, closed = noneq_limit(n, D, R)
for d in range(1, D + 1):
    print(f"limit d={d}:", render(lim.coeff(d)), "| closed form agrees:", lim.coeff(d) == closed.coeff(d))
