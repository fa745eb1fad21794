"""K-theory of CP^(n-1): Adams operations, Euler classes, Euler characteristics."""
from qktwist import KRing, adams, chi, dual_basis, euler_class
from qktwist.expr import render
from qktwist.hrr import chi_fake, td_tangent

R = KRing(3)            # CP^2, x = 1 - P, x^3 = 0
P, x = R.P, R.x

print("P^-1            =", render(P ** -1))
print("Psi^2(P)        =", render(adams(2, P)))
print("Psi^-1(P) on CP^1 =", render(adams(-1, KRing(2).P)))

# Euler class of a line is 1 - L^-1; with a weight it stays invertible
lam = R.scalars.param()
print("Eu(P)           =", render(euler_class(R, [P])))
print("Eu(lam P)       =", render(euler_class(R, [(P, lam)])))

# chi(O(k)) on CP^2 is binomial(k + 2, 2); P is O(-1)
for j in range(-3, 4):
    print(f"chi(P^{j:+d}) = {chi(P ** j)}   (Todd/Chern: {chi_fake(P ** j)})")

print("td(T CP^2)      =", td_tangent(3).coefficients())

# the basis dual to 1, x, x^2 under (a, b) = chi(a b)
print("dual of 1, x, x^2:", [render(b) for b in dual_basis([R.one, x, x ** 2])])
