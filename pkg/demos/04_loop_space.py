"""The residue symplectic form and the polarization K_+ + K_-."""
from qktwist import KRing, ScalarRing, TwistData
from qktwist.expr import parse_qrat, render
from qktwist.loopspace import LoopPoint, apply_box, omega_inf, omega_r
from qktwist.qcalc import project_minus, project_plus
from qktwist.twistkit import box, pairing_twist

R = KRing(2, ScalarRing(eps={"eps": 2}))
f = parse_qrat("q^2/(1-q)", R)
print("f_+ =", render(project_plus(f)), "  f_- =", render(project_minus(f)))

one, g = parse_qrat("1", R), parse_qrat("1/(1-q)", R)
print("Omega(1, 1/(1-q))            =", omega_r(one, g))
print("Omega(1, 1/(1-q)), twist P^-1 =", omega_r(one, g, 1, R.P ** -1))
print("Omega(q, q^2)                =", omega_r(parse_qrat("q", R), parse_qrat("q^2", R)))

# Omega^oo weighs the r-th component by Psi^r / r
F = LoopPoint({2: parse_qrat("lam", R)})
G = LoopPoint({2: g})
print("Omega^oo =", omega_inf(F, G))

# Box_r turns the twisted form into the plain one
data = TwistData.infinitesimal(R, {1: R.eps * R.P, -2: R.eps})
a = parse_qrat("1/(1-P*q) + q^-1", R)
b = parse_qrat("(1 + q)/(1-q^2)^2", R)
B = box(1, data)
print("twisted:", omega_r(a, b, 1, pairing_twist(1, data)))
print("boxed:  ", omega_r(B * a, B * b, 1))

moved = apply_box(LoopPoint({1: parse_qrat("1/(1-P*q)", R)}), data)
print("Box keeps K_-:", moved.in_k_minus())
