"""Infinitesimal twisting data, Box operators, quantum Serre and the dilaton shift."""
from qktwist import KRing, ScalarRing, TwistData
from qktwist.expr import parse_qrat, render
from qktwist.twistkit import (
    box, box_log, box_reflection_check, dilaton_vector, kappa_ratio, pairing_twist,
    psi_dilaton_check, serre_dual, serre_relation_check,
)

# eps is a nilpotent marker, eps^3 = 0, so every exponential is a polynomial
R = KRing(2, ScalarRing(eps={"eps": 2}))
eps, P = R.eps, R.P

data = TwistData.infinitesimal(R, {-1: eps * P, 2: eps * R.lam})
print("X_1(q) =", render(box_log(1, data)))
print("X_2(q) =", render(box_log(2, data)))
print("Box_1  =", render(box(1, data)))

# X_r(q) + X_r(1/q) has no q left in it; its exponential is the pairing twist
print("reflection:", box_reflection_check(1, data))
print("Delta_1 =", render(pairing_twist(1, data)))

# Serre duality: E^(k) -> Psi^-1 E^(-k)
dual = serre_dual(data)
print("dual entries:", {k: render(v) for k, v in dual.entries.items()})
print("Serre relation k=-1:", serre_relation_check(1, -1, data))

# Eulerian pattern: the pairing twist collapses to an Euler class
print("Delta for E = P (pi mode):", render(pairing_twist(1, TwistData.eulerian_pi(R, [P]))))

# q-dependent twisting moves the dilaton vector away from 1 - q
E = parse_qrat("eps*P*q", R).as_laurent()
qdata = TwistData.infinitesimal(R, {1: E})
print("kappa ratio, k=3:", render(kappa_ratio(3, parse_qrat("q + q^-1", R).as_laurent())))
print("v_1 =", render(dilaton_vector(1, qdata)))
print("Psi^2 dilaton identity:", psi_dilaton_check(2, TwistData.infinitesimal(R, {2: E})))
