"""
Soliton detection two ways
==========================

A matrix A acts on an abelian ideal and generates a solvable metric Lie
algebra.  The metric is an algebraic soliton exactly when Ric = cI + D
with D a derivation.  classify_soliton decides this from the matrix;
certify_algebraic_soliton re-derives it from the structure constants.
The two routes must agree.
"""

import numpy as np

from solvflow import (
    certify_algebraic_soliton,
    classify_soliton,
    frob_norm,
    mu_of_a,
    normalized_rhs,
)

gallery = {
    "strictly upper 2x2": np.array([[0.0, 1.0], [0.0, 0.0]]),
    "full Jordan block": np.array([[0.0, 1.0, 0.0],
                                   [0.0, 0.0, 1.0],
                                   [0.0, 0.0, 0.0]]),
    "diag(1,2,3)": np.diag([1.0, 2.0, 3.0]),
    "rotation": np.array([[0.0, 1.0], [-1.0, 0.0]]),
    "not a soliton": np.array([[0.0, 2.0], [1.0, 0.0]]),
}

for name, a in gallery.items():
    v = classify_soliton(a)
    w = certify_algebraic_soliton(mu_of_a(a))
    agree = "agree" if v.accepted == w.accepted else "DISAGREE"
    print(f"{name:20s} -> {v.label:17s} (routes {agree})")
    if v.accepted:
        print(f"{'':23s}Ric = {v.soliton_constant:+.3f} I + D, "
              f"D diag = {np.diag(v.derivation).round(4)}")

# Solitons are exactly the fixed points of the norm-normalized flow:
# the right-hand side vanishes on the unit sphere.

print("\nnormalized right-hand side at each (unit-scaled) example:")
for name, a in gallery.items():
    b = a / frob_norm(a)
    drift = frob_norm(normalized_rhs(b))
    print(f"  {name:20s} ||RHS|| = {drift:.2e}")
