#!/usr/bin/env python3
"""Finite classical dynamics: composition operators and their adjoints.

A point map S on n weighted points induces the composition operator
(Vf)(i) = f(S(i)) on observables and, dually, the density-evolution
operator on masses.  The script verifies the textbook facts on a small
space and then runs the two structure tests that recognize operators of
point-map origin: unital multiplicativity, and one-supported-entry-per-row
with exponent-compatible weights.  The rotation that is isometric only for
the exponent 2 shows why that exponent is special.
"""

import numpy as np

from nclp.classical import (
    FiniteMeasureSpace,
    PointMap,
    doubly_stochastic_check,
    frobenius_perron_of,
    koopman_of,
    lp_norm,
    multiplicativity_check,
    weighted_permutation_decompose,
)
from nclp.sampling import rng_from

rng = rng_from(11)
n = 5
cycle = PointMap(np.array([1, 2, 3, 4, 0]))
space = FiniteMeasureSpace(np.full(n, 1.0 / n))

v = koopman_of(cycle)
u = frobenius_perron_of(cycle, space)
print("cyclic shift on 5 uniform points:")
print("  composition operator rows pick f(S(i)); densities move the other way")
f = rng.standard_normal(n)
g = rng.standard_normal(n)
lhs = np.sum(space.weights * (v @ f) * g)
rhs = np.sum(space.weights * f * (u @ g))
print(f"  adjoint pairing <Vf, g> = {lhs:.12f} = <f, Ug> = {rhs:.12f}")

check = doubly_stochastic_check(u, space)
print(
    f"  doubly stochastic: positivity {check.positivity_defect}, "
    f"mass {check.mass_defect}, unitality {check.unitality_defect}"
)

print("\nrecognizing point-map origin:")
mult = multiplicativity_check(v)
print(f"  multiplicativity defect of the composition operator: {mult.defect}")
dec = weighted_permutation_decompose(v, space, p=3.0)
print(f"  support structure: ok={dec.ok}, recovered map {list(dec.point_map.images)}")

print("\naveraging destroys multiplicativity:")
blur = 0.5 * (np.eye(n) + v)
print(f"  defect of (identity + shift)/2: {multiplicativity_check(blur).defect:.4f}")

print("\nthe exponent-2 exception:")
hadamard = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
two = FiniteMeasureSpace(np.array([0.5, 0.5]))
f2 = rng.standard_normal(2)
print(
    f"  rotation is an l^2 isometry: ||Hf||_2 = {lp_norm(hadamard @ f2, two, 2):.12f} "
    f"vs ||f||_2 = {lp_norm(f2, two, 2):.12f}"
)
print(f"  but has two supported entries per row: ok = "
      f"{weighted_permutation_decompose(hadamard, two, 2.0).ok}")
print(f"  and for p = 3 it is not even an isometry: ||Hf||_3 = "
      f"{lp_norm(hadamard @ f2, two, 3):.6f} vs ||f||_3 = {lp_norm(f2, two, 3):.6f}")
