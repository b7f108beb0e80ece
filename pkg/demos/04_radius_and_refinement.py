"""Numerical radius against its classical bounds, and grid refinement on a
continuous model.

Run:  python3 demos/04_radius_and_refinement.py
"""

import numpy as np

from berezin import (
    GeneratorSpec,
    berezin_number,
    gen_matrix,
    numerical_radius,
    operator_norm,
    spectral_radius,
)
from berezin.models import hardy

print("the sandwich  norm/2 <= radius <= norm  on random operators:")
for seed in range(5):
    a = gen_matrix(GeneratorSpec("general", 4, 1.0, seed=seed))
    w, opn = numerical_radius(a), operator_norm(a)
    print(f"  seed {seed}: {opn / 2:.4f} <= {w:.4f} <= {opn:.4f}")

print()
print("normal operators sit at the top: radius == spectral radius == norm")
rng = np.random.default_rng(3)
z = rng.normal(size=4) + 1j * rng.normal(size=4)
u = gen_matrix(GeneratorSpec("unitary", 4, 1.0, seed=9))
normal = (u * z) @ u.conj().T
print(f"  radius   = {numerical_radius(normal):.10f}")
print(f"  spectral = {spectral_radius(normal):.10f}")
print(f"  norm     = {operator_norm(normal):.10f}")

print()
print("nilpotents sit at the bottom: the 2x2 shift attains radius = norm/2")
shift = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
print(f"  radius = {numerical_radius(shift):.12f}  (exactly 1/2)")

print()
print("on a truncated disk model the Berezin number is explored on nested")
print("grids; deeper levels only ever push the lower bound upward:")
model = hardy(15, 0.95)
shift16 = np.zeros((16, 16), dtype=complex)
for j in range(15):
    shift16[j + 1, j] = 1.0
q = 0.95 ** 2
closed_form = 0.95 * (1 - q ** 15) / (1 - q ** 16)
for level in (0, 1, 2):
    est = berezin_number(model, shift16, level=level)
    print(f"  level {level}: {est.value:.12f}  (exact = {est.exact})")
print(f"  supremum over the domain: {closed_form:.12f}")
print(f"  operator norm cap       : {operator_norm(shift16):.12f}")
