"""Tour of the four operator quantities on small exact models.

Run:  python3 demos/01_quantities_tour.py
"""

import numpy as np

from berezin import (
    berezin_norm,
    berezin_number,
    berezin_symbol,
    numerical_radius,
    operator_norm,
)
from berezin.models import finite


def banner(text):
    print()
    print(text)
    print("-" * len(text))


banner("A generic 2x2 matrix on the coordinate model")
model = finite(2)
a = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
print("A =")
print(a)
# on the coordinate model the normalized kernels are the basis vectors
# (points are 1-based), so the symbol at point i is the diagonal entry
for i in (1, 2):
    print(f"symbol at basis point {i}: {berezin_symbol(model, a, i):.6g}")
print(f"berezin number : {berezin_number(model, a).value:.6g}   (max |diagonal|)")
print(f"berezin norm   : {berezin_norm(model, a).value:.6g}   (max |entry|)")
print(f"numerical radius: {numerical_radius(a):.6g}")
print(f"operator norm  : {operator_norm(a):.6g}")

banner("The antidiagonal flip: number and norm can be far apart")
# Hermitian, zero diagonal: every symbol vanishes although the operator
# has norm one.  The Berezin number sees nothing; the Berezin norm does.
for n in (1, 2, 3):
    dim = 2 * n
    flip = np.fliplr(np.eye(dim)).astype(complex)
    m = finite(dim)
    bn = berezin_number(m, flip).value
    nb = berezin_norm(m, flip).value
    w = numerical_radius(flip)
    print(f"dim {dim}: number = {bn:g}, norm = {nb:g}, radius = {w:.6g}")

banner("Positivity closes the gap: number == norm for positive operators")
rng = np.random.default_rng(7)
g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
m = finite(3)
bn = berezin_number(m, g).value
nb = berezin_norm(m, g).value
print(f"random 3x3: number = {bn:.6g}, norm = {nb:.6g}, ratio = {nb / bn:.3g}")
p = g.conj().T @ g
bn = berezin_number(m, p).value
nb = berezin_norm(m, p).value
print(f"its Gram square (positive): number = {bn:.6g}, norm = {nb:.6g} (equal)")
