"""Walk a few catalog inequalities by hand and read the results.

Run:  python3 demos/02_inequality_tour.py
"""

import numpy as np

from berezin import GeneratorSpec, gen_matrix
from berezin.inequalities import CATALOG, CATALOG_ORDER, InequalityCase, check, power_mean
from berezin.models import finite


def show(res):
    mark = "ok " if res.satisfied else "VIOLATED"
    print(f"  [{mark}] {res.ineq_id}: lhs = {res.lhs:.6g}  rhs = {res.rhs:.6g}  gap = {res.gap:.3g}")


print(f"catalog holds {len(CATALOG_ORDER)} entries:")
print(" ", ", ".join(CATALOG_ORDER))

print()
print("scalar power means are monotone in the order (two numbers suffice):")
a, b = 1.0, 4.0
for order in (0.0, 0.5, 1.0, 2.0):
    print(f"  order {order:>3}: mean(1, 4 | alpha=1/2) = {power_mean(a, b, 0.5, order):.6g}")
res = check(InequalityCase(
    ineq_id="lem3", operands={"a": a, "b": b},
    params={"alpha": 0.5, "r": 0.0, "s": 1.0}, model=None,
))
show(res)

print()
print("a squared-norm bound for an operator average, random operands:")
n = 3
ops = {
    "A": gen_matrix(GeneratorSpec("general", n, 1.0, seed=1)),
    "B": gen_matrix(GeneratorSpec("general", n, 1.0, seed=2)),
}
for alpha in (0.25, 0.5, 0.75):
    res = check(InequalityCase(
        ineq_id="cor1", operands=ops, params={"alpha": alpha, "r": 2.0, "s": 2.0},
        model=finite(n),
    ))
    show(res)

print()
print("where equality lives: the identity operator is tight for most entries")
eye_ops = {"A": np.eye(2, dtype=complex), "B": np.eye(2, dtype=complex)}
res = check(InequalityCase(
    ineq_id="cor1", operands=eye_ops, params={"alpha": 0.5, "r": 2.0, "s": 2.0},
    model=finite(2),
))
show(res)

print()
print("a self-commutator bound that is loose for normal operators:")
normal = np.diag([1.0 + 1.0j, -2.0]).astype(complex)
res = check(InequalityCase(ineq_id="eql1", operands={"A": normal}, model=finite(2)))
show(res)
shift = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
res = check(InequalityCase(ineq_id="eql1", operands={"A": shift}, model=finite(2)))
print("  ...and exactly tight for the nilpotent shift:")
show(res)

print()
print("every result names its binding part and the parameters in play:")
print(f"  worst part: {res.witness['part']!r}")
print(f"  witness keys: {sorted(res.witness)}")
