"""Estimating the singular space of an eigenvalue by probing next to it.

At the eigenvalue itself the kernel is one dimension too big (it contains
the eigenvector); an epsilon-step away it collapses back to the rational
kernel, evaluated at the probe point.  Probing at lam0 + h e^{i theta}
therefore recovers the singular space up to O(h) when the kernel varies
with lam, and exactly when it happens to be constant.

Run:  python demos/singular_space_probe.py
"""

from sqeig.construct import chain_quadratic
from sqeig.corpus import builtin
from sqeig.verify import singular_space_estimate, subspace_angle

print("constructed instance with a lam-dependent kernel column:")
print("probe estimate vs designed singular space, one eigenvalue")
inst = chain_quadratic([1.0, 0.5], 4, rng=5)
for h in (1e-2, 1e-3, 1e-4):
    est = singular_space_estimate(inst.polynomial(), 1.0, h, rng=3)
    angle = subspace_angle(est, inst.bases(1.0).X)
    print(f"  h = {h:.0e}: angle to truth = {angle:.3e}")
print("the angle shrinks linearly with h, as a first-order probe should\n")

poly, _ = builtin("ex1")
print("3x3 benchmark problem, eigenvalue 1: here the rational kernel is")
print("constant in lam, so probes at any radius agree to roundoff")
est_coarse = singular_space_estimate(poly, 1.0, 1e-2, rng=1)
est_fine = singular_space_estimate(poly, 1.0, 1e-5, rng=2)
print(f"  angle(est(1e-2), est(1e-5)) = {subspace_angle(est_coarse, est_fine):.3e}")
