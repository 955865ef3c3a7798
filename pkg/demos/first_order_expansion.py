"""The eigenvalue of a perturbed singular problem moves linearly, provably.

For a generic perturbation direction E the perturbed eigenvalue satisfies
lam(eps) = lam0 - coeff * eps + O(eps^2) with a computable first-order
coefficient (a ratio of projected determinants).  Subtracting the
first-order prediction and fitting the remainder against eps on a log-log
grid must produce a slope of 2.

Run:  python demos/first_order_expansion.py
"""

import numpy as np

from sqeig.construct import KernelBases, chain_quadratic
from sqeig.matpoly import MatrixPolynomial, sample_perturbation
from sqeig.verify import expansion_order_check

# the classic 2x2 singular quadratic whose eigenvalues 1 and 2 can be
# destroyed by adversarial perturbations, yet move tamely for generic ones
m = np.array([[1.0, 0.0], [0.0, 0.0]])
c = np.array([[-3.0, 0.0], [0.0, 0.0]])
k = np.array([[2.0, 0.0], [0.0, 0.0]])
poly = MatrixPolynomial.quadratic(m, c, k)
e1 = np.array([1.0, 0.0], dtype=complex)
e2 = np.array([0.0, 1.0], dtype=complex)
bases = KernelBases(X=e2.reshape(-1, 1), x=e1, Y=e2.reshape(-1, 1), y=e1)

e = sample_perturbation(2, 2, np.random.default_rng(3))
report = expansion_order_check(poly, 1.0, bases, e, np.logspace(-3, -6, 7))

print("2x2 benchmark, eigenvalue 1, one random perturbation direction")
print(f"predicted first-order coefficient: {report.coefficient:.6g}\n")
print(f"{'eps':>10s} {'|lam(eps) - prediction|':>24s}")
for ep, rem in zip(report.eps, report.remainders):
    print(f"{ep:>10.1e} {rem:>24.3e}")
print(f"\nfitted log-log slope: {report.exponent:.3f}  (2 = clean quadratic remainder)")

inst = chain_quadratic([1.0, 0.5], 3, rng=1)
e = sample_perturbation(3, 2, np.random.default_rng(4))
rep2 = expansion_order_check(inst.polynomial(), 1.0, inst.bases(1.0), e, np.logspace(-3, -6, 7))
print(f"constructed order-3 singular quadratic: slope = {rep2.exponent:.3f}")
