"""Companion linearizations of quadratic matrix polynomials.

Provides the two strong linearizations used by the solver (one reliable for
eigenvalues of large modulus, one for small modulus), eigenvector recovery
from the linearization's eigenvectors, and structured orthonormal bases of
the linearization kernels built from kernel bases of the quadratic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densela import as_matrix
from .matpoly import MatrixPolynomial

__all__ = [
    "KernelDegenerateError",
    "Pencil",
    "RecoveryError",
    "alternate_companion",
    "first_companion",
    "left_kernel_basis_alternate",
    "left_kernel_basis_first",
    "recover_from_alternate",
    "recover_from_first",
    "right_kernel_basis",
]


class RecoveryError(RuntimeError):
    """Recovered eigenvector block is numerically zero."""


class KernelDegenerateError(RuntimeError):
    """Left kernel construction degenerated (non-simple eigenvalue or bad bases)."""


@dataclass(frozen=True)
class Pencil:
    """Linear matrix polynomial ``A - lam*B`` stored as the pair (A, B)."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.A, "A")
        b = as_matrix(self.B, "B")
        if a.shape != b.shape or a.shape[0] != a.shape[1]:
            raise ValueError("pencil matrices must be square and of equal order")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @property
    def order(self):
        return self.A.shape[0]

    def value(self, lam):
        return self.A - lam * self.B

    def derivative(self):
        return -self.B

    def as_polynomial(self):
        return MatrixPolynomial((self.A, -self.B))


def _check_quadratic_coeffs(m, c, k):
    m = as_matrix(m, "M")
    c = as_matrix(c, "C")
    k = as_matrix(k, "K")
    if not (m.shape == c.shape == k.shape) or m.shape[0] != m.shape[1]:
        raise ValueError("M, C, K must be square matrices of equal order")
    return m, c, k


def first_companion(m, c, k):
    """First companion linearization of ``lam**2 M + lam C + K``.

    The pencil is ``lam*[[M, 0], [0, I]] + [[C, K], [-I, 0]]`` of order 2n.
    """
    m, c, k = _check_quadratic_coeffs(m, c, k)
    n = m.shape[0]
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    a = np.block([[c, k], [-eye, zero]])
    b = np.block([[-m, zero], [zero, -eye]])
    return Pencil(a, b)


def alternate_companion(m, c, k):
    """Alternate strong linearization ``lam*[[M, C], [0, I]] + [[0, K], [-I, 0]]``.

    Preferable to the first companion form for eigenvalues of small modulus.
    """
    m, c, k = _check_quadratic_coeffs(m, c, k)
    n = m.shape[0]
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    a = np.block([[zero, k], [-eye, zero]])
    b = np.block([[-m, -c], [zero, -eye]])
    return Pencil(a, b)


def _unit_block(block, full, what):
    nb = np.linalg.norm(block)
    if nb < 1e-8 * np.linalg.norm(full):
        raise RecoveryError(f"{what} eigenvector block is numerically zero")
    return block / nb


def recover_from_first(v, w):
    """Quadratic eigenvectors from a first-companion eigenpair.

    ``v`` and ``w`` are right/left eigenvectors of the order-2n pencil; the
    right and left quadratic eigenvectors are the leading n entries of each,
    renormalized to unit norm.
    """
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    n = v.size // 2
    return _unit_block(v[:n], v, "right"), _unit_block(w[:n], w, "left")


def recover_from_alternate(v, w):
    """Quadratic eigenvectors from an alternate-companion eigenpair.

    The right eigenvector sits in the trailing n entries, the left one in
    the leading n entries.
    """
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    n = v.size // 2
    return _unit_block(v[n:], v, "right"), _unit_block(w[:n], w, "left")


def _check_orthonormal(cols, what):
    if cols.size == 0:
        return
    gram = cols.conj().T @ cols
    if np.linalg.norm(gram - np.eye(gram.shape[0])) > 1e-6:
        raise ValueError(f"{what} must have orthonormal columns")


def right_kernel_basis(big_x, x, lam):
    """Orthonormal kernel basis of a companion linearization at ``lam``.

    Given an orthonormal basis ``[big_x, x]`` of the quadratic's kernel at a
    simple eigenvalue (with ``big_x`` spanning the right singular space),
    returns ``[[lam*big_x, lam*x], [big_x, x]] / sqrt(1 + |lam|**2)``.  The
    same construction is a kernel basis for both companion forms.
    """
    big_x = as_matrix(big_x, "X") if np.size(big_x) else np.zeros((x.size, 0), dtype=complex)
    x = np.asarray(x, dtype=complex).reshape(-1)
    stack = np.column_stack([big_x, x])
    _check_orthonormal(stack, "[X x]")
    scale = 1.0 / math.sqrt(1.0 + abs(lam) ** 2)
    return scale * np.vstack([lam * stack, stack])


def _inv_sqrt_hermitian(g):
    # g = I + (positive semidefinite), so eigenvalues are >= 1 and the
    # inverse square root is well conditioned.
    vals, vecs = np.linalg.eigh(g)
    vals = np.maximum(vals, np.finfo(float).tiny)
    return (vecs / np.sqrt(vals)) @ vecs.conj().T


def _left_kernel_from_map(big_y, y, w_map):
    big_y = as_matrix(big_y, "Y") if np.size(big_y) else np.zeros((y.size, 0), dtype=complex)
    y = np.asarray(y, dtype=complex).reshape(-1)
    _check_orthonormal(np.column_stack([big_y, y]), "[Y y]")
    d = big_y.shape[1]
    yt = np.concatenate([y, w_map @ y])
    if d:
        tall = np.vstack([big_y, w_map @ big_y])
        s = _inv_sqrt_hermitian(tall.conj().T @ tall)
        y_l_block = tall @ s
        proj = yt - y_l_block @ (y_l_block.conj().T @ yt)
    else:
        y_l_block = np.zeros((yt.size, 0), dtype=complex)
        proj = yt
    beta = float(np.linalg.norm(proj))
    if beta < 1e-12:
        raise KernelDegenerateError("projected left eigenvector vanished; eigenvalue not simple?")
    return y_l_block, proj / beta, beta


def left_kernel_basis_first(big_y, y, lam, m, c):
    """Orthonormal left-kernel basis of the first companion form at ``lam``.

    Given an orthonormal basis ``[big_y, y]`` of the quadratic's left kernel,
    stacks each column v into ``[v, (lam*M + C)* v]``, orthonormalizes the
    singular-space block with an inverse matrix square root and the
    eigenvector column by projection.  Returns ``(Y_L, y_L, beta)`` where
    ``beta`` is the norm of the projected eigenvector column before
    normalization.
    """
    m = as_matrix(m, "M")
    c = as_matrix(c, "C")
    w_map = (lam * m + c).conj().T
    return _left_kernel_from_map(big_y, y, w_map)


def left_kernel_basis_alternate(big_y, y, lam, m):
    """Left-kernel basis of the alternate companion form at ``lam``.

    Same construction as for the first companion form with the map
    ``v -> [v, conj(lam) * M* v]``.
    """
    m = as_matrix(m, "M")
    w_map = np.conj(lam) * m.conj().T
    return _left_kernel_from_map(big_y, y, w_map)
