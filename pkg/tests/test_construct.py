"""Constructed singular instances: designed structure really holds."""

import numpy as np
import pytest

from sqeig.construct import chain_quadratic, diagonal_pencil, diagonal_quadratic
from sqeig.densela import rank_with_tol
from sqeig.matpoly import normal_rank


def _bases_are_kernels(poly, lam0, b):
    q = poly.evaluate(lam0)
    right = np.column_stack([b.X, b.x])
    left = np.column_stack([b.Y, b.y])
    assert np.linalg.norm(q @ right) <= 1e-10
    assert np.linalg.norm(left.conj().T @ q) <= 1e-10
    np.testing.assert_allclose(right.conj().T @ right, np.eye(right.shape[1]), atol=1e-12)
    np.testing.assert_allclose(left.conj().T @ left, np.eye(left.shape[1]), atol=1e-12)


@pytest.mark.parametrize("rotate", [False, True])
def test_chain_quadratic_structure(rotate):
    lams = [1.0, 0.5, -0.25]
    inst = chain_quadratic(lams, 5, rng=3, rotate=rotate)
    poly = inst.polynomial()
    assert inst.normal_rank == 3
    assert normal_rank(poly, rng=0) == 3
    for lam0 in lams:
        # rank drops by one at a designed eigenvalue
        assert rank_with_tol(poly.evaluate(lam0), 1e-10) == 2
        _bases_are_kernels(poly, lam0, inst.bases(lam0))


def test_chain_zero_eigenvalue():
    inst = chain_quadratic([0.0, 1.0], 4, rng=4)
    _bases_are_kernels(inst.polynomial(), 0.0, inst.bases(0.0))


def test_chain_scaled_keeps_structure():
    inst = chain_quadratic([2.0, 0.5], 4, rng=5)
    scaled, info = inst.scaled()
    assert abs(np.linalg.norm(scaled.M, 2) - 1.0) <= 1e-12
    assert abs(np.linalg.norm(scaled.K, 2) - 1.0) <= 1e-12
    for lam_orig, lam_scaled in zip(inst.eigenvalues, scaled.eigenvalues):
        assert abs(lam_orig - info.gamma * lam_scaled) <= 1e-12
        _bases_are_kernels(scaled.polynomial(), lam_scaled, scaled.bases(lam_scaled))


def test_diagonal_quadratic_structure():
    inst = diagonal_quadratic([(1.0, -1.2), (0.5, 2.0)], 4, rng=6)
    poly = inst.polynomial()
    assert inst.normal_rank == 2
    assert normal_rank(poly, rng=0) == 2
    assert len(inst.eigenvalues) == 4
    for lam0 in inst.eigenvalues:
        assert rank_with_tol(poly.evaluate(lam0), 1e-10) == 1
        _bases_are_kernels(poly, lam0, inst.bases(lam0))


def test_diagonal_pencil_structure():
    inst = diagonal_pencil([1.0, -2.0], 4, rng=7)
    poly = inst.polynomial()
    assert normal_rank(poly, rng=0) == 2
    for lam0 in inst.eigenvalues:
        _bases_are_kernels(poly, lam0, inst.bases(lam0))


def test_rejects_bad_designs():
    with pytest.raises(ValueError, match="distinct"):
        chain_quadratic([1.0, 1.0], 4)
    with pytest.raises(ValueError, match="n >="):
        chain_quadratic([1.0, 2.0, 3.0], 3)
    with pytest.raises(ValueError, match="distinct"):
        diagonal_quadratic([(1.0, 1.0)], 3)


def test_unknown_eigenvalue_lookup():
    inst = chain_quadratic([1.0, 0.5], 3, rng=8)
    with pytest.raises(ValueError, match="designed"):
        inst.bases(3.33)
