"""Construction of the coefficient matrix W, the family tensor, and the 0/1
representative.

W is built Schur-Horn style: the target Gram matrix lambda*I - w w* has
spectrum (lambda, ..., lambda, 0) with kernel spanned by w, so its columns can
be taken as sqrt(lambda) times an orthonormal basis of the orthogonal
complement of w. The basis is produced by a single Householder reflection
mapping w/|w| to the last standard basis vector, which keeps the construction
deterministic across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from .family import FamilyData, family_data
from .tensor import Tensor3

WN_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class WMatrix:
    """n x (n-1) complex matrix satisfying the two Gram equations of the family."""

    n: int
    entries: np.ndarray
    lambda_W: Fraction
    w: np.ndarray

    def gram_defects(self) -> tuple[float, float]:
        """Frobenius defects of W*W = lambda I and WW* = lambda I - w w*."""
        lam = float(self.lambda_W)
        m = self.entries
        left = np.linalg.norm(m.conj().T @ m - lam * np.eye(self.n - 1))
        right = np.linalg.norm(m @ m.conj().T - (lam * np.eye(self.n) - np.outer(self.w, self.w)))
        return (float(left), float(right))


@dataclass(frozen=True, eq=False)
class FamilyTensor:
    """The unit-norm tensor carrying W on the anti-diagonal slices and a on the last."""

    n: int
    W: WMatrix
    a: np.ndarray
    tensor: Tensor3
    data: FamilyData


def _householder_basis_of_orthogonal_complement(unit: np.ndarray) -> np.ndarray:
    """Columns: an orthonormal basis of unit^perp, for a real unit vector."""
    n = unit.shape[0]
    v = unit - np.eye(n)[:, n - 1]
    vv = float(v @ v)
    if vv < 1e-30:
        return np.eye(n)[:, : n - 1]
    reflector = np.eye(n) - 2.0 * np.outer(v, v) / vv
    return reflector[:, : n - 1]


def build_W(n: int) -> WMatrix:
    if n < 3:
        raise ValueError("build_W requires n >= 3")
    data = family_data(n)
    lam = float(data.lambda_W)
    w = np.array([sqrt(float(x)) for x in data.w_sq])
    basis = _householder_basis_of_orthogonal_complement(w / np.linalg.norm(w))
    entries = (sqrt(lam) * basis).astype(np.complex128)
    return WMatrix(n=n, entries=entries, lambda_W=data.lambda_W, w=w)


def wmatrix_membership(m: np.ndarray, tol: float = WN_TOL) -> bool:
    """Whether m satisfies both Gram equations of the family within tol."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] + 1:
        raise ValueError(f"expected an n x (n-1) matrix, got shape {m.shape}")
    n = m.shape[0]
    data = family_data(n)
    lam = float(data.lambda_W)
    w = np.array([sqrt(float(x)) for x in data.w_sq])
    left = np.linalg.norm(m.conj().T @ m - lam * np.eye(n - 1))
    right = np.linalg.norm(m @ m.conj().T - (lam * np.eye(n) - np.outer(w, w)))
    return bool(left <= tol and right <= tol)


def build_family_tensor(n: int) -> FamilyTensor:
    """Tensor with T[n+1-i, i, k] = W[i, k] for k < n and T[n-i, i, n] = a_i."""
    wm = build_W(n)
    data = family_data(n)
    a = np.array([sqrt(float(bj)) for bj in data.b[: n - 1]])
    arr = np.zeros((n, n, n), dtype=np.complex128)
    for i in range(1, n + 1):
        for k in range(1, n):
            arr[n - i, i - 1, k - 1] = wm.entries[i - 1, k - 1]
    for i in range(1, n):
        arr[n - i - 1, i - 1, n - 1] = a[i - 1]
    return FamilyTensor(n=n, W=wm, a=a, tensor=Tensor3(arr), data=data)


def s0_tensor(n: int) -> Tensor3:
    """The 0/1 representative: identity block over an all-ones row, unit a-entries."""
    if n < 2:
        raise ValueError("s0_tensor requires n >= 2")
    arr = np.zeros((n, n, n), dtype=np.complex128)
    for i in range(1, n):  # W rows e_1 ... e_{n-1}
        arr[n - i, i - 1, i - 1] = 1.0
    for k in range(1, n):  # all-ones last W row, placed at first slice
        arr[0, n - 1, k - 1] = 1.0
    for i in range(1, n):  # unit a-entries
        arr[n - i - 1, i - 1, n - 1] = 1.0
    return Tensor3(arr)
