"""Dense complex order-3 tensors and the factor-wise group action.

All indices in public interfaces (supports, JSON) are 1-based; storage is a
numpy array indexed from 0. Values are immutable after construction, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

Triple = tuple[int, int, int]

SUPPORT_TOL = 1e-9  # relative cutoff for support extraction of float tensors
INVERTIBILITY_TOL = 1e-12  # smallest/largest singular value ratio
UNITARITY_TOL = 1e-12


class DimensionMismatchError(ValueError):
    """Shapes of the operands do not line up."""


class TensorFormatError(ValueError):
    """Malformed JSON tensor document."""


def _freeze(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Tensor3:
    """A dense complex tensor with three indices."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.entries, dtype=np.complex128)
        if arr.ndim != 3:
            raise ValueError(f"expected 3 axes, got {arr.ndim}")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("tensor entries must be finite")
        object.__setattr__(self, "entries", _freeze(arr))

    @property
    def dims(self) -> Triple:
        return self.entries.shape  # type: ignore[return-value]

    def __getitem__(self, ijk: Triple) -> complex:
        """Entry at a 1-based index triple."""
        i, j, k = ijk
        return complex(self.entries[i - 1, j - 1, k - 1])


def tensor(entries) -> Tensor3:
    return Tensor3(np.asarray(entries))


def zero_tensor(dims: Triple) -> Tensor3:
    return Tensor3(np.zeros(dims, dtype=np.complex128))


def basis_tensor(dims: Triple, i: int, j: int, k: int) -> Tensor3:
    """The standard basis tensor at 1-based position (i, j, k)."""
    arr = np.zeros(dims, dtype=np.complex128)
    arr[i - 1, j - 1, k - 1] = 1.0
    return Tensor3(arr)


def from_coefficients(dims: Triple, coeffs: dict[Triple, complex]) -> Tensor3:
    """Build a tensor from {(i, j, k): value} with 1-based triples."""
    arr = np.zeros(dims, dtype=np.complex128)
    for (i, j, k), value in coeffs.items():
        arr[i - 1, j - 1, k - 1] = value
    return Tensor3(arr)


@dataclass(frozen=True, eq=False)
class GroupTriple:
    """Triple of invertible matrices acting factor-wise on a tensor."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        for name in ("a", "b", "c"):
            m = np.ascontiguousarray(getattr(self, name), dtype=np.complex128)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError(f"factor {name} must be a square matrix")
            self._check(name, m)
            object.__setattr__(self, name, _freeze(m))

    def _check(self, name: str, m: np.ndarray):
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] <= INVERTIBILITY_TOL * s[0]:
            raise ValueError(f"factor {name} is numerically singular")

    @property
    def factors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.a, self.b, self.c)

    def inverse(self) -> "GroupTriple":
        return GroupTriple(*(np.linalg.inv(m) for m in self.factors))


class UnitaryTriple(GroupTriple):
    """GroupTriple whose factors are unitary within UNITARITY_TOL."""

    def _check(self, name: str, m: np.ndarray):
        defect = np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))
        if defect > UNITARITY_TOL:
            raise ValueError(f"factor {name} is not unitary (defect {defect:.3e})")


def identity_triple(dims: Triple) -> UnitaryTriple:
    return UnitaryTriple(*(np.eye(n) for n in dims))


def diagonal_triple(d1, d2, d3) -> GroupTriple:
    return GroupTriple(np.diag(d1), np.diag(d2), np.diag(d3))


def permutation_triple(dims: Triple, sigma, tau, rho) -> UnitaryTriple:
    """Permutation action sending e_{i,j,k} to e_{sigma(i),tau(j),rho(k)}.

    Permutations are given as 1-based images, e.g. sigma = [2, 1, 3].
    """

    def matrix(n, perm):
        m = np.zeros((n, n))
        for src, dst in enumerate(perm):
            m[dst - 1, src] = 1.0
        return m

    return UnitaryTriple(
        matrix(dims[0], sigma), matrix(dims[1], tau), matrix(dims[2], rho)
    )


def compose(g: GroupTriple, h: GroupTriple) -> GroupTriple:
    """The triple gh, so that apply(gh, T) = apply(g, apply(h, T))."""
    return GroupTriple(g.a @ h.a, g.b @ h.b, g.c @ h.c)


def apply(g: GroupTriple, t: Tensor3) -> Tensor3:
    """Trilinear basis change (A, B, C) . T = (A x B x C) T."""
    n1, n2, n3 = t.dims
    if g.a.shape[0] != n1 or g.b.shape[0] != n2 or g.c.shape[0] != n3:
        raise DimensionMismatchError(
            f"group factor sizes {(g.a.shape[0], g.b.shape[0], g.c.shape[0])} "
            f"do not match tensor dims {t.dims}"
        )
    out = np.einsum("ia,jb,kc,abc->ijk", g.a, g.b, g.c, t.entries, optimize=True)
    return Tensor3(out)


def flattening(t: Tensor3, factor: int) -> np.ndarray:
    """Matrix whose i-th row is the vectorized i-th slice along `factor`."""
    if factor not in (1, 2, 3):
        raise ValueError("factor must be 1, 2 or 3")
    moved = np.moveaxis(t.entries, factor - 1, 0)
    return moved.reshape(moved.shape[0], -1)


def flattening_ranks(t: Tensor3, cutoff: float = 1e-8) -> tuple[int, int, int]:
    """Numerical ranks of the three flattenings at a relative singular-value cutoff."""
    ranks = []
    for factor in (1, 2, 3):
        s = np.linalg.svd(flattening(t, factor), compute_uv=False)
        ranks.append(int(np.sum(s > cutoff * s[0])) if s.size and s[0] > 0 else 0)
    return tuple(ranks)  # type: ignore[return-value]


def is_concise(t: Tensor3, cutoff: float = 1e-8) -> bool:
    """All three flattenings have full numerical rank."""
    return flattening_ranks(t, cutoff) == t.dims


@dataclass(frozen=True)
class SupportSet:
    """Set of 1-based index triples inside a fixed dimension box."""

    dims: Triple
    triples: frozenset[Triple]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        object.__setattr__(
            self, "triples", frozenset(tuple(int(x) for x in t) for t in self.triples)
        )
        n1, n2, n3 = self.dims
        for i, j, k in self.triples:
            if not (1 <= i <= n1 and 1 <= j <= n2 and 1 <= k <= n3):
                raise ValueError(f"triple {(i, j, k)} outside [{n1}]x[{n2}]x[{n3}]")

    def __contains__(self, triple: Triple) -> bool:
        return tuple(triple) in self.triples

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self.triples))

    def issubset(self, other: "SupportSet") -> bool:
        return self.triples <= other.triples


def support_set(dims: Triple, triples: Iterable[Triple]) -> SupportSet:
    return SupportSet(tuple(dims), frozenset(tuple(t) for t in triples))


def support(t: Tensor3, tol: float = SUPPORT_TOL) -> SupportSet:
    """Triples where |T_ijk| exceeds tol times the largest entry magnitude."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    mags = np.abs(t.entries)
    peak = mags.max() if mags.size else 0.0
    idx = np.argwhere(mags > tol * peak)
    return support_set(t.dims, ((i + 1, j + 1, k + 1) for i, j, k in idx))


def norm(t: Tensor3) -> float:
    return float(np.linalg.norm(t.entries))


def inner(s: Tensor3, t: Tensor3) -> complex:
    """Sesquilinear inner product, conjugate-linear in the first argument."""
    if s.dims != t.dims:
        raise DimensionMismatchError(f"dims {s.dims} vs {t.dims}")
    return complex(np.vdot(s.entries, t.entries))


def scale(t: Tensor3, factor: complex) -> Tensor3:
    return Tensor3(t.entries * factor)


def add(s: Tensor3, t: Tensor3) -> Tensor3:
    if s.dims != t.dims:
        raise DimensionMismatchError(f"dims {s.dims} vs {t.dims}")
    return Tensor3(s.entries + t.entries)


def normalized(t: Tensor3) -> Tensor3:
    nrm = norm(t)
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero tensor")
    return scale(t, 1.0 / nrm)


# --- JSON interchange -------------------------------------------------------
#
# {"dims": [n1, n2, n3], "entries": [{"i": 1, "j": 2, "k": 3, "re": 0.5, "im": 0.0}, ...]}
# Omitted entries are zero; indices are 1-based; a duplicated (i, j, k) is an error.


def tensor_to_doc(t: Tensor3) -> dict:
    entries = []
    for (i, j, k) in support(t, 0.0):
        value = t.entries[i - 1, j - 1, k - 1]
        entries.append({"i": i, "j": j, "k": k, "re": float(value.real), "im": float(value.imag)})
    return {"dims": list(t.dims), "entries": entries}


def tensor_from_doc(doc: dict) -> Tensor3:
    try:
        dims = tuple(int(n) for n in doc["dims"])
    except (KeyError, TypeError, ValueError) as exc:
        raise TensorFormatError(f"bad or missing dims: {exc}") from exc
    if len(dims) != 3 or any(n < 1 for n in dims):
        raise TensorFormatError(f"dims must be three positive integers, got {dims}")
    arr = np.zeros(dims, dtype=np.complex128)
    seen = set()
    for entry in doc.get("entries", []):
        try:
            i, j, k = int(entry["i"]), int(entry["j"]), int(entry["k"])
            value = float(entry.get("re", 0.0)) + 1j * float(entry.get("im", 0.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise TensorFormatError(f"bad entry {entry!r}: {exc}") from exc
        if not (1 <= i <= dims[0] and 1 <= j <= dims[1] and 1 <= k <= dims[2]):
            raise TensorFormatError(f"index ({i},{j},{k}) outside dims {dims}")
        if (i, j, k) in seen:
            raise TensorFormatError(f"duplicate entry at ({i},{j},{k})")
        seen.add((i, j, k))
        arr[i - 1, j - 1, k - 1] = value
    return Tensor3(arr)


def load_tensor(path) -> Tensor3:
    with open(path, "r", encoding="utf-8") as handle:
        return tensor_from_doc(json.load(handle))


def save_tensor(t: Tensor3, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(tensor_to_doc(t), handle)
