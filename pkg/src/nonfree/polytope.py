"""One-sided moment polytope certificates.

Outer bounds: a halfspace containing the downward closure of the support
contains the whole polytope. Inner bounds: sorted support vertices of free
supports. Refutation: sampled supports of triangular basis changes whose
convex hulls must contain every polytope point; membership is decided in
exact rational arithmetic so a "refuted" verdict is sound (up to the
genericity of the sampled upper-triangular change, which is reported).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .exactlp import in_convex_hull
from .moment import WeylPoint
from .supports import downward_closure, is_free_support, sjamaar_inner_points
from .tensor import SUPPORT_TOL, GroupTriple, Tensor3, apply, support

EXACT_VERTEX_LIMIT = 600
FLOAT_FEASIBILITY_SLACK = 1e-9
RATIONALIZE_DENOMINATOR = 10**12


@dataclass(frozen=True)
class HalfspaceCert:
    """Certified outer bound <p, h> >= c on every polytope point, or its failure."""

    h: tuple[tuple, tuple, tuple]
    c: object
    min_support_value: object
    valid: bool
    vertex_count: int


def _is_exact(values) -> bool:
    return all(isinstance(x, Rational) for x in values)


def outer_halfspace(t: Tensor3, h, c, tol: float = SUPPORT_TOL) -> HalfspaceCert:
    """Check <(e_i|e_j|e_k), h> >= c on the downward closure of supp(t).

    Exact when h and c are rationals; otherwise plain float comparisons.
    """
    h1, h2, h3 = (tuple(component) for component in h)
    closure = downward_closure(support(t, tol))
    exact = _is_exact(h1 + h2 + h3 + (c,))
    cast = (lambda x: x) if exact else float
    values = [
        cast(h1[i - 1]) + cast(h2[j - 1]) + cast(h3[k - 1]) for (i, j, k) in closure
    ]
    min_value = min(values)
    return HalfspaceCert(
        h=(h1, h2, h3),
        c=c,
        min_support_value=min_value,
        valid=min_value >= cast(c),
        vertex_count=len(values),
    )


def inner_points(t: Tensor3, tol: float = SUPPORT_TOL) -> list[WeylPoint]:
    """Sorted support vertices of a free-support tensor; all lie in the polytope."""
    supp = support(t, tol)
    witness = is_free_support(supp)
    if not witness.verdict:
        raise ValueError(f"support is not free: {witness.offending_pair}")
    return sjamaar_inner_points(supp)


@dataclass(frozen=True)
class HullRefutation:
    outcome: str  # "refuted" | "inconclusive"
    refuting_sample: int | None
    samples_checked: int
    seed: int
    upper_triple: GroupTriple
    support_sizes: list[int]

    @property
    def refuted(self) -> bool:
        return self.outcome == "refuted"


def _unit_triangular(gen: np.random.Generator, n: int, upper: bool) -> np.ndarray:
    strict = gen.standard_normal((n, n)) + 1j * gen.standard_normal((n, n))
    mask = np.triu(np.ones((n, n)), 1) if upper else np.tril(np.ones((n, n)), -1)
    return np.eye(n, dtype=np.complex128) + strict * mask


def _rationalize(x: float) -> Fraction:
    if abs(x) <= 1e-12:
        return Fraction(0)
    return Fraction(x).limit_denominator(RATIONALIZE_DENOMINATOR)


def _hull_contains(supp, dims, point: WeylPoint) -> bool:
    n1, n2, n3 = dims
    vertices = []
    for (i, j, k) in supp:
        vec = [Fraction(0)] * (n1 + n2 + n3)
        vec[i - 1] = Fraction(1)
        vec[n1 + j - 1] = Fraction(1)
        vec[n1 + n2 + k - 1] = Fraction(1)
        vertices.append(vec)
    if len(vertices) <= EXACT_VERTEX_LIMIT:
        target = [_rationalize(x) for comp in point.components for x in comp]
        return in_convex_hull(vertices, target)
    return _hull_contains_float(vertices, point)


def _hull_contains_float(vertices, point: WeylPoint) -> bool:
    # scipy fallback for large vertex sets: minimize the l1 equation defect of
    # a convex combination; feasible iff the defect is negligible.
    from scipy.optimize import linprog

    a_eq = np.array([[float(x) for x in v] for v in vertices]).T
    a_eq = np.vstack([a_eq, np.ones((1, a_eq.shape[1]))])
    b_eq = np.concatenate([point.concatenated(), [1.0]])
    m = a_eq.shape[0]
    a_full = np.hstack([a_eq, np.eye(m), -np.eye(m)])
    cost = np.concatenate([np.zeros(a_eq.shape[1]), np.ones(2 * m)])
    res = linprog(cost, A_eq=a_full, b_eq=b_eq, bounds=(0, None), method="highs")
    return bool(res.success and res.fun <= FLOAT_FEASIBILITY_SLACK)


def hull_refute(
    t: Tensor3,
    p: WeylPoint,
    samples: int = 100,
    seed: int = 0,
    tol: float = SUPPORT_TOL,
) -> HullRefutation:
    """Try to certify p outside the moment polytope of t.

    Draws one random unit-diagonal upper-triangular triple U and tests p for
    membership in conv supp(L U . t) for L ranging over the identity (sample
    0, which realizes the downward-closure outer bound; random dense lower
    triples rarely shrink the hull) followed by `samples` random unit-diagonal
    lower-triangular triples. Any failed membership certifies refutation.
    """
    gen = np.random.Generator(np.random.PCG64(seed))
    dims = t.dims
    u = GroupTriple(*(_unit_triangular(gen, n, upper=True) for n in dims))
    ut = apply(u, t)

    lowers = [GroupTriple(*(np.eye(n) for n in dims))]
    lowers.extend(
        GroupTriple(*(_unit_triangular(gen, n, upper=False) for n in dims))
        for _ in range(samples)
    )

    sizes = []
    for index, lower in enumerate(lowers):
        moved = apply(lower, ut)
        supp = support(moved, tol)
        sizes.append(len(supp))
        if not _hull_contains(supp, dims, p):
            return HullRefutation("refuted", index, index + 1, seed, u, sizes)
    return HullRefutation("inconclusive", None, len(lowers), seed, u, sizes)
