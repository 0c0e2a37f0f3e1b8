"""Exact rational data of the staircase family: the support Gamma_n, the
halfspace (h, c), the target spectrum q, and the coefficient data b, w^2.

Everything in this module is computed over the rationals and every identity
is checked without tolerance; square roots are taken only when tensors are
actually built (see construct).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .supports import downward_closure
from .tensor import SupportSet, Triple, support_set

Rational = Fraction
RationalVec = tuple[Fraction, ...]


class FamilyInvariantError(AssertionError):
    """An exact identity of the family data failed; indicates a bug."""


def gamma_support(n: int) -> SupportSet:
    """The staircase support: i + j = n+1 on the first n-1 slices, i + j = n on the last."""
    if n < 2:
        raise ValueError("gamma_support requires n >= 2")
    triples = {(i, n + 1 - i, k) for i in range(1, n + 1) for k in range(1, n)}
    triples |= {(i, n - i, n) for i in range(1, n)}
    return support_set((n, n, n), triples)


@dataclass(frozen=True)
class FamilyData:
    """All rational constants attached to one member of the family."""

    n: int
    h: tuple[RationalVec, RationalVec, RationalVec]
    c: Fraction
    norm_h_sq: Fraction
    q: tuple[RationalVec, RationalVec, RationalVec]
    b: RationalVec
    w_sq: RationalVec
    lambda_W: Fraction

    @property
    def d(self) -> RationalVec:
        """Diagonal entries q2_j - b_j of the Gram matrix W W*."""
        return tuple(q2j - bj for q2j, bj in zip(self.q[1], self.b))

    @property
    def q_norm_sq(self) -> Fraction:
        return sum((x * x for qi in self.q for x in qi), Fraction(0))

    @property
    def ness_lambda(self) -> Fraction:
        """Constant weight pairing over Gamma_n, equal to 3/n + c^2/|h|^2."""
        return Fraction(3, self.n) + self.c * self.c / self.norm_h_sq


def _pairing(h: tuple[RationalVec, ...], triple: Triple) -> Fraction:
    i, j, k = triple
    return h[0][i - 1] + h[1][j - 1] + h[2][k - 1]


def family_data(n: int) -> FamilyData:
    if n < 2:
        raise ValueError("family_data requires n >= 2")
    half = Fraction(n - 1, 2)
    h12 = tuple(half - i for i in range(n))
    h3 = tuple(Fraction(1, n) - (1 if i == n - 1 else 0) for i in range(n))
    h = (h12, h12, h3)
    c = Fraction(1, n)
    norm_h_sq = 2 * sum(x * x for x in h12) + sum(x * x for x in h3)

    u = Fraction(1, n)
    q = tuple(tuple(u + c * x / norm_h_sq for x in hi) for hi in h)
    q1, q2, q3 = q

    b = []
    acc = Fraction(0)
    for j in range(1, n + 1):
        acc += q2[j - 1] - q1[n - j]
        b.append(acc)
    b = tuple(b)

    lambda_w = (1 - q3[n - 1]) / (n - 1)
    w_sq = tuple(lambda_w - q2j + bj for q2j, bj in zip(q2, b))

    data = FamilyData(n, h, c, norm_h_sq, q, b, w_sq, lambda_w)
    _validate(data)
    return data


def _validate(data: FamilyData) -> None:
    n = data.n
    q1, q2, q3 = data.q
    b, w_sq = data.b, data.w_sq
    checks: list[tuple[str, bool]] = []

    checks.append(("norm_h_sq closed form",
                   data.norm_h_sq == Fraction(n * (n * n - 1), 6) + Fraction(n - 1, n)))
    checks.append(("b_n = 0", b[n - 1] == 0))
    checks.append(("b_j > 0 for j < n", all(bj > 0 for bj in b[: n - 1])))
    checks.append(("sum b = (q3)_n", sum(b[: n - 1], Fraction(0)) == q3[n - 1]))
    shift_ok = all(
        q2[j - 1] - b[j - 1] == q1[n - j] - (b[j - 2] if j >= 2 else Fraction(0))
        for j in range(1, n + 1)
    )
    checks.append(("shift identity", shift_ok))
    checks.append(("0 <= q2_j - b_j < lambda",
                   all(0 <= dj < data.lambda_W for dj in data.d)))
    checks.append(("w_sq = lambda - q2 + b >= 0",
                   all(wj == data.lambda_W - dj and wj >= 0 for wj, dj in zip(w_sq, data.d))))
    checks.append(("q components sum to 1",
                   all(sum(qi, Fraction(0)) == 1 for qi in data.q)))
    checks.append(("q nonnegative non-increasing",
                   all(all(x >= 0 for x in qi)
                       and all(qi[i] >= qi[i + 1] for i in range(n - 1))
                       for qi in data.q)))
    checks.append(("q1 = q2 strictly decreasing",
                   q1 == q2 and all(q1[i] > q1[i + 1] for i in range(n - 1))))
    checks.append(("q3 flat then small",
                   all(x == data.lambda_W for x in q3[: n - 1]) and q3[n - 1] < Fraction(1, n)))
    checks.append(("<q, h> = c", sum(
        (hx * qx for hi, qi in zip(data.h, data.q) for hx, qx in zip(hi, qi)),
        Fraction(0)) == data.c))
    checks.append(("|q|^2 = 3/n + c^2/|h|^2", data.q_norm_sq == data.ness_lambda))
    pairing_ok = all(
        _pairing(data.q, triple) == data.q_norm_sq for triple in gamma_support(n)
    )
    checks.append(("<(e_i|e_j|e_k), q> constant on Gamma_n", pairing_ok))

    failed = [name for name, ok in checks if not ok]
    if failed:
        raise FamilyInvariantError(f"n={n}: failed {failed}")


@dataclass(frozen=True)
class HalfspaceReport:
    """Exact verification of <p, h> >= c over the downward closure of Gamma_n."""

    n: int
    c: Fraction
    min_value: Fraction
    valid: bool
    equality_set: SupportSet
    equals_gamma: bool
    checked: int


def halfspace_check(n: int) -> HalfspaceReport:
    data = family_data(n)
    gamma = gamma_support(n)
    closure = downward_closure(gamma)
    values = {triple: _pairing(data.h, triple) for triple in closure}
    min_value = min(values.values())
    equality = support_set((n, n, n), (t for t, v in values.items() if v == data.c))
    return HalfspaceReport(
        n=n,
        c=data.c,
        min_value=min_value,
        valid=min_value >= data.c,
        equality_set=equality,
        equals_gamma=equality.triples == gamma.triples,
        checked=len(values),
    )


# --- JSON serialization (rationals as decimal strings) ----------------------


def _rat_doc(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _vec_doc(v: RationalVec) -> list[dict]:
    return [_rat_doc(x) for x in v]


def family_to_doc(data: FamilyData) -> dict:
    return {
        "n": data.n,
        "h": [_vec_doc(hi) for hi in data.h],
        "c": _rat_doc(data.c),
        "norm_h_sq": _rat_doc(data.norm_h_sq),
        "q": [_vec_doc(qi) for qi in data.q],
        "b": _vec_doc(data.b),
        "w_sq": _vec_doc(data.w_sq),
        "lambda_W": _rat_doc(data.lambda_W),
        "ness_lambda": _rat_doc(data.ness_lambda),
    }
