"""Kempf-Ness gradient flow dT/dt = -mu(T) * T and the Ness fixed-point test.

The flow is integrated projectively: the tensor is renormalized to unit norm
after every accepted step, and convergence is declared on the projective
gradient residual |mu(T) * T - lambda T|, since only the projective limit is
guaranteed to exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .moment import HermTriple, infinitesimal_action, moment_map
from .tensor import Tensor3, inner, norm, normalized, support

DEFAULT_STEP = 0.05
DEFAULT_RESIDUAL_TOL = 1e-8
DEFAULT_MAX_STEPS = 200_000
# Allowed per-step increase of |mu| before the integrator halves the step;
# well below the 1e-8 monotonicity slack, above rounding noise.
MONOTONICITY_SLACK = 1e-12
MAX_HALVINGS = 60


@dataclass(frozen=True)
class NessCertificate:
    """Fixed-point data: lambda, the scaled gradient residual, and mu itself.

    A residual below tolerance certifies exp(t mu(T)) . T = e^{lambda t} T,
    hence that |mu(T)| is minimal over the moment polytope of T.
    """

    lam: float
    residual: float
    mu: HermTriple

    def holds(self, tol: float) -> bool:
        return self.residual <= tol


@dataclass(frozen=True)
class FlowResult:
    limit: Tensor3
    steps: int
    final_residual: float
    mu_norm_trajectory: list[float]
    converged: bool
    snapshots: list[Tensor3] = field(default_factory=list)


def _gradient(t: Tensor3) -> tuple[Tensor3, float, HermTriple]:
    """Projective gradient mu(T)*T - lambda T at a unit-norm tensor."""
    mu = moment_map(t)
    action = infinitesimal_action(mu, t)
    lam = inner(t, action).real / norm(t) ** 2
    grad = Tensor3(action.entries - lam * t.entries)
    return grad, lam, mu


def ness_minimality(t: Tensor3, tol: float = 1e-10) -> NessCertificate:
    if norm(t) == 0.0:
        raise ValueError("ness_minimality requires a nonzero tensor")
    grad, lam, mu = _gradient(t)
    return NessCertificate(lam=lam, residual=norm(grad) / norm(t), mu=mu)


def _rk4_step(t: Tensor3, dt: float) -> Tensor3:
    def f(x: Tensor3) -> np.ndarray:
        return -infinitesimal_action(moment_map(x), x).entries

    k1 = f(t)
    k2 = f(Tensor3(t.entries + 0.5 * dt * k1))
    k3 = f(Tensor3(t.entries + 0.5 * dt * k2))
    k4 = f(Tensor3(t.entries + dt * (k3)))
    return Tensor3(t.entries + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def flow(
    t: Tensor3,
    step_size: float = DEFAULT_STEP,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    max_steps: int = DEFAULT_MAX_STEPS,
    snapshot_every: int | None = None,
) -> FlowResult:
    """Integrate the flow until the projective gradient residual drops below
    residual_tol; non-convergence is reported in the result, not raised.

    The step is halved whenever |mu| would increase beyond integrator noise
    and is allowed to recover after a run of accepted steps.
    """
    if norm(t) == 0.0:
        raise ValueError("flow requires a nonzero tensor")
    current = normalized(t)
    mu_norm = moment_map(current).frobenius_norm()
    trajectory = [mu_norm]
    snapshots = [current] if snapshot_every else []
    dt = step_size
    streak = 0

    residual = ness_minimality(current).residual
    steps = 0
    while residual > residual_tol and steps < max_steps:
        halvings = 0
        while True:
            candidate = normalized(_rk4_step(current, dt))
            candidate_mu_norm = moment_map(candidate).frobenius_norm()
            if candidate_mu_norm <= mu_norm + MONOTONICITY_SLACK or halvings >= MAX_HALVINGS:
                break
            dt *= 0.5
            halvings += 1
            streak = 0
        current = candidate
        mu_norm = candidate_mu_norm
        steps += 1
        trajectory.append(mu_norm)
        if snapshot_every and steps % snapshot_every == 0:
            snapshots.append(current)
        streak = 0 if halvings else streak + 1
        if streak >= 10 and dt < step_size:
            dt = min(2.0 * dt, step_size)
            streak = 0
        residual = ness_minimality(current).residual

    return FlowResult(
        limit=current,
        steps=steps,
        final_residual=residual,
        mu_norm_trajectory=trajectory,
        converged=residual <= residual_tol,
        snapshots=snapshots,
    )


def support_never_grew(result: FlowResult, initial: Tensor3, tol: float = 1e-9) -> bool:
    """Whether every recorded snapshot stays inside the initial exact support."""
    start = support(initial, 0.0)
    return all(support(snap, tol).issubset(start) for snap in result.snapshots)
