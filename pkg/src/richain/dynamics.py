"""Closed-form dynamics of the two-temperature chain model.

The initial state is a product of one thermal mode at beta0 (the
distinguished mode) and N chain modes at beta.  Interaction steps act on
characteristic-function arguments by the one-step matrices of `kernel`,
so the state never leaves the rank-one corrected quasi-free family: the
only moving part is the coefficient vector xi_m picked up by the
distinguished component.  Reduced states, effective temperatures and
entropies all read off that vector.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .kernel import ModelParams, step_scalars
from .quasifree import (
    RankOneQuasiFreeState,
    beta_from_x,
    char_fn,
    gibbs_x,
    occupation,
    state_entropy,
)

__all__ = [
    "EvolvedState",
    "SubsystemSelector",
    "evolve_state",
    "reduced_char_fn",
    "effective_beta_S",
    "effective_beta_Sm",
    "total_entropy",
    "relative_entropy",
    "entropy_production_limit",
    "window_state",
    "window_overlap_norm_sq",
    "window_entropy",
]

_NORM_TOL = 1e-12
# below this, 1 - |z|^2 is treated as zero and geometric sums are taken termwise
_GEOM_DEGENERATE = 1e-9


def _first_row(params: ModelParams, m: int) -> np.ndarray:
    """Coefficients c_j with (U_1...U_m zeta)_0 = sum_j c_j zeta_j."""
    s = step_scalars(params)
    gz = s.g * s.z
    row = np.zeros(params.N + 1, dtype=complex)
    row[0] = gz**m
    if m >= 1:
        j = np.arange(1, m + 1)
        row[1 : m + 1] = s.g * s.w * gz ** (j - 1)
    row *= cmath.exp(1j * m * params.tau * params.eps)
    return row


@dataclass(frozen=True)
class EvolvedState:
    """State after m completed interaction steps."""

    m: int
    state: RankOneQuasiFreeState

    def __post_init__(self):
        norm = self.state.xi_norm_sq
        if abs(norm - 1.0) > _NORM_TOL * max(1.0, math.sqrt(self.m)):
            raise ValueError(
                f"xi_m must stay a unit vector, got <xi,xi> = {norm!r} at m = {self.m}"
            )


@dataclass(frozen=True)
class SubsystemSelector:
    """Which marginal of the evolved state to take, and at which step.

    kind "S" is the distinguished mode after m steps; "S1" and "Sm" are
    single chain modes 1 and m; "S_plus_Sm" pairs the distinguished mode
    with mode m; "Smn_plus_Sm" pairs modes m-n and m (alphas in that
    order); "window" is the distinguished mode plus the n most recently
    hit chain modes at step m, ordered oldest first (mode k-n+1 ... k
    with k = m).
    """

    kind: str
    m: int
    n: int | None = None

    _KINDS = ("S", "S1", "Sm", "S_plus_Sm", "Smn_plus_Sm", "window")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown selector kind {self.kind!r}")
        if self.kind == "window":
            if self.n is None or not 0 <= self.n <= self.m:
                raise ValueError(f"window requires 0 <= n <= m, got n={self.n}, m={self.m}")
        elif self.kind == "Smn_plus_Sm":
            if self.n is None or not 1 < self.m - self.n < self.m:
                raise ValueError(
                    f"Smn_plus_Sm requires 1 < m-n < m, got n={self.n}, m={self.m}"
                )
        else:
            if self.n is not None:
                raise ValueError(f"selector {self.kind} takes no n index")
            floor = 0 if self.kind == "S" else 1
            if self.m < floor:
                raise ValueError(f"selector {self.kind} requires m >= {floor}")

    @property
    def arity(self) -> int:
        if self.kind in ("S", "S1", "Sm"):
            return 1
        if self.kind == "window":
            return self.n + 1
        return 2

    def slots(self) -> list[int]:
        """Full-chain slot indices of the marginal, in local order."""
        if self.kind == "S":
            return [0]
        if self.kind == "S1":
            return [1]
        if self.kind == "Sm":
            return [self.m]
        if self.kind == "S_plus_Sm":
            return [0, self.m]
        if self.kind == "Smn_plus_Sm":
            return [self.m - self.n, self.m]
        return [0] + list(range(self.m - self.n + 1, self.m + 1))


def evolve_state(params: ModelParams, m: int) -> EvolvedState:
    """State after the first m interaction steps, in closed form.

    The characteristic function is exp[-(1/4)(x(beta)<zeta,zeta> +
    (x(beta0)-x(beta))|(U_1...U_m zeta)_0|^2)]; m = 0 gives back the
    initial product.
    """
    if not 0 <= m <= params.N:
        raise ValueError(f"steps m must lie in 0..{params.N}, got {m}")
    x = gibbs_x(params.beta)
    x0 = gibbs_x(params.beta0) - x
    xi = np.conj(_first_row(params, m))
    return EvolvedState(
        m=m, state=RankOneQuasiFreeState(modes=params.N + 1, x=x, x0=x0, xi=xi)
    )


def reduced_char_fn(params: ModelParams, selector: SubsystemSelector, alphas) -> complex:
    """Characteristic function of the selected marginal at its local arguments.

    Marginals of quasi-free states are evaluated by zero-padding the
    local Weyl arguments into the full chain, so every selector runs
    through one code path and marginalization consistency is structural.
    """
    alphas = np.atleast_1d(np.asarray(alphas, dtype=complex))
    if alphas.shape != (selector.arity,):
        raise ValueError(
            f"selector {selector.kind} takes {selector.arity} argument(s), "
            f"got shape {alphas.shape}"
        )
    if selector.m > params.N:
        raise ValueError(f"selector step m={selector.m} exceeds N={params.N}")
    full = np.zeros(params.N + 1, dtype=complex)
    full[selector.slots()] = alphas
    return complex(char_fn(evolve_state(params, selector.m).state, full))


def effective_beta_S(params: ModelParams, m: int) -> float:
    """Inverse temperature beta* with x(beta*) = |z|^2m x(beta0) + (1-|z|^2m) x(beta)."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    zsq = abs(step_scalars(params).z) ** 2
    xs = zsq**m * gibbs_x(params.beta0) + (1.0 - zsq**m) * gibbs_x(params.beta)
    return beta_from_x(xs)


def effective_beta_Sm(params: ModelParams, m: int) -> float:
    """Inverse temperature beta** of chain mode m after its interaction step.

    x(beta**) mixes x(beta0) with weight |w|^2 |z|^(2(m-1)) into x(beta);
    equivalently it is the |w|^2-mix of x(beta*((m-1)tau)) and x(beta).
    """
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    s = step_scalars(params)
    weight = abs(s.w) ** 2 * abs(s.z) ** (2 * (m - 1))
    xss = weight * gibbs_x(params.beta0) + (1.0 - weight) * gibbs_x(params.beta)
    return beta_from_x(xss)


def total_entropy(params: ModelParams, m: int) -> float:
    """Entropy of the full (N+1)-mode state after m steps; equals N s(beta) + s(beta0)."""
    return state_entropy(evolve_state(params, m).state).total


def relative_entropy(params: ModelParams, n_steps: int) -> float:
    """Entropy production Ent(rho(N tau)|rho) after n_steps interactions.

    Closed form: (beta0-beta)(n_beta - n_beta0) (1 - |z|^(2 n_steps)),
    written with mean occupations so large beta cannot overflow.
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be nonnegative, got {n_steps}")
    if math.isinf(params.beta0) or math.isinf(params.beta):
        raise ValueError("relative entropy needs finite beta0 and beta")
    prefactor = (params.beta0 - params.beta) * (
        occupation(params.beta) - occupation(params.beta0)
    )
    zsq = abs(step_scalars(params).z) ** 2
    return prefactor * (1.0 - zsq**n_steps)


def entropy_production_limit(params: ModelParams) -> float:
    """Asymptotic entropy production (beta-beta0)(n_beta0 - n_beta) as steps grow."""
    if math.isinf(params.beta0) or math.isinf(params.beta):
        raise ValueError("entropy production limit needs finite beta0 and beta")
    if abs(step_scalars(params).z) >= 1.0:
        raise ValueError("no convergence: |z| must be strictly below 1")
    return (params.beta - params.beta0) * (
        occupation(params.beta0) - occupation(params.beta)
    )


def window_state(params: ModelParams, n: int, k: int) -> RankOneQuasiFreeState:
    """Reduced state of the distinguished mode plus chain modes k-n+1..k at step k.

    Local mode 0 is the distinguished mode; local modes 1..n are the
    window chain modes oldest first.  The correction vector has
    components conj(phase (gz)^k) and conj(phase g w (gz)^(k-n+i-1)).
    """
    if not 0 <= n <= k <= params.N:
        raise ValueError(f"window needs 0 <= n <= k <= N, got n={n}, k={k}, N={params.N}")
    s = step_scalars(params)
    gz = s.g * s.z
    phase = cmath.exp(1j * k * params.tau * params.eps)
    coeff = np.zeros(n + 1, dtype=complex)
    coeff[0] = phase * gz**k
    if n >= 1:
        i = np.arange(1, n + 1)
        coeff[1:] = phase * s.g * s.w * gz ** (k - n + i - 1)
    x = gibbs_x(params.beta)
    return RankOneQuasiFreeState(
        modes=n + 1, x=x, x0=gibbs_x(params.beta0) - x, xi=np.conj(coeff)
    )


def window_overlap_norm_sq(params: ModelParams, n: int, k: int) -> float:
    """Closed form of <xi_{n,k}, xi_{n,k}> for the window state.

    |z|^2k + |w|^2 |z|^(2(k-n)) (1-|z|^2n)/(1-|z|^2), with the geometric
    sum taken termwise when |z| is within 1e-9 of 1.
    """
    if not 0 <= n <= k <= params.N:
        raise ValueError(f"window needs 0 <= n <= k <= N, got n={n}, k={k}, N={params.N}")
    s = step_scalars(params)
    zsq = abs(s.z) ** 2
    wsq = abs(s.w) ** 2
    if abs(1.0 - zsq) < _GEOM_DEGENERATE:
        geom = float(n)
    else:
        geom = (1.0 - zsq**n) / (1.0 - zsq)
    return zsq**k + wsq * zsq ** (k - n) * geom


def window_entropy(params: ModelParams, n: int, k: int) -> float:
    """Entropy n sigma(x(beta)) + sigma(x(beta) + <xi,xi>(x(beta0)-x(beta))).

    As k grows at fixed n this tends to (n+1) sigma(x(beta)), the entropy
    of an n+1-mode thermal block at beta.
    """
    return state_entropy(window_state(params, n, k)).total
