"""Closed-form one-step and multi-step propagator algebra.

A single oscillator mode S (energy E) interacts with a chain of N fresh
oscillator modes, one per time slice of length tau.  During step n the
bilinear coupling eta*(b0* bn + bn* b0) is active and everything else
evolves freely.  Each step acts on the one-particle space C^(N+1) as a
unitary that mixes only slots 0 and n; the whole algebra of the model
reduces to three scalars per step:

    g(t) = exp(i t (E - eps) / 2)
    w(t) = (2 i eta / r) * sin(t * sqrt((E - eps)^2 / 4 + eta^2))
    z(t) = cos(t * sqrt(...)) + (i (E - eps) / r) * sin(t * sqrt(...))

with r = sqrt((E - eps)^2 + 4 eta^2).  They satisfy |g| = 1,
|z|^2 + |w|^2 = 1 and w purely imaginary, which makes the step matrix
unitary and every m-step product expressible in closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ModelParams",
    "StepScalars",
    "StepMatrix",
    "PropagatedVector",
    "MatrixExpCheck",
    "HypothesisReport",
    "step_scalars",
    "step_matrix",
    "matrix_exponential_check",
    "normal_modes",
    "propagate_vector",
    "validate_hypotheses",
]


def _check_beta(name: str, value: float) -> None:
    # +inf is the vacuum and is a legal distinguished value
    if not (value > 0.0):
        raise ValueError(f"{name} must lie in (0, +inf], got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Physical and run parameters of the chain model.

    E, eps      mode energies of S and of each chain mode (both > 0)
    eta         coupling strength (>= 0, and eta^2 <= E*eps for stability)
    tau         duration of one interaction step (> 0)
    N           number of chain modes (>= 1)
    beta0, beta inverse temperatures of S and of the chain, in (0, +inf]
    """

    E: float
    eps: float
    eta: float
    tau: float
    N: int
    beta0: float
    beta: float

    def __post_init__(self):
        if not (self.E > 0.0):
            raise ValueError(f"E must be > 0, got {self.E!r}")
        if not (self.eps > 0.0):
            raise ValueError(f"eps must be > 0, got {self.eps!r}")
        if not (self.eta >= 0.0):
            raise ValueError(f"eta must be >= 0, got {self.eta!r}")
        if not (self.tau > 0.0):
            raise ValueError(f"tau must be > 0, got {self.tau!r}")
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        _check_beta("beta0", self.beta0)
        _check_beta("beta", self.beta)
        # stability condition: the two normal-mode frequencies stay >= 0
        if self.eta**2 > self.E * self.eps:
            raise ValueError(
                f"unstable parameters: eta^2 = {self.eta**2} exceeds "
                f"E*eps = {self.E * self.eps}"
            )

    @property
    def h5_operative(self) -> bool:
        """Whether |w(tau)| < 1 and |z(tau)| < 1 (strictly).

        All convergence statements of the model need this; the step
        algebra itself does not.
        """
        s = step_scalars(self)
        return abs(s.w) < 1.0 and abs(s.z) < 1.0


@dataclass(frozen=True)
class StepScalars:
    """The scalar triple (g, w, z) of one interaction step."""

    g: complex
    w: complex
    z: complex


@dataclass(frozen=True)
class StepMatrix:
    """One-step matrix V_n on C^(N+1); differs from identity only in rows/cols {0, n}."""

    n: int
    entries: np.ndarray


@dataclass(frozen=True)
class PropagatedVector:
    """Image of a vector under m completed interaction steps."""

    m: int
    components: np.ndarray


@dataclass(frozen=True)
class MatrixExpCheck:
    """Deviation report for the generator identity exp(i*t*Y_n) = U_n(t)."""

    deviation: float
    x_square_identity: float
    jx_identity: float


@dataclass(frozen=True)
class HypothesisReport:
    """Pass/fail record for the stability and contraction hypotheses."""

    h4_stable: bool
    h5_sufficient: bool
    h5_operative: bool
    abs_w: float
    abs_z: float
    convergence_valid: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "convergence_valid", self.h5_operative)


def step_scalars(params: ModelParams, t: float | None = None) -> StepScalars:
    """Evaluate (g, w, z) at time t (default: one step, t = tau)."""
    if t is None:
        t = params.tau
    E, eps, eta = params.E, params.eps, params.eta
    half = (E - eps) / 2.0
    omega = math.hypot(half, eta)
    r = 2.0 * omega
    g = cmath.exp(1j * t * half)
    c = math.cos(t * omega)
    s = math.sin(t * omega)
    if r == 0.0:
        # E = eps and eta = 0: free identical modes, w has a removable 0/0
        return StepScalars(g=g, w=0j, z=complex(c, 0.0))
    w = (2j * eta / r) * s
    z = complex(c, (E - eps) / r * s)
    return StepScalars(g=g, w=w, z=z)


def step_matrix(params: ModelParams, n: int, t: float | None = None) -> StepMatrix:
    """Matrix V_n(t) of the step where chain slot n interacts.

    The unitary of the full step is exp(i*t*eps) * V_n(t); the global
    phase is left to callers so that V stays a one-parameter group.
    """
    if not 1 <= n <= params.N:
        raise ValueError(f"slot index n must satisfy 1 <= n <= {params.N}, got {n}")
    s = step_scalars(params, t)
    dim = params.N + 1
    V = np.eye(dim, dtype=complex)
    V[0, 0] = s.g * s.z
    V[0, n] = s.g * s.w
    V[n, 0] = s.g * s.w
    V[n, n] = s.g * s.z.conjugate()
    return StepMatrix(n=n, entries=V)


def normal_modes(params: ModelParams) -> tuple[float, float]:
    """The two coupled-mode frequencies (eps0, eps1), eps0 >= eps1.

    eps1 >= 0 exactly when eta^2 <= E*eps, which ModelParams enforces.
    """
    E, eps, eta = params.E, params.eps, params.eta
    root = math.hypot(E - eps, 2.0 * eta)
    return ((E + eps) + root) / 2.0, ((E + eps) - root) / 2.0


def matrix_exponential_check(
    params: ModelParams, n: int, t: float | None = None
) -> MatrixExpCheck:
    """Exponentiate the Hermitian step generator and compare with the closed form.

    Builds Y_n = eps*I + ((E-eps)/2)*J_n + X_n, where J_n marks the two
    interacting slots and X_n carries the detuning and coupling, then
    computes exp(i*t*Y_n) by eigendecomposition and reports the largest
    entrywise deviation from exp(i*t*eps)*V_n(t).  Also reports how well
    the algebraic identities X_n^2 = ((E-eps)^2/4 + eta^2)*J_n and
    J_n X_n = X_n hold.
    """
    if t is None:
        t = params.tau
    if not 1 <= n <= params.N:
        raise ValueError(f"slot index n must satisfy 1 <= n <= {params.N}, got {n}")
    E, eps, eta = params.E, params.eps, params.eta
    dim = params.N + 1
    half = (E - eps) / 2.0

    J = np.zeros((dim, dim))
    J[0, 0] = 1.0
    J[n, n] = 1.0
    X = np.zeros((dim, dim))
    X[0, 0] = half
    X[n, n] = -half
    X[0, n] = eta
    X[n, 0] = eta
    Y = eps * np.eye(dim) + half * J + X

    x_sq_dev = float(np.max(np.abs(X @ X - (half**2 + eta**2) * J)))
    jx_dev = float(np.max(np.abs(J @ X - X)))

    vals, vecs = np.linalg.eigh(Y)
    expY = (vecs * np.exp(1j * t * vals)) @ vecs.conj().T
    U = cmath.exp(1j * t * eps) * step_matrix(params, n, t).entries
    dev = float(np.max(np.abs(expY - U)))
    return MatrixExpCheck(deviation=dev, x_square_identity=x_sq_dev, jx_identity=jx_dev)


def propagate_vector(params: ModelParams, m: int, zeta: np.ndarray) -> PropagatedVector:
    """Apply the first m interaction steps to a vector, in closed form.

    Returns U_1 ... U_m zeta, where U_j = exp(i*tau*eps) * V_j is the
    one-particle unitary of step j.  The component formula is piecewise
    in k (already-visited slots, the current slot, untouched slots) and
    costs O(N) instead of m matrix products; the Euclidean norm is
    preserved.
    """
    if not 1 <= m <= params.N:
        raise ValueError(f"step count m must satisfy 1 <= m <= {params.N}, got {m}")
    zeta = np.asarray(zeta, dtype=complex)
    if zeta.shape != (params.N + 1,):
        raise ValueError(
            f"zeta must have length N+1 = {params.N + 1}, got shape {zeta.shape}"
        )
    s = step_scalars(params)
    g, w, z = s.g, s.w, s.z
    gz = g * z
    gzbar = g * z.conjugate()
    phase = cmath.exp(1j * m * params.tau * params.eps)

    # suffix sums T[k] = sum_{j=k+1..m} (gz)^(j-k-1) * zeta[j]
    T = np.zeros(m + 1, dtype=complex)
    for k in range(m - 1, -1, -1):
        T[k] = zeta[k + 1] + gz * T[k + 1]

    out = np.empty(params.N + 1, dtype=complex)
    out[0] = gz**m * zeta[0] + g * w * T[0]
    if m > 1:
        ks = np.arange(1, m)
        out[1:m] = g * w * gz ** (m - ks) * zeta[0] + gzbar * zeta[1:m] + (g * w) ** 2 * T[1:m]
    out[m] = g * w * zeta[0] + gzbar * zeta[m]
    out[m + 1 :] = zeta[m + 1 :]
    out *= phase
    return PropagatedVector(m=m, components=out)


def validate_hypotheses(params: ModelParams) -> HypothesisReport:
    """Report the stability condition and both forms of the contraction condition.

    h4_stable:     eta^2 <= E*eps (guaranteed by construction, re-measured here)
    h5_sufficient: tau * sqrt((E-eps)^2/4 + eta^2) < pi/2, a sufficient
                   criterion for the operative one
    h5_operative:  |w| < 1 and |z| < 1, what convergence statements use

    A failing h5 does not make the step algebra invalid, it only voids
    every infinite-time claim.
    """
    s = step_scalars(params)
    omega = math.hypot((params.E - params.eps) / 2.0, params.eta)
    return HypothesisReport(
        h4_stable=params.eta**2 <= params.E * params.eps,
        h5_sufficient=params.tau * omega < math.pi / 2.0,
        h5_operative=abs(s.w) < 1.0 and abs(s.z) < 1.0,
        abs_w=abs(s.w),
        abs_z=abs(s.z),
    )
