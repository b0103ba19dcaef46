"""Error pairs of approximate joint number-phase measurements.

Covariant phase-space approximators generated by a torus state ``sigma`` have
margin errors equal to the preparation spreads of ``sigma``:

    d1 = sqrt(Q_sigma[2]),   d2 = sqrt(P_sigma[2]),

so tracing ground states of ``(1 - t) P^2 + t Q^2`` over ``t`` traces the
lower boundary of the attainable ``(d1, d2)`` pairs.  Restricting to states
supported on nonnegative Fourier indices gives the number-phase candidates
(ground states of ``(1 - t) N^2 + t Phi[2]``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError
from .observables import (
    DEFAULT_GRID,
    DensityState,
    TorusWindow,
    angle_distribution,
    angle_margin,
    fourier_margin,
)
from .spectral import finite_section_ground, oscillator_torus_ground
from .transport import (
    ProbCircle,
    ProbInt,
    arc_distance,
    second_moment_circle,
    second_moment_int,
    w2_circle,
    w2_integers,
)

DEFAULT_TGRID = tuple(round(0.05 * i, 2) for i in range(1, 20))
BOUNDARY_TORUS_DIMS = (4, 8, 16, 32, 64)
BOUNDARY_FOCK_DIMS = (8, 16, 32, 64)
ERROR_SUM_SLACK = 1e-6


@dataclass(frozen=True)
class ErrorPoint:
    d1: float
    d2: float
    source: str = ""

    def __post_init__(self):
        for v in (self.d1, self.d2):
            if not (math.isfinite(v) and v >= 0):
                raise InvalidInputError(f"error components must be finite and nonnegative, got {v}")

    @property
    def squared_sum(self) -> float:
        return self.d1 ** 2 + self.d2 ** 2


@dataclass
class BoundaryPoint:
    t: float
    point: ErrorPoint
    energy: float
    converged: bool


@dataclass
class BoundaryCurve:
    space: str
    points: list[BoundaryPoint] = field(default_factory=list)

    def is_tradeoff_monotone(self, slack: float = 1e-8) -> bool:
        """``d1`` nonincreasing and ``d2`` nondecreasing along increasing ``t``."""
        pts = sorted(self.points, key=lambda p: p.t)
        for a, b in zip(pts, pts[1:]):
            if b.point.d1 > a.point.d1 + slack or b.point.d2 < a.point.d2 - slack:
                return False
        return True


@dataclass(frozen=True)
class ErrorSumCheck:
    total: float
    bound: float
    satisfied: bool


@lru_cache(maxsize=None)
def oscillator_energy_bound() -> float:
    """Lowest eigenvalue of ``P^2 + Q^2`` on ``L^2(T)`` from the default finite sections."""
    return oscillator_torus_ground().value


def margin_errors_from_sigma(sigma: DensityState, grid: int = DEFAULT_GRID,
                             source: str = "sigma") -> ErrorPoint:
    """Margin errors of the covariant approximator generated by a torus state."""
    if not isinstance(sigma.window, TorusWindow):
        raise InvalidInputError("sigma must live on a torus window")
    q2 = second_moment_circle(angle_margin(sigma, grid))
    p2 = second_moment_int(fourier_margin(sigma))
    return ErrorPoint(math.sqrt(q2), math.sqrt(p2), source)


def error_sum_check(sigma: DensityState, grid: int = DEFAULT_GRID) -> ErrorSumCheck:
    """Compare ``Q_sigma[2] + P_sigma[2]`` against the oscillator ground energy."""
    p = margin_errors_from_sigma(sigma, grid)
    bound = oscillator_energy_bound()
    total = p.squared_sum
    return ErrorSumCheck(total, bound, total >= bound - ERROR_SUM_SLACK)


def embed_fock_vector(vector) -> DensityState:
    """Pure torus state ``V psi`` for a number-state vector ``psi`` (support on ``e_0 .. e_{K-1}``)."""
    v = np.asarray(vector)
    return DensityState.pure(TorusWindow(0, v.size - 1), v)


def trace_boundary(space: str, tgrid: Sequence[float] = DEFAULT_TGRID,
                   dims: Sequence[int] | None = None, grid: int = DEFAULT_GRID) -> BoundaryCurve:
    """Error pairs of the weighted ground states over ``tgrid``.

    For ``space="fock"`` the ground vector is embedded as a torus state
    supported on nonnegative indices, whose margins are the canonical phase
    and number distributions of the vector.
    """
    if any(not (0.0 < t < 1.0) for t in tgrid):
        raise InvalidInputError("tgrid must lie strictly inside (0, 1)")
    if dims is None:
        dims = BOUNDARY_FOCK_DIMS if space == "fock" else BOUNDARY_TORUS_DIMS
    curve = BoundaryCurve(space)
    for t in sorted(tgrid):
        rep = finite_section_ground(space, t, dims)
        if space == "fock":
            sigma = embed_fock_vector(rep.vector)
        else:
            sigma = DensityState.pure(TorusWindow(int(rep.indices[0]), int(rep.indices[-1])), rep.vector)
        pt = margin_errors_from_sigma(sigma, grid, source=f"{space} ground state, t={t:g}")
        curve.points.append(BoundaryPoint(float(t), pt, rep.value, rep.converged))
    return curve


def strict_subset_evidence(tgrid: Sequence[float] = DEFAULT_TGRID,
                           fock_dims: Sequence[int] = BOUNDARY_FOCK_DIMS,
                           torus_dims: Sequence[int] = BOUNDARY_TORUS_DIMS) -> list[tuple[float, float, float, float]]:
    """Weighted ground energies on both spaces and their gap, per ``t``.

    A positive gap means the number-phase candidates sit strictly above the
    torus boundary at that weight.  It is numerical evidence only; it does
    not decide whether the attainable sets differ.
    """
    rows = []
    for t in tgrid:
        if not (0.0 <= t <= 1.0):
            raise InvalidInputError("t must lie in [0, 1]")
        f = finite_section_ground("fock", t, fock_dims).value
        g = finite_section_ground("torus", t, torus_dims).value
        rows.append((float(t), f, g, f - g))
    return rows


# ---------------------------------------------------------------------------
# Diagonal joint observables and their embedding into T x Z
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KernelJoint:
    """Joint observable ``F(X x Y) = sum_n p_n(X) q_n(Y) |n><n|`` on a Fock window.

    ``phase_kernel[n]`` is the angle distribution ``p_n`` and
    ``number_kernel[n]`` the outcome distribution ``q_n`` on Z reported for the
    number state ``|n>``.  With ``q_n = delta_n`` the number margin is sharp.
    """

    phase_kernel: tuple
    number_kernel: tuple

    def __post_init__(self):
        if len(self.phase_kernel) != len(self.number_kernel) or not self.phase_kernel:
            raise InvalidInputError("phase and number kernels must be non-empty and of equal length")
        for p in self.phase_kernel:
            if not isinstance(p, ProbCircle):
                raise InvalidInputError("phase kernel entries must be ProbCircle")
        for q in self.number_kernel:
            if not isinstance(q, ProbInt):
                raise InvalidInputError("number kernel entries must be ProbInt")

    @property
    def dim(self) -> int:
        return len(self.phase_kernel)

    @classmethod
    def sharp_number(cls, phase_kernel: Sequence[ProbCircle]) -> "KernelJoint":
        pk = tuple(phase_kernel)
        return cls(pk, tuple(ProbInt.point(n) for n in range(len(pk))))

    @classmethod
    def smeared(cls, dim: int, phase: ProbCircle, nu: ProbInt) -> "KernelJoint":
        """Constant phase kernel and number margin ``nu * N``."""
        return cls(tuple([phase] * dim), tuple(nu.shifted(n) for n in range(dim)))

    def number_effect_diagonal(self, Y: Iterable[int]) -> np.ndarray:
        """Diagonal of ``F_2(Y)``: ``q_n(Y)`` for each ``n``."""
        Y = set(int(y) for y in Y)
        return np.array([sum(w for k, w in q.atoms.items() if k in Y) for q in self.number_kernel])

    def phase_distribution(self, number_probs) -> ProbCircle:
        """``(F_1)_rho`` for a state with number distribution ``number_probs``."""
        angles, weights = [], []
        for pn, p in zip(number_probs, self.phase_kernel):
            if pn > 0:
                angles.append(p.angles)
                weights.append(pn * p.weights)
        w = np.concatenate(weights)
        return ProbCircle.from_atoms(np.concatenate(angles), w / w.sum())

    def is_constant_phase(self) -> bool:
        p0 = self.phase_kernel[0]
        return all(
            p.angles.shape == p0.angles.shape
            and np.array_equal(p.angles, p0.angles)
            and np.array_equal(p.weights, p0.weights)
            for p in self.phase_kernel[1:]
        )


@dataclass
class EmbeddingReport:
    """Second-margin data of the embedded observable on a torus window."""

    window: TorusWindow
    distributions: dict[int, ProbInt]
    errors: dict[int, float]
    source_errors: dict[int, float]
    sup_embedded: float
    sup_source: float
    max_deviation: float


def embedded_number_margin(F: KernelJoint, Y: Iterable[int], window: TorusWindow) -> np.ndarray:
    """Second margin ``M_2(Y)`` of the embedded observable as a diagonal matrix on the window.

    ``M_2(Y) = V F_2(Y) V* + sum_{n>=1} <n|F_2(-Y)|n> |e_-n><e_-n|``.
    """
    Y = [int(y) for y in Y]
    out = np.zeros(window.dim)
    plus = F.number_effect_diagonal(Y)
    minus = F.number_effect_diagonal([-y for y in Y])
    for k in window.indices:
        if k >= 0:
            out[window.position(k)] = plus[k]
        else:
            out[window.position(k)] = minus[-k]
    return np.diag(out)


def embed_joint_to_z(F: KernelJoint, window: TorusWindow | None = None) -> EmbeddingReport:
    """Second-margin distributions ``p_{e_k}`` of the embedded observable and their errors.

    Each distribution is read off the diagonal of :func:`embedded_number_margin`
    on singletons; its W2 distance to ``delta_k`` is compared with the error of
    the source observable in the number state ``| |k| >``.
    """
    K = F.dim
    if window is None:
        window = TorusWindow.symmetric(K - 1)
    if window.kmax > K - 1 or -window.kmin > K - 1:
        raise InvalidInputError(
            f"window [{window.kmin}, {window.kmax}] needs number states beyond the kernel dimension {K}"
        )
    outcomes = set()
    for q in F.number_kernel:
        outcomes.update(int(v) for v in q.support)
        outcomes.update(-int(v) for v in q.support)
    outcomes = sorted(outcomes)
    diag = np.array([np.diag(embedded_number_margin(F, [l], window)) for l in outcomes])

    dists, errors, source = {}, {}, {}
    for k in window.indices:
        col = diag[:, window.position(k)]
        dists[int(k)] = ProbInt.from_atoms(outcomes, col / col.sum())
        errors[int(k)] = w2_integers(dists[int(k)], ProbInt.point(int(k)))
    for n in range(K):
        source[n] = w2_integers(F.number_kernel[n], ProbInt.point(n))
    deviation = max(abs(errors[k] - source[abs(k)]) for k in errors)
    used = sorted(set(abs(k) for k in errors))
    return EmbeddingReport(
        window=window,
        distributions=dists,
        errors=errors,
        source_errors=source,
        sup_embedded=max(errors.values()),
        sup_source=max(source[n] for n in used),
        max_deviation=deviation,
    )


# ---------------------------------------------------------------------------
# Phase error of kernel joints
# ---------------------------------------------------------------------------

@dataclass
class PhaseErrorBounds:
    """``lower`` is a probe-family lower bound; ``exact`` is set only for constant kernels."""

    lower: float
    exact: float | None
    probes: int


def constant_kernel_phase_error(p: ProbCircle) -> float:
    """Error of ``M_1(X) = p(X) I`` as an approximation of the canonical phase.

    The worst case is a phase distribution concentrated at a point ``x``, so the
    error is ``max_x sqrt(int d(t, x)^2 dp(t))``.  The integrand is a convex
    quadratic in ``x`` between antipodes of consecutive atoms, so the maximum
    sits at one of those antipodes.
    """
    xs = p.angles + math.pi
    d = arc_distance(p.angles[None, :], xs[:, None])
    return math.sqrt(float(np.max((d * d) @ p.weights)))


def phase_localized_vector(theta: float, dim: int) -> np.ndarray:
    return np.exp(1j * theta * np.arange(dim)) / math.sqrt(dim)


def kernel_joint_phase_error_bounds(F: KernelJoint, n_angles: int = 16,
                                    grid: int = 512) -> PhaseErrorBounds:
    """Bounds on ``d(F_1, Phi)``.

    Constant kernels get the exact value.  In every case a lower bound is
    computed as the largest W2 distance between ``(F_1)_rho`` and ``Phi_rho``
    over phase-localized states ``sum_n exp(i n theta) |n> / sqrt(K)`` at
    ``n_angles`` equally spaced ``theta`` and over the number states.
    """
    K = F.dim
    lower, count = 0.0, 0
    for j in range(n_angles):
        psi = phase_localized_vector(2 * math.pi * j / n_angles, K)
        rho = np.outer(psi, psi.conj())
        m1 = F.phase_distribution(np.abs(psi) ** 2)
        lower = max(lower, w2_circle(m1, angle_distribution(rho, grid)))
        count += 1
    uniform = ProbCircle.from_atoms(
        2 * math.pi * (np.arange(grid) + 0.5) / grid, np.full(grid, 1.0 / grid)
    )
    for n in range(K):
        lower = max(lower, w2_circle(F.phase_kernel[n], uniform))
        count += 1
    exact = constant_kernel_phase_error(F.phase_kernel[0]) if F.is_constant_phase() else None
    return PhaseErrorBounds(lower, exact, count)
