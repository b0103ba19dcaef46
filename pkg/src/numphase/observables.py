"""Truncated operators for the number-phase pair.

Two kinds of truncation window are used.  A :class:`FockWindow` of size ``K``
spans the number states ``|0>, ..., |K-1>``; a :class:`TorusWindow` spans the
Fourier basis ``e_kmin, ..., e_kmax`` of ``L^2(T)`` with ``e_k(t) = exp(-ikt)``.
In both bases the canonical phase effects and the position effects on the
torus have the same Toeplitz kernel

    entry(m, n) = int_X exp(i (m - n) t) dt / 2 pi,

so every constructor below reduces to filling a Hermitian Toeplitz matrix.
Truncated effects are compressions ``P_K E P_K`` of the infinite matrices,
not renormalized measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
import scipy.linalg

from .errors import (
    InvalidInputError,
    InvalidPartitionError,
    NumericalConsistencyError,
    OutOfWindowError,
)
from .linalg import as_hermitian, min_eigenvalue
from .transport import TWO_PI, ProbCircle, ProbInt, wrap_angle

DEFAULT_DIM = 64
DEFAULT_GRID = 2048


# ---------------------------------------------------------------------------
# Arc sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcSet:
    """Finite union of half-open arcs ``[a, b)`` inside ``[0, 2 pi]``.

    ``arcs`` is kept canonical: sorted, pairwise disjoint and with touching
    arcs merged.  Use :meth:`from_intervals` to build one from arbitrary
    intervals; arcs that run past ``2 pi`` are split there.
    """

    arcs: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        arcs = tuple((float(a), float(b)) for a, b in self.arcs)
        prev = -1.0
        for a, b in arcs:
            if not (0.0 <= a < b <= TWO_PI) or a <= prev:
                raise InvalidInputError(f"arcs are not canonical: {self.arcs!r}")
            prev = b
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_intervals(cls, intervals: Iterable[Sequence[float]]) -> "ArcSet":
        pieces = []
        for item in intervals:
            try:
                a, b = (float(v) for v in item)
            except (TypeError, ValueError) as exc:
                raise InvalidInputError(f"arc must be a pair of numbers, got {item!r}") from exc
            if not (math.isfinite(a) and math.isfinite(b)):
                raise InvalidInputError("arc endpoints must be finite")
            if b < a:
                raise InvalidInputError(f"arc end {b} precedes start {a}")
            if b == a:
                continue
            if b - a >= TWO_PI:
                return cls.full()
            a0 = float(wrap_angle(a))
            b0 = a0 + (b - a)
            if b0 > TWO_PI:
                pieces.append((a0, TWO_PI))
                pieces.append((0.0, b0 - TWO_PI))
            else:
                pieces.append((a0, b0))
        return cls(_merge(pieces))

    @classmethod
    def full(cls) -> "ArcSet":
        return cls(((0.0, TWO_PI),))

    @classmethod
    def empty(cls) -> "ArcSet":
        return cls(())

    @classmethod
    def interval(cls, a: float, b: float) -> "ArcSet":
        return cls.from_intervals([(a, b)])

    @property
    def measure(self) -> float:
        """Normalized length ``l(X)`` in ``[0, 1]``."""
        return min(1.0, sum(b - a for a, b in self.arcs) / TWO_PI)

    def is_full(self) -> bool:
        return self.arcs == ((0.0, TWO_PI),)

    def shifted(self, theta: float) -> "ArcSet":
        """The translate ``X + theta`` (mod 2 pi)."""
        if self.is_full():
            return self
        return ArcSet.from_intervals((a + theta, b + theta) for a, b in self.arcs)

    def complement(self) -> "ArcSet":
        gaps, pos = [], 0.0
        for a, b in self.arcs:
            if a > pos:
                gaps.append((pos, a))
            pos = b
        if pos < TWO_PI:
            gaps.append((pos, TWO_PI))
        return ArcSet(tuple(gaps))

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(_merge(list(self.arcs) + list(other.arcs)))

    def overlaps(self, other: "ArcSet") -> bool:
        for a, b in self.arcs:
            for c, d in other.arcs:
                if min(b, d) > max(a, c):
                    return True
        return False

    def contains(self, theta: float) -> bool:
        t = float(wrap_angle(theta))
        return any(a <= t < b for a, b in self.arcs)

    def fourier_coefficients(self, ks) -> np.ndarray:
        """``I_k(X) = int_X exp(ikt) dt / 2 pi`` for each integer ``k`` in ``ks``."""
        ks = np.asarray(ks)
        out = np.zeros(ks.shape, dtype=complex)
        nz = ks != 0
        kf = ks[nz].astype(float)
        for a, b in self.arcs:
            out[~nz] += (b - a) / TWO_PI
            out[nz] += (np.exp(1j * kf * b) - np.exp(1j * kf * a)) / (TWO_PI * 1j * kf)
        return out


def _merge(pieces) -> tuple[tuple[float, float], ...]:
    pieces = sorted(p for p in pieces if p[1] > p[0])
    merged: list[list[float]] = []
    for a, b in pieces:
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return tuple((a, b) for a, b in merged)


# ---------------------------------------------------------------------------
# Windows and states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FockWindow:
    """Number states ``|0>, ..., |dim-1>``."""

    dim: int = DEFAULT_DIM

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidInputError(f"FockWindow dimension must be a positive integer, got {self.dim}")

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.dim)


@dataclass(frozen=True)
class TorusWindow:
    """Fourier basis vectors ``e_kmin, ..., e_kmax`` with ``kmin <= 0 <= kmax``."""

    kmin: int
    kmax: int

    def __post_init__(self):
        if not (self.kmin <= 0 <= self.kmax):
            raise InvalidInputError(f"TorusWindow must contain 0, got [{self.kmin}, {self.kmax}]")

    @classmethod
    def symmetric(cls, k: int) -> "TorusWindow":
        return cls(-k, k)

    @property
    def dim(self) -> int:
        return self.kmax - self.kmin + 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.kmin, self.kmax + 1)

    def position(self, k: int) -> int:
        if not (self.kmin <= k <= self.kmax):
            raise OutOfWindowError(f"index {k} outside window [{self.kmin}, {self.kmax}]")
        return k - self.kmin


Window = Union[FockWindow, TorusWindow]


def _window_position(w: Window, k: int) -> int:
    if isinstance(w, TorusWindow):
        return w.position(k)
    if not (0 <= k < w.dim):
        raise OutOfWindowError(f"index {k} outside Fock window of dimension {w.dim}")
    return int(k)


@dataclass(frozen=True, eq=False)
class DensityState:
    """Positive, trace-one matrix on a truncation window."""

    window: Window
    matrix: np.ndarray

    def __post_init__(self):
        rho = as_hermitian(self.matrix, atol=1e-10)
        if rho.shape[0] != self.window.dim:
            raise InvalidInputError(
                f"state dimension {rho.shape[0]} does not match window dimension {self.window.dim}"
            )
        tr = float(np.real(np.trace(rho)))
        if abs(tr - 1.0) > 1e-10:
            raise InvalidInputError(f"state trace is {tr!r}, not 1")
        if min_eigenvalue(rho) < -1e-10:
            raise InvalidInputError("state is not positive semidefinite")
        rho = rho.astype(complex)
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @classmethod
    def pure(cls, window: Window, vector) -> "DensityState":
        v = np.asarray(vector, dtype=complex)
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise InvalidInputError("zero vector")
        v = v / nrm
        return cls(window, np.outer(v, v.conj()))

    @classmethod
    def basis(cls, window: Window, k: int) -> "DensityState":
        v = np.zeros(window.dim)
        v[_window_position(window, k)] = 1.0
        return cls.pure(window, v)


# ---------------------------------------------------------------------------
# Operator constructors
# ---------------------------------------------------------------------------

def _hermitian_toeplitz(first_col: np.ndarray) -> np.ndarray:
    """Matrix with entry(m, n) = c[m - n] and c[-k] = conj(c[k])."""
    first_col = np.asarray(first_col)
    return scipy.linalg.toeplitz(first_col, first_col.conj())


def phase_effect(X: ArcSet, w: FockWindow) -> np.ndarray:
    """Truncated canonical phase effect ``Phi(X)`` on a Fock window."""
    if X.is_full():
        return np.eye(w.dim, dtype=complex)
    col = X.fourier_coefficients(np.arange(w.dim))
    return _hermitian_toeplitz(col)


def torus_position_effect(X: ArcSet, w: TorusWindow) -> np.ndarray:
    """Spectral projection ``Q(X)`` of the angle on ``L^2(T)``, compressed to the window."""
    if X.is_full():
        return np.eye(w.dim, dtype=complex)
    col = X.fourier_coefficients(np.arange(w.dim))
    return _hermitian_toeplitz(col)


def number_projection(Y: Iterable[int], w: Window) -> np.ndarray:
    """Diagonal indicator of the index set ``Y`` (number or Fourier-index projection)."""
    d = np.zeros(w.dim)
    for k in sorted(set(int(y) for y in Y)):
        d[_window_position(w, k)] = 1.0
    return np.diag(d)


def phase_shift_conjugate(E: np.ndarray, theta: float) -> np.ndarray:
    """``exp(i theta N) E exp(-i theta N)``: multiplies entry(m, n) by ``exp(i theta (m - n))``."""
    E = np.asarray(E)
    n = E.shape[0]
    phase = np.exp(1j * theta * np.arange(n))
    return phase[:, None] * E * phase.conj()[None, :]


def moment_operator(k: int, w: FockWindow) -> np.ndarray:
    """Cyclic moment operator ``V^(k) = sum_n |n><n+k|`` on the window."""
    if k < 0 or k >= w.dim:
        raise OutOfWindowError(f"moment index {k} outside window of dimension {w.dim}")
    return np.eye(w.dim, k=k)


def _second_moment_column(dim: int) -> np.ndarray:
    k = np.arange(dim, dtype=float)
    col = np.empty(dim)
    col[0] = math.pi ** 2 / 3.0
    kk = k[1:]
    col[1:] = 2.0 * np.where(kk % 2 == 0, 1.0, -1.0) / kk ** 2
    return col


def second_phase_moment(w: FockWindow) -> np.ndarray:
    """``Phi[2] = int theta^2 dPhi`` with angles taken in ``(-pi, pi]``."""
    return scipy.linalg.toeplitz(_second_moment_column(w.dim))


def torus_q2(w: TorusWindow) -> np.ndarray:
    return scipy.linalg.toeplitz(_second_moment_column(w.dim))


def torus_p2(w: TorusWindow) -> np.ndarray:
    return np.diag(w.indices.astype(float) ** 2)


def number_squared(w: FockWindow) -> np.ndarray:
    return np.diag(w.indices.astype(float) ** 2)


def smear_phase(mu: ProbCircle, X: ArcSet, w: FockWindow) -> np.ndarray:
    """``(mu * Phi)(X) = sum_j mu_j Phi(X - theta_j)``."""
    base = phase_effect(X, w)
    out = np.zeros_like(base)
    for theta, weight in zip(mu.angles, mu.weights):
        out += weight * phase_shift_conjugate(base, -theta)
    return out


def smear_number(nu: ProbInt, Y: Iterable[int], w: Window) -> np.ndarray:
    """``(nu * N)(Y) = sum_k nu({k}) N((Y - k) within the window)``."""
    Y = sorted(set(int(y) for y in Y))
    idx = set(int(i) for i in w.indices)
    out = np.zeros((w.dim, w.dim))
    for k, weight in zip(nu.support, nu.weights):
        shifted = [y - int(k) for y in Y if (y - int(k)) in idx]
        out += weight * number_projection(shifted, w)
    return out


# ---------------------------------------------------------------------------
# Distributions of states
# ---------------------------------------------------------------------------

def _diagonal_sums(rho: np.ndarray) -> np.ndarray:
    """``s_d = sum_n rho[n, n + d]`` for ``d = 0..dim-1``.

    The phase (or angle) density of ``rho`` is ``sum_d s_d exp(i d t)`` with
    ``s_-d = conj(s_d)``; probabilities of arcs are ``sum_d s_d I_d(X)``.
    """
    n = rho.shape[0]
    return np.array([np.trace(rho, offset=d) for d in range(n)])


def _arc_probability(s: np.ndarray, X: ArcSet) -> float:
    if X.is_full():
        return float(np.real(s[0]))
    ks = np.arange(s.size)
    coeff = X.fourier_coefficients(ks)
    # s_{-d} I_{-d} is the conjugate of s_d I_d
    total = np.real(s[0] * coeff[0]) + 2.0 * np.real(np.dot(s[1:], coeff[1:]))
    return float(total)


def state_phase_distribution(rho: DensityState, partition: Sequence[ArcSet]) -> np.ndarray:
    """Probabilities ``tr[rho Phi(X_i)]`` for a partition of the circle into arc sets.

    Raises
    ------
    InvalidPartitionError
        If the arc sets overlap or do not cover the circle.
    """
    parts = list(partition)
    for i, A in enumerate(parts):
        for B in parts[i + 1:]:
            if A.overlaps(B):
                raise InvalidPartitionError("partition cells overlap")
    if abs(sum(A.measure for A in parts) - 1.0) > 1e-12:
        raise InvalidPartitionError("partition does not cover the circle")
    s = _diagonal_sums(rho.matrix)
    probs = np.array([_arc_probability(s, A) for A in parts])
    if np.any(probs < -1e-12):
        raise NumericalConsistencyError("negative cell probability")
    return probs


def state_number_distribution(rho: DensityState) -> ProbInt:
    p = np.clip(np.real(np.diag(rho.matrix)), 0.0, None)
    return ProbInt.from_atoms(rho.window.indices, p / p.sum())


def _cell_weights(s: np.ndarray, grid: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact cell probabilities and density values at the cell centres."""
    h = TWO_PI / grid
    centres = h * (np.arange(grid) + 0.5)
    d = np.arange(1, s.size)
    phases = np.exp(1j * np.outer(centres, d))
    terms = phases * s[1:][None, :]
    density = np.real(s[0]) + 2.0 * np.real(terms.sum(axis=1))
    sinc = np.sin(d * h / 2.0) / (math.pi * d)
    weights = np.real(s[0]) * h / TWO_PI + 2.0 * np.real((terms * sinc[None, :]).sum(axis=1))
    return centres, weights, density


def angle_distribution(matrix: np.ndarray, grid: int = DEFAULT_GRID) -> ProbCircle:
    """Angle (or canonical phase) distribution of a state, binned on ``grid`` equal cells.

    Each atom sits at a cell centre and carries the exact probability of its
    cell.

    Raises
    ------
    NumericalConsistencyError
        If the density is negative beyond ``1e-10`` anywhere on the grid.
    """
    if grid < 1:
        raise InvalidInputError("grid must be a positive integer")
    s = _diagonal_sums(np.asarray(matrix))
    centres, weights, density = _cell_weights(s, grid)
    if density.min() < -1e-10:
        raise NumericalConsistencyError(f"angle density negative ({density.min():.3e})")
    if weights.min() < -1e-12:
        raise NumericalConsistencyError(f"cell probability negative ({weights.min():.3e})")
    weights = np.clip(weights, 0.0, None)
    total = weights.sum()
    if abs(total - 1.0) > 1e-8:
        raise NumericalConsistencyError(f"cell probabilities sum to {total!r}")
    return ProbCircle.from_atoms(centres, weights / total)


def angle_margin(sigma: DensityState, grid: int = DEFAULT_GRID) -> ProbCircle:
    """Position distribution ``Q_sigma`` of a torus state, discretized on ``grid`` cells."""
    return angle_distribution(sigma.matrix, grid)


def fourier_margin(sigma: DensityState) -> ProbInt:
    """Momentum distribution ``P_sigma``: the diagonal of ``sigma`` as atoms on Z."""
    return state_number_distribution(sigma)
