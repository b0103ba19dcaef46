"""Finite-section ground states, Lenard bounds and complementarity witnesses.

The oscillator-type operators handled here are

    fock:  (1 - t) N^2 + t Phi[2]     on span{|0>, ..., |K-1>}
    torus: (1 - t) P^2 + t Q^2        on span{e_-k, ..., e_k}

Their compressions to growing windows have nonincreasing lowest eigenvalues
that converge to the ground energy of the full operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .errors import BoundInapplicableError, InvalidInputError, OutOfWindowError
from .linalg import (
    as_hermitian,
    ground_pair,
    inverse_pd,
    max_eigenvalue,
    min_eigenvalue,
)
from .observables import (
    ArcSet,
    FockWindow,
    TorusWindow,
    number_projection,
    number_squared,
    phase_effect,
    second_phase_moment,
    torus_p2,
    torus_position_effect,
    torus_q2,
)

FOCK_SCHEDULE = (8, 16, 32, 64, 128, 256)
TORUS_SCHEDULE = (4, 8, 16, 32, 64, 128, 256, 512)
OSCILLATOR_TORUS_SCHEDULE = (4, 8, 16, 32, 64)
OSCILLATOR_FOCK_SCHEDULE = (8, 16, 32, 64)
CONVERGENCE_TOL = 1e-7
COMPLEMENTARITY_SCHEDULE = (8, 16, 32, 64, 128, 256)

SPACES = ("fock", "torus")


@dataclass
class GroundStateReport:
    """Outcome of a finite-section run.

    ``dims`` holds the schedule as given: matrix dimensions for the Fock
    space, half-widths ``k`` of the window ``[-k, k]`` for the torus.
    ``vector`` is the ground vector on the last window, whose basis labels
    are ``indices``.
    """

    space: str
    dims: list[int]
    alphas: list[float]
    value: float
    vector: np.ndarray
    indices: np.ndarray
    converged: bool
    weight: float | None = None

    def coefficient(self, label: int) -> complex:
        pos = np.flatnonzero(self.indices == label)
        if pos.size == 0:
            raise OutOfWindowError(f"basis label {label} outside the final window")
        return complex(self.vector[pos[0]])

    def magnitudes(self, labels: Iterable[int]) -> list[float]:
        return [abs(self.coefficient(k)) for k in labels]


@dataclass
class LenardReport:
    a_plus: float
    bound: float
    truncated_sup: float
    eigenvalues: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _check_space(space: str) -> None:
    if space not in SPACES:
        raise InvalidInputError(f"space must be one of {SPACES}, got {space!r}")


def _check_schedule(dims: Sequence[int]) -> list[int]:
    dims = [int(d) for d in dims]
    if not dims:
        raise InvalidInputError("empty section schedule")
    if any(d < 1 for d in dims) or any(b <= a for a, b in zip(dims, dims[1:])):
        raise InvalidInputError(f"schedule must be positive and increasing, got {dims}")
    return dims


def section_hamiltonian(space: str, size: int, kinetic: float, angular: float):
    """Weighted operator on one window; returns ``(matrix, basis labels)``."""
    _check_space(space)
    if space == "fock":
        w = FockWindow(size)
        H = kinetic * number_squared(w) + angular * second_phase_moment(w)
    else:
        w = TorusWindow.symmetric(size)
        H = kinetic * torus_p2(w) + angular * torus_q2(w)
    return H, w.indices


def _run_sections(space, dims, kinetic, angular, tol, weight) -> GroundStateReport:
    _check_space(space)
    dims = _check_schedule(dims)
    if space == "torus" and dims[0] < 0:
        raise InvalidInputError("torus half-widths must be nonnegative")
    alphas, vec, labels = [], None, None
    for size in dims:
        H, labels = section_hamiltonian(space, size, kinetic, angular)
        alpha, vec = ground_pair(H)
        alphas.append(alpha)
    converged = len(alphas) >= 2 and abs(alphas[-1] - alphas[-2]) < tol
    return GroundStateReport(
        space=space,
        dims=dims,
        alphas=alphas,
        value=alphas[-1],
        vector=vec,
        indices=labels,
        converged=bool(converged),
        weight=weight,
    )


def finite_section_ground(space: str, weight: float, dims: Sequence[int] | None = None,
                          tol: float = CONVERGENCE_TOL) -> GroundStateReport:
    """Lowest eigenvalues of ``(1 - t) kinetic + t angular`` on a schedule of windows.

    Non-convergence is reported through ``converged=False`` rather than raised.
    """
    if not (0.0 <= weight <= 1.0):
        raise InvalidInputError(f"weight must lie in [0, 1], got {weight}")
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    if dims is None:
        dims = FOCK_SCHEDULE if space == "fock" else TORUS_SCHEDULE
    return _run_sections(space, dims, 1.0 - weight, weight, tol, weight)


def oscillator_torus_ground(dims: Sequence[int] = OSCILLATOR_TORUS_SCHEDULE,
                            tol: float = CONVERGENCE_TOL) -> GroundStateReport:
    """Ground state of ``P^2 + Q^2`` on ``L^2(T)``."""
    return _run_sections("torus", dims, 1.0, 1.0, tol, None)


def oscillator_fock_ground(dims: Sequence[int] = OSCILLATOR_FOCK_SCHEDULE,
                           tol: float = CONVERGENCE_TOL) -> GroundStateReport:
    """Ground state of ``N^2 + Phi[2]`` on the number-state space."""
    return _run_sections("fock", dims, 1.0, 1.0, tol, None)


@lru_cache(maxsize=None)
def torus_oscillator_energy(half_width: int = 64) -> float:
    """Cached lowest eigenvalue of ``P^2 + Q^2`` on the window ``[-half_width, half_width]``."""
    H, _ = section_hamiltonian("torus", half_width, 1.0, 1.0)
    return ground_pair(H)[0]


# ---------------------------------------------------------------------------
# Joint predictability
# ---------------------------------------------------------------------------

def _sorted_set(Y) -> list[int]:
    return sorted(set(int(y) for y in Y))


def lenard_submatrix(X: ArcSet, Y) -> np.ndarray:
    """Principal submatrix of ``Phi(X)`` on the index set ``Y``.

    Its spectrum is the nonzero spectrum of ``N(Y) Phi(X) N(Y)`` (and of
    ``P(Y) Q(X) P(Y)`` on the torus), independent of the truncation.
    """
    Y = _sorted_set(Y)
    if not Y:
        return np.zeros((0, 0), dtype=complex)
    idx = np.asarray(Y)
    ks = idx[:, None] - idx[None, :]
    return X.fourier_coefficients(ks)


def lenard_bound(X: ArcSet, Y, w: FockWindow) -> LenardReport:
    """Lenard cap ``1 + sqrt(a_+)`` and the largest eigenvalue of ``Phi(X) + N(Y)`` in the window.

    Raises
    ------
    BoundInapplicableError
        If ``l(X) >= 1``.
    OutOfWindowError
        If ``Y`` is not contained in the window.
    """
    if X.measure >= 1.0:
        raise BoundInapplicableError("Lenard bound needs an arc set of measure below one")
    Y = _sorted_set(Y)
    N = number_projection(Y, w)
    if Y:
        eig = np.linalg.eigvalsh(as_hermitian(lenard_submatrix(X, Y)))
        a_plus = float(max(eig[-1], 0.0))
    else:
        eig, a_plus = np.zeros(0), 0.0
    sup = max_eigenvalue(phase_effect(X, w) + N)
    return LenardReport(a_plus=a_plus, bound=1.0 + math.sqrt(a_plus), truncated_sup=sup, eigenvalues=eig)


def lenard_spectra(X: ArcSet, Y, fock: FockWindow, torus: TorusWindow) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of ``N(Y) Phi(X) N(Y)`` and ``P(Y) Q(X) P(Y)``, each restricted to ``Y``.

    Both compressions are built from their full window operators, so this is
    an independent check of the truncation-free submatrix formula.
    """
    Y = _sorted_set(Y)
    fpos = [int(y) for y in Y]
    tpos = [torus.position(y) for y in Y]
    if any(p >= fock.dim or p < 0 for p in fpos):
        raise OutOfWindowError("Y outside Fock window")
    F = phase_effect(X, fock)[np.ix_(fpos, fpos)]
    T = torus_position_effect(X, torus)[np.ix_(tpos, tpos)]
    return np.linalg.eigvalsh(as_hermitian(F)), np.linalg.eigvalsh(as_hermitian(T))


# ---------------------------------------------------------------------------
# Complementarity witnesses
# ---------------------------------------------------------------------------

def max_scalar_below(E, e: int, method: str = "auto", tol: float = 1e-12) -> float:
    """Largest ``alpha >= 0`` with ``E - alpha |e><e|`` positive semidefinite.

    For positive definite ``E`` this is ``1 / <e|E^-1|e>``; otherwise (or with
    ``method="bisection"``) it is bracketed by bisection on the smallest
    eigenvalue, to an interval width of ``tol``.
    """
    E = as_hermitian(E)
    n = E.shape[0]
    if not (0 <= e < n):
        raise OutOfWindowError(f"basis index {e} outside dimension {n}")
    if method not in ("auto", "inverse", "bisection"):
        raise InvalidInputError(f"unknown method {method!r}")
    lam0 = min_eigenvalue(E)
    if method == "inverse" or (method == "auto" and lam0 > 1e-10):
        return float(1.0 / np.real(inverse_pd(E)[e, e]))
    floor = min(0.0, lam0) - 1e-13
    P = np.zeros_like(E)
    P[e, e] = 1.0
    lo, hi = 0.0, float(np.real(E[e, e]))
    if min_eigenvalue(E - hi * P) >= floor:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if min_eigenvalue(E - mid * P) >= floor:
            lo = mid
        else:
            hi = mid
    return lo


def toeplitz_prediction_errors(first_col, dps: int) -> list:
    """Levinson-Durbin prediction errors of a Hermitian Toeplitz matrix.

    ``first_col[j]`` is entry ``(j, 0)``.  The returned ``eps[m]`` (``m = 0..n-1``)
    equals ``1 / [T_{m+1}^{-1}]_{00}``, the Schur complement of the trailing
    ``m`` rows and columns of the ``(m+1) x (m+1)`` section.  Arithmetic is
    carried out with ``dps`` significant digits.
    """
    with mpmath.workdps(dps):
        r = [mpmath.mpmathify(c) for c in first_col]
        eps = [mpmath.re(r[0])]
        a: list = []
        for m in range(1, len(r)):
            acc = r[m]
            for i, ai in enumerate(a, start=1):
                acc += ai * r[m - i]
            kappa = -acc / eps[-1]
            a = [ai + kappa * mpmath.conj(a[m - 2 - j]) for j, ai in enumerate(a)] + [kappa]
            eps.append(eps[-1] * (1 - abs(kappa) ** 2))
        return eps


def _arc_fourier_mp(X: ArcSet, n: int, dps: int) -> list:
    with mpmath.workdps(dps):
        two_pi = 2 * mpmath.pi
        out = []
        for k in range(n):
            total = mpmath.mpc(0)
            for a, b in X.arcs:
                a_mp, b_mp = mpmath.mpf(a), mpmath.mpf(b)
                if b == 2 * math.pi:
                    b_mp = two_pi
                if k == 0:
                    total += (b_mp - a_mp) / two_pi
                else:
                    total += (mpmath.expj(k * b_mp) - mpmath.expj(k * a_mp)) / (two_pi * 1j * k)
            out.append(total)
        return out


def complementarity_decay(X: ArcSet, dims: Sequence[int] = COMPLEMENTARITY_SCHEDULE,
                          dps: int | None = None) -> list[tuple[int, float]]:
    """``alpha_max(k)`` for ``|0><0|`` below the section ``Phi_k(X)``, for each ``k`` in ``dims``.

    ``alpha_max(k) = 1 / <0|Phi_k(X)^-1|0>`` falls fast enough in ``k``
    that it leaves double precision after a few dozen dimensions, so it is
    computed with the Levinson recursion in extended precision.  The section
    is Toeplitz, hence ``<0|T^-1|0> = <k-1|T^-1|k-1>`` and the recursion's
    prediction errors give every ``alpha_max(k)`` of the schedule in one pass.
    Values are returned as floats (they stay above the double underflow
    threshold for ``k`` up to several hundred).
    """
    m = X.measure
    if not (0.0 < m < 1.0):
        raise InvalidInputError(f"need 0 < l(X) < 1, got {m}")
    dims = _check_schedule(dims)
    kmax = dims[-1]
    if dps is None:
        dps = 40 + 2 * kmax
    col = _arc_fourier_mp(X, kmax, dps)
    eps = toeplitz_prediction_errors(col, dps)
    return [(k, float(eps[k - 1])) for k in dims]


def shift_compress(E, r: int) -> np.ndarray:
    """``W E W*`` with ``W = sum_k |k><k+r|``: drop the first ``r`` rows and columns."""
    E = np.asarray(E)
    if r < 0 or r >= E.shape[0]:
        raise OutOfWindowError(f"shift {r} outside dimension {E.shape[0]}")
    return E[r:, r:].copy()
