"""Wasserstein-2 distances for atomic measures on the circle and on the integers.

Circle distances use the arc metric ``d(x, y) = min_n |x - y - 2 pi n|``.
The optimal cost is found by lifting both measures to periodic quantile
functions on the real line and minimizing the quadratic quantile cost over
a shift of the second cumulative distribution (the position of the "cut").
For atomic inputs the shifted cost is piecewise linear in the shift with
kinks only where a breakpoint of one CDF crosses a breakpoint of the other,
so the minimum over those candidate shifts is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

TWO_PI = 2.0 * math.pi
WEIGHT_SUM_TOL = 1e-9

# Exhaustive candidate evaluation is used below this many (candidate x breakpoint)
# cells; above it a discrete convex search over the sorted candidates.
_EXHAUSTIVE_BUDGET = 200_000


def wrap_angle(theta):
    """Reduce angles to ``[0, 2 pi)``."""
    t = np.mod(theta, TWO_PI)
    # np.mod can return exactly 2*pi for tiny negative inputs
    return np.where(t >= TWO_PI, 0.0, t)


def wrap_signed(theta):
    """Reduce angles to ``(-pi, pi]``."""
    t = np.pi - np.mod(np.pi - np.asarray(theta, dtype=float), TWO_PI)
    return t


def arc_distance(x, y):
    d = np.abs(np.mod(np.asarray(x, float) - np.asarray(y, float), TWO_PI))
    return np.minimum(d, TWO_PI - d)


def _check_weights(w: np.ndarray, what: str) -> None:
    if w.size == 0:
        raise InvalidInputError(f"{what}: measure has no atoms")
    if not np.all(np.isfinite(w)):
        raise InvalidInputError(f"{what}: non-finite weight")
    if np.any(w < 0):
        raise InvalidInputError(f"{what}: negative weight")
    total = float(w.sum())
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidInputError(f"{what}: weights sum to {total!r}, not 1")


@dataclass(frozen=True, eq=False)
class ProbCircle:
    """Atomic probability measure on the circle.

    ``angles`` are sorted, distinct and in ``[0, 2 pi)``; ``weights`` are
    strictly positive and sum to one.  Build instances with :meth:`from_atoms`
    (or the helpers below), which merges duplicate angles and drops zero
    weights.
    """

    angles: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_atoms(cls, angles, weights) -> "ProbCircle":
        a = np.atleast_1d(np.asarray(angles, dtype=float))
        w = np.atleast_1d(np.asarray(weights, dtype=float))
        if a.shape != w.shape or a.ndim != 1:
            raise InvalidInputError("angles and weights must be 1-d arrays of equal length")
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("ProbCircle: non-finite angle")
        _check_weights(w, "ProbCircle")
        a = wrap_angle(a)
        keep = w > 0
        a, w = a[keep], w[keep]
        uniq, inv = np.unique(a, return_inverse=True)
        merged = np.zeros(uniq.size)
        np.add.at(merged, inv, w)
        for arr in (uniq, merged):
            arr.setflags(write=False)
        return cls(uniq, merged)

    @classmethod
    def point(cls, theta: float) -> "ProbCircle":
        return cls.from_atoms([theta], [1.0])

    @classmethod
    def uniform_grid(cls, n: int, offset: float = 0.0) -> "ProbCircle":
        """Equal weights at ``offset + 2 pi j / n``, ``j = 0..n-1``."""
        if n < 1:
            raise InvalidInputError("grid size must be positive")
        return cls.from_atoms(offset + TWO_PI * np.arange(n) / n, np.full(n, 1.0 / n))

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return [(float(a), float(w)) for a, w in zip(self.angles, self.weights)]

    def rotated(self, alpha: float) -> "ProbCircle":
        return ProbCircle.from_atoms(self.angles + alpha, self.weights)

    def __len__(self) -> int:
        return self.angles.size


@dataclass(frozen=True, eq=False)
class ProbInt:
    """Atomic probability measure on the integers (sorted support, positive weights)."""

    support: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_atoms(cls, support, weights) -> "ProbInt":
        s = np.atleast_1d(np.asarray(support))
        w = np.atleast_1d(np.asarray(weights, dtype=float))
        if s.shape != w.shape or s.ndim != 1:
            raise InvalidInputError("support and weights must be 1-d arrays of equal length")
        if s.size and not np.all(np.asarray(s, dtype=float) == np.round(np.asarray(s, dtype=float))):
            raise InvalidInputError("ProbInt: support must be integers")
        _check_weights(w, "ProbInt")
        s = s.astype(np.int64)
        keep = w > 0
        s, w = s[keep], w[keep]
        uniq, inv = np.unique(s, return_inverse=True)
        merged = np.zeros(uniq.size)
        np.add.at(merged, inv, w)
        for arr in (uniq, merged):
            arr.setflags(write=False)
        return cls(uniq, merged)

    @classmethod
    def from_dict(cls, mapping: dict) -> "ProbInt":
        keys = list(mapping)
        return cls.from_atoms(keys, [mapping[k] for k in keys])

    @classmethod
    def point(cls, k: int) -> "ProbInt":
        return cls.from_atoms([k], [1.0])

    @property
    def atoms(self) -> dict[int, float]:
        return {int(k): float(w) for k, w in zip(self.support, self.weights)}

    def shifted(self, k: int) -> "ProbInt":
        return ProbInt(self.support + k, self.weights)

    def reflected(self) -> "ProbInt":
        return ProbInt.from_atoms(-self.support, self.weights)

    def __len__(self) -> int:
        return self.support.size


# ---------------------------------------------------------------------------
# Integers
# ---------------------------------------------------------------------------

def _cdf_breaks(weights: np.ndarray) -> np.ndarray:
    c = np.cumsum(weights)
    c[-1] = 1.0
    return c


def w2_integers(mu: ProbInt, nu: ProbInt) -> float:
    """W2 distance on Z with ``d(m, n) = |m - n|`` via the monotone coupling."""
    cm, cn = _cdf_breaks(mu.weights), _cdf_breaks(nu.weights)
    t = np.unique(np.concatenate(([0.0], cm, cn)))
    t = t[t <= 1.0]
    lengths = np.diff(t)
    mid = 0.5 * (t[:-1] + t[1:])
    qm = mu.support[np.minimum(np.searchsorted(cm, mid, side="left"), cm.size - 1)]
    qn = nu.support[np.minimum(np.searchsorted(cn, mid, side="left"), cn.size - 1)]
    diff = (qm - qn).astype(float)
    return math.sqrt(max(float(np.dot(lengths, diff * diff)), 0.0))


# ---------------------------------------------------------------------------
# Circle
# ---------------------------------------------------------------------------

class _LiftedPair:
    """Quantile data of two circle measures and the shifted-cut cost."""

    def __init__(self, mu: ProbCircle, nu: ProbCircle):
        self.x, self.cx = mu.angles, _cdf_breaks(mu.weights)
        self.y, self.cy = nu.angles, _cdf_breaks(nu.weights)

    def candidates(self) -> np.ndarray:
        a = np.concatenate(([0.0], self.cx[:-1]))
        b = np.concatenate(([0.0], self.cy[:-1]))
        base = (b[None, :] - a[:, None]).ravel()
        shifts = np.arange(-2, 3, dtype=float)
        cand = (base[None, :] + shifts[:, None]).ravel()
        cand = np.unique(cand[(cand >= -2.0) & (cand <= 2.0)])
        # breakpoint differences that agree up to rounding are the same kink
        keep = np.concatenate(([True], np.diff(cand) > 1e-13))
        return cand[keep]

    def costs(self, alphas: np.ndarray) -> np.ndarray:
        """Quadratic quantile cost for each cut shift in ``alphas``."""
        alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
        k = alphas.size
        gy = np.mod(self.cy[None, :] - alphas[:, None], 1.0)
        bx = np.broadcast_to(self.cx, (k, self.cx.size))
        t = np.concatenate((np.zeros((k, 1)), bx, gy, np.ones((k, 1))), axis=1)
        t.sort(axis=1)
        lengths = np.diff(t, axis=1)
        mid = 0.5 * (t[:, :-1] + t[:, 1:])
        ix = np.minimum(np.searchsorted(self.cx, mid, side="left"), self.cx.size - 1)
        fq = self.x[ix]
        s = mid + alphas[:, None]
        whole = np.floor(s)
        frac = s - whole
        iy = np.minimum(np.searchsorted(self.cy, frac, side="left"), self.cy.size - 1)
        gq = self.y[iy] + TWO_PI * whole
        diff = fq - gq
        return np.einsum("ij,ij->i", lengths, diff * diff)


def _convex_argmin(f, n: int) -> int:
    """Index minimizing a convex sequence ``f(0..n-1)`` by ternary search."""
    lo, hi = 0, n - 1
    cache: dict[int, float] = {}

    def val(i):
        if i not in cache:
            cache[i] = f(i)
        return cache[i]

    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        v1, v2 = val(m1), val(m2)
        if v1 < v2:
            hi = m2
        elif v1 > v2:
            lo = m1
        else:
            lo, hi = m1, m2
    return min(range(lo, hi + 1), key=val)


def w2_circle_squared(mu: ProbCircle, nu: ProbCircle) -> float:
    pair = _LiftedPair(mu, nu)
    cand = pair.candidates()
    width = len(mu) + len(nu) + 2
    if cand.size * width <= _EXHAUSTIVE_BUDGET:
        best = np.inf
        chunk = max(1, _EXHAUSTIVE_BUDGET // (8 * width))
        for start in range(0, cand.size, chunk):
            best = min(best, float(pair.costs(cand[start:start + chunk]).min()))
    else:
        i = _convex_argmin(lambda j: float(pair.costs(cand[j:j + 1])[0]), cand.size)
        lo, hi = max(0, i - 2), min(cand.size, i + 3)
        best = float(pair.costs(cand[lo:hi]).min())
    return max(best, 0.0)


def w2_circle(mu: ProbCircle, nu: ProbCircle) -> float:
    """W2 distance between atomic circle measures under the arc metric."""
    return math.sqrt(w2_circle_squared(mu, nu))


# ---------------------------------------------------------------------------
# Moments and convolution errors
# ---------------------------------------------------------------------------

def second_moment_circle(mu: ProbCircle) -> float:
    """``mu[2]``: mean squared arc distance to the origin."""
    d = arc_distance(mu.angles, 0.0)
    return float(np.dot(mu.weights, d * d))


def second_moment_int(nu: ProbInt) -> float:
    k = nu.support.astype(float)
    return float(np.dot(nu.weights, k * k))


def smearing_error_phase(mu: ProbCircle) -> float:
    """Exact error of the convolution approximator ``mu * Phi`` of the canonical phase."""
    return math.sqrt(second_moment_circle(mu))


def smearing_error_number(nu: ProbInt) -> float:
    """Exact error of the convolution approximator ``nu * N`` of the number observable."""
    return math.sqrt(second_moment_int(nu))
