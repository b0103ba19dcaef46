"""Independent reference computations used by the tests.

Nothing here calls into the package's numerical routines; each oracle takes a
different route (quadrature, enumeration, arbitrary precision) to the same
quantity.
"""

import itertools
import math

import mpmath
import numpy as np
from scipy import integrate


def fourier_quad(arcs, k):
    """int_X exp(i k theta) dtheta / 2pi by adaptive quadrature."""
    re = sum(integrate.quad(lambda t: math.cos(k * t), a, b, limit=200)[0] for a, b in arcs)
    im = sum(integrate.quad(lambda t: math.sin(k * t), a, b, limit=200)[0] for a, b in arcs)
    return complex(re, im) / (2 * math.pi)


def theta2_fourier_quad(k):
    """int_{-pi}^{pi} theta^2 exp(i k theta) dtheta / 2pi by quadrature."""
    re = integrate.quad(lambda t: t * t * math.cos(k * t), -math.pi, math.pi, limit=200)[0]
    return re / (2 * math.pi)


def arc_dist(x, y):
    d = abs((x - y) % (2 * math.pi))
    return min(d, 2 * math.pi - d)


def w2_circle_permutations(xs, ys):
    """Exact W2 between equal-weight atomic measures: best of all n! assignments."""
    n = len(xs)
    best = math.inf
    for perm in itertools.permutations(range(n)):
        c = sum(arc_dist(xs[i], ys[perm[i]]) ** 2 for i in range(n)) / n
        best = min(best, c)
    return math.sqrt(best)


def w2_integers_vertices(xs, a, ys, b):
    """Exact W2 on Z by enumerating vertices of the transport polytope.

    Each vertex is a basic feasible solution: choose m + n - 1 cells, solve the
    marginal equations restricted to them, keep nonnegative solutions.
    """
    m, n = len(xs), len(ys)
    cells = [(i, j) for i in range(m) for j in range(n)]
    A = np.zeros((m + n, m * n))
    for idx, (i, j) in enumerate(cells):
        A[i, idx] = 1.0
        A[m + j, idx] = 1.0
    rhs = np.concatenate([a, b])
    cost = np.array([(xs[i] - ys[j]) ** 2 for i, j in cells], dtype=float)
    best = math.inf
    r = m + n - 1
    for basis in itertools.combinations(range(m * n), r):
        sub = A[:, basis]
        if np.linalg.matrix_rank(sub) < r:
            continue
        sol, *_ = np.linalg.lstsq(sub, rhs, rcond=None)
        if np.max(np.abs(sub @ sol - rhs)) > 1e-10 or np.min(sol) < -1e-12:
            continue
        best = min(best, float(cost[list(basis)] @ sol))
    return math.sqrt(max(best, 0.0))


def mp_toeplitz_alpha(arcs, k, dps=60):
    """1 / <0|T_k^{-1}|0> by direct arbitrary-precision inversion."""
    with mpmath.workdps(dps):
        def coef(d):
            tot = mpmath.mpc(0)
            for a, b in arcs:
                a, b = mpmath.mpf(a), mpmath.mpf(b)
                if d == 0:
                    tot += (b - a) / (2 * mpmath.pi)
                else:
                    tot += (mpmath.expj(d * b) - mpmath.expj(d * a)) / (2j * mpmath.pi * d)
            return tot

        c = {d: coef(d) for d in range(-k + 1, k)}
        T = mpmath.matrix(k, k)
        for i in range(k):
            for j in range(k):
                T[i, j] = c[i - j]
        return float(mpmath.re(1 / (T ** -1)[0, 0]))


def bisection_alpha(E, e, tol=1e-13):
    """Largest alpha with E - alpha |e><e| PSD, by bisection on full eigvalsh."""
    P = np.zeros_like(E)
    P[e, e] = 1.0
    lo, hi = 0.0, float(np.real(E[e, e]))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if np.linalg.eigvalsh(E - mid * P)[0] >= -1e-14:
            lo = mid
        else:
            hi = mid
    return lo


def torus_density_on_grid(sigma, kmin, theta):
    """q(theta) = sum_{m,n} sigma_mn exp(i (m - n) theta) evaluated pointwise."""
    ks = np.arange(kmin, kmin + sigma.shape[0])
    e = np.exp(-1j * np.outer(theta, ks))
    return np.real(np.einsum("tm,mn,tn->t", e, sigma, e.conj()))
