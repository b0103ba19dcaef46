import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from numphase.errors import BoundInapplicableError, InvalidInputError, OutOfWindowError
from numphase.linalg import operator_norm
from numphase.observables import (
    ArcSet,
    FockWindow,
    TorusWindow,
    phase_effect,
    second_phase_moment,
)
from numphase.spectral import (
    complementarity_decay,
    finite_section_ground,
    lenard_bound,
    lenard_spectra,
    max_scalar_below,
    oscillator_fock_ground,
    oscillator_torus_ground,
    section_hamiltonian,
    shift_compress,
    toeplitz_prediction_errors,
)

HALF = ArcSet.interval(0, math.pi)


def monotone(alphas):
    return all(b <= a + 1e-10 for a, b in zip(alphas, alphas[1:]))


# -- finite sections ---------------------------------------------------------------

def test_torus_oscillator_values():
    rep = oscillator_torus_ground()
    assert rep.converged and monotone(rep.alphas)
    assert rep.value == pytest.approx(0.9996, abs=5e-4)
    mags = rep.magnitudes([0, 1, 2, 3, 4])
    assert mags == pytest.approx([0.7518, 0.4550, 0.1017, 0.0083, 0.0002], abs=2e-3)
    for s in range(1, 10):
        assert abs(rep.coefficient(s) - rep.coefficient(-s)) <= 1e-8
    assert np.linalg.norm(rep.vector) == pytest.approx(1.0, abs=1e-10)


def test_fock_oscillator_values():
    rep = oscillator_fock_ground()
    assert rep.converged and monotone(rep.alphas)
    assert rep.value == pytest.approx(1.5818, abs=5e-4)
    assert rep.value > 1.0
    assert rep.magnitudes(range(5)) == pytest.approx([0.7276, 0.6632, 0.1745, 0.0167, 0.0002], abs=2e-3)


def test_weighted_scaling():
    t = finite_section_ground("torus", 0.5, (4, 8, 16, 32, 64))
    f = finite_section_ground("fock", 0.5, (8, 16, 32, 64))
    assert t.value == pytest.approx(0.4998, abs=5e-4)
    assert f.value == pytest.approx(0.7909, abs=5e-4)
    assert t.value == pytest.approx(oscillator_torus_ground().value / 2, abs=1e-12)


def test_kinetic_endpoint():
    t = finite_section_ground("torus", 0.0, (2, 4))
    assert t.value == 0.0 and abs(t.coefficient(0)) == pytest.approx(1.0)
    f = finite_section_ground("fock", 0.0, (4, 8))
    assert f.value == 0.0 and abs(f.coefficient(0)) == pytest.approx(1.0)


def test_default_schedules_monotone():
    for space in ("fock", "torus"):
        for t in (0.1, 0.5, 0.9):
            rep = finite_section_ground(space, t)
            assert monotone(rep.alphas), (space, t)
            assert rep.converged


def test_nonconvergence_is_reported():
    rep = finite_section_ground("fock", 0.5, (2, 3))
    assert rep.converged is False


def test_bad_schedules():
    with pytest.raises(InvalidInputError):
        finite_section_ground("fock", 0.5, (8, 4))
    with pytest.raises(InvalidInputError):
        finite_section_ground("fock", 1.5)
    with pytest.raises(InvalidInputError):
        finite_section_ground("plane", 0.5)


@given(seed=st.integers(0, 2**32 - 1), t=st.floats(0, 1))
def test_variational_upper_bound(seed, t):
    rng = np.random.default_rng(seed)
    H, _ = section_hamiltonian("torus", 6, 1 - t, t)
    alpha = finite_section_ground("torus", t, (6,)).value
    psi = rng.normal(size=H.shape[0]) + 1j * rng.normal(size=H.shape[0])
    psi /= np.linalg.norm(psi)
    assert alpha <= np.real(psi.conj() @ H @ psi) + 1e-10


def test_diagonal_sanity():
    assert second_phase_moment(FockWindow(3))[0, 0] == pytest.approx(math.pi**2 / 3, abs=1e-12)


# -- Lenard ---------------------------------------------------------------------------

def test_lenard_examples():
    w = FockWindow(64)
    X = ArcSet.interval(0.4, 2.0)
    r = lenard_bound(X, [0], w)
    assert r.a_plus == pytest.approx(X.measure, abs=1e-14)
    assert r.bound == pytest.approx(1 + math.sqrt(X.measure), abs=1e-14)
    # the norm of Phi(X) tends to one with the window, so test strictness on a small one
    r = lenard_bound(X, [], FockWindow(8))
    assert r.a_plus == 0.0 and r.bound == 1.0
    assert r.truncated_sup == pytest.approx(operator_norm(phase_effect(X, FockWindow(8))), abs=1e-12)
    assert r.truncated_sup < 1
    r = lenard_bound(HALF, [0, 1], w)
    assert r.a_plus == pytest.approx(0.5 + 1 / math.pi, abs=1e-14)
    assert r.bound == pytest.approx(1 + math.sqrt(0.5 + 1 / math.pi), abs=1e-14)
    full = np.linalg.eigvalsh(phase_effect(HALF, w) + np.diag([1.0, 1.0] + [0.0] * 62))[-1]
    assert r.truncated_sup == pytest.approx(full, abs=1e-12)
    assert r.truncated_sup <= r.bound + 1e-9


def test_lenard_rejects_full_circle():
    with pytest.raises(BoundInapplicableError):
        lenard_bound(ArcSet.full(), [0], FockWindow(8))
    with pytest.raises(OutOfWindowError):
        lenard_bound(HALF, [9], FockWindow(8))


def test_lenard_random_and_spectra(rng):
    for _ in range(50):
        l = rng.uniform(0.01, 0.9) * 2 * math.pi
        a = rng.uniform(0, 2 * math.pi)
        X = ArcSet.from_intervals([(a, a + l)])
        Y = sorted(set(rng.integers(0, 20, rng.integers(1, 6)).tolist()))
        r = lenard_bound(X, Y, FockWindow(64))
        assert r.a_plus < 1 and r.bound < 2
        assert r.truncated_sup <= r.bound + 1e-9
        f, t = lenard_spectra(X, Y, FockWindow(64), TorusWindow.symmetric(24))
        assert np.max(np.abs(f - t)) <= 1e-10


# -- complementarity -------------------------------------------------------------------

def test_max_scalar_examples():
    assert max_scalar_below(np.eye(3), 2) == pytest.approx(1.0)
    assert max_scalar_below(np.diag([0.5, 0.25]), 1) == pytest.approx(0.25)
    E = phase_effect(HALF, FockWindow(2))
    expected = (0.25 - 1 / math.pi**2) / 0.5
    assert max_scalar_below(E, 0) == pytest.approx(expected, abs=1e-12)
    assert oracles.bisection_alpha(E, 0) == pytest.approx(expected, abs=1e-12)


def test_max_scalar_singular_case():
    E = np.diag([1.0, 0.0, 0.3])
    assert max_scalar_below(E, 0) == pytest.approx(1.0, abs=1e-12)
    assert max_scalar_below(E, 1) == pytest.approx(0.0, abs=1e-12)


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12), e=st.integers(0, 11))
def test_inverse_and_bisection_agree(seed, n, e):
    e = e % n
    rng = np.random.default_rng(seed)
    G = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    E = G @ G.conj().T / n + 0.05 * np.eye(n)
    a = max_scalar_below(E, e, method="inverse")
    b = max_scalar_below(E, e, method="bisection")
    assert a == pytest.approx(b, abs=1e-9)


def test_complementarity_against_mp_inverse():
    X = HALF
    rows = complementarity_decay(X, (4, 8, 16, 24))
    for k, a in rows:
        assert a == pytest.approx(oracles.mp_toeplitz_alpha(X.arcs, k), rel=1e-10)
    two = ArcSet.from_intervals([(0.3, 1.1), (2.5, 4.0)])
    for k, a in complementarity_decay(two, (5, 12)):
        assert a == pytest.approx(oracles.mp_toeplitz_alpha(two.arcs, k), rel=1e-10)


def test_complementarity_matches_double_precision_where_valid():
    for k, a in complementarity_decay(HALF, (2, 4, 8)):
        E = phase_effect(HALF, FockWindow(k))
        assert a == pytest.approx(max_scalar_below(E, 0), rel=1e-8)


def test_complementarity_decreases():
    rows = complementarity_decay(HALF, (4, 8, 16, 32, 64, 128, 256))
    vals = [a for _, a in rows]
    assert all(v > 0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < vals[1]


def test_complementarity_precondition():
    with pytest.raises(InvalidInputError):
        complementarity_decay(ArcSet.full(), (4,))
    with pytest.raises(InvalidInputError):
        complementarity_decay(ArcSet.empty(), (4,))


def test_levinson_on_identity():
    eps = toeplitz_prediction_errors([1, 0, 0, 0], 30)
    assert [float(e) for e in eps] == [1.0, 1.0, 1.0, 1.0]


# -- shift compression -----------------------------------------------------------------

def test_shift_compress_examples():
    E = phase_effect(HALF, FockWindow(10))
    assert np.array_equal(shift_compress(E, 0), E)
    assert np.max(np.abs(shift_compress(E, 3) - phase_effect(HALF, FockWindow(7)))) <= 1e-12
    assert np.array_equal(shift_compress(np.diag([1.0, 2.0, 3.0]), 1), np.diag([2.0, 3.0]))
    with pytest.raises(OutOfWindowError):
        shift_compress(E, 10)


def test_shift_reduction_keeps_alpha_bound():
    # alpha |r><r| <= Phi(X) compresses to alpha |0><0| <= Phi(X) on the shifted window
    E = phase_effect(HALF, FockWindow(12))
    r = 4
    a = max_scalar_below(E, r)
    assert a <= max_scalar_below(shift_compress(E, r), 0) + 1e-12
