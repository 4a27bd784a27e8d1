import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hallpost import DomainError
from hallpost.models import (
    Calogero1DParams,
    CalogeroDParams,
    Configuration,
    HyperCoulombParams,
    WavefunctionParams,
    default_gauss_coeff,
    energy_calogero_1d,
    energy_calogero_d,
    energy_hyper_coulomb,
    log_wavefunction_calogero,
)


def test_calogero_1d_values():
    assert energy_calogero_1d(Calogero1DParams(2, 1.0, 0.0)) == pytest.approx(1.5, rel=1e-15)
    assert energy_calogero_1d(Calogero1DParams(2, 1.0, 2.0)) == pytest.approx(2.5, rel=1e-15)
    assert energy_calogero_1d(Calogero1DParams(3, 1.0, 2.0)) == pytest.approx(
        8.57321409974112334369, rel=1e-14
    )
    assert energy_calogero_1d(Calogero1DParams(5, 1.0, 0.0)) == pytest.approx(
        18.9736659610102759920, rel=1e-14
    )


def test_hyper_coulomb_values():
    assert energy_hyper_coulomb(HyperCoulombParams(5, 0.0, 1.0)) == pytest.approx(-1 / 2645, rel=1e-15)
    assert energy_hyper_coulomb(HyperCoulombParams(3, 0.0, 1.0)) == pytest.approx(-1 / 147, rel=1e-15)
    with pytest.raises(DomainError):
        HyperCoulombParams(2, 0.0, 1.0)


def test_calogero_d_values():
    assert energy_calogero_d(CalogeroDParams(3, 2, 1.0, 0.0)) == pytest.approx(math.sqrt(6), rel=1e-15)
    assert energy_calogero_d(CalogeroDParams(2, 3, 1.0, 2.0)) == pytest.approx(2.5, rel=1e-15)
    assert energy_calogero_d(CalogeroDParams(5, 3, 2.0, 0.0)) == pytest.approx(
        18.9736659610102759920, rel=1e-14
    )


@pytest.mark.parametrize(
    "factory",
    [
        lambda: Calogero1DParams(1, 1.0, 0.0),
        lambda: Calogero1DParams(3, 0.0, 0.0),
        lambda: Calogero1DParams(3, 1.0, -0.3),
        lambda: HyperCoulombParams(4, 0.0, -1.0),
        lambda: CalogeroDParams(3, 1, 1.0, 0.0),
        lambda: CalogeroDParams(3, 3, 1.0, -0.1),
    ],
)
def test_param_validation(factory):
    with pytest.raises(DomainError):
        factory()


@given(st.integers(2, 30), st.floats(-0.25, 1e3), st.floats(1e-3, 1e3))
def test_linear_in_omega(N, g, omega):
    e1 = energy_calogero_1d(Calogero1DParams(N, omega, g))
    e2 = energy_calogero_1d(Calogero1DParams(N, 2 * omega, g))
    assert e2 == pytest.approx(2 * e1, rel=1e-15)


@given(st.integers(2, 30), st.integers(2, 10), st.floats(0.0, 1e3), st.floats(1e-3, 1e3))
def test_linear_in_omega_ddim(N, D, g, omega):
    e1 = energy_calogero_d(CalogeroDParams(N, D, omega, g))
    e2 = energy_calogero_d(CalogeroDParams(N, D, 2 * omega, g))
    assert e2 == pytest.approx(2 * e1, rel=1e-15)


@given(st.integers(3, 30), st.floats(-0.25, 1e3), st.floats(1e-3, 1e3))
def test_hyper_scales_as_alpha_squared(N, g, alpha):
    e1 = energy_hyper_coulomb(HyperCoulombParams(N, g, alpha))
    e2 = energy_hyper_coulomb(HyperCoulombParams(N, g, 2 * alpha))
    assert e1 < 0
    assert e2 == pytest.approx(4 * e1, rel=1e-14)


@pytest.mark.parametrize("N", range(2, 12))
def test_noninteracting_identities(N):
    assert energy_calogero_1d(Calogero1DParams(N, 1.0, 0.0)) == pytest.approx(
        math.sqrt(N / 8) * (N * N - 1), rel=1e-15
    )
    for D in range(2, 6):
        assert energy_calogero_d(CalogeroDParams(N, D, 1.0, 0.0)) == pytest.approx(
            math.sqrt(N / 8) * D * (N - 1), rel=1e-15
        )


def test_log_wavefunction_values():
    p1 = Calogero1DParams(2, 1.0, 0.0)
    assert log_wavefunction_calogero(p1, WavefunctionParams(1.0, 0.25), Configuration((0.0, 1.0))) == pytest.approx(-0.25)
    p2 = Calogero1DParams(2, 1.0, 2.0)
    assert log_wavefunction_calogero(
        p2, WavefunctionParams(2.0, 0.25), Configuration((-1.0, 1.0))
    ) == pytest.approx(0.386294361119890618834, rel=1e-14)


def test_default_gauss_coeff():
    p = Calogero1DParams(8, 2.0, 1.0)
    assert p.default_gauss_coeff == default_gauss_coeff(8, 2.0) == pytest.approx(2.0 / (2 * 4.0))


def test_log_wavefunction_floor_and_ordering():
    p = Calogero1DParams(2, 1.0, 0.0)
    with pytest.raises(DomainError):
        log_wavefunction_calogero(p, None, Configuration((0.0, 1e-12)))
    with pytest.raises(DomainError):
        Configuration((1.0, 0.0))
    with pytest.raises(DomainError):
        log_wavefunction_calogero(p, None, Configuration((0.0, 1.0, 2.0)))


@given(
    st.lists(st.floats(-5, 5), min_size=3, max_size=6, unique=True),
    st.floats(-10, 10),
)
def test_translation_invariance(xs, shift):
    xs = sorted(xs)
    if min(np.diff(xs)) < 1e-3:
        return
    p = Calogero1DParams(len(xs), 1.0, 0.75)
    a = log_wavefunction_calogero(p, None, Configuration(xs))
    b = log_wavefunction_calogero(p, None, Configuration([x + shift for x in xs]))
    assert b == pytest.approx(a, rel=1e-9, abs=1e-9)
