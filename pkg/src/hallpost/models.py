"""Closed-form ground-state energies of the three solvable families.

Units are hbar = m = 1 throughout.

* Calogero 1D: pairwise (omega^2/4) x_ij^2 + g / x_ij^2 on a line.
* Hyper-Coulomb: pairwise g / x_ij^2 plus -alpha^2 / rho, where
  rho^2 = sum_{i<j} x_ij^2.
* Calogero D: pairwise (omega^2/4) r_ij^2 + g / r_ij^2 plus the three-body
  term with strength G(g) in D >= 2 dimensions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from hallpost import DomainError
from hallpost.couplings import G_MIN, _check_dim, beta_from_g, beta_from_g_ddim

SEPARATION_FLOOR = 1e-10


def _check_count(N, minimum: int) -> int:
    if isinstance(N, bool) or not isinstance(N, int):
        raise DomainError(f"particle count must be an integer, got {N!r}")
    if N < minimum:
        raise DomainError(f"N = {N} but this model needs N >= {minimum}")
    return N


def _check_positive(name: str, value: float) -> float:
    if not value > 0.0 or math.isinf(value):
        raise DomainError(f"{name} = {value} must be positive and finite")
    return float(value)


@dataclass(frozen=True)
class Calogero1DParams:
    N: int
    omega: float
    g: float

    def __post_init__(self):
        _check_count(self.N, 2)
        _check_positive("omega", self.omega)
        if not self.g >= G_MIN:
            raise DomainError(f"g = {self.g} is below -1/4")

    @property
    def beta(self) -> float:
        return beta_from_g(self.g)

    @property
    def default_gauss_coeff(self) -> float:
        return default_gauss_coeff(self.N, self.omega)


@dataclass(frozen=True)
class HyperCoulombParams:
    N: int
    g: float
    alpha: float

    def __post_init__(self):
        _check_count(self.N, 3)
        _check_positive("alpha", self.alpha)
        if not self.g >= G_MIN:
            raise DomainError(f"g = {self.g} is below -1/4")

    @property
    def beta(self) -> float:
        return beta_from_g(self.g)


@dataclass(frozen=True)
class CalogeroDParams:
    N: int
    D: int
    omega: float
    g: float

    def __post_init__(self):
        _check_count(self.N, 2)
        _check_dim(self.D)
        _check_positive("omega", self.omega)
        if not self.g >= 0.0:
            raise DomainError(f"g = {self.g} must be >= 0 in D dimensions")

    @property
    def beta(self) -> float:
        return beta_from_g_ddim(self.g, self.D)

    @property
    def G(self) -> float:
        return self.beta**2


@dataclass(frozen=True)
class Configuration:
    """Particle positions on a line, restricted to the ordered sector."""

    x: tuple = field()

    def __init__(self, x: Sequence[float]):
        xs = tuple(float(v) for v in x)
        if len(xs) < 2:
            raise DomainError("a configuration needs at least two particles")
        if any(not math.isfinite(v) for v in xs):
            raise DomainError("coordinates must be finite")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError("coordinates must be strictly increasing")
        object.__setattr__(self, "x", xs)

    @property
    def N(self) -> int:
        return len(self.x)

    @property
    def min_separation(self) -> float:
        return min(b - a for a, b in zip(self.x, self.x[1:]))


@dataclass(frozen=True)
class WavefunctionParams:
    beta: float
    gauss_coeff: float

    def __post_init__(self):
        _check_positive("gauss_coeff", self.gauss_coeff)


def default_gauss_coeff(N: int, omega: float) -> float:
    """Gaussian coefficient making the Jastrow-Gaussian state exact.

    The relative motion oscillates at omega * sqrt(N/2), giving
    exp(-omega / (2 sqrt(2N)) * sum_{i<j} x_ij^2).
    """
    return omega / (2.0 * math.sqrt(2.0 * N))


def printed_gauss_coeff(N: int, omega: float) -> float:
    """Twice the exact coefficient; kept only to exhibit the mismatch."""
    return omega / math.sqrt(2.0 * N)


def energy_calogero_1d(p: Calogero1DParams) -> float:
    N, beta = p.N, p.beta
    return math.sqrt(N / 8.0) * (N * N - 1 + (beta - 1.0) * N * (N - 1)) * p.omega


def hyper_coulomb_formula(N: int, beta: float, alpha: float) -> float:
    """-alpha^2 / (N [N - 2 + N(N-1) beta]^2) without range checks on N."""
    return -(alpha**2) / (N * (N - 2 + N * (N - 1) * beta) ** 2)


def energy_hyper_coulomb(p: HyperCoulombParams) -> float:
    """Binding energy with the -alpha^2 prefactor convention.

    The N = 2 reduction of the same Hamiltonian gives -alpha^4 / (4 beta^2)
    instead; every bound ratio is independent of the prefactor.
    """
    return hyper_coulomb_formula(p.N, p.beta, p.alpha)


def energy_calogero_d(p: CalogeroDParams) -> float:
    N, D = p.N, p.D
    return math.sqrt(N / 8.0) * (D * (N - 1) + N * (N - 1) * p.beta) * p.omega


def log_wavefunction_calogero(
    p: Calogero1DParams,
    w: WavefunctionParams | None,
    c: Configuration,
    floor: float = SEPARATION_FLOOR,
) -> float:
    """Log of the Jastrow-Gaussian ground state in the ordered sector.

    ``w=None`` uses ``beta`` from ``p`` and the exact Gaussian coefficient.
    """
    if w is None:
        w = WavefunctionParams(p.beta, p.default_gauss_coeff)
    if c.N != p.N:
        raise DomainError(f"configuration has {c.N} particles, expected {p.N}")
    if c.min_separation < floor:
        raise DomainError(
            f"pair separation {c.min_separation:g} below floor {floor:g}"
        )
    x = c.x
    log_jastrow = 0.0
    gauss = 0.0
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            d = x[j] - x[i]
            log_jastrow += math.log(d)
            gauss += d * d
    return w.beta * log_jastrow - w.gauss_coeff * gauss
