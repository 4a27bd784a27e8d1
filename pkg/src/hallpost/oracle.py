"""Numerical checks of the closed forms that do not reuse them.

* Local energy H psi / psi of the Calogero ground state, analytically and by
  finite differences; it must be constant and equal to the closed form.
* A finite-difference eigensolver for the two-body relative problem
  -u'' + g/x^2 u + V(x) u = E u, with Sturm-sequence bisection.
* Probes of the convexity inequality for f(x) = -1/sqrt(x) and of the
  pair-counting identity behind the subset decomposition.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from hallpost import DomainError
from hallpost.couplings import G_MIN, beta_from_g
from hallpost.models import (
    Calogero1DParams,
    Configuration,
    WavefunctionParams,
    energy_calogero_1d,
    hyper_coulomb_formula,
)


FD_STEP_FRACTION = 1e-4
_FD_CONTEXT = mpmath.MPContext()
_FD_CONTEXT.dps = 30


class Method(str, enum.Enum):
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "fd"


# -- local energy ------------------------------------------------------------


def potential_calogero(p: Calogero1DParams, x: Sequence[float]) -> float:
    v = 0.0
    n = len(x)
    quarter_w2 = p.omega**2 / 4.0
    for i in range(n):
        for j in range(i + 1, n):
            d2 = (x[i] - x[j]) ** 2
            v += quarter_w2 * d2 + p.g / d2
    return v


def _log_derivatives(beta: float, a: float, x: np.ndarray):
    """Gradient and Laplacian diagonal of log psi, psi = prod |x_ij|^beta exp(-a sum x_ij^2)."""
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.inf)
    inv = 1.0 / diff
    np.fill_diagonal(diff, 0.0)
    grad = beta * inv.sum(axis=1) - 2.0 * a * diff.sum(axis=1)
    lap = -beta * (inv**2).sum(axis=1) - 2.0 * a * (len(x) - 1)
    return grad, lap


def _fd_derivatives(w: WavefunctionParams, x: np.ndarray, h: float):
    """Central differences of log psi with one Richardson step (h, h/2).

    log psi is evaluated in 30-digit arithmetic so that the second difference
    is limited by truncation, not by cancellation.  Only pair terms that
    contain the moved particle are differenced.
    """
    ctx = _FD_CONTEXT
    n = len(x)
    xs = [ctx.mpf(float(v)) for v in x]
    beta = ctx.mpf(w.beta)
    a = ctx.mpf(w.gauss_coeff)

    def partial(k, xk):
        total = ctx.mpf(0)
        for j in range(n):
            if j != k:
                d = xk - xs[j]
                total += beta * ctx.log(abs(d)) - a * d * d
        return total

    def at(step):
        step = ctx.mpf(step)
        grad = []
        lap = []
        for k in range(n):
            fp, f0, fm = partial(k, xs[k] + step), partial(k, xs[k]), partial(k, xs[k] - step)
            grad.append((fp - fm) / (2 * step))
            lap.append((fp - 2 * f0 + fm) / (step * step))
        return grad, lap

    g1, l1 = at(h)
    g2, l2 = at(h / 2.0)
    grad = np.array([float((4 * b - c) / 3) for b, c in zip(g2, g1)])
    lap = np.array([float((4 * b - c) / 3) for b, c in zip(l2, l1)])
    return grad, lap


def local_energy_calogero(
    p: Calogero1DParams,
    w: WavefunctionParams | None,
    c: Configuration,
    method: Method | str = Method.ANALYTIC,
    h: float | None = None,
) -> float:
    """(H psi)/psi at ``c`` using d^2 psi / psi = lap(log psi) + |grad log psi|^2.

    ``h`` defaults to ``FD_STEP_FRACTION`` times the smallest pair separation.
    """
    method = Method(method)
    if w is None:
        w = WavefunctionParams(p.beta, p.default_gauss_coeff)
    if c.N != p.N:
        raise DomainError(f"configuration has {c.N} particles, expected {p.N}")
    sep = c.min_separation
    if h is None:
        h = FD_STEP_FRACTION * sep
    if not h > 0.0:
        raise DomainError("finite-difference step must be positive")
    if sep <= 10.0 * h:
        raise DomainError(f"min pair separation {sep:g} must exceed 10 h = {10 * h:g}")
    x = np.asarray(c.x, dtype=float)
    if method is Method.ANALYTIC:
        grad, lap = _log_derivatives(w.beta, w.gauss_coeff, x)
    else:
        grad, lap = _fd_derivatives(w, x, h)
    kinetic = -0.5 * float(np.sum(lap + grad**2))
    return kinetic + potential_calogero(p, c.x)


@dataclass(frozen=True)
class ResidualReport:
    mean: float
    stddev: float
    max_dev: float
    reference: float
    rel_error: float
    n_samples: int = 0
    method: str = Method.ANALYTIC.value
    # max |E_fd - E_analytic| / |reference| over the same samples
    fd_agreement: float = math.nan
    fd_stddev: float = math.nan

    @property
    def rel_stddev(self) -> float:
        return self.stddev / abs(self.reference)


def sample_configurations(
    N: int, omega: float, n_samples: int, seed: int, max_retries: int = 1000
) -> list[Configuration]:
    """Uniform points in [-L, L], L = 2 sqrt(N / omega), sorted, well separated."""
    rng = np.random.default_rng(seed)
    L = 2.0 * math.sqrt(N) / math.sqrt(omega)
    floor = 1e-3 * L
    out = []
    retries = 0
    while len(out) < n_samples:
        x = np.sort(rng.uniform(-L, L, size=N))
        if np.min(np.diff(x)) < floor:
            retries += 1
            if retries > max_retries * n_samples:
                raise RuntimeError("could not draw well-separated configurations")
            continue
        out.append(Configuration(x))
    return out


def residual_stats(
    p: Calogero1DParams,
    n_samples: int = 100,
    seed: int = 0,
    h: float | None = None,
    gauss_coeff: float | None = None,
) -> ResidualReport:
    """Local-energy statistics over seeded configurations (analytic derivatives).

    The finite-difference evaluation runs on the same samples and its worst
    relative deviation from the analytic value is stored in ``fd_agreement``.
    """
    if n_samples < 10:
        raise DomainError("need at least 10 samples")
    a = p.default_gauss_coeff if gauss_coeff is None else gauss_coeff
    w = WavefunctionParams(p.beta, a)
    configs = sample_configurations(p.N, p.omega, n_samples, seed)
    exact = np.array([local_energy_calogero(p, w, c, Method.ANALYTIC, h) for c in configs])
    fd = np.array([local_energy_calogero(p, w, c, Method.FINITE_DIFFERENCE, h) for c in configs])
    reference = energy_calogero_1d(p)
    mean = float(np.mean(exact))
    return ResidualReport(
        mean=mean,
        stddev=float(np.std(exact)),
        max_dev=float(np.max(np.abs(exact - mean))),
        reference=reference,
        rel_error=abs(mean - reference) / abs(reference),
        n_samples=n_samples,
        fd_agreement=float(np.max(np.abs(fd - exact))) / abs(reference),
        fd_stddev=float(np.std(fd)),
    )


# -- two-body radial eigensolver ---------------------------------------------


class RadialKind(str, enum.Enum):
    OSCILLATOR = "oscillator"
    COULOMB = "coulomb"


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialProblem:
    """-u'' + (g/x^2) u + V(x) u = E u on (x_min, x_max) with u = 0 at both ends.

    V = omega^2 x^2 / 4 for the oscillator and -lam / x for Coulomb; this is
    the relative motion of two particles of unit mass.
    """

    kind: RadialKind
    g: float = 0.0
    omega: float = 1.0
    lam: float = 1.0
    x_min: float | None = None
    x_max: float | None = None
    grid_points: int = 4096

    def __post_init__(self):
        object.__setattr__(self, "kind", RadialKind(self.kind))
        if not self.g >= G_MIN:
            raise DomainError(f"g = {self.g} is below -1/4")
        if self.kind is RadialKind.OSCILLATOR and not self.omega > 0.0:
            raise DomainError("omega must be positive")
        if self.kind is RadialKind.COULOMB and not self.lam > 0.0:
            raise DomainError("lambda must be positive")
        if self.grid_points < 64:
            raise DomainError("grid_points must be >= 64")
        if self.x_max is None:
            if self.kind is RadialKind.OSCILLATOR:
                xmax = 12.0 / math.sqrt(self.omega)
            else:
                xmax = 40.0 * beta_from_g(self.g) / self.lam
            object.__setattr__(self, "x_max", xmax)
        if self.x_min is None:
            object.__setattr__(self, "x_min", self.x_max * 1e-12)
        if not 0.0 < self.x_min < self.x_max:
            raise DomainError("need 0 < x_min < x_max")

    def potential(self, x: np.ndarray) -> np.ndarray:
        v = self.g / x**2
        if self.kind is RadialKind.OSCILLATOR:
            return v + self.omega**2 * x**2 / 4.0
        return v - self.lam / x


def _tridiagonal(prob: RadialProblem, n: int):
    """Interior-node matrix of the 3-point Laplacian; n interior points."""
    h = (prob.x_max - prob.x_min) / (n + 1)
    x = prob.x_min + h * np.arange(1, n + 1)
    diag = 2.0 / h**2 + prob.potential(x)
    off = -1.0 / h**2
    return diag, off


def sturm_count(diag: np.ndarray, off: float, shift: float) -> int:
    """Number of eigenvalues below ``shift`` (negative LDL^T pivots)."""
    off2 = off * off
    count = 0
    q = math.inf
    for d in (diag - shift).tolist():
        q = d - off2 / q
        if q == 0.0:
            q = -1e-300
        if q < 0.0:
            count += 1
    return count


def lowest_eigenvalue(diag: np.ndarray, off: float, rtol: float = 1e-14) -> float:
    """Bisection on the Sturm count for the smallest eigenvalue."""
    # Gershgorin interval
    lo = float(np.min(diag)) - 2.0 * abs(off)
    hi = float(np.min(diag)) + 2.0 * abs(off)
    while sturm_count(diag, off, hi) < 1:
        hi += hi - lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if sturm_count(diag, off, mid) >= 1:
            hi = mid
        else:
            lo = mid
        if hi - lo <= rtol * max(abs(lo), abs(hi), 1e-300):
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class RadialResult:
    energy: float
    coarse: float
    fine: float

    @property
    def refinement_change(self) -> float:
        return abs(self.fine - self.coarse) / abs(self.fine)


def solve_two_body_radial_detailed(prob: RadialProblem, rtol: float = 1e-5) -> RadialResult:
    n = prob.grid_points
    e_coarse = lowest_eigenvalue(*_tridiagonal(prob, n))
    # halve the spacing: (n + 1) intervals become 2 (n + 1)
    e_fine = lowest_eigenvalue(*_tridiagonal(prob, 2 * n + 1))
    result = RadialResult((4.0 * e_fine - e_coarse) / 3.0, e_coarse, e_fine)
    if result.refinement_change > rtol:
        raise ConvergenceError(
            f"grid refinement changed E0 by {result.refinement_change:.3g} (> {rtol:g})"
        )
    return result


def solve_two_body_radial(prob: RadialProblem) -> float:
    """Lowest eigenvalue, second order FD plus one Richardson step."""
    return solve_two_body_radial_detailed(prob).energy


def two_body_reference(prob: RadialProblem) -> dict:
    """Closed-form values the radial ground state is compared against.

    For Coulomb both conventions are given: the exact reduced problem
    (-lam^2 / (4 beta^2)) and the -alpha^2 formula at N = 2 with
    alpha^2 = lam, which differ.
    """
    beta = beta_from_g(prob.g)
    if prob.kind is RadialKind.OSCILLATOR:
        return {"exact": prob.omega * (beta + 0.5)}
    return {
        "exact": -(prob.lam**2) / (4.0 * beta**2),
        "closed_form_n2": hyper_coulomb_formula(2, beta, math.sqrt(prob.lam)),
    }


# -- identity probes ---------------------------------------------------------


def convexity_probe(points: Sequence[float], weights: Sequence[float]) -> float:
    """f(weighted mean) - weighted mean of f for f(x) = -1/sqrt(x); >= 0 when convex."""
    pts = np.asarray(points, dtype=float)
    wts = np.asarray(weights, dtype=float)
    if pts.size == 0 or pts.shape != wts.shape:
        raise DomainError("points and weights must be non-empty and of equal length")
    if np.any(pts <= 0.0) or np.any(wts <= 0.0):
        raise DomainError("points and weights must be positive")
    wts = wts / math.fsum(wts)
    # mean as an offset from the smallest point: exact for coincident points
    lo = float(pts.min())
    mean = lo + math.fsum(wts * (pts - lo))
    root_m = math.sqrt(mean)
    roots = np.sqrt(pts)
    # 1/sqrt(x) - 1/sqrt(m) = (m - x) / (sqrt(x) sqrt(m) (sqrt(m) + sqrt(x)))
    terms = wts * (mean - pts) / (roots * root_m * (root_m + roots))
    return math.fsum(terms)


def _pair_sum(x: Sequence[float]) -> float:
    return sum((x[i] - x[j]) ** 2 for i in range(len(x)) for j in range(i + 1, len(x)))


def subset_identity_check(c: Configuration) -> float:
    """|sum over k of S_k - (N-2) S|, S = sum_{i<j} x_ij^2, S_k omitting particle k."""
    if c.N < 3:
        raise DomainError("need N >= 3")
    total = _pair_sum(c.x)
    partial = sum(_pair_sum(c.x[:k] + c.x[k + 1:]) for k in range(c.N))
    return abs(partial - (c.N - 2) * total)
