"""Hall-Post lower bounds and their saturation ratios.

The N-body energy is bounded below by a multiple of an (N-1)-body energy
with rescaled couplings.  For the three solvable families the ratio
``R_N = E_N / bound`` has a closed form in the Jastrow exponents beta (of the
N-body system) and beta' (of the rescaled (N-1)-body system).  The ratio
is computed exactly; whether the inequality holds is a separate predicate
(``R_N >= 1`` for positive energies, ``R_N <= 1`` for binding energies).
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from hallpost import DomainError
from hallpost.couplings import G_MIN, _check_dim, three_body_from_two_body
from hallpost.models import (
    Calogero1DParams,
    CalogeroDParams,
    HyperCoulombParams,
    _check_count,
    _check_positive,
    energy_calogero_1d,
    energy_calogero_d,
    energy_hyper_coulomb,
)


class Model(str, enum.Enum):
    CALOGERO_1D = "calogero1d"
    HYPER_COULOMB = "hypercoulomb"
    CALOGERO_D = "calogerod"


class Orientation(str, enum.Enum):
    AT_LEAST_ONE = "AtLeastOne"
    AT_MOST_ONE = "AtMostOne"


# smallest N for which a report (N-body against N-1) is defined
MIN_N = {Model.CALOGERO_1D: 3, Model.HYPER_COULOMB: 4, Model.CALOGERO_D: 4}


@dataclass(frozen=True)
class CouplingTuple:
    m: float
    g1: float
    g2: float
    g3: float

    def __post_init__(self):
        _check_positive("m", self.m)


@dataclass(frozen=True)
class BoundReport:
    energy: float
    bound: float
    ratio: float
    orientation: Orientation
    margin: float
    satisfied: bool
    beta: float = math.nan
    betaprime: float = math.nan

    @classmethod
    def from_ratio(cls, energy, ratio, orientation, beta, betaprime):
        if orientation is Orientation.AT_LEAST_ONE:
            satisfied = ratio >= 1.0
        else:
            satisfied = ratio <= 1.0
        dist = abs(ratio - 1.0)
        return cls(
            energy=energy,
            bound=energy / ratio,
            ratio=ratio,
            orientation=orientation,
            margin=dist if satisfied else -dist,
            satisfied=satisfied,
            beta=beta,
            betaprime=betaprime,
        )


# -- generic coupling transforms ---------------------------------------------


def _min_n_for(t: CouplingTuple, with_three_body: int, without: int) -> int:
    return with_three_body if t.g3 != 0.0 else without


def transform_general(N: int, t: CouplingTuple) -> tuple[float, CouplingTuple]:
    """Prefactor and couplings of the bound valid without translation invariance.

    ``E_N(t) >= prefactor * E_{N-1}(t')``.
    """
    _check_count(N, _min_n_for(t, 4, 3))
    g3 = t.g3 * (N - 2) / (N - 3) if t.g3 != 0.0 else 0.0
    return N / (N - 1), CouplingTuple(t.m, t.g1, t.g2 * (N - 1) / (N - 2), g3)


def transform_ti(N: int, t: CouplingTuple) -> tuple[float, CouplingTuple]:
    """Improved prefactor and couplings for translation-invariant Hamiltonians."""
    if t.g1 != 0.0:
        raise DomainError("translation-invariant bound needs g1 = 0")
    _check_count(N, _min_n_for(t, 4, 3))
    g3 = t.g3 * N * (N - 2) / ((N - 1) * (N - 3)) if t.g3 != 0.0 else 0.0
    return (N - 1) / (N - 2), CouplingTuple(t.m, 0.0, t.g2 * N / (N - 1), g3)


# -- rescaled exponents ------------------------------------------------------


def betaprime_calogero(N: int, beta: float) -> float:
    """Exponent of the (N-1)-body Calogero system at coupling N g / (N-1)."""
    _check_count(N, 3)
    if not beta >= 0.5:
        raise DomainError(f"beta = {beta} < 1/2")
    rad = N * (2.0 * beta - 1.0) ** 2 - 1.0
    if rad < 0.0:
        raise DomainError(f"N (2 beta - 1)^2 < 1 at N={N}, beta={beta}")
    return 0.5 + math.sqrt(rad / (N - 1)) / 2.0


def betaprime_hyper(N: int, beta: float) -> float:
    """Rescaled exponent entering the hyper-Coulomb ratio.

    Identical to ``betaprime_calogero(N - 1, beta)``, i.e. the exponent at
    coupling (N-1) g / (N-2).
    """
    _check_count(N, 3)
    if not beta >= 0.5:
        raise DomainError(f"beta = {beta} < 1/2")
    rad = (N - 1) * (2.0 * beta - 1.0) ** 2 - 1.0
    if rad < 0.0:
        raise DomainError(f"(N-1)(2 beta - 1)^2 < 1 at N={N}, beta={beta}")
    return 0.5 + math.sqrt(rad / (N - 2)) / 2.0


def betaprime_ddim(N: int, D: int, beta: float) -> float:
    """Exponent of the (N-1)-body D-dimensional system at coupling N g / (N-1).

    Uses the conjugate form of
    ``-(D-2)/2 + sqrt(N (2 beta + D - 2)^2 - (D-2)^2) / (2 sqrt(N-1))``
    which is exact at beta = 0.
    """
    _check_count(N, 3)
    D = _check_dim(D)
    if not beta >= 0.0:
        raise DomainError(f"beta = {beta} < 0")
    s = D - 2
    rad = N * (2.0 * beta + s) ** 2 - s * s
    if rad < 0.0:
        raise DomainError(f"negative radicand at N={N}, D={D}, beta={beta}")
    if beta == 0.0:
        return 0.0
    if s == 0:
        return beta * math.sqrt(N / (N - 1))
    root_n1 = math.sqrt(N - 1)
    return 2.0 * N * beta * (beta + s) / (root_n1 * (math.sqrt(rad) + s * root_n1))


def check_three_body_rescaling(N: int, D: int, g: float) -> float:
    """Margin of N(N-2)/((N-1)(N-3)) G(g) >= G(N g / (N-1)); nonnegative when it holds."""
    _check_count(N, 4)
    lhs = N * (N - 2) / ((N - 1) * (N - 3)) * three_body_from_two_body(g, D)
    return lhs - three_body_from_two_body(N * g / (N - 1), D)


# -- reports -----------------------------------------------------------------


def _ratio_calogero_1d(N: int, beta: float) -> tuple[float, float]:
    bp = betaprime_calogero(N, beta)
    return (N + 1 + (beta - 1.0) * N) / (N + (bp - 1.0) * (N - 1)), bp


def _ratio_hyper(N: int, beta: float) -> tuple[float, float]:
    bp = betaprime_hyper(N, beta)
    num = N * N * (N - 3 + (N - 1) * (N - 2) * bp) ** 2
    den = (N - 1) ** 2 * (N - 2 + N * (N - 1) * beta) ** 2
    return num / den, bp


def _ratio_calogero_d(N: int, D: int, beta: float) -> tuple[float, float]:
    bp = betaprime_ddim(N, D, beta)
    return (D + N * beta) / (D + (N - 1) * bp), bp


def hp_report_calogero_1d(N: int, omega: float, g: float) -> BoundReport:
    _check_count(N, MIN_N[Model.CALOGERO_1D])
    p = Calogero1DParams(N, omega, g)
    beta = p.beta
    ratio, bp = _ratio_calogero_1d(N, beta)
    return BoundReport.from_ratio(
        energy_calogero_1d(p), ratio, Orientation.AT_LEAST_ONE, beta, bp
    )


def hp_report_hyper_coulomb(N: int, g: float, alpha: float) -> BoundReport:
    _check_count(N, MIN_N[Model.HYPER_COULOMB])
    p = HyperCoulombParams(N, g, alpha)
    beta = p.beta
    ratio, bp = _ratio_hyper(N, beta)
    return BoundReport.from_ratio(
        energy_hyper_coulomb(p), ratio, Orientation.AT_MOST_ONE, beta, bp
    )


def hp_report_calogero_d(N: int, D: int, omega: float, g: float) -> BoundReport:
    _check_count(N, MIN_N[Model.CALOGERO_D])
    p = CalogeroDParams(N, D, omega, g)
    beta = p.beta
    ratio, bp = _ratio_calogero_d(N, D, beta)
    return BoundReport.from_ratio(
        energy_calogero_d(p), ratio, Orientation.AT_LEAST_ONE, beta, bp
    )


def assembled_bound(
    model: Model, N: int, g: float, *, omega: float = 1.0, alpha: float = 1.0, D=None
) -> float:
    """Hall-Post right-hand side built from the (N-1)-body energy formulas.

    Independent of the closed-form ratios: the subsystem energy is evaluated
    at explicitly rescaled frequency / couplings.
    """
    model = Model(model)
    _check_count(N, MIN_N[model])
    if model is Model.CALOGERO_1D:
        pref, t = transform_ti(N, CouplingTuple(1.0, 0.0, g, 0.0))
        sub = Calogero1DParams(N - 1, omega * math.sqrt(N / (N - 1)), t.g2)
        return pref * energy_calogero_1d(sub)
    if model is Model.HYPER_COULOMB:
        # the hyper-Coulomb beta' corresponds to (N-1) g / (N-2), see betaprime_hyper
        g_sub = (N - 1) * g / (N - 2)
        alpha_sub = alpha * (N - 1) * math.sqrt(N - 2) / N**1.5
        return (N - 1) / (N - 2) * energy_hyper_coulomb(
            HyperCoulombParams(N - 1, g_sub, alpha_sub)
        )
    if D is None:
        raise DomainError("calogerod needs a dimension")
    pref, t = transform_ti(N, CouplingTuple(1.0, 0.0, g, 0.0))
    sub = CalogeroDParams(N - 1, D, omega * math.sqrt(N / (N - 1)), t.g2)
    return pref * energy_calogero_d(sub)


def hp_report(
    model: Model, N: int, g: float, *, omega: float = 1.0, alpha: float = 1.0, D=None
) -> BoundReport:
    model = Model(model)
    if model is Model.CALOGERO_1D:
        return hp_report_calogero_1d(N, omega, g)
    if model is Model.HYPER_COULOMB:
        return hp_report_hyper_coulomb(N, g, alpha)
    if D is None:
        raise DomainError("calogerod needs a dimension")
    return hp_report_calogero_d(N, D, omega, g)


def ratio_limits(model: Model, N: int, D=None) -> tuple[float, float]:
    """Analytic ratios at g = 0 and g -> infinity."""
    model = Model(model)
    _check_count(N, MIN_N[model])
    if model is Model.CALOGERO_1D:
        return (N + 1) / N, math.sqrt(N / (N - 1))
    if model is Model.HYPER_COULOMB:
        num = N * N * (N - 3 + (N - 1) * (N - 2)) ** 2
        den = (N - 1) ** 2 * (N - 2 + N * (N - 1)) ** 2
        return num / den, (N - 2) / (N - 1)
    if D is None:
        raise DomainError("calogerod needs a dimension")
    _check_dim(D)
    return 1.0, math.sqrt(N / (N - 1))


# -- grid audit --------------------------------------------------------------


def default_g_grid() -> list[float]:
    return [0.25 * k for k in range(21)] + [10.0, 100.0, 1000.0, 10000.0]


@dataclass(frozen=True)
class AuditPoint:
    model: Model
    N: int
    D: int | None
    g: float
    report: BoundReport | None = None
    three_body_margin: float | None = None
    error: str | None = None

    @property
    def negative_coupling(self) -> bool:
        # -1/4 <= g < 0 is supported but outside the usual physical range
        return self.g < 0.0


@dataclass
class AuditSummary:
    points: list[AuditPoint] = field(default_factory=list)

    @property
    def violation_count(self) -> int:
        return sum(1 for p in self.points if p.report and not p.report.satisfied)

    @property
    def error_count(self) -> int:
        return sum(1 for p in self.points if p.error is not None)

    @property
    def worst_margin(self) -> float:
        margins = [p.report.margin for p in self.points if p.report]
        return min(margins) if margins else math.nan

    @property
    def worst_three_body_margin(self) -> float:
        margins = [p.three_body_margin for p in self.points if p.three_body_margin is not None]
        return min(margins) if margins else math.nan


def _evaluate(model: Model, N: int, D, g: float, omega: float, alpha: float) -> AuditPoint:
    try:
        report = hp_report(model, N, g, omega=omega, alpha=alpha, D=D)
        tb = check_three_body_rescaling(N, D, g) if model is Model.CALOGERO_D else None
    except DomainError as exc:
        return AuditPoint(model, N, D, g, error=str(exc))
    return AuditPoint(model, N, D, g, report=report, three_body_margin=tb)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("HALLPOST_THREADS", "1")))
    except ValueError:
        return 1


def audit_grid(
    model: Model,
    N_range: Iterable[int],
    g_grid: Sequence[float] | None = None,
    D_range: Iterable[int] | None = None,
    *,
    omega: float = 1.0,
    alpha: float = 1.0,
    threads: int | None = None,
) -> AuditSummary:
    """Evaluate the Hall-Post report on a (N, D, g) grid in lexicographic order.

    Per-point domain errors are kept on the point instead of aborting.
    """
    model = Model(model)
    g_values = sorted(default_g_grid() if g_grid is None else g_grid)
    if model is Model.CALOGERO_D:
        if D_range is None:
            raise DomainError("calogerod audit needs a dimension range")
        dims = sorted(D_range)
    else:
        dims = [None]
    jobs = [(N, D, g) for N in sorted(N_range) for D in dims for g in g_values]
    threads = thread_count() if threads is None else threads

    def run(job):
        return _evaluate(model, *job, omega, alpha)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(run, jobs))
    else:
        points = [run(job) for job in jobs]
    return AuditSummary(points)


def validate_n_range(model: Model, N_range: Iterable[int]) -> None:
    model = Model(model)
    bad = [N for N in N_range if N < MIN_N[model]]
    if bad:
        raise DomainError(f"{model.value} needs N >= {MIN_N[model]}, got N = {min(bad)}")


__all__ = [
    "G_MIN",
    "Model",
    "Orientation",
    "CouplingTuple",
    "BoundReport",
    "transform_general",
    "transform_ti",
    "betaprime_calogero",
    "betaprime_hyper",
    "betaprime_ddim",
    "check_three_body_rescaling",
    "hp_report_calogero_1d",
    "hp_report_hyper_coulomb",
    "hp_report_calogero_d",
    "hp_report",
    "assembled_bound",
    "ratio_limits",
    "audit_grid",
    "AuditPoint",
    "AuditSummary",
    "default_g_grid",
    "validate_n_range",
]
