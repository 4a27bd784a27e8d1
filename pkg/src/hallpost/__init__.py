"""Exact N-body ground states and Hall-Post lower bounds for Calogero-type models."""

__version__ = "0.1.0"


class DomainError(ValueError):
    """Raised when parameters leave the region where a closed form is valid."""


from hallpost.couplings import (  # noqa: E402
    DimensionedCoupling,
    InverseSquarePair,
    beta_from_g,
    beta_from_g_ddim,
    g_from_beta,
    three_body_from_two_body,
)
from hallpost.models import (  # noqa: E402
    Calogero1DParams,
    CalogeroDParams,
    Configuration,
    HyperCoulombParams,
    WavefunctionParams,
    energy_calogero_1d,
    energy_calogero_d,
    energy_hyper_coulomb,
    log_wavefunction_calogero,
)
from hallpost.bounds import (  # noqa: E402
    BoundReport,
    CouplingTuple,
    Model,
    Orientation,
    audit_grid,
    hp_report_calogero_1d,
    hp_report_calogero_d,
    hp_report_hyper_coulomb,
    ratio_limits,
)

__all__ = [
    "DomainError",
    "InverseSquarePair",
    "DimensionedCoupling",
    "beta_from_g",
    "g_from_beta",
    "beta_from_g_ddim",
    "three_body_from_two_body",
    "Calogero1DParams",
    "HyperCoulombParams",
    "CalogeroDParams",
    "Configuration",
    "WavefunctionParams",
    "energy_calogero_1d",
    "energy_hyper_coulomb",
    "energy_calogero_d",
    "log_wavefunction_calogero",
    "BoundReport",
    "CouplingTuple",
    "Model",
    "Orientation",
    "hp_report_calogero_1d",
    "hp_report_hyper_coulomb",
    "hp_report_calogero_d",
    "ratio_limits",
    "audit_grid",
]
