"""Inverse-square couplings and their Jastrow exponents.

In one dimension a pair term g/x^2 is paired with the exponent beta of
|x|^beta through g = beta (beta - 1), taking the root beta >= 1/2.  In D
dimensions the two-body strength g and three-body strength G satisfy
g = G + (D - 2) sqrt(G) with G = beta^2, taking beta >= 0.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

from hallpost import DomainError

G_MIN = -0.25


def _check_dim(D) -> int:
    if isinstance(D, bool) or not isinstance(D, numbers.Integral):
        raise DomainError(f"dimension must be an integer, got {D!r}")
    if D < 2:
        raise DomainError(f"dimension must be >= 2, got {D}")
    return int(D)


def beta_from_g(g: float) -> float:
    """Positive Jastrow exponent for a 1D inverse-square strength ``g >= -1/4``."""
    if not g >= G_MIN:
        raise DomainError(f"g = {g} is below -1/4 (inverse-square collapse)")
    return 0.5 + math.sqrt(1.0 + 4.0 * g) / 2.0


def g_from_beta(beta: float) -> float:
    if not beta >= 0.5:
        raise DomainError(f"beta = {beta} < 1/2 selects the non-physical root")
    return beta * (beta - 1.0)


def beta_from_g_ddim(g: float, D: int) -> float:
    """Nonnegative root of ``beta**2 + (D - 2) * beta = g``.

    Evaluated as ``2g / ((D-2) + sqrt((D-2)^2 + 4g))`` so that g = 0 maps to
    exactly 0 and small couplings keep full relative precision.
    """
    D = _check_dim(D)
    if not g >= 0.0:
        raise DomainError(f"g = {g} must be >= 0 in D dimensions")
    if g == 0.0:
        return 0.0
    s = D - 2
    return 2.0 * g / (s + math.sqrt(s * s + 4.0 * g))


def three_body_from_two_body(g: float, D: int) -> float:
    """The three-body strength G(g) fixed by the two-body strength."""
    return beta_from_g_ddim(g, D) ** 2


@dataclass(frozen=True)
class InverseSquarePair:
    g: float
    beta: float

    @classmethod
    def from_g(cls, g: float) -> "InverseSquarePair":
        return cls(g=float(g), beta=beta_from_g(g))

    @classmethod
    def from_beta(cls, beta: float) -> "InverseSquarePair":
        return cls(g=g_from_beta(beta), beta=float(beta))


@dataclass(frozen=True)
class DimensionedCoupling:
    D: int
    g: float
    G: float
    beta: float

    @classmethod
    def from_g(cls, g: float, D: int) -> "DimensionedCoupling":
        beta = beta_from_g_ddim(g, D)
        return cls(D=int(D), g=float(g), G=beta * beta, beta=beta)

    @classmethod
    def from_beta(cls, beta: float, D: int) -> "DimensionedCoupling":
        D = _check_dim(D)
        if not beta >= 0.0:
            raise DomainError(f"beta = {beta} must be >= 0 in D dimensions")
        G = beta * beta
        return cls(D=D, g=G + (D - 2) * beta, G=G, beta=float(beta))
