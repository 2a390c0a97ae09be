"""Power sums, Schur functions through the Frobenius sum, and the hook-content product."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .errors import DomainError, ResourceBoundError
from .numeric import abs2
from .partitions import (
    YoungDiagram,
    content,
    enumerate_partitions,
    hook,
    mn_character,
    z_rho,
)

SCHUR_BOUND = 12

_MISSING = object()


@dataclass(frozen=True)
class PowerSumAssignment:
    """Values of ``p_1, p_2, ...``; unspecified degrees raise unless a default is set."""

    values: Mapping[int, Any] = field(default_factory=dict)
    default: Any = _MISSING

    @classmethod
    def constant(cls, value) -> "PowerSumAssignment":
        return cls({}, default=value)

    def __getitem__(self, r: int):
        if r in self.values:
            return self.values[r]
        if self.default is _MISSING:
            raise DomainError(f"power sum p_{r} is not specified")
        return self.default

    def scaled(self, t) -> "PowerSumAssignment":
        """The assignment ``p_r -> t^r p_r``; only explicit degrees are kept."""
        if self.default is not _MISSING:
            raise DomainError("cannot scale an assignment with a constant default")
        return PowerSumAssignment({r: t**r * v for r, v in self.values.items()})


def newton_product(rho: YoungDiagram, a: PowerSumAssignment):
    result = Fraction(1)
    for part in rho:
        result = result * a[part]
    return result


def schur_eval(lam: YoungDiagram, a: PowerSumAssignment, bound: int = SCHUR_BOUND):
    """``s_lam = sum_nu chi^lam_nu p_nu / z_nu``."""
    lam = YoungDiagram(lam)
    n = lam.size
    if n > bound:
        raise ResourceBoundError(f"|lambda| = {n} exceeds the Schur bound {bound}")
    total = Fraction(0)
    for nu in enumerate_partitions(n):
        chi = mn_character(lam, nu)
        if chi:
            total = total + Fraction(chi, z_rho(nu)) * newton_product(nu, a)
    return total


def principal_specialization(lam: YoungDiagram, alpha):
    """``prod_box (alpha + c(box)) / h(box)``: ``s_lam`` at ``p_r = alpha`` for all r."""
    lam = YoungDiagram(lam)
    result = Fraction(1)
    for box in lam.boxes():
        result = result * (alpha + content(box)) / hook(lam, box)
    return result


def a_lambda_product(family, z):
    """``a(Lambda) = prod_zeta s_{Lambda(zeta)}`` at ``p_r = alpha(zeta)``."""
    from .spectral_group import alpha_of

    result = Fraction(1)
    for zeta, lam in family.items():
        result = result * principal_specialization(lam, alpha_of(z, zeta))
    return result


def abs2_box_product(lam: YoungDiagram, alpha):
    """``prod_box (alpha + c)(conj(alpha) + c) / h^2``, always real."""
    lam = YoungDiagram(lam)
    result = Fraction(1)
    for box in lam.boxes():
        h = hook(lam, box)
        result = result * abs2(alpha + content(box)) / (h * h)
    return result
