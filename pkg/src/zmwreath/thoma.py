"""Generalized Thoma parameters, the kernel K(Lambda, omega) and Dirichlet mixing.

A point ``omega`` assigns to each irrep ``zeta`` in its support a block
``(alpha, beta, delta)`` with ``sum(alpha) + sum(beta) <= delta`` and the
deltas summing to 1. Inside a block the supersymmetric power sums are
``p_1 = delta`` and ``p_k = sum alpha^k + (-1)^(k-1) sum beta^k`` for k >= 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .errors import ContractError, DomainError
from .partitions import YoungDiagram
from .numeric import pochhammer
from .spectral_group import CentralFunction, GroupModel, tau as tau_of
from .symfunc import SCHUR_BOUND, PowerSumAssignment, schur_eval
from .zmeasure import DiagramFamily

TOLERANCE = 1e-9


def _is_float(*values) -> bool:
    return any(isinstance(v, float) for v in values)


def _le(a, b) -> bool:
    return a <= b + (TOLERANCE if _is_float(a, b) else 0)


@dataclass(frozen=True)
class ThomaBlock:
    """``(alpha, beta, delta)`` for one irrep; both sequences weakly decreasing."""

    alpha: tuple = ()
    beta: tuple = ()
    delta: object = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        for name, seq in (("alpha", self.alpha), ("beta", self.beta)):
            if any(v < 0 for v in seq):
                raise DomainError(f"{name} coordinates must be nonnegative: {seq}")
            if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
                raise DomainError(f"{name} coordinates must be weakly decreasing: {seq}")
        if self.delta < 0:
            raise DomainError(f"delta must be nonnegative, got {self.delta}")
        if not _le(sum(self.alpha) + sum(self.beta), self.delta):
            raise DomainError(
                f"sum(alpha) + sum(beta) = {sum(self.alpha) + sum(self.beta)} exceeds delta = {self.delta}"
            )

    def power(self, k: int):
        if k < 1:
            raise DomainError("power sums start at degree 1")
        if k == 1:
            return self.delta
        sign = 1 if k % 2 else -1
        return sum(a**k for a in self.alpha) + sign * sum(b**k for b in self.beta)

    def assignment(self, degree: int) -> PowerSumAssignment:
        return PowerSumAssignment({k: self.power(k) for k in range(1, degree + 1)})

    def scaled(self, t) -> "ThomaBlock":
        return ThomaBlock(
            tuple(t * a for a in self.alpha), tuple(t * b for b in self.beta), t * self.delta
        )


ZERO_BLOCK = ThomaBlock()


@dataclass(frozen=True)
class ThomaPoint:
    blocks: Mapping

    def __post_init__(self):
        blocks = {}
        for zeta, block in dict(self.blocks).items():
            if not isinstance(block, ThomaBlock):
                block = ThomaBlock(**block) if isinstance(block, Mapping) else ThomaBlock(*block)
            blocks[zeta] = block
        object.__setattr__(self, "blocks", blocks)
        total = sum((b.delta for b in blocks.values()), Fraction(0))
        if _is_float(total):
            if abs(total - 1) > TOLERANCE:
                raise DomainError(f"deltas sum to {total}, not 1")
        elif total != 1:
            raise DomainError(f"deltas sum to {total}, not 1")

    @property
    def support(self) -> frozenset:
        return frozenset(self.blocks)

    def block(self, zeta) -> ThomaBlock:
        return self.blocks.get(zeta, ZERO_BLOCK)

    def to_json(self) -> dict:
        def num(v):
            return str(v) if isinstance(v, Fraction) else v

        return {
            str(zeta): {
                "alpha": [num(a) for a in b.alpha],
                "beta": [num(x) for x in b.beta],
                "delta": num(b.delta),
            }
            for zeta, b in self.blocks.items()
        }


def _number(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    return v


def thoma_point_from_json(model: GroupModel, data: Mapping) -> ThomaPoint:
    blocks = {}
    for key, entry in data.items():
        blocks[model.parse_irrep_label(key)] = ThomaBlock(
            tuple(_number(a) for a in entry.get("alpha", ())),
            tuple(_number(b) for b in entry.get("beta", ())),
            _number(entry["delta"]),
        )
    return ThomaPoint(blocks)


def supersym_power(omega: ThomaPoint, zeta, k: int):
    return omega.block(zeta).power(k)


def block_schur(lam: YoungDiagram, block: ThomaBlock, bound: int = SCHUR_BOUND):
    lam = YoungDiagram(lam)
    return schur_eval(lam, block.assignment(lam.size), bound)


def extended_schur(lam: YoungDiagram, omega: ThomaPoint, zeta, bound: int = SCHUR_BOUND):
    return block_schur(lam, omega.block(zeta), bound)


def kernel(family: DiagramFamily, omega: ThomaPoint, model: GroupModel):
    """``prod_zeta (dim zeta)^{-|Lambda(zeta)|} s^zeta_{Lambda(zeta)}(omega)``."""
    for zeta in set(family) | set(omega.support):
        if zeta not in model.irrep_index:
            raise DomainError(f"label {zeta!r} is not an irrep of model {model.name}")
    value = Fraction(1)
    for zeta, lam in family.items():
        value = value * extended_schur(lam, omega, zeta) / Fraction(model.dim(zeta)) ** lam.size
    return value


# --- Dirichlet allocation ----------------------------------------------------------------------


@dataclass(frozen=True)
class DirichletParams:
    tau: Mapping

    def __post_init__(self):
        tau = dict(self.tau)
        if not tau:
            raise DomainError("Dirichlet parameters need at least one component")
        for zeta, t in tau.items():
            if not t > 0:
                raise DomainError(f"tau({zeta}) = {t} must be positive")
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_z(cls, z: CentralFunction) -> "DirichletParams":
        """Positive part of ``zeta -> |alpha(zeta)|^2``."""
        return cls({zeta: t for zeta, t in tau_of(z).items() if t > 0})

    @property
    def labels(self) -> tuple:
        return tuple(self.tau)

    @property
    def vector(self) -> np.ndarray:
        return np.array([float(t) for t in self.tau.values()])

    def mean(self) -> dict:
        total = sum(self.tau.values())
        return {zeta: t / total for zeta, t in self.tau.items()}


def dirichlet_samples(params: DirichletParams, count: int, rng: np.random.Generator) -> np.ndarray:
    """``(count, k)`` array; each row is normalized independent gammas."""
    g = rng.gamma(params.vector, size=(count, len(params.tau)))
    return g / g.sum(axis=1, keepdims=True)


def dirichlet_sample(params: DirichletParams, rng: np.random.Generator) -> dict:
    row = dirichlet_samples(params, 1, rng)[0]
    return dict(zip(params.labels, row.tolist()))


def dirichlet_log_density(params: DirichletParams, point: Mapping) -> float:
    """Log density on the simplex with respect to Lebesgue measure on the first k-1 coordinates."""
    labels = params.labels
    x = [float(point.get(zeta, 0.0)) for zeta in labels]
    if set(point) - set(labels):
        raise DomainError("point has coordinates outside the parameter support")
    if abs(sum(x) - 1) > TOLERANCE:
        raise DomainError(f"point is not on the simplex (sum = {sum(x)})")
    if len(x) == 1:
        return 0.0
    t = [float(params.tau[zeta]) for zeta in labels]
    if any(v <= 0 for v in x):
        return -math.inf
    return (
        math.lgamma(sum(t))
        - sum(math.lgamma(a) for a in t)
        + sum((a - 1) * math.log(v) for a, v in zip(t, x))
    )


def dirichlet_moment(params: DirichletParams, powers: Mapping):
    """``E[prod delta_zeta^{k_zeta}] = prod (tau)_k / (sum tau)_n``, exact for exact tau."""
    n = sum(powers.values())
    total = sum(params.tau.values())
    value = 1 / pochhammer(total, n)
    for zeta, k in powers.items():
        if k:
            if zeta not in params.tau:
                return 0 * value
            value = value * pochhammer(params.tau[zeta], k)
    return value


# --- spectral mixing -------------------------------------------------------------------------------

ComponentSampler = Callable[[np.random.Generator], tuple]


def point_mass_sampler(alpha=(1,), beta=()) -> ComponentSampler:
    alpha, beta = tuple(alpha), tuple(beta)

    def draw(rng):
        return alpha, beta

    return draw


def uniform_atoms_sampler(atoms) -> ComponentSampler:
    """Uniform choice among finitely many ``(alpha, beta)`` pairs."""
    atoms = [(tuple(a), tuple(b)) for a, b in atoms]
    if not atoms:
        raise DomainError("need at least one atom")

    def draw(rng):
        return atoms[int(rng.integers(len(atoms)))]

    return draw


def _check_omega0(zeta, alpha, beta) -> None:
    total = sum(alpha) + sum(beta)
    if abs(float(total) - 1) > TOLERANCE:
        raise ContractError(f"component sampler for {zeta!r} returned mass {total}, expected 1")


def mix_spectral(
    z: CentralFunction, component_samplers: Mapping, rng: np.random.Generator
) -> ThomaPoint:
    """Draw ``delta ~ D(tau)`` then scale each component's ``(alpha, beta)`` by ``delta``."""
    params = DirichletParams.from_z(z)
    delta = dirichlet_sample(params, rng)
    blocks = {}
    for zeta in params.labels:
        try:
            sampler = component_samplers[zeta]
        except KeyError:
            raise DomainError(f"no component sampler for {zeta!r}") from None
        alpha, beta = sampler(rng)
        _check_omega0(zeta, alpha, beta)
        d = delta[zeta]
        blocks[zeta] = ThomaBlock(
            tuple(d * float(a) for a in alpha), tuple(d * float(b) for b in beta), d
        )
    return ThomaPoint(blocks)


def point_mass_kernel_mean(z: CentralFunction, family: DiagramFamily):
    """Exact ``E[K(Lambda, omega)]`` when every component is the atom ``alpha = (1)``.

    Each block is then ``(delta, 0, delta)``, so ``s_lam`` is ``delta^{|lam|}``
    for one-row ``lam`` and 0 otherwise, and the mean is a Dirichlet moment.
    """
    params = DirichletParams.from_z(z)
    if any(len(lam) > 1 for lam in family.values()):
        return Fraction(0)
    value = dirichlet_moment(params, {zeta: lam.size for zeta, lam in family.items()})
    for zeta, lam in family.items():
        value = value / Fraction(z.model.dim(zeta)) ** lam.size
    return value


def _frobenius_terms(lam: YoungDiagram):
    from .partitions import enumerate_partitions, mn_character, z_rho

    return [
        (mn_character(lam, nu) / z_rho(nu), nu)
        for nu in enumerate_partitions(lam.size)
        if mn_character(lam, nu)
    ]


def kernel_samples(z: CentralFunction, family: DiagramFamily, component_samplers, count, rng):
    """``count`` draws of ``K(Lambda, omega)`` with ``omega`` from :func:`mix_spectral`.

    Same law as calling :func:`kernel` on independent mixtures, evaluated on
    arrays: the block power sums are ``delta^k`` times the component's.
    """
    params = DirichletParams.from_z(z)
    for zeta in family:
        z.model.dim(zeta)
    deltas = dirichlet_samples(params, count, rng)
    column = {zeta: i for i, zeta in enumerate(params.labels)}
    values = np.ones(count)
    for zeta in params.labels:
        sampler = component_samplers[zeta]
        lam = family.diagram(zeta)
        draws = [sampler(rng) for _ in range(count)]
        for alpha, beta in draws:
            _check_omega0(zeta, alpha, beta)
        if not lam:
            continue
        d = deltas[:, column[zeta]]
        power = {1: d}
        for k in range(2, lam.size + 1):
            sign = 1 if k % 2 else -1
            comp = np.array(
                [sum(float(a) ** k for a in al) + sign * sum(float(b) ** k for b in be) for al, be in draws]
            )
            power[k] = d**k * comp
        s = np.zeros(count)
        for coeff, nu in _frobenius_terms(lam):
            term = np.full(count, float(coeff))
            for part in nu:
                term = term * power[part]
            s += term
        values *= s / float(z.model.dim(zeta)) ** lam.size
    for zeta in family:
        if zeta not in column:
            values[:] = 0.0
    return values


def kernel_mean_mc(z, family, component_samplers, count, rng):
    """Monte Carlo mean and standard error of ``K(Lambda, omega)`` under the mixture."""
    values = kernel_samples(z, family, component_samplers, count, rng)
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(count))
