"""Irreducible characters of S_n(G) for small finite G, built by induction.

For a family ``Lambda`` the letters ``0..n-1`` are cut into consecutive
blocks, one per irrep ``zeta`` with ``|Lambda(zeta)| > 0`` in model order.
On ``H = prod_zeta S_{|Lambda(zeta)|}(G)`` the inducing character is

    prod_zeta  prod_{cycles in the zeta block} chi^zeta(cycle product)
               * chi^{Lambda(zeta)}(cycle type of the block permutation)

and ``chi^Lambda`` is its induced character, computed by averaging over
all of ``S_n(G)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import DomainError, ResourceBoundError
from .numeric import conj, simplify
from .partitions import YoungDiagram, mn_character
from .spectral_group import CentralFunction, GroupModel, inner_product_G
from .symfunc import PowerSumAssignment, schur_eval
from .wreath import (
    ColoredPermutation,
    WreathType,
    conjugate,
    cycle_type,
    enumerate_wreath,
    group_order,
)
from .zmeasure import DiagramFamily, dim_wreath, enumerate_families

CHARACTER_BOUND = 50_000


@dataclass(frozen=True)
class ClassFunctionTable:
    """Values of a class function of ``S_n(G)`` keyed by type."""

    model: GroupModel = field(repr=False)
    degree: int
    values: Mapping[WreathType, object]

    def __getitem__(self, rho: WreathType):
        return self.values[rho]

    def at(self, x: ColoredPermutation):
        return self.values[cycle_type(x)]

    def inner(self, other: "ClassFunctionTable"):
        """``int self * conj(other)`` against the uniform measure on ``S_n(G)``."""
        classes = wreath_classes(self.model, self.degree)
        order = group_order(self.model, self.degree)
        total = self.model.zero()
        for rho, (_, size) in classes.items():
            total = total + size * self.values[rho] * conj(other.values[rho])
        return simplify(total / order)

    def norm2(self):
        return self.inner(self)

    def to_json(self) -> list:
        from .numeric import to_json_value

        return [
            {"type": rho.to_json(self.model.class_labels), "value": to_json_value(v)}
            for rho, v in self.values.items()
        ]


@lru_cache(maxsize=32)
def wreath_classes(model: GroupModel, n: int, bound: int = CHARACTER_BOUND) -> dict:
    """``{type: (representative, class size)}`` by enumerating ``S_n(G)``."""
    if group_order(model, n) > bound:
        raise ResourceBoundError(
            f"|S_{n}(G)| = {group_order(model, n)} exceeds the character bound {bound}"
        )
    out: dict = {}
    for x in enumerate_wreath(model, n, bound):
        rho = cycle_type(x)
        if rho in out:
            out[rho][1] += 1
        else:
            out[rho] = [x, 1]
    return {rho: (rep, size) for rho, (rep, size) in out.items()}


def class_function(model: GroupModel, n: int, fn) -> ClassFunctionTable:
    """Tabulate ``fn(representative)`` over the classes of ``S_n(G)``."""
    classes = wreath_classes(model, n)
    return ClassFunctionTable(model, n, {rho: fn(rep) for rho, (rep, _) in classes.items()})


def block_character(zeta, size: int, x: ColoredPermutation):
    """``prod_cycles chi^zeta(cycle product)`` on ``S_size(G)``."""
    if x.degree != size:
        raise DomainError(f"element of degree {x.degree} given for block size {size}")
    m = x.model
    m.require_elements()
    value = m.one()
    for cyc in x.cycles():
        value = value * m.character(zeta, m.element_class(x.cycle_product(cyc)))
    return value


def _blocks(family: DiagramFamily, order) -> list[tuple[object, range]]:
    out = []
    start = 0
    for zeta in order:
        k = family.diagram(zeta).size
        if k:
            out.append((zeta, range(start, start + k)))
            start += k
    return out


def _restrict(x: ColoredPermutation, block: range) -> ColoredPermutation | None:
    lo = block.start
    perm = []
    for i in block:
        j = x.perm[i]
        if j not in block:
            return None
        perm.append(j - lo)
    return ColoredPermutation(x.colors[lo : block.stop], perm, x.model)


def inducing_character(family: DiagramFamily, x: ColoredPermutation, order=None):
    """The character of ``H`` extended by zero outside ``H``."""
    m = x.model
    order = m.irrep_labels if order is None else order
    value = m.one()
    for zeta, block in _blocks(family, order):
        y = _restrict(x, block)
        if y is None:
            return m.zero()
        s_type = YoungDiagram.from_unsorted(len(c) for c in y.cycles())
        value = value * block_character(zeta, len(block), y) * mn_character(family[zeta], s_type)
    return value


def induced_character(family: DiagramFamily, model: GroupModel, order=None) -> ClassFunctionTable:
    """``chi^Lambda`` by ``(1/|H|) sum_{g in S_n(G)} chi_H(g x g^{-1})``."""
    for zeta in family:
        model.dim(zeta)
    n = family.size
    classes = wreath_classes(model, n)
    order = model.irrep_labels if order is None else tuple(order)
    from math import factorial

    h_order = model.order**n
    for lam in family.values():
        h_order *= factorial(lam.size)
    elements = [rep for rep in enumerate_wreath(model, n)] if n else [None]
    values = {}
    for rho, (x, _) in classes.items():
        if n == 0:
            values[rho] = model.one()
            continue
        total = model.zero()
        for g in elements:
            total = total + inducing_character(family, conjugate(g, x), order)
        values[rho] = simplify(total / h_order)
    return ClassFunctionTable(model, n, values)


@lru_cache(maxsize=64)
def _cached_character(family: DiagramFamily, model: GroupModel) -> ClassFunctionTable:
    return induced_character(family, model)


def character_table(model: GroupModel, n: int) -> dict[DiagramFamily, ClassFunctionTable]:
    return {f: _cached_character(f, model) for f in enumerate_families(n, model)}


# --- Psi and the coefficient a(Lambda) ------------------------------------------------------------


def _class_values(p: Sequence[CentralFunction]) -> list[dict]:
    return [f.values() for f in p]


def psi_eval(p: Sequence[CentralFunction], x) -> object:
    """``prod_c prod_{rows r of rho(c)} p_r(c)`` for ``x`` or its type ``rho``."""
    rho = x if isinstance(x, DiagramFamily) else cycle_type(x)
    values = _class_values(p)
    model = p[0].model if p else None
    value = model.one() if model else 1
    for c, lam in rho.items():
        for r in lam:
            if r > len(values):
                raise DomainError(f"no central function supplied for cycle length {r}")
            value = value * values[r - 1][c]
    return value


def psi_table(p: Sequence[CentralFunction], n: int) -> ClassFunctionTable:
    model = p[0].model
    classes = wreath_classes(model, n)
    return ClassFunctionTable(model, n, {rho: psi_eval(p, rho) for rho in classes})


def hat_power_sums(p: Sequence[CentralFunction], zeta) -> PowerSumAssignment:
    """``r -> <p_r, chi^zeta>_G``."""
    chi = CentralFunction.character_of(p[0].model, zeta)
    return PowerSumAssignment({r: inner_product_G(f, chi) for r, f in enumerate(p, start=1)})


def theorem_psi_check(family: DiagramFamily, p: Sequence[CentralFunction]):
    """Return ``(<Psi, chi^Lambda>, prod_zeta s_{Lambda(zeta)}(p-hat(zeta)))``."""
    model = p[0].model
    n = family.size
    chi = _cached_character(family, model)
    lhs = psi_table(p, n).inner(chi)
    rhs = model.one()
    for zeta, lam in family.items():
        rhs = rhs * schur_eval(lam, hat_power_sums(p, zeta))
    return lhs, simplify(rhs)


def a_coefficient(z: CentralFunction, family: DiagramFamily):
    """``<phi_z, chi^Lambda>`` with ``phi_z(x) = prod_c z(c)^{[x](c)}``."""
    n = family.size
    if n == 0:
        return z.model.one()
    chi = _cached_character(family, z.model)
    return psi_table([z] * n, n).inner(chi)


def check_dimension(family: DiagramFamily, model: GroupModel) -> bool:
    chi = _cached_character(family, model)
    identity = DiagramFamily(
        {model.element_class(model.identity): YoungDiagram([1] * family.size)}
    ) if family.size else DiagramFamily()
    return chi[identity] == dim_wreath(family, model)
