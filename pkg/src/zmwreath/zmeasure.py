"""z-measures on families of Young diagrams and the branching graph Y(G^).

A family ``Lambda`` maps irrep labels to Young diagrams with finitely many
nonempty entries. The z-measure of a family of total size ``n`` is

    M(Lambda) = n!/(I)_n * prod_zeta prod_box |alpha(zeta) + c(box)|^2 / h(box)^2

with ``I = <z, z>_G`` and ``alpha(zeta) = <z, chi^zeta>_G``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .errors import DomainError, ResourceBoundError
from .numeric import abs2, close, is_zero, pochhammer
from .partitions import (
    EMPTY,
    YoungDiagram,
    corner_moves,
    dim_sym,
    enumerate_partitions,
)
from .spectral_group import CentralFunction, GroupModel, alpha_of, total_I
from .symfunc import abs2_box_product

SAMPLE_BOUND = 20


class DiagramFamily(Mapping):
    """Finite-support map from labels to nonempty Young diagrams.

    Absent labels stand for the empty diagram; :meth:`diagram` returns
    ``EMPTY`` for them. Families are immutable and hashable.
    """

    __slots__ = ("_data", "_hash")

    def __init__(self, assignments=None, **kwargs):
        data = {}
        items = dict(assignments or {}, **kwargs).items()
        for label, lam in items:
            lam = lam if isinstance(lam, YoungDiagram) else YoungDiagram(lam)
            if lam:
                data[label] = lam
        self._data = data
        self._hash = None

    def __getitem__(self, label):
        return self._data[label]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def diagram(self, label) -> YoungDiagram:
        return self._data.get(label, EMPTY)

    @property
    def size(self) -> int:
        return sum(lam.size for lam in self._data.values())

    def with_diagram(self, label, lam) -> "DiagramFamily":
        data = dict(self._data)
        data[label] = lam
        return DiagramFamily(data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, DiagramFamily):
            return self._data == other._data
        return NotImplemented

    def sort_key(self, order=None):
        labels = order if order is not None else sorted(self._data, key=str)
        return tuple(tuple(self.diagram(l)) for l in labels)

    def to_json(self, order=None) -> dict:
        labels = order if order is not None else sorted(self._data, key=str)
        return {str(l): list(self._data[l]) for l in labels if l in self._data}

    def dumps(self, order=None) -> str:
        return json.dumps(self.to_json(order), separators=(",", ":"))

    def __repr__(self):
        inner = ", ".join(f"{l!r}: {list(lam)}" for l, lam in self._data.items())
        return f"DiagramFamily({{{inner}}})"


EMPTY_FAMILY = DiagramFamily()


def family_from_json(model: GroupModel, data, *, by_class: bool = False) -> DiagramFamily:
    if isinstance(data, str):
        data = json.loads(data)
    parse = model.parse_class_label if by_class else model.parse_irrep_label
    return DiagramFamily({parse(k): YoungDiagram(v) for k, v in data.items()})


# --- spectral data cache -------------------------------------------------------------


@lru_cache(maxsize=256)
def _spectral(z: CentralFunction):
    alphas = {zeta: alpha_of(z, zeta) for zeta in z.model.irrep_labels}
    taus = {zeta: abs2(a) for zeta, a in alphas.items()}
    return total_I(z), alphas, taus


def _check_support(model: GroupModel, family: DiagramFamily) -> None:
    for label in family:
        if label not in model.irrep_index:
            raise DomainError(f"family uses irrep {label!r} not in model {model.name}")


# --- measures -------------------------------------------------------------------------


def sym_zmeasure(a, lam: YoungDiagram):
    """z-measure of the symmetric group with parameter ``a`` on ``Y_k``."""
    lam = YoungDiagram(lam)
    k = lam.size
    if k == 0:
        return Fraction(1)
    t = abs2(a)
    if is_zero(t):
        raise DomainError("parameter a must be nonzero for a nonempty diagram")
    return factorial(k) / pochhammer(t, k) * abs2_box_product(lam, a)


def _factorized_zmeasure(z: CentralFunction, family: DiagramFamily):
    I, alphas, taus = _spectral(z)
    n = family.size
    value = factorial(n) / pochhammer(I, n)
    for zeta, lam in family.items():
        k = lam.size
        if is_zero(taus[zeta]):
            return z.model.zero()
        value = value * pochhammer(taus[zeta], k) / factorial(k) * sym_zmeasure(alphas[zeta], lam)
    return value


def family_zmeasure(z: CentralFunction, family: DiagramFamily):
    """``M_z^{(n)}(Lambda)`` from the hook-content product."""
    _check_support(z.model, family)
    I, alphas, _ = _spectral(z)
    if is_zero(I):
        raise DomainError("z vanishes identically (I = 0)")
    n = family.size
    value = factorial(n) / pochhammer(I, n)
    for zeta, lam in family.items():
        value = value * abs2_box_product(lam, alphas[zeta])
    if __debug__:
        other = _factorized_zmeasure(z, family)
        assert close(value, other), f"z-measure forms disagree at {family}: {value} vs {other}"
    return value


def dim_wreath(family: DiagramFamily, model: GroupModel) -> int:
    """Dimension of the irreducible representation of S_n(G) labelled by the family."""
    _check_support(model, family)
    n = family.size
    value = factorial(n)
    for lam in family.values():
        value //= factorial(lam.size)
    for zeta, lam in family.items():
        value *= model.dim(zeta) ** lam.size * dim_sym(lam)
    return value


def phi_z(z: CentralFunction, family: DiagramFamily):
    """Harmonic function ``M_z(Lambda) / DIM(Lambda)``."""
    return family_zmeasure(z, family) / dim_wreath(family, z.model)


def phi_z_explicit(z: CentralFunction, family: DiagramFamily):
    """The same harmonic function written block by block through ``m_alpha / dim``."""
    _check_support(z.model, family)
    I, alphas, taus = _spectral(z)
    value = 1 / pochhammer(I, family.size)
    for zeta, lam in family.items():
        k = lam.size
        if is_zero(taus[zeta]):
            return z.model.zero()
        value = value * pochhammer(taus[zeta], k) / z.model.dim(zeta) ** k
        value = value * sym_zmeasure(alphas[zeta], lam) / dim_sym(lam)
    return value


# --- enumeration and graph structure -------------------------------------------------------


def compositions(n: int, k: int):
    """Weak compositions of ``n`` into ``k`` parts, first part largest-first."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def enumerate_allocations(n: int, labels) -> list[dict]:
    labels = list(labels)
    return [
        {l: c for l, c in zip(labels, counts) if c}
        for counts in compositions(n, len(labels))
    ]


def enumerate_families(n: int, model: GroupModel, labels=None) -> list[DiagramFamily]:
    """All of ``Y_n(G^)`` exactly once, ordered by allocation then by diagrams."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    labels = list(model.irrep_labels if labels is None else labels)
    out = []
    for counts in compositions(n, len(labels)):
        blocks = [
            [(l, lam) for lam in enumerate_partitions(c)] for l, c in zip(labels, counts) if c
        ]
        for combo in itertools.product(*blocks):
            out.append(DiagramFamily(dict(combo)))
    return out


def family_neighbors(family: DiagramFamily, model: GroupModel):
    """``(up, down)`` lists of ``(family, zeta)``; ``zeta`` is the irrep whose diagram changed."""
    _check_support(model, family)
    up = []
    for zeta in model.irrep_labels:
        lam = family.diagram(zeta)
        for box in corner_moves(lam)[0]:
            up.append((family.with_diagram(zeta, lam.add_box(box.row)), zeta))
    down = []
    for zeta in model.irrep_labels:
        lam = family.diagram(zeta)
        for box in corner_moves(lam)[1]:
            down.append((family.with_diagram(zeta, lam.remove_box(box.row)), zeta))
    return up, down


def harmonicity_residual(z: CentralFunction, family: DiagramFamily):
    """``sum_{Lambda above M} dim(zeta_{M,Lambda}) phi(Lambda) - phi(M)``."""
    model = z.model
    up, _ = family_neighbors(family, model)
    total = model.zero()
    for upper, zeta in up:
        total = total + model.dim(zeta) * phi_z(z, upper)
    return total - phi_z(z, family)


def allocation_weight(z: CentralFunction, allocation: Mapping):
    """Probability that the block sizes of a ``M_z^{(n)}`` sample equal ``allocation``."""
    I, _, taus = _spectral(z)
    for label in allocation:
        z.model.dim(label)
    n = sum(allocation.values())
    value = factorial(n) / pochhammer(I, n)
    for zeta, k in allocation.items():
        if k:
            value = value * pochhammer(taus[zeta], k) / factorial(k)
    return value


def normalization_sum(z: CentralFunction, n: int):
    total = z.model.zero()
    for family in enumerate_families(n, z.model):
        total = total + family_zmeasure(z, family)
    return total


def burnside_sum(model: GroupModel, n: int) -> int:
    return sum(dim_wreath(f, model) ** 2 for f in enumerate_families(n, model))


def pochhammer_multinomial(a_values, n: int):
    """Both sides of ``sum_{m_1+..+m_k=n} prod (a_i)_{m_i}/m_i! = (a_1+..+a_k)_n / n!``."""
    a_values = list(a_values)
    lhs = Fraction(0)
    for ms in compositions(n, len(a_values)):
        term = Fraction(1)
        for a, m in zip(a_values, ms):
            term = term * pochhammer(a, m) / factorial(m)
        lhs = lhs + term
    rhs = pochhammer(sum(a_values, Fraction(0)), n) / factorial(n)
    return lhs, rhs


def u1_identity(z: CentralFunction, n: int):
    """Both sides of the U(1) sum ``sum_Lambda prod_box ... = (sum |alpha|^2)_n / n!``.

    Families with a block at a vanishing coefficient contribute zero, so the
    sum runs over families supported on the nonzero coefficients.
    """
    _, alphas, taus = _spectral(z)
    support = [zeta for zeta in z.model.irrep_labels if not is_zero(taus[zeta])]
    lhs = Fraction(0)
    for family in enumerate_families(n, z.model, labels=support):
        term = Fraction(1)
        for zeta, lam in family.items():
            term = term * abs2_box_product(lam, alphas[zeta])
        lhs = lhs + term
    rhs = pochhammer(sum((taus[zeta] for zeta in support), Fraction(0)), n) / factorial(n)
    return lhs, rhs


# --- sampling ------------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _allocation_table(z: CentralFunction, n: int):
    labels = [zeta for zeta in z.model.irrep_labels]
    allocations = enumerate_allocations(n, labels)
    weights = np.array([float(allocation_weight(z, p)) for p in allocations])
    return allocations, np.cumsum(weights) / weights.sum()


@lru_cache(maxsize=1024)
def _diagram_table(a, k: int):
    shapes = enumerate_partitions(k)
    weights = np.array([float(sym_zmeasure(a, lam)) for lam in shapes])
    return shapes, np.cumsum(weights) / weights.sum()


def sample_family(z: CentralFunction, n: int, rng: np.random.Generator, bound: int = SAMPLE_BOUND):
    """Exact two-stage draw from ``M_z^{(n)}``.

    Block sizes are drawn from :func:`allocation_weight`, then each block's
    diagram from the symmetric-group z-measure with parameter ``alpha(zeta)``.
    """
    return sample_families(z, n, 1, rng, bound)[0]


def _sample_indices(z: CentralFunction, n: int, count: int, rng: np.random.Generator, bound: int):
    """Allocation index per draw and, per irrep column, the index of the drawn shape (-1 if empty)."""
    if n > bound:
        raise ResourceBoundError(f"n = {n} exceeds the sampling bound {bound}")
    if n < 0:
        raise DomainError("n must be nonnegative")
    labels = list(z.model.irrep_labels)
    if n == 0:
        return [{}], np.zeros(count, dtype=np.int64), np.full((count, len(labels)), -1)
    _, alphas, _ = _spectral(z)
    allocations, cdf = _allocation_table(z, n)
    picks = np.minimum(np.searchsorted(cdf, rng.random(count), side="right"), len(cdf) - 1)
    u2 = rng.random((count, len(labels)))
    shape_idx = np.full((count, len(labels)), -1, dtype=np.int64)
    for col, zeta in enumerate(labels):
        sizes = np.array([p.get(zeta, 0) for p in allocations])[picks]
        for k in np.unique(sizes[sizes > 0]):
            rows = sizes == k
            _, dcdf = _diagram_table(alphas[zeta], int(k))
            idx = np.searchsorted(dcdf, u2[rows, col], side="right")
            shape_idx[rows, col] = np.minimum(idx, len(dcdf) - 1)
    return allocations, picks, shape_idx


def sample_families(
    z: CentralFunction, n: int, count: int, rng: np.random.Generator, bound: int = SAMPLE_BOUND
) -> list[DiagramFamily]:
    """``count`` independent draws; see :func:`sample_family`."""
    return [f for f, k in _expand(z, n, *_sample_indices(z, n, count, rng, bound), per_draw=True)]


def sample_family_counts(
    z: CentralFunction, n: int, count: int, rng: np.random.Generator, bound: int = SAMPLE_BOUND
) -> Counter:
    """Histogram of ``count`` draws; same stream and law as :func:`sample_families`."""
    return Counter(dict(_expand(z, n, *_sample_indices(z, n, count, rng, bound), per_draw=False)))


def _expand(z, n, allocations, picks, shape_idx, per_draw):
    labels = list(z.model.irrep_labels)
    _, alphas, _ = _spectral(z) if n else (None, {}, None)

    def build(pick, row):
        p = allocations[pick]
        blocks = {}
        for zeta, idx in zip(labels, row):
            if idx >= 0:
                shapes, _ = _diagram_table(alphas[zeta], p[zeta])
                blocks[zeta] = shapes[idx]
        return DiagramFamily(blocks)

    if per_draw:
        for pick, row in zip(picks.tolist(), shape_idx.tolist()):
            yield build(pick, row), 1
        return
    keys = np.column_stack([picks, shape_idx + 1]).astype(np.int64)
    radix = int(keys.max(initial=0)) + 1
    if keys.shape[1] * np.log2(radix + 1) < 62:
        packed = keys @ (radix ** np.arange(keys.shape[1], dtype=np.int64))
        _, first, freq = np.unique(packed, return_index=True, return_counts=True)
        uniq = keys[first]
    else:
        uniq, freq = np.unique(keys, axis=0, return_counts=True)
    for key, f in zip(uniq.tolist(), freq.tolist()):
        yield build(key[0], [i - 1 for i in key[1:]]), int(f)


def exact_table(z: CentralFunction, n: int) -> dict[DiagramFamily, object]:
    return {f: family_zmeasure(z, f) for f in enumerate_families(n, z.model)}


def total_variation(empirical: Mapping, exact: Mapping) -> float:
    keys = set(empirical) | set(exact)
    return 0.5 * sum(abs(float(empirical.get(k, 0)) - float(exact.get(k, 0))) for k in keys)
