"""Wreath products S_n(G) for finite G, the Ewens measure and its projective structure.

Elements are pairs ``((g_1, ..., g_n), s)`` with ``s`` a permutation of
``{0, ..., n-1}`` held in one-line form (JSON uses 1-based positions). The
product is ``(g, s)(h, t) = (g_i h_{s^{-1}(i)}, s t)`` where
``(s t)(i) = s(t(i))``; this is the multiplication of the monomial matrices
with entry ``g_{s(i)}`` at ``(s(i), i)``.

A cycle ``i_1 -> i_2 -> ... -> i_r`` (``s(i_k) = i_{k+1}``) is coloured by the
class of ``g_{i_r} ... g_{i_1}``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from . import kernels
from .errors import DomainError, ResourceBoundError
from .numeric import abs2, conj, pochhammer
from .partitions import YoungDiagram
from .spectral_group import CentralFunction, GroupModel, total_I
from .zmeasure import DiagramFamily

ENUMERATION_BOUND = 10**6
SAMPLE_CHUNK = 100_000


@dataclass(frozen=True)
class ColoredPermutation:
    colors: tuple[int, ...]
    perm: tuple[int, ...]
    model: GroupModel = field(compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(g) for g in self.colors))
        object.__setattr__(self, "perm", tuple(int(i) for i in self.perm))
        self.model.require_elements()
        n = len(self.perm)
        if len(self.colors) != n:
            raise DomainError(f"{len(self.colors)} colours for a permutation of degree {n}")
        if sorted(self.perm) != list(range(n)):
            raise DomainError(f"not a permutation: {self.perm}")
        order = len(self.model.cayley)
        if any(not 0 <= g < order for g in self.colors):
            raise DomainError(f"colour outside the group of order {order}")

    @property
    def degree(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, model: GroupModel, n: int) -> "ColoredPermutation":
        return cls((model.identity,) * n, tuple(range(n)), model)

    def padded(self, n: int) -> "ColoredPermutation":
        """Embed into ``S_n(G)`` by appending coloured fixed points at the identity."""
        if n < self.degree:
            raise DomainError(f"cannot pad degree {self.degree} down to {n}")
        extra = n - self.degree
        return ColoredPermutation(
            self.colors + (self.model.identity,) * extra,
            self.perm + tuple(range(self.degree, n)),
            self.model,
        )

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.perm[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.perm[j]
            out.append(tuple(cyc))
        return out

    def cycle_product(self, cyc) -> int:
        """``g_{i_r} ... g_{i_1}`` along the cycle ``cyc = (i_1, ..., i_r)``."""
        prod = self.model.identity
        for i in cyc:
            prod = self.model.multiply(self.colors[i], prod)
        return prod

    def to_json(self) -> dict:
        names = self.model.element_names
        colors = [names[g] if names else g for g in self.colors]
        return {"colors": colors, "perm": [i + 1 for i in self.perm]}

    @classmethod
    def from_json(cls, model: GroupModel, data) -> "ColoredPermutation":
        colors = [model.element_index(g) for g in data["colors"]]
        perm = [int(i) - 1 for i in data["perm"]]
        return cls(colors, perm, model)

    def __mul__(self, other):
        return multiply(self, other)


def _same(x: ColoredPermutation, y: ColoredPermutation) -> None:
    if x.degree != y.degree:
        raise DomainError(f"degree mismatch: {x.degree} vs {y.degree}")
    if x.model is not y.model:
        raise DomainError("colored permutations over different group models")


def multiply(x: ColoredPermutation, y: ColoredPermutation) -> ColoredPermutation:
    _same(x, y)
    m = x.model
    n = x.degree
    s_inv = [0] * n
    for i, si in enumerate(x.perm):
        s_inv[si] = i
    colors = tuple(m.multiply(x.colors[i], y.colors[s_inv[i]]) for i in range(n))
    perm = tuple(x.perm[y.perm[i]] for i in range(n))
    return ColoredPermutation(colors, perm, m)


def inverse(x: ColoredPermutation) -> ColoredPermutation:
    m = x.model
    n = x.degree
    s_inv = [0] * n
    for i, si in enumerate(x.perm):
        s_inv[si] = i
    # (g, s)^{-1} = (h, s^{-1}) with h_i = g_{s(i)}^{-1}
    colors = tuple(m.inverse(x.colors[x.perm[i]]) for i in range(n))
    return ColoredPermutation(colors, tuple(s_inv), m)


def conjugate(y: ColoredPermutation, x: ColoredPermutation) -> ColoredPermutation:
    """``y x y^{-1}``."""
    return multiply(multiply(y, x), inverse(y))


# --- types --------------------------------------------------------------------------------


WreathType = DiagramFamily


def cycle_type(x: ColoredPermutation) -> WreathType:
    """Type of ``x``: for each class ``c`` the lengths of the ``c``-coloured cycles."""
    m = x.model
    rows: dict = {}
    for cyc in x.cycles():
        rows.setdefault(m.element_class(x.cycle_product(cyc)), []).append(len(cyc))
    return DiagramFamily({c: YoungDiagram.from_unsorted(r) for c, r in rows.items()})


def class_counts(x: ColoredPermutation) -> dict:
    """``{c: [x](c)}``, the number of cycles of each colour (zeros omitted)."""
    return {c: len(lam) for c, lam in cycle_type(x).items()}


def type_from_counts(model: GroupModel, counts: np.ndarray) -> WreathType:
    """Convert one ``(ncls, n+1)`` count block from the kernel into a type."""
    rows = {}
    for ci, c in enumerate(model.class_labels):
        parts = []
        for length in range(counts.shape[1] - 1, 0, -1):
            parts.extend([length] * int(counts[ci, length]))
        if parts:
            rows[c] = YoungDiagram(parts)
    return DiagramFamily(rows)


def enumerate_types(model: GroupModel, n: int) -> list[WreathType]:
    """All of ``Y_n([G])``: the conjugacy classes of ``S_n(G)``."""
    from .zmeasure import enumerate_families

    return enumerate_families(n, model, labels=model.class_labels)


def type_class_size(model: GroupModel, rho: WreathType) -> int:
    """Number of elements of ``S_n(G)`` of type ``rho``: ``|S_n(G)| / prod z_rho(c) (|G|/|c|)^{l}``."""
    from .partitions import z_rho

    n = rho.size
    order = model.order
    size = factorial(n) * order**n
    denom = 1
    for c, lam in rho.items():
        denom *= z_rho(lam) * Fraction(order, model.class_size(c)) ** len(lam)
    return int(size / denom)


# --- enumeration ----------------------------------------------------------------------------


def group_order(model: GroupModel, n: int) -> int:
    return factorial(n) * len(model.cayley) ** n


def _check_bound(model: GroupModel, n: int, bound: int) -> None:
    model.require_elements()
    if group_order(model, n) > bound:
        raise ResourceBoundError(
            f"|S_{n}(G)| = {group_order(model, n)} exceeds the enumeration bound {bound}"
        )


def enumerate_wreath(model: GroupModel, n: int, bound: int = ENUMERATION_BOUND):
    """Every element of ``S_n(G)``: permutations outer, colour tuples inner."""
    _check_bound(model, n, bound)
    elements = range(len(model.cayley))
    for perm in itertools.permutations(range(n)):
        for colors in itertools.product(elements, repeat=n):
            yield ColoredPermutation(colors, perm, model)


def _all_arrays(model: GroupModel, n: int, bound: int):
    _check_bound(model, n, bound)
    G = len(model.cayley)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    colors = np.array(list(itertools.product(range(G), repeat=n)), dtype=np.int64).reshape(-1, n)
    P, C = len(perms), len(colors)
    return np.repeat(colors[None, :, :], P, axis=0).reshape(P * C, n), np.repeat(perms, C, axis=0)


def _model_arrays(model: GroupModel):
    return (
        np.asarray(model.cayley, dtype=np.int64),
        np.asarray(model.element_classes, dtype=np.int64),
        len(model.class_labels),
    )


def type_histogram(model: GroupModel, colors: np.ndarray, perms: np.ndarray) -> Counter:
    """Count types over a batch of elements through the compiled kernel."""
    cayley, elem_class, ncls = _model_arrays(model)
    counts = kernels.cycle_type_counts(colors, perms, cayley, elem_class, ncls)
    n = perms.shape[1]
    flat = counts.reshape(len(counts), -1)
    width = flat.shape[1]
    if width * np.log2(n + 1) < 62:
        # counts are at most n, so base n+1 packs a row into one int64
        radix = (n + 1) ** np.arange(width, dtype=np.int64)
        packed, first, freq = np.unique(flat @ radix, return_index=True, return_counts=True)
        keys = flat[first]
    else:
        keys, freq = np.unique(flat, axis=0, return_counts=True)
    return Counter(
        {type_from_counts(model, k.reshape(ncls, n + 1)): int(f) for k, f in zip(keys, freq)}
    )


def exhaustive_type_counts(model: GroupModel, n: int, bound: int = ENUMERATION_BOUND) -> Counter:
    if n == 0:
        return Counter({DiagramFamily(): 1})
    colors, perms = _all_arrays(model, n, bound)
    return type_histogram(model, colors, perms)


# --- the Ewens measure ------------------------------------------------------------------------


def _t(z: CentralFunction) -> dict:
    return {c: abs2(v) for c, v in z.values().items()}


def density_of_type(z: CentralFunction, rho: WreathType):
    """``n! prod_c t(c)^{[x](c)} / (I)_n`` for any ``x`` of type ``rho``."""
    t = _t(z)
    n = rho.size
    value = factorial(n) / pochhammer(total_I(z), n)
    for c, lam in rho.items():
        value = value * t[c] ** len(lam)
    return value


def ewens_density(z: CentralFunction, x: ColoredPermutation):
    """Density of the Ewens measure against the uniform measure on ``S_n(G)``."""
    return density_of_type(z, cycle_type(x))


def ewens_mass(z: CentralFunction, x: ColoredPermutation):
    """Probability of the single element ``x``."""
    return ewens_density(z, x) / group_order(z.model, x.degree)


def total_mass(z: CentralFunction, n: int, bound: int = ENUMERATION_BOUND):
    """Exact ``sum_x density(x) / |S_n(G)|`` by enumerating ``S_n(G)``."""
    counts = exhaustive_type_counts(z.model, n, bound)
    total = z.model.zero()
    for rho, k in counts.items():
        total = total + k * density_of_type(z, rho)
    return total / group_order(z.model, n)


def exact_type_distribution(z: CentralFunction, n: int, bound: int = ENUMERATION_BOUND) -> dict:
    counts = exhaustive_type_counts(z.model, n, bound)
    order = group_order(z.model, n)
    return {rho: k * density_of_type(z, rho) / order for rho, k in counts.items()}


# --- projection and fibers --------------------------------------------------------------------


def project(x: ColoredPermutation) -> ColoredPermutation:
    """Canonical projection ``S_{n+1}(G) -> S_n(G)``: delete the last letter."""
    if x.degree < 1:
        raise DomainError("cannot project an element of degree 0")
    m = x.model
    last = x.degree - 1
    colors = list(x.colors[:last])
    perm = list(x.perm[:last])
    if x.perm[last] != last:
        pred = x.perm.index(last)
        succ = x.perm[last]
        perm[pred] = succ
        colors[succ] = m.multiply(colors[succ], x.colors[last])
    return ColoredPermutation(colors, perm, m)


def project_to(x: ColoredPermutation, n: int) -> ColoredPermutation:
    if n > x.degree:
        raise DomainError(f"cannot project degree {x.degree} up to {n}")
    while x.degree > n:
        x = project(x)
    return x


def append_fixed(x: ColoredPermutation, g: int) -> ColoredPermutation:
    n = x.degree
    return ColoredPermutation(x.colors + (g,), x.perm + (n,), x.model)


def insert_after(x: ColoredPermutation, j: int, h: int) -> ColoredPermutation:
    """Put the new letter right after ``j`` in its cycle with colour ``h``.

    The colour of ``s(j)`` is multiplied by ``h^{-1}`` on the right, so
    :func:`project` undoes this exactly.
    """
    m = x.model
    n = x.degree
    if not 0 <= j < n:
        raise DomainError(f"insertion point {j} outside degree {n}")
    colors = list(x.colors) + [h]
    perm = list(x.perm) + [x.perm[j]]
    sj = x.perm[j]
    perm[j] = n
    colors[sj] = m.multiply(colors[sj], m.inverse(h))
    return ColoredPermutation(colors, perm, m)


def fiber(x: ColoredPermutation) -> list[ColoredPermutation]:
    """All preimages of ``x`` under :func:`project`: fixed-point then cycle insertions."""
    elements = range(len(x.model.cayley))
    out = [append_fixed(x, g) for g in elements]
    out.extend(insert_after(x, j, h) for j in range(x.degree) for h in elements)
    return out


# --- sampling ---------------------------------------------------------------------------------


def _color_cdf(z: CentralFunction) -> np.ndarray:
    m = z.model
    t = _t(z)
    I = total_I(z)
    weights = np.array([float(t[m.element_class(g)] / I) for g in m.elements])
    weights /= len(weights)
    return np.cumsum(weights) / weights.sum()


def transition_probability(z: CentralFunction, x: ColoredPermutation, y: ColoredPermutation):
    """Exact probability that one sampler step from ``x`` lands on ``y``."""
    if y.degree != x.degree + 1 or project(y) != x:
        return z.model.zero()
    m = z.model
    n = x.degree
    I = total_I(z)
    G = len(m.cayley)
    if y.perm[n] == n:
        return abs2(z.value_at_element(y.colors[n])) / (G * (I + n))
    return 1 / (G * (I + n))


def sample_step(z: CentralFunction, x: ColoredPermutation, rng: np.random.Generator):
    """One step of the consistent sampler, reading three uniforms from ``rng``."""
    u0, u1, u2 = rng.random(3)
    return _step(z, x, u0, u1, u2, _color_cdf(z))


def _step(z, x, u0, u1, u2, cdf):
    n = x.degree
    I = float(total_I(z))
    G = len(z.model.cayley)
    if u0 < I / (I + n):
        c = G - 1
        for q in range(G):
            if u1 < cdf[q]:
                c = q
                break
        return append_fixed(x, c)
    j = min(int(u1 * n), n - 1)
    h = min(int(u2 * G), G - 1)
    return insert_after(x, j, h)


def sample_ewens(z: CentralFunction, n: int, rng: np.random.Generator) -> ColoredPermutation:
    """One Ewens-distributed element of ``S_n(G)`` grown from degree 0."""
    x = ColoredPermutation.identity(z.model, 0)
    cdf = _color_cdf(z)
    for _ in range(n):
        u0, u1, u2 = rng.random(3)
        x = _step(z, x, u0, u1, u2, cdf)
    return x


def sample_ewens_arrays(z: CentralFunction, n: int, count: int, rng: np.random.Generator):
    """``count`` Ewens draws as ``(colors, perms)`` arrays via the batch kernel.

    Uniforms are drawn chunk by chunk in the same order :func:`sample_ewens`
    consumes them, so both paths give the same elements for the same seed.
    """
    m = z.model
    m.require_elements()
    cayley = np.asarray(m.cayley, dtype=np.int64)
    inverses = np.asarray(m.inverses, dtype=np.int64)
    cdf = _color_cdf(z)
    I = float(total_I(z))
    colors = np.empty((count, n), dtype=np.int64)
    perms = np.empty((count, n), dtype=np.int64)
    for start in range(0, count, SAMPLE_CHUNK):
        k = min(SAMPLE_CHUNK, count - start)
        u = rng.random((k, n, 3))
        c, p = kernels.ewens_batch(u, cdf, I, cayley, inverses)
        colors[start : start + k] = c
        perms[start : start + k] = p
    return colors, perms


def sample_ewens_types(z: CentralFunction, n: int, count: int, rng: np.random.Generator) -> Counter:
    colors, perms = sample_ewens_arrays(z, n, count, rng)
    if n == 0:
        return Counter({DiagramFamily(): count})
    return type_histogram(z.model, colors, perms)


class VirtualPermutation:
    """Lazily grown consistent sequence ``x_0, x_1, ...`` with ``project(x_{k+1}) = x_k``."""

    def __init__(self, z: CentralFunction, rng: np.random.Generator, start=None):
        self.z = z
        self.rng = rng
        self._prefixes = [start or ColoredPermutation.identity(z.model, 0)]

    @property
    def degree(self) -> int:
        return self._prefixes[-1].degree

    def prefix(self, n: int) -> ColoredPermutation:
        base = self._prefixes[0].degree
        if n < base:
            return project_to(self._prefixes[0], n)
        while self.degree < n:
            self._prefixes.append(sample_step(self.z, self._prefixes[-1], self.rng))
        return self._prefixes[n - base]


# --- the two-sided action, cocycles, Radon-Nikodym --------------------------------------------


@dataclass(frozen=True)
class BiGroupElement:
    """``W = (w1, w2)`` acting on the right by ``x W = w2^{-1} x w1``."""

    w1: ColoredPermutation
    w2: ColoredPermutation

    def __post_init__(self):
        if self.w1.degree != self.w2.degree:
            raise DomainError("both components of W need the same degree")

    @property
    def degree(self) -> int:
        return self.w1.degree

    def padded(self, n: int) -> "BiGroupElement":
        return BiGroupElement(self.w1.padded(n), self.w2.padded(n))

    def __mul__(self, other: "BiGroupElement") -> "BiGroupElement":
        """``W2 W1`` with ``x(W2 W1) = (x W2) W1``: componentwise products."""
        n = max(self.degree, other.degree)
        a, b = self.padded(n), other.padded(n)
        return BiGroupElement(multiply(a.w1, b.w1), multiply(a.w2, b.w2))


def act(x: ColoredPermutation, W: BiGroupElement) -> ColoredPermutation:
    """``w2^{-1} x w1`` at degree ``max(deg x, deg W)``."""
    n = max(x.degree, W.degree)
    x = x.padded(n)
    W = W.padded(n)
    return multiply(multiply(inverse(W.w2), x), W.w1)


def _level(x: ColoredPermutation, W: BiGroupElement, n: int | None) -> int:
    if n is None:
        n = W.degree
    if n < W.degree:
        raise DomainError(f"level {n} is below the degree {W.degree} of W")
    if n > x.degree:
        raise DomainError(f"prefix of degree {x.degree} is too short for level {n}")
    return n


def cocycle(x: ColoredPermutation, W: BiGroupElement, c, n: int | None = None) -> int:
    """``[w2^{-1} x_n w1](c) - [x_n](c)`` at level ``n`` (default: the degree of W)."""
    n = _level(x, W, n)
    xn = project_to(x, n)
    x.model.parse_class_label(c)
    return class_counts(act(xn, W)).get(c, 0) - class_counts(xn).get(c, 0)


def cocycles(x: ColoredPermutation, W: BiGroupElement, n: int | None = None) -> dict:
    return {c: cocycle(x, W, c, n) for c in x.model.class_labels}


def radon_nikodym(z: CentralFunction, x: ColoredPermutation, W: BiGroupElement, n: int | None = None):
    """``prod_c t(c)^{C_c(x, W)}``."""
    t = _t(z)
    value = z.model.one()
    for c, k in cocycles(x, W, n).items():
        value = value * t[c] ** k
    return value


# --- the character chi_z restricted to S_n(G) -------------------------------------------------


def chi_z_restricted(z: CentralFunction, w: ColoredPermutation, bound: int = ENUMERATION_BOUND):
    """``(n!/(I)_n) * mean_x prod_c z(c)^{[xw](c)} conj(z(c))^{[x](c)}`` over ``S_n(G)``."""
    m = z.model
    n = w.degree
    _check_bound(m, n, bound)
    values = z.values()
    cache: dict = {}

    def phi(y, conjugated):
        key = (y.colors, y.perm, conjugated)
        if key not in cache:
            value = m.one()
            for c, k in class_counts(y).items():
                v = conj(values[c]) if conjugated else values[c]
                value = value * v**k
            cache[key] = value
        return cache[key]

    total = m.zero()
    for x in enumerate_wreath(m, n, bound):
        total = total + phi(multiply(x, w), False) * phi(x, True)
    return factorial(n) / pochhammer(total_I(z), n) * total / group_order(m, n)
