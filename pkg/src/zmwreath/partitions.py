"""Young diagrams, hooks, contents and symmetric-group characters.

Partitions of ``n`` are enumerated in reverse-lexicographic order, e.g.
``(4), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)``, so every downstream table
is reproducible.
"""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, NamedTuple

from .errors import DomainError


class YoungDiagram(tuple):
    """Immutable Young diagram stored as its weakly decreasing row lengths."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise DomainError(f"parts must be positive integers: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_unsorted(cls, parts: Iterable[int]) -> "YoungDiagram":
        return cls(sorted((p for p in parts if p > 0), reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def transpose(self) -> "YoungDiagram":
        if not self:
            return self
        return YoungDiagram(sum(1 for p in self if p > j) for j in range(self[0]))

    def boxes(self):
        """Yield every box as a 1-based :class:`BoxCoord`, row by row."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield BoxCoord(i, j)

    def __contains__(self, box) -> bool:
        if isinstance(box, BoxCoord):
            return 1 <= box.row <= len(self) and 1 <= box.col <= self[box.row - 1]
        return super().__contains__(box)

    def add_box(self, row: int) -> "YoungDiagram":
        parts = list(self) + [0]
        parts[row - 1] += 1
        return YoungDiagram.from_unsorted(parts)

    def remove_box(self, row: int) -> "YoungDiagram":
        parts = list(self)
        parts[row - 1] -= 1
        return YoungDiagram(p for p in parts if p > 0)

    def to_json(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"YoungDiagram({list(self)})"


EMPTY = YoungDiagram()


class BoxCoord(NamedTuple):
    row: int
    col: int


def diagram_from_json(data) -> YoungDiagram:
    if isinstance(data, str):
        data = json.loads(data)
    return YoungDiagram(data)


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> tuple[YoungDiagram, ...]:
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(YoungDiagram((first,) + tuple(rest)))
    return tuple(out)


def enumerate_partitions(n: int) -> tuple[YoungDiagram, ...]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return _partitions(n, n)


def content(box: BoxCoord) -> int:
    return box.col - box.row


def hook(lam: YoungDiagram, box: BoxCoord) -> int:
    if box not in lam:
        raise DomainError(f"box {tuple(box)} is not in {list(lam)}")
    i, j = box
    arm = lam[i - 1] - j
    leg = sum(1 for r in lam[i:] if r >= j)
    return arm + leg + 1


def hook_product(lam: YoungDiagram) -> int:
    conj = lam.transpose()
    return prod(lam[i - 1] - i + conj[j - 1] - j + 1 for i, j in lam.boxes())


@lru_cache(maxsize=None)
def dim_sym(lam: YoungDiagram) -> int:
    """Number of standard tableaux, by the hook-length formula."""
    lam = YoungDiagram(lam)
    return factorial(lam.size) // hook_product(lam)


def multiplicities(rho: YoungDiagram) -> dict[int, int]:
    """Cycle structure ``{i: m_i}`` of a partition (zero entries omitted)."""
    return dict(sorted(Counter(rho).items()))


def from_multiplicities(mult: dict[int, int]) -> YoungDiagram:
    parts = []
    for length, m in sorted(mult.items(), reverse=True):
        if m < 0:
            raise DomainError(f"negative multiplicity for {length}")
        parts.extend([length] * m)
    return YoungDiagram(parts)


def z_rho(rho: YoungDiagram) -> int:
    """``prod i^{m_i} m_i!``; ``n!/z_rho`` is the size of the class of ``rho``."""
    return prod(i**m * factorial(m) for i, m in multiplicities(rho).items())


def _beta_set(lam: tuple[int, ...], length: int) -> tuple[int, ...]:
    parts = tuple(lam) + (0,) * (length - len(lam))
    return tuple(parts[i] + length - 1 - i for i in range(length))


def _from_beta(beta: Iterable[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    length = len(beta)
    return tuple(p for p in (beta[i] - (length - 1 - i) for i in range(length)) if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], rho: tuple[int, ...]) -> int:
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    length = len(lam) + r
    beta = _beta_set(lam, length)
    beads = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beads:
            continue
        # leg length of the removed rim hook = beads strictly between target and b
        height = sum(1 for c in beads if target < c < b)
        new = _from_beta((beads - {b}) | {target})
        total += (-1) ** height * _mn(new, rest)
    return total


def mn_character(lam: YoungDiagram, rho: YoungDiagram) -> int:
    """``chi^lam`` at the class of cycle type ``rho`` (Murnaghan-Nakayama)."""
    lam = YoungDiagram(lam)
    rho = YoungDiagram(rho)
    if lam.size != rho.size:
        raise DomainError(f"size mismatch: |{list(lam)}| != |{list(rho)}|")
    return _mn(tuple(lam), tuple(rho))


def clear_character_cache() -> None:
    _mn.cache_clear()
    dim_sym.cache_clear()


def corner_moves(lam: YoungDiagram) -> tuple[list[BoxCoord], list[BoxCoord]]:
    """Addable and removable boxes, both sorted by row."""
    lam = YoungDiagram(lam)
    addable = []
    removable = []
    rows = list(lam)
    for i in range(len(rows) + 1):
        current = rows[i] if i < len(rows) else 0
        above = rows[i - 1] if i > 0 else None
        if above is None or above > current:
            addable.append(BoxCoord(i + 1, current + 1))
    for i, r in enumerate(rows):
        below = rows[i + 1] if i + 1 < len(rows) else 0
        if r > below:
            removable.append(BoxCoord(i + 1, r))
    return addable, removable


def up_neighbors(lam: YoungDiagram) -> list[YoungDiagram]:
    return [lam.add_box(b.row) for b in corner_moves(lam)[0]]


def down_neighbors(lam: YoungDiagram) -> list[YoungDiagram]:
    return [lam.remove_box(b.row) for b in corner_moves(lam)[1]]
