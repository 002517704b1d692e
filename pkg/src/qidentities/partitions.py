"""Partition families with difference conditions, their weights, and Euler subtraction.

Exhaustive enumeration here is the independent check on every series
identity: a generating function is only trusted once its coefficients match
a brute-force weighted count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import EmptyPartition, FamilyMismatch, InvalidGap
from .polyring import ONE, ZERO, LaurentPoly, a, b, z


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(x < y for x, y in zip(parts, parts[1:])):
            parts = tuple(sorted(parts, reverse=True))
        object.__setattr__(self, "parts", parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts)) or "()"

    @property
    def sigma(self) -> int:
        return sum(self.parts)

    @property
    def nu(self) -> int:
        return len(self.parts)

    def nu_mod(self, r: int, m: int) -> int:
        """Number of parts congruent to ``r`` modulo ``m``."""
        return sum(1 for p in self.parts if (p - r) % m == 0)

    @property
    def nu_distinct(self) -> int:
        return len(set(self.parts))

    def nu_distinct_ge(self, ell: int) -> int:
        return len({p for p in self.parts if p >= ell})

    @property
    def least_part(self) -> int:
        if not self.parts:
            raise EmptyPartition("the empty partition has no least part")
        return self.parts[-1]


@dataclass(frozen=True)
class PartitionStatistics:
    sigma: int
    nu: int
    nu_distinct: int
    least_part: Optional[int]
    partition: Partition

    def nu_mod(self, r: int, m: int) -> int:
        return self.partition.nu_mod(r, m)

    def nu_distinct_ge(self, ell: int) -> int:
        return self.partition.nu_distinct_ge(ell)


def statistics(p: Partition) -> PartitionStatistics:
    """Summary statistics; ``least_part`` is ``None`` for the empty partition."""
    return PartitionStatistics(p.sigma, p.nu, p.nu_distinct,
                               p.parts[-1] if p.parts else None, p)


# -- families -------------------------------------------------------------------


def _gg_pair(big: int, small: int) -> bool:
    d = big - small
    return d > 2 or (d == 2 and big % 2 == 1)


_RULES: Dict[str, Tuple[Callable[[int], bool], Callable[[int, int], bool], int]] = {
    # tag: (allowed part, admissible consecutive pair (larger, smaller), least part)
    "O4": (lambda p: p % 2 == 1, lambda x, y: x - y >= 4, 1),
    "D24": (lambda p: p % 4 != 2, lambda x, y: x > y, 1),
    "D3": (lambda p: p % 3 != 0, lambda x, y: x - y >= 3, 1),
    "D": (lambda p: True, lambda x, y: x > y, 1),
    "GG1": (lambda p: True, _gg_pair, 1),
    "GG2": (lambda p: True, _gg_pair, 3),
    "UNRESTRICTED": (lambda p: True, lambda x, y: True, 1),
}


@dataclass(frozen=True)
class PartitionFamily:
    tag: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.tag == "MOD8":
            if self.param not in (1, 2):
                raise ValueError("MOD8 family takes i in {1, 2}")
        elif self.tag == "PARTS_IN":
            if not isinstance(self.param, tuple) or not all(p > 0 for p in self.param):
                raise ValueError("PARTS_IN family takes a tuple of positive parts")
        elif self.tag not in _RULES or self.param is not None:
            raise ValueError(f"unknown partition family {self}")

    def __str__(self):
        if self.tag == "MOD8":
            return f"MOD8({self.param})"
        if self.tag == "PARTS_IN":
            return f"PARTS_IN({','.join(map(str, self.param))})"
        return self.tag

    @classmethod
    def parse(cls, text: str) -> "PartitionFamily":
        text = text.strip().upper()
        m = re.fullmatch(r"MOD8[(:\s]?\s*([12])\)?", text)
        if m:
            return cls("MOD8", int(m.group(1)))
        m = re.fullmatch(r"PARTS_IN\(([\d,\s]+)\)", text)
        if m:
            return parts_in(int(x) for x in m.group(1).split(",") if x.strip())
        return cls(text)

    def rules(self):
        if self.tag == "MOD8":
            r = 2 * self.param - 1
            residues = {4, r, 8 - r}
            return (lambda p: p % 8 in residues), (lambda x, y: True), 1
        if self.tag == "PARTS_IN":
            allowed = frozenset(self.param)
            return (lambda p: p in allowed), (lambda x, y: True), min(allowed)
        return _RULES[self.tag]

    def contains(self, p: Partition) -> bool:
        allowed, pair_ok, least = self.rules()
        parts = p.parts
        if parts and parts[-1] < least:
            return False
        if not all(allowed(x) for x in parts):
            return False
        return all(pair_ok(x, y) for x, y in zip(parts, parts[1:]))


O4 = PartitionFamily("O4")
D24 = PartitionFamily("D24")
D3 = PartitionFamily("D3")
D = PartitionFamily("D")
GG1 = PartitionFamily("GG1")
GG2 = PartitionFamily("GG2")
UNRESTRICTED = PartitionFamily("UNRESTRICTED")


def MOD8(i: int) -> PartitionFamily:
    return PartitionFamily("MOD8", i)


def parts_in(parts) -> PartitionFamily:
    """Unrestricted-multiplicity partitions with parts from a finite set."""
    return PartitionFamily("PARTS_IN", tuple(sorted(set(parts))))


@lru_cache(maxsize=None)
def _enumerate(n: int, family: PartitionFamily, prev: Optional[int]) -> Tuple[Tuple[int, ...], ...]:
    allowed, pair_ok, least = family.rules()
    if n == 0:
        return ((),)
    top = n if prev is None else min(n, prev)
    out = []
    for p in range(top, least - 1, -1):
        if not allowed(p) or (prev is not None and not pair_ok(prev, p)):
            continue
        for rest in _enumerate(n - p, family, p):
            out.append((p,) + rest)
    return tuple(out)


def enumerate_partitions(n: int, family: PartitionFamily) -> List[Partition]:
    """All partitions of ``n`` in ``family``, in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(parts) for parts in _enumerate(n, family, None)]


def count(n: int, family: PartitionFamily) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return len(_enumerate(n, family, None))


# -- chains ---------------------------------------------------------------------


@dataclass(frozen=True)
class ChainDecomposition:
    """Maximal runs of consecutive parts with common difference ``gap``."""

    gap: int
    chains: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.chains)

    def count_least_ge(self, ell: int) -> int:
        """``N_ell``: chains whose least part is at least ``ell``."""
        return sum(1 for c in self.chains if c[-1] >= ell)


def chain_decompose(p: Partition, gap: int) -> ChainDecomposition:
    if gap < 1:
        raise ValueError("gap must be at least 1")
    chains: List[List[int]] = []
    for part in p.parts:
        if chains and chains[-1][-1] - part == gap:
            chains[-1].append(part)
        else:
            chains.append([part])
    return ChainDecomposition(gap, tuple(tuple(c) for c in chains))


# -- weights --------------------------------------------------------------------

WEIGHT_IDS = ("THM1_LHS", "THM1_RHS", "THM2_LHS", "THM2_RHS",
              "THM3_LHS", "THM3_RHS", "GG_REFINED_G", "GG_REFINED_H")

WEIGHT_FAMILY = {
    "THM1_LHS": O4, "THM1_RHS": D24,
    "THM2_LHS": O4, "THM2_RHS": D24,
    "THM3_LHS": D3, "THM3_RHS": D,
    "GG_REFINED_G": GG1, "GG_REFINED_H": GG2,
}

_ONE_MINUS_Z2 = ONE - z * z
_ONE_MINUS_AB = ONE - a * b
_MINUS_AB = -(a * b)


def weight(p: Partition, w: str, delta: int = 1) -> LaurentPoly:
    """Multiplicative weight of ``p`` under weight system ``w``.

    ``delta`` (+1 or -1) is the sign carried by every part for the refined
    Gollnitz-Gordon weights and is ignored elsewhere.
    """
    if w not in WEIGHT_FAMILY:
        raise ValueError(f"unknown weight id {w!r}")
    family = WEIGHT_FAMILY[w]
    if not family.contains(p):
        raise FamilyMismatch(f"{p} is not in {family} required by {w}")
    if w == "THM1_LHS":
        return z ** p.nu * _ONE_MINUS_Z2 ** chain_decompose(p, 4).count_least_ge(5)
    if w == "THM1_RHS":
        return z ** p.nu_mod(1, 2) * (-(z * z)) ** p.nu_mod(0, 2)
    if w == "THM2_LHS":
        return (a ** p.nu_mod(1, 4) * b ** p.nu_mod(3, 4)
                * _ONE_MINUS_AB ** chain_decompose(p, 4).count_least_ge(5))
    if w == "THM2_RHS":
        return a ** p.nu_mod(1, 4) * b ** p.nu_mod(3, 4) * _MINUS_AB ** p.nu_mod(0, 4)
    if w == "THM3_LHS":
        return (a ** p.nu_mod(1, 3) * b ** p.nu_mod(2, 3)
                * _ONE_MINUS_AB ** chain_decompose(p, 3).count_least_ge(3))
    if w == "THM3_RHS":
        return a ** p.nu_mod(1, 3) * b ** p.nu_mod(2, 3) * _MINUS_AB ** p.nu_mod(0, 3)
    # refined Gollnitz-Gordon: delta per odd part, delta*a per even part
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    evens = p.nu_mod(0, 2)
    return a ** evens * LaurentPoly.const(delta ** p.nu)


def weighted_sum(n: int, family: PartitionFamily, w: str, delta: int = 1) -> LaurentPoly:
    total = ZERO
    for p in enumerate_partitions(n, family):
        total = total + weight(p, w, delta)
    return total


# -- Euler subtraction ----------------------------------------------------------


def euler_subtract(p: Partition, step: int) -> Partition:
    """Remove ``0, step, 2*step, ...`` from the parts taken smallest first."""
    ascending = p.parts[::-1]
    out = [x - step * j for j, x in enumerate(ascending)]
    if any(x <= 0 for x in out) or any(x > y for x, y in zip(out, out[1:])):
        raise InvalidGap(f"{p} does not have all gaps >= {step}")
    return Partition(tuple(reversed(out)))


def euler_add(p: Partition, step: int) -> Partition:
    """Inverse of :func:`euler_subtract`."""
    ascending = p.parts[::-1]
    return Partition(tuple(reversed([x + step * j for j, x in enumerate(ascending)])))


def gap_at_least(p: Partition, step: int) -> bool:
    return all(x - y >= step for x, y in zip(p.parts, p.parts[1:]))
