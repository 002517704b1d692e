"""Exhaustive partition-side property checks, reported like identity verifications.

On failure the mismatch degree is the offending ``n``; the two polynomials
are the quantities that should have agreed (counts, for the bijection checks).
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Dict, List

from .identities import g1k_star_series, g3k_series
from .partitions import (
    D, D3, D24, GG1, GG2, MOD8, O4, UNRESTRICTED,
    Partition, chain_decompose, count, enumerate_partitions, euler_add, euler_subtract,
    gap_at_least, weight, weighted_sum,
)
from .polyring import LaurentPoly, z
from .report import Mismatch, Timer, VerificationReport


def _fail(name: str, n_max: int, n: int, lhs, rhs, timer: Timer) -> VerificationReport:
    return VerificationReport(name, n_max + 1, "fail",
                              Mismatch(n, LaurentPoly.coerce(lhs), LaurentPoly.coerce(rhs)), timer.ms)


def _pass(name: str, n_max: int, timer: Timer) -> VerificationReport:
    return VerificationReport(name, n_max + 1, "pass", None, timer.ms)


def _triangular(k: int) -> int:
    return k * (k + 1) // 2


def check_euler_bijection(n_max: int, step: int) -> VerificationReport:
    """Euler subtraction is a bijection from gap->=step partitions of n with k parts
    onto all partitions of n - step*T_(k-1) with k parts, and euler_add inverts it."""
    timer = Timer()
    name = f"euler-bijection(step={step})"
    for n in range(n_max + 1):
        images: Dict[int, set] = defaultdict(set)
        sources = [p for p in enumerate_partitions(n, UNRESTRICTED) if gap_at_least(p, step)]
        for p in sources:
            q = euler_subtract(p, step)
            if euler_add(q, step) != p or q.nu != p.nu:
                return _fail(name, n_max, n, 0, 1, timer)
            images[p.nu].add(q)
        for k, image in images.items():
            target = n - step * _triangular(k - 1)
            expected = {p for p in enumerate_partitions(target, UNRESTRICTED) if p.nu == k}
            if image != expected:
                return _fail(name, n_max, n, len(image), len(expected), timer)
        # every partition with k parts of the shifted size has a preimage
        for k in range(1, n + 1):
            target = n - step * _triangular(k - 1)
            if target < k:
                break
            if k not in images and any(p.nu == k for p in enumerate_partitions(target, UNRESTRICTED)):
                return _fail(name, n_max, n, 0, 1, timer)
    return _pass(name, n_max, timer)


def check_chain_correspondence(n_max: int, step: int) -> VerificationReport:
    """After Euler subtraction the number of distinct parts equals the number of chains.

    Runs over O4 for step 4 (images must have odd parts) and D3 for step 3
    (images must avoid multiples of 3).
    """
    timer = Timer()
    family, residue_ok = {4: (O4, lambda x: x % 2 == 1), 3: (D3, lambda x: x % 3 != 0)}[step]
    name = f"chain-correspondence({family})"
    for n in range(n_max + 1):
        for p in enumerate_partitions(n, family):
            q = euler_subtract(p, step)
            chains = len(chain_decompose(p, step))
            if q.nu != p.nu or not all(residue_ok(x) for x in q.parts) or q.nu_distinct != chains:
                return _fail(name, n_max, n, q.nu_distinct, chains, timer)
    return _pass(name, n_max, timer)


def check_n4_equals_n5(n_max: int) -> VerificationReport:
    timer = Timer()
    for n in range(n_max + 1):
        for p in enumerate_partitions(n, O4):
            ch = chain_decompose(p, 4)
            if ch.count_least_ge(4) != ch.count_least_ge(5):
                return _fail("N4=N5 on O4", n_max, n, ch.count_least_ge(4), ch.count_least_ge(5), timer)
    return _pass("N4=N5 on O4", n_max, timer)


def check_theorem_equalities(n_max: int) -> VerificationReport:
    """Weighted sums of both families agree for T1-T3, and the T2 weights at a=b=z give T1."""
    timer = Timer()
    name = "theorem-equalities"
    sub = {"a": z, "b": z}
    for n in range(n_max + 1):
        t1l, t1r = weighted_sum(n, O4, "THM1_LHS"), weighted_sum(n, D24, "THM1_RHS")
        t2l, t2r = weighted_sum(n, O4, "THM2_LHS"), weighted_sum(n, D24, "THM2_RHS")
        t3l, t3r = weighted_sum(n, D3, "THM3_LHS"), weighted_sum(n, D, "THM3_RHS")
        for lhs, rhs in ((t1l, t1r), (t2l, t2r), (t3l, t3r),
                         (t2l.substitute(sub), t1l), (t2r.substitute(sub), t1r)):
            if lhs != rhs:
                return _fail(name, n_max, n, lhs, rhs, timer)
        for p in enumerate_partitions(n, D24):
            if p.nu_mod(0, 2) != p.nu_mod(0, 4):
                return _fail(name, n_max, n, p.nu_mod(0, 2), p.nu_mod(0, 4), timer)
    return _pass(name, n_max, timer)


def check_gg_counts(n_max: int) -> VerificationReport:
    timer = Timer()
    for n in range(n_max + 1):
        for gg, mod8 in ((GG1, MOD8(1)), (GG2, MOD8(2))):
            if count(n, gg) != count(n, mod8):
                return _fail("gollnitz-gordon-counts", n_max, n, count(n, gg), count(n, mod8), timer)
    return _pass("gollnitz-gordon-counts", n_max, timer)


def check_chain_generating_functions(n_max: int, k_max: int = 5) -> VerificationReport:
    """Per part count k, weighted O4 enumeration split by least part against G_{3,k} and G*_{1,k}."""
    timer = Timer()
    order = n_max + 1
    name = "chain-generating-functions"
    series3 = {k: g3k_series(k, order) for k in range(k_max + 1)}
    series1 = {k: g1k_star_series(k, order) for k in range(1, k_max + 1)}
    for n in range(order):
        tot3: Dict[int, LaurentPoly] = defaultdict(LaurentPoly)
        tot1: Dict[int, LaurentPoly] = defaultdict(LaurentPoly)
        for p in enumerate_partitions(n, O4):
            bucket = tot1 if p.parts and p.least_part == 1 else tot3
            bucket[p.nu] = bucket[p.nu] + weight(p, "THM1_LHS")
        for k in range(k_max + 1):
            if series3[k].coeff(n) != tot3[k]:
                return _fail(name, n_max, n, tot3[k], series3[k].coeff(n), timer)
            if k >= 1 and series1[k].coeff(n) != tot1[k]:
                return _fail(name, n_max, n, tot1[k], series1[k].coeff(n), timer)
    return _pass(name, n_max, timer)


def partition_suites(n_max: int) -> List[Callable[[], VerificationReport]]:
    return [
        lambda: check_euler_bijection(n_max, 4),
        lambda: check_euler_bijection(n_max, 3),
        lambda: check_chain_correspondence(n_max, 4),
        lambda: check_chain_correspondence(n_max, 3),
        lambda: check_n4_equals_n5(n_max),
        lambda: check_theorem_equalities(n_max),
        lambda: check_gg_counts(n_max),
        lambda: check_chain_generating_functions(n_max),
    ]
