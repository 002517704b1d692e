"""Truncated formal q-series with Laurent-polynomial coefficients.

A :class:`QSeries` stores the coefficients of ``q^L .. q^(N-1)``. Everything
below ``L`` is exactly zero (``L`` is a valuation bound), everything from
``N`` upward is unknown and reading it raises :class:`TruncationError`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import (
    DivergentSeries,
    EmptyWindow,
    InsufficientOrder,
    NonmonotoneCutoff,
    NotInvertible,
    TruncationError,
)
from .polyring import ONE, ZERO, LaurentPoly


class QSeries:
    __slots__ = ("lower", "order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int, lower: int = 0):
        if lower >= order:
            raise EmptyWindow(f"empty window [{lower}, {order})")
        coeffs = tuple(LaurentPoly.coerce(c) for c in coeffs)
        width = order - lower
        if len(coeffs) > width:
            coeffs = coeffs[:width]
        elif len(coeffs) < width:
            coeffs = coeffs + (ZERO,) * (width - len(coeffs))
        self.lower = lower
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, coeffs: tuple, order: int, lower: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj.lower, obj.order, obj.coeffs = lower, order, coeffs
        return obj

    @classmethod
    def from_dict(cls, terms: Mapping[int, object], order: int, lower: Optional[int] = None) -> "QSeries":
        """Series from ``{exponent: coefficient}``; terms at or past ``order`` are dropped."""
        if lower is None:
            lower = min([e for e in terms if e < order], default=0)
            lower = min(lower, 0)
        coeffs = [ZERO] * (order - lower)
        for e, c in terms.items():
            if e < lower:
                raise EmptyWindow(f"term q^{e} lies below the window start {lower}")
            if e < order:
                coeffs[e - lower] = coeffs[e - lower] + LaurentPoly.coerce(c)
        return cls(coeffs, order, lower)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.monomial(ONE, 0, order)

    @classmethod
    def zero(cls, order: int, lower: int = 0) -> "QSeries":
        return cls._raw((ZERO,) * (order - lower), order, lower)

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int) -> "QSeries":
        """``coeff * q^exponent`` truncated at ``order``."""
        lower = min(exponent, 0)
        if lower >= order:
            raise EmptyWindow(f"empty window [{lower}, {order})")
        coeffs = [ZERO] * (order - lower)
        if exponent < order:
            coeffs[exponent - lower] = LaurentPoly.coerce(coeff)
        return cls._raw(tuple(coeffs), order, lower)

    # -- access -----------------------------------------------------------

    def coeff(self, n: int) -> LaurentPoly:
        if n >= self.order:
            raise TruncationError(f"coefficient of q^{n} is beyond truncation order {self.order}")
        if n < self.lower:
            return ZERO
        return self.coeffs[n - self.lower]

    __getitem__ = coeff

    def to_dict(self) -> dict:
        return {self.lower + i: c for i, c in enumerate(self.coeffs) if c}

    def valuation(self) -> Optional[int]:
        """Exponent of the first nonzero coefficient, ``None`` if all known ones vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.lower + i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.order, frozenset(self.to_dict().items())))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*q^{e}" for e, c in sorted(self.to_dict().items())) or "0"
        return f"QSeries({body} + O(q^{self.order}))"

    # -- window management ------------------------------------------------

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise InsufficientOrder(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        if order <= self.lower:
            raise EmptyWindow(f"empty window [{self.lower}, {order})")
        return QSeries._raw(self.coeffs[: order - self.lower], order, self.lower)

    def strip(self) -> "QSeries":
        """Advance the window start past leading zero coefficients."""
        v = self.valuation()
        if v is None:
            return QSeries.zero(self.order, min(max(self.lower, 0), self.order - 1))
        return QSeries._raw(self.coeffs[v - self.lower:], self.order, v)

    def with_lower(self, lower: int) -> "QSeries":
        """Re-express with window start ``lower``; raises if a nonzero term would be lost."""
        if lower == self.lower:
            return self
        if lower < self.lower:
            pad = (ZERO,) * (self.lower - lower)
            return QSeries._raw(pad + self.coeffs, self.order, lower)
        v = self.valuation()
        if v is not None and v < lower:
            raise EmptyWindow(f"nonzero coefficient at q^{v} below requested start {lower}")
        if lower >= self.order:
            raise EmptyWindow(f"empty window [{lower}, {self.order})")
        return QSeries._raw(self.coeffs[lower - self.lower:], self.order, lower)

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q^k``."""
        return QSeries._raw(self.coeffs, self.order + k, self.lower + k)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            other = QSeries.monomial(LaurentPoly.coerce(other), 0, self.order)
        lower = min(self.lower, other.lower)
        order = min(self.order, other.order)
        if lower >= order:
            raise EmptyWindow(f"empty window [{lower}, {order})")
        out = [ZERO] * (order - lower)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.lower + i
                if e >= order:
                    break
                if c:
                    out[e - lower] = out[e - lower] + c
        return QSeries._raw(tuple(out), order, lower)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw(tuple(-c for c in self.coeffs), self.order, self.lower)

    def __sub__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            other = QSeries.monomial(LaurentPoly.coerce(other), 0, self.order)
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = LaurentPoly.coerce(c)
        return QSeries._raw(tuple(x * c for x in self.coeffs), self.order, self.lower)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        lower = self.lower + other.lower
        order = min(self.lower + other.order, other.lower + self.order)
        width = order - lower
        if width <= 0:
            raise EmptyWindow(f"empty product window [{lower}, {order})")
        xs = [(i, c) for i, c in enumerate(self.coeffs[:width]) if c]
        ys = [(j, c) for j, c in enumerate(other.coeffs[:width]) if c]
        out = [ZERO] * width
        for i, cx in xs:
            for j, cy in ys:
                if i + j >= width:
                    break
                out[i + j] = out[i + j] + cx * cy
        return QSeries._raw(tuple(out), order, lower)

    __rmul__ = __mul__

    def mul_binomial(self, c, e: int) -> "QSeries":
        """Exact multiplication by the polynomial ``1 - c*q^e``.

        A negative ``e`` moves the whole window down by ``|e|``.
        """
        c = LaurentPoly.coerce(c)
        if not c:
            return self
        lo, coeffs = self.lower, self.coeffs
        if e >= 0:
            out = list(coeffs)
            for i in range(e, len(coeffs)):
                src = coeffs[i - e]
                if src:
                    out[i] = out[i] - c * src
            return QSeries._raw(tuple(out), self.order, lo)
        # window becomes [lo + e, order + e); y_n = x_n - c x_{n-e}
        lower, order = lo + e, self.order + e
        if lower >= order:
            raise EmptyWindow("window exhausted by negative-exponent factor")
        out = []
        for n in range(lower, order):
            v = self.coeff(n) if n >= lo else ZERO
            src = self.coeff(n - e)
            if src:
                v = v - c * src
            out.append(v)
        return QSeries._raw(tuple(out), order, lower)

    def div_binomial(self, c, e: int) -> "QSeries":
        """Divide by ``1 - c*q^e`` for ``e >= 1``, or by a rational ``1 - c`` when ``e == 0``."""
        c = LaurentPoly.coerce(c)
        if not c:
            return self
        if e == 0:
            if not c.is_constant() or c.constant_value() == 1:
                raise NotInvertible(f"1 - ({c}) is not a unit")
            return self.scale(Fraction(1) / (1 - Fraction(c.constant_value())))
        if e < 0:
            raise NotInvertible(f"1 - ({c})*q^{e} has no constant leading term")
        out = list(self.coeffs)
        for i in range(e, len(out)):
            prev = out[i - e]
            if prev:
                out[i] = out[i] + c * prev
        return QSeries._raw(tuple(out), self.order, self.lower)

    def map_coeffs(self, f: Callable[[LaurentPoly], LaurentPoly]) -> "QSeries":
        return QSeries._raw(tuple(f(c) if c else c for c in self.coeffs), self.order, self.lower)

    def exact_div_poly(self, d) -> "QSeries":
        """Divide every coefficient exactly by the q-free polynomial ``d``."""
        d = LaurentPoly.coerce(d)
        return self.map_coeffs(lambda c: c.exact_div(d))

    def substitute(self, bindings: Mapping[str, object]) -> "QSeries":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def invert(self) -> "QSeries":
        x = self.strip()
        lead = x.coeffs[0]
        if not lead:
            raise NotInvertible("series has no nonzero known coefficient")
        if not lead.is_constant():
            raise NotInvertible(f"leading coefficient {lead} is not a rational constant")
        inv0 = Fraction(1) / Fraction(lead.constant_value())
        width = len(x.coeffs)
        xs = x.coeffs
        nz = [(i, c) for i, c in enumerate(xs) if c and i > 0]
        ys = [LaurentPoly.const(inv0)]
        for n in range(1, width):
            acc = ZERO
            for i, c in nz:
                if i > n:
                    break
                y = ys[n - i]
                if y:
                    acc = acc + c * y
            ys.append(acc.scale(-inv0))
        L = x.lower
        return QSeries._raw(tuple(ys), x.order - 2 * L, -L)

    def substitute_q(self, sign: int, power: int, order: Optional[int] = None) -> "QSeries":
        """Replace ``q`` by ``sign * q**power``."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if power < 1:
            raise ValueError("power must be a positive integer")
        reach = power * self.order
        if order is None:
            order = reach
        if order > reach:
            raise InsufficientOrder(
                f"order {self.order} covers only q^{reach} after q -> q^{power}; need {order}")
        lower = power * self.lower
        if lower >= order:
            raise EmptyWindow(f"empty window [{lower}, {order})")
        out = [ZERO] * (order - lower)
        for i, c in enumerate(self.coeffs):
            n = self.lower + i
            e = power * n
            if e >= order:
                break
            if c:
                out[e - lower] = -c if (sign < 0 and n % 2) else c
        return QSeries._raw(tuple(out), order, lower)

    def to_json(self) -> list:
        return [{"degree": self.lower + i, "poly": c.to_json()} for i, c in enumerate(self.coeffs)]

    @classmethod
    def from_json(cls, data: list) -> "QSeries":
        degrees = [entry["degree"] for entry in data]
        lower, order = min(degrees), max(degrees) + 1
        coeffs = [ZERO] * (order - lower)
        for entry in data:
            coeffs[entry["degree"] - lower] = LaurentPoly.from_json(entry["poly"])
        return cls(coeffs, order, lower)


def first_mismatch(x: QSeries, y: QSeries, order: int) -> Optional[Tuple[int, LaurentPoly, LaurentPoly]]:
    """Smallest degree in ``[0, order)`` where the two series differ."""
    for n in range(min(x.lower, y.lower, 0), order):
        cx, cy = x.coeff(n), y.coeff(n)
        if cx != cy:
            return n, cx, cy
    return None


def qs_add(x: QSeries, y: QSeries) -> QSeries:
    return x + y


def qs_mul(x: QSeries, y: QSeries) -> QSeries:
    return x * y


def qs_invert(x: QSeries) -> QSeries:
    return x.invert()


def qs_substitute_q(x: QSeries, sign: int, power: int, order: Optional[int] = None) -> QSeries:
    return x.substitute_q(sign, power, order)


# -- Pochhammer symbols -------------------------------------------------------


@dataclass(frozen=True)
class PochSpec:
    """The symbol ``(c q^m ; q^s)``: factors ``1 - c q^(m + j s)``."""

    c: object
    m: int
    s: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", LaurentPoly.coerce(self.c))
        if self.s < 1:
            raise ValueError("base step must be a positive integer")

    def exponents(self, n: int):
        return [self.m + j * self.s for j in range(n)]

    def negative_mass(self, n: int) -> int:
        """Sum of the negative factor exponents among the first ``n`` factors."""
        return sum(e for e in self.exponents(n) if e < 0)

    def terminates_at(self) -> Optional[int]:
        """Index ``n`` with ``(c q^m; q^s)_k == 0`` for all ``k > n``, if any."""
        if self.c == ONE and self.m <= 0 and self.m % self.s == 0:
            return -self.m // self.s
        return None


def pochhammer_finite(spec: PochSpec, n: int, order: int) -> QSeries:
    """``prod_{j<n} (1 - c q^(m+js))`` truncated at ``order``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    neg = spec.negative_mass(n)
    x = QSeries.one(order - neg)
    for e in spec.exponents(n):
        x = x.mul_binomial(spec.c, e)
    return x


def pochhammer_infinite(spec: PochSpec, order: int) -> QSeries:
    """``prod_{j>=0} (1 - c q^(m+js))`` truncated at ``order``."""
    if spec.m < 0:
        raise ValueError("infinite products need a non-negative start exponent")
    x = QSeries.one(order)
    e = spec.m
    while e < order:
        x = x.mul_binomial(spec.c, e)
        e += spec.s
    return x


def pochhammer_infinite_inverse(spec: PochSpec, order: int) -> QSeries:
    """``1 / (c q^m; q^s)_inf`` truncated at ``order``."""
    return divide_pochhammer_infinite(QSeries.one(order), spec)


def divide_pochhammer_infinite(x: QSeries, spec: PochSpec) -> QSeries:
    """Divide ``x`` by an infinite Pochhammer product.

    A ``q^0`` factor whose coefficient carries parameters cannot be inverted
    in the series ring; it is divided out of every coefficient exactly.
    """
    e = spec.m
    if e < 0:
        raise NotInvertible("infinite product with negative start exponent")
    if e == 0:
        d = ONE - spec.c
        x = x.exact_div_poly(d) if not d.is_constant() else x.div_binomial(spec.c, 0)
        e += spec.s
    while e < x.order:
        x = x.div_binomial(spec.c, e)
        e += spec.s
    return x


def pochhammer_ratio(coeff, exponent: int,
                     numerators: Iterable[Tuple[PochSpec, int]],
                     denominators: Iterable[Tuple[PochSpec, int]],
                     order: int) -> QSeries:
    """``coeff * q^exponent * prod (num)_n / prod (den)_n`` to ``order``.

    Terms of negative exponent inside the numerators lower the window; the
    working order is raised to compensate so the result is exact below
    ``order``.
    """
    numerators = list(numerators)
    denominators = list(denominators)
    neg = sum(spec.negative_mass(n) for spec, n in numerators)
    work = order - exponent - neg
    if work <= 0:
        # every term sits at or beyond the truncation order
        return QSeries.zero(order)
    x = QSeries.one(work)
    for spec, n in numerators:
        for e in spec.exponents(n):
            x = x.mul_binomial(spec.c, e)
            if x.is_zero():
                return QSeries.zero(order)
    for spec, n in denominators:
        for e in spec.exponents(n):
            if e < 0:
                raise NotInvertible(f"denominator factor with exponent {e}")
            x = x.div_binomial(spec.c, e)
    coeff = LaurentPoly.coerce(coeff)
    if coeff != ONE:
        x = x.scale(coeff)
    x = x.shift(exponent)
    if x.order < order:
        raise InsufficientOrder(f"working order fell short: {x.order} < {order}")
    return x.truncate(order)


# -- summation ---------------------------------------------------------------


def qs_sum(term: Callable[[int, int], QSeries], min_degree: Callable[[int], int], order: int, *,
           indices: Optional[Iterable[int]] = None, stop: Optional[int] = None,
           guard: int = 2) -> QSeries:
    """Sum ``term(k, order)`` over ``k`` until ``min_degree(k) >= order``.

    ``min_degree(k)`` must be a lower bound for the q-valuation of term ``k``
    and nondecreasing along ``indices`` (default ``0, 1, 2, ...``). Each
    included term is checked against its bound, and ``guard`` terms past the
    cutoff are evaluated and must vanish below ``order``. ``stop`` ends a
    terminating sum before index ``stop``.
    """
    it = iter(indices) if indices is not None else itertools.count()
    total = QSeries.zero(order)
    prev = None

    def check(k: int, x: QSeries, bound: int):
        v = x.valuation()
        if v is not None and v < bound:
            raise NonmonotoneCutoff(f"term {k} has q-valuation {v} below its declared bound {bound}")

    tail = []
    for k in it:
        if stop is not None and k >= stop:
            tail.append(k)
            break
        d = min_degree(k)
        if prev is not None and d < prev:
            raise NonmonotoneCutoff(f"min_degree decreases at index {k}: {prev} -> {d}")
        prev = d
        if d >= order:
            tail.append(k)
            break
        x = term(k, order)
        check(k, x, d)
        total = total + x
    if guard:
        tail.extend(itertools.islice(it, max(0, guard - len(tail))))
        for k in tail[:guard]:
            x = term(k, order)
            if not x.is_zero():
                raise NonmonotoneCutoff(
                    f"term {k} beyond the cutoff contributes at q^{x.valuation()} < {order}")
    return total


def _as_monomial_arg(arg) -> Tuple[LaurentPoly, int]:
    if isinstance(arg, PochSpec):
        return arg.c, arg.m
    c, m = arg
    return LaurentPoly.coerce(c), int(m)


def q_hypergeometric(numerators: Sequence, denominators: Sequence, base_step: int,
                     t_spec: Tuple[object, int], order: int) -> QSeries:
    """Truncated basic hypergeometric sum in base ``q^base_step``.

    Each numerator/denominator argument is a pair ``(coefficient, q_exponent)``
    (or a :class:`PochSpec`); the sum is::

        sum_k prod (num; q^s)_k / prod (den; q^s)_k * t^k / (q^s; q^s)_k

    The series must either terminate (a numerator ``q^(-n s)``) or have
    ``t`` of positive q-valuation.
    """
    s = base_step
    nums = [PochSpec(*_as_monomial_arg(x), s) for x in numerators]
    dens = [PochSpec(*_as_monomial_arg(x), s) for x in denominators]
    t_coeff, t_exp = LaurentPoly.coerce(t_spec[0]), int(t_spec[1])
    base = PochSpec(ONE, s, s)

    stops = [p.terminates_at() for p in nums if p.terminates_at() is not None]
    stop = min(stops) + 1 if stops else None
    if stop is None and t_exp <= 0:
        raise DivergentSeries("t has non-positive q-valuation and no numerator terminates the sum")
    for p in dens:
        if p.m < 0 or (p.m == 0 and (not p.c.is_constant() or p.c == ONE)):
            raise NotInvertible(f"denominator ({p.c} q^{p.m}; q^{s}) has a non-unit factor")

    if stop is None:
        # negative factor exponents occur only in the first few factors, so
        # their total is a fixed floor and the bound grows linearly in k
        floor = sum(p.negative_mass(max(0, -p.m // s + 1)) for p in nums)

        def min_degree(k: int) -> int:
            return k * t_exp + floor
    else:
        exact = [k * t_exp + sum(p.negative_mass(k) for p in nums) for k in range(stop)]
        suffix_min = [min(exact[k:]) for k in range(stop)]

        def min_degree(k: int) -> int:
            return suffix_min[k] if k < stop else exact[-1]

    def term(k: int, order: int) -> QSeries:
        return pochhammer_ratio(t_coeff ** k, k * t_exp,
                                [(p, k) for p in nums],
                                [(p, k) for p in dens] + [(base, k)], order)

    return qs_sum(term, min_degree, order, stop=stop)
