"""Catalog of series-product identities and the verifiers that check them.

Every catalog entry pairs a *sum side*, built term by term through
:func:`qs_sum`, with a *product side* described declaratively as a linear
combination of Pochhammer products. Keeping product sides declarative is
what lets the mutation tests drop or perturb a single factor.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import QIdentityError, UnknownIdentity
from .partitions import D, D3, D24, GG1, GG2, O4, weighted_sum
from .polyring import ONE, LaurentPoly, a, b, t, z
from .qseries import (
    PochSpec,
    QSeries,
    divide_pochhammer_infinite,
    pochhammer_ratio,
    q_hypergeometric,
    qs_sum,
)
from .report import Mismatch, Timer, VerificationReport, combine, compare

DEFAULT_ORDER = 60
ab = a * b


# -- declarative product sides ---------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """``(c q^m; q^s)_n`` raised to ``power`` (+1 or -1); ``n=None`` is the infinite product."""

    c: object
    m: int
    s: int = 1
    n: Optional[int] = None
    power: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", LaurentPoly.coerce(self.c))
        if self.power not in (1, -1):
            raise ValueError("power must be +1 or -1")

    @property
    def spec(self) -> PochSpec:
        return PochSpec(self.c, self.m, self.s)


@dataclass(frozen=True)
class ProductTerm:
    """``coeff * q^shift * prod(factors)``."""

    factors: Tuple[Factor, ...]
    coeff: object = 1
    shift: int = 0


def _num(*args, **kw) -> Factor:
    return Factor(*args, **kw)


def _den(*args, **kw) -> Factor:
    return Factor(*args, power=-1, **kw)


def evaluate_term(term: ProductTerm, order: int) -> QSeries:
    finite_neg = sum(f.spec.negative_mass(f.n) for f in term.factors
                     if f.power == 1 and f.n is not None)
    work = order - term.shift - finite_neg
    if work <= 0:
        return QSeries.zero(order)
    x = QSeries.one(work)
    for f in term.factors:
        if f.power != 1:
            continue
        if f.n is not None:
            for e in f.spec.exponents(f.n):
                x = x.mul_binomial(f.c, e)
        else:
            if f.m < 0:
                raise ValueError("infinite product needs a non-negative start exponent")
            e = f.m
            while e < x.order:
                x = x.mul_binomial(f.c, e)
                e += f.s
    for f in term.factors:
        if f.power != -1:
            continue
        if f.n is not None:
            for e in f.spec.exponents(f.n):
                if e == 0 and not (ONE - f.c).is_constant():
                    x = x.exact_div_poly(ONE - f.c)
                else:
                    x = x.div_binomial(f.c, e)
        else:
            x = divide_pochhammer_infinite(x, f.spec)
    coeff = LaurentPoly.coerce(term.coeff)
    if coeff != ONE:
        x = x.scale(coeff)
    return x.shift(term.shift).truncate(order)


def evaluate_product(terms: Sequence[ProductTerm], order: int) -> QSeries:
    total = QSeries.zero(order)
    for term in terms:
        total = total + evaluate_term(term, order)
    return total


def product(*factors: Factor, coeff=1, shift: int = 0) -> Tuple[ProductTerm, ...]:
    return (ProductTerm(tuple(factors), coeff, shift),)


# -- catalog entries ---------------------------------------------------------------


@dataclass(frozen=True)
class IdentitySpec:
    """One identity: a summation side and a declarative product side.

    ``variants`` lists the instantiations checked (signs of delta, or the
    index k for the per-coefficient entries); all must pass.
    """

    name: str
    sum_side: Callable[[int, object], QSeries]
    product_side: Callable[[object], Tuple[ProductTerm, ...]]
    notes: str = ""
    product_is_lhs: bool = False
    variants: Tuple = (None,)
    variant_name: Optional[str] = None
    cutoff: Optional[Callable[[int], int]] = None
    mutation_index: int = 0

    def build(self, side: str, order: int, variant=None) -> QSeries:
        if variant is None:
            variant = self.variants[0]
        elif variant not in self.variants:
            raise ValueError(f"{self.name} has no variant {variant!r}; choose from {self.variants}")
        want_product = (side == "lhs") == self.product_is_lhs
        if side not in ("lhs", "rhs"):
            raise ValueError("side must be 'lhs' or 'rhs'")
        if want_product:
            x = evaluate_product(self.product_side(variant), order)
        else:
            x = self.sum_side(order, variant)
        x = x.strip()
        if x.lower < 0:
            raise AssertionError(f"{self.name} {side} has a nonzero term at q^{x.lower}")
        return x

    def lhs(self, order: int, variant=None) -> QSeries:
        return self.build("lhs", order, variant)

    def rhs(self, order: int, variant=None) -> QSeries:
        return self.build("rhs", order, variant)


def _P(c, m: int, s: int = 1) -> PochSpec:
    return PochSpec(c, m, s)


def _ratio(coeff, exponent: int, nums, dens, order: int) -> QSeries:
    """Monomial times a ratio of finite Pochhammers; entries are ``(c, m, s, n)``."""
    return pochhammer_ratio(coeff, exponent,
                            [(_P(c, m, s), n) for c, m, s, n in nums],
                            [(_P(c, m, s), n) for c, m, s, n in dens], order)


# odd-part gap-4 sums ------------------------------------------------------------------


def eq1_5_summand(k: int, order: int) -> QSeries:
    """``z^k q^(2k^2+k) (z^2 q^2; q^2)_k (1 + z q^(2k+1)) / (q^2; q^2)_k``."""
    return _ratio(z ** k, 2 * k * k + k, [(z * z, 2, 2, k), (-z, 2 * k + 1, 1, 1)],
                  [(1, 2, 2, k)], order)


def eq4_6_summand(k: int, order: int) -> QSeries:
    if k == 0:
        return QSeries.one(order)
    return _ratio(z ** k, 2 * k * k - k, [(z * z, 2, 2, k - 1), (z * z, 4 * k, 1, 1)],
                  [(1, 2, 2, k)], order)


def g3k_series(k: int, order: int) -> QSeries:
    """Weighted generating function of O4 partitions with k parts and least part not 1."""
    return _ratio(z ** k, 2 * k * k + k, [(z * z, 2, 2, k)], [(1, 2, 2, k)], order)


def g1k_star_series(k: int, order: int) -> QSeries:
    """Weighted generating function of O4 partitions with k >= 1 parts and least part 1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return _ratio(z ** k, 2 * k * k - k, [(z * z, 2, 2, k - 1)], [(1, 2, 2, k - 1)], order)


def _eq1_5_lhs(order: int, _v=None) -> QSeries:
    return qs_sum(eq1_5_summand, lambda k: 2 * k * k + k, order)


def _eq4_6_lhs(order: int, _v=None) -> QSeries:
    return qs_sum(eq4_6_summand, lambda k: 2 * k * k - k, order)


def _odd_gap4_product(_v=None):
    return product(_num(-z, 1, 2), _num(z * z, 4, 4))


# two-parameter double sums and their Jacobi reductions ---------------------------------


def _double_exponent(mod: int, i: int, j: int) -> int:
    return (mod * i * i - (mod - 2) * i) // 2 + mod * i * j + (mod * j * j + (mod - 2) * j) // 2


def _double_bound(mod: int, k: int) -> int:
    return (mod * k * k - (mod - 2) * k) // 2


def double_sum_summand(mod: int, i: int, j: int, order: int) -> QSeries:
    """One (i, j) summand of the two-parameter double sum, after exact division by 1 - ab."""
    k = i + j
    x = _ratio(a ** i * b ** j, _double_exponent(mod, i, j),
               [(ab, 0, mod, i), (ab, 0, mod, j), (ab, mod * k, 1, 1)],
               [(1, mod, mod, i), (1, mod, mod, j)], order)
    return x.exact_div_poly(ONE - ab)


def _double_sum(mod: int):
    def build(order: int, _v=None) -> QSeries:
        def term(k: int, order: int) -> QSeries:
            total = QSeries.zero(order)
            for i in range(k + 1):
                total = total + double_sum_summand(mod, i, k - i, order)
            return total
        return qs_sum(term, lambda k: _double_bound(mod, k), order)
    return build


def _double_product(mod: int):
    def build(_v=None):
        return product(_num(-a, 1, mod), _num(-b, mod - 1, mod), _num(ab, mod, mod))
    return build


def bilateral_bound(exponent: Callable[[int], int], order: int) -> int:
    """Smallest M with both ``exponent(M+1)`` and ``exponent(-(M+1))`` at least ``order``."""
    M = 0
    while min(exponent(M + 1), exponent(-(M + 1))) < order:
        M += 1
    return M


def _jacobi_sum(mod: int):
    def exponent(i: int) -> int:
        return (mod * i * i - (mod - 2) * i) // 2

    def build(order: int, _v=None) -> QSeries:
        M = bilateral_bound(exponent, order)
        terms: Dict[int, LaurentPoly] = {}
        for i in range(-M, M + 1):
            e = exponent(i)
            if e < order:
                terms[e] = terms.get(e, LaurentPoly()) + a ** i
        return QSeries.from_dict(terms, order, 0)
    return build


def _jacobi_product(mod: int):
    def build(_v=None):
        return product(_num(-a, 1, mod), _num(-(a ** -1), mod - 1, mod), _num(1, mod, mod))
    return build


# Cauchy-type entries ----------------------------------------------------------------


def _cauchy_sum(order: int, _v=None) -> QSeries:
    # t -> t q keeps every coefficient a polynomial in a and t
    return q_hypergeometric([(a, 0)], [], 1, (t, 1), order)


def _cauchy_product(_v=None):
    return product(_num(a * t, 1, 1), _den(t, 1, 1))


def _eq4_5_sum(order: int, k: int) -> QSeries:
    def term(j: int, order: int) -> QSeries:
        i = k - j
        return _ratio(1, j, [(a, 0, 2, i), (a, 0, 2, j)], [(1, 2, 2, i), (1, 2, 2, j)], order)
    return qs_sum(term, lambda j: j, order, indices=range(k + 1), guard=0)


def _eq4_5_product(k: int):
    return product(_num(a, 0, 1, n=k), _den(1, 1, 1, n=k))


# Gollnitz-Gordon family ---------------------------------------------------------------


def gg_series(alpha, delta: int, order: int, shifted: bool = False) -> QSeries:
    """``sum_k delta^k q^(k^2 [+2k]) (-alpha q; q^2)_k / (q^2; q^2)_k``.

    ``alpha=1`` gives G and H, ``alpha=-1`` the twisted pair, and a general
    parameter the refined functions.
    """
    alpha = LaurentPoly.coerce(alpha)
    extra = 2 if shifted else 0

    def term(k: int, order: int) -> QSeries:
        return _ratio(LaurentPoly.const(delta ** k), k * k + extra * k,
                      [(-alpha, 1, 2, k)], [(1, 2, 2, k)], order)
    return qs_sum(term, lambda k: k * k + extra * k, order)


def _modular_sum(alpha, delta: int, sign: int, prefactor):
    """``G(sign q^2) + prefactor * q * H(sign q^2)`` for the given alpha, delta."""
    def build(order: int, _v=None) -> QSeries:
        d = delta if _v is None else _v
        al = alpha(d) if callable(alpha) else alpha
        half = -(-order // 2)
        g = gg_series(al, d, half).substitute_q(sign, 2, order)
        h = gg_series(al, d, half, shifted=True).substitute_q(sign, 2, order)
        return g + h.shift(1).truncate(order).scale(prefactor)
    return build


def _dilated(alpha, shifted: bool):
    def build(order: int, _v=None) -> QSeries:
        return gg_series(alpha, 1, -(-order // 2), shifted).substitute_q(1, 2, order)
    return build


_RHS_5_6 = (_num(-1, 1, 4), _num(-1, 2, 4), _num(1, 3, 4))
_RHS_5_6_NEG_Q = (_num(1, 1, 4), _num(-1, 2, 4), _num(-1, 3, 4))
# subtracted product with the sign of the q^3 factor flipped relative to P(-q)
_RHS_5_8_PRINTED = (_num(1, 1, 4), _num(-1, 2, 4), _num(1, 3, 4))


def _mean_g_product(_v=None):
    half = Fraction(1, 2)
    return (ProductTerm(_RHS_5_6, half), ProductTerm(_RHS_5_6_NEG_Q, half))


def _mean_h_product(_v=None, subtracted=_RHS_5_6_NEG_Q):
    half = Fraction(1, 2)
    return (ProductTerm(_RHS_5_6, half, -1), ProductTerm(subtracted, -half, -1))


def mean_h_sign_flipped_product(_v=None):
    """The H_t mean with (q^3;q^4) in place of (-q^3;q^4) in P(-q); fails verification."""
    return _mean_h_product(_v, _RHS_5_8_PRINTED)


def _limit_5_11_sum(order: int, delta: int) -> QSeries:
    def term(k: int, order: int) -> QSeries:
        return _ratio(LaurentPoly.const((-delta) ** k), k * k,
                      [(a * a, 0, 2, k), (-a, 2 * k, 1, 1)], [(1, 2, 2, k)], order)
    return qs_sum(term, lambda k: k * k, order)


def _limit_5_11_product(delta: int):
    return product(_num(a * a, 0, 2), _num(delta, 1, 2), _den(a, 0, 2), _den(delta * a, 1, 2))


def _dixon_5_9_sum(order: int, delta: int) -> QSeries:
    half = Fraction(1, 2)

    def term(k: int, order: int) -> QSeries:
        return _ratio(LaurentPoly.const((delta * half) ** k), k,
                      [(1, 4, 2, k), (2, 0, 2, k), (-1, 2 * k + 2, 1, 1)],
                      [(1, 2, 2, k), (half, 6, 2, k)], order)
    return qs_sum(term, lambda k: k, order)


def _dixon_5_9_product(delta: int):
    half = Fraction(1, 2)
    return product(_num(1, 4, 2), _num(half, 4, 2), _num(delta, 1, 2), _num(delta * half, 3, 2),
                   _den(half, 6, 2), _den(delta, 3, 2), _den(1, 2, 2), _den(delta * half, 1, 2))


def _eq5_12_sum(order: int, delta: int) -> QSeries:
    def term(k: int, order: int) -> QSeries:
        return _ratio(LaurentPoly.const((-delta) ** k), 2 * k * k,
                      [(a * a, 2, 4, k), (-a, 4 * k + 1, 1, 1)], [(1, 4, 4, k)], order)
    return qs_sum(term, lambda k: 2 * k * k, order)


def _eq5_12_product(delta: int):
    return product(_num(-a, 1, 4), _num(delta, 2, 4), _num(-delta * a, 3, 4))


# q-Dixon specializations ---------------------------------------------------------------

Mono = Tuple[Fraction, int]  # rational coefficient times a power of q


def _mmul(x: Mono, y: Mono) -> Mono:
    return (Fraction(x[0]) * y[0], x[1] + y[1])


def _mdiv(x: Mono, y: Mono) -> Mono:
    return (Fraction(x[0]) / y[0], x[1] - y[1])


@dataclass(frozen=True)
class DixonPoint:
    a: Mono
    sqrt_a: Mono
    b: Mono
    c: Mono

    def __post_init__(self):
        sq = _mmul(self.sqrt_a, self.sqrt_a)
        if sq != (Fraction(self.a[0]), self.a[1]):
            raise ValueError("sqrt_a does not square to a")

    def hypergeometric_args(self):
        q = (Fraction(1), 1)
        a_, ra, b_, c_ = self.a, self.sqrt_a, self.b, self.c
        nums = [a_, (-_mmul(q, ra)[0], _mmul(q, ra)[1]), b_, c_]
        dens = [(-ra[0], ra[1]), _mdiv(_mmul(a_, q), b_), _mdiv(_mmul(a_, q), c_)]
        tt = _mdiv(_mmul(q, ra), _mmul(b_, c_))
        return nums, dens, tt

    def product_factors(self):
        q = (Fraction(1), 1)
        a_, ra, b_, c_ = self.a, self.sqrt_a, self.b, self.c
        aq, qra, bc = _mmul(a_, q), _mmul(q, ra), _mmul(b_, c_)
        nums = [aq, _mdiv(qra, b_), _mdiv(qra, c_), _mdiv(aq, bc)]
        dens = [_mdiv(aq, b_), _mdiv(aq, c_), qra, _mdiv(qra, bc)]
        return tuple([_num(c, m) for c, m in nums] + [_den(c, m) for c, m in dens])


def _one(e: int) -> Mono:
    return (Fraction(1), e)


DIXON_POINTS = {
    1: DixonPoint(_one(2), _one(1), (Fraction(2), 0), _one(1)),
    2: DixonPoint(_one(2), _one(1), _one(-1), _one(1)),
    3: DixonPoint(_one(2), _one(1), _one(-2), _one(1)),
    4: DixonPoint(_one(2), _one(1), _one(-3), _one(1)),
    5: DixonPoint(_one(4), _one(2), (Fraction(2), 0), _one(2)),
}


def _dixon_sum(point: DixonPoint):
    def build(order: int, _v=None) -> QSeries:
        nums, dens, tt = point.hypergeometric_args()
        return q_hypergeometric(nums, dens, 1, tt, order)
    return build


def _dixon_product(point: DixonPoint):
    def build(_v=None):
        return product(*point.product_factors())
    return build


# -- the catalog ---------------------------------------------------------------------


def _build_catalog() -> List[IdentitySpec]:
    deltas = (1, -1)
    entries = [
        IdentitySpec("eq1.5", _eq1_5_lhs, _odd_gap4_product,
                     "odd parts with gaps >= 4, weight z per part: sum over k of G_{3,k} + G*_{1,k+1}",
                     cutoff=lambda k: 2 * k * k + k),
        IdentitySpec("eq4.6", _eq4_6_lhs, _odd_gap4_product,
                     "single-sum form of the odd-part gap-4 generating function",
                     cutoff=lambda k: 2 * k * k - k),
        IdentitySpec("eq3.1", _double_sum(3), _double_product(3),
                     "base-3 two-parameter double sum (gap-3 partitions); per-summand exact division by 1-ab",
                     cutoff=lambda k: _double_bound(3, k)),
        IdentitySpec("eq3.3", _double_sum(4), _double_product(4),
                     "base-4 two-parameter double sum (odd gap-4 partitions, a and b weights); product factor "
                     "(ab q^4; q^4)_inf, the (ab; q^4)_inf reading fails at q^0",
                     cutoff=lambda k: _double_bound(4, k)),
        IdentitySpec("jacobi3.4", _jacobi_sum(3), _jacobi_product(3),
                     "ab=1 reduction of eq3.1: bilateral sum of a^i q^((3i^2-i)/2)"),
        IdentitySpec("jacobi3.5", _jacobi_sum(4), _jacobi_product(4),
                     "ab=1 reduction of eq3.3: bilateral sum of a^i q^(2i^2-i)"),
        IdentitySpec("cauchy2.5", _cauchy_sum, _cauchy_product,
                     "(at)_inf/(t)_inf = sum (a)_k t^k/(q)_k, checked at t -> t q",
                     product_is_lhs=True, cutoff=lambda k: k),
        IdentitySpec("eq4.5", lambda order, k: _eq4_5_sum(order, k), _eq4_5_product,
                     "(a)_k/(q)_k as a convolution of two base-q^2 sums, k = 0..8",
                     product_is_lhs=True, variants=tuple(range(9)), variant_name="k"),
        IdentitySpec("gg5.1", lambda order, _v=None: gg_series(1, 1, order),
                     lambda _v=None: product(_den(1, 1, 8), _den(1, 4, 8), _den(1, 7, 8)),
                     "Gollnitz-Gordon G(q)", cutoff=lambda k: k * k),
        IdentitySpec("gg5.2", lambda order, _v=None: gg_series(1, 1, order, shifted=True),
                     lambda _v=None: product(_den(1, 3, 8), _den(1, 4, 8), _den(1, 5, 8)),
                     "Gollnitz-Gordon H(q)", cutoff=lambda k: k * k + 2 * k),
        IdentitySpec("mod5.3", _modular_sum(1, 1, -1, 1),
                     lambda _v=None: product(_num(-1, 1, 4), _num(1, 2, 4), _num(-1, 3, 4)),
                     "G(-q^2) + q H(-q^2)"),
        IdentitySpec("mod5.6", _modular_sum(-1, 1, 1, 1), lambda _v=None: (ProductTerm(_RHS_5_6),),
                     "twisted G_t(q^2) + q H_t(q^2)"),
        IdentitySpec("mean5.7", _dilated(-1, False), _mean_g_product,
                     "G_t(q^2) as the mean of the mod5.6 product at q and -q"),
        IdentitySpec("mean5.8", _dilated(-1, True), _mean_h_product,
                     "H_t(q^2) as (P(q) - P(-q))/(2q) with P the mod5.6 product"),
        IdentitySpec("dixon5.9.doubled", _dixon_5_9_sum, _dixon_5_9_product,
                     "c = delta sqrt(aq) case of q-Dixon at q -> q^2, a = q^4, b = 2",
                     variants=deltas, variant_name="delta", cutoff=lambda k: k),
        IdentitySpec("limit5.11.doubled", _limit_5_11_sum, _limit_5_11_product,
                     "b -> infinity limit at q -> q^2, a -> a^2; the q^0 factor (1-a) is "
                     "divided out exactly",
                     variants=deltas, variant_name="delta", cutoff=lambda k: k * k,
                     mutation_index=1),
        IdentitySpec("eq5.12", _eq5_12_sum, _eq5_12_product,
                     "limit form at q -> q^4, a -> a^2 q^2",
                     variants=deltas, variant_name="delta", cutoff=lambda k: 2 * k * k),
        IdentitySpec("mod5.13", _modular_sum(lambda d: a * a, None, -1, a), _eq5_12_product,
                     "refined G_{a^2,delta}(-q^2) + a q H_{a^2,delta}(-q^2)",
                     variants=deltas, variant_name="delta"),
    ]
    for i, point in DIXON_POINTS.items():
        entries.append(IdentitySpec(
            f"qdixon1.2.spec{i}", _dixon_sum(point), _dixon_product(point),
            f"4phi3 q-Dixon sum at a={point.a}, b={point.b}, c={point.c} (coefficient, q-power)"))
    return entries


_CATALOG: Optional[List[IdentitySpec]] = None


def catalog() -> List[IdentitySpec]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return list(_CATALOG)


def get(name: str) -> IdentitySpec:
    for spec in catalog():
        if spec.name == name:
            return spec
    raise UnknownIdentity(name)


def names() -> List[str]:
    return [spec.name for spec in catalog()]


def build_side(name: str, side: str, order: int, variant=None) -> QSeries:
    return get(name).build(side, order, variant)


def verify_spec(spec: IdentitySpec, order: int = DEFAULT_ORDER) -> VerificationReport:
    timer = Timer()
    reports = []
    for v in spec.variants:
        delta = v if spec.variant_name == "delta" else None
        try:
            lhs, rhs = spec.lhs(order, v), spec.rhs(order, v)
        except QIdentityError:
            # a side that cannot even be built (e.g. a lost exact divisor) is a failure
            return VerificationReport(spec.name, order, "fail", None, timer.ms, delta)
        reports.append(compare(spec.name, lhs, rhs, order, delta=delta))
        if not reports[-1].passed:
            break
    return combine(spec.name, order, reports, timer)


def verify(name: str, order: int = DEFAULT_ORDER) -> VerificationReport:
    return verify_spec(get(name), order)


# -- mutation controls --------------------------------------------------------------


def mutated(spec: IdentitySpec, kind: str, index: Optional[int] = None) -> IdentitySpec:
    """Copy of ``spec`` with one product factor dropped or its exponent bumped by one.

    ``index`` selects the factor of the first product term and defaults to the
    entry's ``mutation_index``.
    """
    if index is None:
        index = spec.mutation_index
    if kind not in ("drop", "perturb"):
        raise ValueError("kind must be 'drop' or 'perturb'")
    original = spec.product_side

    def side(v):
        terms = list(original(v))
        head = terms[0]
        factors = list(head.factors)
        if kind == "drop":
            del factors[index]
        else:
            f = factors[index]
            factors[index] = replace(f, m=f.m + 1)
        terms[0] = replace(head, factors=tuple(factors))
        return tuple(terms)
    return replace(spec, name=f"{spec.name}~{kind}{index}", product_side=side)


# -- enumeration and structural verifiers ---------------------------------------------

THEOREMS = {
    # theorem: (catalog entry, (lhs family, lhs weight), (rhs family, rhs weight))
    "T1": ("eq1.5", (O4, "THM1_LHS"), (D24, "THM1_RHS")),
    "T2": ("eq3.3", (O4, "THM2_LHS"), (D24, "THM2_RHS")),
    "T3": ("eq3.1", (D3, "THM3_LHS"), (D, "THM3_RHS")),
}


def verify_theorem_vs_series(theorem: str, n_max: int) -> VerificationReport:
    """Weighted enumeration on both families against both series sides, n <= n_max."""
    timer = Timer()
    entry, (fam_l, w_l), (fam_r, w_r) = THEOREMS[theorem]
    order = n_max + 1
    spec = get(entry)
    lhs, rhs = spec.lhs(order), spec.rhs(order)
    name = f"theorem{theorem[1]}~{entry}"
    for n in range(order):
        enum_l = weighted_sum(n, fam_l, w_l)
        enum_r = weighted_sum(n, fam_r, w_r)
        for enum, series in ((enum_l, lhs), (enum_r, rhs), (enum_l, enum_r)):
            other = series.coeff(n) if isinstance(series, QSeries) else series
            if enum != other:
                return VerificationReport(name, order, "fail", Mismatch(n, enum, other), timer.ms)
    return VerificationReport(name, order, "pass", None, timer.ms)


def verify_gg_combinatorial(n_max: int) -> VerificationReport:
    """Refined G/H coefficients against weighted GG1/GG2 enumeration, both signs of delta."""
    timer = Timer()
    order = n_max + 1
    for delta in (1, -1):
        for shifted, family, w in ((False, GG1, "GG_REFINED_G"), (True, GG2, "GG_REFINED_H")):
            series = gg_series(a, delta, order, shifted)
            for n in range(order):
                enum = weighted_sum(n, family, w, delta)
                if series.coeff(n) != enum:
                    return VerificationReport("gg-combinatorial", order, "fail",
                                              Mismatch(n, enum, series.coeff(n)), timer.ms, delta)
    return VerificationReport("gg-combinatorial", order, "pass", None, timer.ms)


def verify_jacobi_reduction(order: int = DEFAULT_ORDER) -> VerificationReport:
    """ab = 1 (b -> 1/a) turns the double sums into the Jacobi bilateral sums."""
    timer = Timer()
    inv = {"b": a ** -1}
    reports = []
    for big, small in (("eq3.1", "jacobi3.4"), ("eq3.3", "jacobi3.5")):
        S, J = get(big), get(small)
        reports.append(compare(f"{big}->{small} lhs", S.lhs(order).substitute(inv), J.lhs(order), order))
        reports.append(compare(f"{big}->{small} rhs", S.rhs(order).substitute(inv), J.rhs(order), order))
    return combine("jacobi-reduction", order, reports, timer)


def verify_reduction_4_6(order: int = DEFAULT_ORDER, k_max: int = 8) -> VerificationReport:
    """Summand-level regroupings linking the eq1.5 and eq4.6 series."""
    timer = Timer()
    reports = [compare("G3,0 = 1", g3k_series(0, order), QSeries.one(order), order)]
    for k in range(1, k_max + 1):
        reports.append(compare(f"G3,{k}+G*1,{k}", g3k_series(k, order) + g1k_star_series(k, order),
                               eq4_6_summand(k, order), order))
    for k in range(k_max + 1):
        reports.append(compare(f"G3,{k}+G*1,{k + 1}",
                               g3k_series(k, order) + g1k_star_series(k + 1, order),
                               eq1_5_summand(k, order), order))
    reports.append(compare("eq1.5 lhs = eq4.6 lhs", get("eq1.5").lhs(order), get("eq4.6").lhs(order), order))
    return combine("reduction4.6", order, reports, timer)


def verify_cauchy_split(order: int = DEFAULT_ORDER, k_max: int = 8) -> VerificationReport:
    """Even/odd splitting of (at)_inf/(t)_inf, cleared of denominators, then per-k coefficients."""
    timer = Timer()
    left = evaluate_product(product(_num(a * t, 0, 1), _num(t, 0, 2), _num(t, 1, 2)), order)
    right = evaluate_product(product(_num(t, 0, 1), _num(a * t, 0, 2), _num(a * t, 1, 2)), order)
    reports = [compare("cauchy split (cleared)", left, right, order)]
    spec = get("eq4.5")
    for k in range(k_max + 1):
        reports.append(compare(f"eq4.5 k={k}", spec.lhs(order, k), spec.rhs(order, k), order))
    return combine("cauchy-split", order, reports, timer)


def verify_specialization_3_3(order: int = DEFAULT_ORDER) -> VerificationReport:
    """a = b = z in eq3.3 against both sides of eq4.6."""
    timer = Timer()
    sub = {"a": z, "b": z}
    S, T = get("eq3.3"), get("eq4.6")
    reports = [
        compare("eq3.3|a=b=z lhs", S.lhs(order).substitute(sub), T.lhs(order), order),
        compare("eq3.3|a=b=z rhs", S.rhs(order).substitute(sub), T.rhs(order), order),
    ]
    return combine("specialization3.3", order, reports, timer)


def factorization_chain(order: int = DEFAULT_ORDER) -> List[QSeries]:
    """The successive product forms of the odd-part gap-4 product side."""
    forms = [
        product(_num(-z, 1, 1, n=1), _num(z * z, 4, 2), _den(z, 3, 2)),
        product(_num(z * z, 2, 2), _den(z, 1, 2)),
        product(_num(z * z, 2, 4), _num(z * z, 4, 4), _den(z, 1, 2)),
        product(_num(-z, 1, 2), _num(z * z, 4, 4)),
    ]
    return [evaluate_product(f, order) for f in forms]


def verify_factorization_chain(order: int = DEFAULT_ORDER) -> VerificationReport:
    timer = Timer()
    forms = factorization_chain(order)
    reports = [compare(f"form{i} = form{i + 1}", forms[i], forms[i + 1], order)
               for i in range(len(forms) - 1)]
    return combine("factorization-chain", order, reports, timer)


def verify_mod5_13_specializations(order: int = DEFAULT_ORDER) -> VerificationReport:
    """mod5.13 at a = 1 gives mod5.3 (delta = 1) and mod5.6 (delta = -1)."""
    timer = Timer()
    spec = get("mod5.13")
    one = {"a": 1}
    reports = []
    for delta, target in ((1, "mod5.3"), (-1, "mod5.6")):
        T = get(target)
        reports.append(compare(f"mod5.13|a=1 -> {target} lhs",
                               spec.lhs(order, delta).substitute(one), T.lhs(order), order, delta=delta))
        reports.append(compare(f"mod5.13|a=1 -> {target} rhs",
                               spec.rhs(order, delta).substitute(one), T.rhs(order), order, delta=delta))
    return combine("mod5.13-specializations", order, reports, timer)


def verify_means_consistency(order: int = DEFAULT_ORDER) -> VerificationReport:
    """2 G_t(q^2) = P(q) + P(-q) and 2 q H_t(q^2) = P(q) - P(-q), P the mod5.6 product."""
    timer = Timer()
    P = evaluate_product((ProductTerm(_RHS_5_6),), order)
    Pneg = P.substitute_q(-1, 1)
    gt = _dilated(-1, False)(order)
    ht = _dilated(-1, True)(order)
    reports = [
        compare("2 G_t(q^2)", gt.scale(2), P + Pneg, order),
        compare("2 q H_t(q^2)", ht.shift(1).truncate(order).scale(2), P - Pneg, order),
        compare("P(-q) factor list", Pneg, evaluate_product((ProductTerm(_RHS_5_6_NEG_Q),), order), order),
    ]
    return combine("means-consistency", order, reports, timer)


STRUCTURAL_CHECKS = {
    "reduction4.6": verify_reduction_4_6,
    "specialization3.3": verify_specialization_3_3,
    "jacobi-reduction": verify_jacobi_reduction,
    "factorization-chain": verify_factorization_chain,
    "mod5.13-specializations": verify_mod5_13_specializations,
    "means-consistency": verify_means_consistency,
    "cauchy-split": verify_cauchy_split,
}
