from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qidentities.errors import (
    DivergentSeries, EmptyWindow, InsufficientOrder, NonmonotoneCutoff, NotInvertible, TruncationError,
)
from qidentities.identities import gg_series
from qidentities.partitions import UNRESTRICTED, count
from qidentities.polyring import ONE, ZERO, LaurentPoly, a, z
from qidentities.qseries import (
    PochSpec, QSeries, first_mismatch, pochhammer_finite, pochhammer_infinite, pochhammer_ratio,
    q_hypergeometric, qs_add, qs_invert, qs_mul, qs_substitute_q, qs_sum,
)

Q = sympy.Symbol("q")
Z = sympy.Symbol("z")


def S(terms, order, lower=None):
    return QSeries.from_dict(terms, order, lower)


def sympy_coeffs(expr, order):
    """Coefficients of a sympy polynomial in q below ``order``, as z-polynomials."""
    poly = sympy.Poly(sympy.expand(expr), Q)
    return {e: sympy.expand(c) for (e,), c in poly.terms() if e < order}


def z_poly(expr) -> LaurentPoly:
    total = ZERO
    for (e,), c in sympy.Poly(expr, Z).terms():
        total = total + z ** e * Fraction(int(c.p), int(c.q))
    return total


# -- examples -----------------------------------------------------------------


def test_add_examples():
    assert qs_add(S({0: 1, 1: z}, 5), QSeries.zero(5)) == S({0: 1, 1: z}, 5)
    assert qs_add(S({0: 1, 1: 1}, 3), S({0: 1, 1: -1}, 3)) == S({0: 2}, 3)


def test_add_window():
    x = S({0: 1}, 5)
    y = S({2: 1}, 3, lower=2)
    s = qs_add(x, y)
    assert (s.lower, s.order) == (0, 3)
    assert s.coeff(2) == ONE
    with pytest.raises(EmptyWindow):
        QSeries([], 2, 2)


def test_mul_examples():
    x = S({0: 1, 1: z}, 5)
    y = S({0: 1, 3: z}, 5)
    assert qs_mul(x, y) == S({0: 1, 1: z, 3: z, 4: z * z}, 5)
    assert qs_mul(x, QSeries.one(5)) == x
    geometric = S({n: 1 for n in range(10)}, 10)
    assert qs_mul(S({0: 1, 1: -1}, 10), geometric) == QSeries.one(10)


def test_mul_window_rule():
    x = S({-1: 1}, 4, lower=-1)
    y = S({2: 1}, 6, lower=2)
    p = x * y
    assert (p.lower, p.order) == (1, 5)


def test_truncation_is_enforced():
    x = S({0: 1, 1: 1}, 3)
    assert x.coeff(2) == ZERO
    with pytest.raises(TruncationError):
        x.coeff(3)
    assert x.coeff(-4) == ZERO


def test_invert_examples():
    assert qs_invert(S({0: 1, 1: -1}, 4)) == S({0: 1, 1: 1, 2: 1, 3: 1}, 4)
    assert qs_invert(QSeries.one(7)) == QSeries.one(7)
    with pytest.raises(NotInvertible):
        qs_invert(S({0: 1 - z}, 4))
    with pytest.raises(NotInvertible):
        qs_invert(QSeries.zero(4))


def test_invert_gg_product():
    order = 40
    prod = QSeries.one(order)
    for m in (1, 4, 7):
        prod = prod * pochhammer_infinite(PochSpec(1, m, 8), order)
    assert first_mismatch(qs_invert(prod), gg_series(1, 1, order), order) is None


def test_invert_shifted_lead():
    x = S({2: 2, 3: 1}, 8, lower=2)
    y = x.invert()
    assert (y.lower, y.order) == (-2, 4)
    assert y.coeff(-2) == Fraction(1, 2)
    assert (x * y).with_lower(0) == QSeries.one(6)


def test_pochhammer_finite_examples():
    assert pochhammer_finite(PochSpec(z * z, 2, 2), 0, 10) == QSeries.one(10)
    assert pochhammer_finite(PochSpec(1, -1, 1), 2, 5).is_zero()
    assert pochhammer_finite(PochSpec(-1, 1, 2), 2, 10) == S({0: 1, 1: 1, 3: 1, 4: 1}, 10)


def test_pochhammer_finite_negative_window():
    x = pochhammer_finite(PochSpec(1, -2, 1), 2, 4)
    # (1 - q^-2)(1 - q^-1) = q^-3 - q^-2 - q^-1 + 1
    assert x.lower <= -3
    assert [x.coeff(e) for e in range(-3, 1)] == [ONE, -ONE, -ONE, ONE]


def test_pochhammer_infinite_examples():
    assert pochhammer_infinite(PochSpec(1, 3, 3), 4) == S({0: 1, 3: -1}, 4)
    assert pochhammer_infinite(PochSpec(z, 1, 2), 2) == S({0: 1, 1: -z}, 2)
    N = 40
    a2 = a * a
    split = pochhammer_infinite(PochSpec(a2, 2, 8), N) * pochhammer_infinite(PochSpec(a2, 6, 8), N)
    assert split == pochhammer_infinite(PochSpec(a2, 2, 4), N)


def test_substitute_q_examples():
    x = S({0: 1, 1: 1, 3: 1}, 4)
    # q -> -q^2 sends q to -q^2 and q^3 to -q^6
    assert qs_substitute_q(x, -1, 2) == S({0: 1, 2: -1, 6: -1}, 8)
    assert qs_substitute_q(x, 1, 1) == x
    with pytest.raises(InsufficientOrder):
        qs_substitute_q(x, 1, 2, order=9)
    g20 = gg_series(1, 1, 20)
    assert qs_substitute_q(g20, -1, 2) == gg_series(1, 1, 40).substitute_q(-1, 2, 40)


@pytest.mark.parametrize("order,used", [(10, [0, 1]), (11, [0, 1, 2])])
def test_qs_sum_cutoff(order, used):
    # leading exponent 4*T(k-1) + 3k: 0, 3, 10, 21, ...
    seen = []

    def term(k, order):
        seen.append(k)
        e = 2 * k * (k - 1) + 3 * k
        return QSeries.monomial(z ** k, e, order) if e < order else QSeries.zero(order)

    total = qs_sum(term, lambda k: 2 * k * (k - 1) + 3 * k, order, guard=0)
    assert seen == used
    assert total == S({2 * k * (k - 1) + 3 * k: z ** k for k in used}, order)


def test_qs_sum_empty():
    assert qs_sum(lambda k, o: QSeries.zero(o), lambda k: 0, 5, indices=[], guard=0) == QSeries.zero(5)


def test_qs_sum_bilateral_indices():
    used = []

    def term(i, order):
        used.append(i)
        return QSeries.monomial(1, 2 * i * i - i, order)

    idx = [0, 1, -1, 2, -2, 3, -3]
    qs_sum(term, lambda i: 2 * i * i - abs(i), 10, indices=idx, guard=0)
    assert sorted(used) == [-2, -1, 0, 1, 2]


def test_qs_sum_rejects_bad_cutoff():
    def term(k, order):
        return QSeries.monomial(1, k, order) if k < order else QSeries.zero(order)
    # declared bound too optimistic for term 1
    with pytest.raises(NonmonotoneCutoff):
        qs_sum(term, lambda k: 2 * k, 10)
    with pytest.raises(NonmonotoneCutoff):
        qs_sum(term, lambda k: [0, 5, 3, 9, 20][k], 10)
    # guard catches terms that contribute past the cutoff
    with pytest.raises(NonmonotoneCutoff):
        qs_sum(lambda k, o: QSeries.monomial(1, 1, o), lambda k: 0 if k == 0 else 50, 10)


def test_hypergeometric_euler_series():
    x = q_hypergeometric([], [], 1, (1, 1), 20)
    assert [x.coeff(n) for n in range(20)] == [LaurentPoly.const(count(n, UNRESTRICTED)) for n in range(20)]


def test_hypergeometric_terminating():
    # 1phi0 with numerator q^-1: sum_k (q^-1;q)_k t^k/(q;q)_k stops after k=1
    x = q_hypergeometric([(1, -1)], [], 1, (1, 2), 8)
    # k=0: 1; k=1: (1-q^-1) q^2/(1-q) = -q
    assert x == S({0: 1, 1: -1}, 8)


def test_hypergeometric_divergent():
    with pytest.raises(DivergentSeries):
        q_hypergeometric([(2, 1)], [], 1, (1, 0), 10)


def test_pochhammer_ratio_beyond_order():
    assert pochhammer_ratio(1, 30, [], [], 10).is_zero()


def test_json_round_trip():
    x = S({-1: a, 0: 1, 2: Fraction(1, 3) * z}, 4, lower=-1)
    data = x.to_json()
    assert data[0] == {"degree": -1, "poly": a.to_json()}
    assert QSeries.from_json(data) == x


# -- oracles and properties ---------------------------------------------------


@pytest.mark.parametrize("c,m,s,n", [(-1, 1, 2, 4), (1, 2, 3, 3), (2, 0, 1, 3), (-1, 3, 4, 5)])
def test_pochhammer_finite_matches_sympy(c, m, s, n):
    order = 25
    expr = sympy.prod([(1 - c * Z * Q ** (m + j * s)) for j in range(n)])
    got = pochhammer_finite(PochSpec(c * z, m, s), n, order)
    want = sympy_coeffs(expr, order)
    for e in range(order):
        assert got.coeff(e) == z_poly(want.get(e, 0)), e


def test_infinite_quotient_matches_sympy():
    order = 15
    # (zq;q^2)_inf / (q^2;q^2)_inf with each 1/(1-q^k) written as a truncated geometric sum
    expr = sympy.prod([(1 - Z * Q ** (1 + 2 * j)) for j in range(8)])
    for k in range(2, order, 2):
        expr = sympy.expand(expr * sum(Q ** (k * i) for i in range(order // k + 1)))
    want = sympy_coeffs(expr, order)
    got = pochhammer_infinite(PochSpec(z, 1, 2), order) * qs_invert(pochhammer_infinite(PochSpec(1, 2, 2), order))
    for e in range(order):
        assert got.coeff(e) == z_poly(want.get(e, 0)), e


def test_euler_benchmark():
    order = 41
    inv = qs_invert(pochhammer_infinite(PochSpec(1, 1, 1), order))
    for n in range(order):
        assert inv.coeff(n) == count(n, UNRESTRICTED)


small_coeff = st.one_of(st.integers(-3, 3), st.sampled_from([z, -z, a, 1 - z, Fraction(1, 2) * a]))
series = st.builds(
    lambda d, order: QSeries.from_dict(d, order, 0),
    st.dictionaries(st.integers(0, 7), small_coeff, max_size=5),
    st.integers(8, 10),
)
unit_series = st.builds(
    lambda d, lead, order: QSeries.from_dict({**d, 0: lead}, order, 0),
    st.dictionaries(st.integers(1, 7), small_coeff, max_size=4),
    st.sampled_from([1, -1, 2, Fraction(-1, 3)]),
    st.integers(8, 10),
)


@settings(max_examples=40)
@given(series, series, series)
def test_series_ring_laws(x, y, w):
    order = min(x.order, y.order, w.order)
    assert first_mismatch(x * y, y * x, order) is None
    assert first_mismatch((x * y) * w, x * (y * w), order) is None
    assert first_mismatch(x * (y + w), x * y + x * w, order) is None
    assert first_mismatch(x + y, y + x, order) is None


@settings(max_examples=40)
@given(unit_series)
def test_invert_is_inverse(x):
    assert first_mismatch(x * qs_invert(x), QSeries.one(x.order), x.order) is None


@pytest.mark.parametrize("spec", [PochSpec(z, 1, 2), PochSpec(-a, 2, 3), PochSpec(1, -2, 1), PochSpec(z * z, 0, 4)])
def test_pochhammer_finite_recursion(spec):
    order = 20
    for n in range(11):
        step = pochhammer_finite(spec, n, order).mul_binomial(spec.c, spec.m + n * spec.s)
        # a negative exponent shifts the window down, so compare on what both know
        assert first_mismatch(pochhammer_finite(spec, n + 1, order), step, min(order, step.order)) is None


@pytest.mark.parametrize("spec", [PochSpec(z, 1, 2), PochSpec(-a, 0, 3), PochSpec(1, 1, 1)])
def test_pochhammer_infinite_is_finite_product(spec):
    order = 30
    J = sum(1 for j in range(order) if spec.m + j * spec.s < order)
    assert pochhammer_infinite(spec, order) == pochhammer_finite(spec, J, order)


@settings(max_examples=30)
@given(series, st.sampled_from([1, -1]), st.integers(1, 3))
def test_substitute_q_is_ring_map(x, sign, power):
    y = QSeries.from_dict({0: 1, 1: z, 3: -1}, x.order)
    lhs = (x * y).substitute_q(sign, power)
    rhs = x.substitute_q(sign, power) * y.substitute_q(sign, power)
    assert first_mismatch(lhs, rhs, lhs.order) is None
