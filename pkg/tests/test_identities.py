from dataclasses import replace

import pytest

from qidentities import identities as ids
from qidentities.errors import UnknownIdentity
from qidentities.identities import (
    DIXON_POINTS, STRUCTURAL_CHECKS, Factor, build_side, catalog, evaluate_product, get, mutated,
    product, verify, verify_gg_combinatorial, verify_spec, verify_theorem_vs_series,
)
from qidentities.polyring import ONE, ZERO, a, b, z
from qidentities.qseries import PochSpec, QSeries, first_mismatch, pochhammer_infinite, q_hypergeometric

REQUIRED = [
    "eq1.5", "eq4.6", "eq3.1", "eq3.3", "jacobi3.4", "jacobi3.5", "cauchy2.5", "eq4.5",
    "gg5.1", "gg5.2", "mod5.3", "mod5.6", "mean5.7", "mean5.8", "limit5.11.doubled",
    "eq5.12", "mod5.13", *[f"qdixon1.2.spec{i}" for i in range(1, 6)],
]


def test_catalog_contents():
    names = [s.name for s in catalog()]
    assert len(names) == len(set(names))
    for name in REQUIRED:
        assert name in names
    assert get("eq4.5").variants == tuple(range(9))
    for name in ("limit5.11.doubled", "eq5.12", "mod5.13"):
        assert get(name).variants == (1, -1)
    with pytest.raises(UnknownIdentity):
        get("nosuch")


def test_build_side_examples():
    rhs = build_side("eq1.5", "rhs", 6)
    # (1+zq)(1+zq^3)(1+zq^5)(1-z^2 q^4): the q^4 terms cancel, q^5 picks up zq * -z^2 q^4
    assert [rhs.coeff(n) for n in range(6)] == [ONE, z, ZERO, z, ZERO, z - z ** 3]
    assert build_side("eq1.5", "lhs", 1) == QSeries.one(1)
    j = build_side("jacobi3.5", "lhs", 4).substitute({"a": 1})
    assert j == QSeries.from_dict({0: 1, 1: 1, 3: 1}, 4)


def test_build_side_bad_arguments():
    with pytest.raises(ValueError):
        build_side("eq1.5", "middle", 5)
    with pytest.raises(ValueError):
        build_side("eq4.5", "lhs", 5, variant=9)


def test_sides_are_nonnegative_windows():
    for spec in catalog():
        for v in spec.variants:
            assert spec.lhs(20, v).lower >= 0 and spec.rhs(20, v).lower >= 0


@pytest.mark.parametrize("name", ["eq1.5", "mod5.3", "gg5.1", "eq3.3", "qdixon1.2.spec2"])
def test_verify_passes(name):
    r = verify(name, 40)
    assert r.passed, r.summary()
    assert r.first_mismatch is None


def test_dropping_the_z2q4_factor():
    spec = get("eq1.5")
    dropped = replace(spec, product_side=lambda v: product(Factor(-z, 1, 2)))
    r = verify_spec(dropped, 60)
    assert not r.passed
    m = r.first_mismatch
    assert m.degree == 4
    assert m.lhs - m.rhs == -(z ** 2)


def test_unshifted_ab_factor_fails():
    # reading the third factor as (ab; q^4)_inf instead of (ab q^4; q^4)_inf
    spec = get("eq3.3")
    alt = replace(spec, product_side=lambda v: product(Factor(-a, 1, 4), Factor(-b, 3, 4), Factor(a * b, 0, 4)))
    r = verify_spec(alt, 20)
    assert not r.passed
    assert r.first_mismatch.degree == 0


def test_sign_flipped_mean_product_fails():
    spec = get("mean5.8")
    r = verify_spec(replace(spec, product_side=ids.mean_h_sign_flipped_product), 40)
    assert not r.passed


@pytest.mark.parametrize("kind", ["drop", "perturb"])
def test_mutations_fail_for_every_entry(kind):
    for spec in catalog():
        r = verify_spec(mutated(spec, kind), 30)
        assert not r.passed, spec.name


def test_delta_reported_on_failure():
    spec = get("eq5.12")
    only_minus = replace(spec, product_side=lambda d: spec.product_side(1))
    r = verify_spec(only_minus, 30)
    assert not r.passed and r.delta == -1


def test_theorem_worked_coefficients():
    t1 = get("eq1.5")
    assert t1.lhs(11).coeff(10) == 2 * z ** 2 - z ** 4
    assert t1.rhs(11).coeff(10) == 2 * z ** 2 - z ** 4
    t3 = get("eq3.1")
    assert t3.lhs(10).coeff(9) == 2 * a * b - 2 * a ** 2 * b ** 2
    assert t3.rhs(10).coeff(9) == 2 * a * b - 2 * a ** 2 * b ** 2
    t2 = get("eq3.3")
    assert t2.rhs(11).coeff(10) == a ** 2 + b ** 2 - a ** 3 * b


@pytest.mark.parametrize("theorem", ["T1", "T2", "T3"])
def test_theorem_vs_series_small(theorem):
    assert verify_theorem_vs_series(theorem, 12).passed


def test_gg_combinatorial_small():
    assert verify_gg_combinatorial(16).passed


@pytest.mark.parametrize("name", list(STRUCTURAL_CHECKS))
def test_structural_checks(name):
    r = STRUCTURAL_CHECKS[name](30)
    assert r.passed, r.summary()


def test_double_sum_exponent_regrouping():
    for i in range(51):
        for j in range(51):
            assert 2 * i * i - i + 2 * j * j + j + 4 * i * j == 2 * (i + j) ** 2 - (i + j) + 2 * j


def test_bilateral_bound():
    assert ids.bilateral_bound(lambda i: 2 * i * i - i, 10) == 2


def test_dixon_first_point_to_order_50():
    nums, dens, tt = DIXON_POINTS[1].hypergeometric_args()
    lhs = q_hypergeometric(nums, dens, 1, tt, 50)
    rhs = evaluate_product(ids.product(*DIXON_POINTS[1].product_factors()), 50)
    assert first_mismatch(lhs, rhs, 50) is None


def test_dixon_point_rejects_bad_root():
    with pytest.raises(ValueError):
        ids.DixonPoint((1, 2), (1, 2), (2, 0), (1, 1))


def test_product_splitting():
    N = 40
    lhs = evaluate_product(product(Factor(a * a, 2, 8), Factor(a * a, 6, 8)), N)
    assert lhs == pochhammer_infinite(PochSpec(a * a, 2, 4), N)


def test_twisted_sum_decomposition():
    # the delta = +1 sum equals its G-part plus a q H-part
    order = 40
    g = ids.gg_series(a * a, 1, order)
    h = ids.gg_series(a * a, 1, order, shifted=True)
    whole = get("mod5.13").lhs(order, 1)
    split = g.substitute_q(-1, 2, order) + h.substitute_q(-1, 2, order).scale(a).shift(1).truncate(order)
    assert first_mismatch(whole, split, order) is None
