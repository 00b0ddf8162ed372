import math
from itertools import product

import pytest
from hypothesis import given, strategies as st

from helpers import poly, ring

from qsing.diffops import (LogContext, TaylorIndex, diff_ideal, diff_plus_ideal, hasse,
                           hasse_family, log_diff_plus_ideal, log_operator, lucas_binom)
from qsing.errors import DomainError
from qsing.ffpoly import Polynomial, Ring
from qsing.ideals import Ideal, ideal_included, ideal_order_at, PointSpec
from qsing.qmod import normal_form

R5 = ring(3, "x1,x2,x3,x4,x5")


def _ideal(R, *srcs):
    return Ideal(R, [poly(s, R) for s in srcs])


def _drop(names, skip):
    return "*".join(n for k, n in enumerate(names) if k not in skip)


# -- Lucas ---------------------------------------------------------------------------

def test_lucas_examples():
    assert lucas_binom((4,), (2,), 3) == 0
    assert lucas_binom((7, 5), (0, 0), 5) == 1
    assert lucas_binom((6, 2), (6, 2), 7) == 1


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.tuples(st.integers(0, 60), st.integers(0, 60)),
                                                 min_size=1, max_size=3))
def test_lucas_matches_math_comb(p, pairs):
    alpha = tuple(a for a, _ in pairs)
    gamma = tuple(g for _, g in pairs)
    assert lucas_binom(alpha, gamma, p) == math.prod(math.comb(a, g) for a, g in pairs) % p


# -- Hasse operators ------------------------------------------------------------------

def test_hasse_examples():
    R = ring(3, "x1,x2")
    f = poly("x1^4*x2", R)
    assert hasse((1, 0), f) == poly("x1^3*x2", R)
    assert hasse((2, 0), f).is_zero()
    assert hasse(TaylorIndex((0, 0)), f) == f
    assert TaylorIndex((2, 1)).order == 3


@st.composite
def small_polys(draw, p=None, n=2, max_deg=8):
    p = p or draw(st.sampled_from([2, 3, 5]))
    R = Ring(p, tuple(f"x{i + 1}" for i in range(n)))
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, max_deg)] * n),
                                 st.integers(1, p - 1), max_size=5))
    return Polynomial(R, terms)


@given(small_polys(), st.integers(0, 4))
def test_hasse_family_matches_direct_enumeration(f, k):
    n = f.ring.nvars
    expected = {}
    for gamma in product(range(k + 1), repeat=n):
        if sum(gamma) <= k:
            d = hasse(gamma, f)
            if not d.is_zero():
                expected[gamma] = d
    assert hasse_family(f, k) == expected


@given(small_polys(), st.tuples(st.integers(0, 3), st.integers(0, 3)),
       st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_composition_rule(f, g1, g2):
    total = tuple(a + b for a, b in zip(g1, g2))
    lhs = hasse(g1, hasse(g2, f))
    rhs = hasse(total, f).scale(lucas_binom(total, g1, f.ring.p))
    assert lhs == rhs


@given(st.data())
def test_operators_below_q_are_linear_over_q_powers(data):
    p = data.draw(st.sampled_from([2, 3]))
    e = data.draw(st.integers(1, 2))
    q = p ** e
    f = data.draw(small_polys(p=p))
    h = data.draw(small_polys(p=p, max_deg=3))
    h = Polynomial(f.ring, h.terms)
    gamma = data.draw(st.tuples(st.integers(0, q - 1), st.integers(0, q - 1))
                      .filter(lambda g: sum(g) < q))
    hq = h ** q
    assert hasse(gamma, hq * f) == hq * hasse(gamma, f)


# -- Diff ideals ------------------------------------------------------------------------

def test_diff_plus_five_variables():
    M = normal_form([poly("x1*x2*x3*x4*x5", R5)], 1, ring=R5)
    names = R5.names
    assert diff_plus_ideal(M, 1) == _ideal(R5, *[_drop(names, {j}) for j in range(5)])
    assert diff_plus_ideal(M, 2) == _ideal(
        R5, *[_drop(names, {i, j}) for i in range(5) for j in range(i + 1, 5)])


def test_diff_plus_of_q_power_vanishes():
    R = ring(3, "x1")
    M = normal_form([poly("x1^3", R)], 1, ring=R)
    assert M.is_trivial()
    for i in (1, 2):
        assert diff_plus_ideal(M, i).is_zero()


def test_diff_plus_order_range():
    M = normal_form([poly("x1*x2", ring(3, "x1,x2"))], 1)
    for bad in (0, 3):
        with pytest.raises(DomainError):
            diff_plus_ideal(M, bad)


def test_diff_ideal_examples():
    R = ring(3, "x1,x2")
    J = _ideal(R, "x1^2*x2")
    assert diff_ideal(J, 1) == _ideal(R, "x1*x2", "x1^2")
    assert diff_ideal(J, 0) == J
    assert diff_ideal(Ideal.unit(R), 2).is_unit()


@st.composite
def monomial_gens(draw, p, n=3, max_exp=7, max_gens=3):
    R = Ring(p, tuple(f"x{i + 1}" for i in range(n)))
    exps = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * n), min_size=1, max_size=max_gens))
    return [R.monomial(e) for e in exps]


@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]), st.data())
def test_diff_depends_only_on_the_generated_algebra(pe, data):
    p, e = pe
    q = p ** e
    f, g = data.draw(monomial_gens(p, max_gens=2).filter(lambda gs: len(gs) == 2))
    small = normal_form([f, g], e)
    big = normal_form([f, g, f * g, f ** 2], e)
    for i in range(1, q):
        assert diff_plus_ideal(small, i) == diff_plus_ideal(big, i)


@given(st.sampled_from([2, 3, 5]), st.integers(0, 5), st.data())
def test_order_drops_by_at_most_i(p, i, data):
    gens = data.draw(monomial_gens(p))
    J = Ideal(gens[0].ring, gens)
    origin = PointSpec.origin(J.ring)
    assert ideal_order_at(diff_ideal(J, i), origin) >= ideal_order_at(J, origin) - i


# -- logarithmic operators ------------------------------------------------------------

def test_log_diff_five_variable_step_one():
    M = normal_form([poly("x1^2*x2*x3*x4*x5", R5)], 1, ring=R5)
    ctx = LogContext(R5, {0}, (1, 0, 0, 0, 0))
    want = _ideal(R5, *["x1^2*" + _drop(R5.names[1:], {j}) for j in range(4)])
    assert log_diff_plus_ideal(M, ctx, 1) == want
    pairs = ["x1^2*" + _drop(R5.names[1:], {i, j}) for i in range(4) for j in range(i + 1, 4)]
    assert log_diff_plus_ideal(M, ctx, 2) == _ideal(R5, *pairs)


def test_log_diff_five_variable_step_two():
    M = normal_form([poly("x1^2*x2*x3*x4*x5", R5)], 1, ring=R5)
    ctx = LogContext(R5, {0, 1}, (1, 1, 0, 0, 0))
    assert log_diff_plus_ideal(M, ctx, 1) == _ideal(
        R5, "x1^2*x2*x4*x5", "x1^2*x2*x3*x5", "x1^2*x2*x3*x4")
    assert log_diff_plus_ideal(M, ctx, 2) == _ideal(R5, "x1^2*x2*x3", "x1^2*x2*x4", "x1^2*x2*x5")


def test_log_diff_five_variable_step_three():
    M = normal_form([poly("x1^2*x2*x4*x5", R5)], 1, ring=R5)
    ctx = LogContext(R5, {0, 1, 2}, (1, 1, 1, 0, 0))
    assert log_diff_plus_ideal(M, ctx, 1) == _ideal(R5, "x1^2*x2*x4", "x1^2*x2*x5")
    assert log_diff_plus_ideal(M, ctx, 2) == _ideal(R5, "x1^2*x2")


def test_empty_lambda_is_plain_diff():
    M = normal_form([poly("x1*x2^4 + x3^2*x1", ring(3, "x1,x2,x3"))], 1)
    ctx = LogContext.trivial(M.ring)
    for i in (1, 2):
        assert log_diff_plus_ideal(M, ctx, i) == diff_plus_ideal(M, i)


def test_log_context_requires_L_in_each_hypersurface():
    R = ring(3, "x1,x2")
    with pytest.raises(DomainError):
        LogContext(R, {0, 1}, (1, 0))


@given(st.sampled_from([2, 3]), st.data())
def test_family_members_are_logarithmic(p, data):
    R = Ring(p, ("x1", "x2", "x3"))
    lam = data.draw(st.sets(st.integers(0, 2), min_size=1))
    ctx = LogContext(R, lam, tuple(1 if j in lam else 0 for j in range(3)))
    gamma = data.draw(st.tuples(*[st.integers(0, 3)] * 3))
    h = R.monomial(data.draw(st.tuples(*[st.integers(0, 4)] * 3)))
    q = p * p
    for j in lam:
        for k in range(2 * q + 1):
            image = log_operator(ctx, gamma, R.monomial(R.unit_exp(j)) ** k * h)
            assert all(e[j] >= k for e in image.terms)


@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]), st.data())
def test_log_diff_sandwich(pe, data):
    p, e = pe
    gens = data.draw(monomial_gens(p))
    M = normal_form(gens, e)
    if M.is_trivial():
        return
    R = M.ring
    lam = data.draw(st.sets(st.integers(0, 2)))
    L = tuple(data.draw(st.integers(1, 2)) if j in lam else 0 for j in range(3))
    ctx = LogContext(R, lam, L)
    for i in range(1, M.q):
        plain = diff_plus_ideal(M, i)
        log = log_diff_plus_ideal(M, ctx, i)
        assert ideal_included(plain.mul_monomial(ctx.L_power(i)), log)
        assert ideal_included(log, plain)
