import math

import pytest
import sympy
from hypothesis import given, strategies as st

from kronq.qlaurent import (
    GrCountPoly,
    LaurentQ,
    bracket_binomial,
    gauss_binomial,
    lq_bar,
    lq_mul,
    subst_w,
)

V = LaurentQ.v(1)
laurents = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentQ)

_v = sympy.Symbol("v")


def to_sympy(a: LaurentQ):
    return sum(c * _v**k for k, c in a.items())


def ratio_bracket(n, k, t):
    """Direct evaluation of prod (x^{n-i} - x^{-(n-i)}) / (x^{i+1} - x^{-(i+1)}) at x = v^t."""
    x = _v**t
    num = sympy.prod([x ** (n - i) - x ** (-(n - i)) for i in range(k)])
    den = sympy.prod([x ** (i + 1) - x ** (-(i + 1)) for i in range(k)])
    return sympy.expand(sympy.cancel(num / den))


def product_gauss(n, r):
    w = sympy.Symbol("w")
    num = sympy.prod([1 - w ** (n - i) for i in range(r)])
    den = sympy.prod([1 - w ** (i + 1) for i in range(r)])
    return sympy.Poly(sympy.cancel(num / den), w)


def test_multiplication_examples():
    assert (V + V**-1) * (V - V**-1) == LaurentQ({2: 1, -2: -1})
    assert LaurentQ({0: 1, 2: 1}) * V**-1 == LaurentQ({-1: 1, 1: 1})
    assert (LaurentQ({2: 1, -2: 1}) * 0).is_zero()


def test_bar_examples():
    assert lq_bar(LaurentQ({3: 1, 0: 2})) == LaurentQ({-3: 1, 0: 2})
    assert lq_bar(V + V**-1) == V + V**-1


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == LaurentQ()
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@given(laurents, laurents)
def test_bar_is_involutive_ring_map(a, b):
    assert a.bar().bar() == a
    assert lq_mul(a, b).bar() == a.bar() * b.bar()


@given(laurents, laurents)
def test_divexact_roundtrip(a, b):
    if b:
        assert (a * b).divexact(b) == a


def test_divexact_rejects_non_multiples():
    with pytest.raises(ArithmeticError):
        LaurentQ({0: 1, 2: 1}).divexact(LaurentQ({0: 2}))
    with pytest.raises(ArithmeticError):
        LaurentQ(1).divexact(LaurentQ({0: 1, 1: 1}))


def test_json_roundtrip_and_schema():
    a = LaurentQ({-3: 7, 2: -10**30})
    assert a.to_json() == [[-3, "7"], [2, str(-10**30)]]
    assert LaurentQ.from_json(a.to_json()) == a


def test_str():
    assert str(LaurentQ.q(1) + LaurentQ.q(-1)) in ("q^-1 + q", "q + q^-1")
    assert str(LaurentQ()) == "0"


def test_bracket_examples():
    assert bracket_binomial(5, 0, 2) == LaurentQ(1)
    assert bracket_binomial(2, 1, 2) == LaurentQ({2: 1, -2: 1})
    assert bracket_binomial(4, 2, 2) == LaurentQ({-8: 1, -4: 1, 0: 2, 4: 1, 8: 1})
    assert bracket_binomial(3, -1, 2) == LaurentQ()
    assert bracket_binomial(2, 3, 2) == LaurentQ()


@pytest.mark.parametrize("t", [1, 2])
def test_bracket_matches_defining_ratio(t):
    for n in range(0, 8):
        for k in range(0, n + 1):
            assert sympy.expand(to_sympy(bracket_binomial(n, k, t)) - ratio_bracket(n, k, t)) == 0


@pytest.mark.parametrize("t", [1, 2, 3])
def test_bracket_palindromic_and_classical_at_one(t):
    for n in range(9):
        for k in range(n + 1):
            b = bracket_binomial(n, k, t)
            assert b.bar() == b
            assert b.at_one() == math.comb(n, k)


def test_bracket_negative_upper_index():
    # upper negation: [-n, k] = (-1)^k [n+k-1, k]
    for n in range(1, 5):
        for k in range(4):
            assert bracket_binomial(-n, k, 2) == bracket_binomial(n + k - 1, k, 2) * (-1) ** k


def test_gauss_examples():
    assert gauss_binomial(-3, 0) == GrCountPoly(1)
    assert gauss_binomial(7, 0) == GrCountPoly(1)
    assert gauss_binomial(2, 1) == GrCountPoly([1, 1])
    assert gauss_binomial(4, 2) == GrCountPoly([1, 1, 2, 1, 1])
    assert gauss_binomial(1, 3) == GrCountPoly()
    assert gauss_binomial(4, -1) == GrCountPoly()


def test_gauss_matches_product_formula():
    for n in range(9):
        for r in range(n + 1):
            expected = product_gauss(n, r).all_coeffs()[::-1]
            assert gauss_binomial(n, r) == GrCountPoly([int(c) for c in expected])


def test_gauss_negative_n_positive_r_is_rejected():
    with pytest.raises(ValueError):
        gauss_binomial(-1, 2)


def test_subst_w():
    assert subst_w(GrCountPoly([1, 1])) == LaurentQ({4: 1, 0: 1})
    assert subst_w(GrCountPoly(1)) == LaurentQ(1)
    assert subst_w(GrCountPoly({2: 1})) == LaurentQ({8: 1})


def test_grcountpoly_arithmetic():
    p, r = GrCountPoly([1, 1]), GrCountPoly([0, 2])
    assert (p * r)(3) == p(3) * r(3)
    assert (p + r)(5) == p(5) + r(5)
    assert str(p) == "w + 1"


def test_rescaling_identity():
    for b in range(9):
        for a in range(b + 1):
            assert bracket_binomial(b, a, 2).shift(2 * a * (b - a)) == subst_w(gauss_binomial(b, a))


def test_pascal_identity():
    for n in range(9):
        for p in range(n + 1):
            for r in range(n - p + 1):
                lhs = bracket_binomial(n + 1 - p, r, 2).shift(2 * r)
                rhs = bracket_binomial(n - p, r, 2) + bracket_binomial(n - p, r - 1, 2).shift(2 * (n - p + 1))
                assert lhs == rhs
