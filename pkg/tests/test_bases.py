import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from kronq import bases
from kronq.bases import (
    BasisExpansion,
    Diag,
    Mono,
    NotInAlgebra,
    Unit,
    basis_element,
    cheb_elem,
    expand_in_basis,
    expansion_of,
    is_positive,
    label_of_min_exp,
    laurent_in_cluster,
    min_exp_label,
    mono,
    realize,
    shift_expansion,
)
from kronq.cluster import xdelta, xvar_rec
from kronq.qlaurent import LaurentQ
from kronq.qtorus import TorusElem, minimal_terms, t_bar, top_key
from kronq.verify import monomial_labels, prop_even, prop_odd, random_expansion

V = LaurentQ.v
X = xvar_rec


def test_cheb_examples():
    z = xdelta()
    assert cheb_elem("first", 2) == z * z - 2
    assert cheb_elem("second", 2) == z * z - 1
    assert cheb_elem("first", 1) * cheb_elem("first", 1) == cheb_elem("first", 2) + 2
    assert cheb_elem("power", 3) == z * z * z
    for fam in ("first", "second", "power"):
        assert cheb_elem(fam, 0) == TorusElem.scalar(1)


def test_first_kind_from_second_kind():
    for n in range(2, 9):
        assert cheb_elem("first", n) == cheb_elem("second", n) - cheb_elem("second", n - 2)


def test_label_canonical_form():
    assert mono(3, 0, 2) == Mono(4, 2, 0)
    assert mono(3, 0, 0) == Unit()
    with pytest.raises(ValueError):
        Mono(0, 0, 1)
    with pytest.raises(ValueError):
        Diag(0)


def test_min_exp_examples():
    for a, b in [(1, 0), (2, 3), (1, 1)]:
        assert min_exp_label(Mono(0, a, b)) == (b, -a)
        assert min_exp_label(Mono(2, a, b)) == (-b, a)
    assert min_exp_label(Diag(4)) == (-4, -4)
    assert label_of_min_exp((0, -1)) == Mono(0, 1, 0)
    assert label_of_min_exp((-3, -3)) == Diag(3)
    assert label_of_min_exp((-1, -2)) == Mono(-1, 1, 0)
    assert label_of_min_exp((0, 0)) == Unit()


def test_min_exp_matches_actual_minimum():
    for lab in monomial_labels(4, 3) + [Diag(n) for n in range(1, 6)]:
        (point, coeff), = minimal_terms(basis_element(lab)).items()
        assert point == min_exp_label(lab) and coeff.is_unit()
        # the primed normalization makes that coefficient exactly 1
        assert minimal_terms(basis_element(lab, "B", True)) == {point: LaurentQ(1)}


def test_min_exp_is_a_bijection_on_a_box():
    # every lattice point is the minimum of exactly one label
    for c in itertools.product(range(-6, 7), repeat=2):
        lab = label_of_min_exp(c)
        assert min_exp_label(lab) == c


def test_top_terms_are_distinct_across_labels():
    labels = monomial_labels(4, 4) + [Diag(n) for n in range(1, 7)] + [Unit()]
    tops = {}
    for lab in labels:
        el = basis_element(lab)
        top = max(el.support(), key=top_key)
        assert top not in tops, (lab, tops.get(top))
        tops[top] = lab


def test_realize_examples():
    assert realize(BasisExpansion("B", True, {Mono(1, 1, 1): 1})) == TorusElem.X(1, 1)
    assert realize(expansion_of(Mono(0, 1, 0))) == TorusElem({(2, -1): 1, (0, -1): 1})
    assert realize(expansion_of(Diag(1))) == xdelta()


def test_expand_examples():
    e = expand_in_basis(X(0) * X(3))
    assert e == BasisExpansion("B", False, {Mono(1, 1, 1): LaurentQ.q(1), Diag(1): V(-1)})
    e = expand_in_basis(X(0) * X(2))
    assert e == BasisExpansion("B", False, {Mono(1, 2, 0): LaurentQ.q(1), Unit(): 1})
    e = expand_in_basis(X(1) * cheb_elem("first", 2))
    assert e == BasisExpansion("B", False, {Mono(3, 1, 0): LaurentQ.q(1), Mono(-1, 1, 0): LaurentQ.q(-1)})


def test_expand_zero():
    assert expand_in_basis(TorusElem()) == BasisExpansion("B", False, {})


def test_non_members_are_rejected():
    for el in [TorusElem.X(-1, 0), TorusElem.X(1, 1, 1) + TorusElem.X(-1, 0), TorusElem.X(0, -1)]:
        with pytest.raises(NotInAlgebra):
            expand_in_basis(el)


@pytest.mark.parametrize("family", bases.FAMILIES)
@pytest.mark.parametrize("primed", [False, True])
def test_roundtrip_random(family, primed):
    rng = random.Random(hash((family, primed)) & 0xFFFF)
    for _ in range(40):
        e = random_expansion(rng, family, primed)
        assert expand_in_basis(realize(e), family, primed) == e


def test_family_conversion_is_unitriangular():
    for n in range(2, 9):
        e = expand_in_basis(cheb_elem("first", n), "S")
        expected = {Diag(n): 1, (Diag(n - 2) if n > 2 else Unit()): -1}
        assert e == BasisExpansion("S", False, expected)
    for src, dst in [("power", "B"), ("power", "S"), ("second", "B"), ("first", "D")]:
        for n in range(1, 7):
            e = expand_in_basis(cheb_elem(src, n), dst)
            assert e.terms[Diag(n)] == LaurentQ(1)
            assert all(isinstance(l, Unit) or (isinstance(l, Diag) and l.n <= n) for l in e.terms)


def test_prop_products_ranges():
    z = lambda n: cheb_elem("first", n)  # noqa: E731
    for n in range(1, 7):
        assert z(n) * z(n) == z(2 * n) + 2
        for m in range(n + 1, 7):
            assert z(n) * z(m) == z(m + n) + z(m - n)
    for m in range(1, 6):
        for n in range(-4, 7):
            rhs = X(n + m).scale(V(m)) + X(n - m).scale(V(-m))
            assert X(n) * z(m) == rhs
            assert z(m) * X(n) == t_bar(rhs)
    for m in range(0, 5):
        for n in range(-4, 5):
            for fn in (prop_even, prop_odd):
                lhs, rhs = fn(n, m)
                assert lhs == rhs
                assert t_bar(lhs) == t_bar(rhs)


def test_s_lemma():
    s = lambda n: cheb_elem("second", n)  # noqa: E731
    for n in range(0, 9):
        assert s(n) == (X(1) * X(n + 3)).scale(V(n)) - (X(2) * X(n + 2)).scale(V(n + 2))


def test_shift_examples():
    e = expansion_of(Mono(0, 1, 2))
    assert shift_expansion(e, 1) == expansion_of(Mono(1, 1, 2))
    d = expansion_of(Diag(3))
    assert shift_expansion(d, 5) == d
    assert shift_expansion(e, 0) is e


def test_laurent_in_cluster_examples():
    assert laurent_in_cluster(expansion_of(Mono(3, 1, 0)), 3) == TorusElem.X(1, 0)
    assert laurent_in_cluster(expansion_of(Mono(1, 1, 0)), 2) == TorusElem({(2, -1): 1, (0, -1): 1})
    for m in (-3, 0, 4):
        assert laurent_in_cluster(expansion_of(Diag(1)), m) == xdelta()


def test_positivity_examples():
    assert is_positive(expansion_of(Diag(3)), range(-5, 7))
    assert is_positive(expansion_of(Mono(0, 2, 0)), range(-3, 5))
    res = is_positive(BasisExpansion("B", False, {Mono(1, 1, 0): 1, Mono(2, 1, 0): -1}), range(1, 2))
    assert not res
    m, ex, c = res.witness
    assert m == 1 and c == LaurentQ(-1)
    with pytest.raises(ValueError):
        is_positive(BasisExpansion(), range(0, 1))


def test_primed_elements_are_bar_invariant():
    for lab in monomial_labels(3, 4):
        el = basis_element(lab, "B", True)
        assert t_bar(el) == el


def test_json_roundtrip():
    e = BasisExpansion("D", True, {Mono(-2, 1, 3): V(3) + 2, Diag(4): -1, Unit(): V(-1)})
    assert BasisExpansion.from_json(e.to_json()) == e
    assert [t["label"]["kind"] for t in e.to_json()["terms"]] == ["unit", "diag", "mono"]


def test_bad_family():
    with pytest.raises(ValueError):
        BasisExpansion("Q")
    with pytest.raises(ValueError):
        expand_in_basis(TorusElem.X(1, 0), "Q")
