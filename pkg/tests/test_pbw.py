from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cgl.errors import BoundExceeded, UndefinedInverseRewrite, ZeroElement
from cgl.pbw import (
    PBWPoly,
    apply_delta,
    apply_delta_power,
    apply_diagonal,
    apply_sigma,
    leading_term,
    multiply,
    nilpotency_index,
    power,
)
from cgl.presentation import (
    example_3_2,
    quantum_affine_space,
    quantum_matrices_2x2,
    quantum_plane,
    standard_catalog,
    uqplus_sl3,
)
from cgl.scalars import ONE, Q, RationalFunction

from .strategies import pbw_elements

CGL_ENTRIES = [example_3_2(1), example_3_2(2), quantum_matrices_2x2(), uqplus_sl3(), quantum_affine_space(3)]


def x(N, i, p=1):
    return PBWPoly.gen(N, i - 1, p)


def test_defining_relation_example():
    P = example_3_2(1)
    assert multiply(x(3, 2), x(3, 1), P) == PBWPoly.monomial((1, 1, 0), Q) + PBWPoly.one(3)


def test_defining_relation_r2():
    P = example_3_2(2)
    want = PBWPoly.monomial((1, 0, 1), RationalFunction.monomial(1, -1)) + PBWPoly.monomial((0, 2, 0))
    assert multiply(x(3, 3), x(3, 1), P) == want


def test_multiply_by_one():
    P = quantum_matrices_2x2()
    a = PBWPoly.monomial((1, 2, 0, 1), Q)
    assert multiply(a, PBWPoly.one(4), P) == a
    assert multiply(PBWPoly.one(4), a, P) == a


def test_sigma_examples():
    assert apply_sigma(1, x(2, 1), quantum_plane()) == x(2, 1).scale(Q)
    P = example_3_2(1)
    a = PBWPoly.monomial((1, 1, 0))
    assert apply_sigma(2, a, P) == a
    assert apply_sigma(2, PBWPoly.one(3), P) == PBWPoly.one(3)


def test_delta_examples():
    P = example_3_2(1)
    assert apply_delta(1, x(3, 1), P) == PBWPoly.one(3)
    assert apply_delta(1, x(3, 1, 2), P) == x(3, 1).scale(Q + 1)
    assert apply_delta(1, PBWPoly.one(3), P).is_zero()


def test_leading_term_examples():
    y2 = PBWPoly.monomial((1, 1, 0)) + PBWPoly.constant(3, (ONE - Q).inverse())
    assert leading_term(y2) == (ONE, (1, 1, 0))
    m = PBWPoly.monomial((2, 0, 1), Q)
    assert leading_term(m) == (Q, (2, 0, 1))
    assert leading_term(x(2, 1) + x(2, 2))[1] == (0, 1)
    with pytest.raises(ZeroElement):
        leading_term(PBWPoly.zero(2))


def test_nilpotency_examples():
    assert nilpotency_index(1, 0, example_3_2(1), 10) == 2
    P = quantum_affine_space(3)
    assert all(nilpotency_index(k, j, P, 10) == 1 for k in range(3) for j in range(k))
    assert nilpotency_index(3, 0, quantum_matrices_2x2(), 10) == 2


def test_nilpotency_bound_exceeded():
    with pytest.raises(BoundExceeded):
        nilpotency_index(1, 0, example_3_2(1), 1)


def test_inverse_rewrite_needs_zero_derivation():
    P = example_3_2(1)
    with pytest.raises(UndefinedInverseRewrite):
        multiply(x(3, 2, -1), x(3, 1, -1), P)
    # with delta = 0 the rewrite is a pure twist
    A = quantum_affine_space(2)
    assert multiply(x(2, 2, -1), x(2, 1, -1), A) == PBWPoly.monomial((-1, -1), A.lam[1][0].to_rf())


def test_mixed_inverse_rule():
    # x2^-1 x2 = 1 and x2 x1 x2^-1 computed through the mixed rule
    P = example_3_2(1)
    assert multiply(x(3, 2, -1), x(3, 2), P) == PBWPoly.one(3)
    a = multiply(multiply(x(3, 2), x(3, 1), P), x(3, 2, -1), P)
    want = x(3, 1).scale(Q) + x(3, 2, -1)
    assert a == want


def test_format():
    a = PBWPoly.monomial((1, 0, 2), Fraction(-1, 2)) + PBWPoly.constant(3, (Q - 1).inverse())
    assert str(a) == "-1/2*x1*x3^2 + 1/(-1 + q)"
    assert str(PBWPoly.zero(2)) == "0"


# -- properties --------------------------------------------------------------


@pytest.mark.parametrize("P", CGL_ENTRIES, ids=lambda P: P.name)
@given(data=st.data())
def test_associativity(P, data):
    a, b, c = (data.draw(pbw_elements(P.N, max_terms=2, max_exp=1)) for _ in range(3))
    assert multiply(multiply(a, b, P), c, P) == multiply(a, multiply(b, c, P), P)


@pytest.mark.parametrize("P", CGL_ENTRIES, ids=lambda P: P.name)
@given(data=st.data())
def test_distributivity(P, data):
    a, b, c = (data.draw(pbw_elements(P.N, max_terms=2, max_exp=1)) for _ in range(3))
    assert multiply(a, b + c, P) == multiply(a, b, P) + multiply(a, c, P)


@pytest.mark.parametrize("P", CGL_ENTRIES, ids=lambda P: P.name)
@given(data=st.data())
def test_ore_rule(P, data):
    # x_k a = sigma_k(a) x_k + delta_k(a) for a in R_{k-1}
    k = data.draw(st.integers(1, P.N - 1))
    a = data.draw(pbw_elements(P.N, max_terms=2, max_exp=2))
    a = PBWPoly(P.N, {f[:k] + (0,) * (P.N - k): c for f, c in a.terms.items()})
    xk = PBWPoly.gen(P.N, k)
    lhs = multiply(xk, a, P)
    rhs = multiply(apply_sigma(k, a, P), xk, P) + apply_delta(k, a, P)
    assert lhs == rhs


@pytest.mark.parametrize("P", CGL_ENTRIES, ids=lambda P: P.name)
@given(data=st.data())
def test_sigma_delta_commutation(P, data):
    from cgl.cgl_verify import verify_cgl

    lam = verify_cgl(P).lam
    k = data.draw(st.integers(1, P.N - 1))
    a = data.draw(pbw_elements(P.N, max_terms=2, max_exp=2))
    a = PBWPoly(P.N, {f[:k] + (0,) * (P.N - k): c for f, c in a.terms.items()})
    lhs = apply_sigma(k, apply_delta(k, a, P), P)
    rhs = apply_delta(k, apply_sigma(k, a, P), P).scale(lam[k])
    assert lhs == rhs


@pytest.mark.parametrize("P", CGL_ENTRIES, ids=lambda P: P.name)
@given(data=st.data())
def test_leading_term_multiplicative(P, data):
    a = data.draw(pbw_elements(P.N, max_terms=3, max_exp=2).filter(lambda e: not e.is_zero()))
    b = data.draw(pbw_elements(P.N, max_terms=3, max_exp=2).filter(lambda e: not e.is_zero()))
    _, fa = leading_term(a)
    _, fb = leading_term(b)
    _, fab = leading_term(multiply(a, b, P))
    assert fab == tuple(u + v for u, v in zip(fa, fb))


@pytest.mark.parametrize("P", CGL_ENTRIES, ids=lambda P: P.name)
@given(data=st.data())
def test_delta_locally_nilpotent_on_products(P, data):
    k = data.draw(st.integers(1, P.N - 1))
    a = data.draw(pbw_elements(P.N, max_terms=2, max_exp=2))
    a = PBWPoly(P.N, {f[:k] + (0,) * (P.N - k): c for f, c in a.terms.items()})
    # nilpotency on generators is at most 2 here, so degree-d elements die by 2d+1
    d = max((sum(f) for f in a.terms), default=0)
    assert apply_delta_power(k, a, P, 2 * d + 1).is_zero()


@pytest.mark.parametrize("P", CGL_ENTRIES, ids=lambda P: P.name)
@given(data=st.data())
def test_witnesses_are_algebra_automorphisms(P, data):
    a = data.draw(pbw_elements(P.N, max_terms=2, max_exp=1))
    b = data.draw(pbw_elements(P.N, max_terms=2, max_exp=1))
    for psi in P.h:
        assert apply_diagonal(psi, multiply(a, b, P)) == multiply(apply_diagonal(psi, a), apply_diagonal(psi, b), P)


@given(st.integers(0, 5))
def test_power_matches_repeated_product(n):
    P = example_3_2(1)
    a = x(3, 1) + x(3, 2)
    acc = PBWPoly.one(3)
    for _ in range(n):
        acc = multiply(acc, a, P)
    assert power(a, n, P) == acc


def test_every_catalog_entry_consistent():
    from cgl.cgl_verify import ore_consistency

    for P in standard_catalog():
        assert ore_consistency(P) == []
