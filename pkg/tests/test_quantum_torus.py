import itertools

import pytest
from hypothesis import given, strategies as st

from cgl.cgl_verify import verify_cgl
from cgl.errors import NonUnitInversion, ZeroElement
from cgl.pbw import PBWPoly
from cgl.presentation import (
    example_3_2,
    quantum_affine_space,
    quantum_matrices_2x2,
    quantum_plane,
    standard_catalog,
    uqplus_sl3,
)
from cgl.prime_seq import compute_prime_sequence
from cgl.quantum_torus import (
    Bicharacter,
    LaurentPoly,
    decompose_exponent,
    embed_x_to_y,
    graded_component,
    graded_degrees,
    image_of,
    in_delta,
    ltq,
    top_bars,
    verify_embedding,
)
from cgl.scalars import ONE, Q, MonomialScalar

q = MonomialScalar.q
vec3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(tuple)


def seq_of(P):
    return compute_prime_sequence(P, verify_cgl(P))


def chi3():
    # q_21 = q, q_31 = q^-2, q_32 = -q
    m = [[q(0), q(-1), q(2)], [q(1), q(0), MonomialScalar(-1, -1)], [q(-2), MonomialScalar(-1, 1), q(0)]]
    return Bicharacter(m)


def test_defining_relation():
    chi = Bicharacter([[q(0), q(-1)], [q(1), q(0)]])
    y1, y2 = LaurentPoly.gen(chi, 0), LaurentPoly.gen(chi, 1)
    assert y2 * y1 == (y1 * y2).scale(Q)
    assert y1 * LaurentPoly.one(chi) == y1


def test_inverse_pair_product_is_scalar():
    chi = Bicharacter([[q(0), q(-1)], [q(1), q(0)]])
    a = LaurentPoly.monomial(chi, (-1, 1))
    b = LaurentPoly.monomial(chi, (1, -1))
    prod = a * b
    assert list(prod.terms) == [(0, 0)]
    assert prod.terms[(0, 0)] == chi((-1, 1), (1, -1))


@given(vec3, vec3, vec3)
def test_bicharacter_identities(f, g, h):
    chi = chi3()
    zero = (0, 0, 0)
    assert chi(f, zero).is_one() and chi(zero, g).is_one()
    fg = tuple(a + b for a, b in zip(f, g))
    gh = tuple(a + b for a, b in zip(g, h))
    assert chi(fg, h) == chi(f, h) * chi(g, h)
    assert chi(f, gh) == chi(f, g) * chi(f, h)


@given(vec3, vec3, vec3)
def test_torus_associative(f, g, h):
    chi = chi3()
    a, b, c = (LaurentPoly.monomial(chi, v, Q + 1) for v in (f, g, h))
    assert (a * b) * c == a * (b * c)


@given(vec3)
def test_unit_inverse(f):
    chi = chi3()
    a = LaurentPoly.monomial(chi, f, Q - 3)
    assert a * a.inverse() == LaurentPoly.one(chi)
    assert a.inverse() * a == LaurentPoly.one(chi)


def test_non_unit_inverse():
    chi = chi3()
    with pytest.raises(NonUnitInversion):
        (LaurentPoly.gen(chi, 0) + LaurentPoly.one(chi)).inverse()


def test_ltq_examples():
    chi = chi3()
    y1inv = LaurentPoly.gen(chi, 0, -1)
    a = y1inv * LaurentPoly.gen(chi, 1) + y1inv.scale((ONE - Q).inverse())
    c, f = ltq(a)
    assert f == (-1, 1, 0) and c == ONE
    m = LaurentPoly.monomial(chi, (2, -1, 1), Q)
    assert ltq(m) == (Q, (2, -1, 1))
    b = LaurentPoly.gen(chi, 0) + LaurentPoly.gen(chi, 0, 2).scale(Q)
    lhs = b * LaurentPoly.gen(chi, 1) + LaurentPoly.gen(chi, 0, -3)
    cb, fb = ltq(b)
    assert ltq(lhs)[1] == (fb[0], 1, 0)
    with pytest.raises(ZeroElement):
        ltq(LaurentPoly(chi, {}))


def test_affine_embedding_is_identity():
    P = quantum_affine_space(4)
    s = seq_of(P)
    imgs = embed_x_to_y(P, s)
    assert all(imgs[k] == LaurentPoly.gen(imgs[0].chi, k) for k in range(4))


def test_example_x2_image():
    P = example_3_2(1)
    s = seq_of(P)
    imgs = embed_x_to_y(P, s)
    chi = imgs[0].chi
    y1inv = LaurentPoly.gen(chi, 0, -1)
    want = y1inv * LaurentPoly.gen(chi, 1) + y1inv.scale((ONE - Q).inverse())
    assert imgs[1] == want


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_example_x3_image(r):
    P = example_3_2(r)
    s = seq_of(P)
    imgs = embed_x_to_y(P, s)
    chi = imgs[0].chi
    y2inv = LaurentPoly.gen(chi, 1, -1)
    d3 = PBWPoly.monomial((0, r + 1, 0), (Q ** (r + 1) - ONE).inverse())
    want = y2inv * (LaurentPoly.gen(chi, 2) + image_of(d3, imgs, chi))
    assert imgs[2] == want


@pytest.mark.parametrize("P", standard_catalog(), ids=lambda P: P.name)
def test_embedding_suite(P):
    s = seq_of(P)
    imgs = embed_x_to_y(P, s)
    checks = verify_embedding(P, imgs, s, max_degree=4)
    assert checks.ok, [(c.name, c.detail) for c in checks.failures()]


def test_relation_counts():
    for P, n in ((quantum_plane(), 1), (example_3_2(1), 3), (quantum_matrices_2x2(), 6)):
        s = seq_of(P)
        checks = verify_embedding(P, embed_x_to_y(P, s), None, max_degree=1)
        assert sum(c.name.startswith("relation") for c in checks) == n


def test_graded_component_single_degree():
    chi = chi3()
    g0 = (1, 0, -1)
    values = []
    for f in [(0, 0, 0), (1, 2, 0), (0, 1, 3)]:
        h = tuple(a + b for a, b in zip(f, g0))
        values.append((f, LaurentPoly.monomial(chi, h, Q)))
    assert graded_degrees(values) == [g0]
    assert graded_component(values, g0) == values
    other = graded_component(values, (0, 0, 0))
    assert all(a.is_zero() for _, a in other)
    zero = [(f, LaurentPoly(chi, {})) for f, _ in values]
    assert all(a.is_zero() for _, a in graded_component(zero, g0))


def test_graded_components_sum_back():
    P = uqplus_sl3()
    s = seq_of(P)
    imgs = embed_x_to_y(P, s)
    chi = imgs[0].chi
    values = [((1, 0, 0), imgs[2] * imgs[0] - imgs[0] * imgs[2])]
    total = LaurentPoly(chi, {})
    for g in graded_degrees(values):
        total = total + graded_component(values, g)[0][1]
    assert total == values[0][1]


def test_decompose_examples():
    s = seq_of(example_3_2(1))
    assert decompose_exponent((1, 1, 1), s) == ((0, 0, 0), (1,))
    assert decompose_exponent((2, 1, 0), s) == ((2, 1, 0), (0,))
    assert decompose_exponent((2, 2, 1), s) == ((1, 1, 0), (1,))


def brute_force_decompositions(f, s):
    bars = top_bars(s)
    out = []
    for c in itertools.product(range(max(f) + 1), repeat=len(bars)):
        g = list(f)
        for ci, b in zip(c, bars):
            g = [a - ci * v for a, v in zip(g, b)]
        if in_delta(g, s):
            out.append((tuple(g), c))
    return out


@pytest.mark.parametrize(
    "P", [p for p in standard_catalog() if p.N <= 4], ids=lambda P: P.name
)
def test_decompose_unique(P):
    s = seq_of(P)
    for f in itertools.product(range(3), repeat=P.N):
        sols = brute_force_decompositions(f, s)
        assert sols == [decompose_exponent(f, s)]
