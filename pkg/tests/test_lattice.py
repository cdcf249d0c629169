import pytest
from hypothesis import given, strategies as st

from cgl.cgl_verify import is_diag_automorphism
from cgl.errors import EnumerationCapExceeded, NotHomogeneous, ZeroElement
from cgl.lattice import (
    NotFound,
    character,
    choice_independence,
    find_h_element,
    homogeneity_class,
    is_homogeneous,
    relation_lattice,
    torus_membership,
)
from cgl.pbw import PBWPoly
from cgl.presentation import (
    example_3_2,
    make_presentation,
    quantum_affine_space,
    quantum_matrices_2x2,
    quantum_plane,
    standard_catalog,
    two_monomial_synthetic,
)
from cgl.scalars import ONE, Q, MonomialScalar

from .strategies import plus_minus_q

q = MonomialScalar.q
ALL = standard_catalog() + [two_monomial_synthetic()]


def strip(P):
    return P.__class__(P.name, P.N, P.lam, P.delta, None, None, 0)


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_example_lattice(r):
    L = relation_lattice(example_3_2(r))
    assert set(L.rows) == {(1, 1, 0), (1, -r, 1)}
    assert L.rank == 2 and L.hmax_rank == 1
    [u] = L.cocharacter_basis()
    # alpha -> (alpha, alpha^-1, alpha^(-r-1)) up to the sign of the generator
    assert u in ([1, -1, -r - 1], [-1, 1, r + 1])


def test_affine_lattice_empty():
    L = relation_lattice(quantum_affine_space(4))
    assert L.rows == () and L.hmax_rank == 4
    assert sorted(map(tuple, L.cocharacter_basis()), reverse=True) == [
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)
    ]


def test_quantum_matrices_lattice():
    L = relation_lattice(quantum_matrices_2x2())
    assert L.rows == ((1, -1, -1, 1),)
    assert L.hmax_rank == 3


@pytest.mark.parametrize("r", [0, 1, 2])
def test_membership_examples(r):
    L = relation_lattice(example_3_2(r))
    assert torus_membership((q(1), q(-1), q(-r - 1)), L)
    assert torus_membership((q(0),) * 3, L)
    assert not torus_membership((q(1), q(0), q(0)), L)
    assert is_diag_automorphism((q(2), q(-2), q(-2 * r - 2)), example_3_2(r))
    assert not is_diag_automorphism((q(1), q(1), q(1)), example_3_2(r))


def test_homogeneity_examples():
    P = example_3_2(1)
    L = relation_lattice(P)
    y2 = PBWPoly.monomial((1, 1, 0)) + PBWPoly.constant(3, (ONE - Q).inverse())
    assert homogeneity_class(y2, L) == L.coset((0, 0, 0))
    with pytest.raises(NotHomogeneous):
        homogeneity_class(PBWPoly.gen(2, 0) + PBWPoly.gen(2, 1), relation_lattice(quantum_plane()))
    with pytest.raises(ZeroElement):
        homogeneity_class(PBWPoly.zero(3), L)
    assert is_homogeneous(PBWPoly.zero(3), L)


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_d3_degree_class(r):
    # d_3 is a multiple of x2^(r+1) and has the class of x1 x2 x3
    L = relation_lattice(example_3_2(r))
    assert L.coset((0, r + 1, 0)) == L.coset((1, 1, 1))


@pytest.mark.parametrize("P", ALL, ids=lambda P: P.name)
def test_choice_independence(P):
    assert choice_independence(P)


def test_synthetic_has_two_choices():
    from cgl.lattice import admissible_choices, lattice_from_choices
    from cgl.intlinalg import smith_diagonal

    P = two_monomial_synthetic()
    adm = admissible_choices(P)
    assert len(adm[2]) == 2
    sats = []
    for j, m in adm[2]:
        L = lattice_from_choices(3, [(1, 0, (0, 0, 0)), (2, j, m)])
        sats.append(L.saturation)
        assert smith_diagonal(L.rows) == [1, 1]
    assert sats[0] == sats[1]


def test_choice_cap():
    with pytest.raises(EnumerationCapExceeded):
        choice_independence(two_monomial_synthetic(), cap=1)


def test_find_h_affine():
    psi = find_h_element(1, strip(quantum_affine_space(3)))
    assert psi[0] == q(-1) and psi[1] == q(1)


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_find_h_example(r):
    P = strip(example_3_2(r))
    L = relation_lattice(P)
    psi = find_h_element(2, P, L)
    assert psi == (q(-1), q(1), q(r + 1))
    assert torus_membership(psi, L)
    assert (psi[0] * psi[1]).is_one()
    assert psi[0] * psi[2] == psi[1] ** r


def test_find_h_forced_root_of_unity():
    # x2 x1 = x1 x2 + 1: psi_1 = 1 and psi_1 psi_2 = 1 force psi_2 = 1
    P = make_presentation("forced", 2, {(1, 0): q(0)}, {(1, 0): PBWPoly.one(2)})
    res = find_h_element(1, P)
    assert isinstance(res, NotFound) and not res


@pytest.mark.parametrize("P", standard_catalog(), ids=lambda P: P.name)
def test_hmax_rank_counts_vanishing_derivations(P):
    n = sum(1 for k in range(P.N) if not P.delta_nonzero(k))
    assert relation_lattice(P).hmax_rank == n


@pytest.mark.parametrize("P", standard_catalog(), ids=lambda P: P.name)
def test_supplied_witnesses_in_hmax(P):
    L = relation_lattice(P)
    for psi in (P.h or ()) + (P.h_prime or ()):
        assert torus_membership(psi, L)


@pytest.mark.parametrize("P", standard_catalog(), ids=lambda P: P.name)
@given(data=st.data())
def test_membership_iff_automorphism(P, data):
    psi = tuple(data.draw(plus_minus_q) for _ in range(P.N))
    assert torus_membership(psi, relation_lattice(P)) == is_diag_automorphism(psi, P)


@pytest.mark.parametrize("P", standard_catalog(), ids=lambda P: P.name)
@given(data=st.data())
def test_cocharacters_land_in_hmax(P, data):
    L = relation_lattice(P)
    basis = L.cocharacter_basis()
    coeffs = [data.draw(st.integers(-3, 3)) for _ in basis]
    u = [sum(c * row[i] for c, row in zip(coeffs, basis)) for i in range(P.N)]
    psi = tuple(q(a) for a in u)
    assert torus_membership(psi, L)
    assert all(character(psi, v).is_one() for v in L.rows)
