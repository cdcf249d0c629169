import pytest

from cgl.cgl_verify import (
    CGL,
    NOT_CGL,
    reflect_poly,
    reversed_presentation,
    support_condition,
    verify_cgl,
    verify_symmetric,
)
from cgl.checks import FAIL, PASS, UNVERIFIED
from cgl.errors import NotSymmetric
from cgl.pbw import PBWPoly, multiply
from cgl.presentation import (
    example_3_2,
    make_presentation,
    quantum_affine_space,
    quantum_matrices_2x2,
    quantum_plane,
    standard_catalog,
    two_monomial_synthetic,
    uqplus_sl3,
)
from cgl.scalars import MonomialScalar, RationalFunction

q = MonomialScalar.q
SYMMETRIC = [quantum_plane(), quantum_affine_space(1), quantum_affine_space(3), quantum_matrices_2x2(), uqplus_sl3()]


def strip(P):
    return P.__class__(P.name, P.N, P.lam, P.delta, None, None, P.nilpotence_bound)


@pytest.mark.parametrize("P", standard_catalog(), ids=lambda P: P.name)
def test_catalog_certified(P):
    cert = verify_cgl(P)
    assert cert.status == CGL, cert.reason
    assert set(cert.witness_source.values()) == {"supplied"}
    assert all(c.status == PASS for c in cert.checks)


@pytest.mark.parametrize("P", standard_catalog(), ids=lambda P: P.name)
def test_catalog_certified_by_search(P):
    cert = verify_cgl(strip(P))
    assert cert.status == CGL, cert.reason
    assert set(cert.witness_source.values()) <= {"found"}


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_example_lambda(r):
    cert = verify_cgl(example_3_2(r))
    assert cert.lam[1] == q(-1) and cert.lam[2] == q(r + 1)
    assert cert.nilpotency[(1, 0)] == 2
    assert cert.nilpotency[(2, 0)] == 2


def test_root_of_unity_lambda_rejected():
    P = make_presentation("commutative", 2, {(1, 0): q(0)}, {}, h=[(q(1), q(0)), (q(0), q(0))])
    cert = verify_cgl(P)
    assert cert.status == NOT_CGL
    assert "root of unity" in cert.reason


def test_wrong_witness_rejected():
    P = example_3_2(1)
    bad = list(P.h)
    bad[2] = (q(1), q(1), q(1))
    P2 = P.__class__(P.name, 3, P.lam, P.delta, tuple(bad), None, 0)
    assert verify_cgl(P2).status == NOT_CGL


def test_overlap_ambiguity_rejected():
    cert = verify_cgl(two_monomial_synthetic())
    assert cert.status == NOT_CGL
    assert cert.checks[0].name == "ore_consistency" and cert.checks[0].status == FAIL


def test_small_bound_is_unverified():
    cert = verify_cgl(example_3_2(1), bound=1)
    assert cert.status == UNVERIFIED
    assert not cert.ok


def test_inhomogeneous_derivation_rejected():
    # delta_2(x1) = 1 + x1: both monomials cannot share a degree class
    d = PBWPoly.one(2) + PBWPoly.gen(2, 0)
    P = make_presentation("inhom", 2, {(1, 0): q(1)}, {(1, 0): d})
    assert verify_cgl(P).status == NOT_CGL


@pytest.mark.parametrize("P", SYMMETRIC, ids=lambda P: P.name)
def test_symmetric(P):
    rep = verify_symmetric(P)
    assert rep.symmetric and rep.status == PASS, rep.reasons
    rep2 = verify_symmetric(strip(P))
    assert rep2.symmetric, rep2.reasons


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_example_not_symmetric(r):
    P = example_3_2(r)
    assert support_condition(P) == []
    rep = verify_symmetric(P)
    assert not rep.symmetric
    assert rep.status == FAIL
    assert any("h'_1" in s for s in rep.reasons)


def test_support_condition_failure():
    # delta_3(x1) = x1-free but uses x3 is impossible; use delta_3(x2) = x1
    P = make_presentation(
        "supp", 3, {(1, 0): q(1), (2, 0): q(0), (2, 1): q(1)}, {(2, 1): PBWPoly.gen(3, 0)}
    )
    assert support_condition(P) == [(2, 1)]
    rep = verify_symmetric(P)
    assert not rep.symmetric
    with pytest.raises(NotSymmetric):
        reversed_presentation(P)


def test_reverse_quantum_plane():
    R = reversed_presentation(quantum_plane())
    assert R.lam[1][0] == q(-1)
    assert R.delta == ()


def test_reverse_quantum_matrices():
    P = quantum_matrices_2x2()
    R = reversed_presentation(P)
    # z1 = x4, ..., z4 = x1: delta'_4(z1) = -lambda_14 (q^-1 - q) z3 z2
    [(kj, p)] = R.delta_items()
    assert kj == (3, 0)
    c = -(P.lam[0][3].to_rf()) * (RationalFunction.monomial(1, -1) - RationalFunction.monomial(1, 1))
    assert p == PBWPoly.monomial((0, 1, 1, 0), c)


@pytest.mark.parametrize("P", SYMMETRIC, ids=lambda P: P.name)
def test_reversed_is_cgl(P):
    R = reversed_presentation(P)
    assert verify_cgl(R).status == CGL
    assert verify_cgl(strip(R)).status == CGL


@pytest.mark.parametrize("P", SYMMETRIC, ids=lambda P: P.name)
def test_reverse_twice(P):
    RR = reversed_presentation(reversed_presentation(P))
    assert RR.lam == P.lam
    assert RR.delta == P.delta
    assert RR.h == P.h and RR.h_prime == P.h_prime


@pytest.mark.parametrize("P", SYMMETRIC, ids=lambda P: P.name)
def test_reflection_is_multiplicative(P):
    R = reversed_presentation(P)
    N = P.N
    x = [PBWPoly.gen(N, i) for i in range(N)]
    for k in range(N):
        for j in range(N):
            ab = multiply(x[k], x[j], P)
            lhs = reflect_poly(ab, P, R)
            rhs = multiply(reflect_poly(x[k], P, R), reflect_poly(x[j], P, R), R)
            assert lhs == rhs


def test_certificate_json_shape():
    d = verify_cgl(example_3_2(1)).to_json()
    assert d["status"] == CGL
    assert {w["k"] for w in d["witnesses"]} == {1, 2, 3}
