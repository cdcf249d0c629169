import itertools

from hypothesis import given, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from cgl import intlinalg as il

entries = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=4, max_cols=5):
    n = draw(st.integers(1, max_cols))
    m = draw(st.integers(1, max_rows))
    return [draw(st.lists(entries, min_size=n, max_size=n)) for _ in range(m)], n


def sympy_invariants(rows):
    S = smith_normal_form(Matrix(rows), domain=ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)


def matvec(A, v):
    return [sum(a * b for a, b in zip(r, v)) for r in A]


def test_smith_fixed_example():
    # e1 + e2 and e1 - 2 e2 + e3: saturated, invariants 1, 1
    assert il.smith_diagonal([[1, 1, 0], [1, -2, 1]]) == [1, 1]
    assert il.smith_diagonal([[2, 0], [0, 4]]) == [2, 4]


@given(matrices())
def test_smith_matches_sympy(data):
    A, _ = data
    assert sorted(il.smith_diagonal(A)) == sympy_invariants(A)


@given(matrices())
def test_rank_matches_sympy(data):
    A, _ = data
    assert il.rank(A) == Matrix(A).rank()


@given(matrices())
def test_kernel(data):
    A, n = data
    K = il.integer_kernel(A, n)
    for k in K:
        assert not any(matvec(A, k))
    assert len(K) == n - Matrix(A).rank()
    if K:
        # a kernel lattice is saturated
        assert all(d == 1 for d in il.smith_diagonal(K))


@given(matrices())
def test_saturation(data):
    A, n = data
    S = il.saturation(A, n)
    nz = [r for r in A if any(r)]
    if not nz:
        assert S == []
        return
    for r in nz:
        assert il.in_lattice(r, S)
    assert len(S) == Matrix(A).rank()
    assert all(d == 1 for d in il.smith_diagonal(S))
    # saturation is idempotent
    assert il.same_lattice(il.saturation(S, n), S)


@given(matrices(), st.lists(entries, min_size=5, max_size=5))
def test_reduce_mod_is_canonical(data, v):
    A, n = data
    H = il.hnf(A)
    v = v[:n]
    r = il.reduce_mod(v, H)
    for row in H:
        w = [a + 3 * b for a, b in zip(v, row)]
        assert il.reduce_mod(w, H) == r
    diff = [a - b for a, b in zip(v, r)]
    assert il.in_lattice(diff, H)


@given(matrices(max_rows=2, max_cols=3), st.lists(entries, min_size=2, max_size=2))
def test_solve_integer_against_brute_force(data, b):
    A, n = data
    b = b[: len(A)]
    sol, ker = il.solve_integer(A, b, n)
    box = range(-6, 7)
    brute = any(matvec(A, x) == b for x in itertools.product(box, repeat=n))
    if sol is not None:
        assert matvec(A, sol) == b
        for k in ker:
            assert not any(matvec(A, k))
    else:
        assert not brute
