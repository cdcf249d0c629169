"""Exact integer linear algebra on lists of Python ints.

FLINT supplies Hermite and Smith normal forms but no unimodular transforms,
so kernels and integer solving use a small extended row reduction here.
"""

from __future__ import annotations

import flint


def hnf(rows, ncols=None):
    """Row-style Hermite normal form with zero rows dropped."""
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    M = flint.fmpz_mat(rows).hnf()
    out = [[int(v) for v in r] for r in M.tolist()]
    return [r for r in out if any(r)]


def smith_diagonal(rows):
    """Nonzero invariant factors of the row matrix."""
    rows = [list(map(int, r)) for r in rows]
    if not rows or not any(any(r) for r in rows):
        return []
    S = flint.fmpz_mat(rows).snf()
    n = min(S.nrows(), S.ncols())
    return [abs(int(S[i, i])) for i in range(n) if S[i, i] != 0]


def rank(rows) -> int:
    return len(smith_diagonal(rows))


def _echelon_with_transform(A):
    """Unimodular U with U*A in row echelon form; returns (UA, U)."""
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        piv = [i for i in range(r, m) if H[i][c] != 0]
        if not piv:
            continue
        while True:
            piv = [i for i in range(r, m) if H[i][c] != 0]
            best = min(piv, key=lambda i: abs(H[i][c]))
            H[r], H[best] = H[best], H[r]
            U[r], U[best] = U[best], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    t = H[i][c] // H[r][c]
                    H[i] = [a - t * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - t * b for a, b in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        r += 1
        if r == m:
            break
    return H, U


def integer_kernel(A, ncols):
    """Z-basis (as rows, in HNF) of {x in Z^ncols : A x = 0}."""
    A = [list(map(int, r)) for r in A if any(r)]
    if not A:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    At = [[A[i][j] for i in range(len(A))] for j in range(ncols)]
    H, U = _echelon_with_transform(At)
    ker = [U[i] for i in range(ncols) if not any(H[i])]
    return hnf(ker) if ker else []


def saturation(rows, ncols):
    """Basis (HNF) of (span_Q rows) intersected with Z^ncols."""
    rows = [list(map(int, r)) for r in rows if any(r)]
    if not rows:
        return []
    K = integer_kernel(rows, ncols)
    if not K:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    return integer_kernel(K, ncols)


def same_lattice(A, B) -> bool:
    return hnf(A) == hnf(B)


def reduce_mod(v, basis_hnf):
    """Canonical representative of v modulo the lattice with HNF basis."""
    v = list(v)
    for row in basis_hnf:
        c = next(i for i, a in enumerate(row) if a)
        p = row[c]
        t = v[c] // p
        if t:
            v = [a - t * b for a, b in zip(v, row)]
    return tuple(v)


def in_lattice(v, basis_hnf) -> bool:
    return not any(reduce_mod(v, basis_hnf))


def solve_integer(A, b, ncols):
    """One integer solution x of A x = b and a kernel basis, or (None, kernel)."""
    aug = [list(r) + [-bi] for r, bi in zip(A, b)]
    K = integer_kernel(aug, ncols + 1) if aug else [
        [int(i == j) for j in range(ncols + 1)] for i in range(ncols + 1)
    ]
    if not K:
        return None, []
    # Euclid on the last column so that one row carries its gcd
    rows = [list(r) for r in K]
    m = len(rows)
    while True:
        nz = [i for i in range(m) if rows[i][-1] != 0]
        if len(nz) <= 1:
            break
        best = min(nz, key=lambda i: abs(rows[i][-1]))
        for i in nz:
            if i != best:
                t = rows[i][-1] // rows[best][-1]
                rows[i] = [a - t * c for a, c in zip(rows[i], rows[best])]
    nz = [i for i in range(m) if rows[i][-1] != 0]
    kernel = [row[:-1] for i, row in enumerate(rows) if i not in nz]
    kernel = hnf(kernel) if kernel else []
    if not nz or abs(rows[nz[0]][-1]) != 1:
        return None, kernel
    sol = rows[nz[0]]
    if sol[-1] == -1:
        sol = [-a for a in sol]
    return sol[:-1], kernel
