"""The maximal diagonal torus H_max as an integer character lattice.

A diagonal element psi of (K^x)^N acts by x^f -> psi^f x^f. It preserves the
relations iff psi^v = 1 for every v in the relation lattice spanned by

    e_k + e_{j_k} - m_k,   k in D' = {k : delta_k != 0},

where delta_k(x_{j_k}) != 0 and x^{m_k} is one of its monomials. Characters
of H_max are Z^N modulo the saturation of that lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import intlinalg as il
from .errors import EnumerationCapExceeded, NotHomogeneous, ZeroElement
from .pbw import PBWPoly, revlex_key
from .scalars import MonomialScalar, is_root_of_unity

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class NotFound:
    """Failed witness search; falsy.

    ``proven`` is set when the q-exponent system itself is infeasible. Every
    q-adic valuation is a homomorphism K^x -> Z, so then no psi in H_max with
    the prescribed entries exists at all, monomial or not.
    """

    reason: str
    proven: bool = False

    def __bool__(self):
        return False


@dataclass(frozen=True)
class RelationLattice:
    N: int
    rows: tuple
    choices: tuple  # (k, j_k, m_k), 0-based
    saturation: tuple  # HNF rows
    smith: tuple
    rank: int

    @property
    def hmax_rank(self) -> int:
        return self.N - self.rank

    @property
    def is_saturated(self) -> bool:
        return all(d == 1 for d in self.smith)

    def cocharacter_basis(self):
        """Rows u_1..u_n with alpha -> (alpha^{u_1}, ..., alpha^{u_N}) in H_max."""
        return il.integer_kernel(self.saturation, self.N) if self.saturation else [
            [int(i == j) for j in range(self.N)] for i in range(self.N)
        ]

    def coset(self, v):
        return il.reduce_mod(v, self.saturation)

    def to_json(self) -> dict:
        return {
            "rows": [list(r) for r in self.rows],
            "choices": [{"k": k + 1, "j": j + 1, "m": list(m)} for k, j, m in self.choices],
            "saturation": [list(r) for r in self.saturation],
            "smith_diagonal": list(self.smith),
            "lattice_rank": self.rank,
            "hmax_rank": self.hmax_rank,
            "cocharacter_basis": [list(r) for r in self.cocharacter_basis()],
        }


def admissible_choices(P):
    """For each k in D', the list of admissible (j_k, m_k)."""
    out = {}
    for (k, j), p in P.delta_items():
        out.setdefault(k, [])
        for f in sorted(p.terms, key=revlex_key):
            out[k].append((j, f))
    return out


def _row(N, k, j, m):
    v = [-a for a in m]
    v[k] += 1
    v[j] += 1
    return tuple(v)


def lattice_from_choices(N, choices) -> RelationLattice:
    rows = tuple(_row(N, k, j, m) for k, j, m in choices)
    sat = tuple(tuple(r) for r in il.saturation(rows, N))
    smith = tuple(il.smith_diagonal(rows))
    return RelationLattice(N, rows, tuple(choices), sat, smith, len(smith))


def relation_lattice(P, policy=None) -> RelationLattice:
    """Default policy: smallest j_k, then the reverse-lex least monomial.

    ``policy`` may map k to a chosen (j, m).
    """
    adm = admissible_choices(P)
    choices = []
    for k in sorted(adm):
        if policy is not None and k in policy:
            j, m = policy[k]
        else:
            j, m = adm[k][0]
        choices.append((k, j, tuple(m)))
    return lattice_from_choices(P.N, choices)


def character(psi, v) -> MonomialScalar:
    """psi^v = prod psi_i^{v_i}."""
    c = Fraction(1)
    e = 0
    for p, a in zip(psi, v):
        if a:
            c *= p.c**a
            e += p.e * a
    return MonomialScalar(c, e)


def torus_membership(psi, L: RelationLattice) -> bool:
    return all(character(psi, v).is_one() for v in L.saturation)


def degree_class(f, L: RelationLattice):
    return L.coset(f)


def homogeneity_class(a: PBWPoly, L: RelationLattice):
    """Common coset of all term exponents of a modulo the saturation."""
    if a.is_zero():
        raise ZeroElement("homogeneity of zero")
    classes = {L.coset(f) for f in a.terms}
    if len(classes) != 1:
        raise NotHomogeneous(f"{a} mixes {len(classes)} degree classes")
    return classes.pop()


def is_homogeneous(a: PBWPoly, L: RelationLattice) -> bool:
    if a.is_zero():
        return True
    return len({L.coset(f) for f in a.terms}) == 1


def choice_independence(P, cap: int = DEFAULT_CAP) -> bool:
    adm = admissible_choices(P)
    ks = sorted(adm)
    total = 1
    for k in ks:
        total *= len(adm[k])
    if total > cap:
        raise EnumerationCapExceeded(f"{total} choice combinations exceed cap {cap}")
    ref = None
    for combo in itertools.product(*(adm[k] for k in ks)):
        L = lattice_from_choices(P.N, [(k, j, m) for k, (j, m) in zip(ks, combo)])
        if ref is None:
            ref = L.saturation
        elif L.saturation != ref:
            return False
    return True


def find_h_element(k: int, P, L: Optional[RelationLattice] = None, max_sign_n: int = 12):
    """Search psi = (+-q^{a_i}) with psi_j = lambda_{kj} (j < k), psi in H_max,
    psi_k not a root of unity. Returns a tuple or a NotFound."""
    if L is None:
        L = relation_lattice(P)
    return solve_torus_element(P.N, L, {j: P.lam[k][j] for j in range(k)}, k, max_sign_n)


def solve_torus_element(N, L, fixed, k, max_sign_n=12):
    """psi in H_max with prescribed entries ``fixed`` and psi_k of infinite order."""
    free = [i for i in range(N) if i not in fixed]
    V = [list(v) for v in L.saturation]

    # exponent part: sum_i a_i v_i = 0
    A = [[v[i] for i in free] for v in V]
    b = [-sum(v[j] * fixed[j].e for j in fixed) for v in V]
    sol, ker = il.solve_integer(A, b, len(free)) if V else ([0] * len(free), [
        [int(i == j) for j in range(len(free))] for i in range(len(free))
    ])
    if sol is None:
        return NotFound("the q-exponent equations have no integer solution", proven=True)
    pos = free.index(k)
    if sol[pos] == 0:
        cands = [r for r in ker if r[pos] != 0]
        if not cands:
            return NotFound(f"every monomial solution has psi_{k + 1} = +-1")
        r = min(cands, key=lambda r: (abs(r[pos]), [abs(x) for x in r]))
        if r[pos] < 0:
            r = [-x for x in r]
        sol = [a + c for a, c in zip(sol, r)]

    # sign part: prod c_i^{v_i} = 1
    def ok(signs):
        psi = _assemble(N, fixed, free, sol, signs)
        return all(character(psi, v).is_one() for v in V), psi

    if len(free) <= max_sign_n:
        sign_iter = itertools.product((1, -1), repeat=len(free))
    else:
        sign_iter = iter([(1,) * len(free)])
    for signs in sign_iter:
        good, psi = ok(signs)
        if good and not is_root_of_unity(psi[k]):
            return psi
    return NotFound("no sign pattern satisfies the constant-part equations")


def _assemble(N, fixed, free, exps, signs):
    psi = [None] * N
    for j, v in fixed.items():
        psi[j] = v
    for i, a, s in zip(free, exps, signs):
        psi[i] = MonomialScalar(s, a)
    return tuple(psi)
