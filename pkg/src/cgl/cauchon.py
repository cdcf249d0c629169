"""Deleting derivations.

Level l+1 has generators x_j^{(l+1)}; relations with k <= l keep their
derivations, those with k > l are pure twists. The map to level l is

    x_j^{(l)} = sum_{m >= 0} (1 - lambda_l)^{-m} / [m]_{lambda_l}!
                * lambda_{lj}^{-m} delta_l^m(x_j) (x_l)^{-m}          (j < l)

written in level-(l+1) symbols, and x_j^{(l)} = x_j^{(l+1)} for j >= l.
The final tuple is x_bar_j = x_j^{(2)}.

Two arenas: symbolic levels for any CGL presentation (flattened back to the
x's when every inversion is of a monomial), and the quantum torus T_q for the
reversed presentation of a symmetric extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import flint

from .checks import CheckList
from .errors import BoundExceeded, CGLError, NonUnitInversion, NotSymmetric
from .lattice import relation_lattice
from .pbw import PBWPoly, apply_delta, engine, substitute
from .presentation import OrePresentation
from .quantum_torus import LaurentPoly, embed_x_to_y, torus_for
from .scalars import ONE, MonomialScalar, q_int_factorial


def theta_coefficients(lam_l: MonomialScalar, M: int):
    """(1 - lambda)^{-m} / [m]_lambda! for m < M."""
    base = (ONE - lam_l.to_rf()).inverse()
    return [base**m / q_int_factorial(lam_l, m) for m in range(M)]


@dataclass
class CauchonState:
    """Expressions of x_j^{(level)} in level-(level+1) symbols (1-based level)."""

    level: int
    N: int
    expressions: list
    nilpotency: dict = field(default_factory=dict)  # j -> terms used at this step

    def to_json(self):
        return {
            "level": self.level,
            "expressions": [_tagged(e, self.level + 1) for e in self.expressions],
        }


def _tagged(e: PBWPoly, lvl: int) -> str:
    return str(e).replace("x", f"x^({lvl})_") if e is not None else None


def initial_state(P: OrePresentation) -> CauchonState:
    N = P.N
    return CauchonState(N + 1, N, [PBWPoly.gen(N, j) for j in range(N)])


def theta_step(state: CauchonState, P: OrePresentation, lam, bound: Optional[int] = None) -> CauchonState:
    """From level l+1 = state.level to level l, using delta_l.

    ``lam`` maps 0-based k to lambda_k."""
    l = state.level - 1
    if l < 2:
        raise ValueError("no theta step below level 2")
    N = P.N
    l0 = l - 1
    bound = bound or P.nilpotence_bound
    lam_l = lam[l0]
    exprs = []
    used = {}
    for j in range(N):
        if j >= l0:
            exprs.append(PBWPoly.gen(N, j))
            continue
        terms = [PBWPoly.gen(N, j)]
        a = terms[0]
        for _ in range(bound):
            a = apply_delta(l0, a, P)
            if a.is_zero():
                break
            terms.append(a)
        else:
            raise BoundExceeded(f"delta_{l}^m(x{j + 1}) nonzero for all m <= {bound}")
        coeffs = theta_coefficients(lam_l, len(terms))
        lam_lj_inv = P.lam[l0][j].inverse().to_rf()
        out = PBWPoly.zero(N)
        for m, (t, c) in enumerate(zip(terms, coeffs)):
            inv = _append_inverse(t, l0, m)
            out = out + inv.scale(c * lam_lj_inv**m)
        used[j] = len(terms)
        exprs.append(out)
    return CauchonState(l, N, exprs, used)


def _append_inverse(a: PBWPoly, l0: int, m: int) -> PBWPoly:
    # a is supported on x_1..x_{l-1}, so a * x_l^{-m} is already normal-ordered
    if m == 0:
        return a
    out = {}
    for f, c in a.terms.items():
        g = list(f)
        g[l0] -= m
        out[tuple(g)] = c
    return PBWPoly(a.N, out, {l0})


def level_presentation(P: OrePresentation, level: int) -> OrePresentation:
    """R^{(level)}: derivations delta_k kept for k < level (1-based)."""
    keep = {kj: p for kj, p in P.delta_items() if kj[0] < level - 1}
    if len(keep) == len(P.delta):
        return P
    return P.with_delta(keep)


@dataclass
class PartialFlatten:
    """x_bar_j could only be rewritten down to level-``level`` symbols."""

    j: int
    level: int
    expression: PBWPoly
    reason: str

    def __str__(self):
        return f"PartialFlatten(level {self.level}: {_tagged(self.expression, self.level)}; {self.reason})"


@dataclass
class DeletingDerivationsResult:
    states: list  # CauchonState for levels N..2
    flattened: list  # PBWPoly or PartialFlatten per j

    @property
    def complete(self) -> bool:
        return not any(isinstance(v, PartialFlatten) for v in self.flattened)

    def level(self, l) -> CauchonState:
        for s in self.states:
            if s.level == l:
                return s
        raise KeyError(l)

    def to_json(self):
        return {
            "levels": [s.to_json() for s in self.states],
            "xbar": [str(v) for v in self.flattened],
            "complete": self.complete,
        }


def _monomial_inverse(a: PBWPoly, P: OrePresentation) -> PBWPoly:
    if not a.is_monomial():
        raise NonUnitInversion(f"{a} is not a scaled monomial")
    (f, c), = a.terms.items()
    eng = engine(P)
    acc = PBWPoly.one(a.N)
    for i in reversed(range(a.N)):
        for _ in range(abs(f[i])):
            acc = eng.multiply(acc, PBWPoly.gen(a.N, i, -1 if f[i] > 0 else 1))
    return acc.scale(c.inverse())


def run_deleting_derivations(P: OrePresentation, cert, bound: Optional[int] = None) -> DeletingDerivationsResult:
    N = P.N
    lam = cert.lam
    state = initial_state(P)
    states = []
    while state.level > 2:
        state = theta_step(state, P, lam, bound)
        states.append(state)
    by_level = {s.level: s for s in states}

    flattened = []
    for j in range(N):
        if N == 1:
            flattened.append(PBWPoly.gen(1, 0))
            continue
        expr = by_level[2].expressions[j]  # in level-3 symbols
        lvl = 3
        failure = None
        while lvl <= N:
            st = by_level[lvl]
            Pn = level_presentation(P, lvl + 1)
            try:
                mul = engine(Pn).multiply
                expr = substitute(
                    expr,
                    st.expressions,
                    mul,
                    PBWPoly.one(N),
                    lambda i, st=st, Pn=Pn: _monomial_inverse(st.expressions[i], Pn),
                )
            except CGLError as exc:
                failure = PartialFlatten(j, lvl, expr, str(exc))
                break
            lvl += 1
        flattened.append(failure if failure is not None else expr)
    return DeletingDerivationsResult(states, flattened)


# -- the reversed run inside T_q -------------------------------------------


def run_reversed_in_torus(P: OrePresentation, seq, sym, images=None, bound: Optional[int] = None):
    """x_bar'_k in T_q for a symmetric presentation.

    ``sym`` is the symmetry report supplying lambda'_j. The procedure runs on
    z_i = x_{N+1-i}; the delta of the reversed presentation at each level is
    recovered from the images themselves, delta(b) = z_l b - sigma(b) z_l.
    """
    if not sym.symmetric:
        raise NotSymmetric(f"{P.name} is not symmetric")
    N = P.N
    chi = torus_for(seq)
    X = images if images is not None else embed_x_to_y(P, seq, chi)
    bound = bound or P.nilpotence_bound
    r = lambda i: N - 1 - i  # noqa: E731
    Z = [X[r(a)] for a in range(N)]
    lam_z = [sym.lam_prime[r(a)] for a in range(N)]
    for l0 in range(N - 1, 0, -1):
        zl = Z[l0]
        zl_inv = zl.inverse()  # NonUnitInversion if zl is not a unit of T_q
        lam_l = lam_z[l0]
        new = list(Z)
        for j0 in range(l0):
            lam_lj = P.lam[r(l0)][r(j0)]  # lambda^rev_{l j}
            terms = [Z[j0]]
            D = Z[j0]
            m = 0
            while True:
                eig = (lam_l**m * lam_lj).to_rf()
                D = zl * D - (D * zl).scale(eig)
                m += 1
                if D.is_zero():
                    break
                if m >= bound:
                    raise BoundExceeded(f"reversed delta_{l0 + 1} not nilpotent within {bound}")
                terms.append(D)
            coeffs = theta_coefficients(lam_l, len(terms))
            acc = LaurentPoly._wrap(chi, {})
            inv_pow = LaurentPoly.one(chi)
            lam_inv = lam_lj.inverse().to_rf()
            for m, (t, c) in enumerate(zip(terms, coeffs)):
                acc = acc + (t * inv_pow).scale(c * lam_inv**m)
                inv_pow = inv_pow * zl_inv
            new[j0] = acc
        Z = new
    return [Z[r(k)] for k in range(N)]


def verify_theorem_rel(P: OrePresentation, seq, xbar_p, images=None) -> CheckList:
    N = P.N
    chi = xbar_p[0].chi
    X = images if images is not None else embed_x_to_y(P, seq, chi)
    Y = [LaurentPoly.gen(chi, k) for k in range(N)]
    out = CheckList()

    ok_a = True
    for k in range(N):
        pk = seq.p[k]
        want = Y[k] if pk is None else Y[pk].inverse() * Y[k]
        if xbar_p[k] != want:
            ok_a = False
    out.add("(a) x_bar'_k = y_p(k)^-1 y_k", ok_a)

    ok_b = True
    for k in range(N):
        prod = LaurentPoly.one(chi)
        for j in reversed(seq.chain(k)):
            prod = prod * xbar_p[j]
        if prod != Y[k]:
            ok_b = False
    out.add("(b) y_k = ordered product of x_bar' along the p-chain", ok_b)

    ok_c = True
    for j in range(N):
        for k in range(N):
            lhs = xbar_p[j] * xbar_p[k]
            rhs = (xbar_p[k] * xbar_p[j]).scale(P.lam[j][k])
            if lhs != rhs:
                ok_c = False
    out.add("(c) x_bar'_j x_bar'_k = lambda_jk x_bar'_k x_bar'_j", ok_c)

    ok_d = True
    for k in range(N):
        diff = xbar_p[k] - X[k]
        if any(f[i] for f in diff.terms for i in range(k, N)):
            ok_d = False
    out.add("(d) x_bar'_k - x_k involves only y_1..y_{k-1}", ok_d)

    units = all(x.is_monomial() for x in xbar_p)
    unimod = False
    if units:
        rows = [list(next(iter(x.terms))) for x in xbar_p]
        unimod = abs(int(flint.fmpz_mat(rows).det())) == 1
    out.add("(e) T'_Lambda = T_q (unit x_bar', unimodular exponent matrix)", units and unimod)
    return out


def eigenclass_check(P: OrePresentation, seq, xbar_p) -> bool:
    """x_bar'_k has the H_max degree class of x_k."""
    L = relation_lattice(P)
    for k, x in enumerate(xbar_p):
        if not x.is_monomial():
            return False
        g = next(iter(x.terms))
        f = [0] * P.N
        for i, gi in enumerate(g):
            for t, b in enumerate(seq.kbar(i)):
                f[t] += gi * b
        e = [0] * P.N
        e[k] = 1
        if L.coset(f) != L.coset(e):
            return False
    return True
