"""The sequence y_1..y_N of homogeneous prime elements of a CGL extension.

At step k only the current primes (those y_j, j < k, not yet extended) are
inspected. If delta_k kills all of them, y_k = x_k starts a new level set of
mu. Otherwise exactly one y_{j0} survives delta_k and

    d_k = delta_k(y_{j0}) / (alpha_{k j0} (lambda_k - 1)),   y_k = y_{j0} x_k - d_k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .checks import CheckList
from .errors import InvariantViolation, MultipleNonzeroDelta, NotCGL, NotHomogeneous
from .lattice import RelationLattice, is_homogeneous, relation_lattice
from .pbw import PBWPoly, apply_delta, leading_term, multiply
from .scalars import ONE, MonomialScalar

ONE_M = MonomialScalar(1, 0)


@dataclass
class PrimeSequence:
    N: int
    y: list
    d: dict  # k -> PBWPoly, defined iff p[k] is not None
    mu: list  # 0-based level-set labels, assigned in order of first appearance
    p: list  # predecessor or None (= -infinity)
    s: list  # successor or None (= +infinity)
    lam: list  # lambda_k
    alpha: list = field(default_factory=list)
    qmat: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(set(self.mu))

    def O_minus(self, k) -> int:
        n = 0
        while self.p[k] is not None:
            k = self.p[k]
            n += 1
        return n

    def chain(self, k):
        """[k, p(k), p^2(k), ...]."""
        out = [k]
        while self.p[out[-1]] is not None:
            out.append(self.p[out[-1]])
        return out

    def kbar(self, k):
        v = [0] * self.N
        for j in self.chain(k):
            v[j] = 1
        return tuple(v)

    def to_json(self) -> dict:
        inf = lambda v, s: s if v is None else v + 1  # noqa: E731
        return {
            "rank": self.rank,
            "y": [str(v) for v in self.y],
            "d": {str(k + 1): str(v) for k, v in sorted(self.d.items())},
            "mu": [m + 1 for m in self.mu],
            "p": [inf(v, "-inf") for v in self.p],
            "s": [inf(v, "+inf") for v in self.s],
            "O_minus": [self.O_minus(k) for k in range(self.N)],
            "kbar": [list(self.kbar(k)) for k in range(self.N)],
            "lambda": [str(v) for v in self.lam],
            "alpha": [[str(v) for v in row] for row in self.alpha],
            "q": [[str(v) for v in row] for row in self.qmat],
        }


def _alpha(lam, seq, k, j):
    a = ONE_M
    for m in seq.chain(j):
        a = a * lam[k][m]
    return a


def _fill_matrices(P, seq):
    N = P.N
    seq.alpha = [[_alpha(P.lam, seq, k, j) for j in range(N)] for k in range(N)]
    qm = []
    for j in range(N):
        row = []
        for k in range(N):
            v = ONE_M
            for a in seq.chain(j):
                for b in seq.chain(k):
                    v = v * P.lam[a][b]
            row.append(v)
        qm.append(row)
    seq.qmat = qm


def compute_prime_sequence(P, cert, lattice: Optional[RelationLattice] = None) -> PrimeSequence:
    if not cert.ok:
        raise NotCGL(f"{P.name} is not certified CGL: {cert.status} {cert.reason}")
    N = P.N
    L = lattice or cert.lattice or relation_lattice(P)
    seq = PrimeSequence(N, [], {}, [], [], [None] * N, [cert.lam[k] for k in range(N)])
    current: list = []
    fresh = 0
    for k in range(N):
        xk = PBWPoly.gen(N, k)
        nz = []
        for j in current:
            dv = apply_delta(k, seq.y[j], P)
            if not dv.is_zero():
                nz.append((j, dv))
        if not nz:
            seq.mu.append(fresh)
            fresh += 1
            seq.p.append(None)
            seq.y.append(xk)
            current.append(k)
            continue
        if len(nz) > 1:
            raise MultipleNonzeroDelta(
                f"delta_{k + 1} is nonzero on y_{[j + 1 for j, _ in nz]}"
            )
        j0, dv = nz[0]
        seq.mu.append(seq.mu[j0])
        seq.p.append(j0)
        seq.s[j0] = k
        alpha = _alpha(P.lam, seq, k, j0)
        div = alpha.to_rf() * (seq.lam[k].to_rf() - ONE)
        dk = dv.scale(div.inverse())
        yk = multiply(seq.y[j0], xk, P) - dk
        for label, el in (("d", dk), ("y", yk)):
            if not is_homogeneous(el, L):
                raise NotHomogeneous(f"{label}_{k + 1} = {el} is not homogeneous")
        seq.d[k] = dk
        seq.y.append(yk)
        current.remove(j0)
        current.append(k)
    _fill_matrices(P, seq)
    return seq


def verify_prime_sequence(P, seq: PrimeSequence, lattice: Optional[RelationLattice] = None) -> CheckList:
    N = P.N
    L = lattice or relation_lattice(P)
    out = CheckList()
    x = [PBWPoly.gen(N, i) for i in range(N)]
    y = seq.y
    later = lambda j, k: seq.s[j] is None or seq.s[j] > k  # noqa: E731

    for k in range(N):
        for j in range(k):
            lhs = multiply(y[k], y[j], P)
            rhs = multiply(y[j], y[k], P).scale(seq.qmat[k][j])
            out.add(f"y{k + 1}y{j + 1}=q{k + 1}{j + 1}y{j + 1}y{k + 1}", lhs == rhs)
    for k in range(N):
        for j in range(k):
            if later(j, k):
                lhs = multiply(y[j], x[k], P)
                rhs = multiply(x[k], y[j], P).scale(seq.alpha[k][j].inverse())
                out.add(f"y{j + 1}x{k + 1}=alpha^-1 x{k + 1}y{j + 1}", lhs == rhs)
                out.add(f"delta{k + 1}(y{j + 1})=0", apply_delta(k, y[j], P).is_zero())
    for k in range(N):
        c, f = leading_term(y[k])
        out.add(f"lt(y{k + 1})=x^kbar", c == ONE and f == seq.kbar(k), f"got {c}*x^{list(f)}")
        out.add(f"y{k + 1} homogeneous", is_homogeneous(y[k], L))
    for k, dk in sorted(seq.d.items()):
        pk = seq.p[k]
        a = seq.alpha[k][pk]
        lam = seq.lam[k]
        lhs = apply_delta(k, y[pk], P)
        rhs = dk.scale(a.to_rf() * (lam.to_rf() - ONE))
        out.add(f"delta{k + 1}(y{pk + 1})=alpha(lambda-1)d{k + 1}", lhs == rhs)
        out.add(f"delta{k + 1}(d{k + 1})=0", apply_delta(k, dk, P).is_zero())
        lhs = multiply(y[pk], dk, P)
        rhs = multiply(dk, y[pk], P).scale((a * lam).inverse())
        out.add(f"y{pk + 1}d{k + 1}=(alpha lambda)^-1 d{k + 1}y{pk + 1}", lhs == rhs)
        ok = is_homogeneous(dk, L) and all(
            L.coset(f) == L.coset(seq.kbar(k)) for f in dk.terms
        )
        out.add(f"d{k + 1} has the degree class of kbar", ok)
    # the q-matrix is multiplicatively skew-symmetric
    skew = all(
        (seq.qmat[j][k] * seq.qmat[k][j]).is_one() for j in range(N) for k in range(N)
    )
    out.add("q-matrix skew-symmetric", skew)
    n_zero = sum(1 for k in range(N) if not P.delta_nonzero(k))
    out.add("rank = #{k : delta_k = 0}", seq.rank == n_zero, f"rank {seq.rank}, count {n_zero}")
    return out


def normal_subalgebra_generators(seq: PrimeSequence):
    """Indices j with s(j) = +infinity; as a set equal to {max mu^-1(i)}."""
    gens = [j for j in range(seq.N) if seq.s[j] is None]
    tops = sorted(max(k for k in range(seq.N) if seq.mu[k] == i) for i in set(seq.mu))
    if gens != tops:
        raise InvariantViolation("successor table disagrees with the level sets of mu")
    return gens


def normalizer_of_prime(j: int, seq: PrimeSequence):
    """psi with y_j x_k = psi_k x_k y_j for every k."""
    if seq.s[j] is not None:
        raise ValueError(f"y_{j + 1} is not a normal element of R (s({j + 1}) = {seq.s[j] + 1})")
    return tuple(seq.alpha[k][j].inverse() for k in range(seq.N))


def mu_fiber(seq, i):
    return [k for k in range(seq.N) if seq.mu[k] == i]


__all__ = [
    "PrimeSequence",
    "compute_prime_sequence",
    "verify_prime_sequence",
    "normal_subalgebra_generators",
    "normalizer_of_prime",
]
