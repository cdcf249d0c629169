"""Certification of the CGL axioms, the symmetric property, and reversal."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .checks import FAIL, PASS, UNVERIFIED, Check
from .errors import BoundExceeded, NotSymmetric
from .lattice import (
    RelationLattice,
    character,
    find_h_element,
    relation_lattice,
    solve_torus_element,
    torus_membership,
)
from .pbw import PBWPoly, apply_delta, apply_sigma, engine, multiply, nilpotency_index
from .presentation import OrePresentation
from .scalars import MonomialScalar, is_root_of_unity

CGL = "CGL"
NOT_CGL = "NOT_CGL"


@dataclass
class CGLCertificate:
    status: str
    reason: str = ""
    nilpotency: dict = field(default_factory=dict)  # (k, j) -> index
    homogeneous: dict = field(default_factory=dict)  # (k, j) -> bool
    witnesses: dict = field(default_factory=dict)  # k -> psi
    witness_source: dict = field(default_factory=dict)  # k -> "supplied" | "found"
    lam: dict = field(default_factory=dict)  # k -> lambda_k
    checks: list = field(default_factory=list)
    lattice: Optional[RelationLattice] = None
    bound: int = 0

    @property
    def ok(self) -> bool:
        return self.status == CGL

    def lam_k(self, k) -> MonomialScalar:
        return self.lam[k]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "nilpotence_bound": self.bound,
            "nilpotency": [
                {"k": k + 1, "j": j + 1, "index": v} for (k, j), v in sorted(self.nilpotency.items())
            ],
            "homogeneous": [
                {"k": k + 1, "j": j + 1, "ok": v} for (k, j), v in sorted(self.homogeneous.items())
            ],
            "witnesses": [
                {
                    "k": k + 1,
                    "source": self.witness_source[k],
                    "psi": [str(p) for p in psi],
                    "lambda_k": str(self.lam[k]),
                }
                for k, psi in sorted(self.witnesses.items())
            ],
            "checks": [c.to_json() for c in self.checks],
        }


def is_diag_automorphism(psi, P: OrePresentation) -> bool:
    """psi preserves every relation: psi^f = psi_k psi_j on each monomial of delta_k(x_j)."""
    for (k, j), p in P.delta_items():
        target = psi[k] * psi[j]
        for f in p.terms:
            if character(psi, f) != target:
                return False
    return True


def ore_consistency(P: OrePresentation):
    """Overlap check (x_k x_j) x_i = x_k (x_j x_i) for all i < j < k.

    Returns the list of failing triples (0-based)."""
    N = P.N
    x = [PBWPoly.gen(N, i) for i in range(N)]
    bad = []
    for k in range(N):
        for j in range(k):
            kj = multiply(x[k], x[j], P)
            for i in range(j):
                left = multiply(kj, x[i], P)
                right = multiply(x[k], multiply(x[j], x[i], P), P)
                if left != right:
                    bad.append((i, j, k))
    return bad


def _check_witness(k, psi, P, L):
    """Reasons why psi fails to be a valid h_k (empty if valid)."""
    reasons = []
    if not is_diag_automorphism(psi, P):
        reasons.append(f"h_{k + 1} is not a diagonal automorphism")
    if L is not None and not torus_membership(psi, L):
        reasons.append(f"h_{k + 1} is not in H_max")
    for j in range(k):
        if psi[j] != P.lam[k][j]:
            reasons.append(f"h_{k + 1} does not act as sigma_{k + 1} on x{j + 1}")
            break
    if is_root_of_unity(psi[k]):
        reasons.append(f"lambda_{k + 1} is a root of unity")
    return reasons


def verify_cgl(P: OrePresentation, bound: Optional[int] = None, search: bool = True) -> CGLCertificate:
    N = P.N
    bound = bound or P.nilpotence_bound
    cert = CGLCertificate(status=CGL, bound=bound)
    checks = cert.checks
    not_cgl: list = []
    unverified: list = []

    bad = ore_consistency(P)
    checks.append(
        Check(
            "ore_consistency",
            PASS if not bad else FAIL,
            "" if not bad else f"overlaps fail at {[(i + 1, j + 1, k + 1) for i, j, k in bad]}",
        )
    )
    if bad:
        not_cgl.append("relations are not consistent (overlap ambiguity)")

    # (ii) local nilpotence on generators
    nil_status = PASS
    for k in range(N):
        for j in range(k):
            try:
                cert.nilpotency[(k, j)] = nilpotency_index(k, j, P, bound)
            except BoundExceeded as exc:
                nil_status = UNVERIFIED
                unverified.append(str(exc))
    checks.append(Check("local_nilpotence", nil_status, f"bound {bound}"))

    # (iii) homogeneity against the relation lattice
    L = relation_lattice(P)
    cert.lattice = L
    hom_ok = True
    for (k, j), p in P.delta_items():
        cls = [0] * N
        cls[k] += 1
        cls[j] += 1
        want = L.coset(cls)
        ok = all(L.coset(f) == want for f in p.terms)
        cert.homogeneous[(k, j)] = ok
        if not ok:
            hom_ok = False
            not_cgl.append(f"delta_{k + 1}(x{j + 1}) is not homogeneous")
    checks.append(Check("homogeneity", PASS if hom_ok else FAIL))

    # (iv) torus witnesses
    w_status = PASS
    details = []
    for k in range(N):
        psi = P.h[k] if P.h is not None else None
        source = "supplied"
        if psi is None and search:
            psi = find_h_element(k, P, L)
            source = "found"
        if not psi:
            if psi is not None and psi.proven:
                w_status = FAIL
                not_cgl.append(f"no h_{k + 1} exists in H_max: {psi.reason}")
                details.append(f"h_{k + 1}: {psi.reason}")
            else:
                w_status = UNVERIFIED if w_status == PASS else w_status
                unverified.append(f"no witness h_{k + 1}")
            continue
        reasons = _check_witness(k, psi, P, L if hom_ok else None)
        if reasons:
            w_status = FAIL
            not_cgl.extend(reasons)
            details.extend(reasons)
        cert.witnesses[k] = psi
        cert.witness_source[k] = source
        cert.lam[k] = psi[k]
    checks.append(Check("torus_witnesses", w_status, "; ".join(details)))

    # sigma_k delta_k = lambda_k delta_k sigma_k on generators
    sd_ok = True
    for (k, j), p in P.delta_items():
        if k not in cert.lam:
            continue
        xj = PBWPoly.gen(N, j)
        lhs = apply_sigma(k, apply_delta(k, xj, P), P)
        rhs = apply_delta(k, apply_sigma(k, xj, P), P).scale(cert.lam[k])
        if lhs != rhs:
            sd_ok = False
    checks.append(Check("sigma_delta_commutation", PASS if sd_ok else FAIL))
    if not sd_ok:
        not_cgl.append("sigma_k delta_k != lambda_k delta_k sigma_k")

    if not_cgl:
        cert.status = NOT_CGL
        cert.reason = "; ".join(dict.fromkeys(not_cgl))
    elif unverified:
        cert.status = UNVERIFIED
        cert.reason = "; ".join(unverified)
    return cert


@dataclass
class SymmetryReport:
    symmetric: bool
    reasons: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)  # j -> psi
    witness_source: dict = field(default_factory=dict)
    lam_prime: dict = field(default_factory=dict)  # j -> lambda'_j
    status: str = PASS

    def to_json(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "status": self.status,
            "reasons": list(self.reasons),
            "witnesses": [
                {
                    "j": j + 1,
                    "source": self.witness_source[j],
                    "psi": [str(p) for p in psi],
                    "lambda_prime": str(self.lam_prime[j]),
                }
                for j, psi in sorted(self.witnesses.items())
            ],
        }


def support_condition(P: OrePresentation):
    """Pairs (k, j) whose delta_k(x_j) is not supported on x_{j+1}..x_{k-1}."""
    bad = []
    for (k, j), p in P.delta_items():
        for f in p.terms:
            if any(f[t] for t in range(0, j + 1)) or any(f[t] for t in range(k, P.N)):
                bad.append((k, j))
                break
    return bad


def verify_symmetric(P: OrePresentation, search: bool = True) -> SymmetryReport:
    N = P.N
    rep = SymmetryReport(symmetric=True)
    bad = support_condition(P)
    if bad:
        rep.symmetric = False
        rep.status = FAIL
        rep.reasons += [f"delta_{k + 1}(x{j + 1}) is not supported on [{j + 2},{k}]" for k, j in bad]
        return rep
    L = relation_lattice(P)
    for j in range(N):
        psi = P.h_prime[j] if P.h_prime is not None else None
        source = "supplied"
        if psi is None and search:
            psi = solve_torus_element(N, L, {k: P.lam[j][k] for k in range(j + 1, N)}, j)
            source = "found"
        if not psi:
            if psi is not None and psi.proven:
                rep.status = FAIL
                rep.reasons.append(f"no h'_{j + 1} exists in H_max: {psi.reason}")
            else:
                rep.status = UNVERIFIED if rep.status == PASS else rep.status
                rep.reasons.append(f"no witness h'_{j + 1}")
            continue
        reasons = []
        if not is_diag_automorphism(psi, P) or not torus_membership(psi, L):
            reasons.append(f"h'_{j + 1} is not in H_max")
        for k in range(j + 1, N):
            if psi[k] != P.lam[j][k]:
                reasons.append(f"h'_{j + 1} has the wrong eigenvalue on x{k + 1}")
                break
        if is_root_of_unity(psi[j]):
            reasons.append(f"lambda'_{j + 1} is a root of unity")
        if reasons:
            rep.symmetric = False
            rep.status = FAIL
            rep.reasons += reasons
        rep.witnesses[j] = psi
        rep.witness_source[j] = source
        rep.lam_prime[j] = psi[j]
    if rep.status != PASS:
        rep.symmetric = False
    return rep


def _reflect(psi):
    return tuple(reversed(psi))


def reversed_presentation(P: OrePresentation, with_witnesses: bool = True) -> OrePresentation:
    """The presentation in z_i = x_{N+1-i}, built by increasing interval width."""
    if support_condition(P):
        raise NotSymmetric(f"{P.name} fails the support condition")
    N = P.N
    r = lambda i: N - 1 - i  # noqa: E731
    lam = tuple(tuple(P.lam[r(a)][r(b)] for b in range(N)) for a in range(N))
    delta_rev: dict = {}
    for w in range(1, N):
        partial = OrePresentation(f"{P.name}^rev", N, lam, _items(delta_rev), None, None, 0)
        eng = engine(partial)
        for j in range(N - w):
            k = j + w
            E = P.d(k, j)
            if E.is_zero():
                continue
            Ez = PBWPoly.zero(N)
            for f, c in E.terms.items():
                acc = PBWPoly.one(N)
                # x-ascending order is z-descending order
                for i in range(N):
                    for _ in range(f[i]):
                        acc = eng.multiply(acc, PBWPoly.gen(N, r(i)))
                Ez = Ez + acc.scale(c)
            delta_rev[(r(j), r(k))] = Ez.scale(-P.lam[j][k].to_rf())
    h = h_prime = None
    if with_witnesses:
        if P.h_prime is not None:
            h = tuple(_reflect(P.h_prime[r(a)]) for a in range(N))
        if P.h is not None:
            h_prime = tuple(_reflect(P.h[r(a)]) for a in range(N))
    return OrePresentation(f"{P.name}^rev", N, lam, _items(delta_rev), h, h_prime, P.nilpotence_bound)


def _items(d):
    return tuple(sorted((kj, p) for kj, p in d.items() if not p.is_zero()))


def reflect_poly(a: PBWPoly, P_from: OrePresentation, P_to: OrePresentation) -> PBWPoly:
    """Rewrite an element given in one PBW order in the reflected order."""
    N = a.N
    eng = engine(P_to)
    out = PBWPoly.zero(N)
    for f, c in a.terms.items():
        acc = PBWPoly.one(N)
        for i in range(N):
            e = f[i]
            for _ in range(abs(e)):
                acc = eng.multiply(acc, PBWPoly.gen(N, N - 1 - i, 1 if e > 0 else -1))
        out = out + acc.scale(c)
    return out
