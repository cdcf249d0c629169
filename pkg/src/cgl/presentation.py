"""Presentations of iterated Ore extensions, their file format, and the catalog.

A presentation records, for generators x_1..x_N,

    x_k x_j = lambda_{kj} x_j x_k + delta_k(x_j)      (j < k)

with delta_k(x_j) a PBW polynomial in x_1..x_{k-1}. Indices are 0-based in
code and 1-based in files and reports.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional
from urllib.parse import parse_qsl

from .errors import InvariantViolation, PresentationSyntaxError, SchemaError, UnknownName
from .pbw import PBWPoly
from .scalars import (
    MonomialScalar,
    RationalFunction,
    parse_monomial,
    parse_scalar,
    scalar_to_json,
)

Psi = tuple  # N-tuple of MonomialScalar

ONE_M = MonomialScalar(1, 0)


def qm(e: int, c=1) -> MonomialScalar:
    return MonomialScalar(Fraction(c), e)


@dataclass(frozen=True)
class OrePresentation:
    name: str
    N: int
    lam: tuple  # lam[k][j] = lambda_{kj}
    delta: tuple = ()  # sorted ((k, j), PBWPoly) with nonzero values
    h: Optional[tuple] = None
    h_prime: Optional[tuple] = None
    nilpotence_bound: int = 0
    _delta_map: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        dm = {kj: p for kj, p in self.delta}
        object.__setattr__(self, "_delta_map", dm)
        if self.nilpotence_bound <= 0:
            object.__setattr__(self, "nilpotence_bound", default_bound(self.N, dm.values()))
        _validate(self)

    def d(self, k: int, j: int) -> PBWPoly:
        """delta_k(x_j); zero when absent."""
        p = self._delta_map.get((k, j))
        return p if p is not None else PBWPoly.zero(self.N)

    def delta_items(self):
        return self.delta

    def delta_nonzero(self, k: int) -> bool:
        return any(kk == k for (kk, _), _p in self.delta)

    def lam_k(self, k: int) -> Optional[MonomialScalar]:
        """h_k-eigenvalue of x_k, read off the supplied witness."""
        return self.h[k][k] if self.h is not None else None

    def lam_prime(self, j: int) -> Optional[MonomialScalar]:
        return self.h_prime[j][j] if self.h_prime is not None else None

    def truncate(self, k: int) -> "OrePresentation":
        """The presentation of R_k = K[x_1]...[x_k]."""
        delta = tuple(
            ((a, b), PBWPoly._wrap(k, {f[:k]: c for f, c in p.terms.items()}))
            for (a, b), p in self.delta
            if a < k
        )
        lam = tuple(tuple(row[:k]) for row in self.lam[:k])
        h = tuple(tuple(t[:k]) for t in self.h[:k]) if self.h is not None else None
        return OrePresentation(f"{self.name}[1..{k}]", k, lam, delta, h, None, 0)

    def with_delta(self, delta: dict) -> "OrePresentation":
        items = tuple(sorted(((kj, p) for kj, p in delta.items() if not p.is_zero())))
        return replace(self, delta=items, _delta_map=None)


def default_bound(N: int, polys) -> int:
    deg = max((p.total_degree() for p in polys), default=0)
    return 4 * N * (1 + deg)


def _validate(P: OrePresentation):
    N = P.N
    if N < 1:
        raise SchemaError("N must be at least 1")
    if len(P.lam) != N or any(len(r) != N for r in P.lam):
        raise SchemaError("lambda must be an N x N matrix")
    for k in range(N):
        if not P.lam[k][k].is_one():
            raise InvariantViolation(f"lambda_{k + 1}{k + 1} must be 1")
        for j in range(k):
            if not (P.lam[k][j] * P.lam[j][k]).is_one():
                raise InvariantViolation(
                    f"lambda_{k + 1}{j + 1} * lambda_{j + 1}{k + 1} != 1"
                )
    for (k, j), p in P.delta:
        if not (0 <= j < k < N):
            raise InvariantViolation(f"delta entry ({k + 1},{j + 1}) needs j < k")
        for f in p.terms:
            if any(v < 0 for v in f):
                raise InvariantViolation("delta values must be polynomials")
            if any(f[t] != 0 for t in range(k, N)):
                raise InvariantViolation(
                    f"delta_{k + 1}(x{j + 1}) involves a variable of index >= {k + 1}"
                )
    for label, tuples in (("h", P.h), ("h_prime", P.h_prime)):
        if tuples is None:
            continue
        if len(tuples) != N or any(len(t) != N for t in tuples):
            raise SchemaError(f"{label} must list N tuples of length N")


def make_presentation(name, N, lam_entries, delta_entries, h=None, h_prime=None, bound=0):
    """Build from 0-based data.

    ``lam_entries`` maps (k, j) with k > j to MonomialScalar; the transposed
    entries are filled with inverses. ``delta_entries`` maps (k, j) to PBWPoly.
    """
    lam = [[ONE_M] * N for _ in range(N)]
    for (k, j), v in lam_entries.items():
        lam[k][j] = v
        lam[j][k] = v.inverse()
    delta = tuple(sorted(((kj, p) for kj, p in delta_entries.items() if not p.is_zero())))
    return OrePresentation(
        name,
        N,
        tuple(tuple(r) for r in lam),
        delta,
        tuple(tuple(t) for t in h) if h is not None else None,
        tuple(tuple(t) for t in h_prime) if h_prime is not None else None,
        bound,
    )


# -- file format ---------------------------------------------------------

_KEYS = {"name", "N", "lambda", "delta"}
_OPTIONAL = {"h", "h_prime", "nilpotence_bound"}


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{what} must be an integer, got {v!r}")
    return v


def parse_presentation(text: str) -> OrePresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return presentation_from_dict(doc)


def presentation_from_dict(doc) -> OrePresentation:
    if not isinstance(doc, dict):
        raise SchemaError("a presentation document must be an object")
    missing = _KEYS - set(doc)
    if missing:
        raise SchemaError(f"missing fields: {', '.join(sorted(missing))}")
    extra = set(doc) - _KEYS - _OPTIONAL
    if extra:
        raise SchemaError(f"unexpected fields: {', '.join(sorted(extra))}")
    name = doc["name"]
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    N = _int(doc["N"], "N")
    if N < 1:
        raise SchemaError("N must be at least 1")

    lam = [[None] * N for _ in range(N)]
    if not isinstance(doc["lambda"], list):
        raise SchemaError("lambda must be a list")
    for ent in doc["lambda"]:
        if not isinstance(ent, dict) or set(ent) != {"k", "j", "c", "e"}:
            raise SchemaError(f"lambda entries need exactly k, j, c, e: {ent!r}")
        k, j = _int(ent["k"], "k") - 1, _int(ent["j"], "j") - 1
        if not (0 <= k < N and 0 <= j < N):
            raise SchemaError(f"lambda index out of range: {ent!r}")
        v = parse_monomial({"c": ent["c"], "e": ent["e"]})
        if lam[k][j] is not None and lam[k][j] != v:
            raise InvariantViolation(f"lambda_{k + 1}{j + 1} given twice")
        lam[k][j] = v
    for k in range(N):
        if lam[k][k] is None:
            lam[k][k] = ONE_M
        for j in range(k):
            a, b = lam[k][j], lam[j][k]
            if a is None and b is None:
                lam[k][j] = lam[j][k] = ONE_M
            elif a is None:
                lam[k][j] = b.inverse()
            elif b is None:
                lam[j][k] = a.inverse()

    if not isinstance(doc["delta"], list):
        raise SchemaError("delta must be a list")
    delta: dict = {}
    for ent in doc["delta"]:
        if not isinstance(ent, dict) or set(ent) != {"k", "j", "poly"}:
            raise SchemaError(f"delta entries need exactly k, j, poly: {ent!r}")
        k, j = _int(ent["k"], "k") - 1, _int(ent["j"], "j") - 1
        if not (0 <= k < N and 0 <= j < N):
            raise SchemaError(f"delta index out of range: {ent!r}")
        if (k, j) in delta:
            raise SchemaError(f"delta_{k + 1}(x{j + 1}) given twice")
        delta[(k, j)] = _parse_poly_terms(ent["poly"], N)

    h = _parse_tuples(doc.get("h"), N, "h")
    hp = _parse_tuples(doc.get("h_prime"), N, "h_prime")
    bound = doc.get("nilpotence_bound", 0)
    bound = _int(bound, "nilpotence_bound")
    if "nilpotence_bound" in doc and bound < 1:
        raise SchemaError("nilpotence_bound must be positive")
    lam_t = tuple(tuple(r) for r in lam)
    items = tuple(sorted((kj, p) for kj, p in delta.items() if not p.is_zero()))
    return OrePresentation(name, N, lam_t, items, h, hp, bound)


def _parse_poly_terms(poly, N) -> PBWPoly:
    if not isinstance(poly, list):
        raise SchemaError("poly must be a list of {coeff, exp}")
    terms: dict = {}
    for t in poly:
        if not isinstance(t, dict) or set(t) != {"coeff", "exp"}:
            raise SchemaError(f"poly terms need exactly coeff, exp: {t!r}")
        exp = t["exp"]
        if not isinstance(exp, list) or len(exp) != N:
            raise SchemaError(f"exp must be a list of {N} integers: {exp!r}")
        f = tuple(_int(v, "exponent") for v in exp)
        if any(v < 0 for v in f):
            raise SchemaError(f"exponents must be nonnegative: {exp!r}")
        c = parse_scalar(t["coeff"])
        terms[f] = terms.get(f, RationalFunction()) + c
    return PBWPoly(N, terms)


def _parse_tuples(obj, N, label):
    if obj is None:
        return None
    if not isinstance(obj, list) or len(obj) != N:
        raise SchemaError(f"{label} must be a list of {N} tuples")
    out = []
    for t in obj:
        if not isinstance(t, list) or len(t) != N:
            raise SchemaError(f"each {label} tuple must have {N} entries")
        out.append(tuple(parse_monomial(v) for v in t))
    return tuple(out)


def presentation_to_dict(P: OrePresentation) -> dict:
    doc = {
        "name": P.name,
        "N": P.N,
        "lambda": [
            {"k": k + 1, "j": j + 1, **P.lam[k][j].to_json()}
            for k in range(P.N)
            for j in range(k)
            if not P.lam[k][j].is_one()
        ],
        "delta": [
            {
                "k": k + 1,
                "j": j + 1,
                "poly": [{"coeff": scalar_to_json(c), "exp": list(f)} for f, c in p.sorted_terms()],
            }
            for (k, j), p in P.delta
        ],
        "nilpotence_bound": P.nilpotence_bound,
    }
    if P.h is not None:
        doc["h"] = [[v.to_json() for v in t] for t in P.h]
    if P.h_prime is not None:
        doc["h_prime"] = [[v.to_json() for v in t] for t in P.h_prime]
    return doc


def serialize(P: OrePresentation) -> str:
    return json.dumps(presentation_to_dict(P), indent=2, sort_keys=True)


# -- catalog -------------------------------------------------------------


def _mono(N, exps, c=1):
    return PBWPoly.monomial(tuple(exps), c if isinstance(c, RationalFunction) else Fraction(c))


def quantum_plane() -> OrePresentation:
    # x2 x1 = q x1 x2
    return make_presentation(
        "quantum_plane",
        2,
        {(1, 0): qm(1)},
        {},
        h=[(qm(1), qm(0)), (qm(1), qm(1))],
        h_prime=[(qm(1), qm(-1)), (qm(0), qm(1))],
    )


def quantum_affine_space(N: int) -> OrePresentation:
    # x_j x_k = q x_k x_j for j < k, so lambda_{kj} = q^-1
    if N < 1:
        raise UnknownName("quantum_affine_space needs N >= 1")
    lam = {(k, j): qm(-1) for k in range(N) for j in range(k)}
    h = [tuple(qm(-1) if j < k else qm(1) if j == k else qm(0) for j in range(N)) for k in range(N)]
    hp = [tuple(qm(1) if i >= j else qm(0) for i in range(N)) for j in range(N)]
    return make_presentation(f"quantum_affine_space(N={N})", N, lam, {}, h, hp)


def example_3_2(r: int = 1) -> OrePresentation:
    """x2 x1 = q x1 x2 + 1, x3 x1 = q^-1 x1 x3 + x2^r, x3 x2 = q x2 x3."""
    if r < 0:
        raise UnknownName("example_3_2 needs r >= 0")
    delta = {(1, 0): _mono(3, (0, 0, 0)), (2, 0): _mono(3, (0, r, 0))}
    h12 = (qm(1), qm(-1), qm(-r - 1))
    h3 = (qm(-1), qm(1), qm(r + 1))
    return make_presentation(
        f"example_3_2(r={r})",
        3,
        {(1, 0): qm(1), (2, 0): qm(-1), (2, 1): qm(1)},
        delta,
        h=[h12, h12, h3],
    )


def quantum_matrices_2x2() -> OrePresentation:
    """O_q(M_2) with x1 = a, x2 = b, x3 = c, x4 = d.

    ad - da = (q - q^-1) bc, so delta_4(x1) = (q^-1 - q) x2 x3.
    """
    lam = {
        (1, 0): qm(-1),
        (2, 0): qm(-1),
        (2, 1): qm(0),
        (3, 0): qm(0),
        (3, 1): qm(-1),
        (3, 2): qm(-1),
    }
    c = RationalFunction.monomial(1, -1) - RationalFunction.monomial(1, 1)
    delta = {(3, 0): _mono(4, (0, 1, 1, 0), c)}
    h = [
        (qm(1), qm(1), qm(0), qm(0)),
        (qm(-1), qm(1), qm(0), qm(2)),
        (qm(-1), qm(0), qm(1), qm(2)),
        (qm(0), qm(-1), qm(-1), qm(-2)),
    ]
    hp = [
        (qm(2), qm(1), qm(1), qm(0)),
        (qm(0), qm(1), qm(0), qm(1)),
        (qm(0), qm(0), qm(1), qm(1)),
        (qm(0), qm(1), qm(0), qm(1)),
    ]
    return make_presentation("quantum_matrices_2x2", 4, lam, delta, h, hp)


def uqplus_sl3() -> OrePresentation:
    """U_q^+(sl_3) on x1 = E_1, x2 = E_12, x3 = E_2."""
    lam = {(1, 0): qm(-1), (2, 1): qm(-1), (2, 0): qm(1)}
    delta = {(2, 0): _mono(3, (0, 1, 0), RationalFunction.monomial(-1, 1))}
    h = [
        (qm(1), qm(0), qm(-1)),
        (qm(-1), qm(1), qm(2)),
        (qm(1), qm(-1), qm(-2)),
    ]
    hp = [
        (qm(2), qm(1), qm(-1)),
        (qm(0), qm(1), qm(1)),
        (qm(0), qm(1), qm(1)),
    ]
    return make_presentation("uqplus_sl3", 3, lam, delta, h, hp)


def two_monomial_synthetic() -> OrePresentation:
    """delta_3(x1) = x2 + x1 x2^2: two admissible choices of m_3.

    Not a CGL extension (the second monomial is not homogeneous); it only
    exercises the choice-independence of the saturated relation lattice.
    """
    delta = {
        (1, 0): _mono(3, (0, 0, 0)),
        (2, 0): _mono(3, (0, 1, 0)) + _mono(3, (1, 2, 0)),
    }
    return make_presentation(
        "two_monomial_synthetic", 3, {(1, 0): qm(1), (2, 0): qm(-1), (2, 1): qm(1)}, delta
    )


_CATALOG = {
    "quantum_plane": (quantum_plane, ()),
    "quantum_affine_space": (quantum_affine_space, ("N",)),
    "example_3_2": (example_3_2, ("r",)),
    "quantum_matrices_2x2": (quantum_matrices_2x2, ()),
    "uqplus_sl3": (uqplus_sl3, ()),
    "two_monomial_synthetic": (two_monomial_synthetic, ()),
}

_DEFAULTS = {"N": 3, "r": 1}

CATALOG_NAMES = ("quantum_plane", "quantum_affine_space", "example_3_2", "quantum_matrices_2x2", "uqplus_sl3")


def catalog(name: str, **params) -> OrePresentation:
    """Look up a catalog entry.

    Accepts ``example_3_2``, ``example_3_2(r=2)``, ``example_3_2(2)``,
    ``example_3_2?r=2`` or keyword parameters.
    """
    base, extra = _split_name(name)
    params = {**extra, **params}
    if base not in _CATALOG:
        raise UnknownName(f"unknown catalog entry {name!r}")
    fn, argnames = _CATALOG[base]
    unknown = set(params) - set(argnames)
    if unknown:
        raise UnknownName(f"{base} takes no parameter(s) {', '.join(sorted(unknown))}")
    kwargs = {a: int(params.get(a, _DEFAULTS[a])) for a in argnames}
    return fn(**kwargs)


_CALL = re.compile(r"^(\w+)\((.*)\)$")


def _split_name(name: str):
    name = name.strip()
    if "?" in name:
        base, qs = name.split("?", 1)
        return base, _ints(dict(parse_qsl(qs, strict_parsing=True)))
    m = _CALL.match(name)
    if m:
        base, args = m.group(1), m.group(2).strip()
        if not args:
            return base, {}
        out = {}
        for part in args.split(","):
            if "=" in part:
                k, v = part.split("=", 1)
                out[k.strip()] = v.strip()
            else:
                argnames = _CATALOG.get(base, (None, ()))[1]
                if not argnames:
                    raise UnknownName(f"{base} takes no parameters")
                out[argnames[0]] = part.strip()
        return base, _ints(out)
    return name, {}


def _ints(d):
    try:
        return {k: int(v) for k, v in d.items()}
    except ValueError as exc:
        raise UnknownName(f"catalog parameters must be integers: {d}") from exc


def standard_catalog(max_affine: int = 4, rs=(0, 1, 2, 3)):
    """The catalog entries exercised by the acceptance suite."""
    out = [quantum_plane()]
    out += [quantum_affine_space(n) for n in range(1, max_affine + 1)]
    out += [example_3_2(r) for r in rs]
    out += [quantum_matrices_2x2(), uqplus_sl3()]
    return out
