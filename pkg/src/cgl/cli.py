"""Command-line entry point.

    cgl <command> <source> [--json] [--seed S] [--bound B] [--reversed] [--exponent v]

``source`` is a presentation file or ``catalog:<name>[?N=..&r=..]``. Exit
status is 0 when every verdict is PASS, 1 when a verdict is FAIL or
UNVERIFIED, 2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from dataclasses import dataclass, field

from . import __version__
from .cauchon import (
    eigenclass_check,
    run_deleting_derivations,
    run_reversed_in_torus,
    verify_theorem_rel,
)
from .cgl_verify import CGL, NOT_CGL, is_diag_automorphism, verify_cgl, verify_symmetric
from .checks import FAIL, PASS, UNVERIFIED, Check
from .errors import (
    BoundExceeded,
    CGLError,
    NotSymmetric,
    PresentationSyntaxError,
    SchemaError,
    UnknownName,
)
from .lattice import choice_independence, relation_lattice, torus_membership
from .pbw import commutator
from .presentation import catalog, parse_presentation, serialize
from .prime_seq import compute_prime_sequence, normal_subalgebra_generators, verify_prime_sequence
from .quantum_torus import decompose_exponent, embed_x_to_y, in_delta, top_bars, verify_embedding
from .scalars import MonomialScalar

COMMANDS = ("check", "primes", "torus", "cauchon", "rel", "hmax", "basis")
DEFAULT_SEED = 0


class UsageError(CGLError):
    code = "usage_error"


# raised before any mathematics is done; everything else becomes a verdict
INPUT_ERRORS = (PresentationSyntaxError, SchemaError, UnknownName, UsageError, NotSymmetric)


@dataclass
class Report:
    source: str
    command: str
    verdicts: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def verdict(self, name, status, detail=""):
        self.verdicts.append(Check(name, status, detail))

    def extend(self, checks, prefix=""):
        for c in checks:
            self.verdicts.append(Check(prefix + c.name, c.status, c.detail))

    @property
    def exit_code(self) -> int:
        return 0 if all(v.status == PASS for v in self.verdicts) else 1

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "source": self.source,
            "command": self.command,
            "verdicts": [v.to_json() for v in self.verdicts],
            "data": self.data,
        }


def load_source(source: str):
    if source.startswith("catalog:"):
        return catalog(source[len("catalog:"):])
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError as exc:
        raise UsageError(f"file not found: {source}") from exc
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc}") from exc
    return parse_presentation(text)


def _cert_status(cert) -> str:
    return {CGL: PASS, NOT_CGL: FAIL}.get(cert.status, UNVERIFIED)


def _certified(P, args, rep):
    cert = verify_cgl(P, bound=args.bound)
    rep.data["certificate"] = cert.to_json()
    rep.verdict("cgl", _cert_status(cert), cert.reason)
    return cert


def _primes(P, cert):
    return compute_prime_sequence(P, cert)


def cmd_check(P, args, rep):
    _certified(P, args, rep)
    sym = verify_symmetric(P)
    rep.data["symmetry"] = sym.to_json()
    rep.verdict("symmetric", sym.status, "; ".join(sym.reasons))
    # randomized spot check: membership in H_max agrees with preserving the relations
    rng = random.Random(args.seed)
    rep.data["seed"] = args.seed
    L = relation_lattice(P)
    agree = True
    for _ in range(64):
        psi = tuple(MonomialScalar(rng.choice((1, -1)), rng.randint(-3, 3)) for _ in range(P.N))
        if torus_membership(psi, L) != is_diag_automorphism(psi, P):
            agree = False
            break
    rep.verdict("hmax_membership_agrees", PASS if agree else FAIL, "64 random monomial tuples")


def cmd_primes(P, args, rep):
    cert = _certified(P, args, rep)
    if not cert.ok:
        return
    seq = _primes(P, cert)
    data = seq.to_json()
    data["recursion"] = [
        f"y{k + 1} = x{k + 1}" if seq.p[k] is None else f"y{k + 1} = y{seq.p[k] + 1}*x{k + 1} - ({seq.d[k]})"
        for k in range(P.N)
    ]
    data["normal_generators"] = [f"y{j + 1}" for j in normal_subalgebra_generators(seq)]
    rep.data["primes"] = data
    rep.extend(verify_prime_sequence(P, seq), "primes: ")


def cmd_torus(P, args, rep):
    cert = _certified(P, args, rep)
    if not cert.ok:
        return
    seq = _primes(P, cert)
    images = embed_x_to_y(P, seq)
    rep.data["q"] = [[str(v) for v in row] for row in seq.qmat]
    rep.data["images"] = [f"x{k + 1} -> {img}" for k, img in enumerate(images)]
    rep.extend(verify_embedding(P, images, seq, max_degree=4 if P.N <= 4 else 2), "torus: ")


def cmd_cauchon(P, args, rep):
    cert = _certified(P, args, rep)
    if not cert.ok:
        return
    if args.reversed:
        _rel(P, args, rep, cert, "cauchon: ")
        return
    res = run_deleting_derivations(P, cert, args.bound)
    rep.data["cauchon"] = res.to_json()
    rep.verdict("cauchon: flattening complete", PASS if res.complete else UNVERIFIED)
    if not res.complete:
        return
    xb = res.flattened
    ok = True
    for j in range(P.N):
        for k in range(j + 1, P.N):
            if not commutator(xb[j], xb[k], P, P.lam[j][k]).is_zero():
                ok = False
    rep.verdict("cauchon: xbar_j xbar_k = lambda_jk xbar_k xbar_j", PASS if ok else FAIL)


def _rel(P, args, rep, cert, prefix):
    sym = verify_symmetric(P)
    if not sym.symmetric:
        raise NotSymmetric(f"{P.name} is not symmetric: {'; '.join(sym.reasons)}")
    seq = _primes(P, cert)
    images = embed_x_to_y(P, seq)
    xbar_p = run_reversed_in_torus(P, seq, sym, images, args.bound)
    rep.data["reversed"] = {
        "lambda_prime": [str(sym.lam_prime[j]) for j in range(P.N)],
        "xbar_prime": [str(x) for x in xbar_p],
        "y": [str(y) for y in seq.y],
    }
    rep.extend(verify_theorem_rel(P, seq, xbar_p, images), prefix)
    rep.verdict(prefix + "eigenclasses match", PASS if eigenclass_check(P, seq, xbar_p) else FAIL)


def cmd_rel(P, args, rep):
    cert = _certified(P, args, rep)
    if not cert.ok:
        return
    _rel(P, args, rep, cert, "rel: ")


def cmd_hmax(P, args, rep):
    L = relation_lattice(P)
    rep.data["lattice"] = L.to_json()
    n = sum(1 for k in range(P.N) if not P.delta_nonzero(k))
    rep.verdict("hmax: rank = #{k : delta_k = 0}", PASS if L.hmax_rank == n else FAIL, f"{L.hmax_rank} vs {n}")
    rep.verdict("hmax: choice independence", PASS if choice_independence(P) else FAIL)


def cmd_basis(P, args, rep):
    if args.exponent is None:
        raise UsageError("basis needs --exponent a,b,c,...")
    try:
        f = tuple(int(v) for v in args.exponent.split(","))
    except ValueError as exc:
        raise UsageError(f"--exponent must be comma-separated integers, got {args.exponent!r}") from exc
    if len(f) != P.N:
        raise UsageError(f"--exponent has {len(f)} entries, expected {P.N}")
    cert = _certified(P, args, rep)
    if not cert.ok:
        return
    seq = _primes(P, cert)
    g, c = decompose_exponent(f, seq)
    bars = top_bars(seq)
    back = list(g)
    for ci, b in zip(c, bars):
        back = [x + ci * y for x, y in zip(back, b)]
    rep.data["basis"] = {
        "f": list(f),
        "g": list(g),
        "c": list(c),
        "tops": [list(b) for b in bars],
    }
    rep.verdict("basis: g in Delta(R)", PASS if in_delta(g, seq) else FAIL)
    rep.verdict("basis: f = g + sum c_i top_i", PASS if tuple(back) == f else FAIL)


HANDLERS = {
    "check": cmd_check,
    "primes": cmd_primes,
    "torus": cmd_torus,
    "cauchon": cmd_cauchon,
    "rel": cmd_rel,
    "hmax": cmd_hmax,
    "basis": cmd_basis,
}


def run(command, source, args) -> Report:
    P = load_source(source)
    rep = Report(source, command)
    rep.data["presentation"] = {
        "name": P.name,
        "N": P.N,
        "digest": hashlib.sha256(serialize(P).encode()).hexdigest(),
    }
    try:
        HANDLERS[command](P, args, rep)
    except INPUT_ERRORS:
        raise
    except BoundExceeded as exc:
        rep.verdict(f"{command}: {exc.code}", UNVERIFIED, str(exc))
    except CGLError as exc:
        rep.verdict(f"{command}: {exc.code}", FAIL, str(exc))
    return rep


def _render(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def format_human(rep: Report) -> str:
    lines = [f"cgl {__version__}  {rep.command}  {rep.source}", ""]
    lines += _render(rep.data)
    lines += ["", "verdicts:"]
    for v in rep.verdicts:
        tail = f"  ({v.detail})" if v.detail else ""
        lines.append(f"  {v.status:<10} {v.name}{tail}")
    n_pass = sum(v.status == PASS for v in rep.verdicts)
    lines.append(f"{n_pass}/{len(rep.verdicts)} verdicts pass")
    return "\n".join(lines) + "\n"


def build_parser():
    ap = argparse.ArgumentParser(prog="cgl", description="Verify and analyse CGL extensions.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("source", help="presentation file or catalog:<name>[?N=..&r=..]")
    ap.add_argument("--json", action="store_true", help="emit the structured report")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--bound", type=int, default=None, help="nilpotence bound")
    ap.add_argument("--reversed", action="store_true", help="cauchon: run the reversed procedure in T_q")
    ap.add_argument("--exponent", default=None, help="basis: comma-separated exponent vector")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.bound is not None and args.bound <= 0:
        print("error[usage_error]: --bound must be positive", file=sys.stderr)
        return 2
    try:
        rep = run(args.command, args.source, args)
    except CGLError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(format_human(rep))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
