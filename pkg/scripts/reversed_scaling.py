"""Time the reversed run in T_q against N for quantum affine spaces, plus the
two symmetric catalog entries with nonzero derivations.

    python scripts/reversed_scaling.py [--n-max 8]
"""

import argparse
import time
from dataclasses import dataclass

from cgl.cauchon import run_reversed_in_torus, verify_theorem_rel
from cgl.cgl_verify import verify_cgl, verify_symmetric
from cgl.presentation import quantum_affine_space, quantum_matrices_2x2, uqplus_sl3
from cgl.prime_seq import compute_prime_sequence
from cgl.quantum_torus import embed_x_to_y


@dataclass
class Config:
    n_max: int = 8


def one(P):
    t0 = time.perf_counter()
    seq = compute_prime_sequence(P, verify_cgl(P))
    sym = verify_symmetric(P)
    imgs = embed_x_to_y(P, seq)
    xb = run_reversed_in_torus(P, seq, sym, imgs)
    checks = verify_theorem_rel(P, seq, xb, imgs)
    return time.perf_counter() - t0, checks.ok, xb


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    cfg = Config(ap.parse_args().n_max)
    entries = [quantum_affine_space(n) for n in range(1, cfg.n_max + 1)] + [quantum_matrices_2x2(), uqplus_sl3()]
    for P in entries:
        dt, ok, xb = one(P)
        print(f"{P.name:30} N={P.N:<2} checks {'pass' if ok else 'FAIL'}  {1000 * dt:8.1f} ms  xbar' = {[str(x) for x in xb]}")


if __name__ == "__main__":
    main()
