"""The rank-one length-three family: primes, deleting derivations, timings.

    python scripts/example_3_2_table.py [--r-max 6]
"""

import argparse
import time
from dataclasses import dataclass

from cgl.cauchon import run_deleting_derivations
from cgl.cgl_verify import verify_cgl
from cgl.pbw import commutator
from cgl.presentation import example_3_2
from cgl.prime_seq import compute_prime_sequence


@dataclass
class Config:
    r_max: int = 6


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--r-max", type=int, default=Config.r_max)
    cfg = Config(ap.parse_args().r_max)
    for r in range(cfg.r_max + 1):
        t0 = time.perf_counter()
        P = example_3_2(r)
        cert = verify_cgl(P)
        seq = compute_prime_sequence(P, cert)
        t1 = time.perf_counter()
        res = run_deleting_derivations(P, cert)
        t2 = time.perf_counter()
        xb = res.flattened
        twisted = all(
            commutator(xb[j], xb[k], P, P.lam[j][k]).is_zero() for j in range(3) for k in range(j + 1, 3)
        )
        print(f"r = {r}   lambda = {[str(cert.lam[k]) for k in range(3)]}   rank {seq.rank}")
        for k, y in enumerate(seq.y):
            print(f"  y{k + 1} = {y}")
        print(f"  xbar1 = {xb[0]}")
        print(f"  xbar pairwise twisted: {twisted}")
        print(f"  primes {1000 * (t1 - t0):.1f} ms, deleting derivations {1000 * (t2 - t1):.1f} ms")


if __name__ == "__main__":
    main()
