"""Attainable intersection numbers for pairs of characteristics.

For each pair the computed set is printed next to the certified witnesses; the
realizer is asked for every member up to the limit.
"""

import argparse
from dataclasses import dataclass

from planebranch.bayer import bayer_set, min_universal, realize_intersection
from planebranch.charseq import parse_charseq
from planebranch.oracle import i0
from planebranch.tower import BranchSpec, build_tower

PAIRS = ["2,3/2,3", "4,6,13/2,3", "2,5/2,7", "4,6,13/4,6,13", "6,9,19/4,6,13", "3,7/3,8"]


@dataclass
class SweepConfig:
    limit: int = 40
    seed: int = 0
    mode: str = "extended"


def sweep(f: str, g: str, cfg: SweepConfig) -> None:
    F = build_tower(BranchSpec.make(parse_charseq(f)))
    sg = parse_charseq(g)
    S = bayer_set(F.charseq, sg, cfg.mode)
    members = S.members(cfg.limit)
    certified = [N for N in members
                 if i0(F.branch, realize_intersection(F, sg, N, seed=cfg.seed + N).branch) == N]
    print(f"({f}) x ({g})  rho={S.rho}  strata={[(lo, hi, m) for lo, hi, m in S.strata]}")
    print(f"    members <= {cfg.limit}: {members}")
    print(f"    certified: {len(certified)}/{len(members)}; N_0 for f = {min_universal(F.charseq)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("pairs", nargs="*", default=PAIRS, help="F/G, e.g. 4,6,13/2,3")
    ap.add_argument("--limit", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--mode", choices=("extended", "literal"), default="extended")
    a = ap.parse_args()
    cfg = SweepConfig(a.limit, a.seed, a.mode)
    for pair in a.pairs:
        sweep(*pair.split("/"), cfg)
