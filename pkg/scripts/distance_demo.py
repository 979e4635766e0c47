"""Realize a grid of logarithmic distances from a few fixed branches."""

import argparse
from fractions import Fraction

from planebranch.charseq import parse_charseq
from planebranch.distance import realize_distance
from planebranch.oracle import logdist
from planebranch.tower import BranchSpec, build_tower


def main(chars: list[str], max_den: int, max_r: int, seed: int) -> None:
    for text in chars:
        F = build_tower(BranchSpec.make(parse_charseq(text)))
        grid = sorted({Fraction(a, b) for b in range(1, max_den + 1)
                       for a in range(b + 1, max_r * b + 1)})
        tags: dict[str, int] = {}
        for R in grid:
            w = realize_distance(F, R, seed=seed)
            assert logdist(F.branch, w.g.branch) == R
            tags[w.case_tag] = tags.get(w.case_tag, 0) + 1
        print(f"({text}): {len(grid)} distances in (1, {max_r}] with denominator <= {max_den} "
              f"realized exactly; cases {tags}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("chars", nargs="*", default=["2,3", "4,6,13", "3,7"])
    ap.add_argument("--max-den", type=int, default=6)
    ap.add_argument("--max-r", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(a.chars, a.max_den, a.max_r, a.seed)
