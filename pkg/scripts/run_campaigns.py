"""Run every falsification campaign over several fields and save one JSON report."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from planebranch.campaign import THEOREMS, run_campaign
from planebranch.field import field_context


@dataclass
class CampaignConfig:
    trials: int = 200
    seed: int = 0
    fields: list[str] = field(default_factory=lambda: ["fp", "q", "fp:5", "fp:101"])
    v0_max: int = 12
    out: Path = Path("results/campaigns.json")


def main(cfg: CampaignConfig) -> int:
    rows = []
    for kind in cfg.fields:
        ctx = field_context(kind)
        for theorem in sorted(THEOREMS):
            t = time.perf_counter()
            rep = run_campaign(theorem, cfg.trials, cfg.seed, ctx, v0_max=cfg.v0_max)
            dt = time.perf_counter() - t
            rows.append({**rep.to_json(), "seconds": round(dt, 2)})
            print(f"{str(ctx):>16}  {theorem:<22} failures={len(rep.failures):<3} {dt:6.2f}s")
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps({"config": {**asdict(cfg), "out": str(cfg.out)}, "runs": rows},
                                  indent=2, sort_keys=True))
    return int(any(r["failures"] for r in rows))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fields", nargs="+", default=None)
    ap.add_argument("--out", type=Path, default=Path("results/campaigns.json"))
    a = ap.parse_args()
    cfg = CampaignConfig(a.trials, a.seed, a.fields or CampaignConfig().fields, out=a.out)
    raise SystemExit(main(cfg))
