"""Random branch generators and seeded falsification campaigns."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .bayer import bayer_set, realize_intersection
from .charseq import CharSequence, random_charseq, validate
from .contact import analyze_pair, congruence_check, ratio_consequences, sti_check
from .field import FieldContext
from .oracle import DEFAULT_CAP
from .tower import KeyTower, build_tower, random_spec

__all__ = [
    "related_charseq",
    "random_tower",
    "random_pair",
    "random_triple",
    "CampaignReport",
    "run_campaign",
    "THEOREMS",
]


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def continue_charseq(prefix: list[int], rng: random.Random, window: int = 5) -> CharSequence:
    """Append random terms to a valid prefix until the gcd chain reaches 1."""
    v = list(prefix)
    e = [v[0]]
    for x in v[1:]:
        e.append(math.gcd(e[-1], x))
    while e[-1] > 1:
        E = e[-1]
        nk = rng.choice(_divisors(E))
        ek = E // nk
        if len(v) == 1:
            lo = 1
        else:
            lo = e[-2] * v[-1] // (E * ek) + 1
        cands = [m for m in range(lo, lo + window * nk) if math.gcd(m, nk) == 1]
        v.append(ek * rng.choice(cands))
        e.append(ek)
    return validate(v)


def related_charseq(seq: CharSequence, rng: random.Random, v0_max: int = 12) -> CharSequence:
    """A sequence sharing the ratios ``v_i/v_0`` of ``seq`` up to a random level."""
    j = rng.randint(min(1, seq.h), seq.h)
    base = seq.v[0] // seq.e[j]
    scales = [s for s in (1, 2, 3) if s * base <= v0_max] or [1]
    s = rng.choice(scales)
    prefix = [s * x // seq.e[j] for x in seq.v[:j + 1]]
    return continue_charseq(prefix, rng)


def random_tower(ctx: FieldContext, rng: random.Random, seq: CharSequence | None = None,
                 **kw) -> KeyTower:
    if seq is None:
        seq = random_charseq(rng, **kw)
    return build_tower(random_spec(seq, ctx, rng))


def _sample_member(S, rng: random.Random, span: int = 8) -> int | None:
    """Pick a stratum uniformly, then one of its first ``span`` members."""
    choices = []
    for lo, hi, m in S.strata:
        first = max(m, -(-lo // m) * m)
        pts = [N for N in range(first, first + span * m, m) if N < hi]
        if pts:
            choices.append(pts)
    if S.endpoint is not None:
        choices.append([S.endpoint])
    if not choices:
        return None
    return rng.choice(rng.choice(choices))


def random_partner(F: KeyTower, rng: random.Random) -> KeyTower:
    """A second branch for F: independent, related, or realized at a random attainable N."""
    ctx = F.ctx
    kind = rng.choice(("independent", "related", "realized", "realized", "same"))
    if kind == "independent":
        return random_tower(ctx, rng)
    seq_g = F.charseq if kind == "same" else related_charseq(F.charseq, rng)
    if kind == "related":
        return random_tower(ctx, rng, seq_g)
    N = _sample_member(bayer_set(F.charseq, seq_g), rng)
    if N is None:
        return random_tower(ctx, rng, seq_g)
    return realize_intersection(F, seq_g, N, seed=rng.randrange(2**32))


def _distinct(*towers: KeyTower) -> bool:
    branches = [T.branch for T in towers]
    return all(a != b for i, a in enumerate(branches) for b in branches[i + 1:])


def random_pair(ctx: FieldContext, rng: random.Random, **kw) -> tuple[KeyTower, KeyTower]:
    """Two distinct branches; identical draws are resampled."""
    kw.setdefault("h_min", 1)
    while True:
        F = random_tower(ctx, rng, **kw)
        G = random_partner(F, rng)
        if _distinct(F, G):
            return F, G


def random_triple(ctx: FieldContext, rng: random.Random, **kw) -> tuple[KeyTower, KeyTower, KeyTower]:
    kw.setdefault("h_min", 1)
    while True:
        F = random_tower(ctx, rng, **kw)
        G = random_partner(F, rng)
        H = random_partner(rng.choice((F, G)), rng)
        if _distinct(F, G, H):
            return F, G, H


@dataclass
class CampaignReport:
    theorem: str
    trials: int
    seed: int
    field: str
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "trials": self.trials, "seed": self.seed,
                "field": self.field, "failures": self.failures, "seeds": [self.seed]}


def _trial_formula(ctx, rng, cap, kw):
    F, G = random_pair(ctx, rng, **kw)
    rep = analyze_pair(F, G, cap)
    if not rep.ok or not ratio_consequences(F, G, rep):
        return {"f": list(F.charseq.v), "g": list(G.charseq.v), "report": rep.to_json()}
    return None


def _trial_sti(ctx, rng, cap, kw):
    F, G, H = random_triple(ctx, rng, **kw)
    if not sti_check(F, G, H, cap):
        return {"chars": [list(T.charseq.v) for T in (F, G, H)]}
    return None


def _trial_congruence(ctx, rng, cap, kw):
    F, G = random_pair(ctx, rng, **kw)
    w = congruence_check(F, G, cap)
    m, n = w.n, w.n_prime
    if w.i0 == m * n - 1 and not (m % n == 0 or n % m == 0):
        return {"f": list(F.charseq.v), "g": list(G.charseq.v), "i0": w.i0, "kulk": True}
    return None


THEOREMS = {
    "intersection-formula": _trial_formula,
    "sti": _trial_sti,
    "congruence": _trial_congruence,
}


def run_campaign(theorem: str, trials: int, seed: int, ctx: FieldContext,
                 cap: int = DEFAULT_CAP, **kw) -> CampaignReport:
    """Run ``trials`` seeded trials; each failure records its trial index.

    Counterexample exceptions raised by the checkers are recorded as failures
    rather than propagated.
    """
    trial = THEOREMS[theorem]
    report = CampaignReport(theorem, trials, seed, str(ctx))
    for t in range(trials):
        rng = random.Random(f"{seed}:{theorem}:{t}")
        try:
            bad = trial(ctx, rng, cap, kw)
        except AssertionError as exc:
            bad = {"error": type(exc).__name__, "message": str(exc)}
        if bad is not None:
            bad["trial"] = t
            report.failures.append(bad)
    return report
