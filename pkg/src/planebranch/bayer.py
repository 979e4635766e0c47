"""Attainable intersection numbers between two equisingularity classes.

For characteristics ``v`` (of f) and ``v'`` (of g) let ``rho`` be the last
index up to which ``v_j / v_0 = v'_j / v'_0`` and
``I_k = inf{e_{k-1} v'_k, e'_{k-1} v_k}``.  The attainable set is the union over
``k = 1..rho+1`` of ``{N > 0 : I_{k-1} <= N < I_k, e_{k-1} e'_{k-1} | N}``.

``mode="extended"`` also admits a finite ``I_{rho+1}``: it is realized by
sharing the key tower of f through level rho, and the distance realizer needs
exactly that value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Iterator

from .charseq import INF, CharSequence
from .field import random_nonzero
from .oracle import DEFAULT_CAP, intersection_number
from .series import BranchPoly, XSeries
from .tower import (KeyTower, TowerVerificationFailed, am_criterion, extend_tower, perturb,
                    verify_tower)

__all__ = [
    "BayerSet",
    "NotAttainable",
    "GenericityBudgetExhausted",
    "rho",
    "bounds",
    "bayer_set",
    "min_universal",
    "equal_char_set",
    "realize_intersection",
    "DEFAULT_RETRIES",
]

DEFAULT_RETRIES = 32


class NotAttainable(ValueError):
    pass


class GenericityBudgetExhausted(RuntimeError):
    def __init__(self, msg: str, seeds: list):
        super().__init__(msg)
        self.seeds = seeds


def rho(seq_f: CharSequence, seq_g: CharSequence) -> int:
    top = min(seq_f.h, seq_g.h)
    r = 0
    for i in range(1, top + 1):
        if Fraction(seq_f.v[i], seq_f.v[0]) != Fraction(seq_g.v[i], seq_g.v[0]):
            break
        r = i
    return r


def bounds(seq_f: CharSequence, seq_g: CharSequence) -> list:
    """``[I_0, ..., I_{rho+1}]``."""
    r = rho(seq_f, seq_g)
    out = [0]
    for k in range(1, r + 2):
        out.append(min(seq_f.ek(k - 1) * seq_g.vk(k), seq_g.ek(k - 1) * seq_f.vk(k)))
    return out


@dataclass(frozen=True)
class BayerSet:
    rho: int
    bounds: tuple
    strata: tuple[tuple[int, int | float, int], ...]
    endpoint: int | None = None
    mode: str = "extended"

    def __contains__(self, N: int) -> bool:
        if N <= 0:
            return False
        if self.endpoint is not None and N == self.endpoint:
            return True
        return any(lo <= N < hi and N % m == 0 for lo, hi, m in self.strata)

    def stratum_of(self, N: int) -> int | None:
        """1-based k of the stratum holding N, ``rho + 2`` for the endpoint."""
        for k, (lo, hi, m) in enumerate(self.strata, start=1):
            if lo <= N < hi and N % m == 0 and N > 0:
                return k
        if self.endpoint is not None and N == self.endpoint:
            return len(self.strata) + 1
        return None

    def members(self, limit: int) -> list[int]:
        return [N for N in range(1, limit + 1) if N in self]

    def __iter__(self) -> Iterator[int]:
        return (N for N in count(1) if N in self)

    def to_json(self, limit: int | None = None) -> dict:
        fin = lambda b: None if b == INF else b  # noqa: E731
        doc = {
            "rho": self.rho,
            "mode": self.mode,
            "bounds": [fin(b) for b in self.bounds],
            "strata": [{"lo": lo, "hi": fin(hi), "modulus": m} for lo, hi, m in self.strata],
            "endpoint": self.endpoint,
        }
        if limit is not None:
            doc["members"] = self.members(limit)
        return doc


def bayer_set(seq_f: CharSequence, seq_g: CharSequence, mode: str = "extended") -> BayerSet:
    if mode not in ("literal", "extended"):
        raise ValueError(f"unknown mode {mode!r}")
    r = rho(seq_f, seq_g)
    I = bounds(seq_f, seq_g)
    strata = tuple((I[k - 1], I[k], seq_f.ek(k - 1) * seq_g.ek(k - 1)) for k in range(1, r + 2))
    end = I[r + 1] if mode == "extended" and I[r + 1] != INF else None
    return BayerSet(r, tuple(I), strata, end, mode)


def min_universal(seq: CharSequence) -> int:
    """Least N_0 such that every N >= N_0 is an intersection number with f."""
    if seq.h == 0:
        return 1
    return seq.ek(seq.h - 1) * seq.v[seq.h]


def equal_char_set(seq: CharSequence) -> BayerSet:
    h = seq.h
    strata = tuple((seq.ek(k - 2) * seq.vk(k - 1) if k > 1 else 0,
                    seq.ek(k - 1) * seq.vk(k), seq.ek(k - 1) ** 2) for k in range(1, h + 2))
    out = BayerSet(h, (0,) + tuple(s[1] for s in strata), strata, None, "literal")
    ref = bayer_set(seq, seq, "literal")
    if out.strata != ref.strata:
        raise AssertionError(f"equal-characteristic strata disagree: {out.strata} vs {ref.strata}")
    return out


# -- constructive realization ------------------------------------------------------


def _bump(seq: CharSequence, N: int) -> tuple[int, ...]:
    """Semigroup decomposition of N with ``a_0 > 0`` and ``0 <= a_j < n_j``."""
    a = seq.standard_rep(N)
    if a[0] <= 0:
        raise NotAttainable(f"{N} has no decomposition with a_0 > 0 over {seq}")
    return a


def _recipe(case: str, N: int, k: int, **kw) -> dict:
    return {"case": case, "N": N, "k": k, **kw}


def realize_intersection(F: KeyTower, seq_g: CharSequence, N: int, seed: int = 0,
                         retries: int = DEFAULT_RETRIES, cap: int = DEFAULT_CAP,
                         mode: str = "extended") -> KeyTower:
    """Certified branch G with characteristic ``seq_g`` and ``i_0(F, G) = N``.

    Left endpoints share f's keys up to level k-2 and diverge with generic
    coefficients; interior points perturb f_{k-1} by a key monomial of the
    right weight; the extended endpoint shares f's keys through level rho.
    Coefficients are redrawn until the oracle confirms the result.
    """
    seq_f = F.charseq
    S = bayer_set(seq_f, seq_g, mode)
    if N not in S:
        raise NotAttainable(f"{N} is not attainable between {seq_f} and {seq_g} ({mode})")
    k = S.stratum_of(N)
    r = S.rho
    ctx = F.ctx
    rng = random.Random(seed)
    tried = []
    for attempt in range(retries):
        tried.append((seed, attempt))
        xis = lambda m: [random_nonzero(ctx, rng).value for _ in range(m)]  # noqa: E731
        if k == r + 2:
            # extended endpoint I_{rho+1}
            base = list(F.polys[:r + 1])
            recipe = _recipe("endpoint", N, k, shared=r + 1)
        elif N == S.bounds[k - 1]:
            # left endpoint I_{k-1}, k >= 2
            base = list(F.polys[:k - 1])
            recipe = _recipe("left-endpoint", N, k, shared=k - 1)
        else:
            e, e2 = seq_f.ek(k - 1), seq_g.ek(k - 1)
            Nk = N // (e * e2)
            sub = seq_f.scaled_prefix(k - 1)
            a = _bump(sub, Nk)
            c = random_nonzero(ctx, rng).value
            keys = list(F.polys[:k - 1])
            gk = perturb(F.key(k - 1), keys, [(a, c)])
            # the weight exceeds the sub-tower threshold, so Abhyankar-Moh certifies g_{k-1}
            if not am_criterion(KeyTower(F.polys[:k], sub), gk, cap).certified:
                raise AssertionError(f"perturbed key of weight {Nk} is not certified over {sub}")
            base = keys + [gk]
            recipe = _recipe("interior", N, k, shared=k - 1, sub_intersection=Nk,
                             perturbation={"exponents": list(a), "c": ctx.format(c)})
        polys = extend_tower(base, seq_g, xis(seq_g.h + 1 - len(base)))
        G = KeyTower(tuple(polys), seq_g, None, recipe)
        try:
            verify_tower(G, cap)
        except TowerVerificationFailed:
            continue
        got = intersection_number(F.branch, G.branch, cap).value
        if got == N:
            G.recipe["i0_verified"] = True
            return G
    raise GenericityBudgetExhausted(
        f"no certified witness for N={N} ({seq_f} vs {seq_g}) after {retries} draws", tried)
