"""Characteristic sequences and the numerical semigroups they generate.

Infinite bounds (``v_{h+1} = +inf``) are represented by ``math.inf``; Python
compares it exactly against ints, and nothing here ever multiplies it by 0.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "CharSequence",
    "CharSequenceError",
    "Char1Violation",
    "Char2Violation",
    "INF",
    "validate",
    "parse_charseq",
    "random_charseq",
]

INF = math.inf


class CharSequenceError(ValueError):
    pass


class Char1Violation(CharSequenceError):
    pass


class Char2Violation(CharSequenceError):
    def __init__(self, k: int, lhs: int, rhs: int):
        super().__init__(f"characteristic inequality fails at k={k}: "
                         f"e_{k-1}v_{k}={lhs} is not < e_{k}v_{k+1}={rhs}")
        self.k = k


@dataclass(frozen=True)
class CharSequence:
    """A validated characteristic sequence ``(v_0, ..., v_h)``.

    Construct through :func:`validate`; the constructor re-checks anyway.
    """

    v: tuple[int, ...]
    e: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v = tuple(int(x) for x in self.v)
        object.__setattr__(self, "v", v)
        if not v or any(x <= 0 for x in v):
            raise CharSequenceError(f"need a nonempty sequence of positive integers, got {v}")
        e = []
        g = 0
        for x in v:
            g = math.gcd(g, x)
            e.append(g)
        if e[-1] != 1 or any(e[k] <= e[k + 1] for k in range(len(e) - 1)):
            raise Char1Violation(f"gcd chain {tuple(e)} is not strictly decreasing to 1")
        for k in range(1, len(v) - 1):
            lhs, rhs = e[k - 1] * v[k], e[k] * v[k + 1]
            if not lhs < rhs:
                raise Char2Violation(k, lhs, rhs)
        object.__setattr__(self, "e", tuple(e))

    # -- indexing with the conventions v_{h+1} = inf, e_{-1} = 0 ------------------

    @property
    def h(self) -> int:
        return len(self.v) - 1

    @property
    def n(self) -> tuple[int, ...]:
        """``(n_1, ..., n_h)`` with ``n_k = e_{k-1} / e_k``."""
        return tuple(self.e[k - 1] // self.e[k] for k in range(1, len(self.v)))

    def vk(self, k: int):
        if k > self.h:
            return INF
        return self.v[k]

    def ek(self, k: int) -> int:
        if k < 0:
            return 0
        return self.e[min(k, self.h)]

    def nk(self, k: int) -> int:
        return self.e[k - 1] // self.e[k]

    def __str__(self) -> str:
        return ",".join(map(str, self.v))

    def __len__(self) -> int:
        return len(self.v)

    def __iter__(self):
        return iter(self.v)

    # -- semigroup ---------------------------------------------------------------

    def bezout(self, k: int) -> tuple[int, ...]:
        """``(a_0, ..., a_{k-1})`` with ``n_k v_k = sum a_i v_i``, ``a_0 > 0``, ``0 <= a_i < n_i``."""
        if not 1 <= k <= self.h:
            raise IndexError(f"k must be in 1..{self.h}")
        a = self.standard_rep(self.nk(k) * self.v[k], upto=k - 1)
        if a[0] <= 0:
            raise ArithmeticError(f"Bezout relation at k={k} has a_0 = {a[0]}")
        return a

    def standard_rep(self, N: int, upto: int | None = None) -> tuple[int, ...]:
        """The unique ``(a_0, ..., a_m)`` with ``N = sum a_i v_i`` and ``0 <= a_i < n_i`` for i >= 1.

        ``a_0`` may be negative; ``N`` lies in the semigroup generated by
        ``v_0..v_m`` iff ``a_0 >= 0``.  Requires ``e_m | N``.
        """
        m = self.h if upto is None else upto
        if N % self.e[m]:
            raise ValueError(f"{N} is not divisible by e_{m} = {self.e[m]}")
        a = [0] * (m + 1)
        rest = N
        for j in range(m, 0, -1):
            ej, nj = self.e[j], self.nk(j)
            # a_j * (v_j/e_j) = rest/e_j  (mod n_j)
            a[j] = (rest // ej) * pow(self.v[j] // ej, -1, nj) % nj if nj > 1 else 0
            rest -= a[j] * self.v[j]
        a[0] = rest // self.v[0]
        return tuple(a)

    @cached_property
    def conductor(self) -> int:
        return sum((self.nk(k) - 1) * self.v[k] for k in range(1, self.h + 1)) - self.v[0] + 1

    @cached_property
    def _apery(self) -> tuple[int, ...]:
        """Smallest semigroup element in each residue class mod v_0 (Dijkstra on residues)."""
        v0 = self.v[0]
        dist = [INF] * v0
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            d, r = heapq.heappop(heap)
            if d > dist[r]:
                continue
            for g in self.v[1:]:
                nd, nr = d + g, (r + g) % v0
                if nd < dist[nr]:
                    dist[nr] = nd
                    heapq.heappush(heap, (nd, nr))
        return tuple(int(d) for d in dist)

    def contains(self, N: int) -> bool:
        if N < 0:
            return False
        return N >= self._apery[N % self.v[0]]

    semigroup_contains = contains

    def gaps(self) -> list[int]:
        return [N for N in range(1, self.conductor) if not self.contains(N)]

    def minimal_generators_check(self) -> bool:
        """Each v_k (k >= 1) is the least semigroup element outside <v_0..v_{k-1}>."""
        for k in range(1, self.h + 1):
            sub = _SubSemigroup(self.v[:k])
            first = next(N for N in range(self.v[k] + 1) if self.contains(N) and not sub.contains(N))
            if first != self.v[k]:
                return False
        return True

    # -- derived quantities used across modules ------------------------------------

    def scaled_prefix(self, k: int) -> "CharSequence":
        """``(v_0/e_k, ..., v_k/e_k)``: the characteristic of the k-th key polynomial."""
        ek = self.e[k]
        return CharSequence(tuple(x // ek for x in self.v[:k + 1]))

    def key_degree(self, k: int) -> int:
        return self.v[0] // self.e[k]

    def info(self) -> dict:
        return {
            "v": list(self.v),
            "e": list(self.e),
            "n": list(self.n),
            "conductor": self.conductor,
            "gaps": self.gaps(),
            "bezout": [list(self.bezout(k)) for k in range(1, self.h + 1)],
        }


class _SubSemigroup:
    def __init__(self, gens: Sequence[int]):
        self.gens = tuple(gens)

    def contains(self, N: int) -> bool:
        reach = [False] * (N + 1)
        reach[0] = True
        for i in range(1, N + 1):
            reach[i] = any(i >= g and reach[i - g] for g in self.gens)
        return reach[N]


def validate(raw: Iterable[int]) -> CharSequence:
    return CharSequence(tuple(raw))


def parse_charseq(text: str) -> CharSequence:
    return validate(int(t) for t in text.replace(" ", "").split(",") if t)


def random_charseq(rng: random.Random, h_max: int = 3, v0_max: int = 12, h_min: int = 0,
                   ns: Sequence[int] = (2, 3), window: int = 6,
                   allow_low_v1: bool = True) -> CharSequence:
    """Random valid sequence: pick the n_k, then each v_k inside a small window.

    ``v_1 < v_0`` is allowed when ``allow_low_v1`` (x not transverse).
    """
    while True:
        h = rng.randint(h_min, h_max)
        nks = [rng.choice(ns) for _ in range(h)]
        if math.prod(nks) <= v0_max:
            break
    e = [1]
    for nk in reversed(nks):
        e.insert(0, e[0] * nk)
    v = [e[0]]
    for k in range(1, h + 1):
        ek, nk = e[k], nks[k - 1]
        if k == 1:
            lo = 1 if allow_low_v1 else v[0] // ek + 1
        else:
            lo = e[k - 2] * v[k - 1] // (e[k - 1] * ek) + 1
        cands = [m for m in range(lo, lo + window * nk) if math.gcd(m, nk) == 1]
        v.append(ek * rng.choice(cands))
    return validate(v)
