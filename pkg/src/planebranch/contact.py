"""Falsification harness for the intersection formula of two branches.

The contact index ``k`` is computed from the oracle value of ``i_0(f, g)``
alone; every clause of the formula is then checked against further oracle
calls, so prediction and check never share a code path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .charseq import INF
from .oracle import DEFAULT_CAP, dx, i0, intersection_number
from .tower import KeyTower

__all__ = [
    "ContactReport",
    "NoContactIndex",
    "CongruenceFalsified",
    "bound",
    "analyze_pair",
    "ratio_consequences",
    "congruence_check",
    "sti_check",
]


class NoContactIndex(AssertionError):
    """No admissible k satisfies the bound: a counterexample to the formula."""


class CongruenceFalsified(AssertionError):
    pass


def bound(F: KeyTower, G: KeyTower, k: int):
    """``inf{e'_{k-1} v_k, e_{k-1} v'_k}`` with the conventions ``v_{h+1} = inf``."""
    s, t = F.charseq, G.charseq
    return min(t.ek(k - 1) * s.vk(k), s.ek(k - 1) * t.vk(k))


@dataclass(frozen=True)
class ContactReport:
    k: int
    i0: int
    bound_k: int | float
    equality_case: bool
    checks: dict[str, bool] = field(default_factory=dict)
    sub_i0: int | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"k": self.k, "i0": self.i0,
                "bound_k": None if self.bound_k == INF else self.bound_k,
                "equality_case": self.equality_case, "checks": dict(self.checks)}


def analyze_pair(F: KeyTower, G: KeyTower, cap: int = DEFAULT_CAP) -> ContactReport:
    """Find the contact index of ``(F, G)`` and verify clauses (a)-(d) and key sharing."""
    s, t = F.charseq, G.charseq
    n, n2 = s.v[0], t.v[0]
    N = i0(F.branch, G.branch, cap)
    kmax = min(s.h, t.h) + 1
    k = next((j for j in range(1, kmax + 1) if N <= bound(F, G, j)), None)
    if k is None:
        raise NoContactIndex(f"i0={N} exceeds every bound for {s} vs {t}")
    b = bound(F, G, k)
    checks: dict[str, bool] = {}
    checks["a"] = all(Fraction(s.v[i], n) == Fraction(t.v[i], n2) for i in range(k))
    checks["b"] = N <= b
    strict = N < b
    sub = None
    if strict:
        r = intersection_number(F.key(k - 1), G.key(k - 1), cap)
        sub = r.value
        checks["c"] = sub is not None and N == s.ek(k - 1) * t.ek(k - 1) * sub
        checks["corollary"] = N % (s.ek(k - 1) * t.ek(k - 1)) == 0
    if k > 1:
        checks["d"] = N > bound(F, G, k - 1)
    share = True
    for i in range(k - 1):
        # f_i must act as a key polynomial of g and vice versa
        share &= F.key(i).ydeg == t.key_degree(i)
        share &= intersection_number(G.branch, F.key(i), cap).value == t.v[i + 1]
        share &= intersection_number(F.branch, G.key(i), cap).value == s.v[i + 1]
    checks["sharing"] = share
    return ContactReport(k, N, b, not strict, checks, sub)


def ratio_consequences(F: KeyTower, G: KeyTower, report: ContactReport) -> bool:
    """``n/e_i = n'/e'_i``, ``n_i = n'_i`` and ``e'_{i-1} v_i = e_{i-1} v'_i`` below k."""
    s, t = F.charseq, G.charseq
    n, n2 = s.v[0], t.v[0]
    ok = True
    for i in range(report.k):
        ok &= n * t.e[i] == n2 * s.e[i]
        if i > 0:
            ok &= s.nk(i) == t.nk(i)
            ok &= t.e[i - 1] * s.v[i] == s.e[i - 1] * t.v[i]
    return ok


@dataclass(frozen=True)
class CongruenceWitness:
    i0: int
    n: int
    n_prime: int
    d: int
    witnesses: tuple[str, ...]

    @property
    def modulus(self) -> int:
        return self.n // self.d if "n/d" in self.witnesses else self.n_prime // self.d


def congruence_check(F: KeyTower, G: KeyTower, cap: int = DEFAULT_CAP) -> CongruenceWitness:
    """``i_0(f, g)`` is divisible by ``n/d`` or by ``n'/d`` (reference line ``x``)."""
    n, n2 = F.branch.mult_x(), G.branch.mult_x()
    d = math.gcd(n, n2)
    N = i0(F.branch, G.branch, cap)
    wit = tuple(name for name, m in (("n/d", n // d), ("n'/d", n2 // d)) if N % m == 0)
    if not wit:
        raise CongruenceFalsified(f"i0={N} divisible by neither {n // d} nor {n2 // d}")
    return CongruenceWitness(N, n, n2, d, wit)


def sti_check(F, G, H, cap: int = DEFAULT_CAP) -> bool:
    """The two smallest of ``d_x(F,G), d_x(F,H), d_x(G,H)`` coincide."""
    f, g, h = (T.branch if isinstance(T, KeyTower) else T for T in (F, G, H))
    vals = sorted((dx(f, g, cap), dx(f, h, cap), dx(g, h, cap)))
    return vals[0] == vals[1]
