"""Key-polynomial towers: concrete branches with a prescribed characteristic.

Starting from ``f_0 = y`` the tower is

    f_i = f_{i-1}**n_i + xi_i * x**a_0 * f_0**a_1 * ... * f_{i-2}**a_{i-1}

with ``(a_0, ..., a_{i-1})`` the Bezout coefficients of ``n_i v_i``.  The
polynomials are exact (no truncation); every tower handed out has been checked
against the intersection oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .charseq import CharSequence, validate
from .field import FieldContext, FieldElement, QQ, field_context, random_nonzero
from .oracle import DEFAULT_CAP, intersection_number
from .series import EXACT, BranchPoly, XSeries, YPoly

__all__ = [
    "BranchSpec",
    "KeyTower",
    "TowerVerificationFailed",
    "AMVerdict",
    "build_tower",
    "verify_tower",
    "extend_tower",
    "key_monomial",
    "perturb",
    "key3_bound_check",
    "am_criterion",
    "random_spec",
    "default_precision",
]


class TowerVerificationFailed(AssertionError):
    def __init__(self, k, expected, got):
        super().__init__(f"tower check failed at k={k}: expected {expected}, oracle gave {got}")
        self.k = k
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class BranchSpec:
    """Recipe for a branch: characteristic, tower coefficients, optional perturbation.

    ``perturbation`` entries are ``((a_0, ..., a_h), coeff)`` standing for
    ``coeff * x**a_0 * f_0**a_1 * ... * f_{h-1}**a_h``.
    """

    charseq: CharSequence
    xi: tuple[FieldElement, ...]
    perturbation: tuple[tuple[tuple[int, ...], FieldElement], ...] = ()
    ctx: FieldContext | None = None

    def __post_init__(self):
        if self.ctx is None:
            ctx = self.xi[0].ctx if self.xi else (self.perturbation[0][1].ctx if self.perturbation else QQ)
            object.__setattr__(self, "ctx", ctx)
        for x in self.xi:
            self.ctx.check(x.ctx)
        h = self.charseq.h
        if len(self.xi) != h:
            raise ValueError(f"need {h} xi values for {self.charseq}, got {len(self.xi)}")
        if any(not x for x in self.xi):
            raise ValueError("xi values must be nonzero")
        for exps, _ in self.perturbation:
            if len(exps) != h + 1:
                raise ValueError(f"perturbation exponents need length {h + 1}")
            if exps[0] <= 0 or any(a < 0 for a in exps):
                raise ValueError("perturbation needs a_0 > 0 and a_i >= 0")

    @classmethod
    def make(cls, v: Sequence[int] | CharSequence, xi: Sequence = (), ctx: FieldContext = QQ,
             perturbation: Sequence = ()) -> "BranchSpec":
        seq = v if isinstance(v, CharSequence) else validate(v)
        if not xi:
            xi = [1] * seq.h
        pert = tuple((tuple(int(a) for a in exps), ctx.elem(c)) for exps, c in perturbation)
        return cls(seq, tuple(ctx.elem(x) for x in xi), pert, ctx)

    def to_json(self) -> dict:
        ctx = self.ctx
        return {
            "field": "q" if ctx.is_rational else f"fp:{ctx.p}",
            "char": list(self.charseq.v),
            "xi": [str(x) for x in self.xi],
            "perturbation": [{"exponents": list(e), "c": str(c)} for e, c in self.perturbation],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "BranchSpec":
        ctx = field_context(doc.get("field", "q"))
        pert = [(d["exponents"], ctx.parse(str(d["c"]))) for d in doc.get("perturbation", ())]
        return cls.make(doc["char"], [ctx.parse(str(x)) for x in doc.get("xi", ())], ctx, pert)


@dataclass(frozen=True)
class KeyTower:
    """Key polynomials ``(f_0, ..., f_h)``; ``polys[-1]`` is the branch itself."""

    polys: tuple[BranchPoly, ...]
    charseq: CharSequence
    spec: BranchSpec | None = None
    recipe: dict = field(default_factory=dict, compare=False)

    @property
    def branch(self) -> BranchPoly:
        return self.polys[-1]

    @property
    def h(self) -> int:
        return self.charseq.h

    @property
    def ctx(self) -> FieldContext:
        return self.branch.ctx

    def key(self, k: int) -> BranchPoly:
        return self.polys[k]

    def to_json(self) -> dict:
        doc = {"char": list(self.charseq.v), "branch": self.branch.to_json(),
               "keys": [p.to_json() for p in self.polys[:-1]]}
        if self.spec is not None:
            doc["spec"] = self.spec.to_json()
        if self.recipe:
            doc["recipe"] = self.recipe
        return doc

    @classmethod
    def from_json(cls, doc: Mapping, verify: bool = True) -> "KeyTower":
        """Load a tower document; a bare spec is rebuilt, otherwise keys are read back."""
        if "spec" in doc and "keys" not in doc:
            return build_tower(BranchSpec.from_json(doc["spec"]))
        seq = validate(doc["char"])
        polys = tuple(BranchPoly.from_json(d) for d in doc["keys"]) + (BranchPoly.from_json(doc["branch"]),)
        spec = BranchSpec.from_json(doc["spec"]) if "spec" in doc else None
        tower = cls(polys, seq, spec, dict(doc.get("recipe", {})))
        if verify:
            verify_tower(tower)
        return tower


def default_precision(seq: CharSequence) -> int:
    """Working precision that comfortably covers every predicted intersection number."""
    h = seq.h
    top = seq.ek(h - 1) * seq.v[h] if h else 0
    return 2 * (seq.conductor + top) + 8


def key_monomial(keys: Sequence[BranchPoly], exps: Sequence[int], coeff, ctx: FieldContext) -> YPoly:
    """``coeff * x**exps[0] * keys[0]**exps[1] * ... * keys[m-1]**exps[m]``."""
    term = YPoly(ctx, [XSeries.monomial(ctx, exps[0], coeff)])
    for key, a in zip(keys, exps[1:]):
        if a:
            term = term * key ** a
    return term


def extend_tower(base: Sequence[BranchPoly], seq: CharSequence, xis: Sequence) -> list[BranchPoly]:
    """Continue ``base = (g_0, ..., g_{m})`` up to ``g_h`` by the key recursion for ``seq``.

    ``xis[j]`` is the coefficient used for level ``m + 1 + j``.
    """
    polys = list(base)
    ctx = polys[0].ctx
    start = len(polys)
    for i in range(start, seq.h + 1):
        a = seq.bezout(i)
        xi = xis[i - start]
        nxt = polys[i - 1] ** seq.nk(i) + key_monomial(polys, a, xi, ctx)
        polys.append(BranchPoly.from_ypoly(nxt))
    return polys


def perturb(f: BranchPoly, keys: Sequence[BranchPoly], terms) -> BranchPoly:
    """``f + sum c x**a_0 keys[0]**a_1 ...``; must stay monic distinguished."""
    g: YPoly = f
    for exps, c in terms:
        if exps[0] <= 0:
            raise ValueError("perturbation needs a_0 > 0")
        g = g + key_monomial(keys, exps, c, f.ctx)
    return BranchPoly.from_ypoly(g)


def build_tower(spec: BranchSpec, precision=None, verify: bool = True, cap: int = DEFAULT_CAP) -> KeyTower:
    """Expand a spec into an oracle-verified key tower.

    ``precision`` truncates the polynomials (auto-raised to
    ``conductor + v_0 + 1``); by default they are kept exact.
    """
    seq = spec.charseq
    ctx = spec.ctx
    y = BranchPoly.from_lower(ctx, [XSeries(ctx, ())])
    polys = extend_tower([y], seq, [x.value for x in spec.xi])
    if spec.perturbation:
        polys[-1] = perturb(polys[-1], polys[:-1], [(e, c.value) for e, c in spec.perturbation])
    if precision is not None and precision != EXACT:
        T = max(int(precision), seq.conductor + seq.v[0] + 1)
        polys = [p.truncate(T) for p in polys]
        polys = [BranchPoly.from_ypoly(p) for p in polys]
    tower = KeyTower(tuple(polys), seq, spec)
    if verify:
        verify_tower(tower, cap=cap)
    return tower


def verify_tower(tower: KeyTower, cap: int = DEFAULT_CAP) -> None:
    """Degrees ``v_0/e_k``, ``mult_x = v_0`` and ``i_0(f, f_k) = v_{k+1}``.

    These conditions do not prove irreducibility on their own (``y^2 + xy + x^3``
    passes them for ``(2, 3)``).  Towers from the key recursion are irreducible by
    construction; for anything else use :func:`am_criterion`.
    """
    seq = tower.charseq
    if len(tower.polys) != seq.h + 1:
        raise TowerVerificationFailed("len", seq.h + 1, len(tower.polys))
    for k, p in enumerate(tower.polys):
        if p.ydeg != seq.key_degree(k):
            raise TowerVerificationFailed(k, f"deg_y = {seq.key_degree(k)}", p.ydeg)
    f = tower.branch
    if f.mult_x() != seq.v[0]:
        raise TowerVerificationFailed("mult_x", seq.v[0], f.mult_x())
    for k in range(seq.h):
        got = intersection_number(f, tower.polys[k], cap).value
        if got != seq.v[k + 1]:
            raise TowerVerificationFailed(k, seq.v[k + 1], got)


def key3_bound_check(tower: KeyTower, g: BranchPoly, k: int, cap: int = DEFAULT_CAP) -> bool:
    """Approximant bound: a monic g of y-degree ``v_0/e_k`` meets f at most ``v_{k+1}`` times."""
    seq = tower.charseq
    if g.ydeg != seq.key_degree(k):
        raise ValueError(f"g must have y-degree {seq.key_degree(k)}")
    r = intersection_number(tower.branch, g, cap)
    if r.exhausted:
        return k == seq.h
    return r.value <= seq.vk(k + 1)


@dataclass(frozen=True)
class AMVerdict:
    certified: bool
    i0: int | None
    threshold: int
    charseq: CharSequence | None = None

    @property
    def status(self) -> str:
        return "certified-equisingular" if self.certified else "inconclusive"


def am_criterion(tower: KeyTower, g: BranchPoly, cap: int = DEFAULT_CAP) -> AMVerdict:
    """Abhyankar-Moh: ``mult_x(g) = v_0`` and ``i_0(f, g) > e_{h-1} v_h`` certify g.

    A certified verdict carries the characteristic g is thereby proven to have.
    """
    seq = tower.charseq
    h = seq.h
    threshold = seq.ek(h - 1) * seq.v[h] if h else 0
    if g.mult_x() != seq.v[0]:
        return AMVerdict(False, None, threshold)
    r = intersection_number(tower.branch, g, cap)
    if r.exhausted:
        return AMVerdict(False, None, threshold)
    ok = r.value > threshold
    return AMVerdict(ok, r.value, threshold, seq if ok else None)


def random_spec(seq: CharSequence, ctx: FieldContext, rng: random.Random) -> BranchSpec:
    return BranchSpec(seq, tuple(random_nonzero(ctx, rng) for _ in range(seq.h)), (), ctx)
