import random

import pytest
import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from planebranch.charseq import random_charseq
from planebranch.field import QQ, field_context

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

X, Y = sp.symbols("x y")

FIELDS = {"q": QQ, "gf101": field_context(101), "gf5": field_context(5),
          "gfbig": field_context("fp")}


@pytest.fixture(params=list(FIELDS), ids=list(FIELDS))
def ctx(request):
    return FIELDS[request.param]


def to_sympy(p):
    """A polynomial (not truncated) as a sympy expression; prime-field values as residues."""
    return sum(sp.Rational(c) * X**i * Y**j for j, i, c in p.terms())


def ref_i0(f, g, p: int = 0):
    """Independent oracle: x-order of the sympy resultant, reduced mod p if needed."""
    r = sp.Poly(sp.resultant(to_sympy(f), to_sympy(g), Y), X)
    for (k,), c in sorted(r.terms()):
        if (c % p if p else c) != 0:
            return k
    return None


def brute_members(gens, limit):
    """Membership in the semigroup generated by ``gens`` by a plain sieve."""
    ok = [False] * (limit + 1)
    ok[0] = True
    for N in range(1, limit + 1):
        ok[N] = any(N >= g and ok[N - g] for g in gens)
    return ok


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def charseqs(draw, h_max=3, v0_max=12, h_min=0):
    rng = random.Random(draw(seeds))
    return random_charseq(rng, h_max=h_max, v0_max=v0_max, h_min=h_min)


def brute_family(seq, ctx, xis, shifts, jmax, weight_max):
    """Branches of characteristic ``seq`` built by hand, for exhaustive enumeration.

    ``g_0 = y + c x^j`` (c in ``shifts``, 0 meaning no shift), the key recursion with
    every ``xi`` combination, then at most one standard monomial of weight
    ``<= weight_max`` added to the top.  Unperturbed towers are irreducible by
    construction; a perturbed top is kept only when the Abhyankar-Moh test against
    its unperturbed tower certifies it, so every member has characteristic ``seq``.
    """
    from itertools import product

    from planebranch.series import BranchPoly, XSeries
    from planebranch.tower import KeyTower, am_criterion, extend_tower, perturb

    bases = [(0, 0)] + [(c, j) for c in shifts if c for j in range(1, jmax + 1)]
    perts = [None]
    for a in product(*[range(1, weight_max // seq.v[0] + 1)] +
                     [range(seq.nk(i)) for i in range(1, seq.h + 1)]):
        if sum(x * v for x, v in zip(a, seq.v)) <= weight_max:
            perts.append(a)
    for (c, j), xi in product(bases, product(xis, repeat=seq.h)):
        lower = [XSeries.monomial(ctx, j, c)] if c else [XSeries(ctx, ())]
        g0 = BranchPoly.from_lower(ctx, lower)
        polys = extend_tower([g0], seq, [ctx.coerce(t) for t in xi])
        base = KeyTower(tuple(polys), seq)
        yield base
        for a in perts[1:]:
            top = perturb(polys[-1], polys[:-1], [(a, 1)])
            if am_criterion(base, top).certified:
                yield KeyTower(tuple(polys[:-1]) + (top,), seq)
