import random
from fractions import Fraction

import pytest
from hypothesis import given

from planebranch.bayer import rho
from planebranch.campaign import (THEOREMS, continue_charseq, random_pair, related_charseq,
                                  run_campaign)
from planebranch.field import field_context

from conftest import charseqs, seeds


@given(seq=charseqs(h_min=1), seed=seeds)
def test_related_sequences_share_a_prefix(seq, seed):
    t = related_charseq(seq, random.Random(seed))
    assert rho(seq, t) >= 1
    assert Fraction(t.v[1], t.v[0]) == Fraction(seq.v[1], seq.v[0])


@given(seed=seeds)
def test_continuation_is_valid(seed):
    rng = random.Random(seed)
    s = continue_charseq([12, 18], rng)
    assert s.v[:2] == (12, 18)


@given(seed=seeds)
def test_pairs_are_distinct(seed):
    F, G = random_pair(field_context(101), random.Random(seed))
    assert F.branch != G.branch


@pytest.mark.parametrize("theorem", sorted(THEOREMS))
def test_small_campaigns_pass_and_repeat(theorem):
    ctx = field_context("fp")
    a = run_campaign(theorem, 15, 7, ctx)
    assert a.ok, a.failures
    assert a.to_json() == run_campaign(theorem, 15, 7, ctx).to_json()
    assert a.to_json()["seeds"] == [7]


def test_failures_are_recorded(monkeypatch):
    def broken(ctx, rng, cap, kw):
        raise AssertionError("boom")

    monkeypatch.setitem(THEOREMS, "sti", broken)
    rep = run_campaign("sti", 3, 0, field_context(5))
    assert not rep.ok
    assert [f["trial"] for f in rep.failures] == [0, 1, 2]
    assert rep.failures[0]["message"] == "boom"
