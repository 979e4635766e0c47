import random
from fractions import Fraction

import pytest
from hypothesis import given

from planebranch.bayer import realize_intersection
from planebranch.campaign import random_pair, random_triple
from planebranch.charseq import validate
from planebranch.contact import (CongruenceFalsified, NoContactIndex, analyze_pair, bound,
                                 congruence_check, ratio_consequences, sti_check)
from planebranch.field import QQ
from planebranch.oracle import dx
from planebranch.series import BranchPoly, YPoly, branch_from_terms
from planebranch.tower import BranchSpec, KeyTower, build_tower

from conftest import FIELDS, seeds


@pytest.fixture(scope="module")
def t23():
    return build_tower(BranchSpec.make([2, 3]))


@pytest.fixture(scope="module")
def t4613():
    return build_tower(BranchSpec.make([4, 6, 13]))


def test_same_tangent_cusps(t23):
    G = build_tower(BranchSpec.make([2, 3], [2]))
    r = analyze_pair(t23, G)
    assert (r.i0, r.k, r.equality_case, r.ok) == (6, 1, True, True)
    assert bound(t23, G, 1) == 6


def test_key_polynomial_as_partner(t4613):
    G = KeyTower(t4613.polys[:2], validate([2, 3]))
    r = analyze_pair(t4613, G)
    assert (r.i0, r.k, r.equality_case, r.bound_k, r.ok) == (13, 2, True, 13, True)
    assert ratio_consequences(t4613, G, r)


def test_strict_case_with_unit_leading_perturbation(t23):
    # y^2 + x^3 + x^2 y^2, normalized to be monic
    g = BranchPoly.monic_from_unit_leading(YPoly.from_terms(QQ, {(0, 2): 1, (3, 0): 1, (2, 2): 1}, 64))
    G = KeyTower((branch_from_terms({(0, 1): 1}), g), validate([2, 3]))
    r = analyze_pair(t23, G)
    assert (r.i0, r.k, r.equality_case, r.sub_i0) == (10, 2, False, 10)
    assert r.ok


def test_congruence_examples(t4613, t23):
    G = realize_intersection(t4613, validate([2, 3]), 8, seed=1)
    w = congruence_check(t4613, G)
    assert (w.i0, w.n, w.n_prime, w.d) == (8, 4, 2, 2)
    assert "n/d" in w.witnesses and w.modulus == 2
    G7 = realize_intersection(t23, validate([2, 3]), 7, seed=1)
    assert congruence_check(t23, G7).i0 == 7
    G4 = realize_intersection(t23, validate([2, 3]), 4, seed=1)
    assert congruence_check(t23, G4).i0 == 4


def test_sti_examples():
    lines = [branch_from_terms({(0, 1): 1, (1, 0): c}) for c in (1, 2, 3)]
    assert sti_check(*lines)
    assert {dx(lines[0], lines[1]), dx(lines[0], lines[2])} == {1}
    f = branch_from_terms({(0, 2): 1, (3, 0): 1})
    g = branch_from_terms({(0, 2): 1, (3, 0): 2})
    h = branch_from_terms({(0, 1): 1, (1, 0): 1})
    # i0 >= ord f * ord h = 2 forces d_x(f, h) >= 1; here it is exactly the lower bound
    assert dx(f, h) == dx(g, h) == 1 and dx(f, g) == Fraction(3, 2)
    assert sti_check(f, g, h)


def test_counterexample_types_are_loud():
    assert issubclass(NoContactIndex, AssertionError)
    assert issubclass(CongruenceFalsified, AssertionError)


@pytest.mark.parametrize("name", ["gfbig", "q", "gf5"])
@given(seed=seeds)
def test_formula_on_random_pairs(name, seed):
    F, G = random_pair(FIELDS[name], random.Random(seed))
    r = analyze_pair(F, G)
    assert r.ok, r.to_json()
    assert 1 <= r.k <= min(F.h, G.h) + 1
    assert ratio_consequences(F, G, r)
    if not r.equality_case:
        assert r.i0 % (F.charseq.ek(r.k - 1) * G.charseq.ek(r.k - 1)) == 0


@pytest.mark.parametrize("name", ["gfbig", "gf101"])
@given(seed=seeds)
def test_sti_and_congruence_on_random_samples(name, seed):
    rng = random.Random(seed)
    assert sti_check(*random_triple(FIELDS[name], rng))
    congruence_check(*random_pair(FIELDS[name], rng))
