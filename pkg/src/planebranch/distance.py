"""Branches at a prescribed logarithmic distance ``d(f, g) = i_0(f, g) / (ord f ord g)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bayer import DEFAULT_RETRIES, realize_intersection
from .charseq import INF, CharSequence, CharSequenceError, validate
from .oracle import DEFAULT_CAP, logdist
from .tower import KeyTower

__all__ = [
    "DistanceWitness",
    "InvalidR",
    "HypothesisViolated",
    "AuxSequenceInvalid",
    "DistanceMismatch",
    "realize_distance",
    "key_distances",
    "locate",
]


class InvalidR(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class AuxSequenceInvalid(AssertionError):
    pass


class DistanceMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class DistanceWitness:
    g: KeyTower
    R: Fraction
    case_tag: str
    i0: int
    aux: CharSequence | None = None

    def to_json(self) -> dict:
        return {"g": self.g.to_json(), "case": self.case_tag, "i0": self.i0,
                "d": str(self.R), "aux_char": list(self.aux.v) if self.aux else None}


def key_distances(seq: CharSequence) -> list[Fraction]:
    """``e_{k-1} v_k / v_0**2`` for ``k = 1..h``: the distances from f to its keys."""
    v0 = seq.v[0]
    return [Fraction(seq.e[k - 1] * seq.v[k], v0 * v0) for k in range(1, seq.h + 1)]


def locate(seq: CharSequence, R: Fraction) -> int:
    """The unique k in 1..h+1 with ``e_{k-2}v_{k-1}/v_0^2 < R < e_{k-1}v_k/v_0^2``."""
    v0sq = seq.v[0] ** 2
    hits = []
    for k in range(1, seq.h + 2):
        lo = Fraction(seq.ek(k - 2) * seq.vk(k - 1), v0sq)
        hi = seq.vk(k)
        hi = INF if hi == INF else Fraction(seq.ek(k - 1) * hi, v0sq)
        if lo < R < hi:
            hits.append(k)
    if len(hits) != 1:
        raise AssertionError(f"window index for R={R} is not unique: {hits}")
    return hits[0]


def _check_aux(seq: CharSequence, aux: CharSequence, k: int) -> None:
    e0, e0p = seq.e[0], aux.e[0]
    for j in range(1, k):
        if Fraction(aux.v[j], e0p) != Fraction(seq.v[j], e0):
            raise AuxSequenceInvalid(f"ratio mismatch at j={j} for {aux}")
    if k <= seq.h and not Fraction(aux.v[k], e0p) < Fraction(seq.v[k], e0):
        raise AuxSequenceInvalid(f"v'_k/e'_0 is not below v_k/e_0 for {aux}")


def realize_distance(F: KeyTower, R, seed: int = 0, retries: int = DEFAULT_RETRIES,
                     cap: int = DEFAULT_CAP) -> DistanceWitness:
    """A certified branch g with ``d(F, g) = R`` for a rational ``R > 1``.

    Requires transverse coordinates (``v_0 < v_1``).  Either g is a key
    polynomial of F, or g is realized through the attainable-set machinery
    with an auxiliary characteristic.
    """
    R = Fraction(R)
    if R <= 1:
        raise InvalidR(f"R must exceed 1, got {R}")
    seq = F.charseq
    if seq.h and not seq.v[0] < seq.v[1]:
        raise HypothesisViolated(f"need v_0 < v_1, got {seq}")
    v0 = seq.v[0]
    aux = None
    dists = key_distances(seq)
    if R in dists:
        k = dists.index(R) + 1
        sub = seq.scaled_prefix(k - 1)
        G = KeyTower(F.polys[:k], sub, None, {"case": "key-polynomial", "k": k})
        tag = "key-polynomial"
    else:
        k = locate(seq, R)
        ek1 = seq.e[k - 1]
        q = R * Fraction(v0 // ek1) ** 2
        r, s = q.numerator, q.denominator
        if s > 1:
            try:
                aux = validate([s * x // ek1 for x in seq.v[:k]] + [r])
            except CharSequenceError as exc:
                raise AuxSequenceInvalid(str(exc)) from exc
            _check_aux(seq, aux, k)
            N = min(aux.e[k - 1] * seq.vk(k), ek1 * aux.v[k])
            G = realize_intersection(F, aux, N, seed, retries, cap, mode="extended")
            tag = "s-greater-1"
        else:
            N = r * ek1 * ek1
            G = realize_intersection(F, seq, N, seed, retries, cap, mode="extended")
            tag = "s-equal-1"
    d = logdist(F.branch, G.branch, cap)
    if d != R:
        raise DistanceMismatch(f"constructed branch has d = {d}, wanted {R}")
    i0v = d * F.branch.order() * G.branch.order()
    return DistanceWitness(G, R, tag, int(i0v), aux)
