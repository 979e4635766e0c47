"""Command-line front end.  Every subcommand prints one JSON document on stdout.

Exit codes: 0 success, 1 domain error (diagnostic JSON on stderr),
2 falsified statement, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .bayer import bayer_set, realize_intersection
from .campaign import THEOREMS, run_campaign
from .charseq import parse_charseq
from .distance import realize_distance
from .field import FieldContext, field_context, random_nonzero
from .oracle import DEFAULT_CAP, intersection_number
from .series import BranchPoly
from .tower import (BranchSpec, KeyTower, TowerVerificationFailed, am_criterion, build_tower,
                    verify_tower)

__all__ = ["RunConfig", "main", "dispatch", "dumps", "SEED_ENV"]

SEED_ENV = "PLANEBRANCH_SEED"
EX_DOMAIN, EX_FALSIFIED, EX_USAGE = 1, 2, 64


@dataclass(frozen=True)
class RunConfig:
    field: FieldContext
    seed: int
    cap: int = DEFAULT_CAP
    out: Path | None = None


class UsageError(Exception):
    pass


class Falsified(Exception):
    def __init__(self, doc: dict):
        super().__init__("falsified")
        self.doc = doc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _read_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _load(path: str) -> tuple[KeyTower | None, BranchPoly]:
    """A tower document, a bare spec, or a bare branch polynomial."""
    doc = _read_json(path)
    if "branch" in doc:
        T = KeyTower.from_json(doc)
        return T, T.branch
    if "char" in doc:
        T = build_tower(BranchSpec.from_json(doc))
        return T, T.branch
    return None, BranchPoly.from_json(doc)


def _load_tower(path: str) -> KeyTower:
    T, _ = _load(path)
    if T is None:
        raise ValueError(f"{path} holds a bare polynomial; a key tower document is needed")
    return T


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


# -- subcommands -----------------------------------------------------------------


def cmd_charseq(args, cfg: RunConfig) -> dict:
    return parse_charseq(args.v).info()


def cmd_branch_build(args, cfg: RunConfig) -> dict:
    seq = parse_charseq(args.char)
    ctx = cfg.field
    if args.xi:
        xi = [ctx.parse(t) for t in args.xi.split(",")]
    else:
        rng = random.Random(cfg.seed)
        xi = [random_nonzero(ctx, rng).value for _ in range(seq.h)]
    pert = []
    for item in args.perturb or ():
        exps, _, coeff = item.partition(":")
        pert.append((_int_list(exps), ctx.parse(coeff or "1")))
    spec = BranchSpec.make(seq, xi, ctx, pert)
    return build_tower(spec, cap=cfg.cap).to_json()


def cmd_branch_verify(args, cfg: RunConfig) -> dict:
    seq = parse_charseq(args.char)
    T, f = _load(args.f)
    if T is not None:
        if T.charseq != seq:
            raise ValueError(f"document has characteristic {T.charseq}, expected {seq}")
        try:
            verify_tower(T, cfg.cap)
        except TowerVerificationFailed as exc:
            raise ValueError(str(exc)) from exc
        # the invariants alone do not prove irreducibility; a matching spec does
        rebuilt = T.spec is not None and build_tower(T.spec).polys == T.polys
        return {"ok": True, "method": "tower", "char": list(seq.v),
                "certificate": "construction" if rebuilt else "invariants-only"}
    ref = build_tower(BranchSpec.make(seq, ctx=f.ctx))
    verdict = am_criterion(ref, f, cfg.cap)
    if not verdict.certified:
        raise ValueError(f"could not certify characteristic {seq} (i0 with reference = {verdict.i0}, "
                         f"needs > {verdict.threshold})")
    return {"ok": True, "method": "abhyankar-moh", "char": list(seq.v), "i0": verdict.i0,
            "status": verdict.status}


def cmd_intersect(args, cfg: RunConfig) -> dict:
    _, f = _load(args.f)
    _, g = _load(args.g)
    r = intersection_number(f, g, cfg.cap)
    if r.exhausted:
        return {"i0": "exhausted", "dx": None, "d": None, "cap": r.cap}
    N = r.value
    return {"i0": N, "dx": _frac(Fraction(N, f.mult_x() * g.mult_x())),
            "d": _frac(Fraction(N, f.order() * g.order()))}


def cmd_bayer(args, cfg: RunConfig) -> dict:
    S = bayer_set(parse_charseq(args.f_char), parse_charseq(args.g_char), args.mode)
    return S.to_json(args.limit)


def cmd_realize(args, cfg: RunConfig) -> dict:
    F = _load_tower(args.f)
    G = realize_intersection(F, parse_charseq(args.g_char), args.n, cfg.seed, args.retries, cfg.cap)
    doc = G.to_json()
    doc["i0_verified"] = bool(G.recipe.get("i0_verified"))
    return doc


def cmd_distance(args, cfg: RunConfig) -> dict:
    F = _load_tower(args.f)
    return realize_distance(F, Fraction(args.r), cfg.seed, cap=cfg.cap).to_json()


def cmd_check(args, cfg: RunConfig) -> dict:
    kw = {}
    if args.char_max is not None:
        kw["v0_max"] = args.char_max
    rep = run_campaign(args.theorem, args.trials, cfg.seed, cfg.field, cfg.cap, **kw)
    doc = rep.to_json()
    if not rep.ok:
        raise Falsified(doc)
    return doc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="planebranch", description="Exact intersection theory of plane branches.")
    p.add_argument("--field", default="q", help="q or fp:<prime> (default q)")
    p.add_argument("--seed", type=int, default=None, help=f"default from ${SEED_ENV}, else 0")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle precision cap")
    p.add_argument("--out", type=Path, default=None, help="also write the JSON result here")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cs = sub.add_parser("charseq", help="characteristic sequence invariants")
    cs_sub = cs.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = cs_sub.add_parser("info")
    info.add_argument("v")
    info.set_defaults(run=cmd_charseq)

    br = sub.add_parser("branch", help="build or verify key towers")
    br_sub = br.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = br_sub.add_parser("build")
    b.add_argument("--char", required=True)
    b.add_argument("--xi", default=None, help="comma-separated tower coefficients")
    b.add_argument("--perturb", action="append", metavar="A0,A1,..:COEFF")
    b.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    b.set_defaults(run=cmd_branch_build)
    v = br_sub.add_parser("verify")
    v.add_argument("--f", required=True)
    v.add_argument("--char", required=True)
    v.set_defaults(run=cmd_branch_verify)

    it = sub.add_parser("intersect", help="intersection multiplicity of two branches")
    it.add_argument("--f", required=True)
    it.add_argument("--g", required=True)
    it.add_argument("--cap", type=int, default=argparse.SUPPRESS)
    it.set_defaults(run=cmd_intersect)

    by = sub.add_parser("bayer", help="attainable intersection numbers")
    by.add_argument("--f-char", required=True)
    by.add_argument("--g-char", required=True)
    by.add_argument("--mode", choices=("extended", "literal"), default="extended")
    by.add_argument("--limit", type=int, default=60)
    by.set_defaults(run=cmd_bayer)

    rz = sub.add_parser("realize", help="branch with prescribed intersection number")
    rz.add_argument("--f", required=True)
    rz.add_argument("--g-char", required=True)
    rz.add_argument("--n", type=int, required=True)
    rz.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    rz.add_argument("--retries", type=int, default=32)
    rz.set_defaults(run=cmd_realize)

    ds = sub.add_parser("distance", help="branch at a prescribed logarithmic distance")
    ds.add_argument("--f", required=True)
    ds.add_argument("--r", required=True)
    ds.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    ds.set_defaults(run=cmd_distance)

    ck = sub.add_parser("check", help="seeded falsification campaign")
    ck.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    ck.add_argument("--trials", type=int, default=200)
    ck.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    ck.add_argument("--char-max", type=int, default=None, help="largest v_0 sampled")
    ck.set_defaults(run=cmd_check)
    return p


def _config(args) -> RunConfig:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    return RunConfig(field_context(args.field), seed, args.cap, args.out)


def _emit(doc, cfg: RunConfig | None, stream) -> None:
    text = dumps(doc)
    print(text, file=stream)
    if cfg is not None and cfg.out is not None and stream is sys.stdout:
        cfg.out.write_text(text + "\n")


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EX_USAGE
    cfg = None
    try:
        cfg = _config(args)
        doc = args.run(args, cfg)
    except Falsified as exc:
        _emit(exc.doc, cfg, sys.stdout)
        return EX_FALSIFIED
    except AssertionError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc), "falsified": True}, None, sys.stderr)
        return EX_FALSIFIED
    except (ValueError, TypeError, KeyError, ArithmeticError, RuntimeError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, None, sys.stderr)
        return EX_DOMAIN
    _emit(doc, cfg, sys.stdout)
    return 0


def main() -> None:
    sys.exit(dispatch())
