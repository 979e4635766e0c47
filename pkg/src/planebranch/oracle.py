"""Intersection multiplicity ``i_0(f, g) = ord_x Res_y(f, g)``.

Two independent routes are provided.

:func:`resultant_y` evaluates the Sylvester determinant over the polynomial
ring K[x] with Bareiss fraction-free elimination and returns the resultant
itself.  It is exact but slow and serves as the reference.

:func:`intersection_number` only needs the x-order of the resultant.  It uses
the multiplication-by-g matrix on ``K[[x]][y]/(f)`` (its determinant is the
resultant when f is monic) and eliminates over the discrete valuation ring
K[[x]] with minimal-valuation pivoting.  Rows are rescaled by units and
constants only, which leaves the order of the determinant untouched, and
every entry stays correct modulo ``x**T``.  The order is then the sum of the
pivot valuations, exact as soon as every pivot is nonzero modulo ``x**T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .field import FieldContext, content, kron_mul
from .series import EXACT, BranchPoly, XSeries, YPoly

__all__ = [
    "IntersectionResult",
    "InvalidCap",
    "PrecisionExhausted",
    "DEFAULT_CAP",
    "resultant_y",
    "intersection_number",
    "i0",
    "dx",
    "logdist",
]

DEFAULT_CAP = 4096
T0 = 64


class PrecisionExhausted(ArithmeticError):
    """No finite order was found below the cap (large i_0 or a common component)."""

    def __init__(self, cap: int):
        super().__init__(f"intersection number not determined up to precision {cap}")
        self.cap = cap


class InvalidCap(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionResult:
    value: int | None
    precision_used: int
    cap: int

    @property
    def exhausted(self) -> bool:
        return self.value is None

    def __int__(self) -> int:
        if self.value is None:
            raise PrecisionExhausted(self.cap)
        return self.value


# -- reference route: Sylvester + Bareiss over K[x] -----------------------------


def _psub(ctx: FieldContext, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [ctx.sub(a[i] if i < len(a) else ctx.zero, b[i] if i < len(b) else ctx.zero)
           for i in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def _pmul(ctx: FieldContext, a: list, b: list) -> list:
    out = ctx.mul_series(a, b, EXACT)
    while out and not out[-1]:
        out.pop()
    return out


def _pdiv_exact(ctx: FieldContext, a: list, b: list) -> list:
    """Quotient of polynomials ``a / b`` where b divides a exactly."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        if a:
            raise ArithmeticError("inexact polynomial division")
        return []
    inv = ctx.inv(b[-1])
    q = [ctx.zero] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        t = ctx.mul(c, inv)
        q[k - db] = t
        for i, bv in enumerate(b):
            a[k - db + i] = ctx.sub(a[k - db + i], ctx.mul(t, bv))
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    while q and not q[-1]:
        q.pop()
    return q


def _bareiss_det(ctx: FieldContext, M: list[list[list]]) -> list:
    n = len(M)
    if n == 0:
        return [ctx.one]
    M = [[list(e) for e in row] for row in M]
    sign = 1
    prev = [ctx.one]
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _psub(ctx, _pmul(ctx, M[i][j], M[k][k]), _pmul(ctx, M[i][k], M[k][j]))
                M[i][j] = _pdiv_exact(ctx, num, prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else [ctx.neg(c) for c in det]


def resultant_y(f: YPoly, g: YPoly) -> XSeries:
    """Sylvester resultant ``Res_y(f, g)``, correct modulo ``x**T``.

    ``T`` is the common precision of the inputs; exact inputs give an exact
    polynomial.  Row ``i < deg g`` holds the coefficients of ``y**i * f``.
    """
    ctx = f.ctx
    ctx.check(g.ctx)
    T = min(f.precision, g.precision)
    n, m = f.ydeg, g.ydeg
    fc = [list(s.truncate(T).c) for s in f.coeffs]
    gc = [list(s.truncate(T).c) for s in g.coeffs]
    size = n + m
    M = [[[] for _ in range(size)] for _ in range(size)]
    for i in range(m):
        for j, c in enumerate(reversed(fc)):
            M[i][i + j] = c
    for i in range(n):
        for j, c in enumerate(reversed(gc)):
            M[m + i][i + j] = c
    det = _bareiss_det(ctx, M)
    return XSeries(ctx, det, T)


# -- fast route: valuation pivoting on the multiplication matrix ----------------


def _norm_matrix(f: BranchPoly, g: YPoly, T: int) -> list[list[list]]:
    """Entry ``[i][j]`` is the y**i coefficient of ``y**j * g mod f``, mod x**T."""
    ctx = f.ctx
    n = f.ydeg
    fl = [list(f.coeffs[i].c[:T]) for i in range(n)]
    rem = [list(s.c[:T]) for s in g.coeffs]

    def sub_mul(target: list, top: list, fi: list) -> list:
        if not top or not fi:
            return target
        prod = ctx.mul_series(top, fi, T)
        if len(prod) > len(target):
            target = target + [ctx.zero] * (len(prod) - len(target))
        sub = ctx.sub
        for k, v in enumerate(prod):
            if v:
                target[k] = sub(target[k], v)
        return target

    while len(rem) > n:
        top = rem.pop()
        d = len(rem)
        for i in range(n):
            rem[d - n + i] = sub_mul(rem[d - n + i], top, fl[i])
    rem += [[] for _ in range(n - len(rem))]
    cols = [rem]
    for _ in range(n - 1):
        prev = cols[-1]
        top = prev[n - 1]
        nxt = [[]] + [list(c) for c in prev[:n - 1]]
        for i in range(n):
            nxt[i] = sub_mul(nxt[i], top, fl[i])
        cols.append(nxt)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _to_int_rows(ctx: FieldContext, M: list[list[list]]) -> list[list[list[int]]]:
    if ctx.p:
        return [[list(e) for e in row] for row in M]
    out = []
    for row in M:
        dens = [c.denominator for e in row for c in e]
        L = math.lcm(*dens) if dens else 1
        ints = [[c.numerator * (L // c.denominator) for c in e] for e in row]
        out.append(_reduce_row(ints))
    return out


def _val(e: list[int]) -> int:
    for i, v in enumerate(e):
        if v:
            return i
    return -1


def _trimmed(e: list[int]) -> list[int]:
    n = len(e)
    while n and not e[n - 1]:
        n -= 1
    return e[:n]


def _reduce_row(row: list[list[int]]) -> list[list[int]]:
    g = content(v for e in row for v in e)
    if g > 1:
        return [[v // g for v in e] for e in row]
    return row


def _order_of_det(ctx: FieldContext, M: list[list[list[int]]], T: int) -> int | None:
    """x-order of det M with entries known mod x**T, or None if undetermined."""
    p = ctx.p
    signed = p == 0
    rows = list(range(len(M)))
    cols = list(range(len(M)))
    total = 0
    while rows:
        best = None
        for r in rows:
            Mr = M[r]
            for c in cols:
                v = _val(Mr[c])
                if v >= 0 and (best is None or v < best[0]):
                    best = (v, r, c)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            return None
        v, pr, pc = best
        total += v
        rows.remove(pr)
        cols.remove(pc)
        prow = M[pr]
        u = prow[pc][v:]
        for r in rows:
            Mr = M[r]
            q = Mr[pc]
            if _val(q) < 0:
                continue
            q = q[v:]
            new = {}
            for c in cols:
                a, b = Mr[c], prow[c]
                t1 = kron_mul(u, a, T, signed) if a else [0] * T
                if b:
                    t2 = kron_mul(q, b, T, signed)
                    e = [x - y for x, y in zip(t1, t2)]
                else:
                    e = t1
                if p:
                    e = [x % p for x in e]
                new[c] = _trimmed(e)
            for c, e in new.items():
                Mr[c] = e
            Mr[pc] = []
            if signed:
                g = content(x for c in cols for x in Mr[c])
                if g > 1:
                    for c in cols:
                        Mr[c] = [x // g for x in Mr[c]]
    return total


def intersection_number(f: YPoly, g: YPoly, cap: int = DEFAULT_CAP, t0: int = T0) -> IntersectionResult:
    """``i_0(f, g)`` with adaptive precision ``t0, 2 t0, ...`` up to ``cap``.

    Both inputs must be monic in y; at least one must be a branch polynomial
    (it becomes the modulus).  The working precision never exceeds that of
    the inputs.
    """
    if cap < 1:
        raise InvalidCap(f"cap must be >= 1, got {cap}")
    f.ctx.check(g.ctx)
    if not isinstance(f, BranchPoly):
        f, g = g, f
    if not isinstance(f, BranchPoly):
        raise TypeError("need at least one branch polynomial")
    if isinstance(g, BranchPoly) and g.ydeg < f.ydeg:
        f, g = g, f
    limit = min(f.precision, g.precision, cap)
    T = int(min(t0, limit))
    while True:
        M = _to_int_rows(f.ctx, _norm_matrix(f, g, T))
        val = _order_of_det(f.ctx, M, T)
        if val is not None:
            return IntersectionResult(val, T, cap)
        if T >= limit:
            return IntersectionResult(None, T, cap)
        T = int(min(2 * T, limit))


def i0(f: YPoly, g: YPoly, cap: int = DEFAULT_CAP) -> int:
    """Like :func:`intersection_number` but raises :class:`PrecisionExhausted`."""
    return int(intersection_number(f, g, cap))


def dx(f: BranchPoly, g: BranchPoly, cap: int = DEFAULT_CAP) -> Fraction:
    return Fraction(i0(f, g, cap), f.mult_x() * g.mult_x())


def logdist(f: YPoly, g: YPoly, cap: int = DEFAULT_CAP) -> Fraction:
    return Fraction(i0(f, g, cap), f.order() * g.order())
