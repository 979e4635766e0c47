"""Truncated power series in x and polynomials in y over them.

An :class:`XSeries` is known modulo ``x**precision``; ``precision`` may be
``math.inf`` for an exact polynomial.  Every operation returns the weakest
precision of its inputs.

A :class:`YPoly` is a polynomial in y with XSeries coefficients.  A
:class:`BranchPoly` is a YPoly that is monic and distinguished (all
non-leading coefficients vanish at ``x = 0``); products and powers of branch
polynomials stay branch polynomials, while sums fall back to YPoly and must be
re-validated with :meth:`BranchPoly.from_ypoly`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .field import QQ, FieldContext, FieldElement

__all__ = [
    "XSeries",
    "YPoly",
    "BranchPoly",
    "NotDistinguished",
    "DEFAULT_PRECISION",
    "x_series",
    "branch_from_terms",
]

DEFAULT_PRECISION = 64
EXACT = math.inf


class NotDistinguished(ValueError):
    pass


def _trim(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _prec(T) -> float:
    if T is None or T == math.inf:
        return EXACT
    if T < 0:
        raise ValueError("precision must be nonnegative")
    return int(T)


class XSeries:
    """Power series in x over an exact field, truncated at ``precision``."""

    __slots__ = ("ctx", "c", "precision")

    def __init__(self, ctx: FieldContext, coeffs: Sequence = (), precision=EXACT):
        T = _prec(precision)
        vals = [ctx.coerce(v) for v in coeffs]
        if T != EXACT:
            vals = vals[:T]
        self.ctx = ctx
        self.c = _trim(vals)
        self.precision = T

    @classmethod
    def _raw(cls, ctx, c, T) -> "XSeries":
        s = object.__new__(cls)
        s.ctx = ctx
        s.c = _trim(list(c[:T]) if T != EXACT else list(c))
        s.precision = T
        return s

    @classmethod
    def monomial(cls, ctx: FieldContext, exp: int, coeff=1, precision=EXACT) -> "XSeries":
        return cls(ctx, [0] * exp + [coeff], precision)

    @classmethod
    def from_dict(cls, ctx: FieldContext, terms: Mapping[int, object], precision=EXACT):
        if not terms:
            return cls(ctx, (), precision)
        c = [ctx.zero] * (max(terms) + 1)
        for e, v in terms.items():
            c[e] = ctx.add(c[e], ctx.coerce(v))
        return cls._raw(ctx, c, _prec(precision))

    @property
    def coeffs(self) -> dict[int, FieldElement]:
        return {i: FieldElement(self.ctx, v) for i, v in enumerate(self.c) if v}

    def __getitem__(self, i: int) -> FieldElement:
        v = self.c[i] if i < len(self.c) else self.ctx.zero
        return FieldElement(self.ctx, v)

    def is_zero(self) -> bool:
        return not self.c

    def order(self):
        """x-adic order, or ``None`` if the series vanishes at this precision."""
        for i, v in enumerate(self.c):
            if v:
                return i
        return None

    def degree(self) -> int:
        return len(self.c) - 1

    def truncate(self, T) -> "XSeries":
        T = min(self.precision, _prec(T))
        return XSeries._raw(self.ctx, self.c, T)

    def _check(self, other: "XSeries") -> None:
        self.ctx.check(other.ctx)

    def __add__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            other = XSeries(self.ctx, [other])
        self._check(other)
        T = min(self.precision, other.precision)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add
        c = list(a)
        for i, v in enumerate(b):
            c[i] = add(c[i], v)
        return XSeries._raw(self.ctx, c, T)

    __radd__ = __add__

    def __neg__(self) -> "XSeries":
        neg = self.ctx.neg
        return XSeries._raw(self.ctx, [neg(v) for v in self.c], self.precision)

    def __sub__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            other = XSeries(self.ctx, [other])
        return self + (-other)

    def __mul__(self, other) -> "XSeries":
        if not isinstance(other, XSeries):
            k = self.ctx.coerce(other)
            mul = self.ctx.mul
            return XSeries._raw(self.ctx, [mul(v, k) for v in self.c], self.precision)
        self._check(other)
        T = min(self.precision, other.precision)
        return XSeries._raw(self.ctx, self.ctx.mul_series(self.c, other.c, T), T)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "XSeries":
        if m < 0:
            raise ValueError("negative power")
        result = XSeries(self.ctx, [1], self.precision)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def shift(self, k: int) -> "XSeries":
        """Multiply by ``x**k``."""
        T = self.precision + k if self.precision != EXACT else EXACT
        if not self.c:
            return XSeries._raw(self.ctx, (), T)
        return XSeries._raw(self.ctx, [self.ctx.zero] * k + list(self.c), T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.c == other.c and self.precision == other.precision

    def __hash__(self) -> int:
        return hash((self.ctx, self.c, self.precision))

    def __repr__(self) -> str:
        terms = [f"{self.ctx.format(v)}*x^{i}" for i, v in enumerate(self.c) if v]
        body = " + ".join(terms) or "0"
        if self.precision == EXACT:
            return f"XSeries({body})"
        return f"XSeries({body} + O(x^{self.precision}))"


def x_series(ctx: FieldContext, terms: Mapping[int, object], precision=EXACT) -> XSeries:
    return XSeries.from_dict(ctx, terms, precision)


class YPoly:
    """Polynomial in y whose coefficients are XSeries; ``coeffs[j]`` multiplies y**j."""

    __slots__ = ("ctx", "coeffs", "precision")

    def __init__(self, ctx: FieldContext, coeffs: Sequence[XSeries], precision=None):
        T = _prec(precision) if precision is not None else EXACT
        for s in coeffs:
            ctx.check(s.ctx)
            T = min(T, s.precision)
        cs = [s.truncate(T) for s in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)
        self.precision = T

    @classmethod
    def constant(cls, ctx: FieldContext, value=1, precision=EXACT) -> "YPoly":
        return cls(ctx, [XSeries(ctx, [value], precision)], precision)

    @classmethod
    def y(cls, ctx: FieldContext, precision=EXACT) -> "YPoly":
        return cls(ctx, [XSeries(ctx, (), precision), XSeries(ctx, [1], precision)], precision)

    @classmethod
    def from_terms(cls, ctx: FieldContext, terms: Mapping[tuple[int, int], object], precision=EXACT):
        """Build from ``{(x_exp, y_exp): coeff}``."""
        by_y: dict[int, dict[int, object]] = {}
        for (i, j), c in terms.items():
            row = by_y.setdefault(j, {})
            row[i] = ctx.add(ctx.coerce(row.get(i, 0)), ctx.coerce(c))
        deg = max(by_y) if by_y else -1
        T = _prec(precision)
        return cls(ctx, [XSeries.from_dict(ctx, by_y.get(j, {}), T) for j in range(deg + 1)], T)

    @property
    def ydeg(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> XSeries:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coeff(self, j: int) -> XSeries:
        if j < len(self.coeffs):
            return self.coeffs[j]
        return XSeries(self.ctx, (), self.precision)

    def truncate(self, T) -> "YPoly":
        return self._wrap([s.truncate(T) for s in self.coeffs])

    def _wrap(self, coeffs) -> "YPoly":
        return YPoly(self.ctx, coeffs)

    def _lift(self, other) -> "YPoly":
        if isinstance(other, YPoly):
            self.ctx.check(other.ctx)
            return other
        if isinstance(other, XSeries):
            return YPoly(self.ctx, [other])
        return YPoly.constant(self.ctx, other, self.precision)

    def __add__(self, other) -> "YPoly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        T = min(self.precision, other.precision)
        return YPoly(self.ctx, [self._coeff(j) + other._coeff(j) for j in range(n)], T)

    __radd__ = __add__

    def __neg__(self) -> "YPoly":
        return YPoly(self.ctx, [-s for s in self.coeffs], self.precision)

    def __sub__(self, other) -> "YPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "YPoly":
        return self._lift(other) + (-self)

    def _mul_coeffs(self, other: "YPoly") -> list[XSeries]:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return []
        T = min(self.precision, other.precision)
        ctx = self.ctx
        out: list[list] = [[] for _ in range(len(a) + len(b) - 1)]
        for i, s in enumerate(a):
            if s.is_zero():
                continue
            for j, t in enumerate(b):
                if t.is_zero():
                    continue
                out[i + j].append(ctx.mul_series(s.c, t.c, T))
        res = []
        add = ctx.add
        for terms in out:
            if not terms:
                res.append(XSeries._raw(ctx, (), T))
                continue
            acc = list(terms[0])
            for t in terms[1:]:
                if len(t) > len(acc):
                    acc.extend([ctx.zero] * (len(t) - len(acc)))
                for k, v in enumerate(t):
                    acc[k] = add(acc[k], v)
            res.append(XSeries._raw(ctx, acc, T))
        return res

    def __mul__(self, other) -> "YPoly":
        other = self._lift(other)
        return YPoly(self.ctx, self._mul_coeffs(other), min(self.precision, other.precision))

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "YPoly":
        if m < 0:
            raise ValueError("negative power")
        result = YPoly.constant(self.ctx, 1, self.precision)
        base: YPoly = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def scale_x(self, k: int) -> "YPoly":
        return YPoly(self.ctx, [s.shift(k) for s in self.coeffs])

    def order(self) -> int | None:
        """Multiplicity: minimal total degree ``i + j`` of a monomial ``x^i y^j``."""
        best = None
        for j, s in enumerate(self.coeffs):
            o = s.order()
            if o is not None and (best is None or o + j < best):
                best = o + j
        return best

    def eval_y_zero(self) -> XSeries:
        return self._coeff(0)

    def terms(self) -> list[tuple[int, int, object]]:
        """Nonzero monomials as ``(y_exp, x_exp, raw_coeff)``, sorted."""
        return [(j, i, v) for j, s in enumerate(self.coeffs) for i, v in enumerate(s.c) if v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, YPoly):
            return NotImplemented
        return (self.ctx == other.ctx and self.coeffs == other.coeffs
                and self.precision == other.precision)

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs, self.precision))

    def __repr__(self) -> str:
        parts = []
        for j, i, v in self.terms():
            parts.append(f"{self.ctx.format(v)}*x^{i}*y^{j}")
        body = " + ".join(parts) or "0"
        tail = "" if self.precision == EXACT else f", O(x^{self.precision})"
        return f"{type(self).__name__}({body}{tail})"


class BranchPoly(YPoly):
    """Monic distinguished polynomial in y."""

    __slots__ = ()

    def __init__(self, ctx: FieldContext, coeffs: Sequence[XSeries], precision=None):
        super().__init__(ctx, coeffs, precision)
        self._validate()

    def _validate(self) -> None:
        if not self.coeffs:
            raise NotDistinguished("zero polynomial")
        lead = self.coeffs[-1]
        if lead.c != (self.ctx.one,):
            raise NotDistinguished(f"not monic in y: leading coefficient {lead!r}")
        if self.ydeg < 1:
            raise NotDistinguished("y-degree must be positive")
        for j, s in enumerate(self.coeffs[:-1]):
            if s.c and s.c[0]:
                raise NotDistinguished(f"coefficient of y^{j} does not vanish at x = 0")

    @classmethod
    def from_ypoly(cls, p: YPoly) -> "BranchPoly":
        return cls(p.ctx, p.coeffs, p.precision)

    @classmethod
    def from_lower(cls, ctx: FieldContext, lower: Sequence[XSeries], precision=EXACT) -> "BranchPoly":
        """``y**n + sum lower[i] y**i`` with ``n = len(lower)``."""
        T = _prec(precision)
        return cls(ctx, list(lower) + [XSeries(ctx, [1], T)], T)

    @classmethod
    def monic_from_unit_leading(cls, p: YPoly) -> "BranchPoly":
        """Divide ``p`` by its leading coefficient when that is a unit of K[[x]].

        Needs finite precision when the unit is not a constant.
        """
        lead = p.leading()
        c = lead.c
        if not c or not c[0]:
            raise NotDistinguished("leading coefficient is not a unit")
        T = p.precision
        if len(c) > 1 and T == EXACT:
            raise ValueError("non-constant unit needs a finite precision")
        inv = series_inverse(lead, T)
        return cls.from_ypoly(YPoly(p.ctx, [s * inv for s in p.coeffs[:-1]] + [XSeries(p.ctx, [1], T)], T))

    @property
    def n(self) -> int:
        return self.ydeg

    def lower(self, i: int) -> XSeries:
        return self._coeff(i)

    def __mul__(self, other):
        res = super().__mul__(other)
        if isinstance(other, BranchPoly):
            return BranchPoly.from_ypoly(res)
        return res

    def __pow__(self, m: int):
        res = super().__pow__(m)
        return BranchPoly.from_ypoly(res) if m > 0 else res

    def truncate(self, T) -> "BranchPoly":
        if T < 1:
            raise ValueError("a branch polynomial needs precision >= 1")
        return BranchPoly.from_ypoly(super().truncate(T))

    def mult_x(self) -> int:
        """``i_0(f, x)``: forced to the y-degree by distinguishedness."""
        return self.ydeg

    def to_json(self) -> dict:
        return {
            "field": "q" if self.ctx.is_rational else f"fp:{self.ctx.p}",
            "ydeg": self.ydeg,
            "precision": None if self.precision == EXACT else self.precision,
            "terms": [{"y": j, "x": i, "c": self.ctx.format(v)}
                      for j, i, v in self.terms() if j < self.ydeg],
        }

    @classmethod
    def from_json(cls, doc: Mapping, ctx: FieldContext | None = None) -> "BranchPoly":
        from .field import field_context

        if ctx is None:
            ctx = field_context(doc.get("field", "q"))
        n = int(doc["ydeg"])
        T = doc.get("precision")
        T = EXACT if T is None else int(T)
        rows: list[dict[int, object]] = [{} for _ in range(n)]
        for t in doc.get("terms", ()):
            j, i = int(t["y"]), int(t["x"])
            if not 0 <= j < n:
                raise NotDistinguished(f"term y^{j} outside 0..{n - 1}")
            rows[j][i] = ctx.parse(str(t["c"]))
        return cls.from_lower(ctx, [XSeries.from_dict(ctx, r, T) for r in rows], T)


def series_inverse(s: XSeries, T) -> XSeries:
    """Inverse of a unit series modulo ``x**T``."""
    ctx = s.ctx
    T = int(min(T, s.precision))
    a = list(s.c[:T]) + [ctx.zero] * max(0, T - len(s.c))
    inv0 = ctx.inv(a[0])
    out = [inv0]
    for k in range(1, T):
        acc = ctx.zero
        for i in range(1, min(k, len(s.c) - 1) + 1):
            acc = ctx.add(acc, ctx.mul(a[i], out[k - i]))
        out.append(ctx.neg(ctx.mul(acc, inv0)))
    return XSeries._raw(ctx, out, T)


def branch_from_terms(terms: Mapping[tuple[int, int], object], ctx: FieldContext = QQ,
                      precision=EXACT) -> BranchPoly:
    """Shorthand: ``{(i, j): c}`` meaning ``c x^i y^j``; must be monic distinguished."""
    return BranchPoly.from_ypoly(YPoly.from_terms(ctx, terms, precision))
