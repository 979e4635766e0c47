"""Exact coefficient fields: the rationals and prime fields GF(p).

Raw values are plain Python objects (``Fraction`` for Q, ``int`` in
``[0, p)`` for GF(p)).  Series code works on raw values directly and keeps the
context alongside; :class:`FieldElement` is the tagged scalar handed to users.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "CompositeModulus",
    "ContextMismatch",
    "FieldContext",
    "FieldElement",
    "field_context",
    "is_prime",
    "random_nonzero",
    "QQ",
    "DEFAULT_PRIME",
]

# largest prime below 2**31
DEFAULT_PRIME = 2147483629


class CompositeModulus(ValueError):
    pass


class ContextMismatch(TypeError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldContext:
    """Either Q (``p == 0``) or GF(p)."""

    p: int = 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"

    # -- raw value arithmetic -------------------------------------------------

    def coerce(self, value) -> int | Fraction:
        if isinstance(value, FieldElement):
            self.check(value.ctx)
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if self.p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"zero has no inverse in {self}")
        return pow(a, -1, self.p) if self.p else 1 / a

    def check(self, other: "FieldContext") -> None:
        if other != self:
            raise ContextMismatch(f"cannot mix {self} and {other}")

    # -- text form --------------------------------------------------------------

    def format(self, a) -> str:
        if self.p:
            return f"{a} mod {self.p}"
        return str(a)

    def parse(self, text: str):
        text = text.strip()
        if " mod " in text:
            r, p = text.split(" mod ")
            if int(p) != self.p:
                raise ContextMismatch(f"element {text!r} does not live in {self}")
            return int(r) % self.p
        return self.coerce(Fraction(text))

    def elem(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    # -- truncated series products ----------------------------------------------

    def mul_series(self, a: Sequence, b: Sequence, T: float) -> list:
        """Coefficients of ``a*b`` below ``x**T`` (``T`` may be ``inf``)."""
        if not a or not b:
            return []
        n = len(a) + len(b) - 1
        if T < n:
            n = int(T)
            a, b = a[:n], b[:n]
        if n <= 0:
            return []
        if self.p:
            out = kron_mul(a, b, n, signed=False)
            p = self.p
            return [c % p for c in out]
        da = lcm(*(c.denominator for c in a))
        db = lcm(*(c.denominator for c in b))
        ia = [c.numerator * (da // c.denominator) for c in a]
        ib = [c.numerator * (db // c.denominator) for c in b]
        den = da * db
        return [Fraction(c, den) for c in kron_mul(ia, ib, n, signed=True)]


QQ = FieldContext(0)


def field_context(kind: str | int = "q") -> FieldContext:
    """Build a context from ``"q"``, ``"fp:<p>"``, ``"prime"`` or an int ``p``.

    >>> field_context("fp:101").characteristic
    101
    """
    if isinstance(kind, str):
        k = kind.strip().lower()
        if k in ("q", "qq", "rationals", "0"):
            return QQ
        if k in ("prime", "fp"):
            return FieldContext(DEFAULT_PRIME)
        if k.startswith("fp:") or k.startswith("prime:"):
            kind = int(k.split(":", 1)[1])
        else:
            kind = int(k)
    p = int(kind)
    if p == 0:
        return QQ
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    return FieldContext(p)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext
    value: int | Fraction

    def _other(self, other):
        if isinstance(other, FieldElement):
            self.ctx.check(other.ctx)
            return other.value
        return self.ctx.coerce(other)

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __truediv__(self, other):
        return self * FieldElement(self.ctx, self._other(other)).inverse()

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        try:
            return self.value == self.ctx.coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, self.value))

    def __str__(self) -> str:
        return self.ctx.format(self.value)


def random_nonzero(ctx: FieldContext, rng: random.Random) -> FieldElement:
    """A nonzero element drawn from ``rng``.

    Rationals are kept to small height so that downstream determinants stay
    cheap; genericity only needs the draw to avoid a proper closed subset.
    """
    if ctx.p:
        return FieldElement(ctx, rng.randrange(1, ctx.p))
    num = rng.choice([-1, 1]) * rng.randint(1, 50)
    den = rng.randint(1, 7)
    return FieldElement(ctx, Fraction(num, den))


# -- Kronecker substitution ------------------------------------------------------


def _pack(vals: Iterable[int], w: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(w, "little") for v in vals), "little")


def kron_mul(a: Sequence[int], b: Sequence[int], n: int, signed: bool) -> list[int]:
    """First ``n`` coefficients of the integer polynomial product ``a*b``.

    Both inputs are packed into single big integers (one slot of ``w`` bytes
    per coefficient) and multiplied by CPython's bignum multiply.
    """
    la, lb = len(a), len(b)
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if not ma or not mb:
        return [0] * n
    bound = ma * mb * min(la, lb)
    bits = bound.bit_length() + (2 if signed else 0)
    w = (bits + 7) // 8
    if not signed:
        P = _pack(a, w) * _pack(b, w)
        raw = (P & ((1 << (8 * w * n)) - 1)).to_bytes(w * n, "little")
        fb = int.from_bytes
        return [fb(raw[i * w:(i + 1) * w], "little") for i in range(n)]
    A = _pack((c if c > 0 else 0 for c in a), w) - _pack((-c if c < 0 else 0 for c in a), w)
    B = _pack((c if c > 0 else 0 for c in b), w) - _pack((-c if c < 0 else 0 for c in b), w)
    raw = ((A * B) & ((1 << (8 * w * n)) - 1)).to_bytes(w * n, "little")
    base = 1 << (8 * w)
    half = base >> 1
    out = []
    carry = 0
    fb = int.from_bytes
    for i in range(n):
        t = fb(raw[i * w:(i + 1) * w], "little") + carry
        if t >= half:
            out.append(t - base)
            carry = 1
        else:
            out.append(t)
            carry = 0
    return out


def content(vals: Iterable[int]) -> int:
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            break
    return g
