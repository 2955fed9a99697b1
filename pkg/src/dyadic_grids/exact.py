"""Exact numeric substrate: rationals, base-n expansions and n-adic digit sequences.

Rationals are :class:`fractions.Fraction` throughout. Two kinds of infinite
digit strings appear:

* :class:`BaseNExpansion` -- fractional digits ``a_1, a_2, ...`` of a number
  in ``[0, 1)``, value ``sum(a_i / n**i)``.
* :class:`DigitSequence` -- digits ``a_0, a_1, ...`` of an n-adic integer,
  value ``sum(a_i * n**i)``; used as the location rule of a grid.

Both are eventually periodic and stored as ``(preperiod, period)`` in a
unique shortest form, so ``==`` is value equality.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "DomainError",
    "SigmaPair",
    "BaseNExpansion",
    "DigitSequence",
    "check_base",
    "as_fraction",
    "parse_rational",
    "format_rational",
    "expand",
    "digit_at",
    "frac_floor",
    "location_value",
    "nadic_add_integer",
    "minimal_form",
]


class DomainError(ValueError):
    """A mathematically invalid request (as opposed to a malformed literal)."""


def check_base(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"base must be an int, got {type(n).__name__}")
    if n < 2:
        raise DomainError(f"base must be >= 2, got {n}")
    return n


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


_RATIONAL_RE = re.compile(r"^\s*(-?)(\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"-p/q"`` or ``"p"``. Raises ``ValueError`` otherwise."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    den_int = int(den) if den is not None else 1
    if den_int == 0:
        raise ValueError(f"zero denominator: {text!r}")
    value = Fraction(int(num), den_int)
    return -value if sign else value


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class SigmaPair:
    """Index ``(m, k)`` of the rational ``k / n**m``; ``k == 0`` is excluded for ``m < 0``."""

    m: int
    k: int

    def __post_init__(self):
        if self.m < 0 and self.k == 0:
            raise DomainError("(m, 0) with m < 0 is not an admissible index")

    def point(self, base: int) -> Fraction:
        return Fraction(self.k) / Fraction(base) ** self.m


def frac_floor(x) -> tuple[Fraction, int]:
    """Split ``x`` as ``N + f`` with ``N`` an integer and ``0 <= f < 1``."""
    x = as_fraction(x)
    N = math.floor(x)
    return x - N, N


def _smallest_period(period: Sequence[int]) -> tuple[int, ...]:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and all(period[i] == period[i % d] for i in range(p)):
            return tuple(period[:d])
    return tuple(period)  # pragma: no cover


def minimal_form(
    preperiod: Sequence[int], period: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Shortest ``(preperiod, period)`` describing the same infinite sequence."""
    if not period:
        raise ValueError("period must be nonempty")
    per = list(_smallest_period(list(period)))
    pre = list(preperiod)
    # Absorb trailing preperiod digits into the cycle by rotating it.
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return tuple(pre), tuple(per)


def _check_digits(digits: Iterable[int], base: int) -> None:
    for d in digits:
        if isinstance(d, bool) or not isinstance(d, int) or not 0 <= d < base:
            raise DomainError(f"digit {d!r} not in 0..{base - 1}")


@dataclass(frozen=True)
class BaseNExpansion:
    """Canonical fractional base-n digits of a number in ``[0, 1)``.

    Digits are indexed from 1. The canonical form never ends in an infinite
    run of ``n - 1`` (the "finest" of the two expansions of an n-adic
    rational), and terminating values use ``period == (0,)``.
    """

    base: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        check_base(self.base)
        _check_digits(self.preperiod, self.base)
        _check_digits(self.period, self.base)
        pre, per = minimal_form(self.preperiod, self.period)
        if per == (self.base - 1,):
            raise DomainError("expansion ending in repeated n-1 is not canonical")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def digit(self, i: int) -> int:
        if i < 1:
            raise IndexError("expansion digits are indexed from 1")
        i -= 1
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def value(self) -> Fraction:
        n = self.base
        head = sum(Fraction(a, n ** (i + 1)) for i, a in enumerate(self.preperiod))
        p = len(self.period)
        block = sum(a * n ** (p - 1 - i) for i, a in enumerate(self.period))
        return head + Fraction(block, n ** len(self.preperiod) * (n**p - 1))

    def digits(self, count: int) -> list[int]:
        return [self.digit(i) for i in range(1, count + 1)]


def expand(x, base: int) -> BaseNExpansion:
    """Base-n expansion of ``x`` in ``[0, 1)`` by long division.

    The first repeated remainder closes the cycle. Remainders determine the
    remaining digits and vice versa, so the result is already minimal.
    """
    check_base(base)
    x = as_fraction(x)
    if not 0 <= x < 1:
        raise DomainError(f"expand needs 0 <= x < 1, got {x}")
    q = x.denominator
    r = x.numerator
    seen: dict[int, int] = {}
    digits: list[int] = []
    while r not in seen:
        seen[r] = len(digits)
        r *= base
        digits.append(r // q)
        r %= q
    start = seen[r]
    return BaseNExpansion(base, tuple(digits[:start]), tuple(digits[start:]))


def digit_at(e: BaseNExpansion, i: int) -> int:
    return e.digit(i)


@dataclass(frozen=True)
class DigitSequence:
    """Eventually periodic digit sequence ``a_0, a_1, ...`` over ``0..n-1``.

    Arithmetically this is an n-adic integer; :meth:`to_rational` gives the
    rational number it equals in the n-adic completion.
    """

    base: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        check_base(self.base)
        _check_digits(self.preperiod, self.base)
        _check_digits(self.period, self.base)
        pre, per = minimal_form(tuple(self.preperiod), tuple(self.period))
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def constant(cls, base: int, digit: int) -> "DigitSequence":
        return cls(base, (), (digit,))

    @classmethod
    def zeros(cls, base: int) -> "DigitSequence":
        return cls(base, (), (0,))

    @classmethod
    def parse(cls, text: str, base: int) -> "DigitSequence":
        """Parse ``"d0,d1,...:p0,p1,..."`` (preperiod, colon, period)."""
        if text.count(":") != 1:
            raise ValueError(f"digit sequence needs exactly one ':': {text!r}")
        head, tail = text.split(":")

        def digits(part: str) -> tuple[int, ...]:
            part = part.strip()
            if not part:
                return ()
            out = []
            for tok in part.split(","):
                tok = tok.strip()
                if not tok.isdigit():
                    raise ValueError(f"bad digit {tok!r} in {text!r}")
                out.append(int(tok))
            return tuple(out)

        period = digits(tail)
        if not period:
            raise ValueError(f"empty period in {text!r}")
        return cls(base, digits(head), period)

    def __str__(self) -> str:
        return ",".join(map(str, self.preperiod)) + ":" + ",".join(map(str, self.period))

    def digit(self, i: int) -> int:
        if i < 0:
            raise IndexError("digit sequences are indexed from 0")
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def digits(self, count: int) -> list[int]:
        return [self.digit(i) for i in range(count)]

    def to_rational(self) -> Fraction:
        n = self.base
        pre = len(self.preperiod)
        head = sum(a * n**i for i, a in enumerate(self.preperiod))
        p = len(self.period)
        block = sum(a * n**i for i, a in enumerate(self.period))
        # n-adically, sum_{k>=0} n**(k*p) = 1 / (1 - n**p)
        return head + Fraction(n**pre * block, 1 - n**p)

    @classmethod
    def from_rational(cls, r, base: int) -> "DigitSequence":
        """n-adic digits of a rational whose denominator is coprime to ``base``."""
        check_base(base)
        r = as_fraction(r)
        if math.gcd(r.denominator, base) != 1:
            raise DomainError(f"{r} is not an n-adic integer for n={base}")
        seen: dict[Fraction, int] = {}
        digits: list[int] = []
        while r not in seen:
            seen[r] = len(digits)
            d = (r.numerator * pow(r.denominator, -1, base)) % base
            digits.append(d)
            r = (r - d) / base
        start = seen[r]
        return cls(base, tuple(digits[:start]), tuple(digits[start:]))


def location_value(s: DigitSequence, j: int) -> int:
    """``L(j) = sum_{i<j} a_i n**i``, with ``L(0) = 0``."""
    if j < 0:
        raise DomainError("location index must be >= 0")
    n = s.base
    total = 0
    weight = 1
    for i in range(j):
        total += s.digit(i) * weight
        weight *= n
    return total


def nadic_add_integer(s: DigitSequence, N: int) -> DigitSequence:
    """Add the integer ``N`` to ``s`` with n-adic carries/borrows.

    ``location_value(result, j) == (location_value(s, j) + N) mod n**j``.
    """
    if N == 0:
        return s
    return DigitSequence.from_rational(s.to_rational() + N, s.base)
