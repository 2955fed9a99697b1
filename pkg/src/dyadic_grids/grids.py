"""Grid representations ``G(delta, L_a)``.

Generation ``m`` consists of half-open cells of length ``n**-m``. Its
endpoints are ``delta + k / n**m`` for ``m >= 0`` and
``delta + L_a(-m) + k * n**-m`` for ``m < 0``, where ``L_a`` is the location
function of the digit sequence ``a``. A cell is stored as
``(left, generation)`` so its length is exact by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import (
    DigitSequence,
    DomainError,
    as_fraction,
    check_base,
    format_rational,
    frac_floor,
    location_value,
    nadic_add_integer,
    parse_rational,
)

__all__ = [
    "GridRep",
    "Interval",
    "location_value",
    "standard_grid",
    "translated_standard_grid",
    "offset_closed_forms",
    "cell_containing",
    "endpoints",
    "verify_grid_axioms",
    "canonicalize",
    "shift_representation",
    "reps_equal",
    "barrier_point",
]


def cell_length(base: int, m: int) -> Fraction:
    return Fraction(base) ** (-m)


@dataclass(frozen=True)
class Interval:
    """The cell ``[left, left + n**-generation)``."""

    left: Fraction
    generation: int
    base: int

    def __post_init__(self):
        object.__setattr__(self, "left", as_fraction(self.left))
        check_base(self.base)

    @property
    def length(self) -> Fraction:
        return cell_length(self.base, self.generation)

    @property
    def right(self) -> Fraction:
        return self.left + self.length

    def __contains__(self, x) -> bool:
        return self.left <= x < self.right

    def contains(self, left, right) -> bool:
        """Whether ``[left, right)`` lies inside this cell."""
        return self.left <= left and right <= self.right

    def to_dict(self) -> dict:
        return {"left": format_rational(self.left), "generation": self.generation}

    @classmethod
    def from_dict(cls, d: dict, base: int) -> "Interval":
        return cls(parse_rational(d["left"]), int(d["generation"]), base)


@dataclass(frozen=True)
class GridRep:
    """A general n-grid given by its shift and location sequence."""

    base: int
    shift: Fraction
    location: DigitSequence

    def __post_init__(self):
        check_base(self.base)
        object.__setattr__(self, "shift", as_fraction(self.shift))
        if not isinstance(self.location, DigitSequence):
            raise TypeError("location must be a DigitSequence")
        if self.location.base != self.base:
            raise DomainError(
                f"location digits are base {self.location.base}, grid is base {self.base}"
            )

    def offset(self, m: int) -> Fraction:
        """The endpoint of generation ``m`` nearest the construction: ``delta (+ L_a(-m))``."""
        if m >= 0:
            return self.shift
        return self.shift + location_value(self.location, -m)

    def cell(self, x, m: int) -> Interval:
        return cell_containing(self, x, m)

    def __str__(self) -> str:
        return f"{format_rational(self.shift)}|{self.location}"

    @classmethod
    def parse(cls, text: str, base: int) -> "GridRep":
        """Parse the one-token literal ``"shift|pre:period"``, e.g. ``"1/3|:1,0"``."""
        if text.count("|") != 1:
            raise ValueError(f"grid literal needs exactly one '|': {text!r}")
        shift, loc = text.split("|")
        return cls(base, parse_rational(shift), DigitSequence.parse(loc, base))

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "shift": format_rational(self.shift),
            "location": str(self.location),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GridRep":
        base = int(d["base"])
        return cls(base, parse_rational(d["shift"]), DigitSequence.parse(d["location"], base))


def standard_grid(base: int) -> GridRep:
    return GridRep(base, Fraction(0), DigitSequence.zeros(base))


_ONE_ZERO = ((), (1, 0))


def translated_standard_grid(delta, base: int) -> GridRep:
    """The standard grid moved by ``delta``, whose coarse generations alternate parents.

    Its location sequence is ``1, 0, 1, 0, ...``.
    """
    return GridRep(base, as_fraction(delta), DigitSequence(base, *_ONE_ZERO))


def offset_closed_forms(m: int, base: int) -> Fraction:
    """Closed-form coarse offset of the translated standard grid.

    ``(n**-m - 1)/(n**2 - 1)`` for even ``m < 0`` and
    ``(n**(1-m) - 1)/(n**2 - 1)`` for odd ``m < 0``.
    """
    check_base(base)
    if m >= 0:
        raise DomainError("closed forms are defined for m < 0 only")
    top = -m if m % 2 == 0 else 1 - m
    return Fraction(base**top - 1, base**2 - 1)


def cell_containing(g: GridRep, x, m: int) -> Interval:
    x = as_fraction(x)
    e = g.offset(m)
    step = cell_length(g.base, m)
    k = math.floor((x - e) / step)
    return Interval(e + k * step, m, g.base)


def endpoints(g: GridRep, m: int, window) -> list[Fraction]:
    """Generation-``m`` endpoints in the closed window ``[lo, hi]``."""
    lo, hi = (as_fraction(w) for w in window)
    e = g.offset(m)
    step = cell_length(g.base, m)
    k0 = math.ceil((lo - e) / step)
    k1 = math.floor((hi - e) / step)
    return [e + k * step for k in range(k0, k1 + 1)]


def verify_grid_axioms(g: GridRep, m_range, window) -> bool:
    """Check the n-grid axioms for generations ``m_range`` (inclusive) inside ``window``.

    Endpoints are enumerated from the endpoint formula and compared as
    integers over a common denominator: consecutive endpoints must be
    exactly one cell apart, the cells must cover the window, and every
    cell of generation ``m + 1`` must sit inside a cell of generation ``m``.
    """
    m_lo, m_hi = m_range
    lo, hi = (as_fraction(w) for w in window)
    if m_lo > m_hi or not lo < hi:
        raise DomainError("empty generation range or window")
    n = g.base
    denom = math.lcm(g.shift.denominator, lo.denominator, hi.denominator) * n ** max(m_hi, 0)

    def scaled(x: Fraction) -> int:
        v = x * denom
        assert v.denominator == 1
        return v.numerator

    L, H = scaled(lo), scaled(hi)
    prev: Optional[tuple[int, int, set[int]]] = None  # (offset, step, points) of m - 1
    for m in range(m_lo, m_hi + 1):
        step = scaled(cell_length(n, m))
        off = scaled(g.offset(m))
        pts = [scaled(p) for p in endpoints(g, m, (lo, hi))]
        if pts:
            if any(b - a != step for a, b in zip(pts, pts[1:])):
                return False
            if pts[0] - L >= step or H - pts[-1] >= step:
                return False
        elif H - L >= step:
            return False
        if pts and (pts[0] - off) % step:
            return False
        if prev is not None:
            p_off, p_step, p_pts = prev
            if p_step != n * step:
                return False
            if not p_pts <= set(pts):
                return False
            for a in pts:
                left = p_off + ((a - p_off) // p_step) * p_step
                if not (left <= a and a + step <= left + p_step):
                    return False
        prev = (off, step, set(pts))
    return True


def shift_representation(g: GridRep, N: int) -> GridRep:
    """The representation of the same grid with shift ``delta + N``."""
    return GridRep(g.base, g.shift + N, nadic_add_integer(g.location, -N))


def canonicalize(g: GridRep) -> GridRep:
    """The representation of ``g`` whose shift lies in ``[0, 1)``."""
    _, N = frac_floor(g.shift)
    if N == 0:
        return g
    return shift_representation(g, -N)


def reps_equal(g1: GridRep, g2: GridRep) -> bool:
    if g1.base != g2.base:
        raise DomainError(f"base mismatch: {g1.base} vs {g2.base}")
    return canonicalize(g1) == canonicalize(g2)


def barrier_point(g: GridRep) -> Optional[Fraction]:
    """The point that is an endpoint in every generation, if there is one.

    Exists exactly when the location digits end in all ``0`` or all
    ``n - 1``; no cell of ``g`` contains an interval straddling it.
    """
    a = g.location
    n = g.base
    if len(a.period) != 1 or a.period[0] not in (0, n - 1):
        return None
    pre = len(a.preperiod)
    L = location_value(a, pre)
    if a.period[0] == 0:
        return g.shift + L
    return g.shift + L - n**pre
