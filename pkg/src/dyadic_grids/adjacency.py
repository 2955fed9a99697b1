"""Deciding whether two n-grids are adjacent.

Two grids ``G(d1, L_a)`` and ``G(d2, L_b)`` are adjacent exactly when
``d1 - d2`` is n-far and the normalized location gap

    D(j) = (L_a(j) - L_b(j)) / n**j

satisfies ``0 < liminf |D(j)| <= limsup |D(j)| < 1``.  For eventually
periodic ``a`` and ``b``, ``D(j)`` converges along every residue class of
``j`` modulo ``lcm`` of the two periods, so both limits are exact minima and
maxima over finitely many rational limit points.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import far
from .exact import DigitSequence, DomainError, as_fraction, check_base, format_rational
from .grids import (
    GridRep,
    endpoints,
    location_value,
    shift_representation,
    standard_grid,
    translated_standard_grid,
)

__all__ = [
    "LimitProfile",
    "Failing",
    "AdjacencyReport",
    "ProfileMatch",
    "gap_ratio",
    "signed_limits",
    "limit_profile",
    "is_adjacent",
    "is_adjacent_standard_translate",
    "endpoint_separation",
    "pair_endpoint_separation",
    "representation_invariance",
]


def _same_base(x, y) -> int:
    if x.base != y.base:
        raise DomainError(f"base mismatch: {x.base} vs {y.base}")
    return x.base


def gap_ratio(a: DigitSequence, b: DigitSequence, j: int) -> Fraction:
    """``D(j) = (L_a(j) - L_b(j)) / n**j`` evaluated directly."""
    n = _same_base(a, b)
    return Fraction(location_value(a, j) - location_value(b, j), n**j)


def _tail_limit(s: DigitSequence, j0: int, period: int) -> Fraction:
    # lim of L_s(j)/n**j along j = j0 (mod period), given that the `period`
    # digits before j0 already lie in the periodic part of s.
    n = s.base
    block = sum(s.digit(j0 - t) * n ** (period - t) for t in range(1, period + 1))
    return Fraction(block, n**period - 1)


def signed_limits(a: DigitSequence, b: DigitSequence) -> dict[int, Fraction]:
    """Limit of ``D(j)`` along each residue class ``j = r (mod P)``.

    ``P`` is the lcm of the two period lengths. Reading ``L(j)/n**j`` as the
    base-n fraction with digits ``a_{j-1}, a_{j-2}, ...``, each limit is a
    purely periodic fraction ``block / (n**P - 1)``.
    """
    _same_base(a, b)
    P = math.lcm(len(a.period), len(b.period))
    pre = max(len(a.preperiod), len(b.preperiod))
    out = {}
    for j0 in range(pre + P, pre + 2 * P):
        out[j0 % P] = _tail_limit(a, j0, P) - _tail_limit(b, j0, P)
    return out


@dataclass(frozen=True)
class LimitProfile:
    limit_points: tuple[Fraction, ...]  # sorted, distinct
    c1: Fraction
    c2: Fraction

    def to_dict(self) -> dict:
        return {
            "c1": format_rational(self.c1),
            "c2": format_rational(self.c2),
            "limit_points": [format_rational(x) for x in self.limit_points],
        }

    def inverted(self) -> tuple[Fraction, Fraction]:
        return 1 - self.c2, 1 - self.c1


def limit_profile(a: DigitSequence, b: DigitSequence, base: Optional[int] = None) -> LimitProfile:
    """Exact ``liminf`` and ``limsup`` of ``|D(j)|``."""
    n = _same_base(a, b)
    if base is not None and base != n:
        raise DomainError(f"base mismatch: {base} vs {n}")
    points = tuple(sorted({abs(v) for v in signed_limits(a, b).values()}))
    return LimitProfile(points, points[0], points[-1])


class Failing(enum.Enum):
    NONE = "NONE"
    SHIFT_NOT_FAR = "SHIFT_NOT_FAR"
    LIMINF_ZERO = "LIMINF_ZERO"
    LIMSUP_ONE = "LIMSUP_ONE"


@dataclass(frozen=True)
class AdjacencyReport:
    adjacent: bool
    shift_gap: Fraction
    shift_gap_far: bool
    profile: LimitProfile
    failing_condition: Failing

    def to_dict(self) -> dict:
        return {
            "adjacent": self.adjacent,
            "shift_gap": format_rational(self.shift_gap),
            "shift_gap_far": self.shift_gap_far,
            **self.profile.to_dict(),
            "failing_condition": self.failing_condition.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AdjacencyReport":
        pts = tuple(as_fraction(x) for x in d["limit_points"])
        return cls(
            adjacent=bool(d["adjacent"]),
            shift_gap=as_fraction(d["shift_gap"]),
            shift_gap_far=bool(d["shift_gap_far"]),
            profile=LimitProfile(pts, as_fraction(d["c1"]), as_fraction(d["c2"])),
            failing_condition=Failing(d["failing_condition"]),
        )


def is_adjacent(g1: GridRep, g2: GridRep) -> AdjacencyReport:
    """Decide adjacency from any pair of representations.

    The first failing condition is reported in the fixed order: shift gap
    not far, liminf zero, limsup one.
    """
    n = _same_base(g1, g2)
    gap = g1.shift - g2.shift
    gap_far = far.is_n_far(gap, n)
    prof = limit_profile(g1.location, g2.location)
    if not gap_far:
        failing = Failing.SHIFT_NOT_FAR
    elif prof.c1 == 0:
        failing = Failing.LIMINF_ZERO
    elif prof.c2 == 1:
        failing = Failing.LIMSUP_ONE
    else:
        failing = Failing.NONE
    return AdjacencyReport(failing is Failing.NONE, gap, gap_far, prof, failing)


def is_adjacent_standard_translate(delta, base: int) -> bool:
    """Whether the standard grid and its ``delta``-translate are adjacent.

    Equivalent to ``delta`` being n-far; both routes are evaluated and must agree.
    """
    check_base(base)
    delta = as_fraction(delta)
    verdict = far.is_n_far(delta, base)
    general = is_adjacent(standard_grid(base), translated_standard_grid(delta, base)).adjacent
    if verdict != general:
        raise AssertionError(f"decision routes disagree for delta={delta}, n={base}")
    return verdict


def pair_endpoint_separation(g1: GridRep, g2: GridRep, m_range, window) -> Fraction:
    """Minimum over ``m`` of ``n**m`` times the smallest gap in the merged endpoint list.

    Endpoints of both grids in generation ``m`` are merged as a multiset, so
    an endpoint shared by the two grids contributes a zero gap. Generations
    with fewer than two endpoints in the window are skipped.
    """
    n = _same_base(g1, g2)
    lo_m, hi_m = m_range
    best: Optional[Fraction] = None
    for m in range(lo_m, hi_m + 1):
        pts = sorted(endpoints(g1, m, window) + endpoints(g2, m, window))
        if len(pts) < 2:
            continue
        gap = min(b - a for a, b in zip(pts, pts[1:]))
        val = gap * Fraction(n) ** m
        if best is None or val < best:
            best = val
    if best is None:
        raise DomainError("window too small: no generation has two endpoints")
    return best


def endpoint_separation(delta, base: int, m_range, window) -> Fraction:
    """Separation constant of the standard grid and its ``delta``-translate."""
    check_base(base)
    return pair_endpoint_separation(
        standard_grid(base), translated_standard_grid(delta, base), m_range, window
    )


class ProfileMatch(enum.Enum):
    MATCHED = "MATCHED"
    INVERTED = "INVERTED"


def representation_invariance(g1: GridRep, g2: GridRep, n1: int, n2: int):
    """Re-derive the limit profile from the representations shifted by ``n1`` and ``n2``.

    Returns ``((c1, c2), (c1', c2'), verdict)``. For adjacent grids the new
    pair is either the original or ``(1 - c2, 1 - c1)``; any other outcome
    raises ``AssertionError``.
    """
    report = is_adjacent(g1, g2)
    if not report.adjacent:
        raise DomainError("representation invariance needs an adjacent pair")
    h1 = shift_representation(g1, n1)
    h2 = shift_representation(g2, n2)
    new = limit_profile(h1.location, h2.location)
    orig = (report.profile.c1, report.profile.c2)
    shifted = (new.c1, new.c2)
    if shifted == orig:
        verdict = ProfileMatch.MATCHED
    elif shifted == report.profile.inverted():
        verdict = ProfileMatch.INVERTED
    else:
        raise AssertionError(f"profile {shifted} is neither {orig} nor its inversion")
    return orig, shifted, verdict
