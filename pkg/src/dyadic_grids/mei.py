"""Covering intervals by cells of two grids.

``cover`` returns the shortest cell of either grid that contains a query
``[left, right)``. For adjacent grids the ratio ``|cell| / |query|`` stays
below ``n / C`` where ``C`` is the endpoint separation constant of the
pair; for non-adjacent pairs :func:`adversarial_witness` builds queries
whose best ratio exceeds any prescribed power of ``n``.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import far
from .exact import DomainError, as_fraction, check_base, format_rational, parse_rational
from .grids import GridRep, Interval, barrier_point, cell_containing, cell_length

__all__ = [
    "Query",
    "Source",
    "CoverResult",
    "CoverEstimate",
    "NoCoverError",
    "grid_cover",
    "cover",
    "oracle_cover",
    "cover_constant_estimate",
    "witness_index",
    "adversarial_witness",
]


class NoCoverError(DomainError):
    """Neither grid has a cell containing the query."""


@dataclass(frozen=True)
class Query:
    """The half-open interval ``[left, right)``."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", as_fraction(self.left))
        object.__setattr__(self, "right", as_fraction(self.right))
        if not self.left < self.right:
            raise DomainError(f"empty query [{self.left}, {self.right})")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @classmethod
    def parse(cls, text: str) -> "Query":
        """``"a,b"``, optionally written ``"[a,b)"``."""
        body = text.strip()
        if body.startswith("[") and body.endswith(")"):
            body = body[1:-1]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError(f"query literal must be 'a,b': {text!r}")
        return cls(parse_rational(parts[0]), parse_rational(parts[1]))

    def to_dict(self) -> dict:
        return {"left": format_rational(self.left), "right": format_rational(self.right)}


class Source(enum.Enum):
    FIRST_GRID = "FIRST_GRID"
    SECOND_GRID = "SECOND_GRID"


@dataclass(frozen=True)
class CoverResult:
    interval: Interval
    source: Source
    ratio: Fraction

    def to_dict(self) -> dict:
        return {
            "interval": self.interval.to_dict(),
            "source": self.source.value,
            "ratio": format_rational(self.ratio),
        }

    @classmethod
    def from_dict(cls, d: dict, base: int) -> "CoverResult":
        return cls(
            Interval.from_dict(d["interval"], base),
            Source(d["source"]),
            parse_rational(d["ratio"]),
        )


def _finest_generation(length: Fraction, n: int) -> int:
    """Largest ``m`` with ``n**-m >= length``."""
    m = -math.ceil(math.log(length, n)) if length > 0 else 0
    while cell_length(n, m) < length:
        m -= 1
    while cell_length(n, m + 1) >= length:
        m += 1
    return m


def _coarsest_needed(q: Query, g: GridRep) -> int:
    """A generation beyond which searching further cannot help.

    Past ``j = pre + P + e`` with ``n**e`` larger than the query's distance
    from the shift, the generation ``-j`` endpoints near the query are
    either gone or pinned at the barrier point.
    """
    n = g.base
    R = abs(q.left - g.shift) + abs(q.right - g.shift) + 1
    e = 0
    while n**e < R:
        e += 1
    a = g.location
    return -(len(a.preperiod) + len(a.period) + e + 1)


def grid_cover(q: Query, g: GridRep) -> Optional[Interval]:
    """Shortest cell of ``g`` containing ``q``, or ``None`` when none exists."""
    p = barrier_point(g)
    if p is not None and q.left < p < q.right:
        return None
    m = _finest_generation(q.length, g.base)
    stop = min(_coarsest_needed(q, g), m)
    while m >= stop:
        cell = cell_containing(g, q.left, m)
        if cell.contains(q.left, q.right):
            return cell
        m -= 1
    raise AssertionError(f"no cell of {g} contains {q} although no barrier separates it")


def cover(q: Query, g1: GridRep, g2: GridRep) -> CoverResult:
    """Minimal covering cell across both grids; ties go to the first grid."""
    if g1.base != g2.base:
        raise DomainError(f"base mismatch: {g1.base} vs {g2.base}")
    c1 = grid_cover(q, g1)
    c2 = grid_cover(q, g2)
    if c1 is None and c2 is None:
        raise NoCoverError(f"no cell of either grid contains {q.to_dict()}")
    if c2 is None or (c1 is not None and c1.generation >= c2.generation):
        return CoverResult(c1, Source.FIRST_GRID, c1.length / q.length)
    return CoverResult(c2, Source.SECOND_GRID, c2.length / q.length)


def oracle_cover(q: Query, g: GridRep, start_generation: int, depth: int = 256) -> Optional[Interval]:
    """Brute-force cover within ``g``, independent of :func:`grid_cover`.

    Scans generations ``start_generation, start_generation - 1, ...``
    (``depth`` of them), enumerating every cell that meets ``q`` straight
    from the endpoint formula.
    """
    n = g.base
    digits = []
    for m in range(start_generation, start_generation - depth, -1):
        if m >= 0:
            origin = g.shift
        else:
            while len(digits) < -m:
                digits.append(g.location.digit(len(digits)))
            origin = g.shift + sum(d * n**i for i, d in enumerate(digits[:-m]))
        size = Fraction(n) ** (-m)
        if size < q.length:
            continue
        k_lo = math.floor((q.left - origin) / size) - 1
        k_hi = math.ceil((q.right - origin) / size) + 1
        for k in range(k_lo, k_hi + 1):
            left = origin + k * size
            if left <= q.left and q.right <= left + size:
                return Interval(left, m, n)
    return None


@dataclass(frozen=True)
class CoverEstimate:
    """Largest observed ratio; ``max_ratio is None`` means some query had no cover at all."""

    max_ratio: Optional[Fraction]
    argmax_query: Query
    trials: int
    uncovered: int

    def to_dict(self) -> dict:
        return {
            "max_ratio": None if self.max_ratio is None else format_rational(self.max_ratio),
            "argmax_query": self.argmax_query.to_dict(),
            "trials": self.trials,
            "uncovered": self.uncovered,
        }


_GRAIN = 2**48


def _sample_query(rng: random.Random, g1: GridRep, g2: GridRep, m: int) -> Query:
    n = g1.base
    size = cell_length(n, m)
    length = size * Fraction(rng.randint(1, 2**16), 2**16)
    if rng.random() < 0.5:
        # straddle an endpoint of one grid, a few generations either side of m
        g = g1 if rng.random() < 0.5 else g2
        mm = rng.randint(m - 4, m + 1)
        p = g.offset(mm) + rng.randint(-3, 3) * cell_length(n, mm)
        t = Fraction(rng.randint(1, 2**16 - 1), 2**16)
        left = p - t * length
    else:
        span = max(cell_length(n, min(m, 0)) * 4, Fraction(8))
        left = span * Fraction(rng.randint(-_GRAIN, _GRAIN), _GRAIN)
    return Query(left, left + length)


def cover_constant_estimate(
    g1: GridRep, g2: GridRep, trials: int, scale_range, seed: int
) -> CoverEstimate:
    """Empirical maximum of the cover ratio over seeded pseudo-random queries.

    Query ``i`` draws from ``random.Random(f"{seed}:{i}")`` so results do
    not depend on evaluation order. Scales are generations ``m`` in
    ``scale_range`` (inclusive); query lengths fall in ``(0, n**-m]``.
    """
    if g1.base != g2.base:
        raise DomainError(f"base mismatch: {g1.base} vs {g2.base}")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    m_lo, m_hi = scale_range
    best: Optional[Fraction] = Fraction(0)
    arg: Optional[Query] = None
    uncovered = 0
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        q = _sample_query(rng, g1, g2, rng.randint(m_lo, m_hi))
        try:
            r = cover(q, g1, g2).ratio
        except NoCoverError:
            if uncovered == 0:
                arg = q
            uncovered += 1
            continue
        if not uncovered and r > best:
            best, arg = r, q
    return CoverEstimate(None if uncovered else best, arg, trials, uncovered)


def witness_index(delta, base: int, N: int) -> tuple[int, int]:
    """Smallest ``m0 >= 0`` (and its ``k0``) with ``|delta - k0/n**m0| < n**-(N+1+m0)``."""
    check_base(base)
    delta = as_fraction(delta)
    if N < 1:
        raise DomainError("N must be >= 1")
    if far.is_n_far(delta, base):
        raise DomainError(f"{delta} is {base}-far: no witness beyond its far constant")
    m0 = 0
    while True:
        scale = Fraction(base) ** m0
        k0 = round(delta * scale)
        if abs(delta - k0 / scale) < 1 / (scale * base ** (N + 1)):
            return m0, k0
        m0 += 1


def adversarial_witness(delta, base: int, N: int) -> Query:
    """A query containing ``delta`` and a nearby ``k0/n**m0``, shorter than ``n**-(N+1+m0)``.

    No cell of the standard grid or of its ``delta``-translate can contain
    it with ratio at most ``n**N``.
    """
    delta = as_fraction(delta)
    m0, k0 = witness_index(delta, base, N)
    point = Fraction(k0) / Fraction(base) ** m0
    bound = Fraction(1) / Fraction(base) ** (N + 1 + m0)
    lo, hi = min(delta, point), max(delta, point)
    gap = hi - lo
    width = (bound + gap) / 2
    pad = (width - gap) / 2
    return Query(lo - pad, hi + pad)
