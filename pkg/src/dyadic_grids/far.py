"""Tie analysis and classification of n-far numbers.

A real ``delta`` is n-far when ``|delta - k/n**m| >= C / n**m`` for every
admissible index ``(m, k)`` (``m >= 0``, or ``m < 0`` with ``k != 0``).
For rationals everything here is exact: far-ness is decided by the longest
run of ``0`` or ``n-1`` digits in the canonical base-n expansion, and the
two constants

* ``d(delta) = inf_{m>=0} dist(n**m * delta, Z)`` (translation invariant)
* ``C(delta)`` = the best constant over all admissible indices

are computed as exact minima over finitely many candidates.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .exact import (
    BaseNExpansion,
    DomainError,
    as_fraction,
    check_base,
    expand,
    format_rational,
    frac_floor,
)

__all__ = [
    "INFINITE",
    "TieWitness",
    "TieReport",
    "FarnessCertificate",
    "DigitStream",
    "Verdict",
    "tie_length",
    "is_n_far",
    "compute_d",
    "compute_C",
    "certificate",
    "family_one_over_prime",
    "family_prop23",
    "bounded_tie_analysis",
    "density_probe",
    "far_block_stream",
    "growing_zeros_stream",
    "is_prime",
]

INFINITE = math.inf


@dataclass(frozen=True)
class TieWitness:
    """A run ``a_start .. a_end`` of a single tie digit (``end is None``: runs forever)."""

    start: int
    end: Optional[int]
    digit: int

    @property
    def length(self):
        return INFINITE if self.end is None else self.end - self.start + 1

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end, "digit": self.digit}

    @classmethod
    def from_dict(cls, d: dict) -> "TieWitness":
        return cls(d["start"], d["end"], d["digit"])


@dataclass(frozen=True)
class TieReport:
    t_value: int | float  # INFINITE when unbounded
    witness: Optional[TieWitness]

    @property
    def finite(self) -> bool:
        return self.t_value != INFINITE


def tie_length(e: BaseNExpansion) -> TieReport:
    """Length of the longest tie in a canonical expansion.

    The preperiod followed by two copies of the period contains every
    maximal run that is not the whole cycle, including runs that wrap
    around the period or start in the preperiod.
    """
    n = e.base
    ties = {0, n - 1}
    if len(set(e.period)) == 1 and e.period[0] in ties:
        # The canonical form never ends in n-1, so this is an infinite run of 0s.
        digit = e.period[0]
        start = len(e.preperiod) + 1
        while start > 1 and e.preperiod[start - 2] == digit:
            start -= 1
        return TieReport(INFINITE, TieWitness(start, None, digit))

    digits = list(e.preperiod) + list(e.period) * 2
    best: Optional[TieWitness] = None
    i = 0
    while i < len(digits):
        d = digits[i]
        j = i
        while j + 1 < len(digits) and digits[j + 1] == d:
            j += 1
        if d in ties and (best is None or j - i + 1 > best.length):
            best = TieWitness(i + 1, j + 1, d)
        i = j + 1
    if best is None:
        return TieReport(0, None)
    return TieReport(best.length, best)


def compute_d(delta, base: int) -> Fraction:
    """Exact ``d(delta)``: the minimum of ``dist(n**m delta, Z)`` over ``m >= 0``.

    Only the fractional part matters; its orbit under ``x -> n x mod 1`` is
    eventually periodic, so the scan stops at the first repeated residue.
    """
    check_base(base)
    f, _ = frac_floor(as_fraction(delta))
    q = f.denominator
    r = f.numerator
    best = Fraction(min(r, q - r), q)
    seen = set()
    while r not in seen and best:
        seen.add(r)
        best = min(best, Fraction(min(r, q - r), q))
        r = (r * base) % q
    return best


def _negative_generation_part(delta: Fraction, base: int) -> Fraction:
    """Minimum of ``|n**m delta - k|`` over ``m < 0``, ``k != 0``.

    Once ``|delta| n**m <= 1/2`` the inner minimum is ``1 - |delta| n**m``,
    which only grows as ``m`` decreases; the scan stops at that point.
    """
    x = abs(delta)
    best = None
    scale = Fraction(1)
    while True:
        scale /= base
        y = x * scale
        fl = math.floor(y)
        cands = [k for k in (fl, fl + 1) if k != 0]
        val = min(abs(y - k) for k in cands)
        best = val if best is None else min(best, val)
        if y <= Fraction(1, 2):
            return best


def compute_C(delta, base: int) -> Fraction:
    """Exact best constant over all admissible ``(m, k)`` for ``delta`` itself.

    Not translation invariant; the ``m >= 0`` part coincides with ``d``.
    """
    check_base(base)
    delta = as_fraction(delta)
    return min(compute_d(delta, base), _negative_generation_part(delta, base))


def is_n_far(delta, base: int) -> bool:
    check_base(base)
    f, _ = frac_floor(as_fraction(delta))
    return tie_length(expand(f, base)).finite


@dataclass(frozen=True)
class FarnessCertificate:
    delta: Fraction
    base: int
    is_far: bool
    tie: TieReport
    d_value: Optional[Fraction]
    c_value: Optional[Fraction]
    bound_ok: bool

    def to_dict(self) -> dict:
        t = self.tie.t_value
        return {
            "delta": format_rational(self.delta),
            "base": self.base,
            "is_far": self.is_far,
            "T": "infinite" if t == INFINITE else t,
            "d": None if self.d_value is None else format_rational(self.d_value),
            "C": None if self.c_value is None else format_rational(self.c_value),
            "witness": None if self.tie.witness is None else self.tie.witness.to_dict(),
            "bound_ok": self.bound_ok,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FarnessCertificate":
        t = INFINITE if d["T"] == "infinite" else int(d["T"])
        w = None if d["witness"] is None else TieWitness.from_dict(d["witness"])
        return cls(
            delta=as_fraction(d["delta"]),
            base=int(d["base"]),
            is_far=bool(d["is_far"]),
            tie=TieReport(t, w),
            d_value=None if d["d"] is None else as_fraction(d["d"]),
            c_value=None if d["C"] is None else as_fraction(d["C"]),
            bound_ok=bool(d["bound_ok"]),
        )


def certificate(delta, base: int) -> FarnessCertificate:
    """Bundle the tie report with ``d`` and ``C``.

    ``bound_ok`` checks ``n**-(T+1) <= C <= n**-T`` on the representative of
    ``delta`` in ``[0, 1)`` (T is translation invariant, C is not).
    """
    check_base(base)
    delta = as_fraction(delta)
    f, _ = frac_floor(delta)
    tie = tie_length(expand(f, base))
    if not tie.finite:
        return FarnessCertificate(delta, base, False, tie, None, None, False)
    d = compute_d(delta, base)
    c = compute_C(delta, base)
    c0 = c if f == delta else compute_C(f, base)
    T = tie.t_value
    bound_ok = Fraction(1, base ** (T + 1)) <= c0 <= Fraction(1, base**T)
    return FarnessCertificate(delta, base, True, tie, d, c, bound_ok)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def family_one_over_prime(p: int, base: int) -> FarnessCertificate:
    """Certificate for ``1/p``, checking that ``d(1/p) == 1/p`` exactly."""
    check_base(base)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if math.gcd(p, base) != 1:
        raise DomainError(f"gcd({p}, {base}) != 1")
    cert = certificate(Fraction(1, p), base)
    if not cert.is_far or cert.d_value != Fraction(1, p):
        raise AssertionError(f"1/{p} failed the far-number family check in base {base}")
    return cert


def family_prop23(h: int, l: int, j: int, p: int, base: int) -> FarnessCertificate:
    """Certificate for ``h/n**j + (1/p)(l/n**j) = (h p + l) / (p n**j)``."""
    check_base(base)
    if j < 0:
        raise DomainError("j must be >= 0")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if math.gcd(p, base * l) != 1:
        raise DomainError(f"gcd({p}, {base}*{l}) != 1")
    cert = certificate(Fraction(h * p + l, p * base**j), base)
    if not cert.is_far:
        raise AssertionError("family member is not far")
    return cert


# -- digit streams (possibly irrational numbers) ------------------------------


class Verdict(enum.Enum):
    FAR_AT_DEPTH = "FAR_AT_DEPTH"
    NOT_FAR_SUSPECTED = "NOT_FAR_SUSPECTED"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class DigitStream:
    """Digits ``a_1, a_2, ...`` given by a pure rule ``i -> a_i``."""

    base: int
    rule: Callable[[int], int]

    def __call__(self, i: int) -> int:
        return self.rule(i)


def _block_rule(block: Callable[[int], list[int]]) -> Callable[[int], int]:
    # Concatenation of block(1), block(2), ...; blocks are memoized in order.
    digits: list[int] = []
    state = {"k": 0}

    def rule(i: int) -> int:
        if i < 1:
            raise IndexError("stream digits are indexed from 1")
        while len(digits) < i:
            state["k"] += 1
            digits.extend(block(state["k"]))
        return digits[i - 1]

    return rule


def growing_zeros_stream(base: int = 2) -> DigitStream:
    """``1, 0, 1, 0, 0, 1, 0, 0, 0, ...``: zero runs of every length (not far)."""
    check_base(base)
    return DigitStream(base, _block_rule(lambda k: [1] + [0] * k))


def far_block_stream(base: int = 2) -> DigitStream:
    """Blocks ``(1, 0) * k + (1, 0, 0)`` for ``k = 1, 2, ...``: ties never exceed 2.

    The stream starts ``1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, ...``. For ``base > 2``
    the digit 1 is not a tie digit and the bound is the same.
    """
    check_base(base)
    return DigitStream(base, _block_rule(lambda k: [1, 0] * k + [1, 0, 0]))


def bounded_tie_analysis(s: DigitStream, depth: int) -> tuple[int, Verdict]:
    """Longest tie among the first ``depth`` digits plus a heuristic verdict.

    The verdict is advisory only: a finite prefix never proves anything
    about an infinite stream. ``NOT_FAR_SUSPECTED`` means the record run
    length was still being broken in the last half of the prefix;
    ``FAR_AT_DEPTH`` means the record was set in the first quarter and
    never exceeded afterwards.
    """
    if depth < 1:
        raise DomainError("depth must be >= 1")
    n = s.base
    ties = {0, n - 1}
    best = 0
    best_at = 0
    run = 0
    prev = None
    for i in range(1, depth + 1):
        d = s(i)
        if not 0 <= d < n:
            raise DomainError(f"stream digit {d} at {i} outside 0..{n - 1}")
        run = run + 1 if (d == prev and d in ties) else (1 if d in ties else 0)
        prev = d
        if run > best:
            best, best_at = run, i
    if best_at > depth // 2:
        verdict = Verdict.NOT_FAR_SUSPECTED
    elif best_at <= depth // 4:
        verdict = Verdict.FAR_AT_DEPTH
    else:
        verdict = Verdict.UNDECIDED
    return best, verdict


def _smallest_prime_coprime(base: int) -> int:
    p = 2
    while not (is_prime(p) and base % p != 0):
        p += 1
    return p


def density_probe(interval, base: int, count: int) -> list[Fraction]:
    """``count`` distinct certified n-far rationals strictly inside ``interval``.

    Uses ``h/n**j + 1/(p n**j)`` with ``p`` the smallest prime not dividing
    ``n``: one per cell of generation ``j`` inside the interval. Expansions
    have preperiod ``j`` and period dividing ``p - 1``, so certification is cheap.
    """
    check_base(base)
    lo, hi = (as_fraction(x) for x in interval)
    if not lo < hi:
        raise DomainError("empty interval")
    if count < 1:
        raise DomainError("count must be >= 1")
    p = _smallest_prime_coprime(base)
    j = 0
    while Fraction(count + 2, base**j) > hi - lo:
        j += 1
    scale = base**j
    h = math.floor(lo * scale) + 1
    out = []
    for i in range(count):
        x = Fraction((h + i) * p + 1, p * scale)
        if not (lo < x < hi and is_n_far(x, base)):  # pragma: no cover
            raise AssertionError(f"probe candidate {x} failed")
        out.append(x)
    return out
