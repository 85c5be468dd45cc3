"""Exact arc-set algebra on the circle with rational turn angles.

Angles are measured in turns (1 turn = a full revolution) and represented by
Fractions normalized into [0, 1).  An ArcSet is a finite union of open arcs
kept in regularized canonical form: overlapping or touching arcs are merged,
so the represented sets form a Boolean algebra in which De Morgan and double
complement hold exactly.

The generator arc machinery works two ways: small p materializes the sign
arcs of the torus polynomial D_p, while arbitrarily large p is served by the
closed-form sign formula and the constructive witness search, which never
materialize anything.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

from .errors import DomainError, MaterializationLimitError, SpacingError
from .laurent import _check_odd_p
from .limits import materialization_limit

Turn = Fraction
HALF = Fraction(1, 2)


def as_turn(value) -> Turn:
    """Normalize a rational angle into [0, 1) turns."""
    return Fraction(value) % 1


def _arc_pieces(lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Split the open arc travelled counterclockwise from lo to hi into
    segments of [0, 1]; raises for lo = hi, which is ambiguous."""
    lo = as_turn(lo)
    length = as_turn(hi - lo)
    if length == 0:
        raise DomainError("arc endpoints must differ")
    hi = lo + length
    if hi <= 1:
        return [(lo, hi)]
    return [(lo, Fraction(1)), (Fraction(0), hi - 1)]


@dataclasses.dataclass(init=False, eq=True, unsafe_hash=True)
class ArcSet:
    """Finite union of open arcs in canonical (sorted, merged) form.

    arcs is a tuple of (lo, hi) pairs with 0 <= lo < 1 and lo < hi <= lo + 1;
    the final arc may have hi > 1, meaning it wraps past a full turn.  The
    full circle is the distinguished value with full=True and no arcs.
    """

    arcs: tuple[tuple[Fraction, Fraction], ...]
    full: bool

    def __init__(self, arcs: Iterable[tuple[Fraction, Fraction]] = (), full: bool = False):
        if full:
            self.arcs = ()
            self.full = True
            return
        segs: list[tuple[Fraction, Fraction]] = []
        for lo, hi in arcs:
            segs.extend(_arc_pieces(Fraction(lo), Fraction(hi)))
        segs.sort()
        merged: list[list[Fraction]] = []
        for lo, hi in segs:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        if len(merged) == 1 and merged[0] == [0, 1]:
            self.arcs = ()
            self.full = True
            return
        if len(merged) >= 2 and merged[0][0] == 0 and merged[-1][1] == 1:
            first = merged.pop(0)
            merged[-1][1] = 1 + first[1]
        self.arcs = tuple((lo, hi) for lo, hi in merged)
        self.full = False

    @classmethod
    def empty(cls) -> "ArcSet":
        return cls()

    @classmethod
    def full_circle(cls) -> "ArcSet":
        return cls(full=True)

    def is_empty(self) -> bool:
        return not self.full and not self.arcs

    def witness(self) -> Turn | None:
        """Midpoint of the leftmost arc, None when empty, 0 for the full circle."""
        if self.full:
            return Fraction(0)
        if not self.arcs:
            return None
        lo, hi = self.arcs[0]
        return as_turn((lo + hi) / 2)

    def measure(self) -> Fraction:
        """Total turn length."""
        if self.full:
            return Fraction(1)
        return sum((hi - lo for lo, hi in self.arcs), Fraction(0))

    def contains(self, theta) -> bool:
        if self.full:
            return True
        t = as_turn(theta)
        for lo, hi in self.arcs:
            if lo < t < hi or lo < t + 1 < hi:
                return True
        return False

    def complement(self) -> "ArcSet":
        """Interior of the set complement (the gaps between the arcs)."""
        if self.full:
            return ArcSet.empty()
        if not self.arcs:
            return ArcSet.full_circle()
        gaps = []
        for i, (_, hi) in enumerate(self.arcs):
            nxt_lo = self.arcs[(i + 1) % len(self.arcs)][0]
            gaps.append((as_turn(hi), nxt_lo))
        return ArcSet(gaps)

    __invert__ = complement

    def intersect(self, other: "ArcSet") -> "ArcSet":
        if self.full:
            return other
        if other.full:
            return self
        pieces = []
        mine = [seg for lo, hi in self.arcs for seg in _split_linear(lo, hi)]
        theirs = [seg for lo, hi in other.arcs for seg in _split_linear(lo, hi)]
        for a_lo, a_hi in mine:
            for b_lo, b_hi in theirs:
                lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
                if lo < hi:
                    pieces.append((lo, hi))
        return ArcSet(pieces)

    __and__ = intersect

    def union(self, other: "ArcSet") -> "ArcSet":
        if self.full or other.full:
            return ArcSet.full_circle()
        return ArcSet(self.arcs + other.arcs)

    __or__ = union

    def __str__(self) -> str:
        if self.full:
            return "(full circle)"
        if not self.arcs:
            return "(empty)"
        return " ".join(f"({lo},{as_turn(hi)})" for lo, hi in self.arcs)

    def __repr__(self) -> str:
        return f"ArcSet({str(self)!r})"


def _split_linear(lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    if hi <= 1:
        return [(lo, hi)]
    return [(lo, Fraction(1)), (Fraction(0), hi - 1)]


def intersect(*sets: ArcSet) -> ArcSet:
    out = ArcSet.full_circle()
    for s in sets:
        out = out.intersect(s)
    return out


def complement(s: ArcSet) -> ArcSet:
    return s.complement()


def is_empty(s: ArcSet) -> tuple[bool, Turn | None]:
    """Emptiness flag together with a witness point when nonempty."""
    return s.is_empty(), s.witness()


def breakpoint(p: int, k: int) -> Fraction:
    """The k-th breakpoint (2k+1)/(2p) of generator p; k may exceed p (unwrapped)."""
    return Fraction(2 * k + 1, 2 * p)


def generator_breakpoints(p: int) -> list[Fraction]:
    """All circle roots of D_p in ascending order: (2k+1)/(2p) without 1/2."""
    _check_odd_p(p)
    if p > materialization_limit():
        raise MaterializationLimitError(
            f"breakpoints of generator p={p} exceed the materialization guard "
            f"({materialization_limit()}); raise GORDIAN_MAX_P to override"
        )
    excluded = (p - 1) // 2
    return [breakpoint(p, k) for k in range(p) if k != excluded]


def arcs_of_generator(p: int) -> ArcSet:
    """The subset of the circle where the signature of generator p equals 2.

    Breakpoints are the rational turns (2k+1)/(2p) excluding 1/2; the sign of
    D_p alternates across them starting positive on the arc containing 0, and
    the returned set collects the negative arcs.
    """
    bps = generator_breakpoints(p)
    arcs = []
    # The wrap arc (last breakpoint, first breakpoint) contains 0 and is
    # positive; signs then alternate at every remaining breakpoint.
    for i in range(0, len(bps) - 1, 2):
        arcs.append((bps[i], bps[i + 1]))
    return ArcSet(arcs)


def generator_sign_at(p: int, theta) -> int:
    """Sign of D_p at e^(2 pi i theta): -1, 0 on a root, or +1.

    Works for arbitrarily large odd p; nothing is materialized.  The
    breakpoint at 1/2 is excluded (D_p does not vanish at t = -1), so the
    sign there is (-1)^((p-1)/2) and crossing 1/2 does not flip the sign.
    """
    _check_odd_p(p)
    t = as_turn(theta)
    if t == HALF:
        return -1 if ((p - 1) // 2) % 2 else 1
    u = p * t + HALF
    if u.denominator == 1:
        return 0
    crossings = int(u.numerator // u.denominator) - (1 if t > HALF else 0)
    return -1 if crossings % 2 else 1


def _excluded_index(p: int) -> int:
    return (p - 1) // 2


def _grid_sign(p: int, k: int) -> int:
    """Sign of D_p on the open arc between breakpoints k and k+1 (k mod p)."""
    k %= p
    flips = (k + 1) - (1 if k >= _excluded_index(p) else 0)
    return -1 if flips % 2 else 1


def _leftmost_maximal_arc(p: int, sign: int) -> tuple[Fraction, Fraction]:
    """The maximal sign arc of generator p with the smallest left endpoint."""
    if sign == -1:
        k = 0
    else:
        k = 1 if p >= 5 else 2
    assert _grid_sign(p, k) == sign
    hi_index = k + 2 if k + 1 == _excluded_index(p) else k + 1
    return breakpoint(p, k), breakpoint(p, hi_index)


def independence_witness(ps: Sequence[int], signs: Sequence[int]) -> Turn:
    """A rational turn theta with generator_sign_at(ps[i], theta) == signs[i].

    ps must be strictly increasing odd integers; the construction is
    guaranteed when successive ratios are at least 3 (the canonical generator
    sequence has ratios 2n+1).  It maintains a rational interval certified
    inside the intersection so far, shrinking it to a full sign arc of each
    successive generator, and returns the midpoint of the final interval.
    Materialization-free, so double-factorial p is fine.
    """
    if len(ps) != len(signs):
        raise DomainError("ps and signs must have equal length")
    if not ps:
        raise DomainError("at least one generator is required")
    for s in signs:
        if s not in (-1, 1):
            raise DomainError(f"signs must be +1 or -1, got {s!r}")
    for i, p in enumerate(ps):
        _check_odd_p(p)
        if i and ps[i] <= ps[i - 1]:
            raise DomainError("ps must be strictly increasing")

    lo, hi = _leftmost_maximal_arc(ps[0], signs[0])
    for p, want in zip(ps[1:], signs[1:]):
        k_start = ceil(p * lo - HALF)
        for k in (k_start, k_start + 1, k_start + 2):
            if breakpoint(p, k) >= lo and breakpoint(p, k + 1) <= hi and _grid_sign(p, k) == want:
                lo, hi = breakpoint(p, k), breakpoint(p, k + 1)
                break
        else:
            raise SpacingError(
                f"no full sign-{want} arc of generator {p} fits inside ({lo}, {hi}); "
                "successive ratios below 3 violate the spacing precondition"
            )
    return as_turn((lo + hi) / 2)
