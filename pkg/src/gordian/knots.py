"""Formal knots: multisets of signed gordian generators.

A formal knot is an iterated connected sum of generators K_p (one for each
odd p >= 3) and their mirror images.  Connected sum is multiset union, the
unknot is the empty multiset, and no cancellation between a generator and its
mirror ever happens: those are genuinely distinct knots.  Signatures add over
the generators and the Alexander polynomial is the product of the torus
polynomials D_p, which yields two computable bounds on the gordian distance.

The model identifies a knot with its generator multiset.  That is faithful
for everything built here (distinctness is always certified through a
signature value or an Alexander polynomial), but it is not a model of all
knots.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Iterable, Iterator, Union

from . import circle, laurent
from .errors import DomainError, MaterializationLimitError
from .laurent import LaurentPoly, _check_odd_p
from .limits import materialization_limit


@dataclasses.dataclass(frozen=True, order=True)
class GeneratorId:
    """One gordian generator: the parameter p and whether it is mirrored."""

    p: int
    mirrored: bool = False

    def __post_init__(self):
        _check_odd_p(self.p)

    def mirror(self) -> "GeneratorId":
        return GeneratorId(self.p, not self.mirrored)


GeneratorLike = Union[GeneratorId, tuple, int]


def _as_generator(g: GeneratorLike) -> GeneratorId:
    if isinstance(g, GeneratorId):
        return g
    if isinstance(g, tuple):
        return GeneratorId(*g)
    return GeneratorId(g)


@dataclasses.dataclass(init=False, eq=True, unsafe_hash=True)
class FormalKnot:
    """Multiset of signed generators; the empty multiset is the unknot."""

    generators: tuple[GeneratorId, ...]

    def __init__(self, generators: Iterable[GeneratorLike] = ()):
        self.generators = tuple(sorted(_as_generator(g) for g in generators))

    def __iter__(self) -> Iterator[GeneratorId]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __add__(self, other: "FormalKnot") -> "FormalKnot":
        return FormalKnot(self.generators + other.generators)

    def mirror(self) -> "FormalKnot":
        return FormalKnot(g.mirror() for g in self.generators)

    def is_unknot(self) -> bool:
        return not self.generators

    def records(self) -> list[dict]:
        """Serialized form: sorted {p, mirrored, multiplicity} records with p
        as a decimal string (arbitrary precision)."""
        out: list[dict] = []
        for g in self.generators:
            if out and out[-1]["p"] == str(g.p) and out[-1]["mirrored"] == g.mirrored:
                out[-1]["multiplicity"] += 1
            else:
                out.append({"p": str(g.p), "mirrored": g.mirrored, "multiplicity": 1})
        return out

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "FormalKnot":
        gens = []
        for rec in records:
            count = rec.get("multiplicity", 1)
            if count < 1:
                raise DomainError(f"multiplicity must be positive, got {count}")
            gens.extend([GeneratorId(int(rec["p"]), bool(rec["mirrored"]))] * count)
        return cls(gens)

    def to_json(self) -> str:
        return json.dumps(self.records())

    @classmethod
    def from_json(cls, text: str) -> "FormalKnot":
        return cls.from_records(json.loads(text))

    def __str__(self) -> str:
        if not self.generators:
            return "U"
        parts = []
        for g in self.generators:
            parts.append(f"mirror(K_{g.p})" if g.mirrored else f"K_{g.p}")
        return " # ".join(parts)

    def __repr__(self) -> str:
        return f"FormalKnot({str(self)!r})"


UNKNOT = FormalKnot()


def generator_knot(p: int, mirrored: bool = False) -> FormalKnot:
    return FormalKnot([GeneratorId(p, mirrored)])


def connected_sum(k1: FormalKnot, k2: FormalKnot) -> FormalKnot:
    """Multiset union; commutative and associative with the unknot as identity."""
    return k1 + k2


def mirror(k: FormalKnot) -> FormalKnot:
    return k.mirror()


_P_CACHE = [3]


def p_sequence(n: int) -> int:
    """The canonical generator parameter p_n = (2n+1)(2n-1)...3 for n >= 1."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"p_sequence expects a positive integer index, got {n!r}")
    while len(_P_CACHE) < n:
        m = len(_P_CACHE) + 1
        _P_CACHE.append(_P_CACHE[-1] * (2 * m + 1))
    return _P_CACHE[n - 1]


def signed_multiplicities(k: FormalKnot) -> dict[int, int]:
    """Net coefficient of each p: unmirrored copies minus mirrored copies."""
    out: dict[int, int] = {}
    for g in k.generators:
        out[g.p] = out.get(g.p, 0) + (-1 if g.mirrored else 1)
    return {p: c for p, c in out.items() if c}


def multiplicities(k: FormalKnot) -> dict[int, int]:
    """Total number of copies of each p, mirrored or not."""
    out: dict[int, int] = {}
    for g in k.generators:
        out[g.p] = out.get(g.p, 0) + 1
    return out


def alexander(k: FormalKnot) -> LaurentPoly:
    """Product of the torus polynomials of the constituents (mirror-invariant)."""
    limit = materialization_limit()
    span = sum((g.p - 1) // 2 for g in k.generators)
    if span > limit:
        raise MaterializationLimitError(
            f"Alexander polynomial of degree {span} exceeds the materialization guard ({limit})"
        )
    out = laurent.ONE
    for g in k.generators:
        out = out * laurent.torus_poly(g.p)
    return out


def _merged_breakpoints(ps: Iterable[int]) -> list[Fraction]:
    """Sorted distinct circle breakpoints of the given generator parameters."""
    limit = materialization_limit()
    ps = sorted(set(ps))
    if sum(ps) > limit:
        raise MaterializationLimitError(
            f"merging breakpoints of generators {ps} exceeds the materialization guard ({limit})"
        )
    merged: set[Fraction] = set()
    for p in ps:
        merged.update(circle.generator_breakpoints(p))
    return sorted(merged)


def sup_signature_difference(k1: FormalKnot, k2: FormalKnot) -> tuple[int, Fraction | None]:
    """Exact sup over the circle of |sigma_k1 - sigma_k2| with a witness turn.

    Generators shared with equal net sign cancel and are dropped.  The
    difference is piecewise constant on the arrangement of the remaining
    breakpoints, and its value at a breakpoint is the average of the adjacent
    arc values, so sampling every merged arc midpoint attains the sup.
    """
    diff: dict[int, int] = signed_multiplicities(k1)
    for p, c in signed_multiplicities(k2).items():
        diff[p] = diff.get(p, 0) - c
    diff = {p: c for p, c in diff.items() if c}
    if not diff:
        return 0, None
    bps = _merged_breakpoints(diff)
    best = 0
    best_theta: Fraction | None = None
    for i, b in enumerate(bps):
        nxt = bps[(i + 1) % len(bps)]
        if nxt <= b:
            nxt += 1
        mid = circle.as_turn((b + nxt) / 2)
        value = abs(sum(c * (1 - circle.generator_sign_at(p, mid)) for p, c in diff.items()))
        if value > best:
            best, best_theta = value, mid
    return best, best_theta


def distance_lower_bound(k1: FormalKnot, k2: FormalKnot) -> int:
    """ceil(sup |sigma_k1 - sigma_k2| / 2), a lower bound for the gordian distance."""
    sup, _ = sup_signature_difference(k1, k2)
    return (sup + 1) // 2


def unknotting_upper_bound(k1: FormalKnot, k2: FormalKnot) -> int:
    """Size of the multiset symmetric difference; each extra generator is one
    crossing change away from the unknot."""
    remaining = list(k2.generators)
    extra = 0
    for g in k1.generators:
        if g in remaining:
            remaining.remove(g)
        else:
            extra += 1
    return extra + len(remaining)


def root_gap(k: FormalKnot) -> Fraction:
    """Minimal circular gap between breakpoints of the Alexander polynomial of k.

    Defined as 1 full turn when the knot has at most one breakpoint (in
    particular for the unknot).  Exact: the breakpoints of generator-built
    knots are rational.
    """
    if k.is_unknot():
        return Fraction(1)
    bps = _merged_breakpoints(g.p for g in k.generators)
    if len(bps) <= 1:
        return Fraction(1)
    best = bps[0] + 1 - bps[-1]
    for a, b in zip(bps, bps[1:]):
        best = min(best, b - a)
    return best
