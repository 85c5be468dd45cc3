"""Tree embedding into the gordian graph with distance certificates, and the
finite-complement detour construction.

Vertices of the tree are index paths from the root (the empty path).  Each
edge gets a number n; the knot of a vertex extends its parent's knot by
K_{p_(2n)} # mirror(K_{p_(2n+1)}) over the canonical generator sequence.  A
certificate for a pair of vertices carries a witness turn where the two
signatures differ by exactly 2 d_T, which sandwiches the gordian distance in
[d_T, 2 d_T].  Certificates also record the stronger per-edge jump of 4 that
the sandwich would need to be an isometry onto the doubled tree metric; the
discrepancy flag marks that the evaluated jump is 2, not 4.
"""

from __future__ import annotations

import dataclasses
import functools
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import circle, knots, signature
from .errors import DomainError
from .knots import FormalKnot, GeneratorId, UNKNOT, p_sequence

Vertex = tuple[int, ...]

ROOT: Vertex = ()


def parse_vertex(text: str) -> Vertex:
    """Parse 'root' or a comma-separated child index path like '0,1,1'."""
    text = text.strip()
    if text in ("", "root"):
        return ()
    try:
        path = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"cannot parse vertex path {text!r}") from exc
    if any(i < 0 for i in path):
        raise DomainError(f"vertex indices must be nonnegative, got {text!r}")
    return path


def format_vertex(v: Vertex) -> str:
    return "root" if not v else ",".join(str(i) for i in v)


def meet(x: Vertex, y: Vertex) -> Vertex:
    """First common ancestor: the longest common prefix."""
    k = 0
    for a, b in zip(x, y):
        if a != b:
            break
        k += 1
    return tuple(x[:k])


def tree_distance(x: Vertex, y: Vertex) -> int:
    z = meet(x, y)
    return (len(x) - len(z)) + (len(y) - len(z))


def edge_number(v: Vertex, valency: int | None = 2) -> int:
    """Breadth-first number of the edge above v (the root's children come
    first, left to right).

    For finite valency b this is the standard b-ary heap numbering.  For the
    infinite-valency tree (valency=None) vertices are enumerated by
    increasing depth + index sum, then depth, then lexicographic path, which
    is a computable injective substitute for breadth-first order.
    """
    if not v:
        raise DomainError("the root has no edge above it")
    if any(i < 0 for i in v):
        raise DomainError("vertex indices must be nonnegative")
    if valency is not None:
        if any(i >= valency for i in v):
            raise DomainError(
                f"vertex {format_vertex(v)} has a child index >= valency {valency}; "
                "pass a larger valency or valency=None"
            )
        k = len(v)
        base = (valency**k - 1) // (valency - 1) if valency > 1 else k
        offset = 0
        for i in v:
            offset = offset * valency + i
        return base + offset if valency > 1 else k
    weight = len(v) + sum(v)
    rank = sum(2 ** (w - 1) for w in range(1, weight))
    for depth in range(1, len(v)):
        rank += comb(weight - 1, depth - 1)
    rank += _composition_rank(v, sum(v))
    return rank + 1


def _composition_rank(path: Sequence[int], total: int) -> int:
    """Lexicographic rank of path among compositions of total into len(path)
    nonnegative parts."""
    rank = 0
    remaining = total
    for pos, c in enumerate(path):
        slots = len(path) - pos - 1
        for smaller in range(c):
            rank += comb(remaining - smaller + slots - 1, slots - 1) if slots else (
                1 if remaining == smaller else 0
            )
        remaining -= c
    return rank


@functools.lru_cache(maxsize=None)
def phi(v: Vertex, valency: int | None = 2) -> FormalKnot:
    """The embedded knot of a vertex: the root maps to the unknot and each
    edge n contributes K_{p_(2n)} # mirror(K_{p_(2n+1)})."""
    if not v:
        return UNKNOT
    n = edge_number(v, valency)
    extra = FormalKnot([GeneratorId(p_sequence(2 * n)), GeneratorId(p_sequence(2 * n + 1), True)])
    return phi(v[:-1], valency) + extra


@dataclasses.dataclass(frozen=True)
class IsometryCertificate:
    """Machine-checkable witness for the distance sandwich of a vertex pair.

    observed_gap = |sigma_x(theta) - sigma_y(theta)| evaluates to 2(k + l);
    claimed_gap records the jump 4(k + l) that an isometry onto the doubled
    tree metric would require, and discrepancy flags that the two differ.
    Validity always keys off the observed value.
    """

    x: Vertex
    y: Vertex
    meet: Vertex
    k: int
    l: int
    theta: Fraction
    sigma_x: int
    sigma_y: int
    lower: int
    upper: int
    observed_gap: int
    claimed_gap: int
    discrepancy: bool

    def tree_dist(self) -> int:
        return self.k + self.l

    def payload(self) -> dict:
        return {
            "x": format_vertex(self.x),
            "y": format_vertex(self.y),
            "meet": format_vertex(self.meet),
            "k": self.k,
            "l": self.l,
            "theta": str(self.theta),
            "sigma_x": self.sigma_x,
            "sigma_y": self.sigma_y,
            "lower": self.lower,
            "upper": self.upper,
            "observed_gap": self.observed_gap,
            "claimed_gap": self.claimed_gap,
            "discrepancy": self.discrepancy,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "IsometryCertificate":
        return cls(
            x=parse_vertex(payload["x"]),
            y=parse_vertex(payload["y"]),
            meet=parse_vertex(payload["meet"]),
            k=int(payload["k"]),
            l=int(payload["l"]),
            theta=Fraction(payload["theta"]),
            sigma_x=int(payload["sigma_x"]),
            sigma_y=int(payload["sigma_y"]),
            lower=int(payload["lower"]),
            upper=int(payload["upper"]),
            observed_gap=int(payload["observed_gap"]),
            claimed_gap=int(payload["claimed_gap"]),
            discrepancy=bool(payload["discrepancy"]),
        )


def certify_pair(x: Iterable[int], y: Iterable[int], valency: int | None = 2) -> IsometryCertificate:
    """Build the distance certificate for a pair of tree vertices.

    The witness turn is requested to lie inside the sign arcs of the
    generators above the meet: unmirrored x-side generators inside their arc
    set, mirrored x-side outside, and the reverse pattern on the y side, so
    every x-side edge raises the signature difference by 2 and every y-side
    edge lowers it by 2.  Generators below the meet are shared by both knots
    and cancel, so they are excluded from the witness request.
    """
    x, y = tuple(x), tuple(y)
    z = meet(x, y)
    k = len(x) - len(z)
    l = len(y) - len(z)
    inside, outside = -1, 1
    wanted: list[tuple[int, int]] = []
    for leaf, is_x_side in ((x, True), (y, False)):
        for cut in range(len(z) + 1, len(leaf) + 1):
            n = edge_number(leaf[:cut], valency)
            if is_x_side:
                wanted.append((p_sequence(2 * n), inside))
                wanted.append((p_sequence(2 * n + 1), outside))
            else:
                wanted.append((p_sequence(2 * n), outside))
                wanted.append((p_sequence(2 * n + 1), inside))
    if wanted:
        wanted.sort()
        ps = [p for p, _ in wanted]
        signs = [s for _, s in wanted]
        theta = circle.independence_witness(ps, signs)
    else:
        theta = Fraction(0)
    kx, ky = phi(x, valency), phi(y, valency)
    sigma_x = signature.eval_formal_signature(kx, theta)
    sigma_y = signature.eval_formal_signature(ky, theta)
    observed = abs(sigma_x - sigma_y)
    d_t = k + l
    return IsometryCertificate(
        x=x,
        y=y,
        meet=z,
        k=k,
        l=l,
        theta=theta,
        sigma_x=sigma_x,
        sigma_y=sigma_y,
        lower=(observed + 1) // 2,
        upper=2 * d_t,
        observed_gap=observed,
        claimed_gap=4 * d_t,
        discrepancy=(4 * d_t != observed),
    )


def verify_certificate(cert: IsometryCertificate, valency: int | None = 2) -> bool:
    """Re-evaluate both signatures at the stored witness and check all fields."""
    kx, ky = phi(cert.x, valency), phi(cert.y, valency)
    if signature.eval_formal_signature(kx, cert.theta) != cert.sigma_x:
        return False
    if signature.eval_formal_signature(ky, cert.theta) != cert.sigma_y:
        return False
    d_t = tree_distance(cert.x, cert.y)
    return (
        cert.meet == meet(cert.x, cert.y)
        and cert.k + cert.l == d_t
        and cert.observed_gap == abs(cert.sigma_x - cert.sigma_y)
        and cert.lower == (cert.observed_gap + 1) // 2
        and cert.upper == 2 * d_t
        and cert.claimed_gap == 4 * d_t
        and cert.discrepancy == (cert.claimed_gap != cert.observed_gap)
        and cert.lower <= cert.upper
    )


def vertices_to_depth(depth: int, valency: int = 2) -> list[Vertex]:
    out: list[Vertex] = [()]
    frontier: list[Vertex] = [()]
    for _ in range(depth):
        frontier = [v + (i,) for v in frontier for i in range(valency)]
        out.extend(frontier)
    return out


def certify_all(depth: int, valency: int = 2) -> list[IsometryCertificate]:
    """Certificates for every unordered pair of distinct vertices up to depth."""
    vs = vertices_to_depth(depth, valency)
    out = []
    for i, x in enumerate(vs):
        for y in vs[i + 1 :]:
            out.append(certify_pair(x, y, valency))
    return out


def choose_detour(forbidden: Iterable[FormalKnot]) -> int:
    """Smallest odd p >= 3 whose generator breakpoint spacing 1/p is strictly
    below every root gap of the forbidden knots.

    Summing with K_p then changes every forbidden knot into one whose
    Alexander polynomial has a smaller minimal root gap than any forbidden
    polynomial, hence is distinct from all of them.
    """
    l = Fraction(1)
    for k in forbidden:
        l = min(l, knots.root_gap(k))
    p = int(1 / l) + 1
    if p % 2 == 0:
        p += 1
    return max(p, 3)


@dataclasses.dataclass(frozen=True)
class DetourPlan:
    """A reroute of a knot path around a finite forbidden set.

    detoured_path lifts every path entry by the connected sum with K_p and
    re-enters the original endpoints, so consecutive entries differ by one
    construction move and no interior entry can coincide with a forbidden
    knot.
    """

    forbidden: tuple[FormalKnot, ...]
    path: tuple[FormalKnot, ...]
    detour_p: int
    detoured_path: tuple[FormalKnot, ...]

    def payload(self) -> dict:
        return {
            "forbidden": [k.records() for k in self.forbidden],
            "path": [k.records() for k in self.path],
            "detour_p": str(self.detour_p),
            "detoured_path": [k.records() for k in self.detoured_path],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "DetourPlan":
        return cls(
            forbidden=tuple(FormalKnot.from_records(r) for r in payload["forbidden"]),
            path=tuple(FormalKnot.from_records(r) for r in payload["path"]),
            detour_p=int(payload["detour_p"]),
            detoured_path=tuple(FormalKnot.from_records(r) for r in payload["detoured_path"]),
        )


def build_detour(path: Sequence[FormalKnot], forbidden: Iterable[FormalKnot]) -> DetourPlan:
    """Construct the detour [L_0, L_0 # K_p, ..., L_k # K_p, L_k] with
    p = choose_detour over the forbidden set together with the path entries."""
    path = tuple(path)
    forbidden = tuple(forbidden)
    if not path:
        raise DomainError("the path must be nonempty")
    for end in (path[0], path[-1]):
        if any(end == f for f in forbidden):
            raise DomainError(f"path endpoint {end} is itself forbidden")
    p = choose_detour(forbidden + path)
    kp = knots.generator_knot(p)
    lifted = tuple(entry + kp for entry in path)
    return DetourPlan(forbidden, path, p, (path[0],) + lifted + (path[-1],))


def distinctness_certificate(k1: FormalKnot, k2: FormalKnot) -> dict | None:
    """Evidence that two formal knots are distinct, or None if they are equal.

    Either the Alexander polynomials differ (the torus factor multiplicities
    determine the product uniquely) or some turn separates the signatures.
    Distinct multisets always admit one of the two certificates.
    """
    if k1 == k2:
        return None
    m1, m2 = knots.multiplicities(k1), knots.multiplicities(k2)
    if m1 != m2:
        cert: dict = {"kind": "alexander"}
        if sum((p - 1) // 2 * c for p, c in m1.items()) <= 128 and sum(
            (p - 1) // 2 * c for p, c in m2.items()
        ) <= 128:
            cert["alexander_1"] = str(knots.alexander(k1))
            cert["alexander_2"] = str(knots.alexander(k2))
        else:
            cert["factors_1"] = {str(p): c for p, c in sorted(m1.items())}
            cert["factors_2"] = {str(p): c for p, c in sorted(m2.items())}
        return cert
    sup, theta = knots.sup_signature_difference(k1, k2)
    if sup == 0 or theta is None:
        return None
    return {
        "kind": "signature",
        "theta": str(theta),
        "sigma_1": signature.eval_formal_signature(k1, theta),
        "sigma_2": signature.eval_formal_signature(k2, theta),
    }


@dataclasses.dataclass(frozen=True)
class DetourReport:
    """Outcome of verifying a DetourPlan; truthy iff every check passed."""

    ok: bool
    entry_certificates: tuple[dict, ...]
    moves: tuple[str, ...]
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok

    def payload(self) -> dict:
        return {
            "ok": self.ok,
            "entry_certificates": list(self.entry_certificates),
            "moves": list(self.moves),
            "failures": list(self.failures),
        }


def verify_detour(plan: DetourPlan) -> DetourReport:
    """Check a detour plan: every interior entry is certified distinct from
    every forbidden knot, and consecutive entries differ by exactly one
    construction move (entering the detour, one original-path step with the
    detour generator attached, or leaving the detour).

    Adjacency of the original path entries is an axiom of the formal model,
    as is adjacency under a single connected sum with a gordian generator.
    """
    failures: list[str] = []
    certificates: list[dict] = []
    moves: list[str] = []
    kp = knots.generator_knot(plan.detour_p)
    dp = plan.detoured_path
    if len(dp) != len(plan.path) + 2:
        failures.append("detoured path has the wrong length")
    else:
        if dp[0] != plan.path[0] or dp[-1] != plan.path[-1]:
            failures.append("detoured path does not start and end at the original endpoints")
        if dp[1] == dp[0] + kp:
            moves.append("add detour generator")
        else:
            failures.append("first move does not add the detour generator")
        for i in range(1, len(plan.path)):
            if dp[i + 1] == plan.path[i] + kp:
                moves.append("original path step")
            else:
                failures.append(f"move {i} does not track original path step {i}")
        if dp[-2] == dp[-1] + kp:
            moves.append("remove detour generator")
        else:
            failures.append("last move does not remove the detour generator")
    for i, entry in enumerate(dp[1:-1], start=1):
        for j, forb in enumerate(plan.forbidden):
            cert = distinctness_certificate(entry, forb)
            if cert is None:
                failures.append(
                    f"interior entry {i} ({entry}) cannot be certified distinct from forbidden knot {j}"
                )
            else:
                certificates.append({"entry": i, "forbidden": j, **cert})
    ok = not failures
    return DetourReport(ok, tuple(certificates), tuple(moves), tuple(failures))
