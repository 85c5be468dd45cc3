"""Exact sparse Laurent polynomials over the integers.

The central objects are polynomials d in Z[t, 1/t] that are symmetric under
t -> 1/t and take the value 1 at t = 1.  Every such polynomial has a unique
expansion

    d = 1 + a_0 (2 - t - 1/t) + sum_{i>=1} a_i (t^i + t^-i)(2 - t - 1/t)

and a half-integer refinement of it (the linking form) whose symmetrization
recovers d.  This module provides the polynomial arithmetic, the basis
conversions, the torus-knot family D_p, and the change of variable
x = t + 1/t used for root isolation on the unit circle.
"""

from __future__ import annotations

import dataclasses
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from . import sturm
from .errors import DomainError, MaterializationLimitError
from .limits import materialization_limit

BasisCoeffs = tuple[int, ...]


@dataclasses.dataclass(init=False, eq=True, unsafe_hash=True)
class LaurentPoly:
    """Integer Laurent polynomial stored sparsely as (exponent, coefficient) pairs.

    >>> LaurentPoly({-1: 1, 0: -1, 1: 1})
    LaurentPoly('t^-1-1+t')
    """

    terms: tuple[tuple[int, int], ...]

    def __init__(self, coeffs: Union[Mapping[int, int], Iterable[tuple[int, int]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"exponent {e!r} is not an integer")
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient {c!r} is not an integer")
            acc[e] = acc.get(e, 0) + c
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))

    def coeff(self, e: int) -> int:
        for exp, c in self.terms:
            if exp == e:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Largest exponent, or None for the zero polynomial."""
        return self.terms[-1][0] if self.terms else None

    def valuation(self) -> int | None:
        """Smallest exponent, or None for the zero polynomial."""
        return self.terms[0][0] if self.terms else None

    def involution(self) -> "LaurentPoly":
        """The image under t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self.terms})

    def is_symmetric(self) -> bool:
        return self == self.involution()

    def __add__(self, other):
        other = _coerce(other)
        return LaurentPoly(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return LaurentPoly(list(self.terms) + [(e, -c) for e, c in other.terms])

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return LaurentPoly([(e, -c) for e, c in self.terms])

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly([(e, c * other) for e, c in self.terms])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are not defined here")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        """Exact evaluation at a nonzero rational point."""
        if x == 0:
            raise ZeroDivisionError("Laurent polynomials cannot be evaluated at 0")
        acc = Fraction(0)
        for e, c in self.terms:
            acc += c * Fraction(x) ** e
        return int(acc) if acc.denominator == 1 else acc

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly({0: value})
    raise TypeError(f"cannot combine LaurentPoly with {value!r}")


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


@dataclasses.dataclass(init=False, eq=True, unsafe_hash=True)
class HalfLaurent:
    """Laurent polynomial whose coefficients are rationals with denominator 1 or 2."""

    terms: tuple[tuple[int, Fraction], ...]

    def __init__(self, coeffs: Union[Mapping[int, Fraction], Iterable[tuple[int, Fraction]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Fraction] = {}
        for e, c in items:
            c = Fraction(c)
            if c.denominator not in (1, 2):
                raise DomainError(f"coefficient {c} does not have denominator 1 or 2")
            acc[e] = acc.get(e, Fraction(0)) + c
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))

    def coeff(self, e: int) -> Fraction:
        for exp, c in self.terms:
            if exp == e:
                return c
        return Fraction(0)

    def involution(self) -> "HalfLaurent":
        return HalfLaurent({-e: c for e, c in self.terms})

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"HalfLaurent({format_poly(self)!r})"


def is_normalized(d: LaurentPoly) -> bool:
    """True iff d is invariant under t -> 1/t and d(1) = 1."""
    return d.is_symmetric() and d(1) == 1


def torus_poly(p: int) -> LaurentPoly:
    """The normalized polynomial t^-(p-1)/2 (t^p + 1)/(t + 1) of the (p,2) torus knot."""
    _check_odd_p(p)
    if p > materialization_limit():
        raise MaterializationLimitError(
            f"torus polynomial for p={p} exceeds the materialization guard "
            f"({materialization_limit()}); raise GORDIAN_MAX_P to override"
        )
    h = (p - 1) // 2
    return LaurentPoly({j - h: (1 if j % 2 == 0 else -1) for j in range(p)})


def _check_odd_p(p) -> None:
    if not isinstance(p, int) or isinstance(p, bool):
        raise DomainError(f"p must be an integer, got {p!r}")
    if p % 2 == 0:
        raise DomainError(f"p must be odd, got {p}")
    if p < 3:
        raise DomainError(f"p must be at least 3, got {p}")


def basis_element(i: int) -> LaurentPoly:
    """(t^i + t^-i)(2 - t - 1/t) for i >= 1, and 2 - t - 1/t for i = 0."""
    if i < 0:
        raise ValueError("basis index must be nonnegative")
    kernel = LaurentPoly({0: 2, 1: -1, -1: -1})
    if i == 0:
        return kernel
    return LaurentPoly({i: 1, -i: 1}) * kernel


def from_basis(a: Iterable[int]) -> LaurentPoly:
    """Expand 1 + a_0 B_0 + sum a_i B_i over the basis elements B_i."""
    out = ONE
    for i, ai in enumerate(a):
        if ai:
            out = out + basis_element(i) * ai
    return out


def to_basis(d: LaurentPoly) -> BasisCoeffs:
    """The unique coefficients a with d = from_basis(a).

    Solved by eliminating the top exponent first: the basis element indexed i
    is the only one reaching exponent i + 1, where its coefficient is -1.
    """
    if not is_normalized(d):
        raise DomainError(f"polynomial {d} is not normalized (symmetric with value 1 at t=1)")
    coeffs: dict[int, int] = {}
    r = d - ONE
    while not r.is_zero():
        n = r.degree()
        if n < 1:
            raise AssertionError("elimination left a nonzero constant; input was not normalized")
        i = n - 1
        ai = -r.coeff(n)
        coeffs[i] = ai
        r = r - basis_element(i) * ai
    if not coeffs:
        return ()
    top = max(coeffs)
    return tuple(sturm.trim([coeffs.get(i, 0) for i in range(top + 1)]))


def linking_form(a: Iterable[int]) -> HalfLaurent:
    """1/2 + a_0 (1 - t) + sum_{i>=1} a_i (t^i + t^-i)(1 - t).

    This is the coefficient content of the self-linking expansion whose
    symmetric part recovers from_basis(a).
    """
    acc: dict[int, Fraction] = {0: Fraction(1, 2)}

    def add(e: int, c) -> None:
        acc[e] = acc.get(e, Fraction(0)) + c

    for i, ai in enumerate(a):
        if not ai:
            continue
        if i == 0:
            add(0, Fraction(ai))
            add(1, Fraction(-ai))
        else:
            # (t^i + t^-i)(1 - t) = t^i + t^-i - t^(i+1) - t^(1-i)
            add(i, Fraction(ai))
            add(-i, Fraction(ai))
            add(i + 1, Fraction(-ai))
            add(1 - i, Fraction(-ai))
    return HalfLaurent(acc)


def symmetrize(f: HalfLaurent) -> LaurentPoly:
    """f(t) + f(1/t), which must have integer coefficients."""
    acc: dict[int, Fraction] = {}
    for e, c in f.terms:
        acc[e] = acc.get(e, Fraction(0)) + c
        acc[-e] = acc.get(-e, Fraction(0)) + c
    out: dict[int, int] = {}
    for e, c in acc.items():
        if c.denominator != 1:
            raise DomainError(f"symmetrization has non-integer coefficient {c} at t^{e}")
        out[e] = int(c)
    return LaurentPoly(out)


def to_chebyshev(d: LaurentPoly) -> tuple[int, ...]:
    """The integer polynomial Q with Q(z + 1/z) = d(z), for symmetric d.

    On the unit circle this gives d(e^(i s)) = Q(2 cos s), which turns circle
    root isolation into real root isolation on [-2, 2].
    """
    if not d.is_symmetric():
        raise DomainError(f"polynomial {d} is not symmetric under t -> 1/t")
    if d.is_zero():
        return ()
    n = d.degree()
    out = [0] * (n + 1)
    out[0] = d.coeff(0)
    # s_i(x) = z^i + z^-i as a polynomial in x = z + 1/z: s_0 = 2, s_1 = x,
    # s_i = x s_{i-1} - s_{i-2}.
    s_prev: list[int] = [2]
    s_cur: list[int] = [0, 1]
    for i in range(1, n + 1):
        ci = d.coeff(i)
        if ci:
            for j, s in enumerate(s_cur):
                out[j] += ci * s
        if i < n:
            nxt = [0] + s_cur
            for j, s in enumerate(s_prev):
                nxt[j] -= s
            s_prev, s_cur = s_cur, nxt
    return sturm.trim(out)


def symmetric_from_chebyshev(q: Iterable[int]) -> LaurentPoly:
    """Inverse of to_chebyshev: the symmetric Laurent polynomial q(t + 1/t)."""
    out = ZERO
    x = LaurentPoly({1: 1, -1: 1})
    for i, c in enumerate(q):
        if c:
            out = out + x**i * c
    return out


def torus_factorization(d: LaurentPoly) -> tuple[int, ...] | None:
    """The multiset of odd p with d = prod D_p, or None if d is no such product.

    Factors are peeled largest-first in the x = t + 1/t coordinate; the largest
    torus polynomial dividing a pure product is always a true factor, which
    makes the greedy order correct.
    """
    if d == ONE:
        return ()
    if d.is_zero() or not d.is_symmetric() or d(1) != 1:
        return None
    q = to_chebyshev(d)
    if q[-1] != 1:
        return None
    found: list[int] = []
    while sturm.degree(q) > 0:
        deg = sturm.degree(q)
        for p in range(2 * deg + 1, 2, -2):
            if (p - 1) // 2 > deg:
                continue
            quo, rem = sturm.divmod_int_exact(q, to_chebyshev(torus_poly(p)))
            if not rem:
                q = quo
                found.append(p)
                break
        else:
            return None
    if q != (1,):
        return None
    return tuple(sorted(found))


_TERM_RE = re.compile(
    r"(?P<sign>[+-])?\s*"
    r"(?:"
    r"(?P<coeff>\d+)\s*\*?\s*(?P<var_after_coeff>t(?:\^(?P<exp1>-?\d+))?)?"
    r"|(?P<var>t(?:\^(?P<exp2>-?\d+))?)"
    r")\s*"
)


def _parse_terms(text: str) -> list[tuple[int, Fraction]]:
    s = text.strip()
    if not s:
        raise DomainError("empty polynomial text")
    pos = 0
    first = True
    terms: list[tuple[int, Fraction]] = []
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial text {text!r} at position {pos}")
        sign = m.group("sign")
        if sign is None and not first:
            raise DomainError(f"missing +/- between terms in {text!r}")
        factor = -1 if sign == "-" else 1
        coeff_txt = m.group("coeff")
        var = m.group("var_after_coeff") or m.group("var")
        if coeff_txt is None and var is None:
            raise DomainError(f"cannot parse polynomial text {text!r} at position {pos}")
        coeff = Fraction(int(coeff_txt)) if coeff_txt is not None else Fraction(1)
        exp_txt = m.group("exp1") or m.group("exp2")
        if var is None:
            exponent = 0
        elif exp_txt is None:
            exponent = 1
        else:
            exponent = int(exp_txt)
        terms.append((exponent, factor * coeff))
        pos = m.end()
        first = False
    return terms


def parse_poly(text: str) -> LaurentPoly:
    """Parse the +/- joined `c*t^e` text form, e.g. '-t^-2+3t^-1-3+3t-t^2'."""
    terms = _parse_terms(text)
    out: list[tuple[int, int]] = []
    for e, c in terms:
        if c.denominator != 1:
            raise DomainError(f"non-integer coefficient in {text!r}")
        out.append((e, int(c)))
    return LaurentPoly(out)


def format_poly(d) -> str:
    """Render terms in ascending exponent order; inverse of parse_poly."""
    if not d.terms:
        return "0"
    parts: list[str] = []
    for e, c in d.terms:
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = str(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def format_xpoly(q: Iterable[int]) -> str:
    """Render an ascending coefficient tuple as a polynomial in x, highest power first."""
    coeffs = list(q)
    if not any(coeffs):
        return "0"
    parts: list[str] = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = str(mag)
        else:
            var = "x" if e == 1 else f"x^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)
