"""Nonnegative-integer-coefficient polynomials and the sweep recurrences.

Coefficients are arbitrary-precision: the recurrence coefficients grow
multiplicatively with the path length, so fixed-width arithmetic is not safe.

A returned exponent c certifies three inequalities for *all* integers x >= 2.
The infinite quantifier is discharged by (a) an exhaustive check on 2..X0 and
(b) a dominance criterion: a polynomial r with nonnegative coefficients and
deg r < e satisfies r(x) <= x^e for all x >= X0 once
sum-of-coefficients(r) <= X0^(e - deg r), because r(x) <= S * x^(deg r).
For the inequality that subtracts (x-1)^c the left side is first lower-bounded
by x^(c-1), valid for x >= 2 since x^c - (x-1)^c >= x^(c-1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InputError

_X0_LIMIT = 10**7  # guard on the exhaustive range implied by the dominance bound


class Polynomial:
    """Univariate polynomial with nonnegative integer coefficients.

    Immutable; nondecreasing on the nonnegative integers by construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        trimmed = list(int(c) for c in coeffs)
        for c in trimmed:
            if c < 0:
                raise InputError("polynomial coefficients must be nonnegative")
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        self.coeffs = tuple(trimmed)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls((c,))

    @classmethod
    def identity(cls) -> "Polynomial":
        """The polynomial x."""
        return cls((0, 1))

    @classmethod
    def monomial(cls, coeff: int, power: int) -> "Polynomial":
        return cls((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        return self.eval(x)

    def eval(self, x: int) -> int:
        if x < 0:
            raise InputError("polynomials here are evaluated on nonnegative integers")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def coefficient_sum(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    def scale(self, factor: int) -> "Polynomial":
        if factor < 0:
            raise InputError("scale factor must be nonnegative")
        return Polynomial(tuple(factor * c for c in self.coeffs))

    def shift(self, power: int) -> "Polynomial":
        """Multiply by x^power."""
        if self.is_zero:
            return self
        return Polynomial((0,) * power + self.coeffs)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = Polynomial.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial.constant(c)
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for power, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            elif power == 1:
                terms.append("x" if c == 1 else f"{c}x")
            else:
                terms.append(f"x^{power}" if c == 1 else f"{c}x^{power}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(x(?:\^(\d+))?)?$")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the textual form produced by ``str()``: e.g. ``2x^2+10x^3``, ``x``, ``0``."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty polynomial text")
    coeffs: List[int] = []
    for term in s.split("+"):
        m = _TERM_RE.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise InputError(f"cannot parse polynomial term {term!r}")
        coeff = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None:
            power = 0
        elif m.group(3) is None:
            power = 1
        else:
            power = int(m.group(3))
        while len(coeffs) <= power:
            coeffs.append(0)
        coeffs[power] += coeff
    return Polynomial(coeffs)


@dataclass(frozen=True)
class SweepParameters:
    """Parameters of a sweep run: path length k, bristle count s, budget q, and
    the two nondecreasing polynomials controlling scatterings and nondomination."""

    k: int
    s: int
    q: int
    psi: Polynomial
    sigma: Polynomial

    def __post_init__(self):
        if self.k < 1 or self.s < 1 or self.q < 0:
            raise InputError("need k >= 1, s >= 1, q >= 0")


def sweep_polys(params: SweepParameters) -> Tuple[Tuple[Polynomial, ...], Tuple[Polynomial, ...]]:
    """The descending recurrence pair (zeta_1..zeta_k, delta_1..delta_k).

    zeta_k(x) = sigma(x) + x^s and delta_k = 0; then downward for i = k-1..1:
        zeta_i(x) = 2x*psi(x) + (1+q)x*zeta_{i+1}(x) + q*x^2*delta_{i+1}(x)
        delta_i(x) = x*zeta_{i+1}(x) + x^2*delta_{i+1}(x)
    Returned tuples are indexed so that result[0] is stage 1.
    """
    k, q = params.k, params.q
    x = Polynomial.identity()
    zetas: List[Polynomial] = [Polynomial.zero()] * k
    deltas: List[Polynomial] = [Polynomial.zero()] * k
    zetas[k - 1] = params.sigma + Polynomial.monomial(1, params.s)
    deltas[k - 1] = Polynomial.zero()
    two_x_psi = x.scale(2) * params.psi
    for i in range(k - 2, -1, -1):
        z_next, d_next = zetas[i + 1], deltas[i + 1]
        zetas[i] = two_x_psi + (x * z_next).scale(1 + q) + (x * x * d_next).scale(q)
        deltas[i] = x * z_next + x * x * d_next
    return tuple(zetas), tuple(deltas)


def inequality_right_sides(
    params: SweepParameters, zeta1: Polynomial, delta1: Polynomial
) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """The three right-hand sides the exponent c must dominate, as polynomials.

    The first is the remainder after moving (x-1)^c to the left:
        x^c - (x-1)^c >= zeta1(x) + x*delta1(x) + 2.
    The second and third are the full right sides
        (2s+1)(zeta1(x)+1) + (k-2)zeta1(x)   [regrouped with a nonnegative
        zeta1 multiplier 2s+k-1, valid since k >= 1]
        k*zeta1(x) + sigma(x).
    """
    k, s = params.k, params.s
    x = Polynomial.identity()
    r1 = zeta1 + x * delta1 + Polynomial.constant(2)
    r2 = zeta1.scale(2 * s + k - 1) + Polynomial.constant(2 * s + 1)
    r3 = zeta1.scale(k) + params.sigma
    return r1, r2, r3


def _dominance_x0(r: Polynomial, e: int) -> int:
    """Least X0 >= 2 with r(x) <= x^e for all x >= X0, or -1 if uncertifiable.

    Uses r(x) <= S*x^deg for x >= 1, so S <= X0^(e-deg) suffices.
    """
    if r.is_zero:
        return 2
    gap = e - r.degree
    if gap <= 0:
        return -1
    s = r.coefficient_sum()
    x0 = 2
    while x0**gap < s:
        x0 += 1
        if x0 > _X0_LIMIT:
            return -1
    return x0


def _holds_everywhere(c: int, r: Polynomial, subtract_prev_power: bool) -> bool:
    """Exact check that x^c >= [(x-1)^c +] r(x) for every integer x >= 2."""
    e = c - 1 if subtract_prev_power else c
    if e < 0:
        return r.is_zero
    x0 = _dominance_x0(r, e)
    if x0 < 0:
        return False
    for x in range(2, x0 + 1):
        lhs = x**c - ((x - 1) ** c if subtract_prev_power else 0)
        if lhs < r.eval(x):
            return False
    return True


def choose_c(params: SweepParameters, zeta1: Polynomial, delta1: Polynomial) -> int:
    """Least integer c >= 2s making all three sweep inequalities hold for x >= 2."""
    r1, r2, r3 = inequality_right_sides(params, zeta1, delta1)
    c = max(2 * params.s, 1)
    while True:
        if (
            _holds_everywhere(c, r1, True)
            and _holds_everywhere(c, r2, False)
            and _holds_everywhere(c, r3, False)
        ):
            return c
        c += 1


@dataclass(frozen=True)
class ExponentReport:
    """Audit record for one exponent certification."""

    c: int
    right_sides: Tuple[Polynomial, Polynomial, Polynomial]
    tail_starts: Tuple[int, int, int]  # X0 per inequality; finite check covers 2..X0
    checked_up_to: int

    @property
    def degree_margins(self) -> Tuple[int, int, int]:
        r1, r2, r3 = self.right_sides
        return (self.c - 1 - r1.degree, self.c - r2.degree, self.c - r3.degree)


def certify_exponent(
    params: SweepParameters,
    zeta1: Polynomial,
    delta1: Polynomial,
    c: int,
    check_up_to: int = 10**4,
) -> ExponentReport:
    """Re-derive and exhaustively re-check the three inequalities for 2..check_up_to,
    plus the dominance tail.  Raises InputError if anything fails."""
    r1, r2, r3 = inequality_right_sides(params, zeta1, delta1)
    tails = []
    for r, diff in ((r1, True), (r2, False), (r3, False)):
        e = c - 1 if diff else c
        x0 = _dominance_x0(r, e)
        if x0 < 0:
            raise InputError(f"exponent {c} has no dominance tail for {r}")
        tails.append(x0)
        for x in range(2, max(x0, check_up_to) + 1):
            lhs = x**c - ((x - 1) ** c if diff else 0)
            if lhs < r.eval(x):
                raise InputError(f"inequality with right side {r} fails at x={x}")
    return ExponentReport(c, (r1, r2, r3), tuple(tails), check_up_to)
