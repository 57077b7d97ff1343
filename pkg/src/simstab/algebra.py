"""Exact scalar/polynomial arithmetic and outward-rounded float intervals.

Coefficients are `fractions.Fraction` throughout: every operation on
rationals, polynomials and transfer functions is exact, and equality is
structural equality of normalized representations.  Floats appear only in
`Interval`, which over-approximates real arithmetic (one-ulp outward
widening after every operation) and is used for search pruning and
diagnostics, never for certification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]


class ZeroDenominatorError(ValueError):
    """Raised when a transfer function is built over a zero denominator."""


def rat(value: RationalLike) -> Fraction:
    """Coerce to an exact Fraction.

    Accepts Fractions, ints and strings ("p/q", "p", or a finite decimal
    such as "0.4655" or "1e-7").  Floats are rejected: converting binary
    floats silently would smuggle rounding error into exact paths.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


# ---------------------------------------------------------------------------
# Outward-rounded intervals
# ---------------------------------------------------------------------------

def _down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


@dataclass(frozen=True)
class Interval:
    """Closed float interval [lo, hi] with an outward-rounding contract.

    Every arithmetic operation returns an interval guaranteed to contain
    the exact real result for all choices of operands in the inputs.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoint is NaN")
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(float(x), float(x))

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Interval":
        f = float(q)
        if math.isinf(f):
            big = math.nextafter(math.inf, 0.0)
            return cls(big, math.inf) if f > 0 else cls(-math.inf, -big)
        exact = Fraction(f)
        lo = f if exact <= q else _down(f)
        hi = f if exact >= q else _up(f)
        return cls(lo, hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return self.lo + (self.hi - self.lo) / 2.0

    def mid_fraction(self) -> Fraction:
        # Dyadic midpoint; exact because float endpoints are dyadic.
        return (Fraction(self.lo) + Fraction(self.hi)) / 2

    def contains(self, q: Fraction) -> bool:
        if math.isinf(self.lo):
            lo_ok = True
        else:
            lo_ok = Fraction(self.lo) <= q
        if math.isinf(self.hi):
            hi_ok = True
        else:
            hi_ok = q <= Fraction(self.hi)
        return lo_ok and hi_ok

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __mul__(self, other: "Interval") -> "Interval":
        cands = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return Interval(_down(min(cands)), _up(max(cands)))

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial, ascending rational coefficients.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.  Instances are immutable and hashable.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [c if isinstance(c, Fraction) else rat(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, *coeffs: RationalLike) -> "Poly":
        return cls(tuple(rat(c) for c in coeffs))

    @classmethod
    def from_list(cls, coeffs: Iterable[RationalLike]) -> "Poly":
        return cls(tuple(rat(c) for c in coeffs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        # zero polynomial reports degree -1
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[k] + other[k] for k in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[k] - other[k] for k in range(n)))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    def scale(self, k: RationalLike) -> "Poly":
        kk = rat(k)
        return Poly(tuple(c * kk for c in self.coeffs))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.of(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k."""
        if self.is_zero:
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def eval(self, x: RationalLike) -> Fraction:
        xx = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * xx + c
        return acc

    def eval_complex(self, re: RationalLike, im: RationalLike) -> tuple[Fraction, Fraction]:
        """Exact Horner evaluation at the complex rational point re + im*i."""
        a, b = rat(re), rat(im)
        acc_re, acc_im = Fraction(0), Fraction(0)
        for c in reversed(self.coeffs):
            acc_re, acc_im = acc_re * a - acc_im * b + c, acc_re * b + acc_im * a
        return acc_re, acc_im

    def evalf(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(c * k for k, c in enumerate(self.coeffs) if k >= 1))

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.leading
        return self if lc == 1 else self.scale(Fraction(1) / lc)

    def compose_neg(self) -> "Poly":
        """p(-x)."""
        return Poly(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def render(self, var: str = "s") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                coeff = "" if mag == 1 else (f"{mag}" if mag.denominator == 1 else f"({mag})")
                term = f"{coeff}{var}" if k == 1 else f"{coeff}{var}^{k}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Exact euclidean division: a = q*b + r with deg r < deg b."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.degree < b.degree:
        return Poly(), a
    rem = list(a.coeffs)
    qlen = a.degree - b.degree + 1
    quo = [Fraction(0)] * qlen
    blc = b.leading
    for k in range(qlen - 1, -1, -1):
        c = rem[k + b.degree] / blc
        quo[k] = c
        if c != 0:
            for j, bj in enumerate(b.coeffs):
                rem[k + j] -= c * bj
    return Poly(tuple(quo)), Poly(tuple(rem[: b.degree]))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the euclidean algorithm; errors if both inputs are zero."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return a.monic()


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = poly_divmod(a, b)
    if not r.is_zero:
        raise ValueError("inexact polynomial division")
    return q


def mobius_substitute(p: Poly, a: RationalLike, b: RationalLike,
                      c: RationalLike, d: RationalLike) -> Poly:
    """Denominator-cleared Mobius substitution.

    Returns (c*x + d)^n * p((a*x + b)/(c*x + d)) with n = deg p, computed
    exactly.  The map must be nondegenerate (a*d - b*c != 0).
    """
    aa, bb, cc, dd = rat(a), rat(b), rat(c), rat(d)
    if aa * dd - bb * cc == 0:
        raise ValueError("degenerate Mobius map (ad - bc = 0)")
    if p.is_zero or p.degree == 0:
        return p
    n = p.degree
    num = Poly.of(bb, aa)   # a*x + b
    den = Poly.of(dd, cc)   # c*x + d
    # term_i = (a*x+b)^i (c*x+d)^(n-i), advanced by one exact multiply/divide.
    term = den ** n
    acc = term.scale(p[0]) if p[0] != 0 else Poly()
    for i in range(1, n + 1):
        term = poly_exact_div(term * num, den)
        if p[i] != 0:
            acc = acc + term.scale(p[i])
    return acc


# ---------------------------------------------------------------------------
# Transfer functions
# ---------------------------------------------------------------------------

class Domain(Enum):
    CONTINUOUS = "s"
    DISCRETE = "z"

    @classmethod
    def parse(cls, tag: str) -> "Domain":
        for dom in cls:
            if dom.value == tag:
                return dom
        raise ValueError(f"unknown domain tag {tag!r} (expected 's' or 'z')")

    @property
    def var(self) -> str:
        return self.value


@dataclass(frozen=True)
class TransferFunction:
    """Rational function in coprime reduced form with a domain tag.

    Construction normalizes: numerator and denominator are made coprime and
    the denominator monic, so structural equality coincides with equality
    of transfer functions.  The zero plant is 0/1.
    """

    num: Poly
    den: Poly
    domain: Domain

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if den.is_zero:
            raise ZeroDenominatorError("transfer function with zero denominator")
        if num.is_zero:
            num, den = Poly(), Poly.of(1)
        else:
            g = poly_gcd(num, den)
            if g.degree >= 1:
                num = poly_exact_div(num, g)
                den = poly_exact_div(den, g)
            lc = den.leading
            if lc != 1:
                inv = Fraction(1) / lc
                num = num.scale(inv)
                den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def constant(cls, k: RationalLike, domain: Domain) -> "TransferFunction":
        return cls(Poly.of(rat(k)), Poly.of(1), domain)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def degree(self) -> int:
        """Controller degree: max of numerator and denominator degrees."""
        return max(self.num.degree, self.den.degree)

    def scale(self, k: RationalLike) -> "TransferFunction":
        kk = rat(k)
        return TransferFunction(self.num.scale(kk), self.den, self.domain)

    def to_json(self) -> dict:
        return {
            "num": [str(c) for c in self.num.coeffs],
            "den": [str(c) for c in self.den.coeffs],
            "domain": self.domain.value,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TransferFunction":
        return cls(
            Poly.from_list(obj["num"]),
            Poly.from_list(obj["den"]),
            Domain.parse(obj["domain"]),
        )

    def __repr__(self) -> str:
        v = self.domain.var
        return f"({self.num.render(v)})/({self.den.render(v)})"


def poly_to_json(p: Poly) -> list[str]:
    return [str(c) for c in p.coeffs]


def poly_from_json(items: Sequence[str]) -> Poly:
    return Poly.from_list(items)


# ---------------------------------------------------------------------------
# Interval polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalPoly:
    """Polynomial with interval coefficients (ascending)."""

    coeffs: tuple[Interval, ...]

    @classmethod
    def from_poly(cls, p: Poly) -> "IntervalPoly":
        return cls(tuple(Interval.from_fraction(c) for c in p.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, x: Interval) -> Interval:
        acc = Interval.point(0.0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc
