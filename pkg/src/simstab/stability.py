"""Exact stability tests for continuous and discrete polynomials.

Hurwitz stability means all roots in the open left half-plane.  Schur
stability follows the convention used throughout: all roots strictly
OUTSIDE the closed unit disk (denominators of stable discrete-time
transfer functions).  The trichotomy Stable/Marginal/Unstable is decided
with exact rational arithmetic only:

* a fraction-free integer Routh table settles the strict cases in O(n^2);
* singular tables fall back to an exact boundary analysis (gcd of the
  even/odd parts plus Sturm counts, then deflation of the +/- symmetric
  factor) that separates Marginal from Unstable.

Interval variants give sound Proved/Disproved/Unknown verdicts for
coefficient boxes and exist purely to prune synthesis searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .algebra import (
    Interval,
    IntervalPoly,
    Poly,
    TransferFunction,
    Domain,
    mobius_substitute,
    poly_divmod,
    poly_exact_div,
    poly_gcd,
)

LEMMA3_RATIO = Fraction(4655, 10000)


class Status(Enum):
    STABLE = "stable"
    MARGINAL = "marginal"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {"status": self.status.value, "witness": self.witness}

    @classmethod
    def from_json(cls, obj: dict) -> "StabilityVerdict":
        return cls(Status(obj["status"]), obj.get("witness"))


class IntervalProof(Enum):
    PROVED = "proved"
    DISPROVED = "disproved"
    UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# Integer Routh table
# ---------------------------------------------------------------------------

def _integer_descending(p: Poly) -> list[int]:
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return [int(c * scale) for c in reversed(p.coeffs)]


def _routh_first_column(p: Poly) -> tuple[bool, int]:
    """(regular, rhp_count) for deg >= 1.

    Fraction-free rows: each stored row is a positive integer multiple of
    the true Routh row, so first-column signs are exact.  regular=False
    means a zero pivot or zero row appeared (not strictly Hurwitz; the
    count is then meaningless).
    """
    desc = _integer_descending(p)
    prev = desc[0::2]
    cur = desc[1::2]
    first = [prev[0]]
    n = len(desc) - 1
    for _ in range(n):
        pivot = cur[0] if cur else 0
        if pivot == 0:
            return False, 0
        first.append(pivot)
        if len(first) == n + 1:
            break
        new = []
        for j in range(len(prev) - 1):
            c_next = cur[j + 1] if j + 1 < len(cur) else 0
            new.append(pivot * prev[j + 1] - prev[0] * c_next)
        if pivot < 0:
            new = [-x for x in new]
        g = 0
        for x in new:
            g = math.gcd(g, abs(x))
        if g > 1:
            new = [x // g for x in new]
        prev, cur = cur, new
    changes = 0
    for a, b in zip(first, first[1:]):
        if (a > 0) != (b > 0):
            changes += 1
    return True, changes


def _strictly_hurwitz(p: Poly) -> bool:
    if p.degree <= 0:
        return not p.is_zero
    q = p if p.leading > 0 else -p
    regular, changes = _routh_first_column(q)
    return regular and changes == 0


# ---------------------------------------------------------------------------
# Sturm counting and boundary structure
# ---------------------------------------------------------------------------

def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero:
            break
        chain.append(-r)
    return [q for q in chain if not q.is_zero]


def _sign_variations(values: list[int]) -> int:
    nz = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if (a > 0) != (b > 0))


def _sign_at(q: Poly, x: Optional[Fraction], positive_inf: bool) -> int:
    if x is not None:
        v = q.eval(x)
        return 0 if v == 0 else (1 if v > 0 else -1)
    lead = 1 if q.leading > 0 else -1
    if positive_inf:
        return lead
    return lead if q.degree % 2 == 0 else -lead


def sturm_real_roots(p: Poly, lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
    """Distinct real roots of p in (lo, hi]; None endpoints mean -/+ infinity."""
    if p.degree < 1:
        return 0
    chain = _sturm_chain(p)
    v_lo = _sign_variations([_sign_at(q, lo, positive_inf=False) for q in chain])
    v_hi = _sign_variations([_sign_at(q, hi, positive_inf=True) for q in chain])
    return v_lo - v_hi


def _even_odd_in_x(p: Poly) -> tuple[Poly, Poly]:
    """E~, O~ with p(s) = E~(s^2) + s*O~(s^2)."""
    return Poly(tuple(p.coeffs[0::2])), Poly(tuple(p.coeffs[1::2]))


def _axis_root_exists(p: Poly) -> bool:
    if p[0] == 0:
        return True
    e, o = _even_odd_in_x(p)
    g = poly_gcd(e, o)
    if g.degree < 1:
        return False
    # g(0) != 0 because g divides E~ and E~(0) = a_0 != 0
    return sturm_real_roots(g, None, Fraction(0)) > 0


def _all_roots_real_negative(e: Poly) -> bool:
    if e.degree <= 0:
        return True
    g = poly_gcd(e, e.derivative())
    sf = poly_exact_div(e, g) if g.degree >= 1 else e
    if sf.eval(0) == 0:
        return False
    return sturm_real_roots(sf, None, Fraction(0)) == sf.degree


def _classify_not_strict(p: Poly) -> StabilityVerdict:
    """Exact Marginal/Unstable split for a normalized p known not Hurwitz."""
    if not _axis_root_exists(p):
        return StabilityVerdict(Status.UNSTABLE, witness="open right half-plane root")
    # Symmetric factor c carries every +/- paired root; p/c is axis-free.
    c = poly_gcd(p, p.compose_neg())
    r = poly_exact_div(p, c)
    k = next(i for i, cf in enumerate(c.coeffs) if cf != 0)
    w = Poly(c.coeffs[k:])
    if any(w.coeffs[i] != 0 for i in range(1, len(w.coeffs), 2)):
        raise AssertionError("symmetric factor is not parity-symmetric")
    e = Poly(w.coeffs[0::2])  # c = s^k * e(s^2)
    if not _all_roots_real_negative(e):
        return StabilityVerdict(
            Status.UNSTABLE, witness="symmetric root pair off the imaginary axis")
    if r.degree >= 1 and not _strictly_hurwitz(r):
        return StabilityVerdict(
            Status.UNSTABLE, witness="right half-plane root besides boundary roots")
    witness = "root at origin" if k >= 1 else "imaginary-axis root pair"
    return StabilityVerdict(Status.MARGINAL, witness=witness)


# ---------------------------------------------------------------------------
# Public stability tests
# ---------------------------------------------------------------------------

def is_hurwitz(p: Poly) -> StabilityVerdict:
    """Exact trichotomy for continuous-time stability (open left half-plane)."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no stability verdict")
    if p.degree == 0:
        return StabilityVerdict(Status.STABLE)
    q = p if p.leading > 0 else -p
    regular, changes = _routh_first_column(q)
    if regular:
        if changes == 0:
            return StabilityVerdict(Status.STABLE)
        return StabilityVerdict(
            Status.UNSTABLE, witness=f"{changes} root(s) in the open right half-plane")
    return _classify_not_strict(q)


def is_schur(p: Poly) -> StabilityVerdict:
    """Exact trichotomy with Stable = all roots strictly outside cl(D).

    Conjugates the problem to a Hurwitz test through z = (s-1)/(s+1); a
    root at z = 1 (degree drop under the map) is split off exactly first.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no stability verdict")
    if p.degree == 0:
        return StabilityVerdict(Status.STABLE)
    q = p
    at_one = 0
    z_minus_1 = Poly.of(-1, 1)
    while q.degree >= 1 and q.eval(1) == 0:
        q = poly_exact_div(q, z_minus_1)
        at_one += 1
    if q.degree <= 0:
        return StabilityVerdict(Status.MARGINAL, witness="root at z=1")
    image = mobius_substitute(q, 1, -1, 1, 1)   # q((s-1)/(s+1)) cleared by (s+1)^deg
    v = is_hurwitz(image)
    if v.status == Status.UNSTABLE:
        return StabilityVerdict(Status.UNSTABLE, witness="root inside the closed unit disk")
    if v.status == Status.MARGINAL or at_one > 0:
        return StabilityVerdict(
            Status.MARGINAL,
            witness="root at z=1" if at_one > 0 else "root on the unit circle")
    return StabilityVerdict(Status.STABLE)


def is_unit(c: TransferFunction) -> bool:
    """True iff numerator and denominator are both Schur stable (bistable)."""
    if c.domain is not Domain.DISCRETE:
        raise ValueError("unit controllers are a discrete-domain notion")
    return (is_schur(c.num).status is Status.STABLE
            and is_schur(c.den).status is Status.STABLE)


def lemma3_sufficient(p: Poly) -> bool:
    """Fast sufficient Hurwitz test: positive coefficients with
    a_{i-1}*a_{i+2} <= 0.4655*a_i*a_{i+1} for i = 1..n-2 (exact ratio 4655/10000).
    """
    n = p.degree
    if n < 3:
        raise ValueError("the sufficient condition needs degree >= 3")
    if any(c <= 0 for c in p.coeffs):
        return False
    for i in range(1, n - 1):
        if p[i - 1] * p[i + 2] > LEMMA3_RATIO * p[i] * p[i + 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# Hurwitz minors
# ---------------------------------------------------------------------------

def hurwitz_matrix(p: Poly) -> list[list[Fraction]]:
    n = p.degree
    return [[p[n - 1 + i - 2 * j] for j in range(n)] for i in range(n)]


def _det_gaussian(rows: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in rows]
    k = len(m)
    det = Fraction(1)
    for col in range(k):
        pivot_row = next((r for r in range(col, k) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            det = -det
        pivot = m[col][col]
        det *= pivot
        for r in range(col + 1, k):
            if m[r][col] == 0:
                continue
            factor = m[r][col] / pivot
            for c in range(col, k):
                m[r][c] -= factor * m[col][c]
    return det


def hurwitz_minors(p: Poly) -> list[Fraction]:
    """Leading principal minors D_1..D_n of the Hurwitz matrix, exact."""
    if p.is_zero or p.degree < 1:
        raise ValueError("Hurwitz minors need degree >= 1 (use is_hurwitz for constants)")
    h = hurwitz_matrix(p)
    return [_det_gaussian([row[:k] for row in h[:k]]) for k in range(1, p.degree + 1)]


# ---------------------------------------------------------------------------
# Interval variants (search pruning)
# ---------------------------------------------------------------------------

def _interval_det(rows: list[list[Interval]]) -> Interval:
    k = len(rows)
    if k == 0:
        return Interval.point(1.0)
    cache: dict[tuple[int, int], Interval] = {}

    def rec(col: int, rows_mask: int) -> Interval:
        if col == k:
            return Interval.point(1.0)
        key = (col, rows_mask)
        hit = cache.get(key)
        if hit is not None:
            return hit
        acc = Interval.point(0.0)
        sign_idx = 0
        for r in range(k):
            bit = 1 << r
            if not rows_mask & bit:
                continue
            entry = rows[r][col]
            if not (entry.lo == 0.0 and entry.hi == 0.0):
                sub = rec(col + 1, rows_mask & ~bit)
                term = entry * sub
                acc = acc + (term if sign_idx % 2 == 0 else -term)
            sign_idx += 1
        cache[key] = acc
        return acc

    return rec(0, (1 << k) - 1)


def _interval_hurwitz_matrix(coeffs: tuple[Interval, ...]) -> list[list[Interval]]:
    n = len(coeffs) - 1
    zero = Interval.point(0.0)

    def at(idx: int) -> Interval:
        return coeffs[idx] if 0 <= idx <= n else zero

    return [[at(n - 1 + i - 2 * j) for j in range(n)] for i in range(n)]


def _interval_lemma3(coeffs: tuple[Interval, ...]) -> bool:
    # Exact endpoint comparison: float endpoints are exact rationals.
    n = len(coeffs) - 1
    ratio = LEMMA3_RATIO
    for i in range(1, n - 1):
        lhs = Fraction(coeffs[i - 1].hi) * Fraction(coeffs[i + 2].hi)
        rhs = ratio * Fraction(coeffs[i].lo) * Fraction(coeffs[i + 1].lo)
        if lhs > rhs:
            return False
    return True


def interval_hurwitz(p: IntervalPoly) -> IntervalProof:
    """Sound Proved/Disproved/Unknown for every point polynomial in p.

    Disproved rests on necessary conditions only (forced sign violations,
    or a forced non-positive Hurwitz minor under forced-positive
    coefficients); Proved rests on the interval Lemma-3 inequality or
    strictly positive interval minors.
    """
    cs = p.coeffs
    if len(cs) == 0:
        return IntervalProof.DISPROVED  # the zero polynomial is never stable
    pos = [i for i, c in enumerate(cs) if c.lo > 0]
    neg = [i for i, c in enumerate(cs) if c.hi < 0]
    zero = [i for i, c in enumerate(cs) if c.lo == 0.0 and c.hi == 0.0]
    if pos and neg:
        return IntervalProof.DISPROVED
    forced = pos + neg
    if forced and zero:
        top = max(forced)
        if any(i < top for i in zero):
            return IntervalProof.DISPROVED
    if neg and len(neg) == len(cs):
        return interval_hurwitz(IntervalPoly(tuple(-c for c in cs)))
    if pos and len(pos) == len(cs):
        n = len(cs) - 1
        if n <= 2:
            return IntervalProof.PROVED
        if _interval_lemma3(cs):
            return IntervalProof.PROVED
        rows = _interval_hurwitz_matrix(cs)
        all_pos = True
        for k in range(2, n + 1):
            det = _interval_det([row[:k] for row in rows[:k]])
            if det.hi <= 0:
                return IntervalProof.DISPROVED
            if det.lo <= 0:
                all_pos = False
        if all_pos:
            return IntervalProof.PROVED
    return IntervalProof.UNKNOWN
