"""Jensen polynomials of integer sequences, exact real-rootedness
certificates by Sturm chains over the rationals, Hermite polynomials, and
scanning checks of the order-2/order-3 inequalities and superadditivity.

Conventions (fixed here, documented once):

* degree-d Jensen coefficients are binom(d, k) * alpha(n + k), k = 0..d;
* Hermite normalization is fixed by sum_d H_d(X) t^d / d! = exp(Xt - t^2),
  so H_0 = 1, H_1 = X, H_2 = X^2 - 2, H_3 = X^3 - 6X, H_4 = X^4 - 12X^2 + 12;
* hyperbolic means every root real, counted with multiplicity.

Polynomials are coefficient lists, low degree first.  Root counting is exact
(integers/Fractions); the renormalized-limit comparisons are floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


# ---------------------------------------------------------------------------
# exact polynomial helpers (coefficients low -> high)


def _trim(cs: list[Fraction]) -> list[Fraction]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _degree(cs: Sequence[Fraction]) -> int:
    return len(cs) - 1


def _deriv(cs: Sequence[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(cs)][1:]


def _divmod_poly(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = list(num)
    den = list(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] / lead
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return q, _trim(num)


def _monic(cs: list[Fraction]) -> list[Fraction]:
    lead = cs[-1]
    return [c / lead for c in cs]


def _gcd_poly(pa: Sequence[Fraction], pb: Sequence[Fraction]) -> list[Fraction]:
    a = _trim(list(pa))
    b = _trim(list(pb))
    while b:
        _, r = _divmod_poly(a, b)
        a, b = b, r
        if b:
            b = _monic(b)
    return _monic(a) if a else a


def _to_fractions(coeffs: Sequence) -> list[Fraction]:
    return _trim([Fraction(c) for c in coeffs])


@dataclass(frozen=True)
class SturmChain:
    """p, p', then negated remainders; sign variations at -oo minus at +oo
    equals the number of distinct real roots."""

    chain: tuple[tuple[Fraction, ...], ...]

    def variations_at_infinity(self, sign: int) -> int:
        signs = []
        for poly in self.chain:
            lead = poly[-1]
            s = 1 if lead > 0 else -1
            if sign < 0 and _degree(poly) % 2:
                s = -s
            signs.append(s)
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    @property
    def distinct_real_roots(self) -> int:
        return self.variations_at_infinity(-1) - self.variations_at_infinity(+1)


def sturm_chain(coeffs: Sequence) -> SturmChain:
    p = _to_fractions(coeffs)
    if not p:
        raise ValueError("zero polynomial has no Sturm chain")
    chain = [p]
    if _degree(p) >= 1:
        chain.append(_trim(_deriv(p)))
    while len(chain) >= 2 and chain[-1] and _degree(chain[-1]) >= 1:
        _, r = _divmod_poly(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return SturmChain(tuple(tuple(c) for c in chain if c))


def real_root_count(coeffs: Sequence) -> int:
    """Number of distinct real roots, by exact Sturm sign variations."""
    p = _to_fractions(coeffs)
    if not p:
        raise ValueError("zero polynomial")
    if _degree(p) == 0:
        return 0
    return sturm_chain(p).distinct_real_roots


def _real_roots_with_multiplicity(p: list[Fraction]) -> int:
    if _degree(p) <= 0:
        return 0
    g = _gcd_poly(p, _deriv(p))
    if _degree(g) == 0:
        return sturm_chain(p).distinct_real_roots
    sf, rem = _divmod_poly(p, g)
    assert not rem, "gcd must divide the polynomial"
    return sturm_chain(sf).distinct_real_roots + _real_roots_with_multiplicity(g)


# ---------------------------------------------------------------------------
# Jensen polynomials


@dataclass(frozen=True)
class JensenPoly:
    """Degree-d polynomial with exact coefficients binom(d,k) * alpha(n+k)."""

    d: int
    n: int
    coeffs: tuple[int, ...]


def jensen_poly(seq: Sequence[int], d: int, n: int) -> JensenPoly:
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n + d >= len(seq):
        raise ValueError(f"sequence must be defined on [{n}, {n + d}]")
    coeffs = tuple(math.comb(d, k) * seq[n + k] for k in range(d + 1))
    return JensenPoly(d=d, n=n, coeffs=coeffs)


def is_hyperbolic(poly) -> bool:
    """True iff every root is real (counted with multiplicity); exact."""
    coeffs = poly.coeffs if isinstance(poly, JensenPoly) else poly
    p = _to_fractions(coeffs)
    if not p:
        raise ValueError("zero polynomial")
    return _real_roots_with_multiplicity(p) == _degree(p)


# ---------------------------------------------------------------------------
# renormalization toward the Hermite limit


@dataclass(frozen=True)
class RenormSeq:
    """Recentring pair: exponential rate A(n) and width delta(n) > 0."""

    A_of_n: float
    delta_of_n: float

    def __post_init__(self):
        if not self.delta_of_n > 0:
            raise ValueError("delta must be positive")


def renorm_sequences(n: int) -> RenormSeq:
    """Leading-order pair A(n) = pi sqrt(1/(6n)), delta(n)^2 = pi sqrt(2/3)/8 * n^{-3/2}.

    delta is the positive square root of the magnitude of the quadratic
    log-ratio coefficient.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = math.pi * math.sqrt(1.0 / (6 * n))
    delta = math.sqrt(math.pi * math.sqrt(2.0 / 3.0) / 8.0) * n**-0.75
    return RenormSeq(A_of_n=a, delta_of_n=delta)


def wright_renorm_pair(growth: float, power: float, m: int) -> RenormSeq:
    """Recentring pair for log alpha(m) ~ 2 sqrt(growth * m) + power * log m + C:
    first and (negated half) second log-derivatives at m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if growth <= 0:
        raise ValueError("growth must be positive")
    a = math.sqrt(growth / m) + power / m
    d2 = math.sqrt(growth) / (4.0 * m**1.5) + power / (2.0 * m * m)
    if d2 <= 0:
        raise ValueError("second-order coefficient is not positive at this m")
    return RenormSeq(A_of_n=a, delta_of_n=math.sqrt(d2))


def renorm_sequences_step2(n: int) -> RenormSeq:
    """Pair matched to reading a two-arc Wright-shaped count at every second
    argument: growth pi^2/3 and power -5/4 in the halved variable.

    Equivalently 2*A(2n) and 2*delta(2n) from renorm_sequences, with the
    exact 1/n correction coming from the n^{-5/4} prefactor folded in; the
    correction is what makes desk-scale Hermite convergence visible.
    """
    return wright_renorm_pair(math.pi**2 / 3.0, -1.25, n)


def renormalized_jensen(seq: Sequence[int], d: int, n: int, rs: RenormSeq) -> list[float]:
    """Coefficients (low -> high) of delta^{-d}/alpha(n) * J((delta X - 1)/e^A).

    The integer Jensen coefficients are divided by alpha(n) exactly and only
    then rounded; the composition itself is floating point.
    """
    jp = jensen_poly(seq, d, n)
    window = seq[n : n + d + 1]
    if any(v <= 0 for v in window):
        raise ValueError("sequence must be positive on [n, n+d]")
    alpha0 = seq[n]
    e_a = math.exp(rs.A_of_n)
    delta = rs.delta_of_n
    weights = [float(Fraction(c, alpha0)) * e_a**-k for k, c in enumerate(jp.coeffs)]
    out = []
    for i in range(d + 1):
        s = 0.0
        for k in range(i, d + 1):
            s += weights[k] * math.comb(k, i) * (-1) ** (k - i)
        out.append(s * delta ** (i - d))
    return out


def hermite(d: int) -> list[int]:
    """H_d in the exp(Xt - t^2) normalization: H_{m+1} = X H_m - 2m H_{m-1}."""
    if d < 0:
        raise ValueError("d must be >= 0")
    h_prev, h_cur = [1], [0, 1]
    if d == 0:
        return h_prev
    for m in range(1, d):
        nxt = [0] + h_cur
        for i, c in enumerate(h_prev):
            nxt[i] -= 2 * m * c
        h_prev, h_cur = h_cur, nxt
    return h_cur


def hermite_distance(coeffs: Sequence[float], d: int) -> float:
    """Coefficient-wise max distance to H_d (shorter vector padded with 0)."""
    target = hermite(d)
    width = max(len(coeffs), len(target))
    a = list(coeffs) + [0.0] * (width - len(coeffs))
    b = list(target) + [0] * (width - len(target))
    return max(abs(x - y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# inequality scans


@dataclass(frozen=True)
class TuranReport:
    """Exact scan of an inequality over an index window of a sequence."""

    order: str  # "2" | "3" | "convexity"
    lo: int
    hi: int
    holds: bool
    failures: tuple
    equalities: tuple
    first_failure: object = None


def turan_report(seq: Sequence[int], order, index_range: tuple[int, int]) -> TuranReport:
    """Scan the order-2 or order-3 inequality, or pairwise superadditivity.

    order 2 at m:  alpha(m)^2 >= alpha(m-1) alpha(m+1)        (m in [lo, hi])
    order 3 at m:  4 (a_{m+1}^2 - a_m a_{m+2})(a_{m+2}^2 - a_{m+1} a_{m+3})
                     >= (a_{m+1} a_{m+2} - a_m a_{m+3})^2
    convexity:     alpha(n1) alpha(n2) > alpha(n1 + n2), lo <= n1 <= n2 <= hi

    All comparisons are exact integer arithmetic.
    """
    order = str(order)
    lo, hi = index_range
    if lo > hi:
        raise ValueError("empty range")
    failures: list = []
    equalities: list = []
    if order == "2":
        if lo < 1 or hi + 1 >= len(seq):
            raise ValueError("order-2 scan needs indices [lo-1, hi+1] inside the sequence")
        for m in range(lo, hi + 1):
            lhs = seq[m] * seq[m]
            rhs = seq[m - 1] * seq[m + 1]
            if lhs < rhs:
                failures.append(m)
            elif lhs == rhs:
                equalities.append(m)
    elif order == "3":
        if lo < 0 or hi + 3 >= len(seq):
            raise ValueError("order-3 scan needs indices [lo, hi+3] inside the sequence")
        for m in range(lo, hi + 1):
            a0, a1, a2, a3 = seq[m], seq[m + 1], seq[m + 2], seq[m + 3]
            lhs = 4 * (a1 * a1 - a0 * a2) * (a2 * a2 - a1 * a3)
            rhs = (a1 * a2 - a0 * a3) ** 2
            if lhs < rhs:
                failures.append(m)
            elif lhs == rhs:
                equalities.append(m)
    elif order == "convexity":
        if lo < 0 or 2 * hi >= len(seq):
            raise ValueError("convexity scan needs indices up to 2*hi inside the sequence")
        for n1 in range(lo, hi + 1):
            for n2 in range(n1, hi + 1):
                lhs = seq[n1] * seq[n2]
                rhs = seq[n1 + n2]
                if lhs <= rhs:
                    failures.append((n1, n2))
                    if lhs == rhs:
                        equalities.append((n1, n2))
    else:
        raise ValueError("order must be 2, 3 or 'convexity'")
    return TuranReport(
        order=order,
        lo=lo,
        hi=hi,
        holds=not failures,
        failures=tuple(failures),
        equalities=tuple(equalities),
        first_failure=failures[0] if failures else None,
    )


def hyperbolicity_onset(seq: Sequence[int], d: int, hi: int, lo: int = 0) -> int | None:
    """Smallest m0 with J^{d,m} hyperbolic for every m in [m0, hi]; None if
    even m = hi fails.  Exact Sturm certificates throughout."""
    onset = None
    for m in range(lo, hi + 1):
        if is_hyperbolic(jensen_poly(seq, d, m)):
            if onset is None:
                onset = m
        else:
            onset = None
    return onset
