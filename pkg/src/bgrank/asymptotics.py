"""Floating-point asymptotics for the rank statistics.

Covers values of the Lerch sum Phi(z,2,1) on the unit circle, the leading
singular form of the q-Pochhammer factor near q = 1, circle-method
coefficient expansions in Wright's normal form z^B e^(A/z), the closed-form
leading main term for the rank counts, and numeric checks that the
near-(+/-1) arcs dominate sampled off-axis points.

Everything here works in 64-bit binary floating point; the exact-arithmetic
counterparts live in the series module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .partitions import bg_core_size

_UNIT_TOL = 1e-12


def _require_unit(z: complex) -> complex:
    z = complex(z)
    r = abs(z)
    if abs(r - 1.0) > _UNIT_TOL:
        raise ValueError(f"|z| must equal 1 (got {r!r})")
    return z / r


def lerch_phi_unit(z: complex, tol: float = 1e-12) -> complex:
    """Sum_{n>=0} z^n / (n+1)^2 for |z| = 1, to absolute accuracy ~tol.

    Partial sum with a rigorously bounded tail.  At z = 1 the tail is the
    trigamma asymptotic series; elsewhere one summation-by-parts step leaves
    a remainder below 2*(a_K - a_{K+1})/|1-z|^2, which fixes the cutoff.
    Accuracy bottoms out near accumulated double rounding (~1e-14).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = _require_unit(z)
    if abs(z - 1.0) <= _UNIT_TOL:
        m_terms = max(100_000, int(2.0 / tol ** (1.0 / 5)))
        idx = np.arange(1, m_terms + 2, dtype=np.float64)
        s = float(np.sum(1.0 / (idx * idx)))
        k = float(m_terms + 2)
        tail = 1 / k + 1 / (2 * k * k) + 1 / (6 * k**3) - 1 / (30 * k**5)
        return complex(s + tail, 0.0)
    gap = abs(1.0 - z)
    m_terms = int((4.0 / (tol * gap * gap)) ** (1.0 / 3)) + 8
    if m_terms > 50_000_000:
        raise ValueError("z too close to 1 for the requested tolerance")
    theta = math.atan2(z.imag, z.real)
    n = np.arange(0, m_terms + 1, dtype=np.float64)
    partial = complex(np.sum(np.exp(1j * theta * n) / ((n + 1.0) * (n + 1.0))))
    big_k = m_terms + 1
    a_k = 1.0 / ((big_k + 1) * (big_k + 1))
    partial += a_k * cmath.exp(1j * theta * big_k) / (1.0 - z)
    return partial


def dilog_unit(z: complex, tol: float = 1e-12) -> complex:
    """Li_2(z) = z * Phi(z, 2, 1) for |z| = 1."""
    z = _require_unit(z)
    return z * lerch_phi_unit(z, tol)


def dilog_identity_residual(zeta: complex, tol: float = 1e-12) -> float:
    """|Li2(z) + Li2(1/z) + pi^2/6 + log(-z)^2 / 2| at unit-modulus z != 1.

    The inversion identity makes this zero; the residual measures evaluation
    error.  z = 1 is rejected (both dilogarithms coincide and the identity
    degenerates at the log branch point).
    """
    zeta = _require_unit(zeta)
    if abs(zeta - 1.0) <= _UNIT_TOL:
        raise ValueError("zeta = 1 is excluded")
    lhs = dilog_unit(zeta, tol) + dilog_unit(1.0 / zeta, tol)
    log_neg = cmath.log(-zeta)
    rhs = -math.pi**2 / 6 - 0.5 * log_neg * log_neg
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# direct product evaluation and the major-arc form


def f1_truncated_product(zeta: complex, z: complex, cutoff: float = 1e-16) -> complex:
    """prod_{n>=1} (1 - zeta e^{-n z}); keeps factors while |e^{-nz}| > cutoff."""
    z = complex(z)
    if z.real <= 0:
        raise ValueError("Re z must be positive")
    n_factors = int(-math.log(cutoff) / z.real) + 1
    q = cmath.exp(-z)
    qn = 1.0 + 0j
    out = 1.0 + 0j
    for _ in range(n_factors):
        qn *= q
        out *= 1.0 - zeta * qn
    return out


def f1_major_arc(zeta: complex, z: complex, tol: float = 1e-12) -> complex:
    """Leading small-z form (1 - zeta)^(-1/2) exp(-zeta Phi(zeta,2,1) / z)."""
    zeta = _require_unit(zeta)
    if abs(zeta - 1.0) <= _UNIT_TOL:
        raise ValueError("zeta = 1 is excluded")
    phi = lerch_phi_unit(zeta, tol)
    return cmath.exp(-zeta * phi / z) / cmath.sqrt(1.0 - zeta)


def h_congruence_numeric(a: int, b: int, z: complex, j: int = 0, cutoff: float = 1e-16) -> complex:
    """Generating function of the congruence-class counts at q = e^{-z}.

    (1/b) [ q^s (q^2;q^2)^{-2} + sum_{k=1}^{b-1} w^{-ak} q^s / (F(w^k) F(w^-k)) ]
    with w = e^{2 pi i / b}, s the 2-core size for rank j, F the product above
    evaluated in the variable q^2.
    """
    if b < 2:
        raise ValueError("b must be >= 2")
    z = complex(z)
    q = cmath.exp(-z)
    qs = q ** bg_core_size(j)
    e2 = f1_truncated_product(1.0, 2 * z, cutoff)
    total = qs / (e2 * e2)
    for k in range(1, b):
        w = cmath.exp(2j * math.pi * k / b)
        fk = f1_truncated_product(w, 2 * z, cutoff)
        fkc = f1_truncated_product(w.conjugate(), 2 * z, cutoff)
        total += cmath.exp(-2j * math.pi * a * k / b) * qs / (fk * fkc)
    return total / b


# ---------------------------------------------------------------------------
# Wright-form coefficient asymptotics


@dataclass(frozen=True)
class WrightParams:
    """Singular expansion data: F(e^{-z}) ~ z^B e^{A/z} sum_j alphas[j] z^j,
    with arc_factor counting the dominant arcs that contribute equally."""

    A: float
    B: float
    alphas: tuple[complex, ...]
    arc_factor: int = 1

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError("A must be positive")
        if not self.alphas:
            raise ValueError("alphas must be non-empty")
        if self.arc_factor < 1:
            raise ValueError("arc_factor must be >= 1")


def wright_coefficient(j: int, r: int, A: float, B: float) -> float:
    """c_{j,r} of the expansion: (-1/(4 sqrt A))^r sqrt(A)^(j+B+1/2) / (2 sqrt pi)
    times Gamma(j+B+3/2+r) / (r! Gamma(j+B+3/2-r)).

    1/Gamma(non-positive integer) is taken as 0, so those c_{j,r} vanish.
    """
    if A <= 0:
        raise ValueError("A must be positive")
    if j < 0 or r < 0:
        raise ValueError("j and r must be >= 0")
    down = j + B + 1.5 - r
    if down <= 0 and abs(down - round(down)) < 1e-9:
        return 0.0
    up = j + B + 1.5 + r
    ratio = math.gamma(up) / (math.factorial(r) * math.gamma(down))
    return (-0.25 / math.sqrt(A)) ** r * math.sqrt(A) ** (j + B + 0.5) / (2.0 * math.sqrt(math.pi)) * ratio


def wright_p_r(params: WrightParams, r: int) -> complex:
    return sum(
        params.alphas[i] * wright_coefficient(i, r - i, params.A, params.B)
        for i in range(min(r, len(params.alphas) - 1) + 1)
    )


def wright_asymptotic(n: int, params: WrightParams, terms: int | None = None) -> float:
    """arc_factor * n^{(-2B-3)/4} e^{2 sqrt(A n)} sum_{r<terms} p_r n^{-r/2}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if terms is None:
        terms = len(params.alphas)
    if not 1 <= terms <= len(params.alphas):
        raise ValueError("terms must lie in [1, len(alphas)]")
    s = sum(wright_p_r(params, r) * n ** (-r / 2) for r in range(terms))
    envelope = params.arc_factor * n ** ((-2 * params.B - 3) / 4) * math.exp(2 * math.sqrt(params.A * n))
    return envelope * s.real


HR_PARAMS = WrightParams(A=math.pi**2 / 6, B=0.5, alphas=(1 / math.sqrt(2 * math.pi),), arc_factor=1)


def rank_count_params(b: int = 1) -> WrightParams:
    """Wright data for the rank counts: A = pi^2/6, B = 1, alpha_0 = 1/(b pi),
    two contributing arcs (q = 1 and q = -1)."""
    if b < 1:
        raise ValueError("b must be >= 1")
    return WrightParams(A=math.pi**2 / 6, B=1.0, alphas=(1 / (b * math.pi),), arc_factor=2)


# ---------------------------------------------------------------------------
# closed-form leading main term


_MAIN_CONST = 2.0 / (3.0**0.75 * 2.0**1.25)


@dataclass(frozen=True)
class MainTermResult:
    """value == constant * n**-1.25 * exp(exponent_arg), bit for bit."""

    value: float
    n: int
    constant: float
    exponent_arg: float


def main_term(n: int, b: int = 1, mode: str = "classes") -> MainTermResult:
    """Leading-order count 2 / (3^{3/4} (2n)^{5/4} b) * e^{pi sqrt(2n/3)}.

    mode "classes" divides among the b residue classes; mode "total" is the
    b = 1 specialization for the undivided rank count.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    if mode not in ("classes", "total"):
        raise ValueError("mode must be 'classes' or 'total'")
    if mode == "total":
        b = 1
    if b < 1:
        raise ValueError("b must be >= 1")
    exponent_arg = math.pi * math.sqrt(2.0 * n / 3.0)
    constant = _MAIN_CONST / b
    value = constant * n**-1.25 * math.exp(exponent_arg)
    return MainTermResult(value=value, n=n, constant=constant, exponent_arg=exponent_arg)


# ---------------------------------------------------------------------------
# arc dominance report


@dataclass(frozen=True)
class ArgInequalityCheck:
    k: int
    angle_over_pi: Fraction  # arg(-w^k)/pi reduced to (-1, 1]
    holds: bool


@dataclass(frozen=True)
class ArcSample:
    a: int
    slope: int
    x: float
    minor_mag: float
    major_mag: float
    ratio: float
    ok: bool


@dataclass(frozen=True)
class ArcDominanceReport:
    b: int
    j: int
    arg_checks: tuple[ArgInequalityCheck, ...]
    samples: tuple[ArcSample, ...]
    all_ok: bool


def minus_root_angle_over_pi(b: int, k: int) -> Fraction:
    """arg(-w^k)/pi for w = e^{2 pi i / b}, as an exact rational in (-1, 1]."""
    r = Fraction((b + 2 * k) % (2 * b), b)
    if r > 1:
        r -= 2
    return r


def arc_dominance_check(
    b: int,
    j: int = 0,
    slopes: tuple[int, ...] = (2, 5),
    xs: tuple[float, ...] = (0.05, 0.02),
) -> ArcDominanceReport:
    """Exact angle inequality per root plus sampled off-axis magnitudes.

    (i) verifies pi^2 - 3 arg(-w^k)^2 < 2 pi^2 in exact rational arithmetic
    (angles are rational multiples of pi);
    (ii) samples |H| at z = x(1 + i*slope) and compares against the on-axis
    point of the same |z|, for every residue class a.
    """
    if b < 2:
        raise ValueError("b must be >= 2")
    arg_checks = []
    for k in range(1, b):
        r = minus_root_angle_over_pi(b, k)
        holds = 1 - 3 * r * r < 2  # exact: divide the inequality by pi^2
        arg_checks.append(ArgInequalityCheck(k=k, angle_over_pi=r, holds=holds))
    samples = []
    for slope in slopes:
        for x in xs:
            z_minor = complex(x, slope * x)
            z_major = complex(x * math.hypot(1.0, slope), 0.0)
            for a in range(b):
                minor = abs(h_congruence_numeric(a, b, z_minor, j))
                major = abs(h_congruence_numeric(a, b, z_major, j))
                ratio = minor / major
                samples.append(
                    ArcSample(a=a, slope=slope, x=x, minor_mag=minor, major_mag=major, ratio=ratio, ok=ratio < 1.0)
                )
    all_ok = all(c.holds for c in arg_checks) and all(s.ok for s in samples)
    return ArcDominanceReport(b=b, j=j, arg_checks=tuple(arg_checks), samples=tuple(samples), all_ok=all_ok)
