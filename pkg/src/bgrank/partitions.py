"""Exact combinatorics of integer partitions: conjugation, hook lengths,
cores/quotients, and the two alternating-parity rank statistics.

Beta-set convention used by the core/quotient maps: a partition padded to
``s`` parts (``s`` a multiple of ``t``, zero parts allowed) is encoded as the
strictly decreasing set ``{part_i + s - i : 1 <= i <= s}``.  Residues mod
``t`` split the beta numbers into the ``t`` quotient components; component
``r`` collects the numbers congruent to ``r``.  Padding by further blocks of
``t`` zero parts leaves core, quotients and their labels unchanged, so the
map is well defined.  For ``t = 2`` this labeling gives the two partitions
of 2 the rank multiset ``{+1, -1}``, which is the normalization the series
module is calibrated against.
"""

from __future__ import annotations

import itertools
import operator
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers; () is the partition of 0."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(operator.index(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        for i, x in enumerate(parts):
            if x < 1:
                raise ValueError(f"parts must be positive integers, got {x}")
            if i and parts[i - 1] < x:
                raise ValueError(f"parts must be weakly decreasing: {parts}")

    @cached_property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


EMPTY = Partition(())


def staircase(k: int) -> Partition:
    """(k, k-1, ..., 1); these are exactly the 2-core partitions."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return Partition(tuple(range(k, 0, -1)))


def bg_core_size(j: int) -> int:
    """Size j(2j-1) of the 2-core forced by alternating-parity rank j."""
    return j * (2 * j - 1)


def conjugate(p: Partition) -> Partition:
    """Transpose of the Ferrers diagram: column lengths become parts."""
    parts = p.parts
    if not parts:
        return EMPTY
    cols = tuple(sum(1 for x in parts if x >= j) for j in range(1, parts[0] + 1))
    return Partition(cols)


@dataclass(frozen=True)
class HookTable:
    """Hook lengths h(k, j) = (row_k - j) + (col_j - k) + 1, one per node."""

    lengths: tuple[tuple[int, ...], ...]

    def flat(self) -> Iterator[int]:
        return itertools.chain.from_iterable(self.lengths)

    def any_divisible_by(self, t: int) -> bool:
        return any(h % t == 0 for h in self.flat())


def hook_lengths(p: Partition) -> HookTable:
    parts = p.parts
    conj = conjugate(p).parts
    rows = tuple(
        tuple(parts[k] - j + conj[j - 1] - k for j in range(1, parts[k] + 1))
        for k in range(len(parts))
    )
    # row index k above is 0-based, so (row_k - j) + (col_j - (k+1)) + 1 = parts[k] - j + conj[j-1] - k
    return HookTable(rows)


def is_t_core(p: Partition, t: int) -> bool:
    """True iff no hook length of p is divisible by t (t >= 2)."""
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    return not hook_lengths(p).any_divisible_by(t)


def beta_numbers(p: Partition, slots: int) -> list[int]:
    """First-column hook lengths of p padded to ``slots`` parts, largest first."""
    if slots < len(p.parts):
        raise ValueError("slots must cover every part")
    padded = p.parts + (0,) * (slots - len(p.parts))
    return [padded[i] + slots - 1 - i for i in range(slots)]


def _partition_from_beta(beta_desc: Sequence[int]) -> Partition:
    s = len(beta_desc)
    return Partition(tuple(b - (s - 1 - i) for i, b in enumerate(beta_desc) if b > s - 1 - i))


def littlewood_decompose(p: Partition, t: int) -> tuple[Partition, tuple[Partition, ...]]:
    """Split p into its t-core and t quotient components.

    Returns (core, (q_0, ..., q_{t-1})) with |p| = |core| + t * sum |q_r|.
    """
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    s = t * max(1, -(-len(p.parts) // t))
    by_class: list[list[int]] = [[] for _ in range(t)]
    for b in beta_numbers(p, s):
        by_class[b % t].append(b // t)
    quotients = []
    for r in range(t):
        ms = sorted(by_class[r], reverse=True)
        quotients.append(_partition_from_beta(ms))
    core_beta = sorted(
        (i * t + r for r in range(t) for i in range(len(by_class[r]))),
        reverse=True,
    )
    return _partition_from_beta(core_beta), tuple(quotients)


def littlewood_compose(core: Partition, quotients: Sequence[Partition], t: int) -> Partition:
    """Inverse of littlewood_decompose under the same beta-set convention."""
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    quotients = tuple(quotients)
    if len(quotients) != t:
        raise ValueError(f"expected {t} quotient components, got {len(quotients)}")
    if not is_t_core(core, t):
        raise ValueError("core argument is not a t-core")
    widest = max((len(q.parts) for q in quotients), default=0)
    s = t * (len(core.parts) + widest + 2)
    counts = [0] * t
    for b in beta_numbers(core, s):
        counts[b % t] += 1
    beta = []
    for r in range(t):
        for m in beta_numbers(quotients[r], counts[r]):
            beta.append(m * t + r)
    beta.sort(reverse=True)
    return _partition_from_beta(beta)


@dataclass(frozen=True)
class TwoQuotientDecomposition:
    core: Partition
    q0: Partition
    q1: Partition


def two_quotient(p: Partition) -> TwoQuotientDecomposition:
    core, (q0, q1) = littlewood_decompose(p, 2)
    return TwoQuotientDecomposition(core, q0, q1)


def bg_rank(p: Partition) -> int:
    """Alternating sum of part parities: +par(part_1) - par(part_2) + ..."""
    r = 0
    for i, x in enumerate(p.parts):
        if x % 2:
            r += 1 if i % 2 == 0 else -1
    return r


def two_quotient_rank(p: Partition) -> int:
    """Difference of part counts of the two quotient components, len(q0) - len(q1)."""
    d = two_quotient(p)
    return len(d.q0.parts) - len(d.q1.parts)


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """All partitions of n in descending lexicographic order, each exactly once."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def rec(remaining: int, cap: int, prefix: list[int]) -> Iterator[Partition]:
        if remaining == 0:
            yield Partition(tuple(prefix))
            return
        for first in range(min(remaining, cap), 0, -1):
            prefix.append(first)
            yield from rec(remaining - first, first, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def rank_census(n: int) -> Counter:
    """Counter keyed (bg_rank, two_quotient_rank) over all partitions of n.

    Brute-force ground truth for the generating-function tables; exponential
    in n, intended for n up to roughly 40.
    """
    census: Counter = Counter()
    for p in enumerate_partitions(n):
        census[(bg_rank(p), two_quotient_rank(p))] += 1
    return census
