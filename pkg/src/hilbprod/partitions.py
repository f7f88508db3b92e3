"""Integer partitions, the majorization order, and k-coloured partition counts.

Partitions are written with weakly increasing parts, ``n_1 <= ... <= n_r``.
Majorization follows the same convention: ``b`` majorizes ``a`` when every
prefix sum of ``a`` is at most the corresponding prefix sum of ``b``.  Note
this is the mirror image of the classical convention on decreasing tuples, so
comparisons here are implemented literally against the prefix-sum definition
on increasing tuples; e.g. (2,2) strictly majorizes (1,3).

``colored_count(k, n)`` is the coefficient of q^n in the infinite product
``prod_m (1 - q^m)^-k``, the number of partitions of n with parts in k colours
when k >= 1.  Negative and zero k are defined by the same series (the product
then has nonnegative exponents and the coefficients may be negative), which is
what lets Euler characteristics chi(S) <= 0 flow through the same identity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .errors import UsageError
from .series import Exponent, binomial_factor, indexed_product

__all__ = [
    "Partition",
    "Majorization",
    "enumerate_partitions",
    "partitions_by_length",
    "majorizes",
    "colored_count",
    "colored_count_tuple",
    "brute_force_colored",
    "BRUTE_FORCE_BOUND",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A partition of a positive integer, parts weakly increasing."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        for p in self.parts:
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be positive integers, got {self.parts}")
        if any(a > b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must be weakly increasing, got {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from parts given in any order (canonicalized to increasing)."""
        return cls(tuple(sorted(parts)))

    @classmethod
    def parse(cls, text: str) -> tuple["Partition", bool]:
        """Parse a comma-separated literal like ``"1,3"`` (any order).

        Returns the canonical partition and whether the input was reordered.
        """
        raw = [item.strip() for item in text.split(",") if item.strip()]
        if not raw:
            raise UsageError(f"empty partition literal: {text!r}")
        try:
            values = [int(item) for item in raw]
        except ValueError as exc:
            raise UsageError(f"invalid partition literal: {text!r}") from exc
        if any(v < 1 for v in values):
            raise UsageError(f"partition parts must be positive: {text!r}")
        ordered = sorted(values)
        return cls(tuple(ordered)), ordered != values

    def render(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __str__(self) -> str:
        return f"({self.render()})"


class Majorization(enum.Enum):
    """Outcome of comparing b against a in the majorization order."""

    STRICTLY_MAJORIZES = "strictly_majorizes"
    EQUAL = "equal"
    MAJORIZED_BY = "majorized_by"
    INCOMPARABLE = "incomparable"


def _ascending_partitions(n: int, min_part: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min_part, n + 1):
        for rest in _ascending_partitions(n - first, first):
            yield (first,) + rest


def enumerate_partitions(
    n: int,
    length_filter: int | None = None,
    *,
    allow_empty: bool = False,
) -> list[Partition]:
    """All partitions of ``n`` in ascending lexicographic order.

    ``length_filter`` keeps only partitions of exactly that length.  ``n = 0``
    is rejected unless ``allow_empty`` is set, in which case the single empty
    partition is returned (bypassing the nonempty invariant).
    """
    if n == 0:
        if not allow_empty:
            raise UsageError("n = 0 has no nonempty partition (pass allow_empty)")
        empty = object.__new__(Partition)
        object.__setattr__(empty, "parts", ())
        return [] if length_filter else [empty]
    if n < 0:
        raise UsageError(f"n must be nonnegative, got {n}")
    if length_filter is not None and not (1 <= length_filter <= n):
        raise UsageError(f"length filter {length_filter} out of range for n = {n}")
    result = []
    for parts in _ascending_partitions(n, 1):
        if length_filter is None or len(parts) == length_filter:
            result.append(Partition(parts))
    return result


def partitions_by_length(n: int) -> dict[int, list[Partition]]:
    """Partitions of ``n`` bucketed by length, each bucket in lexicographic order."""
    buckets: dict[int, list[Partition]] = {}
    for p in enumerate_partitions(n):
        buckets.setdefault(p.length, []).append(p)
    return buckets


def majorizes(b: Partition, a: Partition) -> Majorization:
    """Compare ``b`` against ``a`` under the increasing-tuple prefix-sum order.

    Defined only for partitions of the same integer and the same length.
    """
    if a.n != b.n:
        raise UsageError(
            f"majorization needs partitions of the same integer: {a.n} vs {b.n}"
        )
    if a.length != b.length:
        raise UsageError(
            f"majorization needs partitions of the same length: "
            f"{a.length} vs {b.length}"
        )
    if a.parts == b.parts:
        return Majorization.EQUAL
    b_ge_a = True  # prefix sums of a <= prefix sums of b throughout
    a_ge_b = True
    sum_a = sum_b = 0
    for pa, pb in zip(a.parts[:-1], b.parts[:-1]):
        sum_a += pa
        sum_b += pb
        if sum_a > sum_b:
            b_ge_a = False
        if sum_b > sum_a:
            a_ge_b = False
    if b_ge_a:
        return Majorization.STRICTLY_MAJORIZES
    if a_ge_b:
        return Majorization.MAJORIZED_BY
    return Majorization.INCOMPARABLE


# -- k-coloured partition counts ---------------------------------------------

# table cache per colour count k: list of coefficients up to the largest
# truncation requested so far.  Population is idempotent, so concurrent
# readers under the GIL are safe.
_COLOR_TABLES: dict[int, list[int]] = {}


def _colored_table(k: int, n_max: int) -> list[int]:
    table = _COLOR_TABLES.get(k)
    if table is None or len(table) <= n_max:
        series = indexed_product(
            lambda m: binomial_factor(Exponent(m), -1, -k, n_max, 0),
            n_max,
            0,
        )
        table = [series.coeff(Exponent(i)) for i in range(n_max + 1)]
        _COLOR_TABLES[k] = table
    return table


def colored_count(k: int, n: int) -> int:
    """Coefficient of q^n in ``prod_m (1 - q^m)^-k``, exact.

    For k >= 1 this counts the k-coloured partitions of n; k <= 0 is defined
    by the same series and may give zero or negative values.
    """
    if n < 0:
        raise UsageError(f"n must be nonnegative, got {n}")
    return _colored_table(k, n)[n]


def colored_count_tuple(k: int, a: Partition) -> int:
    """Product of ``colored_count(k, part)`` over the parts of ``a``."""
    result = 1
    for part in a.parts:
        result *= colored_count(k, part)
    return result


BRUTE_FORCE_BOUND = 12


def brute_force_colored(k: int, n: int, *, bound: int = BRUTE_FORCE_BOUND) -> int:
    """Count k-coloured partitions of n by direct multiset enumeration.

    Enumerates multisets of (part, colour) pairs whose parts sum to n, one
    candidate at a time, without any series expansion; this is the
    independent oracle for ``colored_count``.  Exponential, hence the bound
    on n.
    """
    if k < 1:
        raise UsageError(f"brute-force oracle needs k >= 1, got {k}")
    if n < 0:
        raise UsageError(f"n must be nonnegative, got {n}")
    if n > bound:
        raise UsageError(
            f"n = {n} exceeds the brute-force bound {bound} (oracle is exponential)"
        )
    if n == 0:
        return 1
    # items in ascending part order so the scan can stop early
    items = [(part, colour) for part in range(1, n + 1) for colour in range(k)]

    def count_from(i: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for j in range(i, len(items)):
            part = items[j][0]
            if part > remaining:
                break
            # item j may repeat, so recurse at j, not j + 1
            total += count_from(j, remaining - part)
        return total

    return count_from(0, n)
