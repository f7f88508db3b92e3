"""Exact truncated power series over Python integers.

A series lives in Z[[t]] truncated at a fixed order in t, optionally with one
auxiliary variable (z, tracking cohomological degree) or two (x and y,
tracking Hodge bidegree).  Auxiliary degrees are not truncated: every factor
we ever expand couples its auxiliary degree to its t-degree, so only finitely
many terms survive the t-truncation.

Coefficients are arbitrary-precision signed integers; there is no floating
point anywhere.  Series are immutable and canonical (no zero coefficients, no
terms beyond the truncation order), so equality is plain structural equality
and values can be shared freely across threads.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Iterator, NamedTuple

__all__ = [
    "Exponent",
    "TruncatedSeries",
    "constant_one",
    "mul",
    "binomial_factor",
    "indexed_product",
    "aux_variable_names",
]


class Exponent(NamedTuple):
    """Monomial exponent: degree in t plus a short vector of auxiliary degrees."""

    t_deg: int
    aux_degs: tuple[int, ...] = ()


_AUX_NAMES = {0: (), 1: ("z",), 2: ("x", "y")}


def aux_variable_names(aux_count: int) -> tuple[str, ...]:
    """Variable names used in the dump format for a given auxiliary count."""
    return _AUX_NAMES[aux_count]


class TruncatedSeries:
    """Immutable truncated series with big-integer coefficients.

    ``terms`` maps ``(t_deg, aux_degs)`` to a nonzero integer coefficient.
    Two series are equal iff truncation, aux_count and the term map agree.
    """

    __slots__ = ("truncation", "aux_count", "_terms")

    def __init__(
        self,
        truncation: int,
        aux_count: int,
        terms: dict[tuple[int, tuple[int, ...]], int] | None = None,
    ) -> None:
        if truncation < 0:
            raise ValueError(f"truncation must be nonnegative, got {truncation}")
        if aux_count not in (0, 1, 2):
            raise ValueError(f"aux_count must be 0, 1 or 2, got {aux_count}")
        clean: dict[tuple[int, tuple[int, ...]], int] = {}
        if terms:
            for (t_deg, aux), coeff in terms.items():
                if coeff == 0 or t_deg > truncation:
                    continue
                if t_deg < 0 or any(d < 0 for d in aux):
                    raise ValueError(f"negative exponent in term {(t_deg, aux)}")
                if len(aux) != aux_count:
                    raise ValueError(
                        f"term {(t_deg, aux)} has {len(aux)} auxiliary degrees, "
                        f"series declares {aux_count}"
                    )
                clean[(t_deg, tuple(aux))] = coeff
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "aux_count", aux_count)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TruncatedSeries is immutable")

    # -- inspection ---------------------------------------------------------

    def coeff(self, e: Exponent) -> int:
        """Coefficient at ``e``; zero if absent.

        Asking beyond the truncation order is an error: a truncated-away
        coefficient is unknown, not zero.
        """
        if len(e.aux_degs) != self.aux_count:
            raise ValueError(
                f"exponent has {len(e.aux_degs)} auxiliary degrees, "
                f"series declares {self.aux_count}"
            )
        if e.t_deg > self.truncation:
            raise ValueError(
                f"t-degree {e.t_deg} exceeds truncation order {self.truncation}"
            )
        return self._terms.get((e.t_deg, tuple(e.aux_degs)), 0)

    def terms(self) -> Iterator[tuple[Exponent, int]]:
        """Terms in deterministic order (sorted by t-degree, then aux degrees)."""
        for key in sorted(self._terms):
            yield Exponent(key[0], key[1]), self._terms[key]

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and self.aux_count == other.aux_count
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.truncation, self.aux_count, frozenset(self._terms.items())))

    def dump(self) -> str:
        """Debug dump, one term per line: ``t^a z^b : coeff`` (sorted)."""
        names = _AUX_NAMES[self.aux_count]
        lines = []
        for exp, coeff in self.terms():
            monomial = " ".join(
                [f"t^{exp.t_deg}"] + [f"{n}^{d}" for n, d in zip(names, exp.aux_degs)]
            )
            lines.append(f"{monomial} : {coeff}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return (
            f"TruncatedSeries(truncation={self.truncation}, "
            f"aux_count={self.aux_count}, nterms={len(self._terms)})"
        )

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            raise ValueError("negative powers are not defined on truncated series")
        result = constant_one(self.truncation, self.aux_count)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result


def constant_one(truncation: int, aux_count: int) -> TruncatedSeries:
    """The multiplicative identity in the given series context."""
    zero = (0, (0,) * aux_count)
    return TruncatedSeries(truncation, aux_count, {zero: 1})


def mul(
    a: TruncatedSeries,
    b: TruncatedSeries,
    *,
    aux_cap: int | None = None,
) -> TruncatedSeries:
    """Convolution product; terms beyond the t-truncation are discarded.

    ``aux_cap`` additionally discards product terms whose total auxiliary
    degree exceeds the cap.  All expanded factors have nonnegative exponents,
    so degrees only add and the cap is exact for coefficients of auxiliary
    degree <= cap.
    """
    if a.truncation != b.truncation:
        raise ValueError(
            f"truncation mismatch: {a.truncation} vs {b.truncation}"
        )
    if a.aux_count != b.aux_count:
        raise ValueError(f"aux_count mismatch: {a.aux_count} vs {b.aux_count}")
    trunc = a.truncation
    out: dict[tuple[int, tuple[int, ...]], int] = {}
    # iterate the smaller operand on the outside
    small, large = (a._terms, b._terms) if len(a) <= len(b) else (b._terms, a._terms)
    for (t1, aux1), c1 in small.items():
        for (t2, aux2), c2 in large.items():
            t_deg = t1 + t2
            if t_deg > trunc:
                continue
            aux = tuple(x + y for x, y in zip(aux1, aux2))
            if aux_cap is not None and sum(aux) > aux_cap:
                continue
            key = (t_deg, aux)
            c = out.get(key, 0) + c1 * c2
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return TruncatedSeries(trunc, a.aux_count, out)


def binomial_factor(
    monomial: Exponent,
    sign: int,
    exponent: int,
    truncation: int,
    aux_count: int,
    *,
    aux_cap: int | None = None,
) -> TruncatedSeries:
    """Expansion of ``(1 + sign * M)^exponent`` for a monomial ``M``.

    ``M`` must have t-degree >= 1 so that only finitely many powers survive
    the truncation.  Negative exponents use the generalized binomial series:
    ``(1 - M)^-e = sum_j C(e+j-1, j) M^j``.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if monomial.t_deg < 1:
        raise ValueError(
            "monomial must have t-degree >= 1 (otherwise the expansion does "
            "not terminate under truncation)"
        )
    if len(monomial.aux_degs) != aux_count:
        raise ValueError("monomial auxiliary degrees do not match aux_count")

    j_max = truncation // monomial.t_deg
    if aux_cap is not None:
        total_aux = sum(monomial.aux_degs)
        if total_aux > 0:
            j_max = min(j_max, aux_cap // total_aux)
    if exponent >= 0:
        j_max = min(j_max, exponent)

    terms: dict[tuple[int, tuple[int, ...]], int] = {}
    for j in range(j_max + 1):
        if exponent >= 0:
            c = comb(exponent, j) * sign**j
        else:
            c = comb(-exponent + j - 1, j) * (-sign) ** j
        if c == 0:
            continue
        key = (
            j * monomial.t_deg,
            tuple(j * d for d in monomial.aux_degs),
        )
        terms[key] = c
    return TruncatedSeries(truncation, aux_count, terms)


def indexed_product(
    factor_at: Callable[[int], TruncatedSeries],
    truncation: int,
    aux_count: int,
    *,
    aux_cap: int | None = None,
) -> TruncatedSeries:
    """Truncated product of ``factor_at(m)`` over ``m = 1..truncation``.

    Each factor must be normalized (constant term 1) and contribute nothing
    below t-degree ``m`` beyond that constant, so factors with m beyond the
    truncation order are identically 1 modulo the truncation and can be
    skipped.
    """
    result = constant_one(truncation, aux_count)
    zero = Exponent(0, (0,) * aux_count)
    for m in range(1, truncation + 1):
        factor = factor_at(m)
        if factor.truncation != truncation or factor.aux_count != aux_count:
            raise ValueError(f"factor at index {m} has a mismatched series context")
        if factor.coeff(zero) != 1:
            raise ValueError(
                f"factor at index {m} is not normalized (constant term != 1)"
            )
        for exp, _ in factor.terms():
            if 0 < exp.t_deg < m:
                raise ValueError(
                    f"factor at index {m} has a term of t-degree {exp.t_deg} < {m}"
                )
        result = mul(result, factor, aux_cap=aux_cap)
    return result
