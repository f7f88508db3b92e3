"""Betti, Hodge and Euler invariants of Hilbert schemes of points and their products.

Everything is read off infinite-product generating functions, truncated
exactly:

* the two-variable Betti product whose coefficient of ``z^k t^n`` is the k-th
  Betti number of the n-point Hilbert scheme of the surface (Goettsche's
  formula, driven by b0, b1, b2 of the surface);
* the one-variable series ``(1+xt)^h10 / ((1-t)(1-x^2 t)^h20)`` whose
  coefficient of ``x^p t^n`` is ``h^{p,0}`` of the n-point Hilbert scheme
  (connected surfaces only);
* the full two-variable Hodge product over the surface's Hodge diamond;
* the Euler product ``prod (1-q^m)^-chi``, i.e. chi-coloured partition counts.

Products of Hilbert schemes are handled through the Kuenneth rule: multiply
the factors' Poincare (or Hodge) polynomials.  Invariants that need Hodge
data refuse when h10/h20 are absent instead of inventing values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DataError, UsageError
from .partitions import Partition, colored_count, colored_count_tuple
from .series import (
    Exponent,
    TruncatedSeries,
    binomial_factor,
    constant_one,
    indexed_product,
    mul,
)
from .surfaces import SurfaceInvariants

__all__ = [
    "PoincarePolynomial",
    "HodgeDiamond",
    "poincare_series",
    "euler_series",
    "hodge_p0_series",
    "betti_closed",
    "betti_from_series",
    "poincare_polynomial",
    "poincare_polynomial_tuple",
    "hodge_p0",
    "hodge_p0_tuple",
    "hodge_p0_tuple_vector",
    "hodge_difference",
    "surface_diamond",
    "hodge_polynomial_full",
    "euler_char_tuple",
]


# -- Poincare side -------------------------------------------------------------


@lru_cache(maxsize=None)
def _poincare_series(
    b0: int, b1: int, b2: int, truncation: int, z_cap: int | None
) -> TruncatedSeries:
    def factor_at(m: int) -> TruncatedSeries:
        pieces = (
            (2 * m - 1, 1, b1),
            (2 * m + 1, 1, b1),
            (2 * m - 2, -1, -b0),
            (2 * m, -1, -b2),
            (2 * m + 2, -1, -b0),
        )
        result = None
        for z_deg, sign, exponent in pieces:
            if exponent == 0:
                continue
            if z_cap is not None and z_deg > z_cap:
                continue  # only contributes above the cap
            piece = binomial_factor(
                Exponent(m, (z_deg,)), sign, exponent, truncation, 1, aux_cap=z_cap
            )
            result = piece if result is None else mul(result, piece, aux_cap=z_cap)
        if result is None:
            return constant_one(truncation, 1)
        return result

    return indexed_product(factor_at, truncation, 1, aux_cap=z_cap)


def poincare_series(
    s: SurfaceInvariants, truncation: int, *, z_cap: int | None = None
) -> TruncatedSeries:
    """Betti generating series of the surface's Hilbert schemes of points.

    The coefficient of ``z^k t^n`` is the k-th Betti number of the n-point
    Hilbert scheme, for every n up to the truncation order.  ``z_cap``
    optionally drops all z-degrees above the cap; because every factor has
    nonnegative exponents this is exact for the surviving coefficients and
    much cheaper when only low cohomological degrees are needed.
    """
    if truncation < 1:
        raise UsageError(f"truncation must be >= 1, got {truncation}")
    return _poincare_series(s.b0, s.b1, s.b2, truncation, z_cap)


def euler_series(chi: int, truncation: int) -> TruncatedSeries:
    """Euler-characteristic generating series ``prod_m (1 - q^m)^-chi``."""
    if truncation < 1:
        raise UsageError(f"truncation must be >= 1, got {truncation}")
    return indexed_product(
        lambda m: binomial_factor(Exponent(m), -1, -chi, truncation, 0),
        truncation,
        0,
    )


def betti_from_series(s: SurfaceInvariants, n: int, k: int) -> int:
    """k-th Betti number of the n-point Hilbert scheme, from the product."""
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    cap = k if k <= 2 else None
    return poincare_series(s, n, z_cap=cap).coeff(Exponent(n, (k,)))


def betti_closed(s: SurfaceInvariants, n: int, k: int) -> int | None:
    """Closed-form Betti numbers of the n-point Hilbert scheme, k in {0, 1, 2}.

    Degree 2 has a closed form only for connected surfaces with vanishing
    first Betti number; elsewhere the answer is ``None`` (not applicable),
    never a silent zero.
    """
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    if k == 0:
        return comb(n + s.b0 - 1, s.b0 - 1)
    if k == 1:
        return s.b1 * comb(n + s.b0 - 2, s.b0 - 1)
    if k == 2:
        if s.b0 == 1 and s.b1 == 0:
            return s.b2 + 1 if n > 1 else s.b2
        return None
    raise UsageError(f"closed forms exist for k in 0..2, got k={k}")


@dataclass(frozen=True)
class PoincarePolynomial:
    """Betti numbers of a product of Hilbert schemes, indexed by degree."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients or self.coefficients[0] < 1:
            raise ValueError("constant coefficient must be >= 1")
        if (len(self.coefficients) - 1) % 4 != 0:
            raise ValueError(
                "length must be 4*n + 1 for a 4n-real-dimensional product"
            )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def betti(self, i: int) -> int:
        if not 0 <= i <= self.degree:
            raise UsageError(f"degree {i} out of range 0..{self.degree}")
        return self.coefficients[i]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.coefficients))

    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]


def _poly_mul(u: list[int], v: list[int]) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            out[i + j] += a * b
    return out


def _betti_vectors(s: SurfaceInvariants, n_max: int) -> dict[int, list[int]]:
    """Betti vector of the n-point Hilbert scheme for each n <= n_max."""
    series = poincare_series(s, n_max)
    vectors = {n: [0] * (4 * n + 1) for n in range(1, n_max + 1)}
    for exp, coeff in series.terms():
        n = exp.t_deg
        if n == 0:
            continue
        k = exp.aux_degs[0]
        if k <= 4 * n:
            vectors[n][k] = coeff
    return vectors


def poincare_polynomial(s: SurfaceInvariants, n: int) -> PoincarePolynomial:
    """Poincare polynomial of the n-point Hilbert scheme itself."""
    return poincare_polynomial_tuple(s, Partition((n,)))


def poincare_polynomial_tuple(
    s: SurfaceInvariants,
    a: Partition,
    max_part_guard: int | None = None,
) -> PoincarePolynomial:
    """Poincare polynomial of the product over the parts of ``a`` (Kuenneth)."""
    if max_part_guard is not None and max(a.parts) > max_part_guard:
        raise UsageError(
            f"largest part {max(a.parts)} exceeds the guard {max_part_guard}"
        )
    vectors = _betti_vectors(s, max(a.parts))
    product = [1]
    for part in a.parts:
        product = _poly_mul(product, vectors[part])
    return PoincarePolynomial(tuple(product))


# -- Hodge side ----------------------------------------------------------------


@lru_cache(maxsize=None)
def hodge_p0_series(h10: int, h20: int, truncation: int) -> TruncatedSeries:
    """Series whose coefficient of ``x^p t^n`` is ``h^{p,0}`` of the n-point scheme."""
    if truncation < 1:
        raise UsageError(f"truncation must be >= 1, got {truncation}")
    series = binomial_factor(Exponent(1, (1,)), 1, h10, truncation, 1)
    series = mul(series, binomial_factor(Exponent(1, (0,)), -1, -1, truncation, 1))
    series = mul(series, binomial_factor(Exponent(1, (2,)), -1, -h20, truncation, 1))
    return series


def _require_hodge_data(s: SurfaceInvariants) -> tuple[int, int]:
    if s.b0 != 1:
        raise DataError(
            f"h^(p,0) generating series requires a connected surface (b0=1), "
            f"got b0={s.b0}"
        )
    if s.h10 is None or s.h20 is None:
        raise DataError(
            f"surface {s.name!r} has no Hodge data (h10={s.h10}, h20={s.h20}); "
            "refusing rather than inventing values"
        )
    return s.h10, s.h20


def hodge_p0(s: SurfaceInvariants, n: int, p: int) -> int:
    """``h^{p,0}`` of the n-point Hilbert scheme, exact."""
    h10, h20 = _require_hodge_data(s)
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    if not 0 <= p <= 2 * n:
        raise UsageError(f"p must be in 0..{2 * n}, got {p}")
    return hodge_p0_series(h10, h20, n).coeff(Exponent(n, (p,)))


def _hodge_vector(h10: int, h20: int, n: int) -> list[int]:
    series = hodge_p0_series(h10, h20, n)
    return [series.coeff(Exponent(n, (p,))) for p in range(2 * n + 1)]


def hodge_p0_tuple_vector(s: SurfaceInvariants, a: Partition) -> list[int]:
    """All ``h^{p,0}`` of the product, p = 0..2n, via Kuenneth convolution."""
    h10, h20 = _require_hodge_data(s)
    product = [1]
    for part in a.parts:
        product = _poly_mul(product, _hodge_vector(h10, h20, part))
    return product


def hodge_p0_tuple(s: SurfaceInvariants, a: Partition, p: int) -> int:
    """``h^{p,0}`` of the product of Hilbert schemes over the parts of ``a``."""
    if not 0 <= p <= 2 * a.n:
        raise UsageError(f"p must be in 0..{2 * a.n}, got {p}")
    return hodge_p0_tuple_vector(s, a)[p]


def hodge_difference(s: SurfaceInvariants, n: int, m: int) -> int:
    """``h^{n+1,0}`` gap between the m-point and n-point schemes, 1 <= n < m.

    Contract: the gap equals ``C(h10, n+1)``; both sides are computed from
    the series here, the binomial identity is what the tests check.
    """
    if not 1 <= n < m:
        raise UsageError(f"need 1 <= n < m, got n={n}, m={m}")
    return hodge_p0(s, m, n + 1) - hodge_p0(s, n, n + 1)


class HodgeDiamond:
    """Hodge numbers ``h^{p,q}`` of a variety, 0 <= p, q <= size."""

    __slots__ = ("size", "_entries")

    def __init__(self, size: int, entries: dict[tuple[int, int], int]) -> None:
        if size < 0:
            raise ValueError("size must be nonnegative")
        clean = {}
        for (p, q), value in entries.items():
            if value == 0:
                continue
            if value < 0:
                raise DataError(f"negative Hodge number h[{p},{q}] = {value}")
            if not (0 <= p <= size and 0 <= q <= size):
                raise DataError(f"entry ({p},{q}) outside 0..{size}")
            clean[(p, q)] = value
        self.size = size
        self._entries = clean

    def h(self, p: int, q: int) -> int:
        return self._entries.get((p, q), 0)

    def entries(self) -> list[tuple[int, int, int]]:
        return [(p, q, v) for (p, q), v in sorted(self._entries.items())]

    def is_symmetric(self) -> bool:
        return all(self.h(p, q) == self.h(q, p) for (p, q) in self._entries)

    def betti(self, i: int) -> int:
        return sum(
            v for (p, q), v in self._entries.items() if p + q == i
        )

    def total(self) -> int:
        return sum(self._entries.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * v for (p, q), v in self._entries.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HodgeDiamond):
            return NotImplemented
        return self.size == other.size and self._entries == other._entries

    def __repr__(self) -> str:
        return f"HodgeDiamond(size={self.size}, entries={len(self._entries)})"


def surface_diamond(s: SurfaceInvariants) -> HodgeDiamond:
    """Full Hodge diamond of the surface from (b2, h10, h20).

    ``h^{1,1} = b2 - 2*h20``; the remaining entries follow from Hodge and
    Serre symmetry.
    """
    h10, h20 = _require_hodge_data(s)
    h11 = s.b2 - 2 * h20
    if h11 < 0:
        raise DataError(f"b2 - 2*h20 = {h11} < 0: inconsistent surface data")
    return HodgeDiamond(
        2,
        {
            (0, 0): 1,
            (1, 0): h10,
            (0, 1): h10,
            (2, 0): h20,
            (0, 2): h20,
            (1, 1): h11,
            (2, 1): h10,
            (1, 2): h10,
            (2, 2): 1,
        },
    )


def hodge_polynomial_full(d: HodgeDiamond, n: int) -> HodgeDiamond:
    """Full Hodge diamond of the n-point Hilbert scheme from the surface diamond.

    Expands the two-variable infinite product whose ``t^n`` coefficient is the
    Hodge polynomial of the n-point scheme: for each k >= 1 and each (p, q),
    a factor ``(1 + x^{p+k-1} y^{q+k-1} t^k)^{h^{p,q}}`` when p+q is odd and
    ``(1 - x^{p+k-1} y^{q+k-1} t^k)^{-h^{p,q}}`` when p+q is even.
    """
    if d.size != 2:
        raise DataError(f"expected a surface diamond (size 2), got size {d.size}")
    if not d.is_symmetric():
        raise DataError("diamond is not Hodge-symmetric")
    if d.h(0, 0) != 1:
        raise DataError("expected a connected surface diamond (h[0,0] = 1)")
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")

    def factor_at(k: int) -> TruncatedSeries:
        result = None
        for p in range(3):
            for q in range(3):
                hpq = d.h(p, q)
                if hpq == 0:
                    continue
                monomial = Exponent(k, (p + k - 1, q + k - 1))
                if (p + q) % 2 == 1:
                    piece = binomial_factor(monomial, 1, hpq, n, 2)
                else:
                    piece = binomial_factor(monomial, -1, -hpq, n, 2)
                result = piece if result is None else mul(result, piece)
        assert result is not None  # h[0,0] = 1 guarantees at least one factor
        return result

    series = indexed_product(factor_at, n, 2)
    entries: dict[tuple[int, int], int] = {}
    for exp, coeff in series.terms():
        if exp.t_deg == n:
            x_deg, y_deg = exp.aux_degs
            entries[(x_deg, y_deg)] = coeff
    return HodgeDiamond(2 * n, entries)


# -- Euler side ----------------------------------------------------------------


def euler_char_tuple(s: SurfaceInvariants, a: Partition) -> int:
    """Euler characteristic of the product: chi-coloured partition counts."""
    return colored_count_tuple(s.chi, a)


def euler_char(s: SurfaceInvariants, n: int) -> int:
    """Euler characteristic of the n-point Hilbert scheme."""
    if n < 0:
        raise UsageError(f"n must be nonnegative, got {n}")
    return colored_count(s.chi, n)
