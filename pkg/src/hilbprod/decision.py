"""Non-isomorphism decisions for products of Hilbert schemes of points.

Two products attached to distinct partitions of the same integer are compared
in two complementary ways:

* direct invariant comparison (Euler characteristic, then the full Betti
  vector degree by degree, then the ``h^{p,0}`` vector when Hodge data is
  present); the first computed difference is the witness and the actual
  certificate;
* structural rules for the two rigid classes (K3 bases, and generalized
  Kummer varieties over an abelian base), where distinct partitions are never
  isomorphic by uniqueness of the decomposition into irreducible
  holomorphic-symplectic factors.

Sufficient-condition rules whose hypotheses hold are attached to the verdict
as explanation metadata; they never substitute for a computed witness except
in the two structural classes.  "Isomorphic" is only ever issued for equal
partitions; equal computed invariants yield "Unknown", because these
invariants are not complete.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from itertools import groupby
from typing import Any, Mapping

from .errors import DataError, DimensionMismatchError
from .invariants import (
    euler_char_tuple,
    hodge_p0_tuple_vector,
    poincare_polynomial_tuple,
)
from .partitions import Majorization, Partition, majorizes
from .surfaces import (
    ABELIAN_INVARIANTS,
    StructuralClass,
    SurfaceInvariants,
    require_valid,
)

__all__ = [
    "Outcome",
    "Witness",
    "FiredRule",
    "Verdict",
    "AutShape",
    "decide",
    "aut_shape",
    "kummer_reinterpretation",
    "RULE_STATEMENTS",
]


class Outcome(enum.Enum):
    ISOMORPHIC = "isomorphic"
    NON_ISOMORPHIC = "non_isomorphic"
    UNKNOWN = "unknown"


# rule identifiers -> the mathematical sufficient condition they certify
RULE_STATEMENTS: dict[str, str] = {
    "k3-product-rigidity": (
        "over a K3 base the decomposition into irreducible holomorphic-"
        "symplectic factors is unique, so distinct partitions never give "
        "isomorphic products"
    ),
    "kummer-product-rigidity": (
        "products of generalized Kummer varieties over an abelian surface "
        "decompose uniquely into irreducible holomorphic-symplectic factors, "
        "so distinct partitions never give isomorphic products"
    ),
    "diff-length-min-parts": (
        "partitions of different lengths with every part > 1: the products' "
        "low-degree Betti data (b0 if disconnected, else b1 if b1 > 0, else "
        "b2) differs strictly"
    ),
    "diff-length-ones-margin": (
        "partitions of different lengths r < s with k resp. l unit parts: "
        "non-isomorphic when k >= l, or when k < l and "
        "l - k != (s - r) * (b2 + 1)"
    ),
    "same-length-disconnected": (
        "disconnected base (b0 > 1): distinct same-length partitions give "
        "strictly different products of zeroth Betti binomials"
    ),
    "same-length-first-betti": (
        "connected base with b1 >= 2 * (min of the first differing parts + 1): "
        "the h^{p,0} Hodge numbers at p = min + 1 differ"
    ),
    "majorization-euler": (
        "Euler characteristic >= 3 and one partition strictly majorizes the "
        "other (same length): the coloured-partition Euler counts differ "
        "strictly"
    ),
    "majorization-euler-b1-zero": (
        "connected base with b1 = 0 (so chi = 2 + b2 >= 3): strict "
        "majorization already separates the Euler counts"
    ),
}


@dataclass(frozen=True)
class Witness:
    invariant: str
    index: int | None
    value_a: int
    value_b: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "invariant": self.invariant,
            "index": self.index,
            "value_a": self.value_a,
            "value_b": self.value_b,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Witness":
        return cls(d["invariant"], d["index"], d["value_a"], d["value_b"])


@dataclass(frozen=True)
class FiredRule:
    rule_id: str
    detail: str

    @property
    def statement(self) -> str:
        return RULE_STATEMENTS[self.rule_id]

    def to_dict(self) -> dict[str, Any]:
        return {
            "rule_id": self.rule_id,
            "statement": self.statement,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "FiredRule":
        return cls(d["rule_id"], d.get("detail", ""))


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    surface: str
    a: Partition
    b: Partition
    witness: Witness | None
    rules_fired: tuple[FiredRule, ...]
    notes: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "outcome": self.outcome.value,
            "surface": self.surface,
            "a": list(self.a.parts),
            "b": list(self.b.parts),
            "witness": self.witness.to_dict() if self.witness else None,
            "rules_fired": [r.to_dict() for r in self.rules_fired],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Verdict":
        return cls(
            outcome=Outcome(d["outcome"]),
            surface=d["surface"],
            a=Partition(tuple(d["a"])),
            b=Partition(tuple(d["b"])),
            witness=Witness.from_dict(d["witness"]) if d.get("witness") else None,
            rules_fired=tuple(FiredRule.from_dict(r) for r in d["rules_fired"]),
            notes=tuple(d["notes"]),
        )


def _unit_parts(p: Partition) -> int:
    return sum(1 for part in p.parts if part == 1)


def _first_difference(a: Partition, b: Partition) -> int:
    for j, (x, y) in enumerate(zip(a.parts, b.parts)):
        if x != y:
            return j
    raise AssertionError("called on equal partitions")


def _annotate_rules(
    s: SurfaceInvariants, a: Partition, b: Partition
) -> list[FiredRule]:
    """Every sufficient-condition rule whose hypotheses hold for (s, a, b).

    Hypotheses only involve the partitions' shapes and the surface numbers,
    so this is cheap and independent of the series machinery.
    """
    fired: list[FiredRule] = []
    if s.structural_class is StructuralClass.K3:
        fired.append(FiredRule("k3-product-rigidity", "base surface is K3"))
    if a.length != b.length:
        short, long_ = (a, b) if a.length < b.length else (b, a)
        r, s_len = short.length, long_.length
        if short.parts[0] > 1 and long_.parts[0] > 1:
            fired.append(
                FiredRule(
                    "diff-length-min-parts",
                    f"lengths {r} < {s_len}, all parts > 1",
                )
            )
        k, l = _unit_parts(short), _unit_parts(long_)
        margin = (s_len - r) * (s.b2 + 1)
        if k >= l:
            fired.append(
                FiredRule(
                    "diff-length-ones-margin",
                    f"unit parts {k} (shorter) >= {l} (longer)",
                )
            )
        elif l - k != margin:
            detail = f"unit parts {k} < {l}, l - k = {l - k} != {margin} = (s-r)*(b2+1)"
            if s.b0 == 1 and s.b1 == 0:
                detail += (
                    f"; predicted degree-2 Betti gap (longer - shorter) = "
                    f"{margin + k - l}"
                )
            fired.append(FiredRule("diff-length-ones-margin", detail))
    else:
        if s.b0 > 1:
            fired.append(
                FiredRule("same-length-disconnected", f"b0 = {s.b0} > 1")
            )
        j = _first_difference(a, b)
        least = min(a.parts[j], b.parts[j])
        if s.b0 == 1 and s.b1 >= 2 * (least + 1):
            fired.append(
                FiredRule(
                    "same-length-first-betti",
                    f"first differing parts {a.parts[j]} vs {b.parts[j]} at "
                    f"index {j}; b1 = {s.b1} >= {2 * (least + 1)}",
                )
            )
        order = majorizes(b, a)
        if order in (Majorization.STRICTLY_MAJORIZES, Majorization.MAJORIZED_BY):
            bigger, smaller = (
                (b, a) if order is Majorization.STRICTLY_MAJORIZES else (a, b)
            )
            if s.chi >= 3:
                fired.append(
                    FiredRule(
                        "majorization-euler",
                        f"chi = {s.chi} >= 3 and {bigger} strictly majorizes "
                        f"{smaller}",
                    )
                )
            if s.b0 == 1 and s.b1 == 0:
                fired.append(
                    FiredRule(
                        "majorization-euler-b1-zero",
                        f"b0 = 1, b1 = 0 and {bigger} strictly majorizes "
                        f"{smaller}",
                    )
                )
    return fired


def _compare_invariants(
    s: SurfaceInvariants, a: Partition, b: Partition
) -> tuple[Witness | None, list[str]]:
    ea, eb = euler_char_tuple(s, a), euler_char_tuple(s, b)
    if ea != eb:
        return Witness("euler_characteristic", None, ea, eb), []
    pa = poincare_polynomial_tuple(s, a)
    pb = poincare_polynomial_tuple(s, b)
    for i, (x, y) in enumerate(zip(pa.coefficients, pb.coefficients)):
        if x != y:
            return Witness("betti", i, x, y), []
    if s.b0 == 1 and s.h10 is not None and s.h20 is not None:
        va = hodge_p0_tuple_vector(s, a)
        vb = hodge_p0_tuple_vector(s, b)
        for p, (x, y) in enumerate(zip(va, vb)):
            if x != y:
                return Witness("hodge_p0", p, x, y), []
        return None, ["Euler, Betti and h^(p,0) data all agree"]
    return None, [
        "Euler and Betti data agree",
        "Hodge comparison skipped: surface carries no h10/h20 data",
    ]


def decide(s: SurfaceInvariants, a: Partition, b: Partition) -> Verdict:
    """Decide non-isomorphism of the two products attached to ``a`` and ``b``."""
    require_valid(s)
    if a.n != b.n:
        raise DimensionMismatchError(
            f"partitions sum to {a.n} and {b.n}: the products have real "
            f"dimensions {4 * a.n} and {4 * b.n} and are never isomorphic; "
            "this engine only compares partitions of the same integer"
        )
    if a == b:
        return Verdict(
            outcome=Outcome.ISOMORPHIC,
            surface=s.name,
            a=a,
            b=b,
            witness=None,
            rules_fired=(),
            notes=("equal partitions give the identical product",),
        )

    if s.structural_class is StructuralClass.ABELIAN_FOR_KUMMER:
        notes = [
            "Kummer mode: each part n denotes the 2n-dimensional generalized "
            "Kummer variety of the abelian base, not a Hilbert scheme",
            "invariant comparison skipped: the series machinery computes "
            "Hilbert-scheme data, not Kummer data",
        ]
        if 1 in a.parts or 1 in b.parts:
            notes.append(
                "caveat: a part equal to 1 denotes a 2-dimensional Kummer "
                "variety, which is a K3 surface"
            )
        return Verdict(
            outcome=Outcome.NON_ISOMORPHIC,
            surface=s.name,
            a=a,
            b=b,
            witness=None,
            rules_fired=(
                FiredRule("kummer-product-rigidity", "base is an abelian surface"),
            ),
            notes=tuple(notes),
        )

    rules = tuple(_annotate_rules(s, a, b))
    if s.structural_class is StructuralClass.K3:
        return Verdict(
            outcome=Outcome.NON_ISOMORPHIC,
            surface=s.name,
            a=a,
            b=b,
            witness=None,
            rules_fired=rules,
            notes=("decided structurally; invariant comparison skipped",),
        )

    witness, notes = _compare_invariants(s, a, b)
    if witness is not None:
        return Verdict(
            outcome=Outcome.NON_ISOMORPHIC,
            surface=s.name,
            a=a,
            b=b,
            witness=witness,
            rules_fired=rules,
            notes=tuple(notes),
        )
    notes.append(
        "computed invariants do not separate the products; they are not "
        "complete invariants, so no isomorphism is asserted either"
    )
    return Verdict(
        outcome=Outcome.UNKNOWN,
        surface=s.name,
        a=a,
        b=b,
        witness=None,
        rules_fired=rules,
        notes=tuple(notes),
    )


def kummer_reinterpretation(s: SurfaceInvariants) -> SurfaceInvariants:
    """Retag an abelian surface as the base of generalized Kummer varieties."""
    if (s.b0, s.b1, s.b2, s.chi) != ABELIAN_INVARIANTS:
        raise DataError(
            f"Kummer mode needs an abelian base (b0,b1,b2,chi) = "
            f"{ABELIAN_INVARIANTS}, got ({s.b0},{s.b1},{s.b2},{s.chi})"
        )
    return replace(
        s,
        name=f"kummer({s.name})",
        structural_class=StructuralClass.ABELIAN_FOR_KUMMER,
    )


@dataclass(frozen=True)
class AutShape:
    """Multiplicity profile of a partition: distinct parts with repeat counts."""

    factors: tuple[tuple[int, int], ...]

    def render(self) -> str:
        pieces = []
        for value, mult in self.factors:
            if mult == 1:
                pieces.append(f"Aut(S^[{value}])")
            else:
                pieces.append(f"Aut(S^[{value}])^{mult} ⋊ S_{mult}")
        return " × ".join(pieces)

    def to_dict(self) -> dict[str, Any]:
        return {
            "factors": [list(f) for f in self.factors],
            "rendered": self.render(),
        }


def aut_shape(a: Partition) -> AutShape:
    """Group equal parts into (part, multiplicity) factors, parts increasing.

    The automorphism group of the product splits accordingly: one wreath-type
    factor ``Aut(S^[n])^l x| S_l`` per repeated part.  Proved for the K3 and
    Kummer structural classes; formal (unverified) shape otherwise.
    """
    factors = tuple(
        (value, len(list(group))) for value, group in groupby(a.parts)
    )
    return AutShape(factors)
