"""Decision engine: structural rules, invariant witnesses, rule annotation."""

from __future__ import annotations

import itertools
from math import comb, prod

import pytest

import hilbprod.decision as decision
from hilbprod.decision import (
    Outcome,
    Verdict,
    aut_shape,
    decide,
    kummer_reinterpretation,
)
from hilbprod.errors import DataError, DimensionMismatchError
from hilbprod.invariants import poincare_polynomial_tuple
from hilbprod.partitions import Partition, enumerate_partitions, partitions_by_length
from hilbprod.surfaces import StructuralClass, SurfaceInvariants, catalog_lookup

K3 = catalog_lookup("k3")
QUINTIC = catalog_lookup("quintic")
ABELIAN = catalog_lookup("abelian")
BIELLIPTIC = catalog_lookup("bielliptic")
PAIR_OF_SURFACES = SurfaceInvariants("pair_of_surfaces", 2, 0, 4, 8)


def rule_ids(verdict: Verdict) -> list[str]:
    return [r.rule_id for r in verdict.rules_fired]


# -- outcomes ---------------------------------------------------------------------


def test_equal_partitions_are_isomorphic():
    from hilbprod.surfaces import load_catalog

    for s in list(load_catalog().representatives()) + [PAIR_OF_SURFACES]:
        v = decide(s, Partition((1, 2)), Partition((1, 2)))
        assert v.outcome is Outcome.ISOMORPHIC, s.name
        assert v.witness is None and v.rules_fired == ()


def test_distinct_partitions_are_never_declared_isomorphic():
    from hilbprod.surfaces import load_catalog

    surfaces = load_catalog().representatives()
    for n in range(2, 7):
        partitions = enumerate_partitions(n)
        for a, b in itertools.combinations(partitions, 2):
            for s in surfaces:
                v = decide(s, a, b)
                assert v.outcome is not Outcome.ISOMORPHIC, (s.name, a, b)
                if v.outcome is Outcome.NON_ISOMORPHIC and v.witness is not None:
                    assert v.witness.value_a != v.witness.value_b


def test_k3_structural_rule():
    v = decide(K3, Partition((1, 3)), Partition((2, 2)))
    assert v.outcome is Outcome.NON_ISOMORPHIC
    assert "k3-product-rigidity" in rule_ids(v)
    assert v.witness is None  # structural certificate, comparison skipped


def test_dimension_mismatch_is_a_usage_error():
    with pytest.raises(DimensionMismatchError) as excinfo:
        decide(K3, Partition((1, 2)), Partition((2, 2)))
    assert "dimension" in str(excinfo.value)


def test_invalid_surface_is_a_data_error():
    broken = SurfaceInvariants("broken", 1, 0, 22, 25)
    with pytest.raises(DataError):
        decide(broken, Partition((1,)), Partition((1,)))


def test_quintic_euler_witness_and_majorization_rule():
    v = decide(QUINTIC, Partition((1, 3)), Partition((2, 2)))
    assert v.outcome is Outcome.NON_ISOMORPHIC
    w = v.witness
    assert w is not None and w.invariant == "euler_characteristic"
    # (2,2) strictly majorizes (1,3) and chi = 55 >= 3: strict inequality
    assert w.value_b > w.value_a
    assert w.value_a == 55 * 32340 and w.value_b == 1595 * 1595
    assert "majorization-euler" in rule_ids(v)


def test_bielliptic_incomparable_pair_fixture():
    # chi = 0 ties the Euler counts; the Betti vectors separate at degree 2.
    # No sufficient-condition rule covers this pair; the computed witness does.
    v = decide(BIELLIPTIC, Partition((1, 4, 5)), Partition((2, 2, 6)))
    assert v.outcome is Outcome.NON_ISOMORPHIC
    assert v.witness == decision.Witness("betti", 2, 22, 24)
    assert rule_ids(v) == []


def test_abelian_first_betti_instance():
    v = decide(ABELIAN, Partition((1, 3)), Partition((2, 2)))
    assert v.outcome is Outcome.NON_ISOMORPHIC
    assert v.witness == decision.Witness("betti", 2, 35, 42)
    assert "same-length-first-betti" in rule_ids(v)


def test_disconnected_same_length_rule_and_direction():
    # every distinct same-length pair separates; the degree-0 coefficient
    # (product of zeroth Betti binomials) is strictly smaller on the side
    # that is smaller at the first differing part
    for n in range(2, 11):
        for bucket in partitions_by_length(n).values():
            for a, b in itertools.combinations(bucket, 2):
                for x, y in zip(a.parts, b.parts):
                    if x != y:
                        if x > y:
                            a, b = b, a
                        break
                v = decide(PAIR_OF_SURFACES, a, b)
                assert v.outcome is Outcome.NON_ISOMORPHIC
                assert "same-length-disconnected" in rule_ids(v)
                b0a = poincare_polynomial_tuple(PAIR_OF_SURFACES, a).betti(0)
                b0b = poincare_polynomial_tuple(PAIR_OF_SURFACES, b).betti(0)
                assert b0a == prod(comb(part + 1, 1) for part in a.parts)
                assert b0a < b0b


def test_diff_length_ones_margin_b2_identity():
    # degree-2 Betti gap equals (s - r)*(b2 + 1) + (k - l) for b0=1, b1=0
    for s in (QUINTIC, catalog_lookup("enriques")):
        for n in range(2, 9):
            partitions = enumerate_partitions(n)
            for a, b in itertools.combinations(partitions, 2):
                if a.length == b.length:
                    continue
                if a.length > b.length:
                    a, b = b, a
                k = sum(1 for p in a.parts if p == 1)
                l = sum(1 for p in b.parts if p == 1)
                predicted = (b.length - a.length) * (s.b2 + 1) + (k - l)
                got = poincare_polynomial_tuple(s, b).betti(
                    2
                ) - poincare_polynomial_tuple(s, a).betti(2)
                assert got == predicted, (s.name, a, b)
                if predicted != 0:
                    v = decide(s, a, b)
                    assert v.outcome is Outcome.NON_ISOMORPHIC


def test_euler_witness_strict_direction_for_majorizing_pairs():
    # chi >= 3 and b strictly majorizes a: the Euler counts separate strictly,
    # with the larger value on the majorizing side
    from hilbprod.partitions import Majorization, majorizes

    for s in (QUINTIC, catalog_lookup("enriques"), K3):
        if s.structural_class is not StructuralClass.GENERIC:
            continue
        for n in range(2, 9):
            for bucket in partitions_by_length(n).values():
                for a, b in itertools.combinations(bucket, 2):
                    order = majorizes(b, a)
                    if order is Majorization.INCOMPARABLE:
                        continue
                    v = decide(s, a, b)
                    assert v.outcome is Outcome.NON_ISOMORPHIC
                    assert "majorization-euler" in rule_ids(v)
                    assert v.witness is not None
                    assert v.witness.invariant == "euler_characteristic"
                    if order is Majorization.STRICTLY_MAJORIZES:
                        assert v.witness.value_b > v.witness.value_a
                    else:
                        assert v.witness.value_a > v.witness.value_b


def test_rule_annotation_for_quintic_unit_part_pair():
    v = decide(QUINTIC, Partition((2, 2)), Partition((1, 1, 2)))
    assert v.outcome is Outcome.NON_ISOMORPHIC
    ids = rule_ids(v)
    assert "diff-length-ones-margin" in ids
    # the all-parts-above-one rule must NOT fire: (1,1,2) has unit parts
    assert "diff-length-min-parts" not in ids


def test_rule_annotation_for_quintic_no_unit_parts():
    v = decide(QUINTIC, Partition((4,)), Partition((2, 2)))
    assert v.outcome is Outcome.NON_ISOMORPHIC
    assert "diff-length-min-parts" in rule_ids(v)


def test_decide_is_symmetric_up_to_witness_swap():
    pairs = [
        (QUINTIC, Partition((1, 3)), Partition((2, 2))),
        (BIELLIPTIC, Partition((1, 4, 5)), Partition((2, 2, 6))),
        (ABELIAN, Partition((1, 1, 4)), Partition((1, 2, 3))),
        (PAIR_OF_SURFACES, Partition((1, 2, 3)), Partition((2, 2, 2))),
    ]
    for s, a, b in pairs:
        v1 = decide(s, a, b)
        v2 = decide(s, b, a)
        assert v1.outcome == v2.outcome
        assert set(rule_ids(v1)) == set(rule_ids(v2))
        if v1.witness is not None:
            assert v2.witness is not None
            assert (v1.witness.invariant, v1.witness.index) == (
                v2.witness.invariant,
                v2.witness.index,
            )
            assert (v1.witness.value_a, v1.witness.value_b) == (
                v2.witness.value_b,
                v2.witness.value_a,
            )


def test_unknown_when_invariants_tie(monkeypatch):
    # force a tie to exercise the Unknown branch: invariants are not complete,
    # so equal data never certifies an isomorphism
    monkeypatch.setattr(decision, "euler_char_tuple", lambda s, a: 0)
    monkeypatch.setattr(
        decision,
        "poincare_polynomial_tuple",
        lambda s, a: poincare_polynomial_tuple(QUINTIC, Partition((1, 1))),
    )
    monkeypatch.setattr(decision, "hodge_p0_tuple_vector", lambda s, a: [1, 0, 0, 0, 0])
    surface = SurfaceInvariants("stub", 1, 2, 2, 0, h10=1, h20=0)
    v = decide(surface, Partition((1, 1)), Partition((2,)))
    assert v.outcome is Outcome.UNKNOWN
    assert v.witness is None
    assert any("not" in note for note in v.notes)


def test_unknown_notes_hodge_skip(monkeypatch):
    monkeypatch.setattr(decision, "euler_char_tuple", lambda s, a: 5)
    monkeypatch.setattr(
        decision,
        "poincare_polynomial_tuple",
        lambda s, a: poincare_polynomial_tuple(QUINTIC, Partition((1, 1))),
    )
    surface = SurfaceInvariants("stub", 1, 0, 4, 6)  # no Hodge data
    v = decide(surface, Partition((1, 1)), Partition((2,)))
    assert v.outcome is Outcome.UNKNOWN
    assert any("Hodge comparison skipped" in note for note in v.notes)


# -- Kummer mode --------------------------------------------------------------------


def test_kummer_mode_structural_rule():
    kummer = kummer_reinterpretation(ABELIAN)
    assert kummer.structural_class is StructuralClass.ABELIAN_FOR_KUMMER
    v = decide(kummer, Partition((1, 3)), Partition((2, 2)))
    assert v.outcome is Outcome.NON_ISOMORPHIC
    assert rule_ids(v) == ["kummer-product-rigidity"]
    assert v.witness is None
    assert any("caveat" in note for note in v.notes)  # a part equals 1
    v2 = decide(kummer, Partition((2, 4)), Partition((3, 3)))
    assert not any("caveat" in note for note in v2.notes)


def test_kummer_mode_equal_partitions():
    kummer = kummer_reinterpretation(ABELIAN)
    assert decide(kummer, Partition((2,)), Partition((2,))).outcome is Outcome.ISOMORPHIC


def test_kummer_reinterpretation_refuses_non_abelian():
    with pytest.raises(DataError):
        kummer_reinterpretation(K3)


# -- verdict serialization ------------------------------------------------------------


def test_verdict_round_trip():
    for v in (
        decide(QUINTIC, Partition((1, 3)), Partition((2, 2))),
        decide(K3, Partition((1, 3)), Partition((2, 2))),
        decide(K3, Partition((2, 2)), Partition((2, 2))),
    ):
        assert Verdict.from_dict(v.to_dict()) == v


# -- aut shapes ---------------------------------------------------------------------


def test_aut_shape_grouping():
    shape = aut_shape(Partition((1, 1, 2, 3, 3, 3)))
    assert shape.factors == ((1, 2), (2, 1), (3, 3))


def test_aut_shape_renderings():
    assert aut_shape(Partition((2, 2))).render() == "Aut(S^[2])^2 ⋊ S_2"
    assert aut_shape(Partition((5,))).render() == "Aut(S^[5])"
    assert (
        aut_shape(Partition((1, 1, 2, 3, 3, 3))).render()
        == "Aut(S^[1])^2 ⋊ S_2 × Aut(S^[2]) × Aut(S^[3])^3 ⋊ S_3"
    )


def test_aut_shape_factor_invariants():
    for n in range(1, 9):
        for a in enumerate_partitions(n):
            shape = aut_shape(a)
            values = [v for v, _ in shape.factors]
            assert values == sorted(set(values))
            assert sum(v * m for v, m in shape.factors) == n
