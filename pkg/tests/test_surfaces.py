"""Surface catalog: table values, validation, serialization round trips."""

from __future__ import annotations

import json

import pytest

from hilbprod.errors import CatalogError, DataError
from hilbprod.surfaces import (
    CATALOG_ENV_VAR,
    FAMILY_DEFAULTS,
    StructuralClass,
    SurfaceInvariants,
    catalog_lookup,
    load_catalog,
    require_valid,
    validate,
)


def test_fixed_rows_match_table():
    expected = {
        "k3": (1, 0, 22, 24),
        "enriques": (1, 0, 10, 12),
        "abelian": (1, 4, 6, 0),
        "bielliptic": (1, 2, 2, 0),
        "rational_elliptic": (1, 0, 10, 12),
        "quintic": (1, 0, 53, 55),
    }
    for name, numbers in expected.items():
        s = catalog_lookup(name)
        assert (s.b0, s.b1, s.b2, s.chi) == numbers, name


def test_family_rows_match_table():
    assert_invariants = lambda s, t: (s.b0, s.b1, s.b2, s.chi) == t
    assert assert_invariants(catalog_lookup("del_pezzo", {"d": 1}), (1, 0, 9, 11))
    assert assert_invariants(catalog_lookup("del_pezzo", {"d": 9}), (1, 0, 1, 3))
    assert assert_invariants(catalog_lookup("hirzebruch", {"n": 4}), (1, 0, 2, 4))
    assert assert_invariants(catalog_lookup("ruled", {"g": 2}), (1, 4, 2, -4))
    assert assert_invariants(catalog_lookup("elliptic_chi1", {"g": 2}), (1, 4, 18, 12))
    assert assert_invariants(catalog_lookup("elliptic_chi2", {"g": 1}), (1, 2, 26, 24))
    assert assert_invariants(catalog_lookup("elliptic_en", {"n": 3}), (1, 0, 34, 36))
    assert assert_invariants(
        catalog_lookup("product_of_curves", {"g1": 2, "g2": 3}), (1, 10, 26, 8)
    )


def test_hodge_data_shipping_policy():
    assert catalog_lookup("k3").h20 == 1
    assert catalog_lookup("enriques").h20 == 0
    assert catalog_lookup("abelian").h20 == 1
    assert catalog_lookup("bielliptic").h20 == 0
    assert catalog_lookup("del_pezzo", {"d": 5}).h20 == 0
    assert catalog_lookup("quintic").h20 is None
    assert catalog_lookup("ruled", {"g": 3}).h20 is None
    # h10 is forced by b1 and shipped everywhere
    assert catalog_lookup("abelian").h10 == 2
    assert catalog_lookup("ruled", {"g": 3}).h10 == 3


def test_every_shipped_row_passes_validation():
    for s in load_catalog().representatives():
        assert validate(s) == [], s.name


def test_k3_structural_class():
    assert catalog_lookup("k3").structural_class is StructuralClass.K3
    assert catalog_lookup("abelian").structural_class is StructuralClass.GENERIC


def test_validate_chi_mismatch():
    s = SurfaceInvariants("broken", 1, 0, 22, 25)
    diagnostics = validate(s)
    assert any("chi mismatch" in d for d in diagnostics)


def test_validate_h10_relation():
    s = SurfaceInvariants("broken", 1, 4, 6, 0, h10=1)
    assert any("b1 != 2*h10" in d for d in validate(s))


def test_validate_k3_class_forced_tuple():
    s = SurfaceInvariants(
        "fake-k3", 1, 0, 21, 23, h10=0, h20=1, structural_class=StructuralClass.K3
    )
    assert any("structural class k3" in d for d in validate(s))


def test_validate_disconnected_skips_duality():
    s = SurfaceInvariants("pair", 2, 0, 4, 8)
    assert validate(s) == []


def test_require_valid_raises_data_error():
    with pytest.raises(DataError):
        require_valid(SurfaceInvariants("broken", 1, 0, 22, 25))


def test_round_trip_serialization():
    for s in load_catalog().representatives():
        assert SurfaceInvariants.from_record(s.to_record()) == s


def test_unknown_surface_and_bad_params():
    with pytest.raises(CatalogError):
        catalog_lookup("projective-plane")
    with pytest.raises(CatalogError):
        catalog_lookup("del_pezzo")  # missing d
    with pytest.raises(CatalogError):
        catalog_lookup("del_pezzo", {"d": 10})
    with pytest.raises(CatalogError):
        catalog_lookup("k3", {"d": 1})  # no parameters expected
    with pytest.raises(CatalogError):
        catalog_lookup("product_of_curves", {"g1": 1, "g2": 2})


def test_custom_catalog_file(tmp_path, monkeypatch):
    custom = {
        "version": 1,
        "surfaces": [
            {
                "name": "my_surface",
                "family_params": [],
                "b0": 1,
                "b1": 0,
                "b2": 4,
                "chi": 6,
                "structural_class": "generic",
                "provenance": "user-supplied",
            }
        ],
    }
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(custom))
    s = catalog_lookup("my_surface", catalog=load_catalog(path))
    assert (s.b0, s.b1, s.b2, s.chi) == (1, 0, 4, 6)
    monkeypatch.setenv(CATALOG_ENV_VAR, str(path))
    assert load_catalog().names() == ["my_surface"]
    monkeypatch.setenv(CATALOG_ENV_VAR, str(tmp_path / "missing.json"))
    with pytest.raises(CatalogError):
        load_catalog()


def test_family_defaults_cover_all_family_rows():
    catalog = load_catalog()
    for record in catalog.records:
        if record.get("family_params"):
            assert record["name"] in FAMILY_DEFAULTS
