"""CLI: exit codes, output formats, round trips."""

from __future__ import annotations

import csv
import json

from hilbprod.cli import main
from hilbprod.decision import Verdict


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- decide ------------------------------------------------------------------------


def test_decide_k3_structured(capsys):
    code, out, _ = run(
        capsys,
        "decide", "--surface", "k3", "--a", "1,3", "--b", "2,2",
        "--output-format", "structured",
    )
    assert code == 0
    verdict = Verdict.from_dict(json.loads(out))
    assert verdict.outcome.value == "non_isomorphic"
    assert "k3-product-rigidity" in [r.rule_id for r in verdict.rules_fired]


def test_decide_same_n_different_lengths_is_valid(capsys):
    code, out, _ = run(capsys, "decide", "--surface", "k3", "--a", "1,3", "--b", "1,1,2")
    assert code == 0
    assert "non_isomorphic" in out


def test_decide_dimension_mismatch_exit_1(capsys):
    code, _, err = run(capsys, "decide", "--surface", "k3", "--a", "1,2", "--b", "2,2")
    assert code == 1
    assert "dimension" in err


def test_decide_kummer_mode(capsys):
    code, out, _ = run(
        capsys,
        "decide", "--surface", "abelian", "--a", "1,3", "--b", "2,2", "--kummer",
        "--output-format", "structured",
    )
    assert code == 0
    verdict = json.loads(out)
    assert verdict["rules_fired"][0]["rule_id"] == "kummer-product-rigidity"


def test_decide_kummer_needs_abelian(capsys):
    code, _, err = run(
        capsys, "decide", "--surface", "k3", "--a", "1,3", "--b", "2,2", "--kummer"
    )
    assert code == 2
    assert "abelian" in err


def test_partition_reorder_notice(capsys):
    code, _, err = run(capsys, "decide", "--surface", "k3", "--a", "3,1", "--b", "2,2")
    assert code == 0
    assert "canonicalized" in err


# -- catalog -----------------------------------------------------------------------


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "k3" in out and "abelian" in out


def test_catalog_single_surface_with_params(capsys):
    code, out, _ = run(
        capsys,
        "catalog", "--surface", "ruled", "--params", "g=2",
        "--output-format", "structured",
    )
    assert code == 0
    record = json.loads(out)
    assert (record["b0"], record["b1"], record["b2"], record["chi"]) == (1, 4, 2, -4)


def test_catalog_miss_exit_2(capsys):
    code, _, err = run(capsys, "catalog", "--surface", "does-not-exist")
    assert code == 2
    assert "unknown surface" in err


def test_bad_params_exit_1(capsys):
    code, _, err = run(capsys, "catalog", "--surface", "ruled", "--params", "g:2")
    assert code == 1


# -- invariants ----------------------------------------------------------------------


def test_invariants_abelian_euler_zero(capsys):
    code, out, _ = run(
        capsys,
        "invariants", "--surface", "abelian", "--partition", "1,2",
        "--show", "betti,euler", "--output-format", "structured",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["euler"] == 0
    assert payload["betti"][0] == 1 and payload["betti"][1] == 8
    assert len(payload["betti"]) == 4 * 3 + 1


def test_invariants_hodge_refusal_exit_2(capsys):
    code, _, err = run(
        capsys,
        "invariants", "--surface", "quintic", "--partition", "1,2", "--show", "hodge",
    )
    assert code == 2
    assert "Hodge" in err or "h10" in err


def test_invariants_unknown_show_item(capsys):
    code, _, err = run(
        capsys,
        "invariants", "--surface", "k3", "--partition", "2", "--show", "chern",
    )
    assert code == 1


# -- series ------------------------------------------------------------------------


def test_series_dump_format(capsys):
    code, out, _ = run(
        capsys, "series", "--surface", "k3", "--truncation", "2", "--kind", "poincare"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t^0 z^0 : 1"
    assert "t^2 z^2 : 23" in lines


def test_series_euler_kind(capsys):
    code, out, _ = run(
        capsys, "series", "--surface", "k3", "--truncation", "2", "--kind", "euler"
    )
    assert code == 0
    assert "t^2 : 324" in out.splitlines()


def test_series_hodge_kind_refusal(capsys):
    code, _, _ = run(
        capsys, "series", "--surface", "quintic", "--truncation", "2",
        "--kind", "hodge-p0",
    )
    assert code == 2


# -- scan --------------------------------------------------------------------------


def test_scan_structured_and_csv(tmp_path, capsys):
    csv_path = tmp_path / "out.csv"
    code, out, _ = run(
        capsys,
        "scan", "--kind", "majorization", "--n-max", "8", "--k-set", "3,4",
        "--csv", str(csv_path), "--output-format", "structured",
    )
    assert code == 0
    report = json.loads(out)
    assert report["scan_kind"] == "majorization"
    assert report["violations"] == []
    with open(csv_path, newline="") as handle:
        header = next(csv.reader(handle))
    assert header == ["scan_kind", "n", "a", "b", "k_or_p", "value_a", "value_b"]


def test_scan_lemma_human(capsys):
    code, out, _ = run(
        capsys, "scan", "--kind", "lemma-same-length", "--n-max", "6", "--p-max", "2"
    )
    assert code == 0
    assert "violations: 0" in out


def test_scan_workers_and_records_export(tmp_path, capsys):
    records_path = tmp_path / "report.jsonl"
    code, out, _ = run(
        capsys,
        "scan", "--kind", "conjecture", "--n-max", "8", "--k-set", "4",
        "--workers", "2", "--records", str(records_path),
        "--output-format", "structured",
    )
    assert code == 0
    header = json.loads(records_path.read_text().splitlines()[0])
    assert header["record"] == "header"
    assert header["pairs_checked"] == json.loads(out)["pairs_checked"]


def test_scan_human_output_caps_violation_listing(capsys):
    code, out, _ = run(
        capsys, "scan", "--kind", "lemma-diff-length", "--n-max", "12", "--p-max", "6"
    )
    assert code == 0
    assert "more violations" in out


def test_scan_bad_kind_exit_1(capsys):
    code, _, _ = run(capsys, "scan", "--kind", "everything", "--n-max", "6")
    assert code == 1


def test_scan_bad_k_set_exit_1(capsys):
    code, _, _ = run(
        capsys, "scan", "--kind", "majorization", "--n-max", "6", "--k-set", "2"
    )
    assert code == 1


# -- aut ---------------------------------------------------------------------------


def test_aut_rendering(capsys):
    code, out, _ = run(capsys, "aut", "--partition", "1,1,2,3,3,3")
    assert code == 0
    assert "Aut(S^[1])^2 ⋊ S_2" in out


def test_aut_generic_surface_note(capsys):
    code, out, _ = run(capsys, "aut", "--partition", "2,2", "--surface", "quintic")
    assert code == 0
    assert "formal shape" in out


def test_aut_k3_no_note(capsys):
    code, out, _ = run(capsys, "aut", "--partition", "2,2", "--surface", "k3")
    assert code == 0
    assert "formal shape" not in out


# -- plumbing ----------------------------------------------------------------------


def test_unknown_command_exit_1(capsys):
    assert main(["frobnicate"]) == 1


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "verdict.json"
    code, _, _ = run(
        capsys,
        "decide", "--surface", "k3", "--a", "1,3", "--b", "2,2",
        "--output-format", "structured", "--output", str(out_path),
    )
    assert code == 0
    verdict = Verdict.from_dict(json.loads(out_path.read_text()))
    assert verdict.outcome.value == "non_isomorphic"


def test_installed_console_script():
    import subprocess

    done = subprocess.run(
        ["hilbprod", "decide", "--surface", "k3", "--a", "1,3", "--b", "2,2",
         "--output-format", "structured"],
        capture_output=True,
        text=True,
    )
    assert done.returncode == 0
    assert json.loads(done.stdout)["outcome"] == "non_isomorphic"
    version = subprocess.run(["hilbprod", "--version"], capture_output=True, text=True)
    assert version.returncode == 0


def test_custom_catalog_flag(tmp_path, capsys):
    catalog = {
        "version": 1,
        "surfaces": [
            {
                "name": "mystery",
                "family_params": [],
                "b0": 1, "b1": 0, "b2": 4, "chi": 6,
                "structural_class": "generic",
                "provenance": "test",
            }
        ],
    }
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(catalog))
    code, out, _ = run(
        capsys,
        "invariants", "--surface", "mystery", "--partition", "1",
        "--catalog", str(path), "--output-format", "structured",
    )
    assert code == 0
    assert json.loads(out)["euler"] == 6
