import dataclasses
from collections import Counter

import pytest

from k3v import k3pipeline as K
from k3v.exact.matrix import RatMatrix
from k3v.exact.poly import Poly

KNOWN_FAILS = {"linear_forms_vanish", "pi2_Y1_minus_Y2_is_FC", "sextic_image_table"}


@pytest.fixture(scope="module")
def table():
    return K.LineTable.load(K.reconstructed_table_path())


def _status(checks):
    return {c.name: c.status for c in checks}


def test_embedded_data_validates():
    d = K.load_embedded()
    assert d.F(1) == -9 and len(d.index_set_I) == 52
    bad = dataclasses.replace(d, F=Poly([1, 2, 1]))
    with pytest.raises(K.DataError):
        bad.validate()


def test_parse_class():
    c = K.parse_class("2*l3 + l112 - (l10 + l18)")
    assert c.lines == {3: 2, 112: 1, 10: -1, 18: -1}
    d1 = K.parse_class("D1")
    assert d1.h == 3 and sum(d1.lines.values()) == -6


def test_charpoly_pipeline_all_pass():
    checks, rep = K.run_charpoly_pipeline()
    assert all(c.status == "PASS" for c in checks)
    assert rep.irreducible.primes == (2, 3)


def test_charpoly_pipeline_detects_mutated_F():
    d = K.load_embedded()
    c = list(d.F.c)
    c[5] += 1
    c[-6] += 1
    checks, _ = K.run_charpoly_pipeline(dataclasses.replace(d, F=Poly(c)))
    assert _status(checks)["charpoly_equals_F"] == "FAIL"


def test_charpoly_pipeline_detects_mutated_R():
    d = K.load_embedded()
    a = [list(r) for r in d.R.a]
    a[0][0] += 1
    checks, _ = K.run_charpoly_pipeline(dataclasses.replace(d, R=RatMatrix(a)))
    st = _status(checks)
    assert st["charpoly_equals_F"] == "FAIL" and st["Mg_isometry_B3"] == "FAIL"


def test_lines_on_XK():
    st = _status(K.verify_lines_on_XK())
    assert set(st.values()) == {"PASS"}
    lifted, stats = K.lifted_lines()
    assert len(lifted) == 52 and stats["minus1_in_u_enumeration"] == 40


def test_rho_permutation_cycle_type():
    assert sorted(Counter(len(c) for c in K._cycles(K.rho_permutation())).items()) == [(1, 2), (10, 1), (20, 5)]


def test_run_all_without_table():
    checks = K.run_all(None)
    st = Counter(c.status for c in checks)
    fails = [c.name for c in checks if c.status == "FAIL"]
    assert fails == ["pi2_Y1_minus_Y2_is_FC"]
    assert st["SKIP"] > 0 and all(c.as_json()["status"] in ("PASS", "FAIL", "SKIP") for c in checks)


def test_run_all_with_table(table):
    checks = K.run_all(table)
    fails = {c.name for c in checks if c.status == "FAIL"}
    assert fails == KNOWN_FAILS
    st = _status(checks)
    assert st["sextic_image_table_corrected_phi2"] == "PASS"
    assert st["exceptional_sets_over_K"] == "PASS" and st["rho_acts_on_beta3_by_R"] == "PASS"
    assert "SKIP" not in st.values()


def test_swapped_labels_are_caught(table):
    e = dict(table.entries)
    e[23], e[37] = e[37], e[23]
    st = _status(K.run_geometry_crosschecks(K.LineTable(e)))
    assert st["line_table_valid"] == "PASS"
    assert "FAIL" in {st["B3_is_beta3_gram"], st["B1_B2_columns_match_recipes"], st["pi1_exceptional_sets"]}


def test_invalid_table_skips(table):
    e = dict(table.entries)
    del e[112]
    checks = K.run_geometry_crosschecks(K.LineTable(e))
    assert checks[0].status == "FAIL"
    assert all(c.status == "SKIP" for c in checks[1:])


def test_table_roundtrip(tmp_path, table):
    p = tmp_path / "t.tsv"
    p.write_text(table.to_tsv())
    again = K.LineTable.load(p)
    assert again.entries == table.entries and not again.validate()
    p.write_text("1\t1:0:0:0\n1\t1:0:0:0\t0:1:0:0\n")
    with pytest.raises(K.DataError):
        K.LineTable.load(p)


@pytest.mark.slow
def test_reconstruction_matches_shipped(table):
    rebuilt, info = K.reconstruct_line_table()
    assert rebuilt.entries == table.entries
    assert len(info["pinned"]) == 69 and len(info["filled"]) == 43
